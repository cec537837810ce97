#!/usr/bin/env python3
# -*- coding: utf-8 -*-
import sys

from luckydonaldUtils.logger import logging

from caconsensus.cli import main

__author__ = 'luckydonald'

logger = logging.getLogger(__name__)

if __name__ == '__main__':
    sys.exit(main())
# end if

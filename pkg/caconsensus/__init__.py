#!/usr/bin/env python3
# -*- coding: utf-8 -*-
from typing import Union, List, Tuple, Iterable
from luckydonaldUtils.logger import logging

__author__ = 'luckydonald'
__version__ = '0.1.0'

logger = logging.getLogger(__name__)
if __name__ == '__main__':
    logging.add_colored_handler(level=logging.DEBUG)
# end if

Bit = int  # 0 or 1.
BitsLike = Union[str, Iterable[Bit]]
Extents = Tuple[int, int]  # (left_extent, right_extent)
LengthRange = Union[range, List[int], Tuple[int, ...]]

from .data import Bounds  # noqa: E402

#!/usr/bin/env python3
# -*- coding: utf-8 -*-
from luckydonaldUtils.logger import logging

__author__ = 'luckydonald'

logger = logging.getLogger(__name__)
if __name__ == '__main__':
    logging.add_colored_handler(level=logging.DEBUG)
# end if


class CaConsensusError(Exception):
    """ Base class of everything this package raises on purpose. """
    pass
# end class


class ContractViolationError(CaConsensusError, ValueError):
    """
    A precondition of an operation was violated,
    e.g. a window of the wrong length or a block shorter than the neighbourhood.
    """
    pass
# end class


class UnsupportedRuleError(CaConsensusError):
    """ The operation is only defined for symmetric extents (or only for radius 2). """
    pass
# end class


class ResourceBoundError(CaConsensusError):
    """
    A configured budget would be exceeded.

    :ivar needed: log2 of what would have been allocated.
    :ivar allowed: log2 of the configured limit.
    """
    def __init__(self, message: str, needed: int = None, allowed: int = None):
        super().__init__(message)
        self.needed = needed
        self.allowed = allowed
    # end def
# end class


class CheckpointIntegrityError(CaConsensusError):
    """ The checkpoint file is malformed or its checksum does not match. """
    pass
# end class


class ScanAbortedError(CaConsensusError):
    """ Workers kept failing after all retries, the scan was stopped after flushing the checkpoint. """
    pass
# end class

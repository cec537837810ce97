#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Exact dynamics of a rule on cyclic configurations of a fixed length L.

A configuration of length L is an L-bit integer, cell i sitting at bit L-1-i.
"""
from dataclasses import dataclass
from typing import Union, List, Tuple, Dict, Optional, Set

import numpy as np
from luckydonaldUtils.logger import logging
from luckydonaldUtils.typing import JSONType

from . import BitsLike, LengthRange
from .data import Bounds, to_json_str
from .exceptions import ContractViolationError, ResourceBoundError
from .rules import Rule
from .utils import parse_bits, format_bits, rotate_left, value_of

__author__ = 'luckydonald'

logger = logging.getLogger(__name__)
if __name__ == '__main__':
    logging.add_colored_handler(level=logging.DEBUG)
# end if


PATTERN_LENGTHS = tuple(range(5, 21))


@dataclass(frozen=True)
class CyclicConfig(object):
    length: int
    bits: int

    def __post_init__(self):
        if self.length < 1:
            raise ContractViolationError(f'A configuration needs at least one cell, got length {self.length!r}.')
        # end if
        if not 0 <= self.bits < (1 << self.length):
            raise ContractViolationError(f'{self.bits!r} is not a configuration of length {self.length}.')
        # end if
    # end def

    @classmethod
    def from_bits(cls, bits: BitsLike) -> 'CyclicConfig':
        if isinstance(bits, str):
            value, length = parse_bits(bits)
            return cls(length=length, bits=value)
        # end if
        bits = list(bits)
        return cls(length=len(bits), bits=value_of(bits))
    # end def

    @classmethod
    def homogeneous(cls, bit: int, length: int) -> 'CyclicConfig':
        return cls(length=length, bits=((1 << length) - 1) if bit else 0)
    # end def

    def cell(self, i: int) -> int:
        return (self.bits >> (self.length - 1 - (i % self.length))) & 1
    # end def

    def rotate(self, shift: int) -> 'CyclicConfig':
        """ sigma_shift: cell i of the result is cell i + shift of this one. """
        return CyclicConfig(length=self.length, bits=rotate_left(self.bits, shift, self.length))
    # end def

    @property
    def hex(self) -> str:
        return format(self.bits, f'0{(self.length + 3) // 4}x')
    # end def

    def __str__(self) -> str:
        return format_bits(self.bits, self.length)
    # end def
# end class


def step(rule: Rule, config: CyclicConfig) -> CyclicConfig:
    """ One application of the global map F_L, windows wrapping around. """
    length = config.length
    value = 0
    for i in range(length):
        window = 0
        for offset in range(-rule.left_extent, rule.right_extent + 1):
            window = (window << 1) | config.cell(i + offset)
        # end for
        value = (value << 1) | int(rule.table[window])
    # end for
    return CyclicConfig(length=length, bits=value)
# end def


def orbit(rule: Rule, config: CyclicConfig, steps: int) -> List[CyclicConfig]:
    """ [c, F(c), ..., F^steps(c)] """
    trajectory = [config]
    for _ in range(steps):
        trajectory.append(step(rule, trajectory[-1]))
    # end for
    return trajectory
# end def


def _check_length(length: int, max_length: int) -> None:
    if length < 1:
        raise ContractViolationError(f'Length must be positive, got {length}.')
    # end if
    if length > max_length:
        raise ResourceBoundError(
            f'Length {length} needs 2^{length} states, the limit is 2^{max_length}.',
            needed=length, allowed=max_length,
        )
    # end if
# end def


def successors(rule: Rule, length: int, max_length: int = Bounds.max_length) -> np.ndarray:
    """ F_L as array: entry x is the successor of configuration x. """
    _check_length(length, max_length)
    states = np.arange(1 << length, dtype=np.uint32)
    result = np.zeros_like(states)
    for i in range(length):
        window = np.zeros_like(states)
        for offset in range(-rule.left_extent, rule.right_extent + 1):
            bit = length - 1 - ((i + offset) % length)
            window = (window << np.uint32(1)) | ((states >> np.uint32(bit)) & np.uint32(1))
        # end for
        result |= rule.table[window].astype(np.uint32) << np.uint32(length - 1 - i)
    # end for
    return result
# end def


def _cycle_minimum(succ: np.ndarray, rounds: int) -> np.ndarray:
    """ For every x, the minimum of x, F(x), ..., F^(2^rounds - 1)(x). """
    minimum = np.arange(succ.shape[0], dtype=succ.dtype)
    jump = succ
    for _ in range(rounds):
        minimum = np.minimum(minimum, minimum[jump])
        jump = jump[jump]
    # end for
    return minimum
# end def


def _limit_points(succ: np.ndarray, rounds: int) -> np.ndarray:
    """ F^(2^rounds), which lands every state on its attractor once 2^rounds reaches the state count. """
    limit = succ
    for _ in range(rounds):
        limit = limit[limit]
    # end for
    return limit
# end def


class AttractorReport(object):
    """
    All attractors of F_L together with their basin sizes.

    Every cycle is listed starting from its smallest configuration.
    """
    length: int
    attractors: List[Tuple[CyclicConfig, ...]]
    basin_sizes: List[int]
    rule_id: Union[str, None]

    def __init__(
        self, length: int, attractors: List[Tuple[CyclicConfig, ...]], basin_sizes: List[int],
        rule_id: Union[str, None] = None,
    ):
        self.length = length
        self.attractors = attractors
        self.basin_sizes = basin_sizes
        self.rule_id = rule_id
    # end def

    def basin_of(self, config: CyclicConfig) -> int:
        for attractor, size in zip(self.attractors, self.basin_sizes):
            if config in attractor:
                return size
            # end if
        # end for
        raise ContractViolationError(f'{config} is not part of an attractor at length {self.length}.')
    # end def

    @property
    def is_consensus(self) -> bool:
        """ Exactly the two homogeneous fixed points. """
        expected = {
            (CyclicConfig.homogeneous(0, self.length),),
            (CyclicConfig.homogeneous(1, self.length),),
        }
        return len(self.attractors) == 2 and set(self.attractors) == expected
    # end def

    def to_dict(self) -> Dict[str, JSONType]:
        return {
            'rule': self.rule_id,
            'L': self.length,
            'attractors': [[config.hex for config in attractor] for attractor in self.attractors],
            'basin_sizes': list(self.basin_sizes),
        }
    # end def

    def to_json_str(self) -> str:
        return to_json_str(self.to_dict())
    # end def

    def to_text(self) -> str:
        lines = [f'L={self.length} attractors={len(self.attractors)}']
        for attractor, size in zip(self.attractors, self.basin_sizes):
            cycle = ' -> '.join(str(config) for config in attractor)
            lines.append(f'period={len(attractor)} basin={size} cycle={cycle}')
        # end for
        return '\n'.join(lines)
    # end def

    def __repr__(self):
        return (
            f'{self.__class__.__name__}('
            f'length={self.length!r}, '
            f'attractors={[[str(c) for c in a] for a in self.attractors]!r}, '
            f'basin_sizes={self.basin_sizes!r}, '
            f'rule_id={self.rule_id!r}'
            ')'
        )
    # end def

    __str__ = __repr__
# end class


def attractors(rule: Rule, length: int, max_length: int = Bounds.max_length) -> AttractorReport:
    """
    Every cycle of the functional graph of F_L, with the number of configurations flowing into it.
    """
    succ = successors(rule, length, max_length=max_length)
    limit = _limit_points(succ, length)
    minimum = _cycle_minimum(succ, length)
    representative = minimum[limit]  # smallest configuration on the cycle each state ends up in
    heads, sizes = np.unique(representative, return_counts=True)
    cycles = []
    for head in heads.tolist():
        cycle = [head]
        current = int(succ[head])
        while current != head:
            cycle.append(current)
            current = int(succ[current])
        # end while
        cycles.append(tuple(CyclicConfig(length=length, bits=state) for state in cycle))
    # end for
    logger.debug(f'{rule!r} at L={length}: {len(cycles)} attractors')
    return AttractorReport(
        length=length, attractors=cycles, basin_sizes=[int(size) for size in sizes], rule_id=rule.rule_id,
    )
# end def


def _consensus_one_basin(rule: Rule, length: int, max_length: int) -> Optional[int]:
    """
    |B_1^L| if the only attractors are the fixed points 0^L and 1^L, None otherwise.
    Stops doubling as soon as every state has reached one of the two.
    """
    succ = successors(rule, length, max_length=max_length)
    full = (1 << length) - 1
    if succ[0] != 0 or succ[full] != full:
        return None
    # end if
    limit = succ
    for _ in range(length + 1):
        settled_one = limit == full
        if np.all(settled_one | (limit == 0)):
            return int(np.count_nonzero(settled_one))
        # end if
        limit = limit[limit]
    # end for
    return None
# end def


def consensus_counts(
    rule: Rule, lengths: LengthRange, max_length: int = Bounds.max_length,
) -> Tuple[Optional[int], List[int]]:
    """
    Runs the consensus filter over the ascending `lengths`.
    Returns the first failing length (None if all passed) and |B_1^L| for the lengths that passed.
    """
    lengths = list(lengths)
    if not lengths:
        raise ContractViolationError('The length range is empty.')
    # end if
    if any(b <= a for a, b in zip(lengths, lengths[1:])):
        raise ContractViolationError(f'The length range must be ascending, got {lengths!r}.')
    # end if
    all_zero = 0
    all_one = (1 << rule.size) - 1
    if rule.table[all_zero] != 0 or rule.table[all_one] != 1:
        return lengths[0], []
    # end if
    counts = []
    for length in lengths:
        count = _consensus_one_basin(rule, length, max_length)
        if count is None:
            logger.debug(f'{rule!r} rejected at L={length}')
            return length, counts
        # end if
        counts.append(count)
    # end for
    return None, counts
# end def


def filter_rule(
    rule: Rule, lengths: LengthRange = PATTERN_LENGTHS, max_length: int = Bounds.max_length,
) -> Tuple[bool, Optional[int]]:
    """ (passed, first failing length) """
    reject_length, _ = consensus_counts(rule, lengths, max_length=max_length)
    return reject_length is None, reject_length
# end def


def is_consensus_candidate(
    rule: Rule, lengths: LengthRange = PATTERN_LENGTHS, max_length: int = Bounds.max_length,
) -> bool:
    return filter_rule(rule, lengths, max_length=max_length)[0]
# end def


def basin_sizes(rule: Rule, length: int, max_length: int = Bounds.max_length) -> Tuple[int, int]:
    """ (|B_0^L|, |B_1^L|) of a rule that is consensus at length L. """
    count = _consensus_one_basin(rule, length, max_length)
    if count is None:
        raise ContractViolationError(f'{rule!r} is not a consensus rule at L={length}.')
    # end if
    return (1 << length) - count, count
# end def


@dataclass(frozen=True)
class PatternVector(object):
    """
    |B_1^L| for every L of `lengths`, by default L = 5, ..., 20.
    """
    counts: Tuple[int, ...]
    lengths: Tuple[int, ...] = PATTERN_LENGTHS

    def __post_init__(self):
        if len(self.counts) != len(self.lengths):
            raise ContractViolationError(f'{len(self.counts)} counts given for {len(self.lengths)} lengths.')
        # end if
        for length, count in zip(self.lengths, self.counts):
            if not 0 <= count <= (1 << length):
                raise ContractViolationError(f'Count {count} impossible at L={length}.')
            # end if
        # end for
    # end def

    def matching_classes(self) -> Tuple[str, ...]:
        """ Every class whose basin sizes equal the counts over these lengths. """
        return tuple(
            class_label for class_label in ('A', 'B', 'C')
            if all(count == expected_one_basin_size(class_label, length) for length, count in zip(self.lengths, self.counts))
        )
    # end def

    def pattern_class(self) -> Optional[str]:
        """
        'A', 'B' or 'C' if the counts are those of exactly one class, None if of no class.
        Length ranges without an even length, or without a multiple of four, cannot tell the classes apart;
        then all matching labels are returned joined with '/'.

        >>> PatternVector(counts=(1, 3, 1, 7), lengths=(5, 6, 7, 8)).pattern_class()
        'C'
        >>> PatternVector(counts=(1, 3, 1), lengths=(5, 6, 7)).pattern_class()
        'B/C'
        """
        matches = self.matching_classes()
        return '/'.join(matches) if matches else None
    # end def

    def __str__(self) -> str:
        return ';'.join(str(count) for count in self.counts)
    # end def

    @classmethod
    def from_str(cls, text: str, lengths: Tuple[int, ...] = PATTERN_LENGTHS) -> 'PatternVector':
        return cls(counts=tuple(int(count) for count in text.split(';')), lengths=tuple(lengths))
    # end def
# end class


def pattern(rule: Rule, lengths: LengthRange = PATTERN_LENGTHS, max_length: int = Bounds.max_length) -> PatternVector:
    reject_length, counts = consensus_counts(rule, lengths, max_length=max_length)
    if reject_length is not None:
        raise ContractViolationError(f'{rule!r} is no consensus candidate, it fails at L={reject_length}.')
    # end if
    return PatternVector(counts=tuple(counts), lengths=tuple(lengths))
# end def


def expected_one_basin(class_label: str, length: int) -> Set[CyclicConfig]:
    """
    The configurations a certified rule of the class sends to 1^L:
    1^L; for class B and C also the two alternating words when L is even;
    for class C additionally the four rotations of (1100)^(L/4) when 4 divides L.
    """
    if class_label not in ('A', 'B', 'C'):
        raise ContractViolationError(f'Unknown class {class_label!r}.')
    # end if
    result = {CyclicConfig.homogeneous(1, length)}
    if class_label in ('B', 'C') and length % 2 == 0:
        alternating = CyclicConfig.from_bits('10' * (length // 2))
        result.update({alternating, alternating.rotate(1)})
    # end if
    if class_label == 'C' and length % 4 == 0:
        blocks = CyclicConfig.from_bits('1100' * (length // 4))
        result.update(blocks.rotate(shift) for shift in range(4))
    # end if
    return result
# end def


def expected_one_basin_size(class_label: str, length: int) -> int:
    """
    >>> [expected_one_basin_size('C', length) for length in range(5, 13)]
    [1, 3, 1, 7, 1, 3, 1, 7]
    """
    return len(expected_one_basin(class_label, length))
# end def


def homogeneous_basin(rule: Rule, length: int, bit: int = 1, max_length: int = Bounds.max_length) -> Set[CyclicConfig]:
    """ The configurations whose orbit ends in the homogeneous configuration of `bit`. """
    succ = successors(rule, length, max_length=max_length)
    limit = _limit_points(succ, length)
    target = ((1 << length) - 1) if bit else 0
    return {CyclicConfig(length=length, bits=int(state)) for state in np.nonzero(limit == target)[0]}
# end def

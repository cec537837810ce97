#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Local rules of binary one-dimensional cellular automata.

Bit conventions used everywhere in this package:

- In a window (and in a `Block`) the leftmost cell is the most significant bit,
  so the window ``x_1 ... x_n`` is the table index ``x_1 * 2^(n-1) + ... + x_n``.
- Offsets inside a window are relative to the cell being updated,
  ranging from ``-left_extent`` to ``+right_extent``.
"""
import math
from dataclasses import dataclass
from typing import Union, Tuple, List, Dict, Generator, Optional, Iterable

import numpy as np
from luckydonaldUtils.exceptions import assert_type_or_raise
from luckydonaldUtils.logger import logging
from typeguard import typechecked

from . import BitsLike, Extents
from .exceptions import ContractViolationError, UnsupportedRuleError, ResourceBoundError
from .utils import parse_bits, format_bits, bits_of, value_of

__author__ = 'luckydonald'

logger = logging.getLogger(__name__)
if __name__ == '__main__':
    logging.add_colored_handler(level=logging.DEBUG)
# end if


DEFAULT_MAX_TABLE_BITS = 22  # radius-10 tables (f^5 for radius 2) have 2^21 entries.


@dataclass(frozen=True)
class Block(object):
    """
    A finite binary word ``b_1 ... b_l``, stored as integer with ``b_1`` as most significant bit.
    """
    value: int
    length: int

    def __post_init__(self):
        if self.length < 1:
            raise ContractViolationError(f'A block needs at least one cell, got length {self.length!r}.')
        # end if
        if not 0 <= self.value < (1 << self.length):
            raise ContractViolationError(f'Value {self.value!r} does not fit into {self.length} bits.')
        # end if
    # end def

    @classmethod
    def from_bits(cls, bits: BitsLike) -> 'Block':
        if isinstance(bits, str):
            value, length = parse_bits(bits)
            return cls(value=value, length=length)
        # end if
        bits = list(bits)
        return cls(value=value_of(bits), length=len(bits))
    # end def

    @property
    def bits(self) -> List[int]:
        return bits_of(self.value, self.length)
    # end def

    def sub(self, start: int, length: int) -> 'Block':
        """ Sub-block of `length` cells beginning at the 0-based position `start`. """
        if start < 0 or length < 1 or start + length > self.length:
            raise ContractViolationError(
                f'Sub-block [{start}, {start + length}) outside of a block of length {self.length}.'
            )
        # end if
        shift = self.length - start - length
        return Block(value=(self.value >> shift) & ((1 << length) - 1), length=length)
    # end def

    def __len__(self) -> int:
        return self.length
    # end def

    def __str__(self) -> str:
        return format_bits(self.value, self.length)
    # end def
# end class


@dataclass(frozen=True, init=False, eq=False, repr=False)
class Rule(object):
    """
    A local rule, given by its extents and its full truth table.

    The table entry at index v is f applied to the window whose bits,
    read left cell first, form the integer v.
    """
    left_extent: int
    right_extent: int
    table: np.ndarray

    def __init__(self, left_extent: int, right_extent: int, table: Union[np.ndarray, Iterable[int]]):
        assert_type_or_raise(left_extent, int, parameter_name='left_extent')
        assert_type_or_raise(right_extent, int, parameter_name='right_extent')
        if left_extent < 0 or right_extent < 0:
            raise ContractViolationError(f'Extents must be non-negative, got ({left_extent}, {right_extent}).')
        # end if
        table = np.array(table, dtype=np.uint8).ravel()
        expected = 1 << (left_extent + right_extent + 1)
        if table.shape[0] != expected:
            raise ContractViolationError(
                f'Truth table for extents ({left_extent}, {right_extent}) needs {expected} entries, got {table.shape[0]}.'
            )
        # end if
        if np.any(table > 1):
            raise ContractViolationError('Truth table entries must be bits.')
        # end if
        table.setflags(write=False)
        object.__setattr__(self, 'left_extent', left_extent)
        object.__setattr__(self, 'right_extent', right_extent)
        object.__setattr__(self, 'table', table)
        object.__setattr__(self, '_number', None)
    # end def

    @property
    def size(self) -> int:
        """ Neighbourhood size, 2r + 1. """
        return self.left_extent + self.right_extent + 1
    # end def

    @property
    def radius(self) -> float:
        return (self.left_extent + self.right_extent) / 2
    # end def

    @property
    def extents(self) -> Extents:
        return self.left_extent, self.right_extent
    # end def

    @property
    def is_symmetric(self) -> bool:
        return self.left_extent == self.right_extent
    # end def

    @property
    def number(self) -> int:
        """ The Wolfram number, sum of 2^v over all windows v mapped to 1. """
        if self._number is None:
            object.__setattr__(self, '_number', _table_to_number(self.table))
        # end if
        return self._number
    # end def

    @property
    def rule_id(self) -> str:
        return format_rule_id(self)
    # end def

    @classmethod
    def from_number(cls, number: int, left_extent: int, right_extent: int) -> 'Rule':
        return wolfram_decode(number, (left_extent, right_extent))
    # end def

    def __call__(self, window: Union[Block, BitsLike]) -> int:
        return evaluate(self, window)
    # end def

    def __eq__(self, other) -> bool:
        if not isinstance(other, Rule):
            return NotImplemented
        # end if
        return self.extents == other.extents and np.array_equal(self.table, other.table)
    # end def

    def __hash__(self) -> int:
        return hash((self.left_extent, self.right_extent, self.table.tobytes()))
    # end def

    def __repr__(self) -> str:
        if self.size <= 5:
            return (
                f'{self.__class__.__name__}('
                f'left_extent={self.left_extent!r}, '
                f'right_extent={self.right_extent!r}, '
                f'number={self.number!r}'
                ')'
            )
        # end if
        return (
            f'{self.__class__.__name__}('
            f'left_extent={self.left_extent!r}, '
            f'right_extent={self.right_extent!r}, '
            f'table=<{self.table.shape[0]} bits>'
            ')'
        )
    # end def

    __str__ = __repr__
# end class


def _table_to_number(table: np.ndarray) -> int:
    reversed_bits = table[::-1]
    padding = (-reversed_bits.shape[0]) % 8
    if padding:
        reversed_bits = np.concatenate([np.zeros(padding, dtype=np.uint8), reversed_bits])
    # end if
    return int.from_bytes(np.packbits(reversed_bits).tobytes(), 'big')
# end def


def _number_to_table(number: int, entries: int) -> np.ndarray:
    byte_count = (entries + 7) // 8
    raw = np.frombuffer(number.to_bytes(byte_count, 'big'), dtype=np.uint8)
    bits = np.unpackbits(raw)[-entries:]
    return bits[::-1].copy()
# end def


def _window_value(rule: Rule, window: Union[Block, BitsLike]) -> int:
    if not isinstance(window, Block):
        window = Block.from_bits(window)
    # end if
    if window.length != rule.size:
        raise ContractViolationError(
            f'Window of length {window.length} given to a rule with neighbourhood size {rule.size}.'
        )
    # end if
    return window.value
# end def


def evaluate(rule: Rule, window: Union[Block, BitsLike]) -> int:
    """ f(window), a plain table lookup. """
    return int(rule.table[_window_value(rule, window)])
# end def


def wolfram_encode(rule: Rule) -> int:
    return rule.number
# end def


@typechecked
def wolfram_decode(number: int, extents: Extents) -> Rule:
    left_extent, right_extent = extents
    entries = 1 << (left_extent + right_extent + 1)
    if not 0 <= number < (1 << entries):
        raise ContractViolationError(
            f'Rule number {number} out of range for extents {extents}, must be below 2^{entries}.'
        )
    # end if
    return Rule(left_extent, right_extent, _number_to_table(number, entries))
# end def


def _index_array(size: int) -> np.ndarray:
    return np.arange(1 << size, dtype=np.int64)
# end def


def _reversal_permutation(size: int) -> np.ndarray:
    index = _index_array(size)
    reversed_index = np.zeros_like(index)
    for position in range(size):
        reversed_index |= ((index >> position) & 1) << (size - 1 - position)
    # end for
    return reversed_index
# end def


def negate(rule: Rule) -> Rule:
    """ negate(f)(w) = 1 - f(complement of w). """
    # complementing every window index reverses the table order.
    return Rule(rule.left_extent, rule.right_extent, 1 - rule.table[::-1])
# end def


def reflect(rule: Rule) -> Rule:
    """ reflect(f)(w) = f(reversed w), with the extents swapped. """
    return Rule(rule.right_extent, rule.left_extent, rule.table[_reversal_permutation(rule.size)])
# end def


def symmetry_orbit(rule: Rule) -> List[Rule]:
    """ [f, negate(f), reflect(f), negate(reflect(f))], duplicates included. """
    reflected = reflect(rule)
    return [rule, negate(rule), reflected, negate(reflected)]
# end def


def orbit_numbers(rule: Rule) -> List[int]:
    """ The distinct Wolfram numbers of the symmetry class, ascending. """
    return sorted({member.number for member in symmetry_orbit(rule)})
# end def


def orbit_size(rule: Rule) -> int:
    return len(orbit_numbers(rule))
# end def


def canonicalize(rule: Rule) -> Rule:
    """ The member of the symmetry class with the smallest Wolfram number. """
    if not rule.is_symmetric:
        raise UnsupportedRuleError(
            f'Canonicalization needs symmetric extents, got {rule.extents}: reflection would leave the rule space.'
        )
    # end if
    return min(symmetry_orbit(rule), key=lambda member: member.number)
# end def


def is_canonical(rule: Rule) -> bool:
    return canonicalize(rule).number == rule.number
# end def


def composed_table_bits(rule: Rule, m: int) -> int:
    """ log2 of the table size of f^m. """
    return m * (rule.left_extent + rule.right_extent) + 1
# end def


def compose_pair(outer: Rule, inner: Rule) -> Rule:
    """
    The rule computing `outer` applied to the images of `inner`,
    i.e. one step of `inner` followed by one step of `outer`.
    """
    size = outer.size + inner.size - 1
    index = _index_array(size)
    inner_mask = (1 << inner.size) - 1
    outer_index = np.zeros_like(index)
    for k in range(outer.size):
        shift = outer.size - 1 - k
        outer_index |= inner.table[(index >> shift) & inner_mask].astype(np.int64) << shift
    # end for
    return Rule(
        outer.left_extent + inner.left_extent,
        outer.right_extent + inner.right_extent,
        outer.table[outer_index],
    )
# end def


def compose(rule: Rule, m: int, max_table_bits: int = DEFAULT_MAX_TABLE_BITS) -> Rule:
    """ f^m as a single rule with extents multiplied by m. """
    if m < 1:
        raise ContractViolationError(f'Composition exponent must be positive, got {m}.')
    # end if
    needed = composed_table_bits(rule, m)
    if needed > max_table_bits:
        raise ResourceBoundError(
            f'f^{m} needs a table of 2^{needed} entries, the limit is 2^{max_table_bits}.',
            needed=needed, allowed=max_table_bits,
        )
    # end if
    result = rule
    for _ in range(m - 1):
        result = compose_pair(rule, result)
    # end for
    return result
# end def


class Powers(object):
    """
    Memoised f^1, f^2, ... for a single rule, each built from the previous one.
    """
    rule: Rule
    max_table_bits: int
    _powers: Dict[int, Rule]

    def __init__(self, rule: Rule, max_table_bits: int = DEFAULT_MAX_TABLE_BITS):
        self.rule = rule
        self.max_table_bits = max_table_bits
        self._powers = {1: rule}
    # end def

    def __getitem__(self, m: int) -> Rule:
        if m < 1:
            raise ContractViolationError(f'Composition exponent must be positive, got {m}.')
        # end if
        if m in self._powers:
            return self._powers[m]
        # end if
        needed = composed_table_bits(self.rule, m)
        if needed > self.max_table_bits:
            raise ResourceBoundError(
                f'f^{m} needs a table of 2^{needed} entries, the limit is 2^{self.max_table_bits}.',
                needed=needed, allowed=self.max_table_bits,
            )
        # end if
        previous = self[m - 1]
        logger.debug(f'composing f^{m} of {self.rule!r}')
        self._powers[m] = compose_pair(self.rule, previous)
        return self._powers[m]
    # end def
# end class


def extend_to_block(rule: Rule, block: Union[Block, BitsLike]) -> Block:
    """ The block extension f-hat: every full window of the block, left to right. """
    if not isinstance(block, Block):
        block = Block.from_bits(block)
    # end if
    if block.length < rule.size:
        raise ContractViolationError(
            f'Block of length {block.length} is shorter than the neighbourhood size {rule.size}.'
        )
    # end if
    out_length = block.length - rule.size + 1
    mask = (1 << rule.size) - 1
    value = 0
    for j in range(out_length):
        window = (block.value >> (out_length - 1 - j)) & mask
        value = (value << 1) | int(rule.table[window])
    # end for
    return Block(value=value, length=out_length)
# end def


def alternating_window(left_extent: int, right_extent: int, parity: int = 0) -> Block:
    """ Window with a 1 exactly at the offsets congruent to `parity` mod 2. """
    bits = [1 if (offset - parity) % 2 == 0 else 0 for offset in range(-left_extent, right_extent + 1)]
    return Block.from_bits(bits)
# end def


def u_word(left_extent: int, right_extent: int) -> Block:
    """
    The alternating word with 1 at the centre and at every even offset.

    For a radius r window this is (10)^(r/2) 1 (01)^(r/2) when r is even,
    (01)^((r-1)/2) 010 (10)^((r-1)/2) when r is odd,
    and the matching truncations for half-integer radii.
    """
    return alternating_window(left_extent, right_extent, parity=0)
# end def


def forcing_positions(rule: Rule) -> Tuple[int, ...]:
    """ All offsets d such that f(w) = 0 whenever w has a 0 at offset d. """
    index = _index_array(rule.size)
    positions = []
    for offset in range(-rule.left_extent, rule.right_extent + 1):
        bit = rule.right_extent - offset
        if not rule.table[((index >> bit) & 1) == 0].any():
            positions.append(offset)
        # end if
    # end for
    return tuple(positions)
# end def


def admissible_pairs(left_extent: int, right_extent: int) -> List[Tuple[int, int]]:
    """
    Candidate forcing position pairs in tie-break order:
    (0,1), (0,-1), (0,2), (0,-2), then (j,j+1) and (j,j+2) by ascending j.
    """
    pairs = []
    seen = set()

    def add(a: int, b: int):
        if not (-left_extent <= a <= right_extent and -left_extent <= b <= right_extent):
            return
        # end if
        key = frozenset((a, b))
        if key in seen:
            return
        # end if
        seen.add(key)
        pairs.append((a, b))
    # end def

    for other in (1, -1, 2, -2):
        add(0, other)
    # end for
    for distance in (1, 2):
        for j in range(-left_extent, right_extent - distance + 1):
            add(j, j + distance)
        # end for
    # end for
    return pairs
# end def


@dataclass(frozen=True)
class ForcingDecomposition(object):
    """
    f^m = x_{pos_a} * x_{pos_b} * phi, with phi only read at 1^(2mr+1) and, for alternated positions, at the u-word.
    """
    m: int
    pos_a: int
    pos_b: int
    phi_all_ones: int
    phi_u_word: Optional[int] = None

    @property
    def alternated(self) -> bool:
        return abs(self.pos_a - self.pos_b) == 2
    # end def

    @property
    def satisfies_class_a(self) -> bool:
        if self.phi_all_ones != 1:
            return False
        # end if
        return not self.alternated or self.phi_u_word == 0
    # end def

    def to_dict(self) -> Dict[str, Union[int, None]]:
        return {
            'm': self.m,
            'pos_a': self.pos_a,
            'pos_b': self.pos_b,
            'phi_all_ones': self.phi_all_ones,
            'phi_u_word': self.phi_u_word,
        }
    # end def

    @classmethod
    def from_dict(cls, data: Dict[str, Union[int, None]]) -> 'ForcingDecomposition':
        if isinstance(data, cls):
            return data
        # end if
        return cls(
            m=data['m'],
            pos_a=data['pos_a'],
            pos_b=data['pos_b'],
            phi_all_ones=data['phi_all_ones'],
            phi_u_word=data.get('phi_u_word'),
        )
    # end def
# end class


def decomposition_at(power: Rule, m: int, pos_a: int, pos_b: int) -> Optional[ForcingDecomposition]:
    """ The decomposition of `power` = f^m at the given positions, or None if it is not 0-forcing there. """
    positions = forcing_positions(power)
    if pos_a not in positions or pos_b not in positions or pos_a == pos_b:
        return None
    # end if
    all_ones = (1 << power.size) - 1
    phi_u = None
    if abs(pos_a - pos_b) == 2:
        # the configuration reaching phi is alternating with 1s on the parity of the forcing positions.
        word = alternating_window(power.left_extent, power.right_extent, parity=pos_a % 2)
        phi_u = int(power.table[word.value])
    # end if
    return ForcingDecomposition(
        m=m, pos_a=pos_a, pos_b=pos_b,
        phi_all_ones=int(power.table[all_ones]),
        phi_u_word=phi_u,
    )
# end def


def forcing_decompositions(
    rule: Rule, m_max: int, max_table_bits: int = DEFAULT_MAX_TABLE_BITS, powers: Powers = None,
) -> Generator[ForcingDecomposition, None, None]:
    """ Every admissible decomposition with m <= m_max, smallest m first, tie-break order within one m. """
    if not rule.is_symmetric:
        raise UnsupportedRuleError(f'Forcing decompositions need symmetric extents, got {rule.extents}.')
    # end if
    if m_max < 1:
        raise ContractViolationError(f'm_max must be positive, got {m_max}.')
    # end if
    if powers is None:
        powers = Powers(rule, max_table_bits=max_table_bits)
    # end if
    for m in range(1, m_max + 1):
        power = powers[m]
        positions = set(forcing_positions(power))
        if len(positions) < 2:
            continue
        # end if
        for pos_a, pos_b in admissible_pairs(power.left_extent, power.right_extent):
            if pos_a in positions and pos_b in positions:
                yield decomposition_at(power, m, pos_a, pos_b)
            # end if
        # end for
    # end for
# end def


def forcing_decomposition(
    rule: Rule, m_max: int, max_table_bits: int = DEFAULT_MAX_TABLE_BITS, powers: Powers = None,
) -> Optional[ForcingDecomposition]:
    """ The decomposition with the smallest m (and first admissible pair), or None. """
    for decomposition in forcing_decompositions(rule, m_max, max_table_bits=max_table_bits, powers=powers):
        return decomposition
    # end for
    return None
# end def


def _format_radius(left_extent: int, right_extent: int) -> str:
    radius = (left_extent + right_extent) / 2
    if radius == int(radius):
        return str(int(radius))
    # end if
    return str(radius)
# end def


def format_rule_id(rule: Rule) -> str:
    """ 'r2:3233857728' """
    return f'r{_format_radius(rule.left_extent, rule.right_extent)}:{rule.number}'
# end def


def extents_for_radius(radius: Union[str, float, int]) -> Extents:
    """ (ceil(r), floor(r)) for r in {0.5, 1, 1.5, 2, ...}. """
    value = float(radius)
    if value < 0 or (value * 2) != int(value * 2):
        raise ContractViolationError(f'Radius must be a non-negative multiple of 0.5, got {radius!r}.')
    # end if
    return int(math.ceil(value)), int(math.floor(value))
# end def


def parse_rule_id(text: str, default_radius: Union[str, float, int, None] = None) -> Rule:
    """
    'r2:3233857728' -> Rule; a bare number needs `default_radius`.
    """
    text = text.strip()
    if ':' in text:
        radius_part, number_part = text.split(':', maxsplit=1)
        if not radius_part.startswith('r'):
            raise ContractViolationError(f'Rule id must look like r<radius>:<number>, got {text!r}.')
        # end if
        radius = radius_part[1:]
    else:
        if default_radius is None:
            raise ContractViolationError(f'Rule {text!r} has no radius prefix and no default radius was given.')
        # end if
        radius, number_part = default_radius, text
    # end if
    try:
        number = int(number_part)
    except ValueError:
        raise ContractViolationError(f'Not a rule number: {number_part!r}')
    # end try
    return wolfram_decode(number, extents_for_radius(radius))
# end def


def export_table(rule: Rule, path: str) -> int:
    """
    Writes the truth table as raw packed bits, entry 0 first, most significant bit first in every byte.
    Returns the number of bytes written.
    """
    data = np.packbits(rule.table).tobytes()
    with open(path, 'wb') as f:
        f.write(data)
    # end with
    logger.debug(f'wrote {rule.table.shape[0]} table bits of {rule!r} to {path!r}')
    return len(data)
# end def

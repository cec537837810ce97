#!/usr/bin/env python3
# -*- coding: utf-8 -*-
from typing import Tuple, List, Sequence

from luckydonaldUtils.logger import logging

from .exceptions import ContractViolationError

__author__ = 'luckydonald'

logger = logging.getLogger(__name__)
if __name__ == '__main__':
    logging.add_colored_handler(level=logging.DEBUG)
# end if


def parse_bits(bits: str) -> Tuple[int, int]:
    """
    '0110' -> (value, length), first character being the most significant bit.

    >>> parse_bits('110100')
    (52, 6)

    >>> parse_bits('0001')
    (1, 4)

    >>> parse_bits('1 0 1')
    (5, 3)

    >>> parse_bits('')
    Traceback (most recent call last):
    ...
    caconsensus.exceptions.ContractViolationError: Empty bit string.

    >>> parse_bits('10x')
    Traceback (most recent call last):
    ...
    caconsensus.exceptions.ContractViolationError: Not a bit string: '10x'
    """
    cleaned = bits.replace(' ', '').replace('_', '')
    if not cleaned:
        raise ContractViolationError('Empty bit string.')
    # end if
    if any(char not in '01' for char in cleaned):
        raise ContractViolationError(f'Not a bit string: {bits!r}')
    # end if
    return int(cleaned, 2), len(cleaned)
# end def


def format_bits(value: int, length: int) -> str:
    """
    Inverse of `parse_bits`.

    >>> format_bits(52, 6)
    '110100'

    >>> format_bits(1, 4)
    '0001'

    >>> format_bits(0, 0)
    ''
    """
    if length == 0:
        return ''
    # end if
    return format(value, f'0{length}b')
# end def


def bits_of(value: int, length: int) -> List[int]:
    """
    >>> bits_of(6, 4)
    [0, 1, 1, 0]
    """
    return [(value >> (length - 1 - i)) & 1 for i in range(length)]
# end def


def value_of(bits: Sequence[int]) -> int:
    """
    >>> value_of([0, 1, 1, 0])
    6

    >>> value_of([1, 2])
    Traceback (most recent call last):
    ...
    caconsensus.exceptions.ContractViolationError: Not a bit sequence: [1, 2]
    """
    value = 0
    for bit in bits:
        if bit not in (0, 1):
            raise ContractViolationError(f'Not a bit sequence: {list(bits)!r}')
        # end if
        value = (value << 1) | int(bit)
    # end for
    return value
# end def


def rotate_left(value: int, shift: int, length: int) -> int:
    """
    Cyclic rotation of a `length` bit word, moving cell i to cell i - shift.

    >>> format_bits(rotate_left(0b1100, 1, 4), 4)
    '1001'

    >>> format_bits(rotate_left(0b1100, -1, 4), 4)
    '0110'

    >>> rotate_left(0b1100, 4, 4) == 0b1100
    True
    """
    shift %= length
    mask = (1 << length) - 1
    return ((value << shift) | (value >> (length - shift))) & mask
# end def


def reverse_bits(value: int, length: int) -> int:
    """
    >>> format_bits(reverse_bits(0b1101, 4), 4)
    '1011'
    """
    result = 0
    for _ in range(length):
        result = (result << 1) | (value & 1)
        value >>= 1
    # end for
    return result
# end def


def complement_bits(value: int, length: int) -> int:
    """
    >>> format_bits(complement_bits(0b1101, 4), 4)
    '0010'
    """
    return value ^ ((1 << length) - 1)
# end def


def parse_length_range(text: str) -> List[int]:
    """
    '5-20' -> [5, ..., 20]; '7' -> [7]; '5,6,9' -> [5, 6, 9].

    >>> parse_length_range('5-8')
    [5, 6, 7, 8]

    >>> parse_length_range('9')
    [9]

    >>> parse_length_range('5,6,9')
    [5, 6, 9]
    """
    text = text.strip()
    if ',' in text:
        lengths = [int(part) for part in text.split(',') if part.strip()]
    elif '-' in text:
        start, end = text.split('-', maxsplit=1)
        lengths = list(range(int(start), int(end) + 1))
    else:
        lengths = [int(text)]
    # end if
    if not lengths:
        raise ContractViolationError(f'Empty length range: {text!r}')
    # end if
    if any(b <= a for a, b in zip(lengths, lengths[1:])):
        raise ContractViolationError(f'Length range must be strictly ascending: {text!r}')
    # end if
    if lengths[0] < 1:
        raise ContractViolationError(f'Lengths must be positive: {text!r}')
    # end if
    return lengths
# end def

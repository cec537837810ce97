#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Sufficient conditions for a rule to decide its class's problem for every L >= 5.

- Class A: f^m = x_a * x_b * phi, basin of 1^L is {1^L}.
- Class B: 00 survives and is created from 1101/1011, 00 grows to 000, basin of 1^L adds the alternating words.
- Class C: every non-trivial configuration makes 000, 000 grows to 0000, basin of 1^L adds (1100)^(L/4).

Offsets are 0-based cell positions inside the checked block.
A displacement is the cell shift from the zero run to the longer run it produces.
"""
from collections import Counter
from dataclasses import dataclass
from typing import Union, Dict, Tuple, Optional, Iterable, ClassVar, Sequence

import numpy as np
from luckydonaldUtils.logger import logging
from luckydonaldUtils.typing import JSONType

from .data import Bounds
from .dynamics import expected_one_basin_size
from .exceptions import ResourceBoundError, UnsupportedRuleError
from .failing import failing_mask, failing_automata
from .machine import CertifierMachine
from .rules import (
    Rule, Powers, ForcingDecomposition, evaluate, forcing_decompositions, decomposition_at,
    DEFAULT_MAX_TABLE_BITS,
)

__author__ = 'luckydonald'

logger = logging.getLogger(__name__)
if __name__ == '__main__':
    logging.add_colored_handler(level=logging.DEBUG)
# end if


B_TABLE_CONDITIONS = {
    '01010': 1,
    '10101': 1,
    '11111': 1,
    '00000': 0,
}
C_TABLE_CONDITIONS = {
    **B_TABLE_CONDITIONS,
    '11001': 1,
    '00110': 1,
    '01100': 0,
    '10011': 0,
}

RUN_00 = (0b00,)
CREATORS_00 = (0b1101, 0b1011)
RUN_000 = (0b000,)


def table_conditions_hold(rule: Rule, conditions: Dict[str, int]) -> bool:
    return all(evaluate(rule, window) == value for window, value in conditions.items())
# end def


def _pattern_mask(blocks: np.ndarray, block_length: int, offset: int, width: int, values: Sequence[int]) -> np.ndarray:
    """ Blocks having one of `values` as the `width` cells starting at `offset`. """
    sub = (blocks >> np.uint32(block_length - offset - width)) & np.uint32((1 << width) - 1)
    return np.isin(sub, np.array(values, dtype=np.uint32))
# end def


def _block_length(rule: Rule, n: int, outputs: int) -> int:
    return (rule.size - 1) * n + outputs
# end def


def _check_block_length(block_length: int, max_block_bits: int) -> None:
    if block_length > max_block_bits:
        raise ResourceBoundError(
            f'Checking blocks of length {block_length} needs 2^{block_length} entries, the limit is 2^{max_block_bits}.',
            needed=block_length, allowed=max_block_bits,
        )
    # end if
# end def


def window_property_holds(
    power: Rule, block_length: int, offset: int, width: int, values: Sequence[int],
    max_block_bits: int = Bounds.max_block_bits,
) -> bool:
    """
    Every block of `block_length` cells with one of `values` at `offset` has only zero f^n-images.
    """
    if not 0 <= offset <= block_length - width:
        return False
    # end if
    _check_block_length(block_length, max_block_bits)
    blocks = np.arange(1 << block_length, dtype=np.uint32)
    failing = failing_mask(power, block_length)
    return not np.any(failing & _pattern_mask(blocks, block_length, offset, width, values))
# end def


def _search_window_property(
    rule: Rule, powers: Powers, n_max: int, outputs: int, width: int, values: Sequence[int], max_block_bits: int,
) -> Optional[Tuple[int, int]]:
    """ Smallest (n, offset) for which the window property holds, smallest offset within one n. """
    for n in range(1, n_max + 1):
        block_length = _block_length(rule, n, outputs)
        try:
            _check_block_length(block_length, max_block_bits)
            power = powers[n]
        except ResourceBoundError as e:
            logger.warning(f'search for {rule.rule_id} stopped at exponent {n}, inconclusive: {e}')
            return None
        # end try
        blocks = np.arange(1 << block_length, dtype=np.uint32)
        failing = failing_mask(power, block_length)
        for offset in range(block_length - width + 1):
            if not np.any(failing & _pattern_mask(blocks, block_length, offset, width, values)):
                return n, offset
            # end if
        # end for
    # end for
    return None
# end def


def _require_radius_two(rule: Rule) -> None:
    if rule.extents != (2, 2):
        raise UnsupportedRuleError(f'This check is defined for radius 2 rules, got extents {rule.extents}.')
    # end if
# end def


@dataclass(frozen=True)
class PreservationWitness(object):
    """ 00 stays at (m1, i1); 1101 or 1011 make 00 at (m2, i2). """
    m1: int
    i1: int
    m2: int
    i2: int

    @property
    def n1(self) -> int:
        return max(self.m1, self.m2)
    # end def
# end class


@dataclass(frozen=True)
class GrowthWitness(object):
    """ A zero run at `offset` of a block of order `n` becomes a longer run, shifted by `displacement` cells. """
    n: int
    offset: int
    displacement: int
# end class


def check_b1(
    rule: Rule, m_max: int = Bounds.b_n1_max, max_block_bits: int = Bounds.max_block_bits, powers: Powers = None,
) -> Optional[PreservationWitness]:
    _require_radius_two(rule)
    powers = Powers(rule) if powers is None else powers
    preserving = _search_window_property(rule, powers, m_max, 2, 2, RUN_00, max_block_bits)
    if preserving is None:
        return None
    # end if
    creating = _search_window_property(rule, powers, m_max, 2, 4, CREATORS_00, max_block_bits)
    if creating is None:
        return None
    # end if
    return PreservationWitness(m1=preserving[0], i1=preserving[1], m2=creating[0], i2=creating[1])
# end def


def _growth(
    rule: Rule, powers: Powers, n_max: int, outputs: int, values: Sequence[int], max_block_bits: int,
) -> Optional[GrowthWitness]:
    found = _search_window_property(rule, powers, n_max, outputs, outputs - 1, values, max_block_bits)
    if found is None:
        return None
    # end if
    n, offset = found
    return GrowthWitness(n=n, offset=offset, displacement=rule.left_extent * n - offset)
# end def


def check_b2(
    rule: Rule, n_max: int = Bounds.b_n2_max, max_block_bits: int = Bounds.max_block_bits, powers: Powers = None,
) -> Optional[GrowthWitness]:
    """ 00 grows to 000 after n steps. """
    _require_radius_two(rule)
    powers = Powers(rule) if powers is None else powers
    return _growth(rule, powers, n_max, 3, RUN_00, max_block_bits)
# end def


def check_c2(
    rule: Rule, n_max: int = Bounds.c_n2_max, max_block_bits: int = Bounds.max_block_bits, powers: Powers = None,
) -> Optional[GrowthWitness]:
    """ 000 grows to 0000 after n steps. """
    _require_radius_two(rule)
    powers = Powers(rule) if powers is None else powers
    return _growth(rule, powers, n_max, 4, RUN_000, max_block_bits)
# end def


def check_c1(
    rule: Rule, n_max: int = Bounds.c_n1_max, max_automaton_bits: int = Bounds.max_automaton_bits,
) -> Optional[int]:
    """ Smallest order whose failing graph has only the trivial failing cycles. """
    _require_radius_two(rule)
    try:
        for automaton in failing_automata(rule, n_max, max_automaton_bits=max_automaton_bits):
            if automaton.cycles_are_trivial():
                return automaton.order
            # end if
        # end for
    except ResourceBoundError as e:
        logger.warning(f'failing cycle check for {rule.rule_id} inconclusive: {e}')
    # end try
    return None
# end def


def growth_holds(rule: Rule, witness: GrowthWitness, outputs: int, values: Sequence[int], bounds: Bounds) -> bool:
    if witness.displacement != rule.left_extent * witness.n - witness.offset:
        return False
    # end if
    power = Powers(rule, max_table_bits=bounds.max_table_bits)[witness.n]
    block_length = _block_length(rule, witness.n, outputs)
    return window_property_holds(power, block_length, witness.offset, outputs - 1, values, bounds.max_block_bits)
# end def


class Certificate(object):
    """
    Base of the certificate kinds, registered at `certifiers` in the order they are tried.
    """
    kind: ClassVar[str] = None

    @classmethod
    def applies_to(cls, rule: Rule) -> bool:
        raise NotImplementedError('Subclasses must implement this.')
    # end def

    @classmethod
    def certify(cls, rule: Rule, bounds: Bounds, powers: Powers = None) -> Optional['Certificate']:
        raise NotImplementedError('Subclasses must implement this.')
    # end def

    def revalidate(self, rule: Rule, bounds: Bounds) -> bool:
        raise NotImplementedError('Subclasses must implement this.')
    # end def

    @property
    def exponents(self) -> Dict[str, int]:
        """ The exponents the certificate report tallies. """
        raise NotImplementedError('Subclasses must implement this.')
    # end def

    def to_dict(self) -> Dict[str, JSONType]:
        raise NotImplementedError('Subclasses must implement this.')
    # end def

    @classmethod
    def from_dict(cls, data: Dict[str, JSONType]) -> 'Certificate':
        raise NotImplementedError('Subclasses must implement this.')
    # end def

    @classmethod
    def expected_one_basin_size(cls, length: int) -> int:
        return expected_one_basin_size(cls.kind, length)
    # end def

    def __eq__(self, other) -> bool:
        if not isinstance(other, Certificate):
            return NotImplemented
        # end if
        return self.to_dict() == other.to_dict()
    # end def

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.to_dict().items())))
    # end def
# end class


certifiers = CertifierMachine()


@certifiers.register
class ClassACertificate(Certificate):
    kind = 'A'
    decomposition: ForcingDecomposition

    def __init__(self, decomposition: ForcingDecomposition):
        self.decomposition = decomposition
    # end def

    @classmethod
    def applies_to(cls, rule: Rule) -> bool:
        return rule.is_symmetric
    # end def

    @classmethod
    def certify(cls, rule: Rule, bounds: Bounds = None, powers: Powers = None) -> Optional['ClassACertificate']:
        bounds = Bounds() if bounds is None else bounds
        if not _homogeneous_fixed(rule):
            return None
        # end if
        for decomposition in forcing_decompositions(
            rule, bounds.m_max, max_table_bits=bounds.max_table_bits, powers=powers,
        ):
            if decomposition.satisfies_class_a:
                return cls(decomposition)
            # end if
            logger.debug(f'{rule.rule_id}: {decomposition!r} does not satisfy class A')
        # end for
        return None
    # end def

    def revalidate(self, rule: Rule, bounds: Bounds = None) -> bool:
        bounds = Bounds() if bounds is None else bounds
        if not _homogeneous_fixed(rule):
            return False
        # end if
        stored = self.decomposition
        power = Powers(rule, max_table_bits=bounds.max_table_bits)[stored.m]
        recomputed = decomposition_at(power, stored.m, stored.pos_a, stored.pos_b)
        return recomputed == stored and recomputed.satisfies_class_a
    # end def

    @property
    def exponents(self) -> Dict[str, int]:
        return {'m': self.decomposition.m}
    # end def

    def to_dict(self) -> Dict[str, JSONType]:
        return {'class': self.kind, **self.decomposition.to_dict()}
    # end def

    @classmethod
    def from_dict(cls, data: Dict[str, JSONType]) -> 'ClassACertificate':
        if isinstance(data, cls):
            return data
        # end if
        return cls(ForcingDecomposition.from_dict(data))
    # end def

    def __repr__(self):
        return f'{self.__class__.__name__}(decomposition={self.decomposition!r})'
    # end def

    __str__ = __repr__
# end class


def _homogeneous_fixed(rule: Rule) -> bool:
    return rule.table[0] == 0 and rule.table[-1] == 1
# end def


@certifiers.register
class ClassBCertificate(Certificate):
    kind = 'B'
    preservation: PreservationWitness
    growth: GrowthWitness

    def __init__(self, preservation: PreservationWitness, growth: GrowthWitness):
        self.preservation = preservation
        self.growth = growth
    # end def

    @classmethod
    def applies_to(cls, rule: Rule) -> bool:
        return rule.extents == (2, 2)
    # end def

    @classmethod
    def certify(cls, rule: Rule, bounds: Bounds = None, powers: Powers = None) -> Optional['ClassBCertificate']:
        bounds = Bounds() if bounds is None else bounds
        if not table_conditions_hold(rule, B_TABLE_CONDITIONS):
            return None
        # end if
        powers = Powers(rule, max_table_bits=bounds.max_table_bits) if powers is None else powers
        growth = check_b2(rule, bounds.b_n2_max, max_block_bits=bounds.max_block_bits, powers=powers)
        if growth is None:
            return None
        # end if
        preservation = check_b1(rule, bounds.b_n1_max, max_block_bits=bounds.max_block_bits, powers=powers)
        if preservation is None:
            return None
        # end if
        return cls(preservation=preservation, growth=growth)
    # end def

    def revalidate(self, rule: Rule, bounds: Bounds = None) -> bool:
        bounds = Bounds() if bounds is None else bounds
        if not table_conditions_hold(rule, B_TABLE_CONDITIONS):
            return False
        # end if
        powers = Powers(rule, max_table_bits=bounds.max_table_bits)
        p = self.preservation
        return (
            window_property_holds(powers[p.m1], _block_length(rule, p.m1, 2), p.i1, 2, RUN_00, bounds.max_block_bits) and
            window_property_holds(powers[p.m2], _block_length(rule, p.m2, 2), p.i2, 4, CREATORS_00, bounds.max_block_bits) and
            growth_holds(rule, self.growth, 3, RUN_00, bounds)
        )
    # end def

    @property
    def exponents(self) -> Dict[str, int]:
        return {'n1': self.preservation.n1, 'n2': self.growth.n}
    # end def

    def to_dict(self) -> Dict[str, JSONType]:
        return {
            'class': self.kind,
            'm1': self.preservation.m1,
            'i1': self.preservation.i1,
            'm2': self.preservation.m2,
            'i2': self.preservation.i2,
            'n1': self.preservation.n1,
            'n2': self.growth.n,
            'offset': self.growth.offset,
            'displacement': self.growth.displacement,
        }
    # end def

    @classmethod
    def from_dict(cls, data: Dict[str, JSONType]) -> 'ClassBCertificate':
        if isinstance(data, cls):
            return data
        # end if
        return cls(
            preservation=PreservationWitness(m1=data['m1'], i1=data['i1'], m2=data['m2'], i2=data['i2']),
            growth=GrowthWitness(n=data['n2'], offset=data['offset'], displacement=data['displacement']),
        )
    # end def

    def __repr__(self):
        return (
            f'{self.__class__.__name__}('
            f'preservation={self.preservation!r}, '
            f'growth={self.growth!r}'
            ')'
        )
    # end def

    __str__ = __repr__
# end class


@certifiers.register
class ClassCCertificate(Certificate):
    kind = 'C'
    n1: int
    growth: GrowthWitness

    def __init__(self, n1: int, growth: GrowthWitness):
        self.n1 = n1
        self.growth = growth
    # end def

    @classmethod
    def applies_to(cls, rule: Rule) -> bool:
        return rule.extents == (2, 2)
    # end def

    @classmethod
    def certify(cls, rule: Rule, bounds: Bounds = None, powers: Powers = None) -> Optional['ClassCCertificate']:
        bounds = Bounds() if bounds is None else bounds
        if not table_conditions_hold(rule, C_TABLE_CONDITIONS):
            return None
        # end if
        powers = Powers(rule, max_table_bits=bounds.max_table_bits) if powers is None else powers
        growth = check_c2(rule, bounds.c_n2_max, max_block_bits=bounds.max_block_bits, powers=powers)
        if growth is None:
            return None
        # end if
        n1 = check_c1(rule, bounds.c_n1_max, max_automaton_bits=bounds.max_automaton_bits)
        if n1 is None:
            return None
        # end if
        return cls(n1=n1, growth=growth)
    # end def

    def revalidate(self, rule: Rule, bounds: Bounds = None) -> bool:
        bounds = Bounds() if bounds is None else bounds
        if not table_conditions_hold(rule, C_TABLE_CONDITIONS):
            return False
        # end if
        if check_c1(rule, self.n1, max_automaton_bits=bounds.max_automaton_bits) != self.n1:
            return False
        # end if
        return growth_holds(rule, self.growth, 4, RUN_000, bounds)
    # end def

    @property
    def exponents(self) -> Dict[str, int]:
        return {'n1': self.n1, 'n2': self.growth.n}
    # end def

    def to_dict(self) -> Dict[str, JSONType]:
        return {
            'class': self.kind,
            'n1': self.n1,
            'n2': self.growth.n,
            'offset': self.growth.offset,
            'displacement': self.growth.displacement,
        }
    # end def

    @classmethod
    def from_dict(cls, data: Dict[str, JSONType]) -> 'ClassCCertificate':
        if isinstance(data, cls):
            return data
        # end if
        return cls(
            n1=data['n1'],
            growth=GrowthWitness(n=data['n2'], offset=data['offset'], displacement=data['displacement']),
        )
    # end def

    def __repr__(self):
        return (
            f'{self.__class__.__name__}('
            f'n1={self.n1!r}, '
            f'growth={self.growth!r}'
            ')'
        )
    # end def

    __str__ = __repr__
# end class


def certify_class_a(
    rule: Rule, m_max: int = Bounds.m_max, max_table_bits: int = DEFAULT_MAX_TABLE_BITS, powers: Powers = None,
) -> Optional[ClassACertificate]:
    if not rule.is_symmetric:
        raise UnsupportedRuleError(f'Class A certification needs symmetric extents, got {rule.extents}.')
    # end if
    try:
        return ClassACertificate.certify(rule, Bounds().replace(m_max=m_max, max_table_bits=max_table_bits), powers=powers)
    except ResourceBoundError as e:
        logger.warning(f'class A certification of {rule.rule_id} inconclusive: {e}')
        return None
    # end try
# end def


def certify_class_b(rule: Rule, bounds: Bounds = None, powers: Powers = None) -> Optional[ClassBCertificate]:
    _require_radius_two(rule)
    return ClassBCertificate.certify(rule, bounds, powers=powers)
# end def


def certify_class_c(rule: Rule, bounds: Bounds = None, powers: Powers = None) -> Optional[ClassCCertificate]:
    _require_radius_two(rule)
    return ClassCCertificate.certify(rule, bounds, powers=powers)
# end def


def certify(rule: Rule, bounds: Bounds = None) -> Optional[Certificate]:
    """ Class A, then B, then C. """
    return certifiers.certify(rule, bounds=bounds)
# end def


class CertificateReport(object):
    """
    Number of certified rules per class and how their exponents are distributed.
    """
    counts: Dict[str, int]
    distributions: Dict[Tuple[str, str], Dict[int, int]]

    def __init__(self, counts: Dict[str, int], distributions: Dict[Tuple[str, str], Dict[int, int]]):
        self.counts = counts
        self.distributions = distributions
    # end def

    def to_dict(self) -> Dict[str, JSONType]:
        return {
            'counts': dict(self.counts),
            'distributions': {
                f'{kind}.{name}': {str(value): count for value, count in sorted(distribution.items())}
                for (kind, name), distribution in sorted(self.distributions.items())
            },
        }
    # end def

    def to_text(self) -> str:
        lines = []
        for kind in sorted(self.counts):
            lines.append(f'class {kind}: {self.counts[kind]} certified')
            for (distribution_kind, name), distribution in sorted(self.distributions.items()):
                if distribution_kind != kind:
                    continue
                # end if
                row = ', '.join(f'{value}: {count}' for value, count in sorted(distribution.items()))
                lines.append(f'  smallest {name}: {row}')
            # end for
        # end for
        return '\n'.join(lines)
    # end def

    def __repr__(self):
        return (
            f'{self.__class__.__name__}('
            f'counts={self.counts!r}, '
            f'distributions={self.distributions!r}'
            ')'
        )
    # end def

    __str__ = __repr__
# end class


def certificate_report(certificates: Iterable[Union[Certificate, Dict[str, JSONType]]]) -> CertificateReport:
    counts = Counter()
    distributions: Dict[Tuple[str, str], Counter] = {}
    for certificate in certificates:
        certificate = certifiers.from_dict(certificate)
        counts[certificate.kind] += 1
        for name, value in certificate.exponents.items():
            distributions.setdefault((certificate.kind, name), Counter())[value] += 1
        # end for
    # end for
    return CertificateReport(
        counts=dict(counts),
        distributions={key: dict(counter) for key, counter in distributions.items()},
    )
# end def

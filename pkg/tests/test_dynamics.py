#!/usr/bin/env python3
# -*- coding: utf-8 -*-
import random
import unittest
from collections import Counter

from luckydonaldUtils.logger import logging

from caconsensus.dynamics import (
    CyclicConfig, PatternVector, step, orbit, successors, attractors, consensus_counts, filter_rule,
    is_consensus_candidate, basin_sizes, pattern, expected_one_basin, expected_one_basin_size, homogeneous_basin,
)
from caconsensus.exceptions import ContractViolationError, ResourceBoundError
from caconsensus.rules import Rule, wolfram_decode, negate, reflect
from caconsensus.utils import reverse_bits, complement_bits

__author__ = 'luckydonald'

logger = logging.getLogger(__name__)
if __name__ == '__main__':
    logging.add_colored_handler(level=logging.DEBUG)
# end if


CLASS_B_RULE = 2149581824  # 1 exactly on 11111, 01010, 10101
CLASS_C_RULE = 2183136320  # additionally 1 on 11001, 00110


def eca(number: int) -> Rule:
    return wolfram_decode(number, (1, 1))
# end def


def naive_successor(table, left_extent: int, right_extent: int, length: int, state: int) -> int:
    cells = [(state >> (length - 1 - i)) & 1 for i in range(length)]
    result = 0
    for i in range(length):
        window = 0
        for offset in range(-left_extent, right_extent + 1):
            window = (window << 1) | cells[(i + offset) % length]
        # end for
        result = (result << 1) | int(table[window])
    # end for
    return result
# end def


def naive_attractors(rule: Rule, length: int):
    """ {cycle as tuple starting at its minimum: basin size}, by walking every orbit. """
    table = rule.table.tolist()
    succ = [naive_successor(table, rule.left_extent, rule.right_extent, length, x) for x in range(1 << length)]
    representative = {}
    cycles = {}
    for x in range(1 << length):
        path, position = [], {}
        y = x
        while y not in representative and y not in position:
            position[y] = len(path)
            path.append(y)
            y = succ[y]
        # end while
        if y in representative:
            head = representative[y]
        else:
            cycle = path[position[y]:]
            head = min(cycle)
            start = cycle.index(head)
            cycles[head] = tuple(cycle[start:] + cycle[:start])
            for state in cycle:
                representative[state] = head
            # end for
        # end if
        for state in path:
            representative.setdefault(state, head)
        # end for
    # end for
    sizes = Counter(representative.values())
    return {cycles[head]: sizes[head] for head in cycles}
# end def


class StepTests(unittest.TestCase):
    def test_parity_step(self):
        self.assertEqual(str(step(eca(150), CyclicConfig.from_bits('11000'))), '00101')

    def test_alternating_becomes_ones(self):
        rule = wolfram_decode(CLASS_B_RULE, (2, 2))
        for length in (6, 8, 10):
            config = CyclicConfig.from_bits('10' * (length // 2))
            self.assertEqual(step(rule, config), CyclicConfig.homogeneous(1, length))

    def test_orbit(self):
        trajectory = orbit(eca(160), CyclicConfig.from_bits('101010'), 2)
        self.assertEqual([str(c) for c in trajectory], ['101010', '010101', '101010'])

    def test_successors_match_step(self):
        rng = random.Random(23)
        for extents, length in (((1, 1), 7), ((2, 2), 9), ((2, 2), 3), ((2, 1), 5), ((1, 0), 6)):
            rule = Rule(*extents, [rng.randint(0, 1) for _ in range(1 << (sum(extents) + 1))])
            succ = successors(rule, length)
            for x in range(1 << length):
                self.assertEqual(int(succ[x]), step(rule, CyclicConfig(length=length, bits=x)).bits)

    def test_shift_equivariance(self):
        rng = random.Random(29)
        rule = Rule(2, 2, [rng.randint(0, 1) for _ in range(32)])
        for x in range(0, 256, 7):
            config = CyclicConfig(length=8, bits=x)
            for shift in (1, 3, -2):
                self.assertEqual(step(rule, config.rotate(shift)), step(rule, config).rotate(shift))

    def test_symmetries_conjugate_the_global_map(self):
        rng = random.Random(31)
        rule = Rule(2, 2, [rng.randint(0, 1) for _ in range(32)])
        length = 7
        for x in range(1 << length):
            image = step(rule, CyclicConfig(length=length, bits=x)).bits
            negated = step(negate(rule), CyclicConfig(length=length, bits=complement_bits(x, length))).bits
            reflected = step(reflect(rule), CyclicConfig(length=length, bits=reverse_bits(x, length))).bits
            self.assertEqual(negated, complement_bits(image, length))
            self.assertEqual(reflected, reverse_bits(image, length))

    def test_invalid_configuration(self):
        with self.assertRaises(ContractViolationError):
            CyclicConfig(length=3, bits=8)
        with self.assertRaises(ContractViolationError):
            CyclicConfig(length=0, bits=0)

    def test_length_bound(self):
        with self.assertRaises(ResourceBoundError):
            successors(eca(110), 27)
        with self.assertRaises(ResourceBoundError):
            attractors(eca(110), 12, max_length=10)
# end class


class AttractorTests(unittest.TestCase):
    def test_all_elementary_rules_against_naive_walk(self):
        for number in range(256):
            rule = eca(number)
            for length in range(3, 11):
                report = attractors(rule, length)
                expected = naive_attractors(rule, length)
                got = {tuple(c.bits for c in cycle): size for cycle, size in zip(report.attractors, report.basin_sizes)}
                self.assertEqual(got, expected, msg=f'rule {number} at L={length}')
                self.assertEqual(sum(report.basin_sizes), 1 << length)

    def test_radius_two_against_naive_walk(self):
        rng = random.Random(37)
        for _ in range(10):
            rule = Rule(2, 2, [rng.randint(0, 1) for _ in range(32)])
            for length in (5, 8, 9):
                report = attractors(rule, length)
                got = {tuple(c.bits for c in cycle): size for cycle, size in zip(report.attractors, report.basin_sizes)}
                self.assertEqual(got, naive_attractors(rule, length))

    def test_identity(self):
        report = attractors(eca(204), 5)
        self.assertEqual(len(report.attractors), 32)
        self.assertEqual(set(report.basin_sizes), {1})
        self.assertFalse(report.is_consensus)

    def test_rule_136(self):
        report = attractors(eca(136), 5)
        self.assertTrue(report.is_consensus)
        self.assertEqual(report.basin_sizes, [31, 1])
        self.assertEqual(report.basin_of(CyclicConfig.homogeneous(1, 5)), 1)
        self.assertEqual(report.to_dict()['attractors'], [['00'], ['1f']])
        self.assertIn('basin=31', report.to_text())

    def test_rule_160_two_cycle(self):
        report = attractors(eca(160), 6)
        alternating = CyclicConfig.from_bits('010101')
        cycle = next(cycle for cycle in report.attractors if alternating in cycle)
        self.assertEqual(set(cycle), {alternating, CyclicConfig.from_bits('101010')})
        self.assertEqual(cycle[0], alternating)
        self.assertFalse(report.is_consensus)

    def test_basin_of_unknown_configuration(self):
        with self.assertRaises(ContractViolationError):
            attractors(eca(136), 5).basin_of(CyclicConfig.from_bits('10100'))
# end class


class ConsensusFilterTests(unittest.TestCase):
    def test_candidates(self):
        lengths = range(5, 13)
        self.assertTrue(is_consensus_candidate(eca(136), lengths))
        self.assertEqual(filter_rule(eca(204), lengths), (False, 5))
        self.assertEqual(filter_rule(eca(0), lengths), (False, 5))
        self.assertFalse(is_consensus_candidate(eca(160), lengths))

    def test_reject_length_and_counts(self):
        reject_length, counts = consensus_counts(eca(136), [5, 6, 7])
        self.assertIsNone(reject_length)
        self.assertEqual(counts, [1, 1, 1])
        with self.assertRaises(ContractViolationError):
            consensus_counts(eca(136), [6, 5])

    def test_filter_agrees_with_attractors(self):
        for number in range(256):
            rule = eca(number)
            reject_length, counts = consensus_counts(rule, range(5, 10))
            for length in range(5, 10):
                report = attractors(rule, length)
                if reject_length is not None and length == reject_length:
                    self.assertFalse(report.is_consensus)
                    break
                # end if
                self.assertTrue(report.is_consensus)
                self.assertEqual(counts[length - 5], report.basin_of(CyclicConfig.homogeneous(1, length)))

    def test_longer_ranges_keep_fewer_rules(self):
        short = {n for n in range(256) if is_consensus_candidate(eca(n), range(5, 8))}
        long = {n for n in range(256) if is_consensus_candidate(eca(n), range(5, 10))}
        self.assertLessEqual(long, short)
        self.assertIn(136, long)

    def test_basin_sizes(self):
        for length in range(5, 11):
            self.assertEqual(basin_sizes(eca(136), length), ((1 << length) - 1, 1))
        with self.assertRaises(ContractViolationError):
            basin_sizes(eca(204), 5)

    def test_symmetries_transport_basins(self):
        for number in range(256):
            rule = eca(number)
            for length in (5, 6, 8):
                ones = len(homogeneous_basin(rule, length, 1))
                zeros = len(homogeneous_basin(rule, length, 0))
                self.assertEqual(len(homogeneous_basin(reflect(rule), length, 1)), ones)
                self.assertEqual(len(homogeneous_basin(negate(rule), length, 0)), ones)
                self.assertEqual(len(homogeneous_basin(negate(rule), length, 1)), zeros)
# end class


class PatternTests(unittest.TestCase):
    def test_class_a_pattern(self):
        vector = pattern(eca(136))
        self.assertEqual(vector.counts, (1,) * 16)
        self.assertEqual(vector.pattern_class(), 'A')
        self.assertEqual(str(vector), ';'.join(['1'] * 16))

    def test_class_b_rule(self):
        vector = pattern(wolfram_decode(CLASS_B_RULE, (2, 2)), range(5, 13))
        self.assertEqual(vector.counts, (1, 3, 1, 3, 1, 3, 1, 3))
        self.assertEqual(vector.pattern_class(), 'B')

    def test_class_c_rule(self):
        rule = wolfram_decode(CLASS_C_RULE, (2, 2))
        vector = pattern(rule, range(5, 13))
        self.assertEqual(vector.counts, (1, 3, 1, 7, 1, 3, 1, 7))
        self.assertEqual(vector.pattern_class(), 'C')
        self.assertEqual(homogeneous_basin(rule, 8), expected_one_basin('C', 8))

    def test_not_a_candidate(self):
        with self.assertRaises(ContractViolationError):
            pattern(eca(204), range(5, 8))

    def test_vector_from_str(self):
        vector = PatternVector.from_str('1;3;1', lengths=(5, 6, 7))
        self.assertEqual(vector.counts, (1, 3, 1))
        self.assertEqual(vector.pattern_class(), 'B/C')
        self.assertEqual(vector.matching_classes(), ('B', 'C'))
        self.assertEqual(PatternVector(counts=(1, 1), lengths=(5, 7)).pattern_class(), 'A/B/C')
        self.assertEqual(PatternVector(counts=(1, 3, 1, 3), lengths=(5, 6, 7, 8)).pattern_class(), 'B')
        self.assertIsNone(PatternVector(counts=(1, 5, 1), lengths=(5, 6, 7)).pattern_class())
        with self.assertRaises(ContractViolationError):
            PatternVector(counts=(1, 3), lengths=(5, 6, 7))
        with self.assertRaises(ContractViolationError):
            PatternVector(counts=(33,), lengths=(5,))

    def test_expected_basins(self):
        self.assertEqual(expected_one_basin('A', 8), {CyclicConfig.homogeneous(1, 8)})
        self.assertEqual(
            {str(c) for c in expected_one_basin('C', 8)},
            {'11111111', '10101010', '01010101', '11001100', '10011001', '00110011', '01100110'},
        )
        self.assertEqual([expected_one_basin_size('B', length) for length in range(5, 9)], [1, 3, 1, 3])
        with self.assertRaises(ContractViolationError):
            expected_one_basin('D', 8)
# end class


if __name__ == '__main__':
    unittest.main()
# end if

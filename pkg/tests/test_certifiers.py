#!/usr/bin/env python3
# -*- coding: utf-8 -*-
import random
from typing import Dict
import unittest

from luckydonaldUtils.logger import logging

from caconsensus.certifiers import (
    Certificate, ClassACertificate, ClassBCertificate, ClassCCertificate, PreservationWitness, GrowthWitness,
    certifiers, certify, certify_class_a, certify_class_b, certify_class_c, check_b1, check_b2, check_c1, check_c2,
    certificate_report, table_conditions_hold, B_TABLE_CONDITIONS, C_TABLE_CONDITIONS,
)
from caconsensus.data import Bounds
from caconsensus.dynamics import (
    CyclicConfig, consensus_counts, expected_one_basin, homogeneous_basin, is_consensus_candidate, pattern, step,
)
from caconsensus.exceptions import ContractViolationError, UnsupportedRuleError
from caconsensus.machine import CertifierMachine
from caconsensus.rules import Rule, wolfram_decode

__author__ = 'luckydonald'

logger = logging.getLogger(__name__)
if __name__ == '__main__':
    logging.add_colored_handler(level=logging.DEBUG)
# end if


CLASS_B_RULE = 2149581824  # 1 exactly on 11111, 01010, 10101
CLASS_C_RULE = 2183136320  # additionally 1 on 11001, 00110
IDENTITY = Rule(2, 2, [(v >> 2) & 1 for v in range(32)])
ZERO = Rule(2, 2, [0] * 32)


def eca(number: int) -> Rule:
    return wolfram_decode(number, (1, 1))
# end def


def r2(number: int) -> Rule:
    return wolfram_decode(number, (2, 2))
# end def


def class_a_sweep(count: int, seed: int = 61):
    """ f = x0 * x1 * phi with phi(11111) = 1 and phi random elsewhere. """
    rng = random.Random(seed)
    for _ in range(count):
        phi = [rng.randint(0, 1) for _ in range(32)]
        phi[31] = 1
        yield Rule(2, 2, [((v >> 2) & (v >> 1) & 1) * phi[v] for v in range(32)])
    # end for
# end def


def zero_runs(config: CyclicConfig, width: int):
    """ Start cells of cyclic runs of `width` zeros. """
    return [
        j for j in range(config.length)
        if all(config.cell(j + k) == 0 for k in range(width))
    ]
# end def


def grows_in_simulation(rule: Rule, growth: GrowthWitness, width: int, length: int) -> bool:
    """ Every run of `width` zeros at j is a run of `width + 1` zeros at j + displacement after n steps. """
    for bits in range(1 << length):
        config = CyclicConfig(length=length, bits=bits)
        image = config
        for _ in range(growth.n):
            image = step(rule, image)
        # end for
        runs = set(zero_runs(image, width + 1))
        if any((j + growth.displacement) % length not in runs for j in zero_runs(config, width)):
            return False
        # end if
    # end for
    return True
# end def


def table_condition_sample(number: int, conditions: Dict[str, int], count: int, seed: int):
    """ The rule and `count` variants of it, each with one or two table entries outside `conditions` flipped. """
    fixed = {int(window, 2) for window in conditions}
    free = [v for v in range(32) if v not in fixed]
    rng = random.Random(seed)
    yield r2(number)
    for _ in range(count):
        table = list(r2(number).table)
        for v in rng.sample(free, rng.randint(1, 2)):
            table[v] = 1 - table[v]
        # end for
        yield Rule(2, 2, table)
    # end for
# end def


class ClassATests(unittest.TestCase):
    def test_rule_136(self):
        certificate = certify_class_a(eca(136))
        self.assertIsNotNone(certificate)
        self.assertEqual(certificate.to_dict(), {
            'class': 'A', 'm': 1, 'pos_a': 0, 'pos_b': 1, 'phi_all_ones': 1, 'phi_u_word': None,
        })

    def test_no_certificate(self):
        for number in (0, 150, 160, 204, 232):
            with self.subTest(number=number):
                self.assertIsNone(certify_class_a(eca(number)))

    def test_sweep(self):
        for rule in class_a_sweep(200):
            certificate = certify_class_a(rule)
            self.assertIsNotNone(certificate, msg=repr(rule))
            self.assertEqual(certificate.decomposition.m, 1)
            self.assertEqual((certificate.decomposition.pos_a, certificate.decomposition.pos_b), (0, 1))

    def test_sweep_is_consensus(self):
        for rule in class_a_sweep(200):
            reject_length, counts = consensus_counts(rule, range(5, 11))
            self.assertIsNone(reject_length, msg=repr(rule))
            self.assertEqual(counts, [1] * 6)

    def test_table_bound_is_inconclusive(self):
        # rule 160 gets past m = 1, f^2 needs 2^5 entries.
        self.assertIsNone(certify_class_a(eca(160), m_max=5, max_table_bits=4))
        self.assertIsNotNone(certify_class_a(eca(136), m_max=1, max_table_bits=4))

    def test_asymmetric(self):
        with self.assertRaises(UnsupportedRuleError):
            certify_class_a(Rule(1, 0, [0, 0, 0, 1]))
# end class


class ClassBTests(unittest.TestCase):
    def test_table_conditions(self):
        self.assertTrue(table_conditions_hold(r2(CLASS_B_RULE), B_TABLE_CONDITIONS))
        self.assertTrue(table_conditions_hold(r2(CLASS_C_RULE), C_TABLE_CONDITIONS))
        self.assertFalse(table_conditions_hold(r2(CLASS_B_RULE), C_TABLE_CONDITIONS))

    def test_hand_rule(self):
        rule = r2(CLASS_B_RULE)
        self.assertIsNone(certify_class_a(rule))
        self.assertEqual(check_b1(rule), PreservationWitness(m1=1, i1=1, m2=1, i2=1))
        self.assertEqual(check_b2(rule), GrowthWitness(n=1, offset=2, displacement=0))
        certificate = certify(rule)
        self.assertIsInstance(certificate, ClassBCertificate)
        self.assertEqual(certificate.to_dict(), {
            'class': 'B', 'm1': 1, 'i1': 1, 'm2': 1, 'i2': 1, 'n1': 1, 'n2': 1, 'offset': 2, 'displacement': 0,
        })

    def test_hand_rule_growth_in_simulation(self):
        """ 00 at j turns into 000 at j + displacement after n steps. """
        rule = r2(CLASS_B_RULE)
        growth = check_b2(rule)
        for length in range(5, 11):
            for bits in range(1 << length):
                config = CyclicConfig(length=length, bits=bits)
                image = step(rule, config)
                runs = set(zero_runs(image, 3))
                for j in zero_runs(config, 2):
                    self.assertIn((j + growth.displacement) % length, runs)

    def test_hand_rule_basin(self):
        rule = r2(CLASS_B_RULE)
        for length in range(5, 13):
            self.assertEqual(homogeneous_basin(rule, length), expected_one_basin('B', length))

    def test_identity_and_zero(self):
        self.assertIsNone(check_b1(IDENTITY))
        self.assertEqual(check_b2(ZERO), GrowthWitness(n=1, offset=0, displacement=2))
        self.assertIsNone(certify_class_b(IDENTITY))
        self.assertIsNone(certify_class_b(ZERO))

    def test_wrong_table_entry(self):
        table = r2(CLASS_B_RULE).table.copy()
        table[0] = 1
        self.assertIsNone(certify_class_b(Rule(2, 2, table)))

    def test_radius_one_unsupported(self):
        with self.assertRaises(UnsupportedRuleError):
            certify_class_b(eca(232))
        with self.assertRaises(UnsupportedRuleError):
            check_b2(eca(232))
# end class


class ClassCTests(unittest.TestCase):
    def test_hand_rule(self):
        rule = r2(CLASS_C_RULE)
        self.assertIsNone(certify_class_a(rule))
        self.assertIsNone(certify_class_b(rule))
        self.assertEqual(check_c1(rule), 1)
        self.assertEqual(check_c2(rule), GrowthWitness(n=1, offset=3, displacement=-1))
        certificate = certify(rule)
        self.assertIsInstance(certificate, ClassCCertificate)
        self.assertEqual(certificate.to_dict(), {'class': 'C', 'n1': 1, 'n2': 1, 'offset': 3, 'displacement': -1})

    def test_hand_rule_growth_in_simulation(self):
        rule = r2(CLASS_C_RULE)
        growth = check_c2(rule)
        for length in range(6, 11):
            for bits in range(1 << length):
                config = CyclicConfig(length=length, bits=bits)
                image = step(rule, config)
                runs = set(zero_runs(image, 4))
                for j in zero_runs(config, 3):
                    self.assertIn((j + growth.displacement) % length, runs)

    def test_hand_rule_basin(self):
        rule = r2(CLASS_C_RULE)
        for length in range(5, 13):
            self.assertEqual(homogeneous_basin(rule, length), expected_one_basin('C', length))

    def test_identity(self):
        self.assertIsNone(check_c1(IDENTITY, 3))
        self.assertEqual(check_c2(ZERO), GrowthWitness(n=1, offset=0, displacement=2))
        self.assertIsNone(certify_class_c(IDENTITY))

    def test_automaton_bound_is_inconclusive(self):
        self.assertIsNone(check_c1(r2(CLASS_C_RULE), max_automaton_bits=3))
        bounds = Bounds(max_automaton_bits=3)
        self.assertIsNone(certifiers.certify(r2(CLASS_C_RULE), bounds=bounds))
# end class


class SampledRuleTests(unittest.TestCase):
    """ Certified rules of a seeded sample behave like their class on every ring up to 12 cells. """
    lengths = range(5, 13)
    bounds = Bounds(b_n1_max=3, b_n2_max=3, c_n1_max=5, c_n2_max=3)

    def certified(self, number: int, conditions: Dict[str, int], seed: int):
        result = []
        for rule in table_condition_sample(number, conditions, 24, seed):
            self.assertTrue(table_conditions_hold(rule, conditions))
            if not is_consensus_candidate(rule, self.lengths):
                continue
            # end if
            if conditions is C_TABLE_CONDITIONS:
                certificate = certify_class_c(rule, self.bounds)
            else:
                certificate = certify_class_b(rule, self.bounds)
            # end if
            if certificate is not None:
                result.append((rule, certificate))
            # end if
        # end for
        return result
    # end def

    def check_class(self, label: str, certified):
        self.assertTrue(certified)
        for rule, certificate in certified:
            self.assertEqual(certificate.kind, label)
            self.assertEqual(pattern(rule, self.lengths).pattern_class(), label, msg=repr(rule))
            for length in self.lengths:
                with self.subTest(rule=rule.rule_id, length=length):
                    self.assertEqual(homogeneous_basin(rule, length), expected_one_basin(label, length))
                    self.assertTrue(grows_in_simulation(rule, certificate.growth, 2 if label == 'B' else 3, length))
        # end for
    # end def

    def test_class_b_sample(self):
        self.check_class('B', self.certified(CLASS_B_RULE, B_TABLE_CONDITIONS, seed=23))

    def test_class_c_sample(self):
        self.check_class('C', self.certified(CLASS_C_RULE, C_TABLE_CONDITIONS, seed=29))
# end class


class CertificateTests(unittest.TestCase):
    def test_round_trip_and_revalidate(self):
        for rule in (eca(136), r2(CLASS_B_RULE), r2(CLASS_C_RULE)):
            certificate = certify(rule)
            loaded = certifiers.from_dict(certificate.to_dict())
            self.assertEqual(loaded, certificate)
            self.assertTrue(certifiers.revalidate(rule, certificate.to_dict()))

    def test_tampered_certificates(self):
        data = certify(r2(CLASS_B_RULE)).to_dict()
        self.assertFalse(certifiers.revalidate(r2(CLASS_B_RULE), {**data, 'offset': 0, 'displacement': 2}))
        self.assertFalse(certifiers.revalidate(r2(CLASS_B_RULE), {**data, 'displacement': 1}))
        self.assertFalse(certifiers.revalidate(r2(CLASS_C_RULE), data))
        a = certify(eca(136)).to_dict()
        self.assertFalse(certifiers.revalidate(eca(136), {**a, 'pos_b': -1}))
        self.assertFalse(certifiers.revalidate(eca(204), a))

    def test_unknown_kind(self):
        with self.assertRaises(ContractViolationError):
            certifiers.from_dict({'class': 'D'})
        with self.assertRaises(ContractViolationError):
            certifiers.from_dict({'m': 1})

    def test_expected_basin_sizes(self):
        self.assertEqual(ClassACertificate.expected_one_basin_size(8), 1)
        self.assertEqual(ClassBCertificate.expected_one_basin_size(8), 3)
        self.assertEqual(ClassCCertificate.expected_one_basin_size(8), 7)

    def test_report(self):
        certificates = [certify(eca(136)), certify(r2(CLASS_B_RULE)), certify(r2(CLASS_C_RULE))]
        certificates.append(certify(next(class_a_sweep(1))).to_dict())
        report = certificate_report(certificates)
        self.assertEqual(report.counts, {'A': 2, 'B': 1, 'C': 1})
        self.assertEqual(report.distributions[('A', 'm')], {1: 2})
        self.assertEqual(report.distributions[('C', 'n1')], {1: 1})
        self.assertIn('class A: 2 certified', report.to_text())
        self.assertEqual(report.to_dict()['distributions']['B.n2'], {'1': 1})
# end class


class MachineTests(unittest.TestCase):
    def test_order(self):
        self.assertEqual(certifiers.kinds, ['A', 'B', 'C'])
        self.assertIs(certifiers['B'], ClassBCertificate)

    def test_register_checks(self):
        machine = CertifierMachine()

        @machine.register
        class Dummy(Certificate):
            kind = 'X'
        # end class

        self.assertEqual(machine.kinds, ['X'])
        with self.assertRaises(ValueError):
            machine.register(Dummy)
        with self.assertRaises(TypeError):
            machine.register(object)
        with self.assertRaises(ContractViolationError):
            machine['Y']

    def test_radius_one_only_class_a(self):
        self.assertIsNone(certify(eca(160)))
        self.assertIsInstance(certify(eca(136)), ClassACertificate)
# end class


if __name__ == '__main__':
    unittest.main()
# end if

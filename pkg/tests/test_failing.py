#!/usr/bin/env python3
# -*- coding: utf-8 -*-
import random
import unittest

import numpy as np
from luckydonaldUtils.logger import logging

from caconsensus.dynamics import CyclicConfig, step
from caconsensus.exceptions import ContractViolationError, ResourceBoundError
from caconsensus.failing import (
    FailingAutomaton, strongly_connected_components, build_failing_graph, failing_automata,
    only_trivial_failing_cycles,
)
from caconsensus.rules import Rule, Block, compose, extend_to_block, wolfram_decode

__author__ = 'luckydonald'

logger = logging.getLogger(__name__)
if __name__ == '__main__':
    logging.add_colored_handler(level=logging.DEBUG)
# end if


CLASS_C_RULE = 2183136320


def random_rule(rng: random.Random) -> Rule:
    return Rule(2, 2, [rng.randint(0, 1) for _ in range(32)])
# end def


def has_three_zeros(config: CyclicConfig) -> bool:
    """ Cyclically, so short configurations are read as periodic words. """
    length = config.length
    return any(config.cell(j) == config.cell(j + 1) == config.cell(j + 2) == 0 for j in range(length))
# end def


def accepts_periodic(automaton: FailingAutomaton, word: str) -> bool:
    """ Whether reading `word` over and over stays defined from some state. """
    delta = automaton.delta
    current = np.arange(automaton.state_count, dtype=np.int64)
    for _ in range(automaton.state_count + 1):
        for char in word:
            current = np.where(current >= 0, delta[np.maximum(current, 0), int(char)], -1)
        # end for
    # end for
    return bool(np.any(current >= 0))
# end def


class ComponentTests(unittest.TestCase):
    def test_small_graph(self):
        graph = {0: [1], 1: [2], 2: [0, 3], 3: [], 4: [4]}
        components = list(strongly_connected_components(graph.keys(), lambda v: graph[v]))
        self.assertEqual(sorted(map(sorted, components)), [[0, 1, 2], [3], [4]])
        # reverse topological: the sink comes before what reaches it.
        self.assertLess(components.index({3}), components.index({0, 1, 2}))

    def test_long_chain_does_not_recurse(self):
        size = 20000
        components = list(strongly_connected_components(range(size), lambda v: [v + 1] if v + 1 < size else [0]))
        self.assertEqual(len(components), 1)
        self.assertEqual(len(components[0]), size)
# end class


class FailingGraphTests(unittest.TestCase):
    def test_zero_rule_has_no_failing_blocks(self):
        graph = build_failing_graph(Rule(2, 2, [0] * 32), 1)
        self.assertEqual(len(graph), 0)
        self.assertTrue(graph.cycles_are_trivial())

    def test_all_ones_self_loop(self):
        rule = wolfram_decode(CLASS_C_RULE, (2, 2))
        graph = build_failing_graph(rule, 1)
        self.assertEqual(graph.block_length, 7)
        self.assertIn(127, graph)
        self.assertIn(127, graph.successors(127))
        self.assertNotIn(0, graph)

    def test_vertices_are_failing_blocks(self):
        rng = random.Random(41)
        for n in (1, 2):
            rule = random_rule(rng)
            power = compose(rule, n)
            graph = build_failing_graph(rule, n)
            for block in range(0, 1 << graph.block_length, 97):
                images = extend_to_block(power, Block(value=block, length=graph.block_length))
                self.assertEqual(block in graph, images.value != 0)

    def test_edges_overlap(self):
        rule = random_rule(random.Random(43))
        graph = build_failing_graph(rule, 1)
        for p, q in graph.edges():
            self.assertEqual((p << 1) & 0b1111110, q & 0b1111110)
            self.assertIn(p, graph)
            self.assertIn(q, graph)

    def test_vertex_check_matches_simulation(self):
        """ F(c) has 000 at j exactly when the block of c around j is not failing. """
        rng = random.Random(47)
        for _ in range(5):
            rule = random_rule(rng)
            graph = build_failing_graph(rule, 1)
            for length in range(7, 11):
                for bits in range(1 << length):
                    config = CyclicConfig(length=length, bits=bits)
                    blocks_fail = all(
                        Block.from_bits([config.cell(j - 2 + k) for k in range(7)]).value in graph
                        for j in range(length)
                    )
                    self.assertEqual(blocks_fail, not has_three_zeros(step(rule, config)))

    def test_order_bound(self):
        with self.assertRaises(ResourceBoundError):
            build_failing_graph(Rule(2, 2, [0] * 32), 6)
        with self.assertRaises(ContractViolationError):
            build_failing_graph(Rule(2, 2, [0] * 32), 0)
# end class


class FailingAutomatonTests(unittest.TestCase):
    def test_base_level(self):
        base = FailingAutomaton.base()
        self.assertEqual(base.order, 0)
        self.assertEqual(base.state_count, 4)
        self.assertTrue(accepts_periodic(base, '001'))
        self.assertFalse(accepts_periodic(base, '0001'))
        self.assertFalse(base.cycles_are_trivial())

    def test_accepts_exactly_the_failing_cycles(self):
        rng = random.Random(53)
        for _ in range(4):
            rule = random_rule(rng)
            (automaton,) = failing_automata(rule, 1)
            for length in range(1, 8):
                for bits in range(1 << length):
                    config = CyclicConfig(length=length, bits=bits)
                    word = str(config)
                    self.assertEqual(
                        accepts_periodic(automaton, word), not has_three_zeros(step(rule, config)),
                        msg=f'{rule!r} {word}',
                    )

    def test_agrees_with_explicit_graph(self):
        rng = random.Random(59)
        rules = [random_rule(rng) for _ in range(40)]
        rules.append(wolfram_decode(CLASS_C_RULE, (2, 2)))
        rules.append(Rule(2, 2, [(v >> 2) & 1 for v in range(32)]))  # identity
        for rule in rules:
            automata = list(failing_automata(rule, 2))
            for n, automaton in enumerate(automata, start=1):
                self.assertEqual(
                    automaton.cycles_are_trivial(), build_failing_graph(rule, n).cycles_are_trivial(),
                    msg=f'{rule!r} order {n}',
                )

    def test_class_c_rule(self):
        rule = wolfram_decode(CLASS_C_RULE, (2, 2))
        self.assertTrue(only_trivial_failing_cycles(rule, 1))

    def test_identity_keeps_non_trivial_cycles(self):
        identity = Rule(2, 2, [(v >> 2) & 1 for v in range(32)])
        for n in (1, 2, 3):
            self.assertFalse(only_trivial_failing_cycles(identity, n))

    def test_state_bound(self):
        rule = wolfram_decode(CLASS_C_RULE, (2, 2))
        with self.assertRaises(ResourceBoundError):
            list(failing_automata(rule, 3, max_automaton_bits=3))
        with self.assertRaises(ContractViolationError):
            only_trivial_failing_cycles(rule, 0)
# end class


if __name__ == '__main__':
    unittest.main()
# end if

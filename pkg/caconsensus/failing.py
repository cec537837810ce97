#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Failing blocks and the failing graph.

A block of length 4n+3 is failing (of order n) if the three overlapping f^n-images it determines are not 000.
Cycles of the failing graph are exactly the periodic configurations whose f^n-image has no three adjacent zeros.

Two ways to look at the cycles:

- `FailingGraph`, the explicit graph over all failing blocks, feasible for small n.
- `FailingAutomaton`, which reads a configuration cell by cell and follows its images down to the
  "no 000" check, each level trimmed to the states lying on cycles. It never holds a 2^(4n+1) table.
"""
from typing import List, Set, Iterable, Generator, Callable, Tuple

import numpy as np
from luckydonaldUtils.logger import logging

from .data import Bounds
from .exceptions import ContractViolationError, ResourceBoundError
from .rules import Rule, Powers

__author__ = 'luckydonald'

logger = logging.getLogger(__name__)
if __name__ == '__main__':
    logging.add_colored_handler(level=logging.DEBUG)
# end if


# one rotation class per line: 1^w, (10)^w, (1100)^w.
TRIVIAL_CYCLE_WORDS = frozenset({
    '1',
    '10', '01',
    '1100', '1001', '0011', '0110',
})


def is_trivial_cycle_word(labels: Iterable[int]) -> bool:
    """
    Whether the (primitive) word read around a cycle is one of the trivial failing cycles.

    >>> is_trivial_cycle_word([0, 1, 1, 0])
    True
    >>> is_trivial_cycle_word([1, 1, 1, 0])
    False
    """
    return ''.join(str(label) for label in labels) in TRIVIAL_CYCLE_WORDS
# end def


def strongly_connected_components(
    nodes: Iterable[int], successors: Callable[[int], Iterable[int]],
) -> Generator[Set[int], None, None]:
    """
    Tarjan's algorithm, iterative, so deep graphs do not hit the recursion limit.
    Components are yielded in reverse topological order.
    """
    preorder = {}
    lowlink = {}
    found = set()
    scc_queue = []
    counter = 0
    for source in nodes:
        if source in found:
            continue
        # end if
        queue = [source]
        while queue:
            v = queue[-1]
            if v not in preorder:
                counter += 1
                preorder[v] = counter
            # end if
            done = True
            for w in successors(v):
                if w not in preorder:
                    queue.append(w)
                    done = False
                    break
                # end if
            # end for
            if not done:
                continue
            # end if
            lowlink[v] = preorder[v]
            for w in successors(v):
                if w not in found:
                    if preorder[w] > preorder[v]:
                        lowlink[v] = min(lowlink[v], lowlink[w])
                    else:
                        lowlink[v] = min(lowlink[v], preorder[w])
                    # end if
                # end if
            # end for
            queue.pop()
            if lowlink[v] == preorder[v]:
                component = {v}
                while scc_queue and preorder[scc_queue[-1]] > preorder[v]:
                    component.add(scc_queue.pop())
                # end while
                found.update(component)
                yield component
            else:
                scc_queue.append(v)
            # end if
        # end while
    # end for
# end def


def _labelled_cycles_are_trivial(
    components: Iterable[Set[int]], edges: Callable[[int], List[Tuple[int, int]]],
) -> bool:
    """
    Every cyclic component must be a single simple cycle with a trivial label word.
    `edges(v)` gives the (label, target) pairs leaving v.
    """
    for component in components:
        inner = {v: [(label, w) for label, w in edges(v) if w in component] for v in component}
        if len(component) == 1:
            (v,) = component
            if not inner[v]:
                continue  # acyclic singleton
            # end if
        # end if
        if any(len(out) != 1 for out in inner.values()):
            logger.debug(f'component of {len(component)} states is not a simple cycle')
            return False
        # end if
        start = min(component)
        labels = []
        v = start
        while True:
            label, v = inner[v][0]
            labels.append(label)
            if v == start:
                break
            # end if
        # end while
        if len(labels) != len(component) or not is_trivial_cycle_word(labels):
            logger.debug(f'non-trivial failing cycle {"".join(map(str, labels))}')
            return False
        # end if
    # end for
    return True
# end def


def failing_mask(power: Rule, block_length: int) -> np.ndarray:
    """
    For every block of `block_length` cells, whether its f^n-images (f^n = `power`) are not all zero.
    """
    if block_length < power.size:
        raise ContractViolationError(f'Blocks of length {block_length} are shorter than the window {power.size}.')
    # end if
    blocks = np.arange(1 << block_length, dtype=np.uint32)
    window_mask = np.uint32((1 << power.size) - 1)
    outputs = block_length - power.size + 1
    result = np.zeros(blocks.shape[0], dtype=bool)
    for k in range(outputs):
        window = (blocks >> np.uint32(outputs - 1 - k)) & window_mask
        result |= power.table[window].astype(bool)
    # end for
    return result
# end def


class FailingGraph(object):
    """
    Vertices are the failing blocks of length 4n+3, an edge p -> q exists if q continues p by one cell.
    """
    order: int
    block_length: int
    is_vertex: np.ndarray

    def __init__(self, order: int, block_length: int, is_vertex: np.ndarray):
        self.order = order
        self.block_length = block_length
        self.is_vertex = is_vertex
    # end def

    @property
    def vertices(self) -> np.ndarray:
        return np.nonzero(self.is_vertex)[0]
    # end def

    def __contains__(self, block: int) -> bool:
        return bool(self.is_vertex[block])
    # end def

    def __len__(self) -> int:
        return int(np.count_nonzero(self.is_vertex))
    # end def

    def successors(self, block: int) -> List[int]:
        mask = (1 << self.block_length) - 1
        shifted = (block << 1) & mask
        return [shifted | bit for bit in (0, 1) if self.is_vertex[shifted | bit]]
    # end def

    def edges(self) -> Generator[Tuple[int, int], None, None]:
        for block in self.vertices.tolist():
            for successor in self.successors(block):
                yield block, successor
            # end for
        # end for
    # end def

    def cycles_are_trivial(self) -> bool:
        """ The only cycles are the trivial failing cycles (1^w, (10)^w, (1100)^w and rotations). """
        vertices = self.vertices.tolist()
        components = strongly_connected_components(vertices, self.successors)
        return _labelled_cycles_are_trivial(
            components, lambda v: [(w & 1, w) for w in self.successors(v)],
        )
    # end def

    def __repr__(self):
        return (
            f'{self.__class__.__name__}('
            f'order={self.order!r}, '
            f'block_length={self.block_length!r}, '
            f'vertices=<{len(self)} blocks>'
            ')'
        )
    # end def

    __str__ = __repr__
# end class


def build_failing_graph(
    rule: Rule, n: int, max_block_bits: int = Bounds.max_block_bits, powers: Powers = None,
) -> FailingGraph:
    if n < 1:
        raise ContractViolationError(f'The order must be positive, got {n}.')
    # end if
    block_length = (rule.size - 1) * n + 3
    if block_length > max_block_bits:
        raise ResourceBoundError(
            f'Failing graph of order {n} enumerates 2^{block_length} blocks, the limit is 2^{max_block_bits}.',
            needed=block_length, allowed=max_block_bits,
        )
    # end if
    if powers is None:
        powers = Powers(rule, max_table_bits=max_block_bits)
    # end if
    return FailingGraph(order=n, block_length=block_length, is_vertex=failing_mask(powers[n], block_length))
# end def


class FailingAutomaton(object):
    """
    Level n reads the cells of a configuration x. A state remembers the last `history` cells of x
    and the state of level n-1, which reads f(x). Level 0 reads its input and rejects a third 0 in a row.

    After construction every level is trimmed to the states lying on a cycle, keeping edges inside their component.
    A periodic x is accepted along a cycle of level n iff f^n(x) has no three adjacent zeros.

    :ivar delta: (states, 2) array of targets, -1 where reading that bit is impossible.
    """
    order: int
    delta: np.ndarray

    def __init__(self, order: int, delta: np.ndarray):
        self.order = order
        self.delta = delta
    # end def

    @property
    def state_count(self) -> int:
        return self.delta.shape[0]
    # end def

    @classmethod
    def base(cls) -> 'FailingAutomaton':
        """ Level 0: the state is the last two bits read. """
        delta = np.full((4, 2), -1, dtype=np.int64)
        for state in range(4):
            for bit in (0, 1):
                if state == 0 and bit == 0:
                    continue
                # end if
                delta[state, bit] = ((state << 1) | bit) & 3
            # end for
        # end for
        return cls(order=0, delta=delta).cyclic_core()
    # end def

    def refine(self, rule: Rule, max_automaton_bits: int = Bounds.max_automaton_bits) -> 'FailingAutomaton':
        """ The next level, feeding f of what it reads into this one. """
        history = rule.size - 1
        inner_count = self.state_count
        total = (1 << history) * inner_count
        if total > (1 << max_automaton_bits):
            raise ResourceBoundError(
                f'Failing automaton of order {self.order + 1} needs {total} states, the limit is 2^{max_automaton_bits}.',
                needed=total.bit_length(), allowed=max_automaton_bits,
            )
        # end if
        states = np.arange(total, dtype=np.int64)
        recent = states // inner_count
        inner = states % inner_count
        delta = np.full((total, 2), -1, dtype=np.int64)
        for bit in (0, 1):
            window = (recent << 1) | bit
            image = rule.table[window].astype(np.int64)
            inner_next = self.delta[inner, image]
            target = (window & ((1 << history) - 1)) * inner_count + inner_next
            delta[:, bit] = np.where(inner_next >= 0, target, -1)
        # end for
        refined = FailingAutomaton(order=self.order + 1, delta=delta).cyclic_core()
        logger.debug(f'failing automaton order {refined.order}: {total} states, {refined.state_count} on cycles')
        return refined
    # end def

    def _peel(self) -> np.ndarray:
        """ Repeatedly drops states without incoming or outgoing edges, returns the alive mask. """
        alive = np.ones(self.state_count, dtype=bool)
        while True:
            targets = np.where(self.delta >= 0, self.delta, 0)
            edge_alive = (self.delta >= 0) & alive[:, None] & alive[targets]
            has_out = edge_alive.any(axis=1)
            has_in = np.bincount(targets[edge_alive], minlength=self.state_count) > 0
            still = alive & has_out & has_in
            if np.array_equal(still, alive):
                return alive
            # end if
            alive = still
        # end while
    # end def

    def _components(self, alive: np.ndarray) -> List[Set[int]]:
        delta = self.delta.tolist()
        alive_list = alive.tolist()

        def successors(v: int) -> List[int]:
            return [w for w in delta[v] if w >= 0 and alive_list[w]]
        # end def

        return list(strongly_connected_components(np.nonzero(alive)[0].tolist(), successors))
    # end def

    def _edges(self, alive: np.ndarray) -> Callable[[int], List[Tuple[int, int]]]:
        delta = self.delta.tolist()
        alive_list = alive.tolist()

        def edges(v: int) -> List[Tuple[int, int]]:
            return [(bit, w) for bit, w in enumerate(delta[v]) if w >= 0 and alive_list[w]]
        # end def

        return edges
    # end def

    def cyclic_core(self) -> 'FailingAutomaton':
        """ Only states on cycles, only edges within a strongly connected component. """
        alive = self._peel()
        component_of = np.full(self.state_count, -1, dtype=np.int64)
        edges = self._edges(alive)
        index = 0
        for component in self._components(alive):
            if len(component) == 1:
                (v,) = component
                if not any(w == v for _, w in edges(v)):
                    continue
                # end if
            # end if
            for v in component:
                component_of[v] = index
            # end for
            index += 1
        # end for
        keep = component_of >= 0
        renumber = np.full(self.state_count, -1, dtype=np.int64)
        renumber[keep] = np.arange(int(np.count_nonzero(keep)), dtype=np.int64)
        delta = self.delta[keep]
        targets = np.where(delta >= 0, delta, 0)
        same = (delta >= 0) & (component_of[targets] == component_of[keep][:, None])
        core = np.where(same, renumber[targets], -1)
        return FailingAutomaton(order=self.order, delta=core)
    # end def

    def cycles_are_trivial(self) -> bool:
        alive = np.ones(self.state_count, dtype=bool)
        return _labelled_cycles_are_trivial(self._components(alive), self._edges(alive))
    # end def

    def __repr__(self):
        return (
            f'{self.__class__.__name__}('
            f'order={self.order!r}, '
            f'states={self.state_count!r}'
            ')'
        )
    # end def

    __str__ = __repr__
# end class


def failing_automata(
    rule: Rule, n_max: int, max_automaton_bits: int = Bounds.max_automaton_bits,
) -> Generator[FailingAutomaton, None, None]:
    """ The trimmed automata of order 1, 2, ..., n_max. """
    automaton = FailingAutomaton.base()
    for _ in range(n_max):
        automaton = automaton.refine(rule, max_automaton_bits=max_automaton_bits)
        yield automaton
    # end for
# end def


def only_trivial_failing_cycles(
    rule: Rule, n: int, max_automaton_bits: int = Bounds.max_automaton_bits,
) -> bool:
    """ Whether the failing graph of order n has no cycles besides the trivial ones. """
    automaton = None
    for automaton in failing_automata(rule, n, max_automaton_bits=max_automaton_bits):
        pass
    # end for
    if automaton is None:
        raise ContractViolationError(f'The order must be positive, got {n}.')
    # end if
    return automaton.cycles_are_trivial()
# end def

"""Streaming enumeration of all rotation-system pairs (sigma, tau) of a graph.

The stream order is pinned: one mixed-radix counter over per-vertex rotation
indices, black vertices varying fastest, each vertex's rotations in
lexicographic order with the smallest incident label held first.  Chunks
split the counter range, so any partition of the index space replays the
exact same pairs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .perm import Permutation


@dataclass(frozen=True)
class LocalRotation:
    """Cyclic order of the labels at one vertex, starting at the least label."""

    vertex: object
    cycle: tuple


@dataclass(frozen=True)
class RotationPair:
    """One candidate dessin: sigma collects black rotations, tau white ones."""

    sigma: Permutation
    tau: Permutation
    graph: object


def _cycles_at(labels):
    """All cyclic orders of ``labels`` with the least label first, lex order."""
    labels = sorted(labels)
    if len(labels) == 1:
        return [tuple(labels)]
    return [(labels[0],) + rest for rest in itertools.permutations(labels[1:])]


def local_rotations(graph, vertex):
    """The (deg-1)! local rotations at a vertex, in the pinned order."""
    labels = graph.incident_labels(vertex)
    if not labels:
        raise ValueError(f"unknown vertex {vertex!r}")
    return [LocalRotation(vertex, cyc) for cyc in _cycles_at(labels)]


class _Radix:
    """Per-vertex rotation tables and the mixed-radix pair indexing."""

    def __init__(self, graph):
        self.graph = graph
        self.black_opts = [_cycles_at(graph.black_labels[v]) for v in graph.blacks]
        self.white_opts = [_cycles_at(graph.white_labels[v]) for v in graph.whites]
        self.opts = self.black_opts + self.white_opts
        self.total = 1
        for o in self.opts:
            self.total *= len(o)

    def digits(self, index):
        out = []
        for o in self.opts:
            out.append(index % len(o))
            index //= len(o)
        return out


def _apply_cycle(table, cycle):
    for i, label in enumerate(cycle):
        table[label - 1] = cycle[(i + 1) % len(cycle)] - 1


def _pair_stream(graph, start, stop, raw=False):
    radix = _Radix(graph)
    if not (0 <= start <= stop <= radix.total):
        raise ValueError(f"range [{start}, {stop}) outside [0, {radix.total})")
    if start == stop:
        return
    e = graph.e
    nblack = len(radix.black_opts)
    digits = radix.digits(start)

    sigma = bytearray(range(e))
    tau = bytearray(range(e))
    for d, opts in zip(digits[:nblack], radix.black_opts):
        _apply_cycle(sigma, opts[d])
    for d, opts in zip(digits[nblack:], radix.white_opts):
        _apply_cycle(tau, opts[d])

    index = start
    while True:
        if raw:
            yield bytes(sigma), bytes(tau)
        else:
            yield RotationPair(
                Permutation._from_table(bytes(sigma), e),
                Permutation._from_table(bytes(tau), e),
                graph,
            )
        index += 1
        if index == stop:
            return
        # odometer step, black digits least significant
        for pos, opts in enumerate(radix.opts):
            digits[pos] += 1
            table = sigma if pos < nblack else tau
            if digits[pos] < len(opts):
                _apply_cycle(table, opts[digits[pos]])
                break
            digits[pos] = 0
            _apply_cycle(table, opts[0])


def enumerate_pairs(graph):
    """All candidate_count(graph) rotation pairs, in the pinned order."""
    return _pair_stream(graph, 0, graph.candidate_count())


def chunk(graph, chunk_index, chunk_count):
    """The chunk_index-th of chunk_count contiguous slices of the pair stream."""
    if chunk_count < 1 or not 0 <= chunk_index < chunk_count:
        raise ValueError(
            f"chunk_index {chunk_index} outside 0..{chunk_count - 1}"
        )
    total = graph.candidate_count()
    start = chunk_index * total // chunk_count
    stop = (chunk_index + 1) * total // chunk_count
    return _pair_stream(graph, start, stop)


def chunk_bounds(total, chunk_count):
    """The slice boundaries used by ``chunk``."""
    return [
        (i * total // chunk_count, (i + 1) * total // chunk_count)
        for i in range(chunk_count)
    ]


def membership_failure(graph, sigma, tau):
    """None if (sigma, tau) lies in the rotation family; else the offending vertex.

    Membership means: the labels at each black vertex form one sigma-cycle
    (so a degree-1 vertex's label is a fixed point), and likewise for tau at
    white vertices.
    """
    if sigma.degree != graph.e or tau.degree != graph.e:
        return "degree"
    for v in graph.blacks:
        if not _is_single_cycle(sigma, graph.black_labels[v]):
            return v
    for v in graph.whites:
        if not _is_single_cycle(tau, graph.white_labels[v]):
            return v
    return None


def _is_single_cycle(p, labels):
    lset = set(labels)
    start = labels[0]
    seen = set()
    x = start
    for _ in range(len(labels)):
        if x not in lset or x in seen:
            return False
        seen.add(x)
        x = p(x)
    return x == start and seen == lset


def pair_in_family(graph, sigma, tau):
    return membership_failure(graph, sigma, tau) is None

"""Seeded random upward-closed P-free families, for audits and property tests."""

from __future__ import annotations

import random
from typing import Iterator

from .core import Family, canonical_key, iter_bits
from .freeness import KneserIndex, PatternGraph, complete_multipartite


def random_free_family(
    n: int,
    pattern: PatternGraph,
    rng: random.Random,
    attempts: int | None = None,
) -> Family:
    """Grow an upward-closed family by adding up-sets of random sets, keeping
    each addition only if the family stays free of ``pattern``.

    ``attempts`` caps the number of proposals; by default it is drawn
    uniformly from 0..2^n so that sparse and near-maximal families both occur.
    """
    size = 1 << n
    full = size - 1
    index = KneserIndex(sorted(range(size), key=canonical_key))
    pos = index.position
    proposals = list(range(size))
    rng.shuffle(proposals)
    if attempts is None:
        attempts = rng.randint(0, size)
    members: set[int] = set()
    allowed = 0
    for x in proposals[:attempts]:
        if x in members:
            continue
        new = []
        stack = [x]
        seen = {x}
        while stack:
            y = stack.pop()
            if y in members:
                continue
            new.append(y)
            for b in iter_bits(full & ~y):
                if y | b not in seen:
                    seen.add(y | b)
                    stack.append(y | b)
        trial = allowed
        for y in new:
            trial |= 1 << pos[y]
        if all(index.contains_through(pattern, trial, pos[y]) is None for y in new):
            members.update(new)
            allowed = trial
    return Family(n, members)


def good_audit_population(count: int, seed: int = 0) -> Iterator[tuple[int, int, int, Family]]:
    """``count`` random (n, s, t, F) with F upward closed and K_{s x t}-free.

    Parameters cycle over n = sm or sm - 1 with m >= 2 and n <= 6, for
    s in {2, 3} and t in {2, 3}.
    """
    shapes = [
        (n, s, t)
        for s in (2, 3)
        for n in range(2 * s - 1, 7)
        if n % s in (0, s - 1)
        for t in (2, 3)
    ]
    rng = random.Random(seed)
    for k in range(count):
        n, s, t = shapes[k % len(shapes)]
        yield n, s, t, random_free_family(n, complete_multipartite(s, t), rng)


def kleitman_audit_population(count: int, seed: int = 0, s: int = 3, m: int = 2) -> Iterator[Family]:
    """``count`` random upward-closed K_s-free families on [sm]."""
    rng = random.Random(seed)
    pattern = complete_multipartite(s, 1)
    for _ in range(count):
        yield random_free_family(s * m, pattern, rng)

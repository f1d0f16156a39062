"""Generators for the extremal families, with their closed-form sizes."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .core import Family, all_sets_of_size_at_least, binom, iter_masks_of_size


class Kind(enum.Enum):
    KLEITMAN_A = "kleitman-a"
    KLEITMAN_B = "kleitman-b"
    SM1_ALL_AT_LEAST = "sm1"
    SM_T3_POINTED = "sm-t3"
    LEMMA22 = "lemma22"


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def kleitman_a(s: int, m: int) -> Family:
    """All subsets of [sm-1] with at least m elements (K_s-free)."""
    _require(s >= 3 and m >= 1, f"need s >= 3, m >= 1; got s={s}, m={m}")
    return all_sets_of_size_at_least(s * m - 1, m)


def kleitman_b(s: int, m: int) -> Family:
    """On [sm]: the m-sets avoiding element sm, plus every larger set."""
    _require(s >= 3 and m >= 1, f"need s >= 3, m >= 1; got s={s}, m={m}")
    n = s * m
    top = 1 << (n - 1)
    low = [x for x in iter_masks_of_size(n, m) if not x & top]
    return Family(n, low) | all_sets_of_size_at_least(n, m + 1)


def family_sm1(s: int, m: int) -> Family:
    """All subsets of [sm-1] with at least m-1 elements; K_{s x t}-free for t >= 2."""
    _require(s >= 3 and m >= 2, f"need s >= 3, m >= 2; got s={s}, m={m}")
    return all_sets_of_size_at_least(s * m - 1, m - 1)


def family_sm_t3(s: int, m: int, x: int | None = None) -> Family:
    """On [sm]: every set of size >= m, plus the (m-1)-sets missing ``x``.

    K_{s x t}-free for every t >= 3. ``x`` defaults to sm.
    """
    _require(s >= 3 and m >= 2, f"need s >= 3, m >= 2; got s={s}, m={m}")
    n = s * m
    if x is None:
        x = n
    _require(1 <= x <= n, f"fixed element {x} outside [1, {n}]")
    bit = 1 << (x - 1)
    low = [y for y in iter_masks_of_size(n, m - 1) if not y & bit]
    return Family(n, low) | all_sets_of_size_at_least(n, m)


def lemma22_layer(s: int, m: int, i: int) -> Family:
    """The (m-i)-subsets of [sm] holding at least i elements of [s-1]."""
    _require(1 <= i <= s - 1, f"layer index i={i} outside [1, {s - 1}]")
    n = s * m
    head = (1 << (s - 1)) - 1
    return Family(n, (y for y in iter_masks_of_size(n, m - i) if (y & head).bit_count() >= i))


def lemma22_family(s: int, m: int) -> Family:
    """Upward-closed K_{s x 2}-free family on [sm]: every set of size >= m
    together with the layers ``lemma22_layer(s, m, i)`` for i = 1..s-1."""
    _require(s >= 3 and m >= 2, f"need s >= 3, m >= 2; got s={s}, m={m}")
    fam = all_sets_of_size_at_least(s * m, m)
    for i in range(1, s):
        fam = fam | lemma22_layer(s, m, i)
    return fam


def layer_size_formula(s: int, m: int, i: int) -> int:
    _require(1 <= i <= s - 1, f"layer index i={i} outside [1, {s - 1}]")
    return sum(binom(s - 1, j) * binom(s * m - s + 1, m - i - j) for j in range(i, s))


def kleitman_a_size(s: int, m: int) -> int:
    n = s * m - 1
    return 2**n - sum(binom(n, i) for i in range(m))


def kleitman_b_size(s: int, m: int) -> int:
    n = s * m
    return 2**n - (binom(n, m) - binom(n - 1, m) + sum(binom(n, i) for i in range(m)))


def family_sm_t3_size(s: int, m: int) -> int:
    n = s * m
    return sum(binom(n, i) for i in range(m, n + 1)) + binom(n - 1, m - 1)


@dataclass(frozen=True)
class ConstructionSpec:
    kind: Kind
    s: int
    m: int
    x: int | None = None

    @property
    def n(self) -> int:
        if self.kind in (Kind.KLEITMAN_A, Kind.SM1_ALL_AT_LEAST):
            return self.s * self.m - 1
        return self.s * self.m

    def build(self) -> Family:
        if self.kind is Kind.KLEITMAN_A:
            return kleitman_a(self.s, self.m)
        if self.kind is Kind.KLEITMAN_B:
            return kleitman_b(self.s, self.m)
        if self.kind is Kind.SM1_ALL_AT_LEAST:
            return family_sm1(self.s, self.m)
        if self.kind is Kind.SM_T3_POINTED:
            return family_sm_t3(self.s, self.m, self.x)
        return lemma22_family(self.s, self.m)

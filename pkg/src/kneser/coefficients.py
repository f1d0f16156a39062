"""Exact values of the coefficients alpha_s and beta_s."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb


def _check_s(s: int) -> None:
    if s < 3:
        raise ValueError(f"coefficients are defined for s >= 3, got s={s}")


def alpha(s: int) -> Fraction:
    """1 - (1 - 1/s)^(s-1)."""
    _check_s(s)
    return 1 - Fraction(s - 1, s) ** (s - 1)


def beta(s: int) -> Fraction:
    """(s-1)/(s-2) * (1 - (1 - (s-2)/(s^2-s))^(s-1))."""
    _check_s(s)
    return Fraction(s - 1, s - 2) * (1 - (1 - Fraction(s - 2, s * s - s)) ** (s - 1))


def beta_via_sum(s: int) -> Fraction:
    """The unsimplified double sum over i <= j of C(s-1,j) (s-1)^(s-i-j) / s^(s-1)."""
    _check_s(s)
    total = 0
    for i in range(1, s):
        for j in range(i, s):
            total += comb(s - 1, j) * Fraction(s - 1) ** (s - i - j)
    return total / Fraction(s) ** (s - 1)


def round_fraction(q: Fraction, places: int, mode: str = "half-even") -> Fraction:
    scale = 10**places
    scaled = q * scale
    if mode == "half-even":
        return Fraction(round(scaled), scale)
    if mode == "half-up":
        floor = scaled.numerator // scaled.denominator
        return Fraction(floor + (scaled - floor >= Fraction(1, 2)), scale)
    raise ValueError(f"unknown rounding mode {mode!r}")


def render_decimal(q: Fraction, places: int = 6, mode: str = "half-even") -> str:
    r = round_fraction(q, places, mode)
    sign = "-" if r < 0 else ""
    r = abs(r)
    whole, frac = divmod(r.numerator * 10**places // r.denominator, 10**places)
    if places == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{places}d}"


@dataclass(frozen=True)
class Table1Row:
    s: int
    alpha: Fraction
    beta: Fraction
    alpha_decimal: str
    beta_decimal: str
    # true when half-up and half-even rounding would print different digits
    rounding_ambiguous: bool


def table1(s_max: int = 20, places: int = 6) -> list[Table1Row]:
    if s_max < 3:
        raise ValueError("s_max must be at least 3")
    rows = []
    for s in range(3, s_max + 1):
        a, b = alpha(s), beta(s)
        ambiguous = any(
            render_decimal(q, places, "half-even") != render_decimal(q, places, "half-up")
            for q in (a, b)
        )
        rows.append(Table1Row(s, a, b, render_decimal(a, places), render_decimal(b, places), ambiguous))
    return rows


def table1_csv(rows: list[Table1Row]) -> str:
    lines = ["s,alpha,beta"]
    lines += [f"{r.s},{r.alpha_decimal},{r.beta_decimal}" for r in rows]
    return "\n".join(lines) + "\n"


def table1_markdown(rows: list[Table1Row]) -> str:
    lines = ["| s | alpha_s | beta_s |", "|---:|---:|---:|"]
    lines += [f"| {r.s} | {r.alpha_decimal} | {r.beta_decimal} |" for r in rows]
    return "\n".join(lines) + "\n"

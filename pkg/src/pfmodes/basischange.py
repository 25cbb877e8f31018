"""Exact basis change between the modes P_n^{-m} and the functions f_{p,q}."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .exact import comb
from .hypergeom import t_sum
from .pfm import f_pq, pfm


@dataclass(frozen=True)
class BasisChangeRow:
    """One function written in the other basis.

    ``kind`` is ``"pfm"`` when the source is a mode (m, n) expanded in
    f_{p,q}, and ``"f"`` when the source is f_{p,q} expanded in modes
    (m, n).
    """

    kind: str
    source: tuple[int, int]
    terms: tuple[tuple[tuple[int, int], Fraction], ...]

    def as_dict(self) -> dict:
        return dict(self.terms)

    def evaluate(self, z, w):
        """Numeric value of the expansion at finite (z, w)."""
        basis = f_pq if self.kind == "pfm" else pfm
        total = 0j
        for (i, j), c in self.terms:
            total = total + float(c) * basis(i, j, z, w)
        return total


def pfm_in_f(m: int, n: int) -> BasisChangeRow:
    """P_n^{-m} as a finite combination of f_{p,q}; empty when |n| > m."""
    k = abs(n)
    sign = -1 if n % 2 else 1
    terms = []
    if k <= m:
        for j in range(m - k + 1):
            c = Fraction(sign * comb(m, k + j) * comb(m + k + j, j))
            target = (j, j + k) if n >= 0 else (j + k, j)
            terms.append((target, c))
    return BasisChangeRow("pfm", (m, n), tuple(terms))


def a_coeff(s: int, m: int, n: int) -> Fraction:
    """(-1)^s C(m,s) / C(2m-s,n) * (2m-2s+1)/(2m-s+1)."""
    sign = -1 if s % 2 else 1
    return Fraction(sign * comb(m, s) * (2 * m - 2 * s + 1), comb(2 * m - s, n) * (2 * m - s + 1))


def f_in_pfm(p: int, q: int) -> BasisChangeRow:
    """f_{p,q} as a finite combination of modes, keyed by (m, n).

    For p <= q the modes are P_{q-p}^{-(q-s)}, s = 0..p. The case p > q
    follows from f_{p,q}(z,w) = f_{q,p}(w,z), which flips the mode sign.
    """
    if p < 0 or q < 0:
        raise ValueError("f_{p,q} needs p, q >= 0")
    lo, hi = min(p, q), max(p, q)
    flip = 1 if p <= q else -1
    sign = -1 if (hi - lo) % 2 else 1
    terms = [
        ((hi - s, flip * (hi - lo)), sign * a_coeff(s, hi, lo)) for s in range(lo + 1)
    ]
    return BasisChangeRow("f", (p, q), tuple(terms))


def cid_sum(m: int, n: int, d: int) -> Fraction:
    """The double sum that must equal delta_{n,d} for m >= n >= d."""
    total = Fraction(0)
    for s in range(n + 1):
        inner = t_sum(m, n, d, s)
        if inner:
            sign = -1 if s % 2 else 1
            total += Fraction(
                sign * comb(m, s) * inner * (2 * m - 2 * s + 1),
                comb(2 * m - s, n) * (2 * m - s + 1),
            )
    return total


def cid_check(m: int) -> bool:
    if m < 0:
        raise ValueError("m must be >= 0")
    return all(
        cid_sum(m, n, d) == (1 if n == d else 0)
        for n in range(m + 1)
        for d in range(n + 1)
    )


def a_bound_check(m: int) -> bool:
    """|a_{s,m,n}| <= 1 and sum_s C(m-s,n-s) |a_{s,m,n}| == 1 for all s <= n <= m."""
    for n in range(m + 1):
        coeffs = [a_coeff(s, m, n) for s in range(n + 1)]
        if any(abs(a) > 1 for a in coeffs):
            return False
        if sum(comb(m - s, n - s) * abs(a) for s, a in enumerate(coeffs)) != 1:
            return False
    return True


def refined_bound_check(m: int) -> bool:
    """|a_{s,m,n}| <= C(m-s, n-s)."""
    return all(
        abs(a_coeff(s, m, n)) <= comb(m - s, n - s)
        for n in range(m + 1)
        for s in range(n + 1)
    )


def roundtrip_matrix(m_max: int) -> dict:
    """Compose f_in_pfm after pfm_in_f on all modes of degree <= m_max."""
    out = {}
    for m in range(m_max + 1):
        for n in range(-m, m + 1):
            acc: dict = defaultdict(Fraction)
            for (p, q), c in pfm_in_f(m, n).terms:
                for mode, a in f_in_pfm(p, q).terms:
                    acc[mode] += c * a
            out[(m, n)] = {k: v for k, v in acc.items() if v}
    return out


def roundtrip_check(m_max: int) -> bool:
    return all(row == {src: 1} for src, row in roundtrip_matrix(m_max).items())


def b_coeff_numeric(
    F: Callable, p: int, q: int, r1: float = 1.0, r2: float = 1.0, nodes: int = 512
) -> complex:
    """Coefficient b_{p,q} of F in the f_{p,q} basis by a double trapezoid rule.

    b_{p,q} is the Taylor coefficient of z^p w^q of F(z/(1+zw), w) when
    p >= q and of F(z, w/(1+zw)) when p < q; both functions are entire.
    The w-nodes sit half a step off the z-grid so that zw = -1 is never
    sampled on the unit torus. ``F`` is called with numpy arrays.
    """
    if r1 <= 0 or r2 <= 0:
        raise ValueError("radii must be positive")
    theta = 2 * np.pi * np.arange(nodes) / nodes
    phi = 2 * np.pi * (np.arange(nodes) + 0.5) / nodes
    z = r1 * np.exp(1j * theta)[:, None]
    w = r2 * np.exp(1j * phi)[None, :]
    denom = 1 + z * w
    with np.errstate(over="raise", invalid="raise"):
        if p >= q:
            vals = F(z / denom, np.broadcast_to(w, denom.shape))
        else:
            vals = F(np.broadcast_to(z, denom.shape), w / denom)
        vals = np.asarray(vals, dtype=complex) * np.exp(-1j * p * theta)[:, None]
        vals = vals * np.exp(-1j * q * phi)[None, :]
        return complex(vals.mean() / (r1**p * r2**q))

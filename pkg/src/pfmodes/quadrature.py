"""The inner product on Omega over the rotated diagonal, and spectral decomposition.

The diagonal (z, -conj z) is parametrised by z = sqrt(s) e^{it} with
s = u/(1-u), u in [0, 1). The normalised measure becomes du dt/(2 pi), and
the diagonal restriction of a mode of degree m is a polynomial of degree m
in u times e^{-int}, so Gauss-Legendre in u and the trapezoid rule in t are
exact for Gram entries once the orders are large enough.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np
from numpy.polynomial.legendre import leggauss

from .pfm import pfm


@dataclass(frozen=True)
class SphereQuadrature:
    radial_order: int = 64
    angular_nodes: int = 256

    def __post_init__(self):
        if self.radial_order < 1:
            raise ValueError("radial order must be >= 1")
        if self.angular_nodes < 4:
            raise ValueError("need at least 4 angular nodes")

    @property
    def radial(self) -> tuple[np.ndarray, np.ndarray]:
        x, wts = leggauss(self.radial_order)
        return (x + 1) / 2, wts / 2

    @property
    def angles(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.angular_nodes) / self.angular_nodes

    def grid(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(z, w, weight) arrays on the diagonal, weights summing to 1."""
        u, wu = self.radial
        t = self.angles
        z = np.sqrt(u / (1 - u))[:, None] * np.exp(1j * t)[None, :]
        weight = np.broadcast_to(wu[:, None] / self.angular_nodes, z.shape)
        return z, -np.conj(z), weight


def _values(F: Callable, z: np.ndarray, w: np.ndarray) -> np.ndarray:
    try:
        out = np.asarray(F(z, w), dtype=complex)
        if out.shape == z.shape:
            return out
    except (TypeError, ValueError):
        pass
    return np.vectorize(lambda a, b: complex(F(a, b)), otypes=[complex])(z, w)


def _fsum(values: np.ndarray) -> complex:
    flat = values.ravel()
    return complex(math.fsum(flat.real), math.fsum(flat.imag))


def inner_product(F: Callable, G: Callable, q: SphereQuadrature | None = None) -> complex:
    """<F, G> over the rotated diagonal, normalised so <1, 1> = 1.

    ``F`` and ``G`` are called as ``F(z, w)``, preferably with arrays.
    """
    q = q or SphereQuadrature()
    z, w, weight = q.grid()
    return _fsum(weight * _values(F, z, w) * np.conj(_values(G, z, w)))


def mode(m: int, n: int) -> Callable:
    return lambda z, w: pfm(m, n, z, w)


def mode_indices(m_max: int) -> Iterator[tuple[int, int]]:
    for m in range(m_max + 1):
        for n in range(-m, m + 1):
            yield m, n


def gram_closed_form(m: int, n: int, p: int, q: int) -> float:
    if (m, n) != (p, q):
        return 0.0
    k = abs(n)
    return math.comb(m, k) / ((2 * m + 1) * math.comb(m + k, k))


def gram_matrix(m_max: int, q: SphereQuadrature | None = None) -> dict:
    """All numeric entries <P_n^{-m}, P_q^{-p}> up to degree m_max."""
    q = q or SphereQuadrature()
    z, w, weight = q.grid()
    idx = list(mode_indices(m_max))
    vals = np.stack([pfm(*i, z, w).ravel() for i in idx])
    # one weighted matrix product instead of len(idx)**2 compensated sums;
    # the rounding error stays far below the tolerances used for Gram checks
    gram = (vals * weight.ravel()) @ vals.conj().T
    return {(a, b): complex(gram[i, j]) for i, a in enumerate(idx) for j, b in enumerate(idx)}


def gram_check(m_max: int, q: SphereQuadrature | None = None) -> float:
    """Largest deviation of the numeric Gram matrix from its closed form."""
    return max(
        abs(v - gram_closed_form(*a, *b)) for (a, b), v in gram_matrix(m_max, q).items()
    )


def coefficient_scale(m: int, n: int) -> float:
    """(2m+1) C(m+|n|,|n|) / C(m,|n|)."""
    k = abs(n)
    return (2 * m + 1) * math.comb(m + k, k) / math.comb(m, k)


def schauder_coefficient(F: Callable, m: int, n: int, q: SphereQuadrature | None = None) -> complex:
    if abs(n) > m:
        raise ValueError("need |n| <= m")
    return coefficient_scale(m, n) * inner_product(F, mode(m, n), q)


@dataclass
class CoefficientTable:
    max_m: int
    entries: dict = field(default_factory=dict)  # (m, n) -> complex
    radial_order: int = 0
    angular_nodes: int = 0
    residual: float = float("nan")

    def __post_init__(self):
        for m, n in self.entries:
            if abs(n) > m:
                raise ValueError(f"invalid mode index ({m}, {n})")

    def to_dict(self) -> dict:
        return {
            "max_m": self.max_m,
            "entries": [
                {"m": m, "n": n, "re": c.real, "im": c.imag}
                for (m, n), c in sorted(self.entries.items())
            ],
            "residual": self.residual,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "CoefficientTable":
        entries = {(e["m"], e["n"]): complex(e["re"], e["im"]) for e in data["entries"]}
        return cls(data["max_m"], entries, residual=data.get("residual", float("nan")))


def residual_grid() -> tuple[np.ndarray, np.ndarray]:
    """Fixed 100 diagonal points: 10 radii times 10 angles."""
    r = np.linspace(0.1, 3.0, 10)
    t = 2 * np.pi * (np.arange(10) + 0.25) / 10
    z = (r[:, None] * np.exp(1j * t)[None, :]).ravel()
    return z, -np.conj(z)


def reconstruct(table: CoefficientTable, pt) -> complex:
    """Sum of c_{n,m} P_n^{-m} at a point (finite or via ``OmegaPoint``)."""
    from .pfm import OmegaPoint, pfm_eval

    p = OmegaPoint.of(pt)
    return sum((c * pfm_eval((m, n), p) for (m, n), c in table.entries.items()), 0j)


def _reconstruct_array(table: CoefficientTable, z, w) -> np.ndarray:
    out = np.zeros(np.broadcast(z, w).shape, dtype=complex)
    for (m, n), c in table.entries.items():
        out += c * pfm(m, n, z, w)
    return out


def decompose(F: Callable, m_max: int, q: SphereQuadrature | None = None) -> CoefficientTable:
    """All Schauder coefficients of F up to degree m_max, with a residual."""
    q = q or SphereQuadrature()
    z, w, weight = q.grid()
    weighted = weight * _values(F, z, w)
    entries = {
        (m, n): coefficient_scale(m, n) * _fsum(weighted * np.conj(pfm(m, n, z, w)))
        for m, n in mode_indices(m_max)
    }
    table = CoefficientTable(m_max, entries, q.radial_order, q.angular_nodes)
    zr, wr = residual_grid()
    target = _values(F, zr, wr)
    table.residual = float(
        np.max(np.abs(target - _reconstruct_array(table, zr, wr)) / (1 + np.abs(target)))
    )
    return table

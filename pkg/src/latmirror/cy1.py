"""Rank/degree lattice of an elliptic curve and its torus-fibration mirror.

A bundle class is a pair (rank, degree); its support slope is the reduced
fraction degree/rank, with (0, 1) standing for the infinite slope of the
fibre direction.  On the mirror side a cycle class a*[s0] + b*[e'] records
multisection and fibre coefficients of a closed geodesic on the flat torus;
two such cycles meet in |d1*r2 - d2*r1| points and pair skewly with
[s0].[e'] = 1.  The fibrewise tensor product of multisections is

    (r1, d1) (.) (r2, d2) = (r1*r2, r1*d2 + r2*d1),

defined only for honest multisections (positive [s0] coefficient).  The
indecomposable flat-unipotent bundles F_r on the curve multiply like
irreducible sl2 representations of dimension r:

    F_a (x) F_b = sum_{j=0}^{min(a,b)-1} F_{a+b-1-2j},

with F_1 the unit.  Level-k quantization marks the k rational fibre
positions j/k, matching the k-dimensional space of level-k theta series.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .core import GradedVector, LatticeError


@dataclass(frozen=True)
class Slope:
    """Reduced support slope: gcd(r, d) = 1, r >= 0, infinity = (0, 1)."""

    r: int
    d: int

    def __post_init__(self):
        if self.r < 0:
            raise LatticeError("slope stored with r < 0; use reduce_slope")
        if self.r == 0 and self.d != 1:
            raise LatticeError("infinite slope is normalized to (0, 1)")
        if gcd(abs(self.r), abs(self.d)) != 1:
            raise LatticeError(f"slope ({self.r}, {self.d}) is not reduced")

    @property
    def is_infinite(self) -> bool:
        return self.r == 0

    def __str__(self) -> str:
        if self.is_infinite:
            return "inf"
        return str(self.d) if self.r == 1 else f"{self.d}/{self.r}"


@dataclass(frozen=True)
class BundleClass1:
    """Topological type (rank, degree) of a bundle on the curve."""

    rank: int
    deg: int

    def __post_init__(self):
        if self.rank < 0:
            raise LatticeError("rank must be nonnegative")


@dataclass(frozen=True)
class CycleClass1:
    """Integer cycle class a*[s0] + b*[e'] on the mirror torus."""

    s0: int
    e: int


def reduce_slope(r: int, d: int) -> Slope:
    """Reduce (r, d) to the canonical slope representative."""
    if r == 0 and d == 0:
        raise LatticeError("zero class has no slope")
    g = gcd(abs(r), abs(d))
    r, d = r // g, d // g
    if r < 0 or (r == 0 and d < 0):
        r, d = -r, -d
    return Slope(r, d)


def intersection_count(a: CycleClass1, b: CycleClass1) -> int:
    """Geometric intersection number |d1*r2 - d2*r1| of two cycle classes."""
    if (a.s0, a.e) == (0, 0) or (b.s0, b.e) == (0, 0):
        raise LatticeError("intersection count needs nonzero classes")
    return abs(a.e * b.s0 - b.e * a.s0)


def cycle_pairing(a: CycleClass1, b: CycleClass1) -> int:
    """Skew pairing with [s0].[e'] = 1: a.s0*b.e - a.e*b.s0."""
    return a.s0 * b.e - a.e * b.s0


def gft_class(E: BundleClass1) -> CycleClass1:
    """Cycle class of the fibrewise Fourier transform: rank*[s0] + deg*[e']."""
    if E.rank == 0 and E.deg == 0:
        raise LatticeError("zero class has no transform")
    return CycleClass1(E.rank, E.deg)


def odot(a: CycleClass1, b: CycleClass1) -> CycleClass1:
    """Fibrewise product of multisection classes.

    Requires honest multisections (s0 coefficient >= 1); fibre components
    have no well-defined fibrewise product.
    """
    if a.s0 < 1 or b.s0 < 1:
        raise LatticeError("fibrewise product needs s0 coefficients >= 1")
    return CycleClass1(a.s0 * b.s0, a.s0 * b.e + b.s0 * a.e)


def decompose_primitive(c: CycleClass1) -> tuple[Slope, int]:
    """Write a nonzero cycle class as (primitive slope, multiplicity)."""
    if (c.s0, c.e) == (0, 0):
        raise LatticeError("zero class has no primitive decomposition")
    g = gcd(abs(c.s0), abs(c.e))
    return reduce_slope(c.s0, c.e), g


@dataclass(frozen=True)
class AtiyahElement:
    """Formal integer combination of the indecomposables F_r (r >= 1)."""

    terms: tuple  # sorted ((index, multiplicity), ...), zeros dropped

    def __post_init__(self):
        clean = []
        for idx, mult in self.terms:
            idx, mult = int(idx), int(mult)
            if idx < 1:
                raise LatticeError("indecomposable index must be >= 1")
            if mult != 0:
                clean.append((idx, mult))
        clean.sort()
        object.__setattr__(self, "terms", tuple(clean))

    @classmethod
    def basis(cls, r: int) -> "AtiyahElement":
        return cls(((r, 1),))

    @classmethod
    def from_dict(cls, d: dict) -> "AtiyahElement":
        return cls(tuple(d.items()))

    def as_dict(self) -> dict:
        return dict(self.terms)

    def dimension(self) -> int:
        # rank of the underlying bundle: rank F_r = r
        return sum(idx * mult for idx, mult in self.terms)

    def __add__(self, other: "AtiyahElement") -> "AtiyahElement":
        out = self.as_dict()
        for idx, mult in other.terms:
            out[idx] = out.get(idx, 0) + mult
        return AtiyahElement.from_dict(out)

    def __mul__(self, other: "AtiyahElement") -> "AtiyahElement":
        out: dict = {}
        for ia, ma in self.terms:
            for ib, mb in other.terms:
                for idx, mult in atiyah_tensor(ia, ib).terms:
                    out[idx] = out.get(idx, 0) + ma * mb * mult
        return AtiyahElement.from_dict(out)


def atiyah_tensor(a: int, b: int) -> AtiyahElement:
    """Decompose F_a (x) F_b, Clebsch-Gordan style.

    F_a (x) F_b = sum_{j=0}^{min(a,b)-1} F_{a+b-1-2j}; ranks add up to a*b.
    """
    if a < 1 or b < 1:
        raise LatticeError("indecomposable indices must be >= 1")
    return AtiyahElement(tuple((a + b - 1 - 2 * j, 1) for j in range(min(a, b))))


def mirror_cy1(u: GradedVector) -> CycleClass1:
    """Mirror map on H^0 + H^2: u0*[C] + u1*[pt] goes to u0*[s0] + u1*[e']."""
    if u.dim != 1:
        raise LatticeError("mirror_cy1 needs a dim-1 graded vector")
    u0, u1 = u.blocks
    if u0.denominator != 1 or u1.denominator != 1:
        raise LatticeError("mirror_cy1 needs integer coefficients")
    return CycleClass1(int(u0), int(u1))


def bs_points(k: int) -> list[Fraction]:
    """Level-k quantization marks the fibre positions j/k, j = 0..k-1."""
    if k < 1:
        raise LatticeError("level must be a positive integer")
    return [Fraction(j, k) for j in range(k)]

"""Exact arithmetic for graded even-cohomology lattices.

A compact complex n-fold (n = 1, 2, 3) with torsion-free even cohomology
has a graded ring

    A = H^0 + H^2 + ... + H^{2n}

whose ends are one-dimensional (generated by the fundamental class and the
point class) and whose intermediate graded pieces are free lattices.  A
:class:`GradedVector` stores one element of A as blocks ``u_0, ..., u_n``:
scalars at the ends, integer-or-rational coordinate tuples in between.  A
:class:`RingDescriptor` carries the multiplication data: for n = 2 the Gram
matrix of the Picard block, for n = 3 the symmetric triple-intersection
tensor together with the pairing of the second Chern class against divisors.
Degree-4 coordinates on a threefold are taken in the basis dual to the
divisor basis, so divisor-times-curve contraction is the plain dot product.

All entries are ``fractions.Fraction``; floats are rejected so that every
pipeline is bit-reproducible.  On top of the cup product the module exposes
the symmetric top-degree pairing ``pair_sym``, the degree involution
``star`` (sign flip on blocks of degree 2 mod 4, the Chern-character image
of dualisation), the Todd-twisted Euler pairing ``pair_exotic`` (symmetric
for n = 2, skew for n = 1 and 3) and the Mukai vector ``ch * sqrt(td)``.

Todd data is closed-form in every supported dimension:

    n = 1:  td = (1, 0)           sqrt(td) = (1, 0)
    n = 2:  td = (1, 0, 2)        sqrt(td) = (1, 0, 1)
    n = 3:  td = (1, 0, c2/12, 0) sqrt(td) = (1, 0, c2/24, 0)

with ``cup(sqrt_td, sqrt_td) == td`` holding exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

RationalLike = Union[int, str, Fraction]

_RATIONAL_RE = re.compile(r"[+-]?\d+(/[+-]?\d+)?")


class LatticeError(ValueError):
    """Base class for structural errors in exact-lattice data."""


class ShapeError(LatticeError):
    """Dimension or block-arity mismatch between vectors and descriptors."""


def _as_int(x) -> int:
    """Strict integer coercion: ints and integer-valued strings only."""
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise LatticeError(f"integer lattice datum expected, got {x!r}")
    return int(x)


def as_fraction(x: RationalLike) -> Fraction:
    """Coerce an entry to an exact rational.

    Accepts int, Fraction and strings like ``"5"`` or ``"-3/4"``.  Floats
    are rejected: exactness is a module invariant, and a float that looks
    like 1/3 is not 1/3.
    """
    if isinstance(x, bool):
        raise LatticeError("booleans are not lattice entries")
    if isinstance(x, float):
        raise LatticeError(f"float {x!r} rejected: entries must be exact rationals")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        text = x.strip()
        if not _RATIONAL_RE.fullmatch(text):
            raise LatticeError(f"malformed rational {x!r}; want 'p' or 'p/q'")
        try:
            return Fraction(text)
        except ZeroDivisionError as exc:
            raise LatticeError(f"zero denominator in {x!r}") from exc
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_rational(x: Fraction) -> str:
    """Serialize a rational as ``"p/q"`` (or ``"p"`` when q = 1)."""
    return str(Fraction(x))


def parse_rational(s: RationalLike) -> Fraction:
    """Inverse of :func:`format_rational`; also accepts ints and Fractions."""
    return as_fraction(s)


def _coerce_block(block, scalar: bool):
    if scalar:
        return as_fraction(block)
    if isinstance(block, (int, str, Fraction)):
        raise ShapeError("intermediate block must be a coordinate sequence")
    return tuple(as_fraction(x) for x in block)


@dataclass(frozen=True)
class GradedVector:
    """One element of the even-cohomology ring, stored blockwise.

    ``blocks[i]`` is the degree-2i component: a Fraction for i = 0 and
    i = dim, a tuple of Fractions in between.
    """

    dim: int
    blocks: tuple

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise ShapeError(f"dim must be 1, 2 or 3, got {self.dim}")
        raw = self.blocks
        if len(raw) != self.dim + 1:
            raise ShapeError(
                f"dim {self.dim} needs {self.dim + 1} blocks, got {len(raw)}"
            )
        coerced = tuple(
            _coerce_block(b, scalar=(i == 0 or i == self.dim))
            for i, b in enumerate(raw)
        )
        object.__setattr__(self, "blocks", coerced)

    @classmethod
    def zero(cls, dim: int, picard_rank: int) -> "GradedVector":
        mid = [(0,) * picard_rank] * (dim - 1)
        return cls(dim, tuple([Fraction(0), *mid, Fraction(0)]))

    @classmethod
    def unit(cls, dim: int, picard_rank: int) -> "GradedVector":
        z = cls.zero(dim, picard_rank)
        return z.with_block(0, Fraction(1))

    @classmethod
    def point(cls, dim: int, picard_rank: int) -> "GradedVector":
        z = cls.zero(dim, picard_rank)
        return z.with_block(dim, Fraction(1))

    def with_block(self, i: int, value) -> "GradedVector":
        blocks = list(self.blocks)
        blocks[i] = value
        return GradedVector(self.dim, tuple(blocks))

    def scale(self, c: RationalLike) -> "GradedVector":
        c = as_fraction(c)
        out = []
        for i, b in enumerate(self.blocks):
            if i == 0 or i == self.dim:
                out.append(c * b)
            else:
                out.append(tuple(c * x for x in b))
        return GradedVector(self.dim, tuple(out))

    def __add__(self, other: "GradedVector") -> "GradedVector":
        if not isinstance(other, GradedVector) or other.dim != self.dim:
            raise ShapeError("can only add graded vectors of equal dimension")
        out = []
        for i, (a, b) in enumerate(zip(self.blocks, other.blocks)):
            if i == 0 or i == self.dim:
                out.append(a + b)
            else:
                if len(a) != len(b):
                    raise ShapeError("intermediate blocks differ in arity")
                out.append(tuple(x + y for x, y in zip(a, b)))
        return GradedVector(self.dim, tuple(out))

    def __neg__(self) -> "GradedVector":
        return self.scale(-1)

    def __sub__(self, other: "GradedVector") -> "GradedVector":
        return self + (-other)

    def to_payload(self) -> dict:
        """JSON-ready dict with rationals as strings."""
        blocks = []
        for i, b in enumerate(self.blocks):
            if i == 0 or i == self.dim:
                blocks.append(format_rational(b))
            else:
                blocks.append([format_rational(x) for x in b])
        return {"dim": self.dim, "blocks": blocks}

    @classmethod
    def from_payload(cls, payload: dict) -> "GradedVector":
        return cls(int(payload["dim"]), tuple(payload["blocks"]))


def _check_symmetric(matrix) -> None:
    k = len(matrix)
    for row in matrix:
        if len(row) != k:
            raise ShapeError("Gram matrix must be square")
    for i in range(k):
        for j in range(k):
            if matrix[i][j] != matrix[j][i]:
                raise ShapeError("Gram matrix must be symmetric")


@dataclass(frozen=True)
class RingDescriptor:
    """Multiplication data for one even-cohomology ring.

    dim 1: no parameters (picard_rank is 0; both blocks are scalars).
    dim 2: ``gram`` is the symmetric integer Gram matrix of the Picard
           block; its diagonal must be even (the lattice of an algebraic
           surface with vanishing odd Chern data is even).
    dim 3: ``cubic`` is the totally symmetric triple-intersection tensor
           D[a][b][c] on divisors and ``c2`` the integer vector of
           second-Chern-class pairings against the divisor basis.
    """

    dim: int
    picard_rank: int
    gram: tuple | None = None
    cubic: tuple | None = None
    c2: tuple | None = None

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise ShapeError(f"dim must be 1, 2 or 3, got {self.dim}")
        k = self.picard_rank
        if self.dim == 1:
            if k != 0:
                raise ShapeError("dim-1 rings have no intermediate block")
            if self.gram is not None or self.cubic is not None or self.c2 is not None:
                raise ShapeError("dim-1 rings carry no Gram/cubic/c2 data")
            return
        if k < 1:
            raise ShapeError("picard_rank must be >= 1 for dim 2 and 3")
        if self.dim == 2:
            if self.gram is None:
                raise ShapeError("dim-2 ring needs a Gram matrix")
            if self.cubic is not None or self.c2 is not None:
                raise ShapeError("dim-2 rings carry no cubic/c2 data")
            gram = tuple(tuple(_as_int(x) for x in row) for row in self.gram)
            if len(gram) != k:
                raise ShapeError("Gram size must equal picard_rank")
            _check_symmetric(gram)
            for i in range(k):
                if gram[i][i] % 2 != 0:
                    raise ShapeError(
                        f"Gram diagonal entry {gram[i][i]} is odd; "
                        "surface lattices here are even"
                    )
            object.__setattr__(self, "gram", gram)
            return
        # dim == 3
        if self.cubic is None or self.c2 is None:
            raise ShapeError("dim-3 ring needs cubic and c2 data")
        if self.gram is not None:
            raise ShapeError("dim-3 rings carry no Gram matrix")
        cubic = self.cubic
        if len(cubic) and not isinstance(cubic[0], (tuple, list)):
            # flattened row-major (a, b, c) form, as in fixture files
            if len(cubic) != k ** 3:
                raise ShapeError("flattened cubic must have picard_rank^3 entries")
            flat = [_as_int(x) for x in cubic]
            cubic = tuple(
                tuple(
                    tuple(flat[(a * k + b) * k + c] for c in range(k))
                    for b in range(k)
                )
                for a in range(k)
            )
        else:
            cubic = tuple(
                tuple(tuple(_as_int(x) for x in row) for row in plane) for plane in cubic
            )
        if len(cubic) != k or any(
            len(plane) != k or any(len(row) != k for row in plane) for plane in cubic
        ):
            raise ShapeError("cubic tensor must be picard_rank^3")
        for a in range(k):
            for b in range(k):
                for c in range(k):
                    v = cubic[a][b][c]
                    if not (
                        v == cubic[a][c][b] == cubic[b][a][c]
                        == cubic[b][c][a] == cubic[c][a][b] == cubic[c][b][a]
                    ):
                        raise ShapeError("cubic tensor must be totally symmetric")
        c2 = tuple(_as_int(x) for x in self.c2)
        if len(c2) != k:
            raise ShapeError("c2 vector length must equal picard_rank")
        object.__setattr__(self, "cubic", cubic)
        object.__setattr__(self, "c2", c2)

    @classmethod
    def elliptic(cls) -> "RingDescriptor":
        return cls(dim=1, picard_rank=0)

    def pic_pair(self, a: Sequence, b: Sequence) -> Fraction:
        """Gram pairing of two divisor-block coordinate vectors (dim 2)."""
        if self.dim != 2:
            raise ShapeError("pic_pair needs a dim-2 descriptor")
        a = [as_fraction(x) for x in a]
        b = [as_fraction(x) for x in b]
        if len(a) != self.picard_rank or len(b) != self.picard_rank:
            raise ShapeError("divisor coordinates must match picard_rank")
        return sum(
            (a[i] * self.gram[i][j] * b[j]
             for i in range(self.picard_rank)
             for j in range(self.picard_rank)),
            Fraction(0),
        )

    def cubic_contract(self, a: Sequence, b: Sequence) -> tuple:
        """Divisor-times-divisor product in dual-basis curve coordinates."""
        if self.dim != 3:
            raise ShapeError("cubic_contract needs a dim-3 descriptor")
        k = self.picard_rank
        a = [as_fraction(x) for x in a]
        b = [as_fraction(x) for x in b]
        if len(a) != k or len(b) != k:
            raise ShapeError("divisor coordinates must match picard_rank")
        return tuple(
            sum((a[i] * self.cubic[i][j][d] * b[j] for i in range(k) for j in range(k)),
                Fraction(0))
            for d in range(k)
        )

    def triple(self, a: Sequence, b: Sequence, c: Sequence) -> Fraction:
        """Full triple intersection number of three divisor classes."""
        contracted = self.cubic_contract(a, b)
        c = [as_fraction(x) for x in c]
        return sum((x * y for x, y in zip(contracted, c)), Fraction(0))

    def to_payload(self) -> dict:
        if self.dim == 1:
            return {"dim": 1, "picard_rank": 0}
        if self.dim == 2:
            return {
                "dim": 2,
                "picard_rank": self.picard_rank,
                "gram": [list(row) for row in self.gram],
            }
        k = self.picard_rank
        flat = [
            self.cubic[a][b][c]
            for a in range(k) for b in range(k) for c in range(k)
        ]
        return {"dim": 3, "picard_rank": k, "cubic": flat, "c2": list(self.c2)}

    @classmethod
    def from_payload(cls, payload: dict) -> "RingDescriptor":
        known = {"dim", "picard_rank", "gram", "cubic", "c2"}
        unknown = set(payload) - known
        if unknown:
            raise ShapeError(f"unknown ring descriptor keys: {sorted(unknown)}")
        return cls(
            dim=int(payload["dim"]),
            picard_rank=int(payload.get("picard_rank", 0)),
            gram=payload.get("gram"),
            cubic=payload.get("cubic"),
            c2=payload.get("c2"),
        )


@dataclass(frozen=True)
class ToddData:
    """Todd class and its positive square root for one descriptor."""

    td: GradedVector
    sqrt_td: GradedVector


def todd_data(ring: RingDescriptor) -> ToddData:
    """Closed-form Todd data; ``cup(sqrt_td, sqrt_td) == td`` exactly."""
    if ring.dim == 1:
        return ToddData(
            td=GradedVector(1, (1, 0)),
            sqrt_td=GradedVector(1, (1, 0)),
        )
    k = ring.picard_rank
    zero = (0,) * k
    if ring.dim == 2:
        return ToddData(
            td=GradedVector(2, (1, zero, 2)),
            sqrt_td=GradedVector(2, (1, zero, 1)),
        )
    twelfth = tuple(Fraction(c, 12) for c in ring.c2)
    twentyfourth = tuple(Fraction(c, 24) for c in ring.c2)
    return ToddData(
        td=GradedVector(3, (1, zero, twelfth, 0)),
        sqrt_td=GradedVector(3, (1, zero, twentyfourth, 0)),
    )


def _check_compatible(u: GradedVector, ring: RingDescriptor) -> None:
    if u.dim != ring.dim:
        raise ShapeError(f"vector dim {u.dim} != ring dim {ring.dim}")
    for i in range(1, u.dim):
        if len(u.blocks[i]) != ring.picard_rank:
            raise ShapeError(
                f"block {i} arity {len(u.blocks[i])} != picard_rank {ring.picard_rank}"
            )


def _dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def cup(u: GradedVector, v: GradedVector, ring: RingDescriptor) -> GradedVector:
    """Cup product, truncated above degree 2*dim.

    Everything lives in even degree, so the product is commutative; the
    descriptor supplies the only nontrivial contractions (Gram matrix for
    surfaces, cubic tensor and divisor/curve duality for threefolds).
    """
    _check_compatible(u, ring)
    _check_compatible(v, ring)
    n = ring.dim
    u0, v0 = u.blocks[0], v.blocks[0]
    if n == 1:
        u1, v1 = u.blocks[1], v.blocks[1]
        return GradedVector(1, (u0 * v0, u0 * v1 + u1 * v0))
    if n == 2:
        u1, v1 = u.blocks[1], v.blocks[1]
        u2, v2 = u.blocks[2], v.blocks[2]
        w1 = tuple(u0 * y + v0 * x for x, y in zip(u1, v1))
        w2 = u0 * v2 + u2 * v0 + ring.pic_pair(u1, v1)
        return GradedVector(2, (u0 * v0, w1, w2))
    u1, v1 = u.blocks[1], v.blocks[1]
    u2, v2 = u.blocks[2], v.blocks[2]
    u3, v3 = u.blocks[3], v.blocks[3]
    w1 = tuple(u0 * y + v0 * x for x, y in zip(u1, v1))
    hh = ring.cubic_contract(u1, v1)
    w2 = tuple(u0 * y + v0 * x + z for x, y, z in zip(u2, v2, hh))
    w3 = u0 * v3 + u3 * v0 + _dot(u1, v2) + _dot(u2, v1)
    return GradedVector(3, (u0 * v0, w1, w2, w3))


def pair_sym(u: GradedVector, v: GradedVector, ring: RingDescriptor) -> Fraction:
    """Top-degree component of the cup product (the Poincare pairing)."""
    return cup(u, v, ring).blocks[ring.dim]


def star(u: GradedVector) -> GradedVector:
    """Sign flip on blocks of degree 2 mod 4: (u0, -u1, u2, -u3).

    This is the Chern-character image of dualisation and an involution.
    """
    out = []
    for i, b in enumerate(u.blocks):
        if i % 2 == 0:
            out.append(b)
        elif i == 0 or i == u.dim:
            out.append(-b)
        else:
            out.append(tuple(-x for x in b))
    return GradedVector(u.dim, tuple(out))


def pair_exotic(
    u: GradedVector,
    v: GradedVector,
    ring: RingDescriptor,
    todd: ToddData | None = None,
) -> Fraction:
    """Todd-twisted Euler pairing: top block of ``star(u) * v * td``.

    On Chern characters this computes chi(Hom(E1, E2)).  It is symmetric
    for dim 2 and skew for dim 1 and 3 (so every vector pairs to zero with
    itself on a threefold: that is the unobstructed-deformation statement).
    """
    todd = todd or todd_data(ring)
    return cup(cup(star(u), v, ring), todd.td, ring).blocks[ring.dim]


def mukai_vector(
    ch: GradedVector,
    ring: RingDescriptor,
    todd: ToddData | None = None,
) -> GradedVector:
    """Mukai vector ``ch * sqrt(td)`` with the positive square root."""
    todd = todd or todd_data(ring)
    return cup(ch, todd.sqrt_td, ring)

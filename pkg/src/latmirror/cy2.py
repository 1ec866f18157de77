"""K3 lattice calculus: Mukai vectors, mirror classes, quantization counts.

Chern data of a sheaf on a K3 enters as a dim-2 graded vector
(rank, c1, ch2); its Mukai vector is ch * sqrt(td) = (rank, c1, ch2 + rank).
The Euler pairing chi(Hom(E1, E2)) is the Poincare pairing of the dualised
Mukai vector of E1 against that of E2, and a simple sheaf moves in a moduli
space of dimension 2 - chi(Hom(E, E)).

The mirror of a polarising class L is the sphere class [s] + L - L^2/2 [e]
in the lattice spanned by a section [s] ([s]^2 = -2), a fibre [e]
([e]^2 = 0, [e].[s] = 1) and the Picard block; the Picard coordinates of
the image carry an imaginary-unit marker that is bookkeeping, never a
number.  The fibrewise Fourier transform of L projects to
[s0] - L^2/2 [e'] plus a transcendental summand that pairs to zero with
everything algebraic; its support slope is -L^2/2.  Level counting is the
content of the quantization check: h^0(L) = L^2/2 + 2 sections against
(-[s0]) . ([s0] - L^2/2 [e']) = 2 + L^2/2 marked fibres, computed from two
independent expansions.

Spheres of square -2 act on the Picard block by x -> x + (x.delta) delta;
the bounded chamber walk repeatedly applies reflections until a target
class pairs nonnegatively with every supplied root.  A hyperbolic summand
candidate (e, s) is certified by e^2 = 0, s^2 = -2, e.s = 1 and
orthogonality of the declared complement.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import (
    GradedVector,
    LatticeError,
    RingDescriptor,
    ShapeError,
    ToddData,
    as_fraction,
    mukai_vector,
    pair_sym,
    star,
    todd_data,
)

# Euler characteristic of every K3 surface; an elliptic fibration with only
# nodal fibres has exactly this many singular fibres.
EULER_K3 = 24

# Section/fibre Gram block of the mirror lattice: [s]^2 = -2, [s].[e] = 1,
# [e]^2 = 0.
H_GRAM = ((-2, 1), (1, 0))


@dataclass(frozen=True)
class K3Descriptor:
    """A K3 Picard lattice plus optional root and fibration metadata."""

    ring: RingDescriptor
    label: str = "k3"
    roots: tuple = ()
    singular_fibres: int | None = None

    def __post_init__(self):
        if self.ring.dim != 2:
            raise ShapeError("K3Descriptor needs a dim-2 ring")
        roots = tuple(tuple(int(x) for x in r) for r in self.roots)
        for r in roots:
            if self.ring.pic_pair(r, r) != -2:
                raise LatticeError(f"declared root {r} has square != -2")
        object.__setattr__(self, "roots", roots)
        if self.singular_fibres is not None and self.singular_fibres != EULER_K3:
            raise LatticeError(
                f"elliptic K3 fibration must have {EULER_K3} singular fibres "
                f"(Euler characteristic), got {self.singular_fibres}"
            )

    @property
    def todd(self) -> ToddData:
        return todd_data(self.ring)


def mukai2(ch: GradedVector, X: K3Descriptor) -> GradedVector:
    """Mukai vector (rank, c1, ch2 + rank) of a Chern-data vector."""
    return mukai_vector(ch, X.ring, X.todd)


def euler_pairing2(ch1: GradedVector, ch2: GradedVector, X: K3Descriptor) -> Fraction:
    """chi(Hom(E1, E2)) as the Poincare pairing of Mukai vectors."""
    m1 = mukai2(ch1, X)
    m2 = mukai2(ch2, X)
    return pair_sym(star(m1), m2, X.ring)


def moduli_dim2(ch: GradedVector, X: K3Descriptor) -> int:
    """Expected moduli dimension 2 - chi(Hom(E, E*dual-twisted))."""
    m = mukai2(ch, X)
    val = 2 - pair_sym(m, star(m), X.ring)
    if val.denominator != 1:
        raise LatticeError(f"moduli dimension {val} is not an integer")
    return int(val)


def _square(L: Sequence, X: K3Descriptor) -> Fraction:
    return X.ring.pic_pair(L, L)


def _require_integral(L: Sequence) -> tuple:
    out = tuple(as_fraction(x) for x in L)
    if any(x.denominator != 1 for x in out):
        raise LatticeError("divisor class must be integral")
    return tuple(int(x) for x in out)


@dataclass(frozen=True)
class MirrorClassK3:
    """Sphere class [s] + L - L^2/2 [e]; Picard block tagged imaginary.

    ``pic_imaginary`` records that the middle block is multiplied by the
    imaginary unit in the period normalization.  It is a flag on the basis
    choice, not a coefficient, so pairings stay exact integers.
    """

    s: Fraction
    pic: tuple
    e: Fraction
    pic_imaginary: bool = True


def mirror_k3(L: Sequence, X: K3Descriptor) -> MirrorClassK3:
    """Mirror image [s] + L - (L^2/2) [e] of an integral divisor class."""
    L = _require_integral(L)
    l2 = _square(L, X)
    if l2.denominator != 1 or int(l2) % 2 != 0:
        raise LatticeError(f"L^2 = {l2} is not even; not a divisor class here")
    return MirrorClassK3(
        s=Fraction(1),
        pic=tuple(Fraction(x) for x in L),
        e=-l2 / 2,
    )


def mirror_pairing_k3(a: MirrorClassK3, b: MirrorClassK3, X: K3Descriptor) -> Fraction:
    """Full mirror-lattice pairing: hyperbolic block plus Picard block."""
    h = (
        a.s * b.s * H_GRAM[0][0]
        + a.s * b.e * H_GRAM[0][1]
        + a.e * b.s * H_GRAM[1][0]
        + a.e * b.e * H_GRAM[1][1]
    )
    return h + X.ring.pic_pair(a.pic, b.pic)


@dataclass(frozen=True)
class GftClassK3:
    """Algebraic shadow [s0] - (L^2/2) [e'] of the transformed bundle.

    The transform also carries a transcendental 2-cycle summand; it pairs
    to zero with every algebraic class, so it is kept as an opaque tag.
    """

    s0: Fraction
    e: Fraction
    transcendental_tag: str = "omega'"

    @property
    def slope(self) -> Fraction:
        # support slope of the multisection: e-coefficient over s0-coefficient
        return self.e / self.s0


def gft_class_k3(L: Sequence, X: K3Descriptor) -> GftClassK3:
    """Transform class of a polarising bundle; needs L^2 > 0 and even."""
    L = _require_integral(L)
    l2 = _square(L, X)
    if l2 <= 0:
        raise LatticeError(f"need a polarising class with L^2 > 0, got {l2}")
    if int(l2) % 2 != 0:
        raise LatticeError(f"L^2 = {l2} is not even")
    return GftClassK3(s0=Fraction(1), e=-l2 / 2)


def h0_k3(L: Sequence, X: K3Descriptor) -> Fraction:
    """Section count L^2/2 + 2 from Riemann-Roch with vanishing."""
    L = _require_integral(L)
    l2 = _square(L, X)
    if l2 < -2:
        raise LatticeError(f"L^2 = {l2} < -2 is outside the counting range")
    return l2 / 2 + 2


def bs_count_k3(L: Sequence, X: K3Descriptor) -> Fraction:
    """Marked-fibre count (-[s0]) . ([s0] - L^2/2 [e']).

    Expanded through the hyperbolic Gram block, not through Riemann-Roch,
    so the quantization identity is a genuine cross-check.  The reversed
    section orientation makes the count positive.
    """
    L = _require_integral(L)
    l2 = _square(L, X)
    if l2 < -2:
        raise LatticeError(f"L^2 = {l2} < -2 is outside the counting range")
    v1 = (Fraction(-1), Fraction(0))            # -[s0]
    v2 = (Fraction(1), -l2 / 2)                 # [s0] - L^2/2 [e']
    return sum(
        (v1[i] * H_GRAM[i][j] * v2[j] for i in range(2) for j in range(2)),
        Fraction(0),
    )


@dataclass(frozen=True)
class QuantizationReportK3:
    label: str
    l2: Fraction
    h0: Fraction
    bs_count: Fraction
    ok: bool


def verify_quantization_k3(L: Sequence, X: K3Descriptor) -> QuantizationReportK3:
    """Compare section count and marked-fibre count for one class."""
    h = h0_k3(L, X)
    n = bs_count_k3(L, X)
    return QuantizationReportK3(
        label=X.label,
        l2=_square(L, X),
        h0=h,
        bs_count=n,
        ok=(h == n),
    )


def reflect_minus2(x: Sequence, delta: Sequence, X: K3Descriptor) -> tuple:
    """Reflection x + (x.delta) delta in a sphere class of square -2."""
    if X.ring.pic_pair(delta, delta) != -2:
        raise LatticeError("reflection axis must have square -2")
    x = tuple(as_fraction(v) for v in x)
    coeff = X.ring.pic_pair(x, delta)
    return tuple(xi + coeff * as_fraction(di) for xi, di in zip(x, delta))


@dataclass(frozen=True)
class WalkResult:
    vector: tuple
    steps: int
    applied: tuple  # indices into the supplied root list, in order


MAX_WALK_STEPS = 64


def walk_to_chamber(
    x: Sequence,
    roots: Sequence[Sequence],
    X: K3Descriptor,
    max_steps: int = MAX_WALK_STEPS,
) -> WalkResult:
    """Reflect until x pairs nonnegatively with every root (bounded).

    Applies, at each step, the first root with negative pairing.  Raises if
    no chamber is reached within ``max_steps`` reflections.
    """
    x = tuple(as_fraction(v) for v in x)
    applied = []
    for _ in range(max_steps + 1):
        bad = next(
            (i for i, d in enumerate(roots) if X.ring.pic_pair(x, d) < 0), None
        )
        if bad is None:
            return WalkResult(vector=x, steps=len(applied), applied=tuple(applied))
        if len(applied) == max_steps:
            break
        x = reflect_minus2(x, roots[bad], X)
        applied.append(bad)
    raise LatticeError(f"no chamber reached within {max_steps} reflections")


@dataclass(frozen=True)
class MainConditionReport:
    checks: tuple  # ((name, ok, detail), ...)
    passed: bool


def _gram_pair(gram, a, b) -> Fraction:
    k = len(gram)
    a = [as_fraction(x) for x in a]
    b = [as_fraction(x) for x in b]
    if len(a) != k or len(b) != k:
        raise ShapeError("vector length must match the ambient Gram size")
    return sum(
        (a[i] * gram[i][j] * b[j] for i in range(k) for j in range(k)), Fraction(0)
    )


def check_main_condition(
    gram: Sequence[Sequence[int]],
    e: Sequence,
    s: Sequence,
    complement: Sequence[Sequence] = (),
) -> MainConditionReport:
    """Certify a fibre/section pair inside an ambient lattice.

    Checks e^2 = 0, s^2 = -2, e.s = 1, and that every declared complement
    vector is orthogonal to both e and s.  Reports all checks rather than
    stopping at the first failure.
    """
    gram = tuple(tuple(int(x) for x in row) for row in gram)
    for i, row in enumerate(gram):
        if len(row) != len(gram):
            raise ShapeError("ambient Gram must be square")
        for j in range(len(gram)):
            if gram[i][j] != gram[j][i]:
                raise ShapeError("ambient Gram must be symmetric")
    checks = []
    ee = _gram_pair(gram, e, e)
    checks.append(("e.e == 0", ee == 0, f"e.e = {ee}"))
    ss = _gram_pair(gram, s, s)
    checks.append(("s.s == -2", ss == -2, f"s.s = {ss}"))
    es = _gram_pair(gram, e, s)
    checks.append(("e.s == 1", es == 1, f"e.s = {es}"))
    for idx, c in enumerate(complement):
        ce = _gram_pair(gram, c, e)
        cs = _gram_pair(gram, c, s)
        checks.append(
            (
                f"complement[{idx}] orthogonal",
                ce == 0 and cs == 0,
                f"c.e = {ce}, c.s = {cs}",
            )
        )
    return MainConditionReport(
        checks=tuple(checks), passed=all(ok for _, ok, _ in checks)
    )


@dataclass(frozen=True)
class HyperbolicDecomposition:
    """A certified fibre/section pair; construction re-runs the checks."""

    gram: tuple
    e: tuple
    s: tuple
    complement: tuple = ()

    def __post_init__(self):
        report = check_main_condition(self.gram, self.e, self.s, self.complement)
        if not report.passed:
            failed = [name for name, ok, _ in report.checks if not ok]
            raise LatticeError(f"hyperbolic pair checks failed: {failed}")

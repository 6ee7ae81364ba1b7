"""Exact geometry of the two-strand representation variety (the pillowcase).

For n = 2 the irreducible variety is a torus modulo the hyperelliptic
involution: a sphere with four cone points.  Coplanar configurations make the
braid action affine on angles, so the whole picture (the diagonal curve, the
graph curve, their intersections, and the torus lift of the induced map) is
computed exactly over rational multiples of pi.
"""

from __future__ import annotations

import dataclasses
import math
from fractions import Fraction

from .braids import BraidWord
from .configurations import Configuration, product
from .quaternions import qnorm

# Generator matrices of the angle action on (a_1, a_2): reflect(u, w) has
# angle 2a_u - a_w, so sigma_1 maps (a_1, a_2) to (2a_1 - a_2, a_1).
_GEN = ((2, -1), (1, 0))
_GEN_INV = ((0, 1), (-1, 2))

DEGENERACY_CAVEAT = (
    "degenerate: the induced map conserves the product coordinate, so "
    "det(I - L) = 0 and every fixed point sits in a one-parameter family; "
    "a compactly support isotopy perturbation is required before any "
    "Nielsen counting"
)


def _frac_mod(x: Fraction, modulus: int = 2) -> Fraction:
    return x - modulus * (x / modulus).__floor__()


@dataclasses.dataclass(frozen=True)
class PillowPoint:
    """A point of the pillowcase in (alpha, theta) angle coordinates.

    Angles are stored exactly as Fractions in units of pi, normalized to
    [0, 2); the pair (alpha, theta) is identified with (2pi - alpha,
    2pi - theta), and the cone points sit at alpha, theta in {0, pi}.
    """

    alpha: Fraction
    theta: Fraction
    tag: str = ""

    def __post_init__(self):
        object.__setattr__(self, "alpha", _frac_mod(Fraction(self.alpha)))
        object.__setattr__(self, "theta", _frac_mod(Fraction(self.theta)))

    def is_cone_point(self) -> bool:
        return self.alpha in (0, 1) and self.theta in (0, 1)

    def folded(self) -> PillowPoint:
        """Canonical representative under (a, t) ~ (2 - a, 2 - t)."""
        other = (_frac_mod(2 - self.alpha), _frac_mod(2 - self.theta))
        if other < (self.alpha, self.theta):
            return PillowPoint(other[0], other[1], self.tag)
        return self

    def alpha_radians(self) -> float:
        return math.pi * float(self.alpha)

    def theta_radians(self) -> float:
        return math.pi * float(self.theta)


@dataclasses.dataclass(frozen=True)
class HPoint:
    """A pair of configurations with equal quaternion products."""

    X: Configuration
    Y: Configuration

    def __post_init__(self):
        if self.X.n != self.Y.n:
            raise ValueError("configuration sizes differ")
        gap = qnorm(product(self.X) - product(self.Y))
        if gap > 1e-9:
            raise ValueError(f"products differ by {gap:.3e}")


@dataclasses.dataclass(frozen=True)
class TorusLift:
    """Affine lift of the induced two-strand map to the torus double cover.

    The map is (alpha, theta) -> L (alpha, theta) + shift; the first row of L
    is (1, 0) because the product coordinate alpha is conserved, which forces
    det(I - L) = 0 for every word.
    """

    L: tuple[tuple[int, int], tuple[int, int]]
    shift: tuple[Fraction, Fraction]

    def det_i_minus_l(self) -> int:
        a, b = self.L[0]
        c, d = self.L[1]
        return (1 - a) * (1 - d) - b * c

    @property
    def caveat(self) -> str:
        return DEGENERACY_CAVEAT


def _require_two_strands(b: BraidWord) -> None:
    if b.strands != 2:
        raise ValueError(f"pillowcase geometry needs 2 strands, got {b.strands}")


def _planar(angle_pi: Fraction):
    a = math.pi * float(angle_pi)
    return (math.cos(a), math.sin(a), 0.0)


def chart(p: PillowPoint) -> HPoint:
    """The configuration pair of a pillowcase point.

    X = (P(0), P(pi - alpha)) and Y = (P(theta), P(theta + pi - alpha)) with
    P(t) the planar unit vector at angle t; both pairs have the same
    quaternion product, and every irreducible point of the two-strand variety
    is reached up to the involution.
    """
    alpha, theta = p.alpha, p.theta
    X = Configuration([_planar(Fraction(0)), _planar(1 - alpha)])
    Y = Configuration([_planar(theta), _planar(theta + 1 - alpha)])
    return HPoint(X, Y)


def _mat_mul(A, B):
    return (
        (A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
        (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]),
    )


def angle_matrix(b: BraidWord):
    """Integer matrix of the coplanar angle action of a two-strand word.

    Letters act left to right on the angle pair, so the word matrix is the
    product of generator matrices with later letters multiplied on the left.
    Always satisfies (row1 - row2) = (1, -1): angle differences are conserved.
    """
    _require_two_strands(b)
    A = ((1, 0), (0, 1))
    for g in b.letters:
        A = _mat_mul(_GEN if g > 0 else _GEN_INV, A)
    return A


@dataclasses.dataclass(frozen=True)
class GammaCurves:
    """The diagonal curve and the graph curve in exact angle form.

    The diagonal is theta = 0; the graph curve is theta = q (pi - alpha)
    mod 2 pi, where q is the upper-right entry of the angle matrix.  When
    q = 0 the two curves coincide (degenerate overlap).
    """

    q: int

    @property
    def id_curve(self) -> str:
        return "theta = 0"

    @property
    def beta_curve(self) -> str:
        return f"theta = {self.q} (pi - alpha) mod 2 pi"

    def beta_theta(self, alpha: Fraction) -> Fraction:
        return _frac_mod(Fraction(self.q) * (1 - Fraction(alpha)))

    @property
    def degenerate_overlap(self) -> bool:
        return self.q == 0


def gamma_curves(b: BraidWord) -> GammaCurves:
    A = angle_matrix(b)
    return GammaCurves(q=A[0][1])


def exact_classes(b: BraidWord) -> list[PillowPoint]:
    """Exact intersections of the graph curve with the diagonal.

    Solves theta = 0, q (pi - alpha) = 0 mod 2 pi: alpha = pi - 2 pi k / q.
    Cone (reducible) points are tagged and the involution alpha ~ 2pi - alpha
    is folded out, leaving (|q| - 1) / 2 irreducible classes for a knot.
    """
    curves = gamma_curves(b)
    q = curves.q
    if q % 2 == 0:
        raise ValueError(
            f"closure is a link, not a knot (angle count q = {q} is even)"
        )
    points = {}
    for k in range(abs(q)):
        alpha = _frac_mod(1 - Fraction(2 * k, q))
        tag = "reducible" if alpha in (0, 1) else "irreducible"
        pt = PillowPoint(alpha, Fraction(0), tag).folded()
        points[(pt.alpha, pt.theta)] = pt
    out = sorted(points.values(), key=lambda p: (p.alpha, p.theta))
    n_irr = sum(1 for p in out if p.tag == "irreducible")
    assert n_irr == (abs(q) - 1) // 2
    return out


def irreducible_classes(b: BraidWord) -> list[PillowPoint]:
    return [p for p in exact_classes(b) if p.tag == "irreducible"]


def torus_lift(b: BraidWord) -> TorusLift:
    """Lift of the induced map (X, Y) -> (Y, beta(X)) to the torus cover.

    In (alpha, theta) coordinates the map is (alpha, q(pi - alpha) - theta),
    i.e. L = [[1, 0], [-q, -1]] with shift (0, q pi mod 2 pi).  det(I - L)
    vanishes identically: the conserved product coordinate is a feature of
    the construction, and the reason a perturbation is needed before any
    honest fixed-point count on the quotient.
    """
    q = gamma_curves(b).q
    return TorusLift(
        L=((1, 0), (-q, -1)),
        shift=(Fraction(0), _frac_mod(Fraction(q))),
    )


def format_pi_multiple(x: Fraction) -> str:
    """Exact rendering of an angle as a rational multiple of pi."""
    x = Fraction(x)
    if x == 0:
        return "0"
    if x == 1:
        return "π"
    return f"{x.numerator}/{x.denominator} π" if x.denominator != 1 else f"{x.numerator} π"

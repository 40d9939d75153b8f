"""Exponential (tension) B-spline basis on a uniform mesh.

Each basis function B_j is supported on [x_{j-2}, x_{j+2}] and is built from
the four functions {1, x, exp(px), exp(-px)} on every mesh interval, joined
with C2 continuity.  The p -> 0 limit is the classical cubic B-spline scaled
by 3/2, available through ``cubic_limit=True``.

Small tension is the delicate regime: ``s - ph`` and ``phc - s`` are both
O((ph)^3), so they are evaluated from their Taylor series there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "SplineShape",
    "KnotStencils",
    "ScaledStencil",
    "SplinePieceCoefficients",
    "make_shape",
    "knot_stencils",
    "scaled_stencil",
    "piece_coefficients",
    "eval_basis",
    "sinh_minus_x",
    "xcosh_minus_sinh",
    "cosh_minus_one",
]

#: below this value of ph the differences are summed from their series
SERIES_THRESHOLD = 1.0
#: largest admissible ph; cosh(ph) * ph overflows shortly after 700
MAX_PH = 350.0


def sinh_minus_x(x: float) -> float:
    """Return sinh(x) - x without cancellation for small |x|."""
    if abs(x) >= SERIES_THRESHOLD:
        return math.sinh(x) - x
    x2 = x * x
    term = x * x2 / 6.0
    total = term
    k = 1
    while abs(term) > 1e-17 * abs(total):
        term *= x2 / ((2 * k + 2) * (2 * k + 3))
        total += term
        k += 1
    return total


def xcosh_minus_sinh(x: float) -> float:
    """Return x*cosh(x) - sinh(x) without cancellation for small |x|.

    The series is sum_{k>=1} 2k x^(2k+1) / (2k+1)!.
    """
    if abs(x) >= SERIES_THRESHOLD:
        return x * math.cosh(x) - math.sinh(x)
    x2 = x * x
    power = x * x2 / 6.0  # x^(2k+1) / (2k+1)! at k = 1
    total = 2.0 * power
    k = 1
    while abs(2 * k * power) > 1e-17 * abs(total):
        power *= x2 / ((2 * k + 2) * (2 * k + 3))
        k += 1
        total += 2 * k * power
    return total


def cosh_minus_one(x: float) -> float:
    """Return cosh(x) - 1 as 2 sinh(x/2)^2."""
    return 2.0 * math.sinh(0.5 * x) ** 2


@dataclass(frozen=True)
class SplineShape:
    """Tension and mesh constants of the exponential B-spline family.

    ``d1 = s - ph`` and ``d2 = phc - s`` are the recurring differences; both
    vanish at p = 0.
    """

    p: float
    h: float
    s: float
    c: float
    d1: float
    d2: float

    @property
    def ph(self) -> float:
        return self.p * self.h

    @property
    def c_minus_one(self) -> float:
        return cosh_minus_one(self.ph)


@dataclass(frozen=True)
class KnotStencils:
    """Values of B_j, B_j' and B_j'' at (x_{j-1}, x_j, x_{j+1})."""

    value: tuple[float, float, float]
    deriv1: tuple[float, float, float]
    deriv2: tuple[float, float, float]


@dataclass(frozen=True)
class ScaledStencil:
    """Knot stencils multiplied by a common positive factor.

    For p > 0 the factor is 2(phc - s), which clears the common denominator
    and leaves ``d1 = s - ph``, ``2 d2``, ``p2s = p^2 s`` and
    ``pc1 = p (c - 1)`` for building the collocation rows.  In the cubic
    limit the factor is 2, giving d1 = 1/2, d2 = 1, p2s = 3/h^2 and
    pc1 = 3/(2h).  Row scaling does not change any collocation solution.
    """

    d1: float
    d2: float
    p2s: float
    pc1: float

    @property
    def neighbor_value(self) -> float:
        """B_j(x_{j+-1}) = d1 / (2 d2)."""
        return self.d1 / (2.0 * self.d2)


@dataclass(frozen=True)
class SplinePieceCoefficients:
    """Coefficients of the piecewise formula for B_j.

    Inner intervals: ``qa + qb z + qc exp(pz) + qd exp(-pz)`` with
    z = |x - x_j|.  Outer intervals: ``(qe/p) sinh(py) - qe y`` with y the
    distance to the end of the support.  :func:`eval_basis` uses an
    equivalent form that stays accurate as p -> 0.
    """

    qa: float
    qb: float
    qc: float
    qd: float
    qe: float


def make_shape(p: float, h: float) -> SplineShape:
    """Build the shape constants for tension ``p`` and mesh width ``h``.

    Raises
    ------
    ValueError
        If ``h`` is not positive, ``p`` is negative, or ``ph`` exceeds
        :data:`MAX_PH`.
    """
    if not h > 0.0:
        raise ValueError(f"mesh spacing must be positive, got h={h}")
    if p < 0.0:
        raise ValueError(f"tension must be nonnegative, got p={p}")
    ph = p * h
    if ph > MAX_PH:
        raise ValueError(f"ph={ph:g} exceeds {MAX_PH}; hyperbolic terms overflow")
    return SplineShape(
        p=p,
        h=h,
        s=math.sinh(ph),
        c=math.cosh(ph),
        d1=sinh_minus_x(ph),
        d2=xcosh_minus_sinh(ph),
    )


def knot_stencils(shape: SplineShape, cubic_limit: bool = False) -> KnotStencils:
    """Knot values of B_j and its first two derivatives.

    The derivative convention is B_j'(x_{j-1}) > 0 > B_j'(x_{j+1}), i.e. the
    basis function rises towards its centre.
    """
    h = shape.h
    if cubic_limit:
        k = 3.0 / (4.0 * h)
        w = 3.0 / (2.0 * h * h)
        return KnotStencils((0.25, 1.0, 0.25), (k, 0.0, -k), (w, -2.0 * w, w))
    if shape.p == 0.0:
        raise ValueError("p = 0 has no exponential basis; use cubic_limit=True")
    v = shape.d1 / (2.0 * shape.d2)
    k = shape.p * shape.c_minus_one / (2.0 * shape.d2)
    w = shape.p**2 * shape.s / (2.0 * shape.d2)
    return KnotStencils((v, 1.0, v), (k, 0.0, -k), (w, -2.0 * w, w))


def scaled_stencil(shape: SplineShape, cubic_limit: bool = False) -> ScaledStencil:
    """Return the row-scaled stencil constants used by the collocation solver."""
    if cubic_limit:
        h = shape.h
        return ScaledStencil(d1=0.5, d2=1.0, p2s=3.0 / h**2, pc1=1.5 / h)
    if shape.p == 0.0:
        raise ValueError("p = 0 has no exponential basis; use cubic_limit=True")
    p = shape.p
    return ScaledStencil(
        d1=shape.d1, d2=shape.d2, p2s=p * p * shape.s, pc1=p * shape.c_minus_one
    )


def piece_coefficients(shape: SplineShape) -> SplinePieceCoefficients:
    """Coefficients of the classical piecewise formula (p > 0 only)."""
    p, h, s, c = shape.p, shape.h, shape.s, shape.c
    if p == 0.0:
        raise ValueError("piece coefficients are undefined at p = 0")
    d2 = p * h * c - s
    e_m, e_p = math.exp(-p * h), math.exp(p * h)
    return SplinePieceCoefficients(
        qa=p * h * c / d2,
        qb=0.5 * p * (c * (c - 1.0) + s * s) / (d2 * (1.0 - c)),
        qc=0.25 * (e_m * (1.0 - c) + s * (e_m - 1.0)) / (d2 * (1.0 - c)),
        qd=0.25 * (e_p * (c - 1.0) + s * (e_p - 1.0)) / (d2 * (1.0 - c)),
        qe=p / (2.0 * d2),
    )


def eval_basis(
    shape: SplineShape,
    j: int,
    x: float,
    order: int = 0,
    *,
    origin: float = 0.0,
    cubic_limit: bool = False,
) -> float:
    """Evaluate B_j(x) or one of its first two derivatives.

    Knots are ``origin + k*h``.  The result is exactly zero outside
    [x_{j-2}, x_{j+2}].
    """
    if order not in (0, 1, 2):
        raise ValueError(f"order must be 0, 1 or 2, got {order}")
    h = shape.h
    dx = x - (origin + j * h)
    z = abs(dx)
    # knots built as origin + k*h can miss j*h + 2h by an ulp
    if z >= 2.0 * h * (1.0 - 1e-12):
        return 0.0
    sign = 1.0 if dx >= 0.0 else -1.0

    if cubic_limit:
        if z <= h:
            r = z / h
            if order == 0:
                return 1.0 - 1.5 * r * r + 0.75 * r**3
            if order == 1:
                return sign * (-3.0 * r + 2.25 * r * r) / h
            return (-3.0 + 4.5 * r) / h**2
        r = (2.0 * h - z) / h
        if order == 0:
            return 0.25 * r**3
        if order == 1:
            return -sign * 0.75 * r * r / h
        return 1.5 * r / h**2

    p, d2 = shape.p, shape.d2
    if p == 0.0:
        raise ValueError("p = 0 has no exponential basis; use cubic_limit=True")
    if z <= h:
        # B = 1 + C (cosh(pz) - 1) + S (sinh(pz) - pz) with B'(0) = 0
        big_c = -shape.s / d2
        big_s = (1.0 + 2.0 * shape.c) / (2.0 * d2)
        pz = p * z
        if shape.ph >= SERIES_THRESHOLD:
            # C cosh + S sinh = P e^{pz} + Q e^{-pz}; P, Q = O(1/ph) avoid the
            # e^{ph} cancellation of the hyperbolic form
            big_p = (1.0 + 2.0 * math.exp(-shape.ph)) / (4.0 * d2)
            grow = big_p * math.exp(pz)
            decay = -(math.exp(-pz) + 2.0 * math.exp(p * (h - z))) / (4.0 * d2)
            if order == 0:
                return (1.0 - big_c) - big_s * pz + grow + decay
            if order == 1:
                return sign * p * (grow - decay - big_s)
            return p * p * (grow + decay)
        if order == 0:
            return 1.0 + big_c * cosh_minus_one(pz) + big_s * sinh_minus_x(pz)
        if order == 1:
            return sign * p * (big_c * math.sinh(pz) + big_s * cosh_minus_one(pz))
        return p * p * (big_c * math.cosh(pz) + big_s * math.sinh(pz))
    py = p * (2.0 * h - z)
    if order == 0:
        return sinh_minus_x(py) / (2.0 * d2)
    if order == 1:
        return -sign * p * cosh_minus_one(py) / (2.0 * d2)
    return p * p * math.sinh(py) / (2.0 * d2)

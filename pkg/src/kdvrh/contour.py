"""Geometry of the four-ray scattering contour and its phase functions.

The contour consists of oriented rays meeting at a junction point: the
positive real axis, a pair of rays at angles +-6*pi/7, and the negative
real axis.  Between the rays the plane splits into four sectors.  Phase
functions live on this geometry; each one is a polynomial in a branch
square root, so every half-integer power lambda**(k/2) is the k-th power
of a single square root, and boundary values on a cut are obtained by
the explicit substitution

    sqrt(s +- i0) = +-i*sqrt(|s|),    s < 0,

never by a limit from off-axis samples.  The shift cubic

    lam0**3 - 24*t*lam0 + 48*x = 0

selects the junction point of shifted problems; its real branch, fixed
by lam0 -> -+infinity as x -> +-infinity, feeds the slow phase g and the
shifted full phase.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

# Angle of the upper oblique ray; the lower one mirrors it.
RAY_ANGLE = 6.0 * np.pi / 7.0


class Side(enum.Enum):
    """Boundary side for evaluation on a branch cut."""

    PLUS = +1
    MINUS = -1
    OFF = 0


def sqrt_branch(lam, side=Side.OFF):
    """Principal square root with explicit boundary values on (-inf, 0).

    On the open negative real axis the requested side decides the sign:
    sqrt(s + i0) = i*sqrt(|s|) for Side.PLUS, the conjugate for
    Side.MINUS.  The substitution keys on the imaginary part being
    exactly zero, so it does not depend on the sign of a zero.  Points
    with nonzero imaginary part ignore ``side``.
    """
    arr = np.asarray(lam, dtype=np.complex128)
    on_cut = (arr.imag == 0.0) & (arr.real < 0.0)
    root = np.sqrt(np.where(on_cut, 0.0, arr))
    if np.any(on_cut):
        if side is Side.OFF:
            raise ValueError("point on the branch cut: side=Plus or side=Minus required")
        unit = 1.0j if side is Side.PLUS else -1.0j
        mag = np.sqrt(np.where(on_cut, -arr.real, 1.0))
        root = np.where(on_cut, unit * mag, root)
    if np.ndim(lam) == 0:
        return complex(root)
    return root


class PhaseKind(enum.Enum):
    FULL = "full"
    AIRY = "airy"
    SHIFTED = "shifted"


@dataclass(frozen=True)
class Phase:
    """Phase function of the scattering problem at fixed (x, t).

    With z = sqrt_branch(lambda - cut_end) the three kinds evaluate

        FULL     z**7/105 - (t/3) z**3 + x z                (cut_end 0)
        AIRY     -(t/3) z**3 + x z                          (cut_end 0)
        SHIFTED  z**7/105 + (lambda0/30) z**5 + c3 z**3 + c1 z,
                 c3 = (lambda0**2 - 8 t)/24,
                 c1 = (lambda0**3 - 24 t lambda0 + 48 x)/48  (cut_end lambda0)

    For the shifted kind with lambda0 the root of the shift cubic, c1
    vanishes and the first three terms reduce to the slow phase g.
    """

    kind: PhaseKind
    x: float
    t: float
    lambda0: float = 0.0

    @property
    def cut_end(self) -> float:
        """Rightmost point of the branch cut of this phase."""
        return self.lambda0 if self.kind is PhaseKind.SHIFTED else 0.0

    def __call__(self, lam, side=Side.OFF):
        return eval_phase(self, lam, side)


def full_phase(x: float, t: float) -> Phase:
    return Phase(PhaseKind.FULL, x, t)


def airy_phase(x: float, t: float) -> Phase:
    return Phase(PhaseKind.AIRY, x, t)


def shifted_phase(x: float, t: float, lambda0: float) -> Phase:
    return Phase(PhaseKind.SHIFTED, x, t, lambda0)


def eval_phase(phase: Phase, lam, side=Side.OFF):
    """Evaluate a phase, honouring the boundary side on its cut."""
    z = sqrt_branch(np.asarray(lam, dtype=np.complex128) - phase.cut_end, side)
    z2 = z * z
    z3 = z2 * z
    if phase.kind is PhaseKind.FULL:
        return z3 * z3 * z / 105.0 - (phase.t / 3.0) * z3 + phase.x * z
    if phase.kind is PhaseKind.AIRY:
        return -(phase.t / 3.0) * z3 + phase.x * z
    lam0 = phase.lambda0
    c5 = lam0 / 30.0
    c3 = (lam0 * lam0 - 8.0 * phase.t) / 24.0
    c1 = (lam0 ** 3 - 24.0 * phase.t * lam0 + 48.0 * phase.x) / 48.0
    z5 = z3 * z2
    return z5 * z2 / 105.0 + c5 * z5 + c3 * z3 + c1 * z


def lambda0_root(x: float, t: float) -> float:
    """Real branch of the shift cubic lam0**3 - 24 t lam0 + 48 x = 0.

    The branch is fixed by lam0 -> -sign(x)*infinity for large |x|.  For
    t > 0 the cubic can have three real roots; the root with sign
    opposite to x is returned and a RuntimeWarning flags the selection
    whenever the discriminant is negative or close to zero, where no
    continuous single-valued branch exists.
    """
    p = -24.0 * t
    q = 48.0 * x
    half_q = 0.5 * q
    third_p = p / 3.0
    disc = half_q * half_q + third_p ** 3
    scale = max(1.0, half_q * half_q, abs(third_p) ** 3)
    if disc <= 1e-10 * scale:
        warnings.warn(
            "shift cubic branch is ambiguous (discriminant near or below zero)",
            RuntimeWarning,
            stacklevel=2,
        )
    if q == 0.0 and p >= 0.0:
        return 0.0
    if disc >= 0.0:
        sq = np.sqrt(disc)
        big = np.cbrt(-half_q - sq) if q > 0.0 else np.cbrt(-half_q + sq)
        root = big - third_p / big
    else:
        # Three real roots: trigonometric form, pick the branch by sign.
        m = 2.0 * np.sqrt(-third_p)
        cos3a = np.clip(-4.0 * q / m ** 3, -1.0, 1.0)
        a0 = np.arccos(cos3a) / 3.0
        root = m * np.cos(a0 + 2.0 * np.pi / 3.0) if x >= 0.0 else m * np.cos(a0)
    for _ in range(2):
        df = 3.0 * root * root + p
        if abs(df) > 1e-30:
            root -= (root ** 3 + p * root + q) / df
    res = abs(root ** 3 + p * root + q)
    if res >= 1e-12 * (1.0 + abs(root) ** 3):
        raise RuntimeError(f"shift cubic root did not converge at x={x}, t={t}: residual {res:.3e}")
    return float(root)


@dataclass(frozen=True)
class GFunction:
    """Slow phase g(x, t; lambda) attached to the shifted contour.

    Caches the real root lambda0 of the shift cubic and evaluates, with
    w = sqrt_branch(lambda - lambda0),

        g = w**7/105 + (lambda0/30) w**5 + ((lambda0**2 - 8 t)/24) w**3,

    which is discontinuous across (-inf, lambda0] and real on the
    opposite part of the real axis.
    """

    x: float
    t: float
    lambda0: float = None

    def __post_init__(self):
        if self.lambda0 is None:
            object.__setattr__(self, "lambda0", lambda0_root(self.x, self.t))

    def __call__(self, lam, side=Side.OFF):
        w = sqrt_branch(np.asarray(lam, dtype=np.complex128) - self.lambda0, side)
        w2 = w * w
        w3 = w2 * w
        w5 = w3 * w2
        return w5 * w2 / 105.0 + (self.lambda0 / 30.0) * w5 + ((self.lambda0 ** 2 - 8.0 * self.t) / 24.0) * w3

    @property
    def tail_coefficient(self) -> float:
        """Coefficient of lambda**(-1/2) in the large-lambda tail of the
        shifted-minus-plain phase difference."""
        lam0 = self.lambda0
        return -lam0 ** 4 / 384.0 + self.t * lam0 ** 2 / 8.0 - self.x * lam0 / 2.0


def eval_g(x: float, t: float, lam, side=Side.OFF):
    """Evaluate the slow phase at one (x, t) without keeping the cache."""
    return GFunction(x, t)(lam, side)


class RayLabel(enum.Enum):
    POS_AXIS = "pos_axis"
    UPPER_RAY = "upper_ray"
    LOWER_RAY = "lower_ray"
    NEG_AXIS = "neg_axis"


class Orientation(enum.Enum):
    TO_INFINITY = "to_infinity"
    FROM_INFINITY = "from_infinity"


class SectorTag(enum.Enum):
    UPPER_RIGHT = "upper_right"  # between the positive axis and the upper ray
    UPPER_LEFT = "upper_left"    # between the upper ray and the negative axis
    LOWER_LEFT = "lower_left"    # mirror of upper_left
    LOWER_RIGHT = "lower_right"  # mirror of upper_right


# Bisector angles of the four sectors, measured from the junction.
_SECTOR_BISECTOR = {
    SectorTag.UPPER_RIGHT: 0.5 * RAY_ANGLE,
    SectorTag.UPPER_LEFT: 0.5 * (RAY_ANGLE + np.pi),
    SectorTag.LOWER_LEFT: -0.5 * (RAY_ANGLE + np.pi),
    SectorTag.LOWER_RIGHT: -0.5 * RAY_ANGLE,
}


@dataclass(frozen=True)
class Detour:
    """Request to reroute one ray around a point it passes too close to."""

    label: RayLabel
    avoid: complex
    clearance: float


@dataclass(frozen=True)
class RayDeformation:
    """Piecewise-linear replacement of the span [r_start, r_end] of a ray.

    The straight portion is replaced by ramp - chord - ramp through the
    two absolute waypoints, all on one side of the ray.
    """

    r_start: float
    r_end: float
    waypoints: Tuple[complex, complex]


@dataclass(frozen=True)
class OrientedRay:
    """One ray of the contour.

    ``direction`` points from the base toward infinity; ``orientation``
    says whether the ray is traversed outward or inward, so the travel
    direction is direction * travel_sign.  The sectors on the left and
    right of travel are stored explicitly: plus_sector lies on the left.
    """

    base: complex
    direction: complex
    orientation: Orientation
    label: RayLabel
    plus_sector: SectorTag
    minus_sector: SectorTag
    deformations: Tuple[RayDeformation, ...] = ()

    @property
    def travel_sign(self) -> float:
        return 1.0 if self.orientation is Orientation.TO_INFINITY else -1.0

    @property
    def travel_direction(self) -> complex:
        return self.direction * self.travel_sign

    def point(self, r):
        """Undeformed reference point at radius r from the base."""
        return self.base + np.asarray(r) * self.direction

    def polyline(self, r_max: float) -> list:
        """Breakpoints of the (possibly rerouted) path from base out to r_max."""
        pts = [self.base]
        for d in self.deformations:
            if d.r_start >= r_max:
                break
            pts.append(self.base + d.r_start * self.direction)
            pts.extend(d.waypoints)
            pts.append(self.base + d.r_end * self.direction)
        pts.append(self.base + r_max * self.direction)
        return pts

    def distance(self, lam: complex) -> float:
        """Distance from lam to the full rerouted path (out to infinity)."""
        if not self.deformations:
            return _ray_distance(lam, self.base, self.direction)
        best = np.inf
        r_done = 0.0
        for d in self.deformations:
            a = self.base + d.r_start * self.direction
            b = self.base + d.r_end * self.direction
            best = min(best, _segment_distance(lam, self.base + r_done * self.direction, a))
            hops = [a, *d.waypoints, b]
            for u, v in zip(hops[:-1], hops[1:]):
                best = min(best, _segment_distance(lam, u, v))
            r_done = d.r_end
        best = min(best, _ray_distance(lam, self.base + r_done * self.direction, self.direction))
        return best


def _segment_distance(lam: complex, a: complex, b: complex) -> float:
    ab = b - a
    denom = abs(ab) ** 2
    if denom == 0.0:
        return abs(lam - a)
    s = np.clip(((lam - a) * np.conj(ab)).real / denom, 0.0, 1.0)
    return abs(lam - (a + s * ab))


def _ray_distance(lam: complex, base: complex, direction: complex) -> float:
    r = ((lam - base) * np.conj(direction)).real / abs(direction) ** 2
    r = max(r, 0.0)
    return abs(lam - (base + r * direction))


@dataclass(frozen=True)
class Contour:
    """Four oriented rays meeting at a junction, plus sector bookkeeping."""

    junction: complex
    rays: Tuple[OrientedRay, OrientedRay, OrientedRay, OrientedRay]

    def ray(self, label: RayLabel) -> OrientedRay:
        for r in self.rays:
            if r.label is label:
                return r
        raise KeyError(label)

    def classify(self, lam: complex) -> SectorTag:
        """Sector of an off-contour point, by angle around the junction.

        Reroutes are ignored here: the thin lens between a rerouted path
        and its straight ray keeps the straight-ray classification.
        """
        w = complex(lam) - self.junction
        if w == 0.0:
            raise ValueError("point is the contour junction")
        ang = np.angle(w)
        if ang in (0.0, np.pi, -np.pi, RAY_ANGLE, -RAY_ANGLE) or w.imag == 0.0:
            raise ValueError(f"point {lam} lies on a contour ray")
        if 0.0 < ang < RAY_ANGLE:
            return SectorTag.UPPER_RIGHT
        if ang > RAY_ANGLE:
            return SectorTag.UPPER_LEFT
        if ang < -RAY_ANGLE:
            return SectorTag.LOWER_LEFT
        return SectorTag.LOWER_RIGHT

    def min_distance(self, lam: complex) -> float:
        return min(r.distance(complex(lam)) for r in self.rays)

    def sector_anchor(self, tag: SectorTag, distance: float = 1.0) -> complex:
        """Point on the bisector of a sector at the given distance."""
        return self.junction + distance * np.exp(1j * _SECTOR_BISECTOR[tag])


# Geometric table of the four rays: direction, traversal, and the sector
# lying on each side of travel (plus = left of travel).
_RAY_TABLE = (
    (RayLabel.POS_AXIS, 1.0 + 0.0j, Orientation.TO_INFINITY,
     SectorTag.UPPER_RIGHT, SectorTag.LOWER_RIGHT),
    (RayLabel.UPPER_RAY, np.exp(1j * RAY_ANGLE), Orientation.FROM_INFINITY,
     SectorTag.UPPER_RIGHT, SectorTag.UPPER_LEFT),
    (RayLabel.LOWER_RAY, np.exp(-1j * RAY_ANGLE), Orientation.FROM_INFINITY,
     SectorTag.LOWER_LEFT, SectorTag.LOWER_RIGHT),
    (RayLabel.NEG_AXIS, -1.0 + 0.0j, Orientation.FROM_INFINITY,
     SectorTag.UPPER_LEFT, SectorTag.LOWER_LEFT),
)


def build_contour(shift: float = 0.0, deformations: Sequence[Detour] = ()) -> Contour:
    """Assemble the contour with junction at ``shift`` on the real axis.

    Each Detour reroutes its ray around the point it names, keeping the
    requested clearance; overlapping reroutes on one ray are rejected.
    """
    junction = complex(shift)
    per_ray = {label: [] for label, *_ in _RAY_TABLE}
    for det in deformations:
        per_ray[det.label].append(det)
    rays = []
    for label, direction, orientation, plus, minus in _RAY_TABLE:
        defs = [_build_deformation(junction, direction, d) for d in per_ray[label]]
        defs.sort(key=lambda d: d.r_start)
        for left, right in zip(defs[:-1], defs[1:]):
            if right.r_start <= left.r_end:
                raise ValueError(f"overlapping deformations on {label.value}")
        rays.append(OrientedRay(junction, complex(direction), orientation, label,
                                plus, minus, tuple(defs)))
    return Contour(junction, tuple(rays))


def _build_deformation(base: complex, direction: complex, det: Detour) -> RayDeformation:
    if det.clearance <= 0.0:
        raise ValueError("detour clearance must be positive")
    rel = (det.avoid - base) / direction
    r_p, d = rel.real, rel.imag
    span = det.clearance
    height = 1.5 * det.clearance
    r_start = r_p - span - height
    r_end = r_p + span + height
    if r_start <= 0.0:
        raise ValueError("detour span does not fit on the ray")
    # Push the path to the side of the ray away from the avoided point.
    normal = (1j * direction) * (-1.0 if d >= 0.0 else 1.0)
    w1 = base + (r_p - span) * direction + height * normal
    w2 = base + (r_p + span) * direction + height * normal
    return RayDeformation(r_start, r_end, (complex(w1), complex(w2)))

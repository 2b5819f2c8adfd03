"""Cauchy transforms, Plemelj boundary values, and the singular system.

Densities live on composite Gauss-Legendre panel meshes over the contour.
Every panel integral of rho(s)/(s - lambda) is evaluated through Legendre
moments of the kernel, exact for the panel interpolant:

    I_k(xi0) = int_{-1}^{1} P_k(xi) / (xi - xi0) dxi,
    (k+1) I_{k+1} = (2k+1) (2 delta_{k0} + xi0 I_k) - k I_{k-1},
    I_0 = Log((xi0 - 1)/(xi0 + 1)),

run forward for targets on or near the panel (the growing solution stays
bounded there), by Miller's backward recurrence in the midrange where the
forward direction is contaminated, and replaced by plain quadrature far
away where the kernel is analytic.  Principal values at on-panel targets
use the same forward recurrence seeded with the real logarithm, never a
symmetric deletion.

The singular system  psi = C_-(psi (J - I)) + C_-(J - I)  is discretized
by collocation at the mesh nodes.  Its rows decouple, so one dense LU of
the doubled system serves both matrix rows; one step of iterative
refinement follows, with the condition number estimated from the factors.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from .contour import Contour, OrientedRay, RayLabel, Side

DEFAULT_DEGREE = 24
DEFAULT_GRADING_RATIO = 0.5
DEFAULT_GRADING_LEVELS = 12

# A density is a (N, 2, 2) complex array of matrix samples at mesh nodes
# (row vectors transform independently under the singular system), or a
# plain (N,) array in the scalar Cauchy helpers.

TWO_PI_I = 2.0j * np.pi

# Bernstein-ellipse radii separating the three kernel-evaluation modes.
_FORWARD_MAX = 1.3
_MILLER_BUFFER = 40


def _plain_min(degree: int) -> float:
    # Plain Gauss quadrature of the kernel errs like rho^(-degree), since
    # the cardinal functions grow like rho^degree on the Bernstein ellipse
    # through the pole; only switch once that is below roundoff.
    return max(3.0, np.exp(33.0 / degree))

_OFF_CONTOUR_SAFETY = 0.05


@functools.lru_cache(maxsize=None)
def _panel_rules(degree: int):
    """Nodes, weights, and the sample-to-Legendre-moment map for a degree."""
    xi, w = np.polynomial.legendre.leggauss(degree)
    pk = np.zeros((degree, degree))
    pk[0] = 1.0
    if degree > 1:
        pk[1] = xi
    for k in range(1, degree - 1):
        pk[k + 1] = ((2 * k + 1) * xi * pk[k] - k * pk[k - 1]) / (k + 1)
    phi = (2.0 * np.arange(degree)[:, None] + 1.0) / 2.0 * w[None, :] * pk
    return xi, w, phi


def _bernstein_radius(xi0: np.ndarray) -> np.ndarray:
    """|xi0 + sqrt(xi0^2 - 1)| with the root chosen outside the unit disk."""
    s = np.sqrt(xi0 * xi0 - 1.0)
    r = np.abs(xi0 + s)
    return np.maximum(r, 1.0 / np.maximum(r, 1e-300))


def _moments_forward(xi0: np.ndarray, count: int, pv: bool) -> np.ndarray:
    out = np.zeros((count, len(xi0)), dtype=np.complex128)
    if pv:
        i0 = np.log(np.abs((1.0 - xi0.real) / (1.0 + xi0.real))).astype(np.complex128)
    else:
        i0 = np.log((xi0 - 1.0) / (xi0 + 1.0))
    out[0] = i0
    if count > 1:
        out[1] = xi0 * i0 + 2.0
    for k in range(1, count - 1):
        out[k + 1] = ((2 * k + 1) * xi0 * out[k] - k * out[k - 1]) / (k + 1)
    return out


def _moments_miller(xi0: np.ndarray, count: int) -> np.ndarray:
    top = count + _MILLER_BUFFER
    hi = np.zeros(len(xi0), dtype=np.complex128)
    lo = np.ones(len(xi0), dtype=np.complex128)
    trial = np.zeros((count, len(xi0)), dtype=np.complex128)
    for k in range(top - 1, 0, -1):
        prev = ((2 * k + 1) * xi0 * lo - (k + 1) * hi) / k
        hi, lo = lo, prev
        if k - 1 < count:
            trial[k - 1] = prev
    i0 = np.log((xi0 - 1.0) / (xi0 + 1.0))
    return trial * (i0 / trial[0])[None, :]


def _kernel_rows(panel_xi0: np.ndarray, degree: int, pv_mask=None) -> np.ndarray:
    """Rows mapping panel samples to int rho(s)/(s - lambda) ds, one target each.

    panel_xi0 holds the targets in the panel's normalized coordinate; the
    returned rows are already in physical units (the Jacobians cancel).
    """
    xi, w, phi = _panel_rules(degree)
    rows = np.empty((len(panel_xi0), degree), dtype=np.complex128)
    if pv_mask is None:
        pv_mask = np.zeros(len(panel_xi0), dtype=bool)
    radius = _bernstein_radius(panel_xi0)
    plain_min = _plain_min(degree)
    near = ~pv_mask & (radius <= _FORWARD_MAX)
    mid = ~pv_mask & (radius > _FORWARD_MAX) & (radius < plain_min)
    far = ~pv_mask & (radius >= plain_min)
    if np.any(pv_mask):
        rows[pv_mask] = _moments_forward(panel_xi0[pv_mask], degree, pv=True).T @ phi
    if np.any(near):
        rows[near] = _moments_forward(panel_xi0[near], degree, pv=False).T @ phi
    if np.any(mid):
        rows[mid] = _moments_miller(panel_xi0[mid], degree).T @ phi
    if np.any(far):
        rows[far] = w[None, :] / (xi[None, :] - panel_xi0[far, None])
    return rows


@dataclass(frozen=True)
class Panel:
    """Straight quadrature panel from a to b; orient flips the traversal."""

    a: complex
    b: complex
    orient: float
    label: Optional[RayLabel]
    start: int
    count: int

    @property
    def mid(self) -> complex:
        return 0.5 * (self.a + self.b)

    @property
    def half(self) -> complex:
        return 0.5 * (self.b - self.a)

    def xi_of(self, lam) -> np.ndarray:
        return (np.asarray(lam, dtype=np.complex128) - self.mid) / self.half


@dataclass(frozen=True)
class Mesh:
    """Composite Gauss-Legendre mesh on a union of straight segments."""

    panels: Tuple[Panel, ...]
    nodes: np.ndarray
    weights: np.ndarray
    node_panel: np.ndarray
    degree: int

    @property
    def size(self) -> int:
        return len(self.nodes)

    def truncation_radius(self, label: RayLabel) -> float:
        ends = [max(abs(p.a), abs(p.b)) for p in self.panels if p.label is label]
        if not ends:
            raise KeyError(label)
        return max(ends)

    def distance(self, lam: complex) -> float:
        return min(_segment_distance(lam, p.a, p.b) for p in self.panels)

    def local_spacing(self, lam: complex) -> float:
        dists = [_segment_distance(lam, p.a, p.b) for p in self.panels]
        nearest = self.panels[int(np.argmin(dists))]
        return 2.0 * abs(nearest.half) / self.degree


def _segment_distance(lam: complex, a: complex, b: complex) -> float:
    ab = b - a
    denom = abs(ab) ** 2
    if denom == 0.0:
        return abs(lam - a)
    s = np.clip(((lam - a) * np.conj(ab)).real / denom, 0.0, 1.0)
    return abs(lam - (a + s * ab))


def mesh_from_segments(segments: Sequence[Tuple[complex, complex]],
                       degree: int = DEFAULT_DEGREE,
                       orients: Optional[Sequence[float]] = None,
                       labels: Optional[Sequence[Optional[RayLabel]]] = None) -> Mesh:
    """Build a mesh from explicit straight segments, traversed a -> b."""
    xi, w, _ = _panel_rules(degree)
    panels = []
    nodes = []
    weights = []
    node_panel = []
    for idx, (a, b) in enumerate(segments):
        orient = 1.0 if orients is None else float(orients[idx])
        label = None if labels is None else labels[idx]
        panels.append(Panel(complex(a), complex(b), orient, label,
                            sum(p.count for p in panels), degree))
        mid = 0.5 * (a + b)
        half = 0.5 * (b - a)
        nodes.extend(mid + half * xi)
        weights.extend(orient * half * w)
        node_panel.extend([idx] * degree)
    return Mesh(tuple(panels), np.asarray(nodes, dtype=np.complex128),
                np.asarray(weights, dtype=np.complex128),
                np.asarray(node_panel, dtype=np.intp), degree)


def graded_breakpoints(r_outer: float,
                       ratio: float = DEFAULT_GRADING_RATIO,
                       levels: int = DEFAULT_GRADING_LEVELS) -> np.ndarray:
    """Geometric grading of [0, r_outer] toward 0."""
    pts = [0.0] + [r_outer * ratio ** k for k in range(levels, -1, -1)]
    return np.asarray(pts)


def geometric_breakpoints(r_from: float, r_to: float, factor: float = 2.0) -> np.ndarray:
    """Geometric growth from r_from until r_to is passed (last point clipped)."""
    pts = [r_from]
    while pts[-1] < r_to:
        pts.append(min(pts[-1] * factor, r_to))
    return np.asarray(pts)


def budget_breakpoints(r_lo: float, r_hi: float, budget: Callable[[float], float],
                       max_step: float = 3.0, growth: float = 1.7,
                       first: Optional[float] = None) -> np.ndarray:
    """Breakpoints on [r_lo, r_hi] limited by a real budget increment per panel.

    The budget callable is any monotone-ish accumulator (a phase along the
    ray, a number of wavelengths); consecutive breakpoints differ by at
    most max_step in budget and by at most the growth factor in length.
    """
    pts = [r_lo]
    h = first if first is not None else max((r_hi - r_lo) * 1e-3, 1e-6)
    while pts[-1] < r_hi:
        r = pts[-1]
        step = min(h * growth, r_hi - r)
        while step > 1e-12 * max(1.0, r) and abs(budget(r + step) - budget(r)) > max_step:
            step *= 0.5
        pts.append(r + step)
        h = step
    pts[-1] = r_hi
    return np.asarray(pts)


def ray_mesh_segments(ray: OrientedRay, breakpoints: np.ndarray):
    """Map arclength breakpoints onto the (possibly rerouted) ray path.

    Returns (segments, orients, labels) ready for mesh_from_segments.
    Corner points of a reroute are inserted so panels stay straight.
    """
    breakpoints = np.asarray(breakpoints, dtype=float)
    if breakpoints[0] != 0.0:
        raise ValueError("ray breakpoints must start at 0")
    poly = ray.polyline(float(breakpoints[-1]))
    corners = np.concatenate([[0.0], np.cumsum(np.abs(np.diff(poly)))])
    total = corners[-1]
    cuts = np.unique(np.concatenate([breakpoints, corners[(corners > 0) & (corners < total)]]))
    cuts = cuts[cuts <= total + 1e-12]
    pts = []
    for ell in cuts:
        k = int(np.searchsorted(corners, min(ell, total), side="right") - 1)
        k = min(k, len(poly) - 2)
        seg_len = corners[k + 1] - corners[k]
        frac = 0.0 if seg_len == 0.0 else (ell - corners[k]) / seg_len
        pts.append(poly[k] + frac * (poly[k + 1] - poly[k]))
    segments = list(zip(pts[:-1], pts[1:]))
    orients = [ray.travel_sign] * len(segments)
    labels = [ray.label] * len(segments)
    return segments, orients, labels


def contour_mesh(contour: Contour, breakpoints: dict,
                 degree: int = DEFAULT_DEGREE) -> Mesh:
    """Mesh the contour rays with per-label arclength breakpoints.

    Rays missing from the dict carry no panels (a truncated or absent
    jump); the canonical ray order fixes the node numbering.
    """
    segments, orients, labels = [], [], []
    for ray in contour.rays:
        if ray.label not in breakpoints:
            continue
        s, o, l = ray_mesh_segments(ray, np.asarray(breakpoints[ray.label], dtype=float))
        segments.extend(s)
        orients.extend(o)
        labels.extend(l)
    return mesh_from_segments(segments, degree, orients, labels)


def _all_rows(mesh: Mesh, targets: np.ndarray, pv_panel=None) -> np.ndarray:
    """Stack of Cauchy rows (1/2pi i) int rho/(s - lam) over the whole mesh.

    pv_panel: optional array assigning each target the panel index on
    which it sits (principal value there); -1 for analytic targets.
    """
    n_t = len(targets)
    rows = np.zeros((n_t, mesh.size), dtype=np.complex128)
    if pv_panel is None:
        pv_panel = np.full(n_t, -1, dtype=np.intp)
    for idx, panel in enumerate(mesh.panels):
        xi0 = panel.xi_of(targets)
        block = _kernel_rows(xi0, mesh.degree, pv_mask=(pv_panel == idx))
        rows[:, panel.start:panel.start + panel.count] = panel.orient * block / TWO_PI_I
    return rows


def cauchy_off(density: np.ndarray, mesh: Mesh, lam: complex) -> np.ndarray:
    """Off-contour Cauchy transform (1/2pi i) int rho(s)/(s - lam) ds."""
    lam = complex(lam)
    if mesh.distance(lam) < _OFF_CONTOUR_SAFETY * mesh.local_spacing(lam):
        raise ValueError(
            "lambda is closer to the contour than the node-spacing safety "
            "margin; use the boundary evaluator instead")
    row = _all_rows(mesh, np.array([lam]))[0]
    return _apply_row(row, density)


def _apply_row(row: np.ndarray, density: np.ndarray) -> np.ndarray:
    density = np.asarray(density)
    if density.ndim == 1:
        return row @ density
    return np.tensordot(row, density, axes=(0, 0))


def cauchy_boundary(density: np.ndarray, mesh: Mesh, node_index: int,
                    side: Side) -> np.ndarray:
    """Plemelj boundary value C_plus/minus of the density at a mesh node."""
    if side is Side.OFF:
        raise ValueError("boundary evaluation needs side=Plus or side=Minus")
    node_index = int(node_index)
    lam = mesh.nodes[node_index]
    owner = int(mesh.node_panel[node_index])
    pv_panel = np.array([owner], dtype=np.intp)
    row = _all_rows(mesh, np.array([lam]), pv_panel)[0]
    half = 0.5 if side is Side.PLUS else -0.5
    local = np.asarray(density)[node_index]
    return _apply_row(row, density) + half * local


def cauchy_boundary_point(density: np.ndarray, mesh: Mesh, point: complex,
                          side: Side, values_at_point: np.ndarray) -> np.ndarray:
    """Boundary value at an arbitrary on-contour point (off-node probes).

    values_at_point supplies the density at the probe, since the discrete
    density only lives at nodes; interpolate with density_at first.
    """
    if side is Side.OFF:
        raise ValueError("boundary evaluation needs side=Plus or side=Minus")
    point = complex(point)
    dists = [_segment_distance(point, p.a, p.b) for p in mesh.panels]
    owner = int(np.argmin(dists))
    panel = mesh.panels[owner]
    if dists[owner] > 1e-9 * (1.0 + abs(panel.half)):
        raise ValueError("probe point does not lie on the mesh")
    xi0 = panel.xi_of(point)
    if abs(xi0.imag) > 1e-9 or not (-1.0 < xi0.real < 1.0):
        raise ValueError("probe point is outside its panel")
    pv_panel = np.array([owner], dtype=np.intp)
    row = _all_rows(mesh, np.array([point]), pv_panel)[0]
    # The traversal orientation is already inside the kernel rows, so the
    # Plemelj half-jump keeps its plain sign: Plus is left of travel.
    half = 0.5 if side is Side.PLUS else -0.5
    return _apply_row(row, density) + half * np.asarray(values_at_point)


def density_at(density: np.ndarray, mesh: Mesh, point: complex) -> np.ndarray:
    """Interpolate the density at an on-contour point from its panel samples."""
    point = complex(point)
    dists = [_segment_distance(point, p.a, p.b) for p in mesh.panels]
    owner = int(np.argmin(dists))
    panel = mesh.panels[owner]
    xi, _, _ = _panel_rules(mesh.degree)
    xi0 = panel.xi_of(point).real
    # Barycentric form on the Gauss nodes.
    diff = xi0 - xi
    if np.any(np.abs(diff) < 1e-14):
        return np.asarray(density)[panel.start + int(np.argmin(np.abs(diff)))]
    bw = _barycentric_weights(mesh.degree)
    coef = bw / diff
    coef /= coef.sum()
    block = np.asarray(density)[panel.start:panel.start + panel.count]
    return np.tensordot(coef, block, axes=(0, 0))


@functools.lru_cache(maxsize=None)
def _barycentric_weights(degree: int) -> np.ndarray:
    xi, _, _ = _panel_rules(degree)
    w = np.ones(degree)
    for j in range(degree):
        w[j] = 1.0 / np.prod(xi[j] - np.delete(xi, j))
    return w


class SIEOperator:
    """Dense collocation form of  psi -> psi - C_-(psi (J - I)).

    Holds the minus-side kernel K (with the local -1/2 already folded in)
    and the jump samples; the doubled-system LU is built lazily and kept
    for reuse across right-hand sides.
    """

    def __init__(self, mesh: Mesh, kernel_minus: np.ndarray, jumps: np.ndarray):
        self.mesh = mesh
        self.kernel_minus = kernel_minus
        self.jumps = jumps
        self._lu = None
        self._cond = None

    @property
    def size(self) -> int:
        return self.mesh.size

    def apply(self, density: np.ndarray) -> np.ndarray:
        phi = density @ (self.jumps - np.eye(2))
        return density - np.tensordot(self.kernel_minus, phi, axes=(1, 0))

    def default_rhs(self) -> np.ndarray:
        excess = self.jumps - np.eye(2)
        return np.tensordot(self.kernel_minus, excess, axes=(1, 0))

    def dense(self) -> np.ndarray:
        n = self.size
        excess_t = (self.jumps - np.eye(2)).transpose(0, 2, 1)
        a4 = -np.einsum("jk,kcp->jckp", self.kernel_minus, excess_t)
        a2 = a4.reshape(2 * n, 2 * n)
        a2[np.arange(2 * n), np.arange(2 * n)] += 1.0
        return a2

    def factorize(self):
        if self._lu is None:
            a2 = self.dense()
            anorm = np.linalg.norm(a2, 1)
            lu, piv = scipy.linalg.lu_factor(a2, overwrite_a=True, check_finite=False)
            gecon = scipy.linalg.get_lapack_funcs("gecon", (lu,))
            rcond, _ = gecon(lu, anorm)
            self._lu = (lu, piv)
            self._cond = np.inf if rcond == 0.0 else 1.0 / rcond
        return self._lu

    @property
    def condition(self) -> float:
        self.factorize()
        return self._cond


def assemble_sie(mesh: Mesh, jump_sampler: Callable[[np.ndarray], np.ndarray]) -> SIEOperator:
    """Assemble the collocation operator for a jump sampled at the nodes."""
    jumps = np.asarray(jump_sampler(mesh.nodes), dtype=np.complex128)
    if jumps.shape != (mesh.size, 2, 2):
        raise ValueError(f"jump sampler returned shape {jumps.shape}, "
                         f"expected {(mesh.size, 2, 2)}")
    bad = ~np.isfinite(jumps).all(axis=(1, 2))
    if np.any(bad):
        k = int(np.flatnonzero(bad)[0])
        raise ValueError(f"jump matrix is singular or undefined at node {k}, "
                         f"position {mesh.nodes[k]:.6g}")
    kernel = _all_rows(mesh, mesh.nodes, pv_panel=mesh.node_panel)
    kernel[np.arange(mesh.size), np.arange(mesh.size)] -= 0.5
    return SIEOperator(mesh, kernel, jumps)


def solve_sie(op: SIEOperator, rhs: np.ndarray) -> np.ndarray:
    """Solve the collocation system for a matrix density, refined once."""
    rhs = np.asarray(rhs, dtype=np.complex128)
    if rhs.shape != (op.size, 2, 2):
        raise ValueError(f"rhs shape {rhs.shape} does not match mesh size {op.size}")
    lu = op.factorize()
    if op.condition > 1e12:
        raise RuntimeError(
            f"singular-integral system is near-singular (condition {op.condition:.3e}); "
            "a jump pole may sit on or near the contour: deform the contour or "
            "move the shift point")
    n = op.size
    # Row r of the matrix density solves the doubled system with rhs row r.
    b = np.stack([rhs[:, 0, :].reshape(2 * n), rhs[:, 1, :].reshape(2 * n)], axis=1)
    x = scipy.linalg.lu_solve(lu, b, check_finite=False)
    sol = np.stack([x[:, 0].reshape(n, 2), x[:, 1].reshape(n, 2)], axis=1)
    resid = op.apply(sol) - rhs
    b2 = np.stack([resid[:, 0, :].reshape(2 * n), resid[:, 1, :].reshape(2 * n)], axis=1)
    dx = scipy.linalg.lu_solve(lu, b2, check_finite=False)
    sol = sol - np.stack([dx[:, 0].reshape(n, 2), dx[:, 1].reshape(n, 2)], axis=1)
    scale = np.max(np.abs(rhs))
    final = np.max(np.abs(op.apply(sol) - rhs))
    if scale > 0.0 and final > 1e-10 * scale:
        raise RuntimeError(
            f"singular-integral solve residual {final:.3e} exceeds 1e-10 of the "
            f"right-hand side (condition {op.condition:.3e})")
    return sol


# ------------------------------------------------------------ scalar log kernel


def log_cauchy_mesh(cutoff: float = 2.0e4, inner: float = 0.25,
                    degree: int = 16) -> Mesh:
    """Real-line mesh for the log-Cauchy exponential, graded from the origin."""
    right = geometric_breakpoints(inner, cutoff)
    pts = np.concatenate([-right[::-1], [0.0], right])
    segments = list(zip(pts[:-1], pts[1:]))
    return mesh_from_segments(segments, degree)


def log_cauchy_exp(samples: np.ndarray, mesh: Mesh, lam: complex, sign: int,
                   side: Side = Side.OFF, tail_fit: bool = True) -> complex:
    """exp(-sign/(2 pi i) int f(s)/(s - lam) ds) over the real line.

    samples holds f at the mesh nodes, f real with an O(1/s) tail; the
    tail beyond the mesh cutoff is integrated in closed form from a c/s
    fit on the outermost panels.  sign +1 gives the upper-half-plane
    normalization, sign -1 its reciprocal partner.
    """
    samples = np.asarray(samples, dtype=float if np.isrealobj(samples) else complex)
    if not np.all(np.isfinite(samples)):
        raise ValueError("reflection data inadmissible: Im r_u reaches 1/2 "
                         "(log integrand diverges)")
    if np.iscomplexobj(samples) and np.max(np.abs(samples.imag)) > 1e-12 * (1.0 + np.max(np.abs(samples))):
        raise ValueError("log integrand must be real")
    samples = samples.real.astype(float)
    lam = complex(lam)
    on_axis = lam.imag == 0.0
    if on_axis and side is Side.OFF:
        raise ValueError("lambda on the real line: side=Plus or side=Minus required")
    if on_axis:
        dists = [_segment_distance(lam, p.a, p.b) for p in mesh.panels]
        owner = int(np.argmin(dists))
        pv = np.array([owner], dtype=np.intp)
        row = _all_rows(mesh, np.array([lam]), pv)[0]
        h = row @ samples
        local = density_at(samples, mesh, lam)
        h = h + (0.5 if side is Side.PLUS else -0.5) * local
    else:
        row = _all_rows(mesh, np.array([lam]))[0]
        h = row @ samples
    if tail_fit:
        h = h + _log_tail(samples, mesh, lam)
    return complex(np.exp(-sign * h))


def _log_tail(samples: np.ndarray, mesh: Mesh, lam: complex) -> complex:
    """Closed-form c/s tail contribution beyond the outermost panels."""
    ends = np.array([max(p.a.real, p.b.real) for p in mesh.panels])
    right_panel = mesh.panels[int(np.argmax(ends))]
    starts = np.array([min(p.a.real, p.b.real) for p in mesh.panels])
    left_panel = mesh.panels[int(np.argmin(starts))]
    cutoff = max(abs(right_panel.b), abs(left_panel.a))

    def tail_coef(panel):
        block = samples[panel.start:panel.start + panel.count]
        s = mesh.nodes[panel.start:panel.start + panel.count].real
        return float(np.mean(block * s))

    c_right = tail_coef(right_panel)
    c_left = tail_coef(left_panel)
    if abs(lam) < 1e-8 * cutoff:
        # Leading small-lambda term of the two closed forms.
        return (c_right + c_left) / (TWO_PI_I * cutoff)
    up = -c_right / (TWO_PI_I * lam) * np.log(1.0 - lam / cutoff)
    down = c_left / (TWO_PI_I * lam) * np.log(1.0 + lam / cutoff)
    return up + down

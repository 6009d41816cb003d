"""Coadjoint orbit structure: skew forms, isotropy, flows, open-orbit census.

The census works on exact rational sample points.  Two nondegenerate samples
are joined only when the determinant of the skew form along the straight
segment between them, an exact polynomial of degree at most dim, has no root
in [0, 1] (Sturm count), or when a flow trajectory supplies an exactly
confirmed rational waypoint.  False merges are therefore impossible; the
reported count is a lower bound of the true component count of the
nondegenerate set.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exact import (
    Matrix,
    ModeError,
    det_exact,
    is_exact,
    lagrange_interpolate,
    matrix_exp_numeric,
    numeric_rank,
    rank_kernel,
    sturm_root_count,
    to_complex,
)
from .lie import LieAlgebra, Subspace, ad_matrix
from .weights import algebra_is_exponential


class FlowError(RuntimeError):
    """The integrator exceeded its step cap."""


def bform(L: LieAlgebra, xi: Sequence) -> Matrix:
    """Skew form B(x, y) = xi([x, y]) as a dim x dim matrix over the basis."""
    m = L.dim
    exact = all(is_exact(v) for v in xi)
    rows = []
    for j in range(m):
        row = []
        for k in range(m):
            acc = Fraction(0) if exact else 0.0
            for l in range(m):
                c = L.tensor[j][k][l]
                if c == 0:
                    continue
                if exact:
                    acc = acc + c * xi[l]
                else:
                    cv = to_complex(c)
                    acc = acc + (cv.real if cv.imag == 0 else cv) * xi[l]
            row.append(acc)
        rows.append(row)
    return Matrix(rows)


def orbit_dimension(L: LieAlgebra, xi: Sequence) -> int:
    """Rank of the skew form (always even)."""
    b = bform(L, xi)
    if b.exact:
        rank, _ = rank_kernel(b)
    else:
        rank = numeric_rank(b.to_numpy())
    return rank


def is_open_orbit(L: LieAlgebra, xi: Sequence) -> bool:
    return orbit_dimension(L, xi) == L.dim


def isotropy_algebra(L: LieAlgebra, xi: Sequence) -> Subspace:
    """Kernel of the skew form; verified to be a subalgebra."""
    b = bform(L, xi)
    if not b.exact:
        raise ModeError("isotropy requires an exact point")
    _, kernel = rank_kernel(b)
    iso = Subspace.from_vectors(L.dim, kernel)
    for u in iso.rows:
        for v in iso.rows:
            if not iso.contains(L.bracket(u, v)):
                raise AssertionError("isotropy failed its subalgebra check")
    return iso


def frobenius_test(L: LieAlgebra, trials: int = 64, seed: int = 0):
    """Probabilistic search for a nondegenerate functional.

    Samples integer points in [-10, 10]^dim; a nonzero determinant proves an
    open orbit exists.  After `trials` failures returns (False, None); by the
    Schwartz-Zippel bound a nonzero determinant polynomial vanishes on at most
    a dim/21 fraction of each trial, so false negatives decay geometrically.
    """
    rng = random.Random(seed)
    if L.dim % 2 == 1:
        return False, None  # skew forms of odd size are always singular
    for _ in range(trials):
        xi = tuple(Fraction(rng.randint(-10, 10)) for _ in range(L.dim))
        if det_exact(bform(L, xi)) != 0:
            return True, xi
    return False, None


@dataclass(frozen=True)
class FlowConfig:
    """Shared knobs for the integrator and the census."""

    step_size: float = 0.01
    step_cap: int = 100000
    sample_count: int = 512
    connect_tol: float = 0.5
    seed: int = 0


@dataclass(frozen=True)
class FlowResult:
    times: tuple
    points: tuple  # float coordinate tuples
    ranks: tuple  # numeric rank of the skew form at checked times
    initial_rank: int
    rank_conserved: bool


def coadjoint_flow(
    L: LieAlgebra,
    xi0: Sequence,
    x: Sequence,
    t_final: float,
    cfg: FlowConfig = FlowConfig(),
    rank_tol: float = 1e-6,
) -> FlowResult:
    """Integrate the linear flow d(xi)/dt = -ad(x)^T xi by classical RK4.

    The generator acts by (x . xi)(y) = -xi([x, y]).  The rank of the skew
    form is checked along the way; it is conserved because the flow stays in
    one orbit.
    """
    gen = (-ad_matrix(L, x).transpose()).to_numpy()
    if t_final == 0:
        steps = 0
    else:
        steps = max(1, math.ceil(abs(t_final) / cfg.step_size))
    if steps > cfg.step_cap:
        raise FlowError(f"{steps} steps exceed the cap {cfg.step_cap}")
    h = t_final / steps if steps else 0.0
    point = np.array([float(v) for v in xi0], dtype=float)
    times = [0.0]
    points = [tuple(point.tolist())]
    for k in range(steps):
        k1 = gen @ point
        k2 = gen @ (point + 0.5 * h * k1)
        k3 = gen @ (point + 0.5 * h * k2)
        k4 = gen @ (point + h * k3)
        point = point + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        times.append((k + 1) * h)
        points.append(tuple(point.tolist()))
    exact0 = all(isinstance(v, (int, Fraction)) for v in xi0)
    if exact0:
        initial_rank, _ = rank_kernel(bform(L, tuple(Fraction(v) for v in xi0)))
    else:
        initial_rank = numeric_rank(bform(L, points[0]).to_numpy(), rank_tol)
    check_idx = sorted(set(np.linspace(0, len(points) - 1, min(33, len(points))).astype(int)))
    ranks = tuple(
        numeric_rank(bform(L, points[i]).to_numpy(), rank_tol) for i in check_idx
    )
    return FlowResult(
        tuple(times[i] for i in check_idx),
        tuple(points),
        ranks,
        initial_rank,
        all(r == initial_rank for r in ranks),
    )


# ---------------------------------------------------------------------------
# open-component census


def _det_at(L, xi):
    return det_exact(bform(L, xi))


def _segment_nondegenerate(L: LieAlgebra, a, b) -> bool:
    """Exact check that det B stays nonzero on the segment [a, b].

    A quick numeric scan rejects clear sign changes; the decision is the
    Sturm root count of the exactly interpolated segment determinant.
    """
    m = L.dim
    # numeric pre-filter: a sign change between comfortably nonzero values
    # proves a crossing
    av = np.array([float(v) for v in a])
    bv = np.array([float(v) for v in b])
    vals = []
    for k in range(33):
        t = k / 32.0
        d = np.linalg.det(bform(L, tuple(av + t * (bv - av))).to_numpy())
        vals.append(d)
    for u, v in zip(vals, vals[1:]):
        if u * v < 0 and abs(u) > 1e-9 and abs(v) > 1e-9:
            return False
    pts = []
    for k in range(m + 1):
        t = Fraction(k, m) if m else Fraction(0)
        xi = tuple(aa + t * (bb - aa) for aa, bb in zip(a, b))
        d = _det_at(L, xi)
        if d == 0:
            return False
        pts.append((t, d))
    poly = lagrange_interpolate(pts)
    return sturm_root_count(poly, Fraction(0), Fraction(1)) == 0


@dataclass(frozen=True)
class ComponentCensus:
    component_count: int
    representatives: tuple  # one exact point per component
    component_sizes: tuple
    negation_pairing: tuple  # (i, j): negating component i lands in j
    even: bool  # count is even and no component is negation-fixed
    exponential: bool  # evenness is asserted only when this is True
    heuristic_weights: bool
    nondegenerate_samples: int
    notes: tuple


def open_component_census(L: LieAlgebra, cfg: FlowConfig = FlowConfig()) -> ComponentCensus:
    """Census of connected components of the nondegenerate set.

    Integer sample points are closed under negation and kept when the skew
    form is exactly nondegenerate; connections are established by exact
    segment probes, with flow trajectories suggesting extra rational
    waypoints.  The count is a lower bound: probes can miss connections but
    never create false ones.
    """
    if L.field != "Q":
        raise ValueError("the census works over the rational field; realify first")
    m = L.dim
    rng = random.Random(cfg.seed)
    exp_result = algebra_is_exponential(L)
    samples = []
    seen = set()
    attempts = 0
    while len(samples) < cfg.sample_count and attempts < 40 * cfg.sample_count:
        attempts += 1
        v = tuple(Fraction(rng.randint(-10, 10)) for _ in range(m))
        for w in (v, tuple(-x for x in v)):
            if w in seen or all(x == 0 for x in w):
                continue
            seen.add(w)
            if _det_at(L, w) != 0:
                samples.append(w)
    notes = [
        f"census from {len(samples)} nondegenerate integer samples;"
        " component count is a lower bound (probes are exact, merges verified)"
    ]
    if not samples:
        return ComponentCensus(
            0, (), (), (), True, exp_result.verdict and not exp_result.heuristic,
            exp_result.heuristic, 0, tuple(notes),
        )

    components: list[list] = []
    for s in samples:
        joined = False
        for comp in components:
            probes = comp[:2] + comp[-2:]
            for member in probes:
                if _segment_nondegenerate(L, s, member):
                    comp.append(s)
                    joined = True
                    break
            if joined:
                break
        if not joined:
            components.append([s])

    def merge_pass():
        nonlocal components
        changed = False
        i = 0
        while i < len(components):
            j = i + 1
            while j < len(components):
                hit = False
                for u in components[i][:6]:
                    for v in components[j][:6]:
                        if _segment_nondegenerate(L, u, v):
                            hit = True
                            break
                    if hit:
                        break
                if hit:
                    components[i].extend(components[j])
                    del components[j]
                    changed = True
                else:
                    j += 1
            i += 1
        return changed

    for _ in range(3):
        if not merge_pass():
            break

    # flow assist: rational waypoints harvested from trajectories
    if len(components) > 1:
        merged_any = True
        while merged_any and len(components) > 1:
            merged_any = False
            for ci in range(len(components)):
                rep = components[ci][0]
                for d in range(m):
                    for sign in (1, -1):
                        direction = tuple(
                            Fraction(sign if t == d else 0) for t in range(m)
                        )
                        flow = coadjoint_flow(L, rep, direction, 3.0, cfg)
                        waypoint_hit = _try_flow_merge(
                            L, components, ci, flow.points, cfg.connect_tol
                        )
                        if waypoint_hit:
                            merged_any = True
                            break
                    if merged_any:
                        break
                if merged_any:
                    break

    reps = tuple(comp[0] for comp in components)
    sizes = tuple(len(comp) for comp in components)
    index_of = {}
    for idx, comp in enumerate(components):
        for s in comp:
            index_of[s] = idx
    pairing = []
    for idx, rep in enumerate(reps):
        neg = tuple(-x for x in rep)
        pairing.append((idx, index_of.get(neg, -1)))
    even = (
        len(components) % 2 == 0
        and all(j != i and j != -1 for i, j in pairing)
    )
    return ComponentCensus(
        len(components),
        reps,
        sizes,
        tuple(pairing),
        even,
        exp_result.verdict and not exp_result.heuristic,
        exp_result.heuristic,
        len(samples),
        tuple(notes),
    )


def _try_flow_merge(L, components, ci, trajectory, tol):
    for cj in range(len(components)):
        if cj == ci:
            continue
        for member in components[cj][:8]:
            target = np.array([float(v) for v in member])
            for p in trajectory[:: max(1, len(trajectory) // 64)]:
                if np.linalg.norm(np.array(p) - target) < tol:
                    way = tuple(
                        Fraction(v).limit_denominator(10**4) for v in p
                    )
                    if (
                        _det_at(L, way) != 0
                        and _segment_nondegenerate(L, components[ci][0], way)
                        and _segment_nondegenerate(L, way, member)
                    ):
                        components[ci].extend(components[cj])
                        del components[cj]
                        return True
    return False


# ---------------------------------------------------------------------------
# eigenvalue -1 probe


@dataclass(frozen=True)
class MinusOneProbe:
    found: bool
    direction: tuple | None  # rational direction x
    t_label: str | None  # e.g. "5/8" or "(3/8)pi"
    t_value: float | None
    eigenvalue: complex | None


def minus_one_probe(L: LieAlgebra, seed: int = 0, tol: float = 1e-6) -> MinusOneProbe:
    """Scan exp(ad(t x)) for an eigenvalue -1 over basis and random directions.

    The grid includes rational multiples of pi, where rotation generators hit
    -1 exactly.  Exponential algebras produce no witness.
    """
    m = L.dim
    rng = random.Random(seed)
    directions = [
        tuple(Fraction(1 if j == i else 0) for j in range(m)) for i in range(m)
    ]
    for _ in range(5):
        v = tuple(Fraction(rng.randint(-2, 2)) for _ in range(m))
        if any(x != 0 for x in v):
            directions.append(v)
    grid = []
    for k in range(1, 25):
        grid.append((k / 8.0, f"{k}/8"))
        grid.append((k * math.pi / 8.0, f"({k}/8)pi"))
    for x in directions:
        ad = ad_matrix(L, x).to_numpy()
        for t, label in grid:
            try:
                e = matrix_exp_numeric(
                    Matrix([[v * t for v in row] for row in ad.tolist()])
                )
            except Exception:
                continue
            vals = np.linalg.eigvals(e.to_numpy())
            for lam in vals:
                if abs(lam + 1.0) < tol:
                    return MinusOneProbe(True, x, label, t, complex(lam))
    return MinusOneProbe(False, None, None, None, None)

"""Independent finite-difference eigenvalue oracle.

The Schroedinger operator is discretized on a uniform grid with the
standard 3-point stencil (diagonal 2/h^2 + V(x_i), off-diagonal -1/h^2)
and the lowest eigenvalues are found by Sturm-sequence bisection.  The
oracle never touches the closed-form wavefunctions; its only inputs are
the potential terms and a grid configuration.

Potentials in this family can be singular at the origin, and the x^(-2)
coefficient -1/4 (l = m cases) sits exactly at the limit-circle border,
where a plain Dirichlet cutoff converges only logarithmically.  The left
boundary therefore uses the potential's own small-x data: the boundary
value is tied to the first interior node by the indicial exponent p of
the x^(-2) term (p(p-1) = c2) refined by a Frobenius series over the
remaining terms (containment checks also feed the candidate eigenvalue
into the series).  The ratio condition folds into the first diagonal
entry, so the matrix stays symmetric tridiagonal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .schroedinger import PotentialSpec

# Left-adaptation applies only when the domain actually approaches the
# origin; beyond this point the plain Dirichlet cutoff is used.
SINGULAR_XMIN = 0.2
EXPONENT_TOL = 1e-9
HIT_RTOL = 1e-3


@dataclass(frozen=True)
class FdConfig:
    """Uniform-grid discretization of [x_min, x_max], Dirichlet ends.

    Interior nodes sit at x_i = x_min + i h, i = 1 .. n_points, with
    h = (x_max - x_min) / (n_points + 1).
    """

    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self) -> None:
        if not (self.x_min < self.x_max):
            raise ValueError("x_min must be below x_max")
        if self.n_points < 100:
            raise ValueError("need at least 100 grid points")

    @property
    def h(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points + 1)

    def nodes(self) -> np.ndarray:
        return self.x_min + self.h * np.arange(1, self.n_points + 1)

    def doubled(self) -> "FdConfig":
        # 2n+1 interior points halve h exactly
        return FdConfig(self.x_min, self.x_max, 2 * self.n_points + 1)


def _eval_terms(spec: PotentialSpec, xs: np.ndarray) -> np.ndarray:
    """Term sum without the x > 0 guard: symmetric domains are allowed as
    long as every term stays finite on the grid (checked by the caller)."""
    vals = np.zeros_like(xs)
    with np.errstate(invalid="ignore", divide="ignore"):
        for e, cf in spec.terms:
            vals += cf * np.power(xs, e)
    return vals


def _singular_ladder(spec: PotentialSpec) -> tuple[float, list[tuple[float, float]]]:
    """x^(-2) coefficient and the remaining singular terms, merged by exponent."""
    c2 = 0.0
    ladder: dict[float, float] = {}
    for e, cf in spec.terms:
        if cf == 0.0:
            continue
        if abs(e + 2.0) <= EXPONENT_TOL:
            c2 += cf
        elif e < -EXPONENT_TOL:
            ladder[round(e, 9)] = ladder.get(round(e, 9), 0.0) + cf
    return c2, sorted(ladder.items())


def _frobenius_factor(
    spec: PotentialSpec, c2: float, p: float, x: float, bc_energy: float | None
) -> float:
    """1 + sum a_j x^(j s): series of the regular solution x^p near zero.

    Terms of the potential at exponents -2 + j s feed the recurrence
    a_j [(p+js)(p+js-1) - p(p-1)] = sum_i c_i a_(j-i).  When a candidate
    eigenvalue is supplied, the constant term of the potential enters as
    c - bc_energy and every term of the potential joins the ladder, so
    the boundary value is series-exact through the highest rung; without
    a candidate the ladder stops below the constant term (lambda-free).
    """
    rungs: dict[float, float] = {}
    for e, cf in spec.terms:
        if cf == 0.0 or abs(e + 2.0) <= EXPONENT_TOL:
            continue
        if -2.0 < e < -EXPONENT_TOL or (bc_energy is not None and e > -EXPONENT_TOL):
            rungs[e + 2.0] = rungs.get(e + 2.0, 0.0) + cf
    if bc_energy is not None and bc_energy != 0.0:
        rungs[2.0] = rungs.get(2.0, 0.0) - bc_energy
    if not rungs:
        return 1.0
    s = min(rungs)
    coeffs: dict[int, float] = {}
    for step, cf in rungs.items():
        j = step / s
        if abs(j - round(j)) > 1e-6:
            return 1.0  # incommensurate exponents; fall back to the bare power
        coeffs[round(j)] = cf
    jmax = max(coeffs)
    a = {0: 1.0}
    for j in range(1, jmax + 1):
        rhs = sum(coeffs.get(i, 0.0) * a.get(j - i, 0.0) for i in range(1, j + 1))
        a[j] = rhs / ((p + j * s) * (p + j * s - 1.0) - p * (p - 1.0))
    return 1.0 + sum(a[j] * x ** (j * s) for j in range(1, jmax + 1))


def _left_boundary_ratio(
    spec: PotentialSpec, x0: float, x1: float, bc_energy: float | None
) -> float | None:
    """u(x0)/u(x1) of the regular solution, or None for plain Dirichlet."""
    if not (0.0 < x0 < SINGULAR_XMIN):
        return None
    c2, ladder = _singular_ladder(spec)
    if c2 == 0.0 and not ladder:
        return None
    if 1.0 + 4.0 * c2 < 0.0:
        return None  # oscillatory fall to the center; no regular solution
    p = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * c2))
    ratio = (x0 / x1) ** p
    ratio *= (
        _frobenius_factor(spec, c2, p, x0, bc_energy)
        / _frobenius_factor(spec, c2, p, x1, bc_energy)
    )
    return ratio


def fd_spectrum(
    spec: PotentialSpec,
    config: FdConfig,
    count: int,
    bc_energy: float | None = None,
) -> np.ndarray:
    """Lowest `count` eigenvalues of the discretized operator, ascending.

    Sturm-sequence bisection on the symmetric tridiagonal matrix (LAPACK
    stebz) keeps the result deterministic to ~1e-10 relative.  When a
    candidate eigenvalue `bc_energy` is supplied, the singular-boundary
    series uses it for one extra order of accuracy near that level.
    """
    if count > config.n_points:
        raise ValueError(f"count {count} exceeds grid size {config.n_points}")
    if count < 1:
        raise ValueError("count must be >= 1")
    xs = config.nodes()
    h = config.h
    vpot = _eval_terms(spec, xs)
    if not np.all(np.isfinite(vpot)):
        raise ValueError("potential is not finite on the grid")
    diag = 2.0 / (h * h) + vpot
    ratio = _left_boundary_ratio(spec, config.x_min, float(xs[0]), bc_energy)
    if ratio is not None:
        diag[0] = (2.0 - ratio) / (h * h) + vpot[0]
    off = -np.ones(config.n_points - 1) / (h * h)
    vals = eigh_tridiagonal(
        diag, off, select="i", select_range=(0, count - 1), eigvals_only=True
    )
    return np.sort(vals)


@dataclass(frozen=True)
class ContainmentResult:
    hit: bool
    nearest: float
    gap: float
    richardson_gap: float


def contains_eigenvalue(
    spec: PotentialSpec, config: FdConfig, lam: float
) -> ContainmentResult:
    """Does lam sit in the fd spectrum after Richardson extrapolation?

    Runs the oracle at the given configuration and at doubled resolution,
    Richardson-extrapolates the second-order scheme and accepts when the
    extrapolated nearest eigenvalue lies within max(1e-3, 1e-3 |lam|).
    """
    count = 8
    vals = fd_spectrum(spec, config, count, bc_energy=lam)
    while vals[-1] < lam and count < min(256, config.n_points):
        count = min(2 * count, config.n_points)
        vals = fd_spectrum(spec, config, count, bc_energy=lam)
    vals2 = fd_spectrum(spec, config.doubled(), len(vals), bc_energy=lam)
    rich = (4.0 * vals2 - vals) / 3.0
    idx = int(np.argmin(np.abs(vals - lam)))
    idx_r = int(np.argmin(np.abs(rich - lam)))
    gap = float(abs(vals[idx] - lam))
    richardson_gap = float(abs(rich[idx_r] - lam))
    tol = max(HIT_RTOL, HIT_RTOL * abs(lam))
    return ContainmentResult(
        hit=richardson_gap <= tol,
        nearest=float(vals[idx]),
        gap=gap,
        richardson_gap=richardson_gap,
    )


def suggest_domain(
    spec: PotentialSpec, lam: float, phase: float = 18.0
) -> tuple[float, float]:
    """Heuristic [x_min, x_max] covering the bound state at lam.

    The left edge sits close to the origin when the potential is singular
    there.  The right edge extends past the outer turning point until the
    WKB tunneling integral of sqrt(V - lam) reaches `phase`, so the
    Dirichlet truncation error is ~exp(-2 phase) regardless of how slowly
    the potential grows.
    """
    c2, ladder = _singular_ladder(spec)
    x_min = 1e-2 if (c2 != 0.0 or ladder) else 1e-3
    x = max(1.0, 2.0 * x_min)
    acc = 0.0
    prev: tuple[float, float] | None = None
    step = 0.05
    while x < 512.0 and acc < phase:
        v = float(_eval_terms(spec, np.array([x]))[0]) - lam
        if not math.isfinite(v) or v <= 0.0:
            acc = 0.0
            prev = None
        else:
            cur = math.sqrt(v)
            if prev is not None:
                x_prev, f_prev = prev
                acc += 0.5 * (f_prev + cur) * (x - x_prev)
            prev = (x, cur)
        x += step
        step = min(step * 1.05, 1.0)
    return x_min, x

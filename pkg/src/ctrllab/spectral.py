"""Floating-point controllability verdicts and spectral lemma verifiers.

The PBH-style decider works from a symmetric eigendecomposition: a pair
(A, b) is called controllable when the spectrum is numerically simple (the
minimal eigenvalue gap clears a relative threshold) and no eigenvector is
numerically orthogonal to b.  Verdicts are three-valued; quantities falling
between the accept and reject thresholds yield ``indeterminate`` rather than
a silent guess, because controllability flips on a measure-zero boundary.

The remaining functions check numerically, instance by instance, the
linear-algebra facts the theory leans on: Cauchy interlacing of minor
eigenvalues, the resolvent formula for a squared eigenvector coordinate in
terms of the minor's spectrum, the eigenvector witness that appears whenever
a minor shares an eigenvalue with the full matrix, and a Monte Carlo
estimator for the small-ball (anti-concentration) probability of a weighted
sum of iid atoms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ensembles import Atom
from .seeding import SeedPath

__all__ = [
    "EigenSystem",
    "EigenDecompositionError",
    "SharedEigenvalueError",
    "SharedEigenvalueWitness",
    "Tolerances",
    "DEFAULT_TOLERANCES",
    "ControllabilityVerdict",
    "SmallBallEstimate",
    "eig_sym",
    "min_gap",
    "spectral_norm",
    "pbh_controllable",
    "interlacing_check",
    "eigvec_coordinate_check",
    "shared_eigenvalue_witness",
    "small_ball_estimate",
]


class EigenDecompositionError(RuntimeError):
    """Symmetric eigensolver failed to converge."""


class SharedEigenvalueError(ValueError):
    """A minor eigenvalue coincides with a full-matrix eigenvalue."""


@dataclass(frozen=True, eq=False)
class EigenSystem:
    """Ascending eigenvalues and orthonormal eigenvectors (as columns).

    Ordering is the ascending order returned by LAPACK; for degenerate
    fixtures the tie order is whatever the solver produced, which is
    deterministic for a fixed input matrix.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def n(self) -> int:
        return self.eigenvalues.size

    def residual(self, a: np.ndarray) -> float:
        """max_i ||A v_i - lambda_i v_i||, for invariant checks."""
        r = a @ self.eigenvectors - self.eigenvectors * self.eigenvalues
        return float(np.max(np.linalg.norm(r, axis=0)))

    def orthonormality_defect(self) -> float:
        """max_ij |v_i . v_j - delta_ij|."""
        g = self.eigenvectors.T @ self.eigenvectors
        return float(np.max(np.abs(g - np.eye(self.n))))


def _as_sym_float(a) -> np.ndarray:
    m = np.asarray(a, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.array_equal(m, m.T):
        raise ValueError("matrix is not exactly symmetric")
    return m


def eig_sym(a, label: str | None = None) -> EigenSystem:
    """Full symmetric eigendecomposition (eigenvalues ascending).

    `label` is carried into the error message on non-convergence so the
    failing matrix can be re-derived from its seed path.
    """
    m = _as_sym_float(a)
    try:
        w, v = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        where = f" ({label})" if label else ""
        raise EigenDecompositionError(f"eigh failed to converge{where}: {exc}") from exc
    return EigenSystem(eigenvalues=w, eigenvectors=v)


def min_gap(eigenvalues) -> float:
    """Minimal spacing of an ascending eigenvalue list; +inf for n = 1."""
    w = np.asarray(eigenvalues, dtype=np.float64)
    if w.size <= 1:
        return math.inf
    return float(np.min(np.diff(w)))


def spectral_norm(a) -> float:
    """max_i |lambda_i| of a symmetric matrix."""
    w = np.linalg.eigvalsh(_as_sym_float(a))
    return float(max(abs(w[0]), abs(w[-1])))


# ---------------------------------------------------------------------------
# PBH verdicts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Tolerances:
    """Accept / reject thresholds for the float PBH decider.

    Gap thresholds are relative to max(1, ||A||); inner-product thresholds
    are relative to ||b||.  Values between the reject and accept levels give
    an indeterminate verdict.
    """

    gap_tol: float = 1e-8
    gap_reject: float = 1e-12
    ortho_tol: float = 1e-9
    ortho_reject: float = 1e-13

    def __post_init__(self) -> None:
        if not 0 <= self.gap_reject <= self.gap_tol:
            raise ValueError("need 0 <= gap_reject <= gap_tol")
        if not 0 <= self.ortho_reject <= self.ortho_tol:
            raise ValueError("need 0 <= ortho_reject <= ortho_tol")

    def to_dict(self) -> dict:
        return {
            "gap_tol": self.gap_tol,
            "gap_reject": self.gap_reject,
            "ortho_tol": self.ortho_tol,
            "ortho_reject": self.ortho_reject,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Tolerances":
        return cls(**d)


DEFAULT_TOLERANCES = Tolerances()

CONTROLLABLE = "controllable"
UNCONTROLLABLE = "uncontrollable"
INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class ControllabilityVerdict:
    """Decision plus the numeric witnesses it was based on.

    `min_gap` and `min_abs_inner` are float-path witnesses; `rank` is set by
    the exact path.  Flipping the sign of any eigenvector leaves every field
    unchanged (only |v . b| enters).
    """

    decision: str  # controllable | uncontrollable | indeterminate
    method: str  # float-pbh | exact-kalman
    min_gap: float | None = None
    min_abs_inner: float | None = None
    rank: int | None = None
    tolerances: Tolerances | None = None

    @property
    def controllable(self) -> bool:
        return self.decision == CONTROLLABLE

    @property
    def indeterminate(self) -> bool:
        return self.decision == INDETERMINATE


def pbh_controllable(a, b, tolerances: Tolerances | None = None,
                     eigsys: EigenSystem | None = None) -> ControllabilityVerdict:
    """Three-valued PBH controllability verdict for a symmetric pair (A, b).

    Controllable requires the spectrum to be numerically simple *and* every
    eigenvector to have a non-negligible component along b; uncontrollable
    requires a witness below the reject threshold; anything in between is
    indeterminate.  Pass a precomputed `eigsys` to amortize one
    factorization over many input vectors.
    """
    tol = tolerances if tolerances is not None else DEFAULT_TOLERANCES
    if eigsys is None:
        eigsys = eig_sym(a)
    w, v = eigsys.eigenvalues, eigsys.eigenvectors
    scale = max(1.0, max(abs(w[0]), abs(w[-1]))) if w.size else 1.0
    gap = min_gap(w)
    bv = np.asarray(b, dtype=np.float64)
    if bv.shape != (w.size,):
        raise ValueError(f"dimension mismatch: A is {w.size}x{w.size}, b has shape {bv.shape}")
    norm_b = float(np.linalg.norm(bv))
    if norm_b == 0.0:
        return ControllabilityVerdict(UNCONTROLLABLE, "float-pbh", min_gap=gap,
                                      min_abs_inner=0.0, tolerances=tol)
    inner = float(np.min(np.abs(v.T @ bv)))
    if inner < tol.ortho_reject * norm_b or gap < tol.gap_reject * scale:
        decision = UNCONTROLLABLE
    elif gap > tol.gap_tol * scale and inner > tol.ortho_tol * norm_b:
        decision = CONTROLLABLE
    else:
        decision = INDETERMINATE
    return ControllabilityVerdict(decision, "float-pbh", min_gap=gap,
                                  min_abs_inner=inner, tolerances=tol)


# ---------------------------------------------------------------------------
# minor-based verifiers
# ---------------------------------------------------------------------------

def _minor_split(a: np.ndarray, i: int) -> tuple[np.ndarray, np.ndarray]:
    """Conjugate index i to the last slot; return (minor, off-column X)."""
    n = a.shape[0]
    if not 0 <= i < n:
        raise ValueError(f"minor index {i} out of range for n={n}")
    keep = [k for k in range(n) if k != i]
    minor = a[np.ix_(keep, keep)]
    x = a[keep, i]
    return minor, x


def interlacing_check(a, i: int) -> float:
    """Worst interlacing margin of the i-th minor's eigenvalues.

    Returns min_j of min(mu_j - lambda_j, lambda_{j+1} - mu_j); the Cauchy
    interlacing theorem makes this nonnegative up to rounding, so a margin
    >= -tol certifies the instance.
    """
    m = _as_sym_float(a)
    minor, _ = _minor_split(m, i)
    if minor.shape[0] == 0:
        return math.inf
    lam = np.linalg.eigvalsh(m)
    mu = np.linalg.eigvalsh(minor)
    return float(np.min(np.minimum(mu - lam[:-1], lam[1:] - mu)))


def eigvec_coordinate_check(a, i: int, separation_tol: float = 1e-6) -> float:
    """Residual of the squared-coordinate identity at minor index i.

    For each eigenvalue of A separated from the whole spectrum of the i-th
    minor by more than ``separation_tol * max(1, ||A||)``, compares the
    squared i-th coordinate of its unit eigenvector against
    ``1 / (1 + sum_j (mu_j - lambda)^-2 (u_j . X)^2)``
    built from the minor's eigensystem and the off-column X; returns the
    maximum absolute difference over those eligible eigenvalue indices.

    Eigenvalues colliding with the minor's spectrum are skipped (the
    identity degenerates there); if none is eligible, raises
    :class:`SharedEigenvalueError` naming the closest pair.
    """
    m = _as_sym_float(a)
    minor, x = _minor_split(m, i)
    full = eig_sym(m)
    scale = max(1.0, float(np.max(np.abs(full.eigenvalues))))
    if minor.shape[0] == 0:
        return 0.0  # 1x1 matrix: coordinate is 1, formula gives 1
    sub = eig_sym(minor)
    sep = np.min(np.abs(sub.eigenvalues[:, None] - full.eigenvalues[None, :]), axis=0)
    eligible = sep >= separation_tol * scale
    if not np.any(eligible):
        k = int(np.argmin(sep))
        j = int(np.argmin(np.abs(sub.eigenvalues - full.eigenvalues[k])))
        raise SharedEigenvalueError(
            f"minor eigenvalue mu_{j}={sub.eigenvalues[j]!r} collides with "
            f"lambda_{k}={full.eigenvalues[k]!r} (separation {sep[k]:.3e})")
    proj = (sub.eigenvectors.T @ x) ** 2
    worst = 0.0
    for idx in np.flatnonzero(eligible):
        coord_sq = full.eigenvectors[i, idx] ** 2
        denom = 1.0 + float(np.sum(proj / (sub.eigenvalues - full.eigenvalues[idx]) ** 2))
        worst = max(worst, abs(coord_sq - 1.0 / denom))
    return worst


@dataclass(frozen=True, eq=False)
class SharedEigenvalueWitness:
    """Minor eigenvector nearly annihilating the off-column X."""

    vector: np.ndarray
    inner_abs: float
    minor_eigenvalue: float
    matched_eigenvalue: float


def shared_eigenvalue_witness(a, i: int, collision_tol: float) -> SharedEigenvalueWitness | None:
    """Witness eigenvector for a minor/full shared eigenvalue.

    Among minor eigenvalues within `collision_tol` of some eigenvalue of A,
    returns the minor eigenvector w minimizing |X . w| together with that
    magnitude; on exactly degenerate constructions the magnitude vanishes to
    rounding.  Returns None when no eigenvalue collides.
    """
    m = _as_sym_float(a)
    minor, x = _minor_split(m, i)
    if minor.shape[0] == 0:
        return None
    lam = np.linalg.eigvalsh(m)
    sub = eig_sym(minor)
    best: SharedEigenvalueWitness | None = None
    for j in range(sub.n):
        dist = float(np.min(np.abs(lam - sub.eigenvalues[j])))
        if dist > collision_tol:
            continue
        inner = abs(float(sub.eigenvectors[:, j] @ x))
        if best is None or inner < best.inner_abs:
            matched = float(lam[np.argmin(np.abs(lam - sub.eigenvalues[j]))])
            best = SharedEigenvalueWitness(
                vector=sub.eigenvectors[:, j].copy(),
                inner_abs=inner,
                minor_eigenvalue=float(sub.eigenvalues[j]),
                matched_eigenvalue=matched,
            )
    return best


# ---------------------------------------------------------------------------
# small-ball probability
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SmallBallEstimate:
    """Monte Carlo estimate of the small-ball probability of sum xi_k x_k.

    `rho_hat` is the largest fraction of samples landing in any closed
    window of half-width `delta`; `std_err` is the binomial standard error
    at `rho_hat`.
    """

    rho_hat: float
    delta: float
    m: int
    std_err: float


def small_ball_estimate(x, atom: Atom, delta: float, m: int, seed: SeedPath) -> SmallBallEstimate:
    """Estimate sup_a P(|sum_k xi_k x_k - a| <= delta) from m Monte Carlo sums.

    The supremum over window centers is taken exactly on the empirical
    measure by sliding a closed window of width 2*delta over the sorted
    samples, so the estimate is a plug-in upper realization of the sup.
    """
    xv = np.asarray(x, dtype=np.float64)
    if xv.ndim != 1:
        raise ValueError("x must be a vector")
    if m < 1000:
        raise ValueError(f"need m >= 1000 samples, got {m}")
    if delta <= 0:
        raise ValueError(f"window half-width must be positive, got {delta}")
    rng = seed.generator()
    n = xv.size
    sums = np.empty(m)
    block = max(1, 2_000_000 // max(1, n))
    start = 0
    while start < m:
        stop = min(m, start + block)
        sums[start:stop] = atom.sample(rng, (stop - start, n)) @ xv
        start = stop
    sums.sort()
    counts = np.searchsorted(sums, sums + 2.0 * delta, side="right") - np.arange(m)
    rho = float(np.max(counts)) / m
    return SmallBallEstimate(rho_hat=rho, delta=delta, m=m,
                             std_err=math.sqrt(rho * (1.0 - rho) / m))

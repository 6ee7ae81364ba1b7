"""Exact fixed points of the braid action and their signed count.

The equation solved is hurwitz(b, X) = X on the gauge slice, as a genuine
equality of tuples, not equality up to conjugation: solutions twisted by a
nontrivial conjugation form spurious one-parameter families and are excluded
by construction.  Solutions are found by batched multi-start damped
Gauss-Newton, deduplicated into conjugacy classes, and signed by the oriented
intersection index of the graph of the action with the diagonal.
"""

from __future__ import annotations

import dataclasses
import itertools
import warnings
from fractions import Fraction

import numpy as np

from .braids import BraidWord, cycle_type, is_knot_closure, permutation
from .configurations import (
    Configuration,
    conjugate,
    decode,
    decode_params,
    fingerprint,
    gauge_fix,
    hurwitz_apply,
    is_irreducible,
)
from .quaternions import align, pure, qconj, qmul, reflect

# Global sign anchoring the index convention: chosen once so that the signed
# count of the right trefoil equals half its signature (-1), and frozen.
# Every other knot then has no free sign.
INDEX_CALIBRATION = 1

DEGENERATE = "degenerate"

_GRID_TUPLE_BUDGET = 4096
_LATTICE_BUDGET = 4096
_FREE_DIRECTION_SAMPLES = 16


@dataclasses.dataclass(frozen=True)
class SolverConfig:
    """Multi-start solver knobs; the defaults run every bundled example."""

    seeds: int = 4000
    max_iters: int = 80
    residual_tol: float = 1e-11
    dedup_tol: float = 1e-6
    fd_step: float = 1e-6
    rng_seed: int = 0

    def __post_init__(self):
        if self.seeds < 1:
            raise ValueError("seeds must be >= 1")
        for name in ("residual_tol", "dedup_tol", "fd_step"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclasses.dataclass(frozen=True)
class FixedPointRecord:
    """One conjugacy class of exact solutions of beta(X) = X.

    ``config`` is the gauge-slice representative, ``index`` is +1, -1 or
    "degenerate", and ``min_singular_value`` is the smallest singular value
    of the transversality map whose determinant sign is the index.
    """

    config: Configuration
    residual: float
    index: int | str
    fingerprint: np.ndarray
    min_singular_value: float


@dataclasses.dataclass(frozen=True)
class LambdaResult:
    """The signed count and its class inventory.

    ``lam`` is None when any class is degenerate (the count is then declared
    undefined rather than silently perturbed).  ``nielsen_bracket`` is the
    pair (|lam|, essential classes): lower and upper bounds for the Nielsen
    number of the induced map under the identification of its fixed classes
    with conjugacy classes of exact solutions.
    """

    lam: int | None
    records: tuple[FixedPointRecord, ...]
    counts: tuple[int, int, int]  # (total, essential, degenerate)
    nielsen_bracket: tuple[int, int] | None

    @property
    def degenerate(self) -> bool:
        return self.lam is None and len(self.records) > 0


# ---------------------------------------------------------------------------
# seeds


def _residual_params(letters, params: np.ndarray, n: int, planar_index: int):
    c = decode_params(params, n, planar_index)
    diff = hurwitz_apply(letters, c) - c
    return diff.reshape(params.shape[:-1] + (3 * n,))


def _random_params(rng, count: int, n: int) -> np.ndarray:
    d = 2 * n - 3
    params = np.empty((count, d))
    params[:, 0] = rng.uniform(0.0, np.pi, count)
    for t in range(n - 2):
        params[:, 1 + 2 * t] = rng.uniform(-np.pi, np.pi, count)
        params[:, 2 + 2 * t] = np.arccos(rng.uniform(-1.0, 1.0, count))
    return params


def _angle_matrix_rows(letters, n: int):
    """Integer matrix of the coplanar angle action (any strand count)."""
    A = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def left_mul(rows):
        return [
            [sum(rows[i][k] * A[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]

    for g in letters:
        i = abs(g) - 1
        rows = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
        if g > 0:
            rows[i][i], rows[i][i + 1] = 2, -1
            rows[i + 1][i], rows[i + 1][i + 1] = 1, 0
        else:
            rows[i][i], rows[i][i + 1] = 0, 1
            rows[i + 1][i], rows[i + 1][i + 1] = -1, 2
        A = left_mul(rows)
    return A


def _diagonalize_int(M):
    """Integer diagonalization S = P M Q; returns (diagonal of S, Q).

    Only the column transform Q is tracked: solving M x = 0 modulo a lattice
    needs x = Q y with the diagonal constraining y.
    """
    A = [row[:] for row in M]
    m, n = len(A), len(A[0])
    Q = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    t = 0
    while t < min(m, n):
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] != 0 and (best is None or abs(A[i][j]) < best):
                    best = abs(A[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            A[t], A[pi] = A[pi], A[t]
        if pj != t:
            for row in A:
                row[t], row[pj] = row[pj], row[t]
            for row in Q:
                row[t], row[pj] = row[pj], row[t]
        dirty = False
        for i in range(m):
            if i != t and A[i][t] != 0:
                f = A[i][t] // A[t][t]
                if f:
                    for k in range(n):
                        A[i][k] -= f * A[t][k]
                if A[i][t] != 0:
                    dirty = True
        for j in range(n):
            if j != t and A[t][j] != 0:
                f = A[t][j] // A[t][t]
                if f:
                    for row in A:
                        row[j] -= f * row[t]
                    for row in Q:
                        row[j] -= f * row[t]
                if A[t][j] != 0:
                    dirty = True
        if dirty:
            continue
        t += 1
    diag = [A[i][i] if i < m else 0 for i in range(n)]
    return diag, Q


def _lattice_angle_seeds(letters, n: int) -> list[tuple[Fraction, ...]]:
    """Exact coplanar fixed configurations, as angle tuples in units of pi.

    On the coplanar locus the action is an integer-linear map A on angles, so
    exact fixedness is the congruence (A - I) a = 0 mod 2 pi.  With a_1
    gauge-fixed to 0 this is solved exactly over the rationals by integer
    diagonalization; these seeds land every binary dihedral class on the
    nose, for any strand count.
    """
    A = _angle_matrix_rows(letters, n)
    M = [[A[i][j] - (1 if i == j else 0) for j in range(1, n)] for i in range(n)]
    diag, Q = _diagonalize_int(M)
    choices = []
    for d in diag:
        if d != 0:
            choices.append([Fraction(2 * k, abs(d)) for k in range(abs(d))])
        else:
            choices.append(
                [Fraction(2 * k, _FREE_DIRECTION_SAMPLES) for k in range(_FREE_DIRECTION_SAMPLES)]
            )
    out = []
    for y in itertools.islice(itertools.product(*choices), _LATTICE_BUDGET):
        x = tuple(
            sum(Fraction(Q[i][j]) * y[j] for j in range(n - 1)) % 2
            for i in range(n - 1)
        )
        out.append(x)
    return sorted(set(out))


def _grid_angle_seeds(n: int) -> list[tuple[Fraction, ...]]:
    """Deterministic coplanar angle grids 2 pi k / m, denominators capped."""
    if n == 2:
        fractions = {Fraction(2 * k, m) % 2 for m in range(1, 65) for k in range(m)}
        return sorted((f,) for f in fractions)
    seen: set[tuple[Fraction, ...]] = set()
    m = 2
    while m ** (n - 1) <= _GRID_TUPLE_BUDGET and len(seen) < _GRID_TUPLE_BUDGET:
        for combo in itertools.product(range(m), repeat=n - 1):
            seen.add(tuple(Fraction(2 * k, m) % 2 for k in combo))
        m += 1
    return sorted(itertools.islice(seen, _GRID_TUPLE_BUDGET))


def _angles_to_params(angles: tuple[Fraction, ...], n: int) -> np.ndarray:
    """Chart-1 slice parameters of the coplanar configuration (0, angles)."""
    d = 2 * n - 3
    params = np.empty(d)
    params[0] = np.pi * float(angles[0])
    for t in range(n - 2):
        params[1 + 2 * t] = np.pi * float(angles[1 + t])
        params[2 + 2 * t] = 0.5 * np.pi
    return params


# ---------------------------------------------------------------------------
# batched Gauss-Newton


def _gauss_newton_batch(letters, params: np.ndarray, n: int, planar_index: int,
                        cfg: SolverConfig) -> tuple[np.ndarray, np.ndarray]:
    """Damped Gauss-Newton on a batch of slice parameters.

    Steps solve the normal equations by pseudoinverse; each step is halved up
    to 20 times until the residual norm decreases.  Seeds that cannot improve
    are frozen.  Returns final parameters and residual norms.
    """
    p = np.array(params, dtype=float)
    count, d = p.shape
    resid = _residual_params(letters, p, n, planar_index)
    rnorm = np.linalg.norm(resid, axis=1)
    alive = rnorm > cfg.residual_tol
    h = cfg.fd_step
    for _ in range(cfg.max_iters):
        if not alive.any():
            break
        idx = np.where(alive)[0]
        pa = p[idx]
        # Central-difference Jacobian for the whole active batch in one pass.
        offsets = np.concatenate([np.eye(d) * h, -np.eye(d) * h])  # (2d, d)
        trial = pa[:, None, :] + offsets[None, :, :]
        rr = _residual_params(letters, trial.reshape(-1, d), n, planar_index)
        rr = rr.reshape(len(idx), 2 * d, 3 * n)
        J = (rr[:, :d, :] - rr[:, d:, :]) / (2.0 * h)  # (batch, d, 3n)
        J = np.transpose(J, (0, 2, 1))  # (batch, 3n, d)
        step = np.linalg.pinv(J) @ resid[idx][:, :, None]
        step = step[:, :, 0]
        base_norm = rnorm[idx]
        accepted = np.zeros(len(idx), dtype=bool)
        alpha = np.ones(len(idx))
        new_p = pa.copy()
        new_rn = base_norm.copy()
        for _halving in range(21):
            todo = ~accepted
            if not todo.any():
                break
            trial_p = pa[todo] - alpha[todo, None] * step[todo]
            trial_r = _residual_params(letters, trial_p, n, planar_index)
            trial_rn = np.linalg.norm(trial_r, axis=1)
            better = trial_rn < base_norm[todo]
            sub = np.where(todo)[0][better]
            new_p[sub] = trial_p[better]
            new_rn[sub] = trial_rn[better]
            accepted[sub] = True
            alpha[~accepted] *= 0.5
        p[idx] = new_p
        rnorm[idx] = new_rn
        stalled = idx[~accepted]
        alive[stalled] = False
        alive[idx[accepted]] = new_rn[accepted] > cfg.residual_tol
        resid = _residual_params(letters, p, n, planar_index)
        rnorm = np.linalg.norm(resid, axis=1)
    return p, rnorm


# ---------------------------------------------------------------------------
# solving and deduplication


def _polish(letters, c: Configuration, cfg: SolverConfig) -> Configuration:
    """A few extra Gauss-Newton steps in the canonical chart."""
    s, _ = gauge_fix(c)
    quick = dataclasses.replace(cfg, max_iters=4)
    params, rnorm = _gauss_newton_batch(
        letters, s.params[None, :], c.n, s.planar_index, quick
    )
    vecs = decode_params(params[0], c.n, s.planar_index)
    vecs = vecs / np.linalg.norm(vecs, axis=-1, keepdims=True)
    return Configuration(vecs)


def solve_fixed_points(b: BraidWord, cfg: SolverConfig | None = None) -> list[FixedPointRecord]:
    """All conjugacy classes of exact irreducible solutions of beta(X) = X.

    Seeds: uniform random slice points in every chart, deterministic coplanar
    angle grids, and exact lattice solutions of the coplanar angle congruence
    (which land every binary dihedral class exactly).  Converged solutions are
    filtered to irreducible exact fixed points, canonicalized on the gauge
    slice, deduplicated by fingerprint (confirmed by alignment), indexed, and
    sorted by fingerprint.
    """
    cfg = cfg or SolverConfig()
    if not is_knot_closure(b):
        warnings.warn(
            f"closure has cycle type {list(cycle_type(permutation(b)))}; "
            "solving anyway",
            stacklevel=2,
        )
    n = b.strands
    if n < 2:
        return []
    letters = b.letters
    rng = np.random.default_rng(cfg.rng_seed)

    chart_batches: dict[int, list[np.ndarray]] = {}
    per_chart = max(cfg.seeds // (n - 1), 1)
    for j in range(1, n):
        chart_batches.setdefault(j, []).append(_random_params(rng, per_chart, n))
    coplanar = [_angles_to_params(a, n) for a in _grid_angle_seeds(n)]
    coplanar += [_angles_to_params(a, n) for a in _lattice_angle_seeds(letters, n)]
    if coplanar:
        chart_batches.setdefault(1, []).append(np.array(coplanar))

    solutions: list[Configuration] = []
    for j, batches in sorted(chart_batches.items()):
        params = np.concatenate(batches, axis=0)
        final, rnorm = _gauss_newton_batch(letters, params, n, j, cfg)
        good = np.where(rnorm <= cfg.residual_tol)[0]
        for i in good:
            vecs = decode_params(final[i], n, j)
            vecs = vecs / np.linalg.norm(vecs, axis=-1, keepdims=True)
            solutions.append(Configuration(vecs))

    classes: list[tuple[np.ndarray, Configuration, float]] = []
    for c in solutions:
        if not is_irreducible(c):
            continue
        rep = _polish(letters, c, cfg)
        resid = float(
            np.linalg.norm(hurwitz_apply(letters, rep.vectors) - rep.vectors)
        )
        if resid > cfg.residual_tol:
            continue
        fp = fingerprint(rep)
        matched = False
        for k, (fp0, rep0, res0) in enumerate(classes):
            if np.max(np.abs(fp - fp0)) <= cfg.dedup_tol:
                _, dist = align(rep.vectors, rep0.vectors)
                if dist <= 1e-6:
                    if resid < res0:
                        classes[k] = (fp, rep, resid)
                    matched = True
                    break
        if not matched:
            classes.append((fp, rep, resid))

    classes.sort(key=lambda item: tuple(item[0]))
    records = []
    for fp, rep, resid in classes:
        value, smin = _index_of_config(letters, rep, cfg, method="analytic")
        records.append(
            FixedPointRecord(
                config=rep,
                residual=resid,
                index=value if value is not None else DEGENERATE,
                fingerprint=fp,
                min_singular_value=smin,
            )
        )
    return records


# ---------------------------------------------------------------------------
# intersection index


def _tangent_frames(X: np.ndarray) -> np.ndarray:
    """Orthonormal frames (t1, t2) per sphere with (t1, t2, v) right-handed.

    Returned as a (3n, 2n) matrix whose columns are the embedded tangent
    vectors in sphere-major order; this ordering carries the product
    orientation of the tuple of spheres.
    """
    n = X.shape[0]
    T = np.zeros((3 * n, 2 * n))
    for k in range(n):
        v = X[k]
        axis = np.zeros(3)
        axis[int(np.argmin(np.abs(v)))] = 1.0
        t1 = np.cross(axis, v)
        t1 /= np.linalg.norm(t1)
        t2 = np.cross(v, t1)
        T[3 * k : 3 * k + 3, 2 * k] = t1
        T[3 * k : 3 * k + 3, 2 * k + 1] = t2
    return T


def _hurwitz_jacobian_ambient(letters, X: np.ndarray) -> np.ndarray:
    """Exact differential of the action via the reflection formula."""
    n = X.shape[0]
    V = X.copy()
    J = np.eye(3 * n)
    eye = np.eye(3)
    for g in letters:
        i = abs(g) - 1
        u, w = V[i].copy(), V[i + 1].copy()
        Ju = J[3 * i : 3 * i + 3, :].copy()
        Jw = J[3 * i + 3 : 3 * i + 6, :].copy()
        if g > 0:
            du = 2.0 * np.outer(u, w) + 2.0 * (u @ w) * eye
            dw = 2.0 * np.outer(u, u) - eye
            J[3 * i : 3 * i + 3, :] = du @ Ju + dw @ Jw
            J[3 * i + 3 : 3 * i + 6, :] = Ju
            V[i], V[i + 1] = reflect(u, w), u
        else:
            dw = 2.0 * np.outer(w, u) + 2.0 * (u @ w) * eye
            du = 2.0 * np.outer(w, w) - eye
            J[3 * i : 3 * i + 3, :] = Jw
            J[3 * i + 3 : 3 * i + 6, :] = dw @ Jw + du @ Ju
            V[i], V[i + 1] = w, reflect(w, u)
    return J


def _retract(X: np.ndarray, D: np.ndarray) -> np.ndarray:
    Y = X + D
    return Y / np.linalg.norm(Y, axis=-1, keepdims=True)


def _difference_matrix(letters, X, T, cfg, method: str) -> np.ndarray:
    """(D beta - 1) on the tangent space, in the frame columns of T."""
    n = X.shape[0]
    if method == "analytic":
        J = _hurwitz_jacobian_ambient(letters, X)
        return T.T @ ((J - np.eye(3 * n)) @ T)
    if method == "fd":
        h = cfg.fd_step
        cols = []
        for col in range(T.shape[1]):
            t = T[:, col].reshape(n, 3)
            Xp, Xm = _retract(X, h * t), _retract(X, -h * t)
            Gp = (hurwitz_apply(letters, Xp) - Xp).ravel()
            Gm = (hurwitz_apply(letters, Xm) - Xm).ravel()
            cols.append(T.T @ ((Gp - Gm) / (2.0 * h)))
        return np.stack(cols, axis=1)
    raise ValueError(f"unknown method {method!r}")


def _product_differential(X: np.ndarray, T: np.ndarray) -> np.ndarray:
    """Differential of the quaternion product, left-translated to R^3.

    Row a, column (k, alpha): the pure part of mu^-1 (v_1 ... t ... v_n) with
    the k-th factor replaced by the frame vector.
    """
    n = X.shape[0]
    prefix = [np.array([1.0, 0.0, 0.0, 0.0])]
    for k in range(n):
        prefix.append(qmul(prefix[-1], pure(X[k])))
    suffix = [np.array([1.0, 0.0, 0.0, 0.0])]
    for k in range(n - 1, -1, -1):
        suffix.append(qmul(pure(X[k]), suffix[-1]))
    suffix.reverse()  # suffix[k] = product of factors after k
    mu = prefix[n]
    mu_inv = qconj(mu)
    D = np.zeros((3, 2 * n))
    for k in range(n):
        for a in range(2):
            t = T[3 * k : 3 * k + 3, 2 * k + a]
            der = qmul(prefix[k], qmul(pure(t), suffix[k + 1]))
            D[:, 2 * k + a] = qmul(mu_inv, der)[1:]
    return D


def _index_of_config(letters, c: Configuration, cfg: SolverConfig,
                     method: str = "analytic") -> tuple[int | None, float]:
    """Oriented transversality sign at an exact fixed point.

    The map (D beta - 1) kills the conjugation orbit and lands in the kernel
    of the product differential, so it induces a square map from the orbit
    complement to that kernel.  Its determinant sign, with the orientations
    fixed below, is the intersection sign of the graph of the action with the
    diagonal; the smallest singular value measures transversality.

    Orientations: the tangent space carries the product orientation of the
    spheres; the orbit basis is ordered (x, y, z); the kernel basis is
    co-oriented so that [kernel | pseudoinverse preimage of (x, y, z)] is
    positive; the complement is oriented so that [complement | orbit] is
    positive.  The global calibration constant converts the resulting sign
    into the convention anchored by the oracle signature.
    """
    X = c.vectors
    n = c.n
    T = _tangent_frames(X)
    M = _difference_matrix(letters, X, T, cfg, method)

    orbit = np.zeros((2 * n, 3))
    for a in range(3):
        e = np.zeros(3)
        e[a] = 1.0
        vec = np.cross(np.broadcast_to(e, (n, 3)), X).ravel()
        orbit[:, a] = T.T @ vec

    D = _product_differential(X, T)
    U, s, Vt = np.linalg.svd(D)
    if s[2] < 1e-10:
        return None, 0.0
    kernel = Vt[3:, :].T  # (2n, 2n-3), orthonormal
    preimage = np.linalg.pinv(D)
    if np.linalg.det(np.hstack([kernel, preimage])) < 0:
        kernel = kernel.copy()
        kernel[:, 0] = -kernel[:, 0]

    Uo, _, _ = np.linalg.svd(orbit, full_matrices=True)
    comp = Uo[:, 3:]
    if np.linalg.det(np.hstack([comp, orbit])) < 0:
        comp = comp.copy()
        comp[:, 0] = -comp[:, 0]

    C = kernel.T @ (M @ comp)
    svals = np.linalg.svd(C, compute_uv=False)
    smin = float(svals[-1]) if len(svals) else 0.0
    if smin < 1e-8:
        return None, smin
    raw = 1 if np.linalg.det(C) > 0 else -1
    return INDEX_CALIBRATION * raw, smin


def intersection_index(b: BraidWord, record, cfg: SolverConfig | None = None,
                       method: str = "analytic") -> int | str:
    """Recompute the sign of one fixed-point class.

    ``record`` may be a FixedPointRecord or a Configuration.  The input must
    be an exact irreducible solution; gauge does not matter.
    """
    cfg = cfg or SolverConfig()
    c = record.config if isinstance(record, FixedPointRecord) else record
    resid = float(np.linalg.norm(hurwitz_apply(b.letters, c.vectors) - c.vectors))
    if resid > max(1e-8, 10 * cfg.residual_tol):
        raise ValueError(f"not an exact fixed point (residual {resid:.3e})")
    if not is_irreducible(c):
        raise ValueError("reducible configurations have no intersection index")
    value, _ = _index_of_config(b.letters, c, cfg, method)
    return value if value is not None else DEGENERATE


def casson_lin(b: BraidWord, cfg: SolverConfig | None = None) -> LambdaResult:
    """The signed count of traceless irreducible classes of the knot closure.

    Solves for all classes, signs each, and sums.  If any class is degenerate
    the count is reported undefined rather than resolved by an ad hoc
    perturbation.  Equals half the knot signature.
    """
    cfg = cfg or SolverConfig()
    if not is_knot_closure(b):
        ct = cycle_type(permutation(b))
        raise ValueError(
            f"closure is a link, not a knot (cycle type {list(ct)})"
        )
    records = solve_fixed_points(b, cfg)
    degenerate = sum(1 for r in records if r.index == DEGENERATE)
    essential = sum(1 for r in records if r.index != DEGENERATE and r.index != 0)
    total = len(records)
    if degenerate:
        return LambdaResult(None, tuple(records), (total, essential, degenerate), None)
    lam = sum(r.index for r in records)
    return LambdaResult(
        lam, tuple(records), (total, essential, degenerate), (abs(lam), essential)
    )

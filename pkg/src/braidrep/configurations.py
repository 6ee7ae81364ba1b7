"""Tuples of traceless elements, the Hurwitz action, and gauge fixing.

A Configuration is an ordered n-tuple of unit 3-vectors, i.e. a point of the
product of n two-spheres.  Braid words act on it by the Hurwitz rule; the
quaternion product of the entries is conserved by that action.  Conjugation
by a fixed rotation is the gauge symmetry, removed by a slice that pins the
first vector to (1,0,0) and flattens one further vector into the upper half
of the xy-plane.
"""

from __future__ import annotations

import dataclasses

import numpy as np

from .braids import BraidWord, FreeWord
from .quaternions import conj_action, pure, qinv, qmul, reflect

E_X = np.array([1.0, 0.0, 0.0])

UNIT_TOL = 1e-9
IRREDUCIBLE_TOL = 1e-8
COLLINEAR_TOL = 1e-9


@dataclasses.dataclass(frozen=True)
class Configuration:
    """An ordered tuple of unit 3-vectors (pure unit quaternions)."""

    vectors: np.ndarray

    def __post_init__(self):
        v = np.array(self.vectors, dtype=float)
        if v.ndim != 2 or v.shape[1] != 3 or v.shape[0] < 1:
            raise ValueError(f"expected an (n, 3) array, got shape {v.shape}")
        norms = np.linalg.norm(v, axis=1)
        if np.max(np.abs(norms - 1.0)) > UNIT_TOL:
            raise ValueError("configuration entries must be unit vectors")
        v.flags.writeable = False
        object.__setattr__(self, "vectors", v)

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    @staticmethod
    def from_angles(angles) -> Configuration:
        """Coplanar configuration: entry k is (cos a_k, sin a_k, 0)."""
        a = np.asarray(angles, dtype=float)
        return Configuration(
            np.stack([np.cos(a), np.sin(a), np.zeros_like(a)], axis=1)
        )


def hurwitz_apply(letters, arr: np.ndarray) -> np.ndarray:
    """Hurwitz action on an (..., n, 3) array of configurations.

    Letter sigma_i maps (v_i, v_{i+1}) to (reflect(v_i, v_{i+1}), v_i) and the
    inverse letter to (v_{i+1}, reflect(v_{i+1}, v_i)); letters act left to
    right.  The quaternion product of the entries is unchanged.
    """
    out = np.array(arr, dtype=float)
    for g in letters:
        i = abs(g) - 1
        u = out[..., i, :].copy()
        w = out[..., i + 1, :].copy()
        if g > 0:
            out[..., i, :] = reflect(u, w)
            out[..., i + 1, :] = u
        else:
            out[..., i, :] = w
            out[..., i + 1, :] = reflect(w, u)
    return out


def hurwitz(b: BraidWord, c: Configuration) -> Configuration:
    """Act by the braid word on a configuration."""
    if b.strands != c.n:
        raise ValueError(f"strand mismatch: braid has {b.strands}, tuple has {c.n}")
    return Configuration(hurwitz_apply(b.letters, c.vectors))


def product(c: Configuration) -> np.ndarray:
    """Left-to-right quaternion product of the entries."""
    out = None
    for v in c.vectors:
        q = pure(v)
        out = q if out is None else qmul(out, q)
    return out


def conjugate(c: Configuration, g: np.ndarray) -> Configuration:
    """Apply the gauge action: rotate every entry by g."""
    return Configuration(conj_action(g, c.vectors))


def is_irreducible(c: Configuration, tol: float = IRREDUCIBLE_TOL) -> bool:
    """True iff the entries do not share a single axis.

    Reducible means all vectors collinear (the representation has abelian
    image), detected as the second singular value of the n x 3 matrix.
    """
    s = np.linalg.svd(c.vectors, compute_uv=False)
    return bool(len(s) > 1 and s[1] > tol)


@dataclasses.dataclass(frozen=True)
class SlicePoint:
    """Gauge-fixed coordinates of an irreducible configuration.

    ``params`` has length 2n - 3: one angle for the planarized vector (index
    ``planar_index``, the first entry not collinear with entry 0), then an
    (azimuth, polar) pair for every remaining entry in index order.  Entry 0
    decodes to (1,0,0) and the planarized entry to the closed upper half of
    the xy-plane.
    """

    n: int
    planar_index: int
    params: np.ndarray

    def __post_init__(self):
        p = np.array(self.params, dtype=float)
        if p.shape != (2 * self.n - 3,):
            raise ValueError(
                f"params must have length {2 * self.n - 3}, got {p.shape}"
            )
        if not 1 <= self.planar_index < self.n:
            raise ValueError(f"planar_index {self.planar_index} out of range")
        p.flags.writeable = False
        object.__setattr__(self, "params", p)


def decode_params(params: np.ndarray, n: int, planar_index: int) -> np.ndarray:
    """Decode (..., 2n-3) slice parameters into (..., n, 3) configurations."""
    params = np.asarray(params, dtype=float)
    lead = params.shape[:-1]
    out = np.zeros(lead + (n, 3))
    out[..., 0, :] = E_X
    phi = params[..., 0]
    out[..., planar_index, 0] = np.cos(phi)
    out[..., planar_index, 1] = np.sin(phi)
    col = 1
    for k in range(1, n):
        if k == planar_index:
            continue
        theta = params[..., col]
        psi = params[..., col + 1]
        out[..., k, 0] = np.sin(psi) * np.cos(theta)
        out[..., k, 1] = np.sin(psi) * np.sin(theta)
        out[..., k, 2] = np.cos(psi)
        col += 2
    return out


def decode(s: SlicePoint) -> Configuration:
    return Configuration(decode_params(s.params, s.n, s.planar_index))


def gauge_fix(c: Configuration) -> tuple[SlicePoint, np.ndarray]:
    """Rotate an irreducible configuration into the slice.

    Returns (s, g) with conj_action(g, c) equal to decode(s): entry 0 goes to
    (1,0,0) and the first entry not collinear with entry 0 lands in the open
    upper half of the xy-plane.  Raises on reducible input.
    """
    if not is_irreducible(c):
        raise ValueError("cannot gauge-fix a reducible configuration")
    v0 = c.vectors[0]
    axis = np.cross(v0, E_X)
    s = np.linalg.norm(axis)
    if s < 1e-14:
        if v0[0] > 0:
            g1 = np.array([1.0, 0.0, 0.0, 0.0])
        else:
            g1 = np.array([0.0, 0.0, 0.0, 1.0])  # half turn about z flips -x to x
    else:
        angle = np.arctan2(s, v0[0])
        half = 0.5 * angle
        g1 = np.concatenate([[np.cos(half)], np.sin(half) * axis / s])
    w = conj_action(g1, c.vectors)

    j = None
    for k in range(1, c.n):
        if abs(w[k, 0]) < 1.0 - COLLINEAR_TOL:
            j = k
            break
    if j is None:
        raise ValueError("cannot gauge-fix a reducible configuration")
    alpha = np.arctan2(w[j, 2], w[j, 1])
    half = -0.5 * alpha
    g2 = np.array([np.cos(half), np.sin(half), 0.0, 0.0])
    g = qmul(g2, g1)
    fixed = conj_action(g, c.vectors)

    params = np.empty(2 * c.n - 3)
    params[0] = np.arctan2(fixed[j, 1], fixed[j, 0])
    col = 1
    for k in range(1, c.n):
        if k == j:
            continue
        params[col] = np.arctan2(fixed[k, 1], fixed[k, 0])
        params[col + 1] = np.arccos(np.clip(fixed[k, 2], -1.0, 1.0))
        col += 2
    return SlicePoint(c.n, j, params), g


def canonical_representative(c: Configuration) -> Configuration:
    """The slice form of an irreducible configuration (gauge-independent)."""
    s, _ = gauge_fix(c)
    return decode(s)


def fingerprint(c: Configuration) -> np.ndarray:
    """Conjugation-invariant coordinates of a configuration.

    All pairwise dot products v_i . v_j (i < j) followed by the triple
    products v_1 . (v_2 x v_j) for j >= 3.  The dots pin the tuple up to an
    orthogonal map and the triples fix the orientation, so for irreducible
    configurations equal fingerprints mean conjugate configurations (up to
    degenerate corner cases where v_1, v_2 are collinear; deduplication
    confirms matches with an explicit alignment for that reason).
    """
    v = c.vectors
    n = c.n
    dots = [float(v[i] @ v[j]) for i in range(n) for j in range(i + 1, n)]
    triples = []
    if n >= 3:
        cr = np.cross(v[0], v[1])
        triples = [float(cr @ v[j]) for j in range(2, n)]
    return np.array(dots + triples)


def evaluate_free_word(w: FreeWord, c: Configuration) -> np.ndarray:
    """Evaluate a free word at the configuration (x_k -> k-th pure quaternion)."""
    out = np.array([1.0, 0.0, 0.0, 0.0])
    for i, e in w.syllables:
        q = pure(c.vectors[i - 1])
        if e < 0:
            q = qinv(q)
        for _ in range(abs(e)):
            out = qmul(out, q)
    return out

"""Quaternion arithmetic and the traceless locus of SU(2).

A unit quaternion (w, x, y, z) is an SU(2) element; its matrix trace is 2w,
so the traceless elements are exactly the pure unit quaternions, stored here
as unit vectors in R^3.  Conjugation g t g^-1 acts on the pure part as the
SO(3) rotation attached to g, which is how all group actions are realized.
"""

from __future__ import annotations

import numpy as np

IDENTITY = np.array([1.0, 0.0, 0.0, 0.0])
QI = np.array([0.0, 1.0, 0.0, 0.0])
QJ = np.array([0.0, 0.0, 1.0, 0.0])
QK = np.array([0.0, 0.0, 0.0, 1.0])


def qmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Hamilton product; broadcasts over leading axes."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    aw, ax, ay, az = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    bw, bx, by, bz = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack(
        [
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        ],
        axis=-1,
    )


def qconj(q: np.ndarray) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    return q * np.array([1.0, -1.0, -1.0, -1.0])


def qnorm(q: np.ndarray) -> np.ndarray:
    return np.linalg.norm(np.asarray(q, dtype=float), axis=-1)


def qinv(q: np.ndarray) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    return qconj(q) / np.sum(q * q, axis=-1, keepdims=True)


def pure(v: np.ndarray) -> np.ndarray:
    """Embed a 3-vector as a pure quaternion."""
    v = np.asarray(v, dtype=float)
    out = np.zeros(v.shape[:-1] + (4,))
    out[..., 1:] = v
    return out


def imag(q: np.ndarray) -> np.ndarray:
    return np.asarray(q, dtype=float)[..., 1:]


def axis_angle(axis: np.ndarray, angle: float) -> np.ndarray:
    """Unit quaternion rotating by ``angle`` about ``axis``."""
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    half = 0.5 * angle
    return np.concatenate([[np.cos(half)], np.sin(half) * axis])


def rotation_matrix(g: np.ndarray) -> np.ndarray:
    """The SO(3) matrix of v -> g v g^-1 for unit g."""
    w, x, y, z = np.asarray(g, dtype=float)
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
        ]
    )


def conj_action(g: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Rotate traceless elements: the pure part of g v g^-1.

    ``v`` may be a single 3-vector or any stack of them (e.g. a whole
    configuration); ``g`` must be unit to within 1e-9.
    """
    g = np.asarray(g, dtype=float)
    if abs(qnorm(g) - 1.0) > 1e-9:
        raise ValueError(f"conjugating element is not unit: |g| = {qnorm(g)!r}")
    v = np.asarray(v, dtype=float)
    return v @ rotation_matrix(g).T


def reflect(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Conjugation u v u^-1 for pure unit u, in closed form 2(u.v)u - v.

    This is the rotation by pi about the axis u; it broadcasts over leading
    axes and agrees with conj_action(pure(u), v) exactly.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    dot = np.sum(u * v, axis=-1, keepdims=True)
    return 2.0 * dot * u - v


def quat_from_rotation(R: np.ndarray) -> np.ndarray:
    """A unit quaternion with the given rotation matrix (sign ambiguity +)."""
    R = np.asarray(R, dtype=float)
    t = np.trace(R)
    if t > -0.5:
        w = 0.5 * np.sqrt(max(1.0 + t, 0.0))
        x = (R[2, 1] - R[1, 2]) / (4 * w)
        y = (R[0, 2] - R[2, 0]) / (4 * w)
        z = (R[1, 0] - R[0, 1]) / (4 * w)
        q = np.array([w, x, y, z])
    else:
        # Trace near -1: pick the dominant diagonal entry for stability.
        k = int(np.argmax(np.diag(R)))
        i, j = (k + 1) % 3, (k + 2) % 3
        s = np.sqrt(max(R[k, k] - R[i, i] - R[j, j] + 1.0, 0.0))
        vec = np.zeros(3)
        vec[k] = 0.5 * s
        vec[i] = (R[i, k] + R[k, i]) / (2 * s)
        vec[j] = (R[j, k] + R[k, j]) / (2 * s)
        w = (R[j, i] - R[i, j]) / (2 * s)
        q = np.concatenate([[w], vec])
    return q / np.linalg.norm(q)


def align(A: np.ndarray, B: np.ndarray) -> tuple[np.ndarray, float]:
    """Best gauge between two lists of traceless elements.

    Returns (g, d): the unit quaternion whose rotation R minimizes
    sum ||R a_i - b_i||^2 over proper rotations (gauge is SO(3), so the
    determinant +1 branch of the SVD solution is always taken), and
    d = sqrt of the minimized sum.  Degenerate cross-covariances still
    return a minimizer.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    B = np.atleast_2d(np.asarray(B, dtype=float))
    if A.shape != B.shape:
        raise ValueError(f"shape mismatch: {A.shape} vs {B.shape}")
    M = A.T @ B
    U, _, Vt = np.linalg.svd(M)
    d_sign = np.sign(np.linalg.det(Vt.T @ U.T))
    if d_sign == 0:
        d_sign = 1.0
    R = Vt.T @ np.diag([1.0, 1.0, d_sign]) @ U.T
    dist = float(np.sqrt(np.sum((A @ R.T - B) ** 2)))
    return quat_from_rotation(R), dist

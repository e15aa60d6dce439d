"""Hamilton quaternions, their Haar module and a seeded inversion-invariance test.

The multiplicative Haar measure on H* is d^4h / |h|^4.  The Monte Carlo test
samples each shell of X(M, N) = R(M, N) u R(1/N, 1/M) uniformly, so both
sides of  int f(1/h) dH* = int f(h) dH*  are importance-weighted averages.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Quaternion", "quat_mul", "quat_inverse", "left_matrix", "haar_module_quat",
    "left_regular_det_check", "inversion_invariance_mc", "MCReport", "shell_volume",
    "herbrand_density", "random_quaternions",
]


@dataclass(frozen=True)
class Quaternion:
    w: float
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.norm2):
            raise ValueError("non-finite quaternion")

    @classmethod
    def from_array(cls, a) -> "Quaternion":
        return cls(*(float(v) for v in a))

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    @property
    def norm2(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    @property
    def norm(self) -> float:
        return math.sqrt(self.norm2)

    def conj(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if not isinstance(other, Quaternion):
            other = Quaternion(float(other))
        return quat_mul(self, other)

    def __add__(self, other):
        return Quaternion(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other):
        return Quaternion(self.w - other.w, self.x - other.x, self.y - other.y, self.z - other.z)


def quat_mul(a: Quaternion, b: Quaternion) -> Quaternion:
    return Quaternion(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )


def quat_inverse(h: Quaternion) -> Quaternion:
    n2 = h.norm2
    if n2 == 0:
        raise ZeroDivisionError("0 has no inverse")
    c = h.conj()
    return Quaternion(c.w / n2, c.x / n2, c.y / n2, c.z / n2)


def left_matrix(h: Quaternion) -> np.ndarray:
    """Matrix of g -> h g in the basis 1, i, j, k."""
    w, x, y, z = h.w, h.x, h.y, h.z
    return np.array([[w, -x, -y, -z],
                     [x, w, -z, y],
                     [y, z, w, -x],
                     [z, -y, x, w]])


def haar_module_quat(h: Quaternion) -> float:
    """Delta(h) = |h|^4, with Delta(0) = 0."""
    n2 = h.norm2
    return n2 * n2


def left_regular_det_check(h: Quaternion) -> float:
    """Relative residual |det L_h - |h|^4| / |h|^4."""
    d = haar_module_quat(h)
    if d == 0:
        raise ValueError("the check needs h != 0")
    return abs(float(np.linalg.det(left_matrix(h))) - d) / d


def random_quaternions(n: int, seed: int) -> np.ndarray:
    g = np.random.Generator(np.random.Philox(key=np.array([seed, 0], dtype=np.uint64)))
    return g.standard_normal((n, 4))


def _inverse_rows(h: np.ndarray) -> np.ndarray:
    n2 = np.sum(h * h, axis=1, keepdims=True)
    return h * np.array([1.0, -1.0, -1.0, -1.0]) / n2


def herbrand_density(h: np.ndarray) -> np.ndarray:
    """1 / |1 - h^2|^4 for rows h = (w, x, y, z)."""
    w, v = h[:, 0], h[:, 1:]
    vv = np.sum(v * v, axis=1)
    # h^2 = (w^2 - |v|^2) + 2 w v
    re = 1.0 - (w * w - vv)
    im2 = 4 * w * w * vv
    n2 = re * re + im2
    return 1.0 / (n2 * n2)


def shell_volume(a: float, b: float) -> float:
    """Lebesgue volume of a <= |h| <= b in R^4."""
    return 0.5 * math.pi ** 2 * (b ** 4 - a ** 4)


@dataclass(frozen=True)
class MCReport:
    lhs: float
    rhs: float
    lhs_se: float
    rhs_se: float
    diff_se: float
    z: float
    samples: int

    @property
    def within_3sigma(self) -> bool:
        return self.z < 3.0

    def as_dict(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "lhs_se": self.lhs_se, "rhs_se": self.rhs_se,
                "diff_se": self.diff_se, "z": self.z, "samples": self.samples}


CHUNK = 1 << 14


def _chunk(f, a, b, seed, shell, idx, n):
    """Uniform points in the shell a <= |h| <= b from counter-keyed Philox stream idx."""
    g = np.random.Generator(np.random.Philox(key=np.array([seed, 1 + 2 * idx + shell],
                                                          dtype=np.uint64)))
    d = g.standard_normal((n, 4))
    d /= np.linalg.norm(d, axis=1, keepdims=True)
    u = g.random(n)
    r = (a ** 4 + u * (b ** 4 - a ** 4)) ** 0.25
    h = d * r[:, None]
    w = 1.0 / r ** 4
    fl = np.asarray(f(_inverse_rows(h)), dtype=float) * w
    fr = np.asarray(f(h), dtype=float) * w
    return fl, fr


def inversion_invariance_mc(f, annulus, samples: int = 200000, seed: int = 0,
                            workers: int | None = None) -> MCReport:
    """Both sides of int_X f(1/h) dh/|h|^4 = int_X f(h) dh/|h|^4, X = X(M, N).

    ``f`` maps an (n, 4) array of quaternions to n real values.  Samples are
    split evenly between the two shells; each shell estimate is volume times
    the sample mean.  Standard errors are per shell, combined in quadrature;
    the difference uses paired samples.
    """
    M, N = annulus
    if not (1 < M < N):
        raise ValueError("need 1 < M < N for an inversion-stable annulus")
    if samples < 2:
        raise ValueError("need at least 2 samples")
    shells = [(M, N), (1.0 / N, 1.0 / M)]
    per = samples // 2
    nchunks = (per + CHUNK - 1) // CHUNK
    jobs = []
    for si, (a, b) in enumerate(shells):
        for c in range(nchunks):
            n = min(CHUNK, per - c * CHUNK)
            jobs.append((si, a, b, c, n))
    if workers is None:
        workers = int(os.environ.get("ZETA_AUDIT_THREADS", "1"))
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            parts = list(ex.map(lambda j: _chunk(f, j[1], j[2], seed, j[0], j[3], j[4]), jobs))
    else:
        parts = [_chunk(f, a, b, seed, si, c, n) for si, a, b, c, n in jobs]
    lhs = rhs = 0.0
    vl = vr = vd = 0.0
    for si, (a, b) in enumerate(shells):
        fl = np.concatenate([p[0] for j, p in zip(jobs, parts) if j[0] == si])
        fr = np.concatenate([p[1] for j, p in zip(jobs, parts) if j[0] == si])
        V = shell_volume(a, b)
        n = fl.size
        lhs += V * fl.mean()
        rhs += V * fr.mean()
        vl += V * V * fl.var(ddof=1) / n
        vr += V * V * fr.var(ddof=1) / n
        vd += V * V * (fl - fr).var(ddof=1) / n
    se_d = math.sqrt(vd)
    diff = abs(lhs - rhs)
    z = 0.0 if diff == 0 else (diff / se_d if se_d > 0 else math.inf)
    return MCReport(float(lhs), float(rhs), math.sqrt(vl), math.sqrt(vr), se_d, float(z),
                    2 * per)

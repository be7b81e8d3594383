"""Rotations on SO(3) as unit quaternions.

Scalar-first (w, x, y, z) components with the Hamilton product, so that
``a.compose(b)`` matches the matrix product ``A @ B``. Every constructor
normalizes and picks the canonical hemisphere (w >= 0; if w == 0 the first
nonzero of x, y, z is >= 0), so each rotation has exactly one representative.

Angles are radians throughout. Tangent vectors are plain length-3 numpy
arrays in axis-angle form: the rotation angle equals the Euclidean norm.
The one non-smooth point of the log map is the half-turn (angle pi), where
the axis sign is fixed by the canonical-hemisphere rule.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "Rotation",
    "exp_map",
    "log_map",
    "geodesic_distance",
    "random_rotation",
    "random_unit_axis",
    "perturb",
]

# Below this angle, sin(t/2)/t equals 0.5 to double precision.
_SMALL_ANGLE = 1e-8
_TINY = 1e-12


class Rotation:
    """A rotation stored as a canonical unit quaternion.

    Instances are immutable by convention: no method mutates ``self``, and
    all operations return new objects. Safe to share across threads.
    """

    __slots__ = ("w", "x", "y", "z")

    def __init__(self, w: float, x: float, y: float, z: float):
        n = math.sqrt(w * w + x * x + y * y + z * z)
        if not math.isfinite(n) or n < _TINY:
            raise ValueError(f"quaternion norm {n} is not usable")
        w, x, y, z = w / n, x / n, y / n, z / n
        if w < 0.0 or (
            w == 0.0 and (x < 0.0 or (x == 0.0 and (y < 0.0 or (y == 0.0 and z < 0.0))))
        ):
            w, x, y, z = -w, -x, -y, -z
        self.w = w
        self.x = x
        self.y = y
        self.z = z

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls) -> Rotation:
        r = object.__new__(cls)
        r.w, r.x, r.y, r.z = 1.0, 0.0, 0.0, 0.0
        return r

    @classmethod
    def from_wxyz(cls, q) -> Rotation:
        w, x, y, z = q
        return cls(float(w), float(x), float(y), float(z))

    @classmethod
    def from_axis_angle(cls, axis, angle: float) -> Rotation:
        ax, ay, az = float(axis[0]), float(axis[1]), float(axis[2])
        n = math.sqrt(ax * ax + ay * ay + az * az)
        if n < _TINY:
            raise ValueError("rotation axis must be nonzero")
        half = 0.5 * float(angle)
        s = math.sin(half) / n
        return cls(math.cos(half), s * ax, s * ay, s * az)

    @classmethod
    def from_matrix(cls, m) -> Rotation:
        """Build from a 3x3 rotation matrix (Shepperd's method)."""
        m = np.asarray(m, dtype=float).reshape(3, 3)
        t = m[0, 0] + m[1, 1] + m[2, 2]
        if t > 0.0:
            s = math.sqrt(t + 1.0) * 2.0
            w = 0.25 * s
            x = (m[2, 1] - m[1, 2]) / s
            y = (m[0, 2] - m[2, 0]) / s
            z = (m[1, 0] - m[0, 1]) / s
        elif m[0, 0] >= m[1, 1] and m[0, 0] >= m[2, 2]:
            s = math.sqrt(1.0 + m[0, 0] - m[1, 1] - m[2, 2]) * 2.0
            w = (m[2, 1] - m[1, 2]) / s
            x = 0.25 * s
            y = (m[0, 1] + m[1, 0]) / s
            z = (m[0, 2] + m[2, 0]) / s
        elif m[1, 1] >= m[2, 2]:
            s = math.sqrt(1.0 + m[1, 1] - m[0, 0] - m[2, 2]) * 2.0
            w = (m[0, 2] - m[2, 0]) / s
            x = (m[0, 1] + m[1, 0]) / s
            y = 0.25 * s
            z = (m[1, 2] + m[2, 1]) / s
        else:
            s = math.sqrt(1.0 + m[2, 2] - m[0, 0] - m[1, 1]) * 2.0
            w = (m[1, 0] - m[0, 1]) / s
            x = (m[0, 2] + m[2, 0]) / s
            y = (m[1, 2] + m[2, 1]) / s
            z = 0.25 * s
        return cls(w, x, y, z)

    @classmethod
    def exp(cls, v) -> Rotation:
        """Exponential map from an axis-angle tangent vector."""
        vx, vy, vz = float(v[0]), float(v[1]), float(v[2])
        theta = math.sqrt(vx * vx + vy * vy + vz * vz)
        if theta < _SMALL_ANGLE:
            s = 0.5
        else:
            s = math.sin(0.5 * theta) / theta
        return cls(math.cos(0.5 * theta), s * vx, s * vy, s * vz)

    # -- group operations --------------------------------------------------

    def compose(self, other: Rotation) -> Rotation:
        """Hamilton product self * other (apply ``other`` after ``self``)."""
        aw, ax, ay, az = self.w, self.x, self.y, self.z
        bw, bx, by, bz = other.w, other.x, other.y, other.z
        return Rotation(
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        )

    __mul__ = compose

    def inverse(self) -> Rotation:
        return Rotation(self.w, -self.x, -self.y, -self.z)

    def power(self, exponent: float) -> Rotation:
        """Same axis, angle scaled by ``exponent``.

        ``power(1.0)`` returns ``self`` unchanged and ``power(0.0)`` the
        identity, both exactly.
        """
        if exponent == 1.0:
            return self
        if exponent == 0.0:
            return Rotation.identity()
        return Rotation.exp(exponent * self.log())

    def log(self) -> np.ndarray:
        """Log map to an axis-angle tangent vector with norm in [0, pi]."""
        s = math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)
        if s < _TINY:
            factor = 2.0 / self.w
        else:
            factor = 2.0 * math.atan2(s, self.w) / s
        return np.array([factor * self.x, factor * self.y, factor * self.z])

    def angle(self) -> float:
        """Rotation angle in [0, pi]."""
        s = math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)
        return 2.0 * math.atan2(s, abs(self.w))

    def angle_to(self, other: Rotation) -> float:
        return geodesic_distance(self, other)

    # -- conversions -------------------------------------------------------

    def to_matrix(self) -> np.ndarray:
        w, x, y, z = self.w, self.x, self.y, self.z
        return np.array(
            [
                [1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)],
                [2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)],
                [2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)],
            ]
        )

    def wxyz(self) -> tuple[float, float, float, float]:
        return (self.w, self.x, self.y, self.z)

    # -- dunder boilerplate --------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Rotation):
            return NotImplemented
        return (
            self.w == other.w
            and self.x == other.x
            and self.y == other.y
            and self.z == other.z
        )

    def __hash__(self) -> int:
        return hash((self.w, self.x, self.y, self.z))

    def __repr__(self) -> str:
        return f"Rotation(w={self.w!r}, x={self.x!r}, y={self.y!r}, z={self.z!r})"


def exp_map(v) -> Rotation:
    """Module-level alias for :meth:`Rotation.exp`."""
    return Rotation.exp(v)


def log_map(r: Rotation) -> np.ndarray:
    """Module-level alias for :meth:`Rotation.log`."""
    return r.log()


def geodesic_distance(a: Rotation, b: Rotation) -> float:
    """Angular distance in [0, pi]: the rotation angle of ``a^-1 b``.

    Bi-invariant, symmetric, and accurate near both 0 and pi (computed via
    atan2 of the relative quaternion rather than an arccos of the dot
    product).
    """
    aw, ax, ay, az = a.w, a.x, a.y, a.z
    bw, bx, by, bz = b.w, b.x, b.y, b.z
    # conj(a) * b
    rw = aw * bw + ax * bx + ay * by + az * bz
    rx = aw * bx - ax * bw - ay * bz + az * by
    ry = aw * by + ax * bz - ay * bw - az * bx
    rz = aw * bz - ax * by + ay * bx - az * bw
    s = math.sqrt(rx * rx + ry * ry + rz * rz)
    return 2.0 * math.atan2(s, abs(rw))


def random_rotation(rng: np.random.Generator) -> Rotation:
    """Rotation distributed uniformly (Haar) on SO(3)."""
    w, x, y, z = rng.normal(size=4)
    return Rotation(w, x, y, z)


def random_unit_axis(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=3)
    n = np.linalg.norm(v)
    while n < _TINY:  # pragma: no cover - astronomically unlikely
        v = rng.normal(size=3)
        n = np.linalg.norm(v)
    return v / n


def perturb(r: Rotation, angle: float, rng: np.random.Generator) -> Rotation:
    """Compose ``r`` with a rotation of exactly ``angle`` about a random axis.

    By bi-invariance, ``geodesic_distance(r, perturb(r, angle))`` equals
    ``angle`` for angle in [0, pi].
    """
    if angle < 0.0:
        raise ValueError("perturbation angle must be >= 0")
    if angle == 0.0:
        return r
    return r.compose(Rotation.from_axis_angle(random_unit_axis(rng), angle))

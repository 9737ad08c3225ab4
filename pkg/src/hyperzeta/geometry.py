"""Exact-formula hyperbolic geometry on the unit disc.

The disc model carries the metric ds^2 = 4|dz|^2/(1-|z|^2)^2, so that
d(0, z) = 2 artanh|z| and the geodesic flow is generated by the matrix
a_t = diag(e^{t/2}, e^{-t/2}).  Isometries are unit-determinant 2x2
matrices acting by Moebius transformations: SU(1,1) in the disc model,
SL(2,R) in the half-plane model, always taken modulo sign.

Conventions fixed here and relied on everywhere else:

* boundary points are angles theta reduced to [0, 2pi), the point being
  b = e^{i theta};
* the horocycle bracket <z,b> is log of the Poisson kernel
  (1-|z|^2)/|z-b|^2;
* |gamma'(b)| denotes the derivative of the induced circle map in the
  angle coordinate, which for a disc-model map equals the modulus of the
  complex derivative on |z| = 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "MoebiusMap",
    "GeodesicFrame",
    "NotHyperbolicError",
    "reduce_angle",
    "boundary_point",
    "busemann",
    "poisson_kernel",
    "cosh_dist_to_geodesic",
    "boundary_derivative",
    "trace_length",
    "geodesic_closest_point",
    "frame_to_group",
    "group_to_frame",
    "geodesic_flow",
    "horocycle_flow",
    "rotation",
    "axis_translation",
    "cayley_to_disc",
    "cayley_to_half_plane",
]

_DET_TOL = 1e-12
_EQ_TOL = 1e-10
# inputs with |z| beyond this are rejected: the identities in scope are
# well conditioned only away from the boundary
_MAX_ABS_Z = 1.0 - 1e-8


class NotHyperbolicError(ValueError):
    """Raised when a translation length is requested for a non-hyperbolic map.

    Carries the conjugacy type ("elliptic" or "parabolic") in ``kind``.
    """

    def __init__(self, kind: str, trace: complex):
        self.kind = kind
        self.trace = trace
        super().__init__(f"map is {kind} (|tr| = {abs(trace):.6g}), not hyperbolic")


def reduce_angle(theta: float) -> float:
    """Reduce an angle to the interval [0, 2pi)."""
    t = math.fmod(theta, 2.0 * math.pi)
    if t < 0.0:
        t += 2.0 * math.pi
    # fmod can return 2pi - eps rounding up to 2pi after the add
    if t >= 2.0 * math.pi:
        t -= 2.0 * math.pi
    return t


def boundary_point(theta: float) -> complex:
    """Unit-circle point e^{i theta}."""
    return cmath.exp(1j * theta)


@dataclass(frozen=True)
class MoebiusMap:
    """Unit-determinant 2x2 complex matrix modulo sign.

    ``model`` records which convention the entries follow: ``"disc"``
    (SU(1,1)-like, preserves the unit disc) or ``"half-plane"``
    (SL(2,R)-like).  All group data used by the rest of the package is
    normalized to the disc model on ingestion.
    """

    a: complex
    b: complex
    c: complex
    d: complex
    model: str = "disc"

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if abs(det - 1.0) > 1e-9:
            # normalize; reject if genuinely singular
            if abs(det) < 1e-14:
                raise ValueError("singular matrix is not a Moebius map")
            r = cmath.sqrt(det)
            object.__setattr__(self, "a", self.a / r)
            object.__setattr__(self, "b", self.b / r)
            object.__setattr__(self, "c", self.c / r)
            object.__setattr__(self, "d", self.d / r)

    # -- algebra ---------------------------------------------------------

    @staticmethod
    def identity(model: str = "disc") -> "MoebiusMap":
        return MoebiusMap(1.0, 0.0, 0.0, 1.0, model)

    @staticmethod
    def from_matrix(m: np.ndarray, model: str = "disc") -> "MoebiusMap":
        return MoebiusMap(complex(m[0, 0]), complex(m[0, 1]),
                          complex(m[1, 0]), complex(m[1, 1]), model)

    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    def __mul__(self, other: "MoebiusMap") -> "MoebiusMap":
        if self.model != other.model:
            raise ValueError("cannot compose maps in different models")
        return MoebiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            self.model,
        )

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a, self.model)

    def __pow__(self, n: int) -> "MoebiusMap":
        if n < 0:
            return self.inverse() ** (-n)
        result = MoebiusMap.identity(self.model)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def apply(self, z):
        """Apply the Moebius transformation; accepts scalars or arrays."""
        z = np.asarray(z, dtype=complex)
        out = (self.a * z + self.b) / (self.c * z + self.d)
        return complex(out) if out.ndim == 0 else out

    def apply_angle(self, theta: float) -> float:
        """Circle action in the angle coordinate."""
        return reduce_angle(cmath.phase(self.apply(boundary_point(theta))))

    def deriv(self, z):
        """Complex derivative 1/(cz+d)^2 (unit determinant)."""
        z = np.asarray(z, dtype=complex)
        out = 1.0 / (self.c * z + self.d) ** 2
        return complex(out) if out.ndim == 0 else out

    def trace(self) -> complex:
        return self.a + self.d

    # -- comparisons -----------------------------------------------------

    def proj_eq(self, other: "MoebiusMap", tol: float = _EQ_TOL) -> bool:
        """Projective, tolerance-based equality (M and -M compare equal)."""
        m, n = self.matrix(), other.matrix()
        return min(np.linalg.norm(m - n), np.linalg.norm(m + n)) < tol

    def check_invariants(self):
        """Raise if the determinant or (disc model) circle preservation fails."""
        det = self.a * self.d - self.b * self.c
        if abs(det - 1.0) > _DET_TOL:
            raise ValueError(f"determinant {det} deviates from 1")
        if self.model == "disc":
            for theta in (0.1, 1.7, 3.9, 5.5):
                if abs(abs(self.apply(boundary_point(theta))) - 1.0) > _DET_TOL:
                    raise ValueError("disc-model map does not preserve |z| = 1")

    def classify(self) -> str:
        t = abs(self.trace().real) if abs(self.trace().imag) < 1e-9 else abs(self.trace())
        if t > 2.0 + 1e-12:
            return "hyperbolic"
        if t < 2.0 - 1e-12:
            return "elliptic"
        return "parabolic"


@dataclass(frozen=True)
class GeodesicFrame:
    """Oriented geodesic with a time mark: backward endpoint, forward endpoint,
    signed arclength t from the point of the geodesic closest to the origin."""

    b_minus: float
    b_plus: float
    t: float

    def __post_init__(self):
        bm, bp = reduce_angle(self.b_minus), reduce_angle(self.b_plus)
        if abs(boundary_point(bm) - boundary_point(bp)) < 1e-12:
            raise ValueError("frame endpoints coincide")
        object.__setattr__(self, "b_minus", bm)
        object.__setattr__(self, "b_plus", bp)


# -- the standard one-parameter subgroups ---------------------------------

def geodesic_flow(t: float, model: str = "disc") -> MoebiusMap:
    """a_t = diag(e^{t/2}, e^{-t/2}) conjugated into the requested model."""
    if model == "half-plane":
        return MoebiusMap(math.exp(t / 2), 0.0, 0.0, math.exp(-t / 2), model)
    ch, sh = math.cosh(t / 2), math.sinh(t / 2)
    return MoebiusMap(ch, sh, sh, ch, "disc")


def horocycle_flow(u: float, model: str = "disc") -> MoebiusMap:
    """n_u, the stable horocycle flow fixing the forward endpoint of a_t."""
    if model == "half-plane":
        return MoebiusMap(1.0, u, 0.0, 1.0, model)
    return cayley_to_disc(MoebiusMap(1.0, u, 0.0, 1.0, "half-plane"))


def rotation(theta: float) -> MoebiusMap:
    """Disc rotation z -> e^{i theta} z."""
    h = cmath.exp(1j * theta / 2)
    return MoebiusMap(h, 0.0, 0.0, 1.0 / h, "disc")


def axis_translation(length: float, theta_plus: float, theta_minus: float) -> MoebiusMap:
    """Hyperbolic disc map of translation length ``length`` whose axis runs
    from e^{i theta_minus} (repelling) to e^{i theta_plus} (attracting)."""
    return rotation(theta_plus) * geodesic_flow(length) * rotation(math.pi - theta_minus)


# -- model conversion ------------------------------------------------------

# Cayley transform C(z) = (z - i)/(z + i) sends the upper half-plane to the
# disc; as a matrix it is [[1, -i], [1, i]]/sqrt(2i).
_CAYLEY = np.array([[1.0, -1.0j], [1.0, 1.0j]], dtype=complex) / cmath.sqrt(2.0j)
_CAYLEY_INV = np.linalg.inv(_CAYLEY)


def cayley_to_disc(m: MoebiusMap) -> MoebiusMap:
    """Conjugate a half-plane map into the disc model."""
    if m.model == "disc":
        return m
    out = _CAYLEY @ m.matrix() @ _CAYLEY_INV
    return MoebiusMap.from_matrix(out, "disc")


def cayley_to_half_plane(m: MoebiusMap) -> MoebiusMap:
    if m.model == "half-plane":
        return m
    out = _CAYLEY_INV @ m.matrix() @ _CAYLEY
    return MoebiusMap.from_matrix(out, "half-plane")


def cayley_point_to_disc(z: complex) -> complex:
    return (z - 1j) / (z + 1j)


# -- scalar geometry -------------------------------------------------------

def _check_disc_point(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) > _MAX_ABS_Z):
        raise ValueError("point outside the admissible disc (|z| too close to 1)")
    return z


def poisson_kernel(z, theta):
    """P(z, b) = (1-|z|^2)/|z-b|^2 with b = e^{i theta}. Vectorized."""
    z = _check_disc_point(z)
    b = np.exp(1j * np.asarray(theta, dtype=float))
    out = (1.0 - np.abs(z) ** 2) / np.abs(z - b) ** 2
    return float(out) if out.ndim == 0 else out


def busemann(z, theta):
    """Horocycle bracket <z, b>: signed distance from 0 to the horocycle
    through z based at b = e^{i theta}; equals log P(z, b)."""
    return np.log(poisson_kernel(z, theta))


def cosh_dist_to_geodesic(z, theta1: float, theta2: float):
    """cosh of the hyperbolic distance from z to the geodesic with endpoints
    e^{i theta1}, e^{i theta2}.

    Equals 2|z-b1||z-b2| / (|b1-b2|(1-|z|^2)); always >= 1, with equality
    exactly on the geodesic.
    """
    b1, b2 = boundary_point(theta1), boundary_point(theta2)
    if abs(b1 - b2) < 1e-12:
        raise ValueError("degenerate geodesic: endpoints coincide")
    z = _check_disc_point(z)
    out = 2.0 * np.abs(z - b1) * np.abs(z - b2) / (abs(b1 - b2) * (1.0 - np.abs(z) ** 2))
    return float(out) if out.ndim == 0 else out


def boundary_derivative(m: MoebiusMap, theta):
    """|gamma'(b)| of the circle action in the angle coordinate.

    For a disc-model map this is |1/(c b + d)^2| at b = e^{i theta}; it
    satisfies the two-point identity
    |gamma b - gamma b'| = |gamma'(b)|^{1/2} |gamma'(b')|^{1/2} |b - b'|.
    """
    b = np.exp(1j * np.asarray(theta, dtype=float))
    out = np.abs(m.deriv(b))
    return float(out) if out.ndim == 0 else out


def trace_length(m: MoebiusMap) -> float:
    """Translation length 2 arccosh(|tr|/2) of a hyperbolic map."""
    kind = m.classify()
    if kind != "hyperbolic":
        raise NotHyperbolicError(kind, m.trace())
    return 2.0 * math.acosh(abs(m.trace()) / 2.0)


# -- geodesic frames -------------------------------------------------------

def geodesic_closest_point(theta1: float, theta2: float) -> complex:
    """Point of the geodesic joining e^{i theta1}, e^{i theta2} closest to 0.

    The geodesic is the circle orthogonal to the unit circle through both
    endpoints (a diameter when they are antipodal).
    """
    b1, b2 = boundary_point(theta1), boundary_point(theta2)
    if abs(b1 - b2) < 1e-12:
        raise ValueError("degenerate geodesic: endpoints coincide")
    if abs(b1 + b2) < 1e-12:
        return 0.0 + 0.0j  # diameter through the origin
    # orthogonal circle: center c solves Re(conj(c) b_i) = 1 for both endpoints
    a1, a2 = b1.real, b1.imag
    c1, c2 = b2.real, b2.imag
    det = a1 * c2 - a2 * c1
    if abs(det) < 1e-14:
        # endpoints on a common diameter but not antipodal: cannot happen for
        # distinct non-antipodal unit vectors unless equal (caught above)
        raise ValueError("degenerate geodesic configuration")
    cx = (c2 - a2) / det
    cy = (a1 - c1) / det
    c = complex(cx, cy)
    r = math.sqrt(abs(c) ** 2 - 1.0)
    return c * (1.0 - r / abs(c))


def frame_to_group(frame: GeodesicFrame) -> MoebiusMap:
    """Group element g(b', b) a_t attached to a frame.

    g(b', b) carries the basepoint vector at 0 pointing toward +1 to the
    vector on the geodesic (b' -> b) at its point closest to the origin;
    the a_t factor then flows distance t toward b.
    """
    zstar = geodesic_closest_point(frame.b_minus, frame.b_plus)
    b = boundary_point(frame.b_plus)
    # translate 0 -> zstar, then rotate so that +1 maps to b
    # T_{z*}(w) = (w + z*)/(1 + conj(z*) w)
    denom = 1.0 - np.conj(zstar) * b
    e = (b - zstar) / denom  # = T_{z*}^{-1}(b), unit modulus
    e /= abs(e)
    h = cmath.sqrt(e)
    t_z = MoebiusMap(1.0 / math.sqrt(1.0 - abs(zstar) ** 2),
                     zstar / math.sqrt(1.0 - abs(zstar) ** 2),
                     np.conj(zstar) / math.sqrt(1.0 - abs(zstar) ** 2),
                     1.0 / math.sqrt(1.0 - abs(zstar) ** 2), "disc")
    rot = MoebiusMap(h, 0.0, 0.0, 1.0 / h, "disc")
    return t_z * rot * geodesic_flow(frame.t)


def group_to_frame(g: MoebiusMap) -> GeodesicFrame:
    """Inverse of :func:`frame_to_group` (up to the projective sign)."""
    if g.model != "disc":
        g = cayley_to_disc(g)
    b_plus = reduce_angle(cmath.phase(g.apply(1.0 + 0.0j)))
    b_minus = reduce_angle(cmath.phase(g.apply(-1.0 + 0.0j)))
    z0 = g.apply(0.0 + 0.0j)
    base = frame_to_group(GeodesicFrame(b_minus, b_plus, 0.0))
    w = base.inverse().apply(z0)
    # w lies on the real diameter; its signed hyperbolic distance from 0 is t
    t = 2.0 * math.atanh(max(-_MAX_ABS_Z, min(_MAX_ABS_Z, w.real)))
    return GeodesicFrame(b_minus, b_plus, t)

"""Clark measures of degree-(n,1) rational inner functions, in closed form.

For unimodular alpha the positive measure sigma_alpha with Poisson integral
Re((alpha + phi) / (alpha - phi)) lives on the level set {phi = alpha} of the
torus.  In the degree-(n,1) case that level set splits into a graph over the
first coordinate plus finitely many vertical lines, and the measure is

    integral f dsigma_alpha
        = integral f(zeta, conj(B_alpha(zeta))) W_alpha(zeta) dm(zeta)
        + sum over matched k of c_k * integral f(tau_k, zeta) dm(zeta),

where B_alpha = (pt1 - alpha p2) / (alpha p1 - pt2) is a finite Blaschke
product after the common circle zeros at the matched singularities are
cancelled, W_alpha is a ratio of trigonometric polynomials obtained from
(|p1|^2 - |p2|^2) / |pt1 - alpha p2|^2 by removing one factor |zeta - tau_k|^2
from numerator and denominator per matched singularity, and the line masses
are c_k = 1 / |d(phi)/dz1| on the line.  alpha is generic when it matches no
singular value alpha_k (no lines, B_alpha of full degree n) and exceptional
otherwise (one line per matched singularity, B_alpha of degree n - l).

Everything here is exact modulo root finding: no quadrature enters the
construction, only the verification-side integrals.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, NumericError
from .polynomials import (
    DEFAULT_TOL,
    BlaschkeProduct,
    TrigPoly,
    UniPoly,
    blaschke_from_rational,
    cplx_to_json,
)
from .quadrature import circle_nodes
from .rif import Rif

_MAX_ADAPTIVE_NODES = 2 ** 20


class AlphaKind(enum.Enum):
    GENERIC = "generic"
    EXCEPTIONAL = "exceptional"


class Unitarity(enum.Enum):
    UNITARY = "unitary"
    NOT_UNITARY = "not_unitary"


class ExtremeStatus(enum.Enum):
    EXTREME = "extreme"
    NOT_EXTREME = "not_extreme"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class AlphaClass:
    """Classification of a unimodular parameter against the singular values."""

    alpha: complex
    kind: AlphaKind
    matched: tuple[int, ...]
    distance_to_exceptional: float | None


@dataclass(frozen=True)
class ExtremeDecision:
    status: ExtremeStatus
    reason: str


def classify_alpha(rif: Rif, alpha, tol: float = DEFAULT_TOL) -> AlphaClass:
    """Match alpha against the singular values alpha_k within max(tol, 1e-8).

    alpha within 1e-6 of the circle is projected onto it; anything farther
    out is rejected.
    """
    a = complex(alpha)
    if abs(a) == 0.0 or abs(abs(a) - 1.0) > 1e-6:
        raise DomainError("alpha must be unimodular")
    a /= abs(a)
    radius = max(tol, 1e-8)
    matched = tuple(
        k for k, s in enumerate(rif.singularities) if abs(a - s.alpha) <= radius
    )
    dist = None
    if rif.singularities:
        dist = min(abs(a - s.alpha) for s in rif.singularities)
    kind = AlphaKind.EXCEPTIONAL if matched else AlphaKind.GENERIC
    return AlphaClass(a, kind, matched, dist)


@dataclass
class ClarkMeasure:
    """Closed-form Clark measure: curve part plus line part.

    weight_num / weight_den evaluate to W_alpha on the circle after the
    matched singular factors have been cancelled, so both are finite there;
    removable_points records which tau_k were cancelled.  lines holds
    (tau_k, c_k) pairs.  Node data for quadrature is cached per node count.
    """

    rif: Rif
    alpha_class: AlphaClass
    balpha: BlaschkeProduct
    weight_num: TrigPoly
    weight_den: TrigPoly
    removable_points: tuple
    lines: tuple
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def alpha(self) -> complex:
        return self.alpha_class.alpha

    def weight_eval(self, zeta) -> np.ndarray:
        """W_alpha at unimodular points; real, finite, nonnegative."""
        num = self.weight_num.eval(zeta)
        den = self.weight_den.eval(zeta)
        num = num.real if isinstance(num, np.ndarray) else num.real
        den = den.real if isinstance(den, np.ndarray) else den.real
        if np.min(den) <= 0.0:
            raise NumericError("weight denominator is not positive on the circle")
        return num / den

    def curve_z2(self, zeta):
        """Second coordinate of the level-set graph: conj(B_alpha(zeta))."""
        return np.conj(self.balpha(zeta))

    def node_data(self, count: int):
        """(nodes, curve z2 values, weight values) cached per node count."""
        data = self._cache.get(count)
        if data is None:
            z = circle_nodes(count)
            data = (z, self.curve_z2(z), self.weight_eval(z))
            self._cache[count] = data
        return data

    def total_mass(self, count: int | None = None) -> float:
        val = integrate(self, lambda z1, z2: np.ones_like(z1, dtype=complex), count)
        return float(val.real)

    def closed_form_mass(self) -> float:
        """(1 - |phi(0)|^2) / |alpha - phi(0)|^2, from the Poisson identity
        at the origin."""
        phi0 = self.rif.phi_at_origin
        return float((1.0 - abs(phi0) ** 2) / abs(self.alpha - phi0) ** 2)

    def to_json(self, count: int = 4096) -> dict:
        return {
            "alpha": cplx_to_json(self.alpha),
            "kind": self.alpha_class.kind.value,
            "blaschke": self.balpha.to_json(),
            "weight": {"num": self.weight_num.to_json(), "den": self.weight_den.to_json()},
            "removable_points": [cplx_to_json(t) for t in self.removable_points],
            "lines": [
                {"tau": cplx_to_json(t), "mass": float(c)} for t, c in self.lines
            ],
            "total_mass": self.total_mass(count),
        }


def clark_measure(rif: Rif, alpha, tol: float = DEFAULT_TOL) -> ClarkMeasure:
    """Construct sigma_alpha exactly from the singularity data.

    The Blaschke numerator and denominator are u = pt1 - alpha p2 and
    v = alpha p1 - pt2.  At a matched singularity both vanish at tau_k
    (simple zeros), so the quotient cancels; the same factor |zeta - tau_k|^2
    cancels once from the weight numerator |p1|^2 - |p2|^2 and once from the
    weight denominator |u|^2.  Line masses come from the stored derivative
    constants, c_k = 1 / |deriv_k|.
    """
    ac = classify_alpha(rif, alpha, tol)
    u = rif.pt1 - ac.alpha * rif.p2
    v = ac.alpha * rif.p1 - rif.pt2
    if u.is_zero or v.is_zero:
        raise DomainError("degenerate pencil at this alpha")
    matched = [rif.singularities[k] for k in ac.matched]
    sc = max(u.scale(), v.scale(), 1e-300)
    u_red, v_red = u, v
    for s in matched:
        u_red, ru = u_red.deflate(s.tau)
        v_red, rv = v_red.deflate(s.tau)
        if max(abs(ru), abs(rv)) > 1e-6 * sc:
            raise NumericError(
                "matched singular point is not a common zero of the pencil",
                residual=max(abs(ru), abs(rv)) / sc,
            )
    balpha = blaschke_from_rational(u_red, v_red, tol)
    expected = rif.n - len(matched)
    if balpha.degree != expected:
        hint = ""
        if ac.matched == () and ac.distance_to_exceptional < 1e-3:
            hint = (
                "; alpha is within "
                f"{ac.distance_to_exceptional:.3g} of an exceptional value "
                "and the curve data is numerically inseparable from it"
            )
        raise NumericError(
            f"Blaschke degree {balpha.degree} instead of {expected}{hint}"
        )
    wnum = TrigPoly.modulus_squared(rif.p1) - TrigPoly.modulus_squared(rif.p2)
    for s in matched:
        wnum = wnum.divide_circle_factor(s.tau)
    wden = TrigPoly.modulus_squared(u_red)
    lines = tuple((s.tau, 1.0 / abs(s.deriv)) for s in matched)
    return ClarkMeasure(
        rif=rif,
        alpha_class=ac,
        balpha=balpha,
        weight_num=wnum,
        weight_den=wden,
        removable_points=tuple(s.tau for s in matched),
        lines=lines,
    )


def integrate(cm: ClarkMeasure, f, count: int | None = 4096) -> complex:
    """Integral of f against the Clark measure.

    f must be vectorized: called as f(z1_array, z2_array) it returns an
    array of values.  The curve part is a uniform rule against the weight;
    each line adds c_k times a uniform rule in the second coordinate.  With
    count=None the node count doubles from 4096 until two successive values
    agree to 1e-9 (relative), up to 2**20 nodes.
    """
    if count is not None:
        return _integrate_fixed(cm, f, int(count))
    count = 4096
    prev = _integrate_fixed(cm, f, count)
    while count < _MAX_ADAPTIVE_NODES:
        count *= 2
        cur = _integrate_fixed(cm, f, count)
        if abs(cur - prev) <= 1e-9 * max(1.0, abs(cur)):
            return cur
        prev = cur
    raise NumericError("adaptive quadrature did not settle", residual=abs(prev))


def _integrate_fixed(cm: ClarkMeasure, f, count: int) -> complex:
    z, z2, w = cm.node_data(count)
    vals = np.asarray(f(z, z2), dtype=complex)
    total = complex(np.mean(vals * w))
    for tau, mass in cm.lines:
        line_vals = np.asarray(f(np.full_like(z, tau), z), dtype=complex)
        total += mass * complex(np.mean(line_vals))
    return total


def classify_unitary(rif: Rif, alpha, tol: float = DEFAULT_TOL) -> Unitarity:
    """The Clark embedding J_alpha is unitary exactly for generic alpha."""
    ac = classify_alpha(rif, alpha, tol)
    if ac.kind is AlphaKind.GENERIC:
        return Unitarity.UNITARY
    return Unitarity.NOT_UNITARY


def classify_extreme(rif: Rif, alpha, tol: float = DEFAULT_TOL) -> ExtremeDecision:
    """Extreme-point status of the normalized sigma_alpha among positive
    pluriharmonic probability measures.

    The classification assumes phi(0) = 0, which makes sigma_alpha itself a
    probability measure; other inputs return Undetermined.  Exceptional
    alpha gives a non-extreme measure (the line part splits off).  Generic
    alpha gives an extreme measure when the resultant is saturated and the
    reflection keeps full degree; remaining generic cases are outside the
    certified criteria and return Undetermined.
    """
    phi0 = rif.phi_at_origin
    if abs(phi0) > max(tol, 1e-10):
        return ExtremeDecision(
            ExtremeStatus.UNDETERMINED,
            "criteria require phi(0) = 0, which fails here",
        )
    ac = classify_alpha(rif, alpha, tol)
    if ac.kind is AlphaKind.EXCEPTIONAL:
        return ExtremeDecision(
            ExtremeStatus.NOT_EXTREME,
            "exceptional alpha: the line part splits off sigma_alpha",
        )
    try:
        saturated = is_saturated_cached(rif, tol)
    except NumericError:
        return ExtremeDecision(
            ExtremeStatus.UNDETERMINED, "saturation test did not certify"
        )
    deg_p = max(rif.p1.degree, rif.p2.degree)
    deg_pt = max(rif.pt1.degree, rif.pt2.degree)
    if saturated and deg_p == deg_pt:
        return ExtremeDecision(
            ExtremeStatus.EXTREME,
            "generic alpha with a saturated resultant and degree-preserving reflection",
        )
    return ExtremeDecision(
        ExtremeStatus.UNDETERMINED,
        "generic alpha but the saturation criterion does not apply",
    )


_SATURATION_CACHE: dict[int, bool] = {}


def is_saturated_cached(rif: Rif, tol: float = DEFAULT_TOL) -> bool:
    from .rif import is_saturated

    key = id(rif)
    if key not in _SATURATION_CACHE:
        _SATURATION_CACHE[key] = is_saturated(rif, tol)
    return _SATURATION_CACHE[key]


@dataclass(frozen=True)
class LevelSetSample:
    """Discrete sample of the unimodular level set {phi = alpha} on T^2.

    curve is an (N, 2) float array of angle pairs (theta1, theta2) along the
    graph branch; line_abscissae lists theta1 for each vertical line.  All
    angles are wrapped to [0, 2 pi).
    """

    alpha: complex
    curve: np.ndarray
    line_abscissae: tuple


def level_set_sample(rif: Rif, alpha, n_points: int = 512,
                     tol: float = DEFAULT_TOL) -> LevelSetSample:
    cm = clark_measure(rif, alpha, tol)
    theta1 = 2.0 * np.pi * np.arange(int(n_points)) / int(n_points)
    z = np.exp(1j * theta1)
    theta2 = np.mod(np.angle(cm.curve_z2(z)), 2.0 * np.pi)
    curve = np.column_stack([theta1, theta2])
    lines = tuple(
        float(np.mod(math.atan2(t.imag, t.real), 2.0 * math.pi))
        for t in cm.removable_points
    )
    return LevelSetSample(cm.alpha, curve, lines)

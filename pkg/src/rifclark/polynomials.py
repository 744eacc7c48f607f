"""Univariate polynomial engine: root finding with multiplicities, Laurent
trigonometric polynomials on the unit circle, spectral (Fejer-Riesz)
factorization, and finite Blaschke products.

Conventions used across the package:

* ``UniPoly`` coefficients are ascending, ``coeffs[k]`` multiplies ``z**k``.
* Complex scalars serialize to JSON as two-element arrays ``[re, im]``.
* "Unimodular within tol" means ``abs(abs(z) - 1) <= tol``.

The root finder is a simultaneous Aberth-Ehrlich iteration with a companion
matrix fallback, certified by backward-stable residuals.  Structurally
multiple roots on the unit circle are a core case here: boundary zeros of
nonnegative trigonometric polynomials always have even order, and a 2m-fold
root scatters under coefficient roundoff into a cluster of radius roughly
eps**(1/(2m)), about 1.5e-4 for a quadruple root.  That is far wider than the
accuracy of simple roots, so circle-zero extraction classifies roots inside a
generous band around the circle, clusters them by angle, polishes each
cluster with a Newton step on an angular derivative, and only then certifies
the zero and its multiplicity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, NumericError

# Default residual tolerance used by root certification.
DEFAULT_TOL = 1e-8
# Two roots closer than this are reported as one root with multiplicity.
CLUSTER_RADIUS = 1e-6
# Roots within this band of the unit circle are circle-zero candidates.
CIRCLE_BAND = 1e-3
# A candidate circle zero must drive its first m angular derivatives below
# this relative threshold to be certified; genuine zeros land near machine
# precision while near-circle mirror pairs stall around 1e-8.
_CERT_REL = 1e-10
# Leading coefficients below this relative size are treated as zero.
_LEAD_TRIM = 1e-13
_CERT_NODES = 512
_EPS = float(np.finfo(float).eps)


def cplx_to_json(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def cplx_from_json(v) -> complex:
    return complex(float(v[0]), float(v[1]))


def _unit_nodes(count: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(count) / count)


def _horner(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    out = np.zeros_like(z, dtype=complex)
    for c in coeffs[::-1]:
        out = out * z + c
    return out


def _abs_bound(abs_coeffs: np.ndarray, abs_z: np.ndarray) -> np.ndarray:
    """sum_k |c_k| |z|**k, the natural backward-error scale for p(z)."""
    out = np.zeros_like(abs_z, dtype=float)
    for a in abs_coeffs[::-1]:
        out = out * abs_z + a
    return out


class UniPoly:
    """Dense univariate polynomial with complex coefficients.

    Coefficients are ascending.  Trailing exactly-zero coefficients are
    trimmed on construction so the degree can be read off the array length;
    the zero polynomial keeps an empty array and reports degree ``-inf``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.atleast_1d(np.asarray(coeffs, dtype=complex)).ravel()
        nz = np.flatnonzero(c)
        if nz.size:
            self.coeffs = c[: nz[-1] + 1].copy()
        else:
            self.coeffs = np.zeros(0, dtype=complex)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs.size else -math.inf

    @property
    def is_zero(self) -> bool:
        return self.coeffs.size == 0

    def scale(self) -> float:
        return float(np.max(np.abs(self.coeffs))) if self.coeffs.size else 0.0

    def __call__(self, z):
        zz = np.asarray(z, dtype=complex)
        out = _horner(self.coeffs, zz)
        if np.ndim(z) == 0:
            return complex(out)
        return out

    def derivative(self) -> "UniPoly":
        if self.coeffs.size <= 1:
            return UniPoly([])
        k = np.arange(1, self.coeffs.size)
        return UniPoly(self.coeffs[1:] * k)

    def conj_reflect(self, n: int) -> "UniPoly":
        """z**n * conj(self(1 / conj(z))), the degree-n reflection.

        Requires deg <= n; lower-degree input pads with zeros, so the
        reflection can raise the degree (a zero constant term reflects to a
        zero leading term and is trimmed back on reconstruction).
        """
        if self.degree > n:
            raise DomainError("reflection order smaller than the degree")
        padded = np.zeros(n + 1, dtype=complex)
        padded[: self.coeffs.size] = self.coeffs
        return UniPoly(np.conj(padded[::-1]))

    def deflate(self, root) -> tuple["UniPoly", complex]:
        """Synthetic division by (z - root); returns (quotient, remainder)."""
        if self.is_zero:
            return UniPoly([]), 0j
        r = complex(root)
        n = self.coeffs.size - 1
        q = np.empty(n, dtype=complex)
        acc = 0j
        for k in range(n, 0, -1):
            acc = self.coeffs[k] + acc * r
            q[k - 1] = acc
        rem = self.coeffs[0] + acc * r
        return UniPoly(q), complex(rem)

    @staticmethod
    def from_roots(roots_list, leading=1.0) -> "UniPoly":
        c = np.array([complex(leading)], dtype=complex)
        for r in roots_list:
            c = np.convolve(c, np.array([-complex(r), 1.0], dtype=complex))
        return UniPoly(c)

    def padded(self, length: int) -> np.ndarray:
        """Coefficient array extended with zeros to the requested length."""
        if self.coeffs.size > length:
            raise DomainError("padding length smaller than the coefficient count")
        out = np.zeros(length, dtype=complex)
        out[: self.coeffs.size] = self.coeffs
        return out

    def __add__(self, other):
        other = other if isinstance(other, UniPoly) else UniPoly([complex(other)])
        n = max(self.coeffs.size, other.coeffs.size, 1)
        return UniPoly(self.padded(n) + other.padded(n))

    def __sub__(self, other):
        other = other if isinstance(other, UniPoly) else UniPoly([complex(other)])
        n = max(self.coeffs.size, other.coeffs.size, 1)
        return UniPoly(self.padded(n) - other.padded(n))

    def __neg__(self):
        return UniPoly(-self.coeffs)

    def __mul__(self, other):
        if isinstance(other, UniPoly):
            if self.is_zero or other.is_zero:
                return UniPoly([])
            return UniPoly(np.convolve(self.coeffs, other.coeffs))
        return UniPoly(self.coeffs * complex(other))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return np.array_equal(self.coeffs, other.coeffs)

    def __repr__(self):
        return f"UniPoly({np.round(self.coeffs, 12).tolist()})"

    def to_json(self) -> dict:
        return {"coeffs": [cplx_to_json(c) for c in self.coeffs]}

    @staticmethod
    def from_json(obj) -> "UniPoly":
        return UniPoly([cplx_from_json(v) for v in obj["coeffs"]])


def _cluster_members(points, radius: float) -> list[list[complex]]:
    """Greedy clustering by centroid distance; deterministic via sorting."""
    pts = sorted((complex(p) for p in points), key=lambda w: (w.real, w.imag))
    clusters: list[list[complex]] = []
    centroids: list[complex] = []
    for p in pts:
        best, best_d = -1, radius
        for i, c in enumerate(centroids):
            d = abs(p - c)
            if d <= best_d:
                best, best_d = i, d
        if best >= 0:
            clusters[best].append(p)
            centroids[best] = sum(clusters[best]) / len(clusters[best])
        else:
            clusters.append([p])
            centroids.append(p)
    return clusters


def _aberth(c: np.ndarray, max_iter: int = 600) -> np.ndarray:
    """Simultaneous Aberth-Ehrlich iteration on ascending coefficients.

    Assumes c[0] != 0 and c[-1] != 0.  Multiple roots converge linearly to a
    cluster whose residuals hit the backward-stable floor, which is all the
    caller needs; no deflation is performed.
    """
    n = len(c) - 1
    lead = c[-1]
    ac = np.abs(c)
    # geometric-mean style initial radius, clipped to a sane range
    if c[0] != 0:
        r0 = float(abs(c[0] / lead)) ** (1.0 / n)
    else:
        r0 = 1.0
    r0 = min(max(r0, 0.2), 4.0)
    k = np.arange(n)
    z = r0 * np.exp(2j * np.pi * (k + 0.37) / n + 0.41j)
    floor = 8.0 * _EPS * (n + 1)
    for _ in range(max_iter):
        pv = _horner(c, z)
        dv = _horner(np.arange(1, n + 1) * c[1:], z)
        bound = _abs_bound(ac, np.abs(z))
        done = np.abs(pv) <= floor * bound
        if done.all():
            break
        safe_dv = np.where(dv == 0, 1.0, dv)
        w = np.where(dv == 0, 0.1 + 0.1j, pv / safe_dv)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        s = (1.0 / diff).sum(axis=1)
        denom = 1.0 - w * s
        step = np.where(np.abs(denom) < 1e-12, w, w / np.where(denom == 0, 1.0, denom))
        step = np.where(done, 0.0, step)
        z = z - step
        if float(np.abs(step).max()) <= 1e-16 * (1.0 + float(np.abs(z).max())):
            break
    return z


def roots(p, tol: float = DEFAULT_TOL, cluster_radius: float = CLUSTER_RADIUS,
          max_iter: int = 600) -> list[tuple[complex, int]]:
    """All roots of p as (root, multiplicity) pairs, sorted by (re, im).

    Roots closer than cluster_radius merge into one entry whose location is
    the cluster centroid.  Every reported root r is certified against the
    backward-stable residual bound |p(r)| <= max(tol, 1e-10) * sum |c_k||r|^k;
    if the primary iteration cannot certify, a companion-matrix fallback is
    tried, and failure of both raises NumericError.
    """
    q = p if isinstance(p, UniPoly) else UniPoly(p)
    if q.is_zero:
        raise DomainError("the zero polynomial has no well-defined root set")
    c = q.coeffs
    m = float(np.max(np.abs(c)))
    top = len(c) - 1
    while top > 0 and abs(c[top]) <= _LEAD_TRIM * m:
        top -= 1
    c = c[: top + 1]
    if len(c) == 1:
        return []
    out: list[tuple[complex, int]] = []
    k0 = 0
    while k0 < len(c) - 1 and c[k0] == 0:
        k0 += 1
    if k0:
        out.append((0j, k0))
        c = c[k0:]
    if len(c) > 1:
        ac = np.abs(c)
        cap = max(tol, 1e-10)

        def _certify(cands):
            clusters = _cluster_members(cands, cluster_radius)
            result = []
            worst = 0.0
            for members in clusters:
                r = sum(members) / len(members)
                resid = abs(complex(_horner(c, np.array([r]))[0]))
                bound = float(_abs_bound(ac, np.array([abs(r)]))[0])
                worst = max(worst, resid / max(bound, 1e-300))
                result.append((r, len(members)))
            return result, worst

        found, worst = _certify(_aberth(c, max_iter))
        if worst > cap:
            found, worst = _certify(np.roots(c[::-1]))
            if worst > cap:
                raise NumericError("root finding did not converge", residual=worst)
        out.extend(found)
    out.sort(key=lambda rm: (rm[0].real, rm[0].imag))
    return out


def unimodular_common_roots(a, b, tol: float = DEFAULT_TOL) -> list[complex]:
    """Common zeros of a and b lying on the unit circle (within tol).

    Symmetric in the two arguments.  Matching is by proximity of the two
    root sets; matched points are projected onto the circle.  Each common
    point is reported once regardless of multiplicities.
    """
    band = max(tol, 1e-8)
    pa = a if isinstance(a, UniPoly) else UniPoly(a)
    pb = b if isinstance(b, UniPoly) else UniPoly(b)
    if pa.is_zero or pb.is_zero or pa.degree < 1 or pb.degree < 1:
        return []
    ra = [r for r, _ in roots(pa, tol) if abs(abs(r) - 1.0) <= band]
    rb = [r for r, _ in roots(pb, tol) if abs(abs(r) - 1.0) <= band]
    hits = []
    for u in ra:
        for v in rb:
            if abs(u - v) <= 1e-6:
                g = (u + v) / 2.0
                hits.append(g / abs(g))
    out: list[complex] = []
    for members in _cluster_members(hits, 1e-9):
        g = sum(members) / len(members)
        out.append(g / abs(g))
    out.sort(key=lambda w: (w.real, w.imag))
    return out


def cancel_common_unimodular(num, den, tol: float = DEFAULT_TOL):
    """Deflate every common circle zero out of the pair.

    Returns (num_reduced, den_reduced, cancelled_points); repeated common
    zeros are removed one layer per pass until none remain.  A deflation
    remainder above 1e-6 of the coefficient scale raises NumericError since
    it means the claimed common zero was not actually a zero.
    """
    num = num if isinstance(num, UniPoly) else UniPoly(num)
    den = den if isinstance(den, UniPoly) else UniPoly(den)
    cancelled: list[complex] = []
    guard = max(num.coeffs.size, den.coeffs.size, 1)
    for _ in range(guard):
        common = unimodular_common_roots(num, den, tol)
        if not common:
            break
        for g in common:
            sc = max(num.scale(), den.scale(), 1e-300)
            num2, rn = num.deflate(g)
            den2, rd = den.deflate(g)
            if max(abs(rn), abs(rd)) > 1e-6 * sc:
                raise NumericError(
                    "cancellation left a large remainder",
                    residual=max(abs(rn), abs(rd)) / sc,
                )
            num, den = num2, den2
            cancelled.append(g)
    cancelled.sort(key=lambda w: (w.real, w.imag))
    return num, den, cancelled


class TrigPoly:
    """Laurent trigonometric polynomial t(zeta) = sum_{|k| <= d} c_k zeta^k.

    Stored densely with ``coeffs[k + d]`` multiplying ``zeta**k``.  Negative
    powers evaluate through 1/zeta, so evaluation is defined off the circle
    as the Laurent extension.  Hermitian symmetry (c_{-k} = conj(c_k)) makes
    t real on the circle; ``modulus_squared`` guarantees it and consumers
    that need it check ``hermitian_defect``.
    """

    __slots__ = ("coeffs", "d")

    def __init__(self, coeffs, d: int | None = None):
        c = np.atleast_1d(np.asarray(coeffs, dtype=complex)).ravel()
        if d is None:
            if c.size % 2 == 0:
                raise DomainError("even coefficient count needs an explicit band")
            d = (c.size - 1) // 2
        if c.size != 2 * d + 1:
            raise DomainError("coefficient count does not match the band")
        self.coeffs = c.copy()
        self.d = int(d)

    @staticmethod
    def modulus_squared(p: UniPoly) -> "TrigPoly":
        """|p(zeta)|^2 on the circle, via coefficient autocorrelation."""
        a = p.coeffs
        if a.size == 0:
            return TrigPoly([0.0], 0)
        d = a.size - 1
        c = np.zeros(2 * d + 1, dtype=complex)
        for k in range(d + 1):
            v = np.sum(a[k:] * np.conj(a[: a.size - k]))
            c[d + k] = v
            c[d - k] = np.conj(v)
        return TrigPoly(c, d)

    @property
    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def scale(self) -> float:
        return float(np.max(np.abs(self.coeffs))) if self.coeffs.size else 0.0

    def hermitian_defect(self) -> float:
        return float(np.max(np.abs(self.coeffs - np.conj(self.coeffs[::-1]))))

    def eval(self, zeta):
        zz = np.asarray(zeta, dtype=complex)
        pos = _horner(self.coeffs[self.d:], zz)
        if self.d:
            w = 1.0 / zz
            neg_coeffs = np.concatenate(([0.0], self.coeffs[: self.d][::-1]))
            neg = _horner(neg_coeffs, w)
        else:
            neg = 0.0
        out = pos + neg
        if np.ndim(zeta) == 0:
            return complex(out)
        return out

    __call__ = eval

    def real_eval(self, zeta):
        out = self.eval(zeta)
        return out.real if isinstance(out, np.ndarray) else out.real

    def theta_eval(self, theta: float, order: int = 0) -> complex:
        """order-th derivative of theta |-> t(e^{i theta}) at a single angle."""
        k = np.arange(-self.d, self.d + 1)
        fac = (1j * k) ** order if order else np.ones_like(k, dtype=complex)
        return complex(np.sum(self.coeffs * fac * np.exp(1j * k * theta)))

    def derivative_scale(self, order: int) -> float:
        """sup bound sum |c_k| |k|^order for the order-th angular derivative."""
        k = np.abs(np.arange(-self.d, self.d + 1)).astype(float)
        fac = k ** order if order else np.ones_like(k)
        return float(np.sum(np.abs(self.coeffs) * fac))

    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        d = max(self.d, other.d)
        a = np.zeros(2 * d + 1, dtype=complex)
        b = np.zeros(2 * d + 1, dtype=complex)
        a[d - self.d: d + self.d + 1] = self.coeffs
        b[d - other.d: d + other.d + 1] = other.coeffs
        return TrigPoly(a + b, d)

    def __sub__(self, other: "TrigPoly") -> "TrigPoly":
        return self + (-1.0) * other

    def __mul__(self, scalar) -> "TrigPoly":
        return TrigPoly(self.coeffs * complex(scalar), self.d)

    __rmul__ = __mul__

    def as_poly(self) -> tuple[UniPoly, int]:
        """(P, d_eff) with P(z) = z**d_eff * t(z) after symmetric band trim.

        Both extreme coefficients must be negligible to shrink the band, so
        P keeps degree exactly 2 * d_eff with nonzero ends (unless t = 0).
        """
        m = self.scale()
        if m == 0.0:
            return UniPoly([]), 0
        d_eff = self.d
        while d_eff > 0:
            hi = abs(self.coeffs[self.d + d_eff])
            lo = abs(self.coeffs[self.d - d_eff])
            if hi <= _LEAD_TRIM * m and lo <= _LEAD_TRIM * m:
                d_eff -= 1
            else:
                break
        return UniPoly(self.coeffs[self.d - d_eff: self.d + d_eff + 1]), d_eff

    def divide_circle_factor(self, tau) -> "TrigPoly":
        """Exact division by |zeta - tau|^2 for unimodular tau.

        For |z| = 1, z * |z - tau|^2 = -conj(tau) * (z - tau)^2, so dividing
        shifts the band down by one and amounts to deflating z**d * t(z)
        twice at tau and rescaling by -tau.  Nonnegligible deflation
        remainders mean the factor does not divide and raise NumericError.
        """
        t = complex(tau)
        if abs(abs(t) - 1.0) > 1e-6:
            raise DomainError("division point must lie on the unit circle")
        if self.d < 1:
            raise DomainError("band too small to divide by a circle factor")
        full = UniPoly(self.coeffs)
        sc = max(self.scale(), 1e-300)
        q1, r1 = full.deflate(t)
        q2, r2 = q1.deflate(t)
        worst = max(abs(r1), abs(r2))
        if worst > 1e-7 * sc * (self.d + 1):
            raise NumericError("circle factor does not divide", residual=worst / sc)
        s = (-t) * q2
        arr = np.zeros(2 * (self.d - 1) + 1, dtype=complex)
        arr[: s.coeffs.size] = s.coeffs
        arr = 0.5 * (arr + np.conj(arr[::-1]))
        return TrigPoly(arr, self.d - 1)

    def circle_zeros(self, tol: float = DEFAULT_TOL) -> list[tuple[complex, int]]:
        """Certified zeros of t on the unit circle with multiplicities."""
        circle, _ = _split_circle_roots(self, tol)
        return circle

    def min_on_circle(self, count: int = _CERT_NODES) -> float:
        return float(self.eval(_unit_nodes(count)).real.min())

    def to_json(self) -> dict:
        return {"d": self.d, "coeffs": [cplx_to_json(c) for c in self.coeffs]}

    @staticmethod
    def from_json(obj) -> "TrigPoly":
        return TrigPoly([cplx_from_json(v) for v in obj["coeffs"]], int(obj["d"]))


def _polish_circle_zero(t: TrigPoly, theta0: float, m: int) -> float | None:
    """Newton refinement of a candidate order-m circle zero of t.

    Iterates on the (m-1)-th angular derivative, whose zero at the cluster
    center is simple.  Returns the refined angle, or None if the iteration
    runs away from the cluster (the candidate was not a circle zero).
    """
    th = float(theta0)
    for _ in range(60):
        h = t.theta_eval(th, m - 1).real
        hp = t.theta_eval(th, m).real
        if hp == 0.0:
            break
        step = h / hp
        th -= step
        if abs(step) <= 1e-15:
            break
        if abs(th - theta0) > 2 * CIRCLE_BAND + 0.01:
            return None
    return th


def _split_circle_roots(t: TrigPoly, tol: float):
    """(certified circle zeros, remaining roots) of z**d_eff * t(z).

    Near-circle roots are clustered by angle inside CIRCLE_BAND; each cluster
    is polished and certified by driving the first m angular derivatives to
    the machine floor.  Clusters that fail certification (for example a
    mirror pair of off-circle roots straddling the circle) are demoted back
    to plain roots so the caller can classify them by modulus.
    """
    if t.hermitian_defect() > 1e-9 * max(1.0, t.scale()):
        raise DomainError("not real on the circle")
    P, d_eff = t.as_poly()
    if d_eff == 0 or P.degree < 1:
        return [], []
    flat: list[complex] = []
    for r, mult in roots(P, tol, cluster_radius=1e-12):
        flat.extend([r] * mult)
    near = [r for r in flat if abs(abs(r) - 1.0) <= CIRCLE_BAND]
    far = [r for r in flat if abs(abs(r) - 1.0) > CIRCLE_BAND]
    circle: list[tuple[complex, int]] = []
    for members in _cluster_members([r / abs(r) for r in near], CIRCLE_BAND):
        m = len(members)
        center = sum(members) / m
        theta = _polish_circle_zero(t, math.atan2(center.imag, center.real), m)
        ok = theta is not None
        if ok:
            for j in range(m):
                resid = abs(t.theta_eval(theta, j))
                if resid > _CERT_REL * max(t.derivative_scale(j), 1.0):
                    ok = False
                    break
        if ok:
            circle.append((complex(math.cos(theta), math.sin(theta)), m))
        else:
            # demote: these were off-circle roots that strayed into the band
            far.extend(members)
    circle.sort(key=lambda zm: math.atan2(zm[0].imag, zm[0].real) % (2 * math.pi))
    return circle, far


def fejer_riesz(t: TrigPoly, tol: float = DEFAULT_TOL) -> UniPoly:
    """Spectral factor Q with |Q(zeta)|^2 = t(zeta) on the unit circle.

    Requires t real and nonnegative on the circle.  Q collects the strictly
    inside roots of z**d * t(z) plus half of each (necessarily even-order)
    circle zero; the leading coefficient is normalized positive real.  The
    factorization is certified against t on a node grid before returning.
    """
    if t.is_zero:
        raise DomainError("cannot factor the zero polynomial")
    sc = t.scale()
    if t.hermitian_defect() > max(tol, 1e-10) * sc:
        raise DomainError("not real on the circle")
    nodes = _unit_nodes(_CERT_NODES)
    tv = t.eval(nodes).real
    tmax = max(float(np.abs(tv).max()), 1e-300)
    if float(tv.min()) < -max(tol, 1e-10) * max(1.0, tmax):
        raise DomainError("negative on the circle")
    P, d_eff = t.as_poly()
    if d_eff == 0:
        c0 = float(t.coeffs[t.d].real)
        if c0 <= 0.0:
            raise DomainError("negative on the circle")
        return UniPoly([math.sqrt(c0)])
    circle, far = _split_circle_roots(t, tol)
    for _, m in circle:
        if m % 2:
            raise NumericError("odd-order circle zero in a nonnegative trig polynomial")
    inside = sorted((r for r in far if abs(r) < 1.0), key=lambda w: (w.real, w.imag))
    half = sum(m // 2 for _, m in circle)
    if 2 * len(inside) != len(far) or len(inside) + half != d_eff:
        raise NumericError("root pairing across the circle failed")
    q_roots = list(inside)
    for tau, m in circle:
        q_roots.extend([tau] * (m // 2))
    q0 = UniPoly.from_roots(q_roots, 1.0)
    q2 = np.abs(q0(nodes)) ** 2
    mask = q2 >= 1e-8 * float(q2.max())
    amp2 = float(np.median(tv[mask] / q2[mask]))
    if not amp2 > 0.0:
        raise NumericError("amplitude fit failed")
    q = math.sqrt(amp2) * q0
    resid = float(np.max(np.abs(np.abs(q(nodes)) ** 2 - tv)))
    if resid > max(tol, 1e-8) * max(1.0, tmax):
        raise NumericError("factorization certificate failed", residual=resid)
    return q


@dataclass(frozen=True)
class BlaschkeProduct:
    """Finite Blaschke product gamma * prod (z - a) / (1 - conj(a) z).

    The constant is unimodular (projected on construction, rejected if off
    by more than 1e-6) and every zero lies strictly inside the open disk.
    """

    constant: complex
    zeros: tuple = field(default=())

    def __post_init__(self):
        g = complex(self.constant)
        if abs(abs(g) - 1.0) > 1e-6:
            raise DomainError("Blaschke constant must be unimodular")
        object.__setattr__(self, "constant", g / abs(g))
        zs = tuple(complex(a) for a in self.zeros)
        for a in zs:
            if abs(a) >= 1.0:
                raise DomainError("Blaschke zero outside the open unit disk")
        object.__setattr__(self, "zeros", zs)

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def eval(self, z):
        zz = np.asarray(z, dtype=complex)
        out = np.full(zz.shape, self.constant, dtype=complex)
        for a in self.zeros:
            out = out * (zz - a) / (1.0 - np.conj(a) * zz)
        if np.ndim(z) == 0:
            return complex(out)
        return out

    __call__ = eval

    def to_json(self) -> dict:
        return {
            "constant": cplx_to_json(self.constant),
            "zeros": [cplx_to_json(a) for a in self.zeros],
        }

    @staticmethod
    def from_json(obj) -> "BlaschkeProduct":
        return BlaschkeProduct(
            cplx_from_json(obj["constant"]),
            tuple(cplx_from_json(a) for a in obj["zeros"]),
        )


def blaschke_from_rational(num, den, tol: float = DEFAULT_TOL) -> BlaschkeProduct:
    """Blaschke product representing num/den after circle cancellation.

    num and den must have equal modulus on the circle; common circle zeros
    are cancelled first.  After cancellation the numerator zeros must be
    strictly inside the disk and the denominator zero free on the closed
    disk, otherwise the quotient is not a Blaschke product and DomainError
    is raised.
    """
    num = num if isinstance(num, UniPoly) else UniPoly(num)
    den = den if isinstance(den, UniPoly) else UniPoly(den)
    if num.is_zero or den.is_zero:
        raise DomainError("zero numerator or denominator")
    nodes = _unit_nodes(_CERT_NODES)
    nv = np.abs(num(nodes))
    dv = np.abs(den(nodes))
    sc = max(float(nv.max()), float(dv.max()), 1e-300)
    if float(np.max(np.abs(nv - dv))) > 4 * max(tol, 1e-8) * sc:
        raise DomainError("modulus mismatch on the circle")
    num2, den2, _ = cancel_common_unimodular(num, den, tol)
    zeros: list[complex] = []
    if num2.degree >= 1:
        for r, m in roots(num2, tol):
            if abs(r) >= 1.0:
                raise DomainError("numerator zero on or outside the circle after cancellation")
            zeros.extend([r] * m)
    if den2.degree >= 1:
        for r, _ in roots(den2, tol):
            if abs(r) <= 1.0:
                raise DomainError("denominator zero inside the closed disk")
    zeros.sort(key=lambda w: (w.real, w.imag))
    b0 = BlaschkeProduct(1.0, tuple(zeros))
    ratio = num2(nodes) / den2(nodes) / b0(nodes)
    gm = complex(ratio.mean())
    if float(np.max(np.abs(ratio - gm))) > 4 * max(tol, 1e-8) * max(1.0, abs(gm)):
        raise DomainError("quotient is not a constant multiple of a Blaschke product")
    if abs(abs(gm) - 1.0) > 4 * max(tol, 1e-8):
        raise DomainError("quotient constant is not unimodular")
    return BlaschkeProduct(gm / abs(gm), tuple(zeros))

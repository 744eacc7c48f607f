"""Sums-of-squares data attached to a degree-(n,1) rational inner function.

The defining identity, over z, w in C^2, is

    p(z) conj(p(w)) - ptilde(z) conj(ptilde(w))
        = (1 - z1 conj(w1)) sum_j R_j(z) conj(R_j(w))
        + (1 - z2 conj(w2)) Q(z1) conj(Q(w1)),

with deg Q <= (n, 0) and deg R_j <= (n-1, 1).  Q is determined up to phase
by |Q|^2 = |p1|^2 - |p2|^2 on the circle, a nonnegative trigonometric
polynomial, so it comes from spectral factorization.  For an exceptional
alpha matching singularities tau_1..tau_l, the first l members of an
orthonormal R-family can be written down in closed form from the reduced
Blaschke pencil; they vanish on the graph part of the level set and are
supported on the lines, which is what the orthonormality check verifies
against the Clark measure.  The closed-form list is a partial family
(l of n pieces), so it is checked by orthonormality, not by the full
two-squares identity; complete documented decompositions are checked by
sos_residual.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericError
from .polynomials import DEFAULT_TOL, TrigPoly, UniPoly, fejer_riesz
from .clark import AlphaKind, ClarkMeasure, classify_alpha, clark_measure
from .rif import Rif


@dataclass(frozen=True)
class SosPiece:
    """One bidegree-(*, 1) summand R(z) = r(z1) + z2 * q(z1)."""

    r: UniPoly
    q: UniPoly

    def eval(self, z1, z2):
        return self.r(z1) + np.asarray(z2, dtype=complex) * self.q(z1)

    def to_json(self) -> dict:
        return {"r": self.r.to_json(), "q": self.q.to_json()}

    @staticmethod
    def from_json(obj) -> "SosPiece":
        return SosPiece(UniPoly.from_json(obj["r"]), UniPoly.from_json(obj["q"]))


@dataclass(frozen=True)
class AglerPieces:
    """A bundle of squares: Q plus a (possibly partial) R list."""

    Q: UniPoly
    R: tuple
    provenance: str

    def to_json(self) -> dict:
        return {
            "Q": self.Q.to_json(),
            "R": [piece.to_json() for piece in self.R],
            "provenance": self.provenance,
        }


def compute_Q(rif: Rif, tol: float = DEFAULT_TOL) -> UniPoly:
    """The one-variable square: |Q|^2 = |p1|^2 - |p2|^2 on the circle.

    Normalized with a positive real leading coefficient; any unimodular
    multiple satisfies the same identity.
    """
    t = TrigPoly.modulus_squared(rif.p1) - TrigPoly.modulus_squared(rif.p2)
    return fejer_riesz(t, tol)


def _reduced_pencil(rif: Rif, alpha, tol: float):
    """(alpha_class, u_red, v_red): the Blaschke pencil with matched
    singular roots deflated out of numerator and denominator."""
    ac = classify_alpha(rif, alpha, tol)
    u = rif.pt1 - ac.alpha * rif.p2
    v = ac.alpha * rif.p1 - rif.pt2
    sc = max(u.scale(), v.scale(), 1e-300)
    for k in ac.matched:
        tau = rif.singularities[k].tau
        u, ru = u.deflate(tau)
        v, rv = v.deflate(tau)
        if max(abs(ru), abs(rv)) > 1e-6 * sc:
            raise NumericError("pencil deflation left a large remainder")
    return ac, u, v


def exceptional_R(rif: Rif, alpha, tol: float = DEFAULT_TOL) -> list[SosPiece]:
    """Closed-form orthonormal R pieces for an exceptional alpha.

    With b1 / b2 the reduced pencil (numerator / denominator of B_alpha
    before normalization) and tau_1..tau_l the matched points,

        R_j = d_j * (b2(z1) - z2 * b1(z1)) * prod_{k != j} (z1 - tau_k),

    where d_j > 0 makes c_j * ||(R_j / p)(tau_j, .)||^2 = 1.  The trace of
    R_j / p on its own line is constant because numerator and denominator
    share the z2-root lambda_j, so the Hardy norm is that constant's
    modulus and d_j is computed exactly.
    """
    ac, b1, b2 = _reduced_pencil(rif, alpha, tol)
    if ac.kind is not AlphaKind.EXCEPTIONAL:
        raise DomainError("alpha is generic; the closed-form R list is empty there")
    matched = [rif.singularities[k] for k in ac.matched]
    out: list[SosPiece] = []
    sc = max(b1.scale(), b2.scale(), 1e-300)
    for j, s in enumerate(matched):
        extra = UniPoly.from_roots(
            [m.tau for i, m in enumerate(matched) if i != j], 1.0
        )
        b1t = b1(s.tau)
        p2t = rif.p2(s.tau)
        if abs(b1t) <= 1e-10 * sc or abs(p2t) <= 1e-10 * max(rif.p.scale(), 1e-300):
            raise NumericError("degenerate pencil value on a matched line")
        # (R_j0 / p)(tau_j, z2) is the constant -b1(tau_j) extra(tau_j) / p2(tau_j)
        trace = -b1t * extra(s.tau) / p2t
        # cross-check constancy at one off-root point
        z2_probe = -0.5 if abs(s.lam + 0.5) > 0.2 else 0.5j
        num = (b2(s.tau) - z2_probe * b1t) * extra(s.tau)
        den = rif.p.eval(s.tau, z2_probe)
        if abs(num / den - trace) > 1e-8 * max(1.0, abs(trace)):
            raise NumericError("line trace of R/p is not constant")
        c_j = 1.0 / abs(s.deriv)
        d_j = 1.0 / (np.sqrt(c_j) * abs(trace))
        out.append(SosPiece(d_j * b2 * extra, (-d_j) * b1 * extra))
    return out


def sos_residual(rif: Rif, Q: UniPoly, R_list, sample_count: int = 200,
                 seed: int = 0) -> float:
    """Largest defect of the two-squares identity on random bidisk pairs.

    Draws sample_count pairs (z, w) from the closed bidisk (one quarter of
    the coordinates pushed to the boundary circle), evaluates both sides,
    and returns the maximum absolute defect normalized by the largest
    |p(z) conj(p(w))| seen.  A complete decomposition drives this to
    roundoff; a partial R list does not.
    """
    rng = np.random.default_rng(seed)

    def draw(count):
        radius = np.sqrt(rng.uniform(0.0, 1.0, (count, 2)))
        radius[rng.uniform(size=(count, 2)) < 0.25] = 1.0
        angle = rng.uniform(0.0, 2.0 * np.pi, (count, 2))
        pts = radius * np.exp(1j * angle)
        return pts[:, 0], pts[:, 1]

    z1, z2 = draw(sample_count)
    w1, w2 = draw(sample_count)
    pz = rif.p.eval(z1, z2)
    pw = rif.p.eval(w1, w2)
    ptz = rif.ptilde.eval(z1, z2)
    ptw = rif.ptilde.eval(w1, w2)
    lhs = pz * np.conj(pw) - ptz * np.conj(ptw)
    rsum = np.zeros_like(lhs)
    for piece in R_list:
        rsum += piece.eval(z1, z2) * np.conj(piece.eval(w1, w2))
    qsum = Q(z1) * np.conj(Q(w1))
    rhs = (1.0 - z1 * np.conj(w1)) * rsum + (1.0 - z2 * np.conj(w2)) * qsum
    scale = max(float(np.max(np.abs(pz * np.conj(pw)))), 1.0)
    return float(np.max(np.abs(lhs - rhs)) / scale)


@dataclass(frozen=True)
class GramReport:
    """Measured versus reproducing-kernel Gram matrix for J_alpha."""

    alpha: complex
    points: tuple
    target: np.ndarray
    measured: np.ndarray
    max_abs_deviation: float


def gram_isometry_check(rif: Rif, alpha, points, count: int = 4096,
                        tol: float = DEFAULT_TOL) -> GramReport:
    """Compare Gram matrices of kernel functions under the Clark embedding.

    For interior points w_i, the embedding sends the kernel k_{w_i} to
    (1 - alpha conj(phi(w_i))) C_{w_i} on the level set, with C_w the
    two-variable Cauchy kernel.  The measured matrix integrates those
    images pairwise against sigma_alpha; the target is the kernel matrix
    k(w_j, w_i).  Agreement at quadrature accuracy for every alpha is the
    isometry property; for exceptional alpha the embedding is still an
    isometry (the defect shows up in surjectivity, not in these Grams).
    """
    from .rif import phi_eval

    cm = clark_measure(rif, alpha, tol)
    pts = [(complex(w[0]), complex(w[1])) for w in points]
    for w1, w2 in pts:
        if abs(w1) >= 1.0 or abs(w2) >= 1.0:
            raise DomainError("Gram points must lie in the open bidisk")
    count_pts = len(pts)
    phis = np.array([phi_eval(rif, w) for w in pts])
    target = np.empty((count_pts, count_pts), dtype=complex)
    for i, wi in enumerate(pts):
        for j, wj in enumerate(pts):
            target[i, j] = (1.0 - np.conj(phis[i]) * phis[j]) / (
                (1.0 - wj[0] * np.conj(wi[0])) * (1.0 - wj[1] * np.conj(wi[1]))
            )
    alpha = cm.alpha
    pref = 1.0 - alpha * np.conj(phis)
    z, z2c, wvals = cm.node_data(count)
    cauchy_curve = [
        1.0 / ((1.0 - np.conj(w1) * z) * (1.0 - np.conj(w2) * z2c)) for w1, w2 in pts
    ]
    cauchy_lines = [
        [
            1.0 / ((1.0 - np.conj(w1) * tau) * (1.0 - np.conj(w2) * z))
            for w1, w2 in pts
        ]
        for tau, _ in cm.lines
    ]
    measured = np.empty_like(target)
    for i in range(count_pts):
        for j in range(count_pts):
            acc = complex(np.mean(cauchy_curve[i] * np.conj(cauchy_curve[j]) * wvals))
            for (tau, mass), cl in zip(cm.lines, cauchy_lines):
                acc += mass * complex(np.mean(cl[i] * np.conj(cl[j])))
            measured[i, j] = pref[i] * np.conj(pref[j]) * acc
    dev = float(np.max(np.abs(measured - target)))
    return GramReport(alpha, tuple(pts), target, measured, dev)


def orthonormality_check(rif: Rif, alpha, R_list, count: int = 4096,
                         tol: float = DEFAULT_TOL) -> np.ndarray:
    """Gram matrix of {R_j / p} in L^2(sigma_alpha); identity when the list
    is orthonormal.

    The line contributions are exact: (R_i / p)(tau_k, .) is the constant
    q_i(tau_k) / p2(tau_k) whenever R_i(tau_k, lambda_k) = 0, which is
    required (otherwise the trace is not square integrable and this raises
    NumericError).  The curve contribution uses nodes offset by half a
    spacing so that curve-line crossing points, which sit at circle zeros
    of p, never coincide with quadrature nodes.
    """
    cm = clark_measure(rif, alpha, tol)
    pieces = list(R_list)
    count = int(count)
    sc = max(rif.p.scale(), 1e-300)
    m = len(pieces)
    gram = np.zeros((m, m), dtype=complex)
    for tau, mass in cm.lines:
        k = next(
            idx
            for idx in cm.alpha_class.matched
            if abs(rif.singularities[idx].tau - tau) <= 1e-9
        )
        lam = rif.singularities[k].lam
        p2t = rif.p2(tau)
        vals = []
        for piece in pieces:
            at_pole = piece.eval(tau, lam)
            if abs(at_pole) > 1e-8 * max(sc, piece.r.scale() + piece.q.scale()):
                raise NumericError(
                    "R does not vanish at the line pole; trace not square integrable"
                )
            vals.append(piece.q(tau) / p2t)
        v = np.array(vals)
        gram += mass * np.outer(v, np.conj(v))
    z = np.exp(2j * np.pi * (np.arange(count) + 0.5) / count)
    z2 = cm.curve_z2(z)
    wvals = cm.weight_eval(z)
    pv = rif.p.eval(z, z2)
    live = np.abs(pv) > 1e-12 * sc
    ratios = [
        np.where(live, piece.eval(z, z2) / np.where(live, pv, 1.0), 0.0)
        for piece in pieces
    ]
    for i in range(m):
        for j in range(m):
            gram[i, j] += complex(np.mean(ratios[i] * np.conj(ratios[j]) * wvals))
    return gram

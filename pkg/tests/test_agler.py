"""Sums-of-squares pieces, orthonormal families, and the Gram isometry."""

import math

import numpy as np
import pytest

from rifclark.agler import (
    SosPiece,
    compute_Q,
    exceptional_R,
    gram_isometry_check,
    orthonormality_check,
    sos_residual,
)
from rifclark.catalog import get
from rifclark.errors import DomainError
from rifclark.polynomials import TrigPoly, UniPoly
from rifclark.quadrature import circle_nodes
from rifclark.rif import BiPolyN1, validate

RNG = np.random.default_rng(404)
SQ2 = math.sqrt(2.0)


def _q_certificate(rif, q):
    z = circle_nodes(2048)
    t = TrigPoly.modulus_squared(rif.p1) - TrigPoly.modulus_squared(rif.p2)
    resid = np.max(np.abs(np.abs(q(z)) ** 2 - t.eval(z).real))
    return resid / max(1.0, np.max(np.abs(t.eval(z).real)))


def test_compute_q_certificates_all_entries():
    for name in ("fave", "amy", "amy-variant", "deg31"):
        rif = get(name).build()
        q = compute_Q(rif)
        assert _q_certificate(rif, q) < 1e-8


def test_compute_q_vanishes_at_singular_abscissae():
    for name in ("fave", "amy", "deg31"):
        rif = get(name).build()
        q = compute_Q(rif)
        for s in rif.singularities:
            assert abs(q(s.tau)) < 1e-7


def test_sos_fixture_residuals():
    for name in ("fave", "amy"):
        e = get(name)
        rif = e.build()
        resid = sos_residual(rif, e.sos_fixture.Q, list(e.sos_fixture.R))
        assert resid < 1e-10


def test_sos_residual_detects_wrong_pieces():
    e = get("fave")
    rif = e.build()
    bad = [SosPiece(UniPoly([SQ2]), UniPoly([-0.9 * SQ2]))]
    assert sos_residual(rif, e.sos_fixture.Q, bad) > 1e-3


def test_exceptional_r_requires_exceptional_alpha():
    rif = get("amy").build()
    with pytest.raises(DomainError):
        exceptional_R(rif, complex(np.exp(0.3j)))


def test_exceptional_r_fave_closed_form():
    rif = get("fave").build()
    (piece,) = exceptional_R(rif, -1.0)
    # sqrt(2) * (1 - z2) up to unimodular scaling
    z1 = 0.3 + 0.1j
    ratio = piece.eval(z1, 0.25j) / (SQ2 * (1 - 0.25j))
    assert abs(abs(ratio) - 1.0) < 1e-12
    for z2 in (0.1, -0.5j):
        want = ratio * SQ2 * (1 - z2)
        assert abs(piece.eval(z1, z2) - want) < 1e-12


def test_exceptional_r_amy_closed_form():
    rif = get("amy").build()
    (piece,) = exceptional_R(rif, -1.0)
    # 2 sqrt(2) (1 - z1 z2) up to unimodular scaling
    ref = lambda z1, z2: 2 * SQ2 * (1 - z1 * z2)
    ratio = piece.eval(0.2, 0.3) / ref(0.2, 0.3)
    assert abs(abs(ratio) - 1.0) < 1e-12
    for z1, z2 in ((0.5j, -0.2), (0.9, 0.9)):
        assert abs(piece.eval(z1, z2) - ratio * ref(z1, z2)) < 1e-12


def test_exceptional_r_vanishes_at_singular_points():
    for name, alphas in (("fave", (-1.0,)), ("amy", (-1.0,)),
                         ("deg31", (-1.0, 1.0))):
        rif = get(name).build()
        for a in alphas:
            for piece in exceptional_R(rif, a):
                for s in rif.singularities:
                    assert abs(piece.eval(s.tau, s.lam)) < 1e-10


def test_orthonormality_single_piece():
    for name, alphas in (("fave", (-1.0,)), ("amy", (-1.0,)),
                         ("amy-variant", (-1.0,)), ("deg31", (-1.0, 1.0))):
        rif = get(name).build()
        for a in alphas:
            pieces = exceptional_R(rif, a)
            gram = orthonormality_check(rif, a, pieces)
            dev = np.max(np.abs(gram - np.eye(len(pieces))))
            assert dev < 1e-7, (name, a, dev)


def test_orthonormality_two_lines_same_alpha():
    # p = 2 - z1^2 - z2 has singularities at (1, 1) and (-1, 1) sharing the
    # exceptional value -1; the R family has size 2.
    rif = validate(BiPolyN1(UniPoly([2.0, 0.0, -1.0]), UniPoly([-1.0]), 2))
    assert len(rif.singularities) == 2
    alphas = {complex(round(s.alpha.real, 9)) for s in rif.singularities}
    assert len(alphas) == 1
    a = rif.singularities[0].alpha
    pieces = exceptional_R(rif, a)
    assert len(pieces) == 2
    gram = orthonormality_check(rif, a, pieces)
    assert np.max(np.abs(gram - np.eye(2))) < 1e-7


def test_gram_isometry_generic_and_exceptional():
    rif = get("amy").build()
    pts = [(0.2 + 0.1j, -0.3j), (0.0j, 0.4), (-0.25, 0.1 + 0.2j)]
    for alpha in (complex(np.exp(0.6j)), -1.0 + 0.0j):
        rep = gram_isometry_check(rif, alpha, pts)
        assert rep.max_abs_deviation < 1e-8
        g = np.array(rep.measured)
        assert np.max(np.abs(g - g.conj().T)) < 1e-12


def test_gram_isometry_rejects_boundary_point():
    rif = get("fave").build()
    with pytest.raises(DomainError):
        gram_isometry_check(rif, 1.0, [(1.0 + 0.0j, 0.0j)])


def test_sos_residual_normalized_and_seeded():
    e = get("amy")
    rif = e.build()
    r1 = sos_residual(rif, e.sos_fixture.Q, list(e.sos_fixture.R), seed=7)
    r2 = sos_residual(rif, e.sos_fixture.Q, list(e.sos_fixture.R), seed=7)
    assert r1 == r2

"""Construction and validation of rational inner functions."""

import numpy as np
import pytest

from rifclark.catalog import entries, get
from rifclark.errors import DomainError
from rifclark.polynomials import UniPoly
from rifclark.rif import (
    BiPolyN1,
    is_saturated,
    phi_eval,
    reflect,
    validate,
    validation_report,
)

RNG = np.random.default_rng(202)


def _poly(p1, p2, n):
    return BiPolyN1(UniPoly(p1), UniPoly(p2), n)


def test_bipoly_rejects_degree_overflow():
    with pytest.raises(DomainError):
        _poly([1.0, 2.0, 3.0], [1.0], 1)


def test_reflect_swaps_parts_and_is_involution():
    for e in entries().values():
        p = e.poly
        q = reflect(p)
        assert np.array_equal(q.p1.coeffs, p.p2.conj_reflect(p.n).coeffs)
        assert np.array_equal(q.p2.coeffs, p.p1.conj_reflect(p.n).coeffs)
        back = reflect(q)
        assert np.array_equal(back.p1.coeffs, p.p1.coeffs)
        assert np.array_equal(back.p2.coeffs, p.p2.coeffs)


def test_modulus_equality_on_torus():
    for e in entries().values():
        rif = e.build()
        z1 = np.exp(1j * RNG.uniform(0, 2 * np.pi, 64))
        z2 = np.exp(1j * RNG.uniform(0, 2 * np.pi, 64))
        dev = np.abs(np.abs(rif.p.eval(z1, z2)) - np.abs(rif.ptilde.eval(z1, z2)))
        assert np.max(dev) < 1e-12


def test_phi_bounded_by_one_inside():
    for e in entries().values():
        rif = e.build()
        for _ in range(50):
            z = (0.95 * np.sqrt(RNG.uniform()) * np.exp(2j * np.pi * RNG.uniform()),
                 0.95 * np.sqrt(RNG.uniform()) * np.exp(2j * np.pi * RNG.uniform()))
            assert abs(phi_eval(rif, z)) <= 1.0 + 1e-12


def test_phi_unimodular_on_distinguished_boundary():
    rif = get("deg31").build()
    z1 = np.exp(1j * RNG.uniform(0, 2 * np.pi, 32))
    for a in z1:
        for b in np.exp(1j * RNG.uniform(0, 2 * np.pi, 4)):
            # skip the two singular abscissae
            if min(abs(a - 1), abs(a + 1)) < 1e-6:
                continue
            assert abs(abs(phi_eval(rif, (a, b))) - 1.0) < 1e-10


def test_phi_eval_rejects_outside_closed_bidisk():
    rif = get("fave").build()
    with pytest.raises(DomainError):
        phi_eval(rif, (1.5, 0.0))


def test_eval_dz1_matches_finite_difference():
    p = get("deg31").poly
    z1, z2 = 0.3 + 0.1j, -0.2j
    h = 1e-6
    fd = (p.eval(z1 + h, z2) - p.eval(z1 - h, z2)) / (2 * h)
    assert abs(p.eval_dz1(z1, z2) - fd) < 1e-8


def test_validate_detects_interior_zero():
    with pytest.raises(DomainError, match="not stable"):
        validate(_poly([1.0, -2.0], [0.0], 1))


def test_validate_detects_face_zero_vs_coprime():
    # p1 and p2 share the circle zero: the pair is not coprime
    with pytest.raises(DomainError, match="not coprime"):
        validate(_poly([1.0, -1.0], [0.0], 1))
    # p1 alone vanishes on the circle while p2 does not: unstable face
    with pytest.raises(DomainError, match="not stable"):
        validate(_poly([1.0, -1.0], [0.5], 1))


def test_validate_detects_constant_root_in_z2():
    # w(z1) = -p1/p2 constant of modulus <= 1 puts a zero curve in the bidisk
    with pytest.raises(DomainError, match="not stable"):
        validate(_poly([2.0, -1.0], [-2.0, 1.0], 1))


def test_validate_detects_selfreflection():
    # p = 1 - z1 z2 gives ptilde = -p up to scalar: phi is constant
    with pytest.raises(DomainError, match="not coprime"):
        validate(_poly([1.0], [0.0, -1.0], 1))


def test_z1_only_factor_without_mirror_is_valid():
    # p = (2 - z1)(3 - z1 - z2): the z1 factor does not cancel against the
    # reflection (its mirror 1/2 is not a root), it just contributes a
    # one-variable Blaschke factor, so this is a legitimate input.
    p1 = UniPoly([2.0, -1.0]) * UniPoly([3.0, -1.0])
    p2 = UniPoly([2.0, -1.0]) * UniPoly([-1.0])
    rif = validate(BiPolyN1(p1, p2, 2))
    z1 = np.exp(1j * RNG.uniform(0, 2 * np.pi, 16))
    z2 = np.exp(1j * RNG.uniform(0, 2 * np.pi, 16))
    vals = rif.ptilde.eval(z1, z2) / rif.p.eval(z1, z2)
    assert np.max(np.abs(np.abs(vals) - 1.0)) < 1e-12


def test_validate_detects_circle_z1_factor():
    # p = (1 + z1)(2 - z1 - z2) vanishes identically on z1 = -1
    p1 = UniPoly([1.0, 1.0]) * UniPoly([2.0, -1.0])
    p2 = UniPoly([1.0, 1.0]) * UniPoly([-1.0])
    with pytest.raises(DomainError, match="not coprime"):
        validate(BiPolyN1(p1, p2, 2))


def test_singularity_data_all_entries():
    want = {
        "fave": [(1.0 + 0.0j, 1.0 + 0.0j, -1.0 + 0.0j, 2)],
        "amy": [(1.0 + 0.0j, 1.0 + 0.0j, -1.0 + 0.0j, 4)],
        "amy-variant": [(1.0 + 0.0j, 1.0 + 0.0j, -1.0 + 0.0j, 2)],
        "deg31": [(-1.0 + 0.0j, 1.0 + 0.0j, 1.0 + 0.0j, 4),
                  (1.0 + 0.0j, 1.0 + 0.0j, -1.0 + 0.0j, 2)],
    }
    for name, sings in want.items():
        rif = get(name).build()
        assert len(rif.singularities) == len(sings)
        key = lambda t: round(float(np.mod(np.angle(t), 2 * np.pi)), 6)
        got = sorted(rif.singularities, key=lambda s: key(s.tau))
        exp = sorted(sings, key=lambda s: key(s[0]))
        for s, (tau, lam, alpha, mult) in zip(got, exp):
            assert abs(s.tau - tau) < 1e-10
            assert abs(s.lam - lam) < 1e-10
            assert abs(s.alpha - alpha) < 1e-10
            assert s.mult == mult


def test_line_derivative_values():
    rif = get("deg31").build()
    by_tau = {round(s.tau.real): s for s in rif.singularities}
    assert abs(by_tau[1].deriv - (-1.0)) < 1e-10
    assert abs(by_tau[-1].deriv - (-2.0)) < 1e-10


def test_is_saturated_matches_documented():
    for name, flag in (("fave", True), ("amy", True),
                       ("amy-variant", False), ("deg31", True)):
        assert is_saturated(get(name).build()) is flag


def test_validation_report_keys():
    rep = validation_report(get("amy").poly)
    assert rep["stable"] is True
    assert rep["coprime"] is True
    assert rep["error"] is None
    assert len(rep["singularities"]) == 1
    assert rep["singularities"][0]["mult"] == 4
    bad = validation_report(_poly([1.0, -2.0], [0.0], 1))
    assert bad["stable"] is False
    assert "not stable" in bad["error"]


def test_bipoly_json_roundtrip():
    for e in entries().values():
        back = BiPolyN1.from_json(e.poly.to_json())
        assert np.array_equal(back.p1.coeffs, e.poly.p1.coeffs)
        assert np.array_equal(back.p2.coeffs, e.poly.p2.coeffs)
        assert back.n == e.poly.n


def test_phi_at_origin_values():
    vals = {"fave": 0.0, "amy": 0.0, "amy-variant": -0.5, "deg31": -0.25}
    for name, v in vals.items():
        assert abs(get(name).build().phi_at_origin - v) < 1e-14

"""Univariate and trigonometric polynomial layer."""

import numpy as np
import pytest

from rifclark.errors import DomainError, NumericError
from rifclark.polynomials import (
    BlaschkeProduct,
    TrigPoly,
    UniPoly,
    blaschke_from_rational,
    fejer_riesz,
    roots,
)

RNG = np.random.default_rng(101)


def test_unipoly_basic_arithmetic():
    p = UniPoly([1.0, 2.0, 3.0])
    q = UniPoly([-1.0, 1.0])
    s = p + q
    d = p - q
    m = p * q
    z = 0.3 + 0.4j
    assert abs(s(z) - (p(z) + q(z))) < 1e-14
    assert abs(d(z) - (p(z) - q(z))) < 1e-14
    assert abs(m(z) - p(z) * q(z)) < 1e-14
    assert (2.0 * p).degree == 2
    assert (p * 0.0).degree < 0


def test_unipoly_trailing_zero_trim_and_degree():
    p = UniPoly([1.0, 0.0, 0.0])
    assert p.degree == 0
    assert UniPoly([0.0, 0.0]).degree < 0
    assert len(UniPoly([]).coeffs) == 0


def test_unipoly_eval_matches_numpy_horner():
    for _ in range(25):
        c = RNG.normal(size=6) + 1j * RNG.normal(size=6)
        p = UniPoly(c)
        z = RNG.normal() + 1j * RNG.normal()
        want = np.polyval(c[::-1], z)
        assert abs(p(z) - want) < 1e-12 * (1 + abs(want))


def test_unipoly_derivative():
    p = UniPoly([1.0, -2.0, 0.0, 4.0])
    dp = p.derivative()
    z = 0.7 - 0.1j
    h = 1e-6
    fd = (p(z + h) - p(z - h)) / (2 * h)
    assert abs(dp(z) - fd) < 1e-8


def test_unipoly_deflate_reconstructs():
    p = UniPoly.from_roots([0.5, -0.25 + 0.1j, 2.0], leading=1.5)
    q, rem = p.deflate(0.5)
    assert abs(rem) < 1e-12
    back = q * UniPoly([-0.5, 1.0])
    assert np.max(np.abs(back.coeffs - p.coeffs)) < 1e-12


def test_conj_reflect_involution_and_modulus():
    c = RNG.normal(size=4) + 1j * RNG.normal(size=4)
    p = UniPoly(c)
    n = 3
    refl = p.conj_reflect(n)
    assert np.max(np.abs(refl.conj_reflect(n).coeffs - p.coeffs)) == 0.0
    z = np.exp(1j * RNG.uniform(0, 2 * np.pi, size=16))
    assert np.max(np.abs(np.abs(refl(z)) - np.abs(p(z)))) < 1e-13


def test_roots_simple_and_clustered():
    p = UniPoly.from_roots([0.3, 0.3, -0.7j], leading=2.0)
    got = roots(p)
    mults = sorted(m for _r, m in got)
    assert mults == [1, 2]
    double = [r for r, m in got if m == 2][0]
    assert abs(double - 0.3) < 1e-6


def test_roots_high_multiplicity_certified():
    # (z - 0.9)^4: float rounding splits the quadruple root by about
    # eps^(1/4) ~ 5e-4, beyond the default merge radius; an explicit
    # cluster radius certifies the full multiplicity.
    p = UniPoly.from_roots([0.9] * 4, leading=1.0)
    split = roots(p)
    assert sum(m for _r, m in split) == 4
    assert all(abs(r - 0.9) < 1e-3 for r, _m in split)
    merged = roots(p, cluster_radius=1e-3)
    assert len(merged) == 1
    r, m = merged[0]
    assert m == 4
    assert abs(r - 0.9) < 1e-3


def test_roots_zero_poly_raises():
    with pytest.raises(DomainError):
        roots(UniPoly([0.0]))


def test_trigpoly_modulus_squared_real_on_circle():
    c = RNG.normal(size=5) + 1j * RNG.normal(size=5)
    p = UniPoly(c)
    t = TrigPoly.modulus_squared(p)
    z = np.exp(1j * RNG.uniform(0, 2 * np.pi, size=32))
    vals = t.eval(z)
    assert np.max(np.abs(vals.imag)) < 1e-12
    assert np.max(np.abs(vals.real - np.abs(p(z)) ** 2)) < 1e-11
    assert t.hermitian_defect() < 1e-15


def test_trigpoly_divide_circle_factor():
    # t = |z - 1|^2 * |g|^2 divided by |z - 1|^2 recovers |g|^2.
    g = UniPoly([2.0, 0.5 + 0.1j])
    t = TrigPoly.modulus_squared(UniPoly([-1.0, 1.0]) * g)
    quo = t.divide_circle_factor(1.0 + 0.0j)
    z = np.exp(1j * np.linspace(0.1, 6.2, 17))
    want = np.abs(g(z)) ** 2
    assert np.max(np.abs(quo.eval(z).real - want)) < 1e-10


def test_trigpoly_theta_eval_derivative():
    t = TrigPoly.modulus_squared(UniPoly([1.0, -0.4, 0.3j]))
    th = 0.9
    h = 1e-5
    fd = (t.theta_eval(th + h) - t.theta_eval(th - h)) / (2 * h)
    assert abs(t.theta_eval(th, order=1) - fd) < 1e-8


def test_fejer_riesz_random_factorizations():
    for k in range(12):
        rng = np.random.default_rng(500 + k)
        g = UniPoly(rng.normal(size=4) + 1j * rng.normal(size=4))
        t = TrigPoly.modulus_squared(g)
        q = fejer_riesz(t)
        z = np.exp(1j * rng.uniform(0, 2 * np.pi, size=64))
        resid = np.max(np.abs(np.abs(q(z)) ** 2 - t.eval(z).real))
        assert resid < 1e-8 * max(1.0, np.max(np.abs(t.eval(z).real)))
        # outer normalization: no zeros outside the closed disk
        assert all(abs(r) <= 1 + 1e-8 for r, _m in roots(q)) or q.degree == 0


def test_fejer_riesz_with_circle_zero():
    g = UniPoly([-1.0, 1.0]) * UniPoly([3.0, 1.0])
    t = TrigPoly.modulus_squared(g)
    q = fejer_riesz(t)
    z = np.exp(1j * np.linspace(0, 6.28, 41))
    assert np.max(np.abs(np.abs(q(z)) ** 2 - t.eval(z).real)) < 1e-8


def test_fejer_riesz_rejects_sign_changing():
    # cos(theta) takes both signs on the circle
    t = TrigPoly([0.5, 0.0, 0.5], 1)
    with pytest.raises((DomainError, NumericError)):
        fejer_riesz(t)


def test_blaschke_product_modulus_and_json():
    b = BlaschkeProduct(np.exp(0.3j), (0.2 + 0.1j, -0.5j))
    z = np.exp(1j * np.linspace(0, 6.28, 33))
    assert np.max(np.abs(np.abs(b(z)) - 1.0)) < 1e-12
    back = BlaschkeProduct.from_json(b.to_json())
    assert abs(back.constant - b.constant) < 1e-15
    assert np.max(np.abs(np.array(back.zeros) - np.array(b.zeros))) < 1e-15


def test_blaschke_from_rational_recovers():
    zeros = [0.3 + 0.2j, -0.4j]
    b = BlaschkeProduct(np.exp(1.1j), tuple(zeros))
    num = UniPoly.from_roots(zeros, leading=b.constant)
    den = UniPoly.from_roots([np.conj(1 / z) for z in zeros],
                             leading=np.prod([-np.conj(z) for z in zeros]))
    got = blaschke_from_rational(num, den)
    z = np.exp(1j * np.linspace(0.05, 6.2, 29))
    assert np.max(np.abs(got(z) - b(z))) < 1e-10


def test_blaschke_from_rational_rejects_outer_zero():
    num = UniPoly.from_roots([1.5])
    den = UniPoly.from_roots([1 / 1.5])
    with pytest.raises((DomainError, NumericError)):
        blaschke_from_rational(num, den)


def test_unipoly_json_roundtrip():
    p = UniPoly([1.0 + 2.0j, -0.5, 0.25j])
    back = UniPoly.from_json(p.to_json())
    assert np.array_equal(back.coeffs, p.coeffs)

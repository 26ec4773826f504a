"""Blade arithmetic: wedge, interior, Hodge star, musical maps.

Expected values are worked out by hand from the defining conventions
(inversion-count wedge signs, *(e_A) = eps_A sign(A, A^c) e_{A^c},
e_B -| e_C = eps_B sigma e_{C\\B}) before being frozen here.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liespin.multivector import (
    Multivector,
    basis_vector,
    blade,
    clifford,
    form_hook,
    from_vector,
    hodge_star,
    interior,
    musical,
    pairing,
    scalar,
    volume,
    wedge,
    zero,
)

EUCL4 = (1, 1, 1, 1)
LOR31 = (1, 1, 1, -1)


def mv_close(x, y, tol=1e-12):
    return (x - y).max_abs() <= tol


# ---------------------------------------------------------------- wedge


def test_wedge_basis_order_signs():
    n = 4
    e1, e2 = basis_vector(n, 1), basis_vector(n, 2)
    assert mv_close(wedge(e1, e2), blade(n, [1, 2]))
    assert mv_close(wedge(e2, e1), -1 * blade(n, [1, 2]))
    # one inversion: (3 > 2)
    assert mv_close(wedge(blade(n, [1, 3]), e2), -1 * blade(n, [1, 2, 3]))
    # two inversions: (3>2), (4>2)
    assert mv_close(wedge(blade(n, [3, 4]), e2), blade(n, [2, 3, 4]))


def test_wedge_nilpotent_on_vectors():
    rng = np.random.default_rng(7)
    for n in (2, 3, 4, 6):
        v = from_vector(n, rng.normal(size=n) + 1j * rng.normal(size=n))
        assert wedge(v, v).max_abs() < 1e-14


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 15), st.integers(0, 15), st.integers(0, 15))
def test_wedge_associative_on_blades(a, b, c):
    n = 4
    xs = [Multivector(n, np.eye(16, dtype=complex)[m]) for m in (a, b, c)]
    left = wedge(wedge(xs[0], xs[1]), xs[2])
    right = wedge(xs[0], wedge(xs[1], xs[2]))
    assert mv_close(left, right)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 15), st.integers(0, 15))
def test_wedge_graded_commutativity(a, b):
    n = 4
    x = Multivector(n, np.eye(16, dtype=complex)[a])
    y = Multivector(n, np.eye(16, dtype=complex)[b])
    k, l = bin(a).count("1"), bin(b).count("1")
    assert mv_close(wedge(x, y), (-1) ** (k * l) * wedge(y, x))


def test_grade_projection():
    n = 3
    x = scalar(n, 2.0) + blade(n, [1, 2], 3.0) + blade(n, [1], -1.0)
    assert mv_close(x.grade(0), scalar(n, 2.0))
    assert mv_close(x.grade(1), blade(n, [1], -1.0))
    assert mv_close(x.grade(2), blade(n, [1, 2], 3.0))
    assert x.grades() == [0, 1, 2]


# ---------------------------------------------------------------- hodge


def test_hodge_star_lorentz_values():
    # (+,+,+,-): *(e_12) = e_34, *(e_234) = +e_1, *1 = e_1234, *omega = -1
    assert mv_close(hodge_star(blade(4, [1, 2]), LOR31), blade(4, [3, 4]))
    assert mv_close(hodge_star(blade(4, [2, 3, 4]), LOR31), blade(4, [1]))
    assert mv_close(hodge_star(scalar(4, 1.0), LOR31), volume(4))
    assert mv_close(hodge_star(volume(4), LOR31), scalar(4, -1.0))


def test_hodge_star_euclidean_values():
    assert mv_close(hodge_star(blade(4, [2, 3, 4]), EUCL4), -1 * blade(4, [1]))
    assert mv_close(hodge_star(scalar(4, 1.0), EUCL4), volume(4))
    assert mv_close(hodge_star(volume(4), EUCL4), scalar(4, 1.0))
    # leading blocks: *(e_1...e_k) = e_{k+1}...e_n for a definite metric
    assert mv_close(hodge_star(blade(4, [1]), EUCL4), blade(4, [2, 3, 4]))
    assert mv_close(hodge_star(blade(4, [1, 2]), EUCL4), blade(4, [3, 4]))


@pytest.mark.parametrize("eps", [EUCL4, LOR31, (1, 1, 1), (-1, -1, 1), (1, -1, 1, -1, 1)])
def test_hodge_double_star(eps):
    n = len(eps)
    q = sum(1 for s in eps if s < 0)
    for a in range(1 << n):
        x = Multivector(n, np.eye(1 << n, dtype=complex)[a])
        k = bin(a).count("1")
        expect = (-1) ** (k * (n - k)) * (-1) ** q
        assert mv_close(hodge_star(hodge_star(x, eps), eps), expect * x)


@pytest.mark.parametrize("eps", [EUCL4, LOR31, (1, 1, -1)])
def test_wedge_star_reproduces_metric_pairing(eps):
    # alpha ^ *beta = g(alpha, beta) vol, for same-grade alpha, beta
    n = len(eps)
    rng = np.random.default_rng(11)
    for k in range(n + 1):
        mask = np.array([bin(a).count("1") == k for a in range(1 << n)])
        ca = np.where(mask, rng.normal(size=1 << n), 0).astype(complex)
        cb = np.where(mask, rng.normal(size=1 << n), 0).astype(complex)
        alpha, beta = Multivector(n, ca), Multivector(n, cb)
        lhs = wedge(alpha, hodge_star(beta, eps))
        rhs = pairing(alpha, beta, eps) * volume(n)
        assert mv_close(lhs, rhs, 1e-12)


# ---------------------------------------------------------------- interior


def test_interior_lorentz_values():
    e3, e4 = basis_vector(4, 3), basis_vector(4, 4)
    # eps_4 = -1 and e_4 ^ e_3 = -e_34 combine to +e_3
    assert mv_close(interior(e4, blade(4, [3, 4]), LOR31), e3)
    assert mv_close(interior(e3, blade(4, [3, 4]), LOR31), e4)
    assert interior(e3, blade(4, [1, 2]), LOR31).max_abs() == 0


def test_form_hook_values():
    # e^B -| e_C drops the eps factor: pure permutation signs remain
    e2, e3 = basis_vector(4, 2), basis_vector(4, 3)
    assert mv_close(form_hook(e2, blade(4, [2, 3, 4]), LOR31), blade(4, [3, 4]))
    assert mv_close(form_hook(e3, blade(4, [2, 3, 4]), LOR31), -1 * blade(4, [2, 4]))
    e4 = basis_vector(4, 4)
    assert mv_close(form_hook(e4, blade(4, [3, 4]), LOR31), -1 * e3)


@pytest.mark.parametrize("eps", [EUCL4, LOR31])
def test_interior_composition_rule(eps):
    # (v1 ^ v2) -| gamma = v2 -| (v1 -| gamma)
    n = len(eps)
    rng = np.random.default_rng(3)
    for _ in range(25):
        v1 = from_vector(n, rng.normal(size=n))
        v2 = from_vector(n, rng.normal(size=n))
        gamma = Multivector(n, rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n))
        lhs = interior(wedge(v1, v2), gamma, eps)
        rhs = interior(v2, interior(v1, gamma, eps), eps)
        assert mv_close(lhs, rhs, 1e-12)


@pytest.mark.parametrize("eps", [EUCL4, LOR31, (1, 1, -1)])
def test_hook_wedge_duality(eps):
    # X ^ (*beta) = (-1)^(k+1) * (X -| beta) for vectors X and k-vectors beta
    n = len(eps)
    rng = np.random.default_rng(5)
    for k in range(n + 1):
        for _ in range(8):
            x = from_vector(n, rng.normal(size=n))
            raw = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
            beta = Multivector(n, raw).grade(k)
            lhs = wedge(x, hodge_star(beta, eps))
            rhs = (-1) ** (k + 1) * hodge_star(interior(x, beta, eps), eps)
            assert mv_close(lhs, rhs, 1e-12)


# ---------------------------------------------------------------- clifford


@pytest.mark.parametrize("eps", [EUCL4, LOR31, (1, 1, -1), (-1, -1, -1)])
def test_clifford_generator_squares(eps):
    n = len(eps)
    for j in range(1, n + 1):
        ej = basis_vector(n, j)
        assert mv_close(clifford(ej, ej, eps), scalar(n, -eps[j - 1]))


def test_clifford_vector_square_is_minus_norm():
    rng = np.random.default_rng(13)
    for eps in (EUCL4, LOR31):
        n = len(eps)
        for _ in range(10):
            coords = rng.normal(size=n)
            v = from_vector(n, coords)
            norm = sum(eps[j] * coords[j] ** 2 for j in range(n))
            assert mv_close(clifford(v, v, eps), scalar(n, -norm), 1e-12)


@pytest.mark.parametrize("eps", [EUCL4, LOR31])
def test_wedge_is_antisymmetrized_clifford(eps):
    n = len(eps)
    rng = np.random.default_rng(17)
    for _ in range(10):
        x = from_vector(n, rng.normal(size=n))
        y = from_vector(n, rng.normal(size=n))
        anti = 0.5 * (clifford(x, y, eps) - clifford(y, x, eps))
        assert mv_close(wedge(x, y), anti, 1e-12)


def test_clifford_blade_products():
    # e_12 . e_12 = e_1 e_2 e_1 e_2 = -e_1 e_1 e_2 e_2 = -eps_1 eps_2
    b = blade(4, [1, 2])
    assert mv_close(clifford(b, b, EUCL4), scalar(4, -1.0))
    assert mv_close(clifford(b, b, LOR31), scalar(4, -1.0))
    b34 = blade(4, [3, 4])
    assert mv_close(clifford(b34, b34, LOR31), scalar(4, 1.0))
    # associativity spot check
    e1, e2, e3 = (basis_vector(4, j) for j in (1, 2, 3))
    lhs = clifford(clifford(e1, e2, LOR31), e3, LOR31)
    rhs = clifford(e1, clifford(e2, e3, LOR31), LOR31)
    assert mv_close(lhs, rhs)


# ---------------------------------------------------------------- musical


def test_musical_maps():
    x = blade(4, [3, 4], 2.0) + blade(4, [1], 5.0)
    flat = musical(x, LOR31)
    assert flat.blade_coeff([3, 4]) == pytest.approx(-2.0)
    assert flat.blade_coeff([1]) == pytest.approx(5.0)
    # twice = identity for +-1 metrics
    assert mv_close(musical(flat, LOR31), x)


def test_vector_coords_roundtrip():
    coords = np.array([1.0, -2.0, 0.5, 3.0]) + 1j * np.array([0, 1, 0, -1.0])
    v = from_vector(4, coords)
    assert np.allclose(v.vector_coords(), coords)


def test_blade_validation():
    with pytest.raises(ValueError):
        blade(4, [2, 2])
    with pytest.raises(ValueError):
        blade(4, [3, 1])
    with pytest.raises(ValueError):
        basis_vector(3, 4)
    with pytest.raises(ValueError):
        zero(7)

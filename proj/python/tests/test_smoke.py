import math

import pytest

import qho


def test_constants():
    assert qho.gamma_pleijel(2) == pytest.approx(0.69166, rel=1e-4)
    assert qho.gamma_pleijel(3) == pytest.approx(4.5 / math.pi**2, rel=1e-12)
    assert qho.u_constant_exact(3) == (2, 9)
    assert qho.bessel_first_zero(0.5) == pytest.approx(math.pi, rel=1e-14)
    assert qho.milnor_bound(2, 3) == 20
    assert qho.milnor_bound(10, 1000) == 1002 * 1001**9


def test_spectrum():
    spec = qho.enumerate_spectrum([1.0, 2.0], 7.0)
    assert [k for k, _ in spec] == [[0, 0], [1, 0], [0, 1], [2, 0]]
    assert qho.counting_function([1.0, 1.0], 6.0) == 6
    assert qho.enumerate_spectrum([1.0, 1.0], 1.0) == []
    with pytest.raises(ValueError):
        qho.enumerate_spectrum([1.0, -1.0], 5.0)


def test_grid_count():
    r = qho.grid_count([1.0, 1.0], [(1.0, [2, 0]), (-1.0, [0, 2])])
    assert r["count"] == 4
    assert r["converged"]
    r = qho.grid_count([1.0, math.sqrt(2)], [(1.0, [2, 1])], workers=3)
    assert r["count"] == 6


def test_certificate():
    assert qho.choose_M(10000, 2) == 10
    c = qho.certificate([1.0, math.sqrt(2)], 100)
    assert c["M"] == 4
    assert c["interior_over_k"] == pytest.approx(0.5153902751673461, rel=1e-9)
    assert c["bound_holds"]


def test_budget_error():
    with pytest.raises(qho.BudgetExceeded):
        qho.counting_function([1e-3] * 3, 1e4)

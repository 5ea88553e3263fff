"""Unit and property tests for occupation-number tensor storage."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grosslap.tensor_core import (
    DegreeError,
    DimensionMismatchError,
    SymTensor,
    basis_tensor,
    contract_full,
    dense_contract_full,
    iter_occupations,
    multinomial_weight,
    pair,
    sym_product,
    sym_tensor_from_json,
    sym_tensor_to_json,
    symmetrize,
    tensor_power,
    to_dense,
    trace_tensor,
    vector_tensor,
    zero_tensor,
)
from conftest import random_tensor


def test_multinomial_weight():
    assert multinomial_weight((0, 0)) == 1
    assert multinomial_weight((2, 1)) == 3
    assert multinomial_weight((2, 2)) == 6
    assert multinomial_weight((5,)) == 1


def test_iter_occupations_counts():
    # stars and bars: C(n + d - 1, d - 1)
    for d in range(1, 4):
        for n in range(6):
            got = len(list(iter_occupations(d, n)))
            assert got == math.comb(n + d - 1, d - 1)


def test_trace_pairing_is_bilinear_not_hermitian():
    # <tau, xi (x) xi> = sum xi_i^2, so a complex vector can pair to a
    # negative number.
    tau = trace_tensor(2)
    xi2 = tensor_power([1, 2j], 2)
    assert pair(tau, xi2) == pytest.approx(-3 + 0j)


def test_tensor_power_matches_dense():
    xi = [0.5 + 0.1j, -0.3]
    T = tensor_power(xi, 3)
    D = to_dense(T)
    brute = np.einsum("i,j,k->ijk", xi, xi, xi)
    assert np.allclose(D.data, brute)


def test_contract_full_degrees():
    A = random_tensor(np.random.default_rng(0), 2, 3)
    B = random_tensor(np.random.default_rng(1), 2, 5)
    R = contract_full(A, B)
    assert R.degree == 2
    with pytest.raises(DegreeError):
        contract_full(B, A)
    with pytest.raises(DimensionMismatchError):
        contract_full(A, random_tensor(np.random.default_rng(2), 3, 5))


@pytest.mark.parametrize("d,da,db", [(1, 0, 3), (2, 2, 4), (3, 3, 3), (2, 1, 5)])
def test_contract_full_against_dense(rng, d, da, db):
    for _ in range(10):
        A = random_tensor(rng, d, da)
        B = random_tensor(rng, d, db)
        sparse = contract_full(A, B)
        dense = symmetrize(dense_contract_full(to_dense(A), to_dense(B)))
        diff = sparse.add(dense.scale(-1)).norm_inf()
        assert diff <= 1e-12 * max(1.0, dense.norm_inf())


def test_sym_product_is_polynomial_multiplication(rng):
    # Pairing against xi^{(x)n} evaluates a tensor as a homogeneous
    # polynomial; sym_product must multiply those polynomials.
    A = random_tensor(rng, 2, 2)
    B = random_tensor(rng, 2, 3)
    C = sym_product(A, B)
    xi = [0.4 - 0.2j, 0.7 + 0.3j]
    pa = pair(A, tensor_power(xi, 2))
    pb = pair(B, tensor_power(xi, 3))
    pc = pair(C, tensor_power(xi, 5))
    assert pc == pytest.approx(pa * pb, rel=1e-12, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 3), st.integers(0, 3),
       st.integers(0, 3))
def test_sym_product_commutes(seed, d, da, db):
    rng = np.random.default_rng(seed)
    A = random_tensor(rng, d, da)
    B = random_tensor(rng, d, db)
    lhs = sym_product(A, B)
    rhs = sym_product(B, A)
    assert lhs.add(rhs.scale(-1)).norm_inf() <= 1e-13 * max(1, lhs.norm_inf())


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 3), st.integers(0, 4))
def test_symmetrize_idempotent_on_symmetric_tensors(seed, d, deg):
    rng = np.random.default_rng(seed)
    T = random_tensor(rng, d, deg)
    again = symmetrize(to_dense(T))
    assert T.add(again.scale(-1)).norm_inf() <= 1e-13 * max(1, T.norm_inf())


def test_symmetrize_projects():
    data = np.zeros((2, 2), dtype=complex)
    data[0, 1] = 1.0  # non-symmetric input
    from grosslap.tensor_core import DenseTensor
    S = symmetrize(DenseTensor(2, 2, data))
    assert S[(1, 1)] == pytest.approx(0.5)


def test_vector_and_basis_tensors():
    assert vector_tensor([0, 3j])[(0, 1)] == 3j
    assert basis_tensor(3, 1)[(0, 1, 0)] == 1


def test_zero_and_scalar_behaviour():
    z = zero_tensor(2, 3)
    assert z.norm_inf() == 0.0
    assert contract_full(z, random_tensor(np.random.default_rng(0), 2, 4)).entries == {}


def test_json_roundtrip(rng):
    T = random_tensor(rng, 3, 4)
    back = sym_tensor_from_json(sym_tensor_to_json(T))
    assert back == T

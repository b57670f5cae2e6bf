import itertools
import json

import numpy as np
import pytest

from sl11kit.graded import (C11, EVEN, ODD, GradedSpace, SuperMatrix,
                            graded_comm, graded_kron, graded_perm, identity,
                            max_abs, unit, zeros)


def E(i, j):
    """1-based matrix unit on the standard (1|1) space."""
    return unit(C11, C11, i - 1, j - 1)


ALL_UNITS = [(i, j) for i in (1, 2) for j in (1, 2)]


def test_space_validation():
    with pytest.raises(ValueError):
        GradedSpace(0, ())
    with pytest.raises(ValueError):
        GradedSpace(2, (0,))
    assert GradedSpace(2, ("even", "odd")).parity == (0, 1)


def test_identity_kron_identity():
    res = graded_kron(identity(C11), identity(C11))
    assert max_abs(res.m - np.eye(4)) == 0.0
    assert res.space_out.parity == (0, 1, 1, 0)


def test_unit_kron_sign_rule_example():
    # (E12 x E21)(E21 x E12) = -(E11 x E22): sign (-1)^{(k+l)(r+s)} by hand
    lhs = graded_kron(E(1, 2), E(2, 1)) @ graded_kron(E(2, 1), E(1, 2))
    rhs = -1 * graded_kron(E(1, 1), E(2, 2))
    assert max_abs(lhs - rhs) == 0.0


def test_diagonal_units_carry_no_sign():
    res = graded_kron(E(1, 1), E(2, 2))
    expect = np.zeros((4, 4))
    expect[1, 1] = 1.0  # row (1,2), col (1,2) in 1-based labels
    assert max_abs(res.m - expect) == 0.0


def test_product_rule_exhaustive_over_units():
    # graded_kron(A,B) @ graded_kron(C,D) = (-1)^{p(C)p(B)} graded_kron(AC, BD)
    for (ai, aj), (bi, bj), (ci, cj), (di, dj) in itertools.product(ALL_UNITS, repeat=4):
        a, b, c, d = E(ai, aj), E(bi, bj), E(ci, cj), E(di, dj)
        lhs = graded_kron(a, b) @ graded_kron(c, d)
        sign = (-1) ** (c.parity * b.parity)
        rhs = sign * graded_kron(a @ c, b @ d)
        assert max_abs(lhs - rhs) == 0.0


def test_kron_associativity_exact_on_integer_matrices():
    # entries small integers: every float product is exact, so the two
    # flattenings must agree bitwise
    rng = np.random.default_rng(11)
    spaces = [C11, GradedSpace(3, (0, 1, 0))]
    for sa, sb, sc in itertools.product(spaces, repeat=3):
        def draw(s):
            m = rng.integers(-3, 4, size=(s.dim, s.dim)) \
                + 1j * rng.integers(-3, 4, size=(s.dim, s.dim))
            return SuperMatrix(s, s, m)
        a, b, c = draw(sa), draw(sb), draw(sc)
        left = graded_kron(graded_kron(a, b), c)
        right = graded_kron(a, graded_kron(b, c))
        assert max_abs(left - right) == 0.0


def test_kron_associativity_generic_complex():
    rng = np.random.default_rng(12)
    a = SuperMatrix(C11, C11, rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
    b = SuperMatrix(C11, C11, rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
    c = SuperMatrix(C11, C11, rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
    left = graded_kron(graded_kron(a, b), c)
    right = graded_kron(a, graded_kron(b, c))
    assert max_abs(left - right) < 1e-14


def test_perm_is_involution():
    p = graded_perm(C11, C11)
    assert max_abs(p @ p - graded_kron(identity(C11), identity(C11))) == 0.0


def test_perm_vector_action():
    p = graded_perm(C11, C11).m
    # even (x) odd: no sign
    v = np.zeros(4)
    v[0 * 2 + 1] = 1.0  # e0 (x) e1
    out = p @ v
    expect = np.zeros(4)
    expect[1 * 2 + 0] = 1.0
    assert max_abs(out - expect) == 0.0
    # odd (x) odd: Koszul sign
    v = np.zeros(4)
    v[1 * 2 + 1] = 1.0
    assert max_abs(p @ v + v) == 0.0


def test_perm_intertwines_kron():
    p = graded_perm(C11, C11)
    for (ai, aj), (bi, bj) in itertools.product(ALL_UNITS, repeat=2):
        a, b = E(ai, aj), E(bi, bj)
        lhs = p @ graded_kron(a, b) @ p
        rhs = (-1) ** (a.parity * b.parity) * graded_kron(b, a)
        assert max_abs(lhs - rhs) == 0.0


def test_perm_dim_mismatch():
    with pytest.raises(ValueError):
        graded_perm(C11, GradedSpace(3, (0, 0, 1)))


def test_graded_comm_examples():
    # both odd: anticommutator of E12, E21 is the identity
    assert max_abs(graded_comm(E(1, 2), E(2, 1)) - identity(C11)) == 0.0
    rng = np.random.default_rng(3)
    a = SuperMatrix(C11, C11, rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
    assert max_abs(graded_comm(identity(C11), a, EVEN, EVEN)) == 0.0
    # (even, odd) pair
    assert max_abs(graded_comm(E(1, 1), E(1, 2)) - E(1, 2)) == 0.0


def test_graded_comm_requires_parity():
    mixed = E(1, 1) + E(1, 2)
    with pytest.raises(ValueError):
        graded_comm(mixed, E(2, 1))


def test_matmul_space_mismatch():
    a = zeros(C11, GradedSpace(3, (0, 1, 1)))
    with pytest.raises(ValueError):
        a @ a


def test_json_round_trip_bit_exact():
    rng = np.random.default_rng(5)
    m = rng.normal(size=(2, 2)) / 3.0 + 1j * rng.normal(size=(2, 2)) * 1e-17
    sm = SuperMatrix(C11, C11, m)
    blob = json.dumps(sm.to_dict())
    back = SuperMatrix.from_dict(json.loads(blob))
    assert np.array_equal(back.m, sm.m)
    assert back.space_out == sm.space_out and back.space_in == sm.space_in

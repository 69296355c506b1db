import random

import pytest

from braidcg.braid_core import artin_generators, random_word
from braidcg.burau_rep import burau_int, generator_matrix
from braidcg.matrix import IntegerMatrix
from braidcg.symplectic_form import (
    form_equations,
    invariant_forms,
    is_alternating_nondegenerate,
    preserves,
    symplectic_witness,
)


def test_n3_form_space():
    space = invariant_forms(3)
    assert space.rank == 1
    J = space.basis[0]
    assert J in (IntegerMatrix(((0, 1), (-1, 0))), IntegerMatrix(((0, -1), (1, 0))))


def test_alternating_examples():
    assert is_alternating_nondegenerate(IntegerMatrix(((0, 1), (-1, 0))))
    assert not is_alternating_nondegenerate(IntegerMatrix.identity(2))
    assert not is_alternating_nondegenerate(IntegerMatrix(((0, 0), (0, 0))))
    assert not is_alternating_nondegenerate(IntegerMatrix(((1, 1), (-1, 0))))


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8, 9])
def test_basis_exact_and_independent(n):
    space = invariant_forms(n)
    gens = [generator_matrix(n, i) for i in range(1, n)]
    eqs = form_equations(gens)
    for J in space.basis:
        assert any(any(r) for r in J.rows)
        flat = [x for r in J.rows for x in r]
        assert all(sum(c * x for c, x in zip(row, flat)) == 0 for row in eqs)
        assert all(preserves(G, J) for G in gens)
        first = next(x for x in flat if x)
        assert first > 0
    # independence: the flattened basis has full rank (pivot columns differ)
    pivots = [next(k for k, x in enumerate(x for r in J.rows for x in r) if x) for J in space.basis]
    assert len(set(pivots)) == len(pivots)


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_odd_n_has_symplectic_witness(n):
    J = symplectic_witness(invariant_forms(n))
    assert J is not None and is_alternating_nondegenerate(J)
    rng = random.Random(n)
    for _ in range(200):
        M = burau_int(random_word(n, 30, artin_generators(n), rng))
        assert M.transpose() @ J @ M == J


@pytest.mark.parametrize("n", [4, 6, 8])
def test_even_n_reported_as_data(n):
    space = invariant_forms(n)
    J = symplectic_witness(space)
    # odd dimension: no alternating form is nondegenerate
    assert J is None or not is_alternating_nondegenerate(J)


def test_rejects_small_n():
    with pytest.raises(ValueError):
        invariant_forms(2)

from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from conftest import random_rows, subspace_pairs, subspaces
from stabgeom.errors import AmbientMismatch, FieldMismatch, IndexOutOfRange, OddAmbient
from stabgeom.field import GF2, field_of_order
from stabgeom.homology import ghz_lagrangian
from stabgeom.linalg import (
    MatrixGF,
    SymplecticLayout,
    coordinate_subspace,
    flag_subspace,
    full_space,
    intersect,
    intersect_coordinate,
    is_isotropic,
    is_lagrangian,
    kernel_on,
    matrix_rank,
    orth_complement,
    pack,
    rref,
    span_sum,
    subspace_from_rows,
    symplectic_complement,
    zero_subspace,
)

F3 = field_of_order(3)


def S(rows, q=2, n=None):
    f = field_of_order(q)
    return subspace_from_rows(f, n if n is not None else len(rows[0]), rows)


class TestRref:
    def test_identity(self):
        M = MatrixGF.from_lists(GF2, [[1, 0], [0, 1]])
        R, r = rref(M)
        assert r == 2 and R.to_lists() == [[1, 0], [0, 1]]

    def test_duplicate_row(self):
        R, r = rref(MatrixGF.from_lists(GF2, [[1, 1], [1, 1]]))
        assert r == 1 and R.to_lists() == [[1, 1]]

    def test_f3_hand_elimination(self):
        R, r = rref(MatrixGF.from_lists(F3, [[1, 2], [2, 1]]))
        # (2,1) = 2*(1,2) over F_3, so the rank is 1
        assert r == 1 and R.to_lists() == [[1, 2]]
        R, r = rref(MatrixGF.from_lists(F3, [[1, 2], [2, 2]]))
        assert r == 2 and R.to_lists() == [[1, 0], [0, 1]]

    def test_field_mismatch(self):
        with pytest.raises(FieldMismatch):
            rref(MatrixGF.from_lists(GF2, [[1]]), F3)

    def test_matmul(self):
        A = MatrixGF.from_lists(F3, [[1, 2], [0, 1]])
        B = MatrixGF.from_lists(F3, [[2, 0], [1, 1]])
        assert (A @ B).to_lists() == [[1, 2], [1, 1]]


class TestIntersect:
    def test_idempotent(self):
        A = S([[1, 1, 0], [0, 0, 1]])
        assert intersect(A, A) == A

    def test_disjoint_lines(self):
        assert intersect(S([[1, 0]]), S([[0, 1]])).dim == 0

    def test_plane_meets_flag(self):
        A = S([[1, 1, 0], [0, 0, 1]])
        B = S([[1, 0, 0], [0, 1, 0]])
        assert intersect(A, B) == S([[1, 1, 0]])

    def test_mismatch(self):
        with pytest.raises(AmbientMismatch):
            intersect(S([[1, 0]]), S([[1, 0, 0]]))


class TestComplements:
    def test_orth_examples(self):
        assert orth_complement(zero_subspace(GF2, 3)) == full_space(GF2, 3)
        assert orth_complement(S([[1, 0]])) == S([[0, 1]])
        assert orth_complement(S([[1, 1, 0]])) == S([[1, 1, 0], [0, 0, 1]])

    def test_symplectic_examples(self):
        assert symplectic_complement(zero_subspace(GF2, 4)) == full_space(GF2, 4)
        # omega((1,0|0,0), v) = v_z1
        comp = symplectic_complement(S([[1, 0, 0, 0]]))
        assert comp.dim == 3
        assert all((v >> 2) & 1 == 0 for v in comp.vectors())
        L = ghz_lagrangian(2)
        assert symplectic_complement(L) == L and is_lagrangian(L)

    def test_odd_ambient(self):
        with pytest.raises(OddAmbient):
            symplectic_complement(S([[1, 0, 0]]))


class TestCoordinate:
    def test_examples(self):
        assert coordinate_subspace(GF2, 3, []).dim == 0
        assert coordinate_subspace(GF2, 3, [0, 1]) == flag_subspace(GF2, 3, 2)
        C = coordinate_subspace(F3, 3, [0, 2])
        assert C.dim == 2 and len(list(C.vectors())) == 9

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            coordinate_subspace(GF2, 3, [3])

    @given(subspaces(), st.data())
    def test_intersect_coordinate_matches_intersect(self, A, data):
        support = data.draw(st.sets(st.integers(0, max(A.ambient - 1, 0)))) if A.ambient else set()
        expected = intersect(A, coordinate_subspace(A.field, A.ambient, support))
        assert intersect_coordinate(A, support) == expected

    def test_kernel_on(self):
        rows = [pack(GF2, r) for r in ([1, 1, 0], [0, 1, 1])]
        ker = kernel_on(GF2, rows, 3, [1])
        assert ker == [pack(GF2, [1, 0, 1])]


class TestProperties:
    @pytest.mark.parametrize("q", [2, 3, 4])
    def test_canonical_under_row_operations(self, q):
        f = field_of_order(q)
        rng = random.Random(q)
        for _ in range(10):
            n, k = rng.randrange(1, 7), rng.randrange(0, 6)
            rows = random_rows(rng, q, n, k)
            base = subspace_from_rows(f, n, rows)
            for _ in range(100):
                m = [list(r) for r in rows]
                rng.shuffle(m)
                if len(m) >= 2:
                    i, j = rng.sample(range(len(m)), 2)
                    c = rng.randrange(q)
                    m[i] = [f.add(a, f.mul(c, b)) for a, b in zip(m[i], m[j])]
                if m:
                    i, c = rng.randrange(len(m)), rng.randrange(1, q)
                    m[i] = [f.mul(c, a) for a in m[i]]
                assert subspace_from_rows(f, n, m) == base

    @given(subspace_pairs())
    def test_dimension_formula(self, pair):
        A, B = pair
        assert span_sum(A, B).dim + intersect(A, B).dim == A.dim + B.dim

    @given(subspace_pairs())
    def test_intersection_inside_both(self, pair):
        A, B = pair
        I = intersect(A, B)
        assert I <= A and I <= B and A <= span_sum(A, B)

    @given(subspaces())
    def test_orth_involution(self, A):
        P = orth_complement(A)
        assert orth_complement(P) == A and P.dim == A.ambient - A.dim

    @given(subspaces(max_ambient=4).filter(lambda A: A.ambient % 2 == 0))
    def test_symplectic_involution(self, A):
        P = symplectic_complement(A)
        assert symplectic_complement(P) == A and P.dim == A.ambient - A.dim

    @given(subspace_pairs())
    def test_intersection_complement_duality(self, pair):
        A, B = pair
        assert orth_complement(intersect(A, B)) == span_sum(orth_complement(A), orth_complement(B))

    @given(subspaces(max_ambient=6).filter(lambda A: A.ambient % 2 == 0))
    def test_isotropic_iff_inside_complement(self, A):
        assert is_isotropic(A) == (A <= symplectic_complement(A))

    def test_omega_alternating(self):
        lay = SymplecticLayout(2)
        f = field_of_order(5)
        rng = random.Random(0)
        for _ in range(50):
            u = tuple(rng.randrange(5) for _ in range(4))
            v = tuple(rng.randrange(5) for _ in range(4))
            assert lay.omega(f, u, u) == 0
            assert f.add(lay.omega(f, u, v), lay.omega(f, v, u)) == 0

    def test_matrix_rank_agrees(self):
        rng = random.Random(1)
        for q in (2, 3, 9):
            f = field_of_order(q)
            for _ in range(20):
                rows = random_rows(rng, q, 5, rng.randrange(6))
                if rows:
                    assert matrix_rank(MatrixGF.from_lists(f, rows)) == subspace_from_rows(f, 5, rows).dim

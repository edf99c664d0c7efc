import itertools

import numpy as np
import pytest

from netmoments import (EDGE, THREESTAR, TRIANGLE, VSHAPE, NotConnectedError,
                        conditional_expectation_h, contains, make_motif,
                        motif_from_config)

TRI = np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
PATH3 = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]])


class TestMakeMotif:
    def test_triangle_is_cyclic(self):
        assert make_motif(TRI).shape_class == "cyclic"

    def test_three_star_is_acyclic(self):
        m = make_motif([[0, 1, 1, 1], [1, 0, 0, 0], [1, 0, 0, 0], [1, 0, 0, 0]])
        assert m.shape_class == "acyclic"
        assert (m.r, m.s) == (4, 3)

    def test_four_cycle_is_cyclic(self):
        m = make_motif([[0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 1], [1, 0, 1, 0]])
        assert m.shape_class == "cyclic"

    def test_disconnected_rejected(self):
        two_edges = np.zeros((4, 4), dtype=int)
        two_edges[0, 1] = two_edges[1, 0] = 1
        two_edges[2, 3] = two_edges[3, 2] = 1
        with pytest.raises(NotConnectedError):
            make_motif(two_edges)

    def test_asymmetric_rejected(self):
        with pytest.raises(ValueError, match="symmetric"):
            make_motif([[0, 1], [0, 0]])

    def test_self_loop_rejected(self):
        with pytest.raises(ValueError, match="diagonal"):
            make_motif([[1, 1], [1, 0]])

    def test_size_cap(self):
        a = np.ones((6, 6), dtype=int) - np.eye(6, dtype=int)
        with pytest.raises(ValueError, match="capped"):
            make_motif(a)
        with pytest.raises(ValueError, match="at least 2"):
            make_motif([[0]])

    def test_builtin_shapes(self):
        assert (EDGE.r, EDGE.s, EDGE.shape_class) == (2, 1, "acyclic")
        assert (TRIANGLE.r, TRIANGLE.s, TRIANGLE.shape_class) == (3, 3, "cyclic")
        assert (VSHAPE.r, VSHAPE.s, VSHAPE.shape_class) == (3, 2, "acyclic")
        assert (THREESTAR.r, THREESTAR.s, THREESTAR.shape_class) == (4, 3, "acyclic")


class TestContains:
    def test_triangle_contains_vshape(self):
        assert contains(TRI, VSHAPE) == 1

    def test_path_lacks_triangle(self):
        assert contains(PATH3, TRIANGLE) == 0

    def test_path_contains_vshape(self):
        assert contains(PATH3, VSHAPE) == 1

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="nodes"):
            contains(TRI, THREESTAR)

    def test_permutation_invariance(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            a = np.zeros((4, 4), dtype=int)
            iu = np.triu_indices(4, 1)
            a[iu] = rng.integers(0, 2, iu[0].size)
            a |= a.T
            base = contains(a, THREESTAR)
            perm = rng.permutation(4)
            assert contains(a[np.ix_(perm, perm)], THREESTAR) == base

    def test_monotone_in_edges(self):
        rng = np.random.default_rng(8)
        for motif in (TRIANGLE, VSHAPE):
            for _ in range(50):
                a = np.zeros((3, 3), dtype=int)
                iu = np.triu_indices(3, 1)
                a[iu] = rng.integers(0, 2, iu[0].size)
                a |= a.T
                before = contains(a, motif)
                zeros = [(i, j) for i, j in zip(*iu) if a[i, j] == 0]
                if not zeros:
                    continue
                i, j = zeros[rng.integers(len(zeros))]
                b = a.copy()
                b[i, j] = b[j, i] = 1
                assert contains(b, motif) >= before

    def test_vshape_iff_two_edges(self):
        # 3-node special case: containment is exactly "at least 2 edges".
        for bits in itertools.product((0, 1), repeat=3):
            a = np.zeros((3, 3), dtype=int)
            for (i, j), b in zip(((0, 1), (0, 2), (1, 2)), bits):
                a[i, j] = a[j, i] = b
            assert contains(a, VSHAPE) == (1 if sum(bits) >= 2 else 0)


class TestConditionalExpectation:
    def test_triangle_is_product(self):
        p, q, t = 0.3, 0.7, 0.45
        w = np.array([[0, p, q], [p, 0, t], [q, t, 0]])
        assert conditional_expectation_h(w, TRIANGLE) == pytest.approx(p * q * t, abs=1e-15)

    def test_vshape_at_half(self):
        w = np.full((3, 3), 0.5)
        np.fill_diagonal(w, 0.0)
        assert conditional_expectation_h(w, VSHAPE) == pytest.approx(0.5, abs=1e-15)

    def test_binary_input_equals_contains(self):
        rng = np.random.default_rng(11)
        for motif in (EDGE, TRIANGLE, VSHAPE, THREESTAR):
            r = motif.r
            for _ in range(30):
                a = np.zeros((r, r), dtype=float)
                iu = np.triu_indices(r, 1)
                a[iu] = rng.integers(0, 2, iu[0].size)
                a += a.T
                expected = contains(a.astype(int), motif)
                assert conditional_expectation_h(a, motif) == pytest.approx(expected, abs=1e-12)

    def test_monotone_in_each_entry(self):
        rng = np.random.default_rng(12)
        for motif in (TRIANGLE, VSHAPE, THREESTAR):
            r = motif.r
            for _ in range(25):
                w = np.zeros((r, r))
                iu = np.triu_indices(r, 1)
                w[iu] = rng.random(iu[0].size)
                w += w.T
                base = conditional_expectation_h(w, motif)
                k = rng.integers(iu[0].size)
                i, j = iu[0][k], iu[1][k]
                w2 = w.copy()
                w2[i, j] = w2[j, i] = min(1.0, w[i, j] + rng.uniform(0, 1 - w[i, j]))
                assert conditional_expectation_h(w2, motif) >= base - 1e-12

    def test_multilinear_in_each_entry(self):
        # Linear in any single entry: the value at the midpoint matches
        # the average of the endpoint values.
        rng = np.random.default_rng(13)
        for motif in (TRIANGLE, THREESTAR):
            r = motif.r
            w = np.zeros((r, r))
            iu = np.triu_indices(r, 1)
            w[iu] = rng.random(iu[0].size)
            w += w.T
            for k in range(iu[0].size):
                i, j = iu[0][k], iu[1][k]
                vals = []
                for t in (0.0, 0.5, 1.0):
                    wt = w.copy()
                    wt[i, j] = wt[j, i] = t
                    vals.append(conditional_expectation_h(wt, motif))
                assert vals[1] == pytest.approx((vals[0] + vals[2]) / 2, abs=1e-12)

    def test_out_of_range_rejected(self):
        w = np.array([[0, 1.2], [1.2, 0]])
        with pytest.raises(ValueError, match=r"\[0, 1\]"):
            conditional_expectation_h(w, EDGE)


class TestConfig:
    def test_three_star_from_edges(self):
        m = motif_from_config({"nodes": 4, "edges": [[1, 2], [1, 3], [1, 4]]})
        assert (m.r, m.s, m.shape_class) == (4, 3, "acyclic")
        assert sorted(m.degrees) == [1, 1, 1, 3]

    def test_builtin_names(self):
        assert motif_from_config("triangle") is not None
        with pytest.raises(ValueError, match="unknown motif"):
            motif_from_config("pentagon")

    def test_unknown_keys_rejected(self):
        with pytest.raises(ValueError, match="unknown motif config"):
            motif_from_config({"nodes": 3, "edges": [[1, 2]], "weight": 2})

    def test_bad_edges(self):
        with pytest.raises(ValueError, match="1-based"):
            motif_from_config({"nodes": 3, "edges": [[0, 1], [1, 2]]})
        with pytest.raises(ValueError, match="self-loop"):
            motif_from_config({"nodes": 3, "edges": [[1, 1], [1, 2]]})

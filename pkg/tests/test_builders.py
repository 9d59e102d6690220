import pytest

from lgsext.builders import (
    BuilderError,
    cuntz,
    cuntz_krieger,
    dyck,
    dyck_jkl_reference,
    dyck_words,
    markov_coded,
)
from lgsext.intlinalg import IntMatrix, LatticeBasis, kernel_basis
from lgsext.lgs import TruncatedLambdaGraphSystem, validate

import oracles


# --- Cuntz and Cuntz-Krieger -------------------------------------------------

def test_cuntz_shape():
    lgs = cuntz(3, 4)
    assert lgs.vertex_counts == (1, 1, 1, 1, 1)
    assert lgs.summed_matrix(0).tolist() == [[3]]
    assert validate(lgs).passed
    with pytest.raises(BuilderError):
        cuntz(1, 4)
    with pytest.raises(BuilderError):
        cuntz(2, 0)


def test_cuntz_krieger_labels_edges_by_source():
    lgs = cuntz_krieger([[1, 1], [1, 0]], 3)
    assert lgs.symbol_matrix(0, "1").tolist() == [[1, 1], [0, 0]]
    assert lgs.symbol_matrix(0, "2").tolist() == [[0, 0], [1, 0]]
    assert lgs.summed_matrix(2).tolist() == [[1, 1], [1, 0]]
    assert validate(lgs).passed


def test_target_labels_would_not_be_left_resolving():
    # labelling by target puts column 0 of symbol 1 in two rows
    one = [[1, 0], [1, 0]]
    two = [[0, 1], [0, 0]]
    ident = [[1, 0], [0, 1]]
    lgs = TruncatedLambdaGraphSystem(["1", "2"], 0, [2, 2, 2],
                                     [{"1": one, "2": two}] * 2, [ident] * 2)
    assert "left-resolving" in validate(lgs).kinds()


@pytest.mark.parametrize("A", [[[1, 1], [0, 0]], [[1, 0], [1, 0]], [[1, 2], [1, 1]],
                               [[1, -1], [1, 1]], [[1, 1, 0], [1, 1, 0]]])
def test_cuntz_krieger_rejects_bad_matrices(A):
    with pytest.raises(BuilderError):
        cuntz_krieger(A, 3)


def test_cuntz_krieger_needs_two_symbols():
    with pytest.raises(BuilderError):
        cuntz_krieger([[1]], 3)


# --- Markov coded ------------------------------------------------------------

# M_{3,4} - I_{3,4} as displayed, in N x N blocks: 1 = 1_N, -1 = -1_N, "A" = A^t
DISPLAYED_M_MINUS_I_34 = [
    [0, -1, 0, 0, 0, 0, 0, 0, 0, 1],
    [0, 1, -1, 0, 0, 0, 0, 0, 1, 0],
    [0, 0, 1, -1, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 1, -1, 0, 1, 0, 0, 0],
    ["A", "A", "A", "A", "A", -1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, -1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, -1, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1, 0, 0],
]


def expand_blocks(pattern, A):
    N = len(A)
    out = []
    for brow in pattern:
        for r in range(N):
            row = []
            for b in brow:
                for c in range(N):
                    if b == "A":
                        row.append(A[c][r])
                    else:
                        row.append(b if r == c else 0)
            out.append(row)
    return out


@pytest.mark.parametrize("A", [[[1, 1], [1, 1]], [[2, 1], [1, 1]], [[1, 1], [1, 0]],
                               [[0, 1, 1], [1, 0, 1], [1, 1, 1]]])
def test_markov_matches_displayed_level_three(A):
    lgs = markov_coded(A, 2)
    N = len(A)
    assert lgs.base_level == 3
    assert lgs.vertex_counts == (8 * N, 10 * N, 12 * N)
    m_minus_i = lgs.summed_matrix(3) - lgs.iota_matrix(3)
    assert m_minus_i.tolist() == expand_blocks(DISPLAYED_M_MINUS_I_34, A)
    assert validate(lgs).passed


def test_markov_symbols_and_parallel_edges():
    lgs = markov_coded([[2, 1], [1, 1]], 2)
    # five edges in the graph, so e1..e5 besides b and c
    assert list(lgs.alphabet) == ["b", "c", "e1", "e2", "e3", "e4", "e5"]


def test_markov_rejects_degenerate_graph():
    with pytest.raises(BuilderError):
        markov_coded([[1, 0], [0, 0]], 2)


def test_markov_kernel_at_level_three_matches_explicit_constraints():
    # x6 = x7 = x8 = 0, x4 = x5 = x3, x9 = x3 - x2, x10 = x2, A^t(x1 + x2 + 3 x3) = 0
    for A in ([[1, 1], [1, 1]], [[2, 1], [1, 1]], [[1, 1, 0], [0, 1, 1], [1, 0, 1]]):
        lgs = markov_coded(A, 1)
        N = len(A)
        constraints = level3_constraints(A)
        direct = kernel_basis(lgs.difference_matrix(3))
        explicit = kernel_basis(IntMatrix.from_rows(constraints, 10 * N))
        assert direct == explicit
        # independent rational check: same row space
        diff = lgs.difference_matrix(3).tolist()
        r = oracles.rank(constraints)
        assert oracles.rank(diff) == r == oracles.rank(diff + constraints)


def level3_constraints(A):
    N = len(A)

    def block(k, i):
        # coordinate i of block x_k (1-based k)
        return (k - 1) * N + i

    rows = []

    def eq(terms):
        v = [0] * (10 * N)
        for idx, c in terms:
            v[idx] += c
        rows.append(v)

    for i in range(N):
        for k in (6, 7, 8):
            eq([(block(k, i), 1)])
        eq([(block(4, i), 1), (block(3, i), -1)])
        eq([(block(5, i), 1), (block(3, i), -1)])
        eq([(block(9, i), 1), (block(3, i), -1), (block(2, i), 1)])
        eq([(block(10, i), 1), (block(2, i), -1)])
        # row i of A^t(x1 + x2 + 3 x3)
        eq([(block(1, j), A[j][i]) for j in range(N)]
           + [(block(2, j), A[j][i]) for j in range(N)]
           + [(block(3, j), 3 * A[j][i]) for j in range(N)])
    return rows


# --- Dyck --------------------------------------------------------------------

DISPLAYED = {
    "J12": [[1, 0, 1, 0], [0, 1, 0, 1]],
    "J23": [[1, 0, 0, 0, 1, 0, 0, 0], [0, 1, 0, 0, 0, 1, 0, 0],
            [0, 0, 1, 0, 0, 0, 1, 0], [0, 0, 0, 1, 0, 0, 0, 1]],
    "K12": [[1, 1, 1, 1], [1, 1, 1, 1]],
    "K23": [[1, 1, 1, 1, 0, 0, 0, 0], [0, 0, 0, 0, 1, 1, 1, 1],
            [1, 1, 1, 1, 0, 0, 0, 0], [0, 0, 0, 0, 1, 1, 1, 1]],
    "L12": [[1, 1, 0, 0], [0, 0, 1, 1]],
    "L23": [[1, 1, 0, 0, 0, 0, 0, 0], [0, 0, 1, 1, 0, 0, 0, 0],
            [0, 0, 0, 0, 1, 1, 0, 0], [0, 0, 0, 0, 0, 0, 1, 1]],
    "D01": [[-2, -2]],
    "D12": [[-1, 0, -2, -1], [-1, -2, 0, -1]],
    "D23": [[-1, 0, -1, -1, -1, 0, 0, 0], [0, -1, 1, 1, -1, -2, -1, -1],
            [-1, -1, -2, -1, 1, 1, -1, 0], [0, 0, 0, -1, -1, -1, 0, -1]],
}


def test_dyck_vertex_counts():
    assert dyck(2, 6).vertex_counts == (1, 2, 4, 8, 16, 32, 64)
    assert dyck(3, 3).vertex_counts == (1, 3, 9, 27)
    assert dyck_words(2, 2) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_dyck_difference_matrices_match_display():
    lgs = dyck(2, 3)
    assert lgs.difference_matrix(0).tolist() == DISPLAYED["D01"]
    assert lgs.difference_matrix(1).tolist() == DISPLAYED["D12"]
    assert lgs.difference_matrix(2).tolist() == DISPLAYED["D23"]


def test_dyck_jkl_reference_matches_display():
    J1, K1, L1 = dyck_jkl_reference(1)
    J2, K2, L2 = dyck_jkl_reference(2)
    assert (J1.tolist(), K1.tolist(), L1.tolist()) == (
        DISPLAYED["J12"], DISPLAYED["K12"], DISPLAYED["L12"])
    assert (J2.tolist(), K2.tolist(), L2.tolist()) == (
        DISPLAYED["J23"], DISPLAYED["K23"], DISPLAYED["L23"])


def test_dyck_level_zero_k_has_both_beta_labels():
    # I - A = [-2, -2] forces K_{0,1} = [2, 2] given J_{0,1} = L_{0,1} = [1, 1]
    J, K, L = dyck_jkl_reference(0)
    assert (L - J - K).tolist() == DISPLAYED["D01"]
    assert K.tolist() == [[2, 2]]


def test_dyck_builder_agrees_with_jkl_rules():
    lgs = dyck(2, 7)
    for l in range(7):
        J, K, L = dyck_jkl_reference(l)
        assert lgs.iota_matrix(l) == L
        assert lgs.summed_matrix(l) == J + K
        alphas = lgs.symbol_matrix(l, "alpha1") + lgs.symbol_matrix(l, "alpha2")
        assert alphas == J


def test_dyck_symbol_examples_at_level_one():
    lgs = dyck(2, 2)
    # alpha_j sends u to (beta_j, u); beta_j hits every v whose (beta_j, v) prefix is u
    assert lgs.symbol_matrix(1, "alpha1").tolist() == [[1, 0, 0, 0], [0, 1, 0, 0]]
    assert lgs.symbol_matrix(1, "beta1").tolist() == [[1, 1, 1, 1], [0, 0, 0, 0]]
    assert lgs.symbol_matrix(1, "beta2").tolist() == [[0, 0, 0, 0], [1, 1, 1, 1]]
    assert lgs.symbol_matrix(0, "beta1").tolist() == [[1, 1]]


def test_literal_k_index_rule_overruns_for_lower_rows():
    # rows i > m(l-1) would point at columns beyond m(l+1) = 8 at l = 2
    mprev, mnext = 2, 8
    cols = [4 * i - 3 - mprev for i in (3, 4)]
    assert max(c + 3 for c in cols) > mnext


@pytest.mark.parametrize("N,depth", [(2, 5), (3, 3), (4, 2)])
def test_dyck_validates(N, depth):
    report = validate(dyck(N, depth))
    assert report.passed, report.summary()
    assert not report.warnings


def test_dyck_size_cap(monkeypatch):
    monkeypatch.setenv("LGSEXT_MAX_VERTICES", "100")
    with pytest.raises(BuilderError, match="cap is 100"):
        dyck(2, 8)
    assert dyck(2, 6).m(6) == 64
    assert dyck(2, 8, max_vertices=256).m(8) == 256
    monkeypatch.setenv("LGSEXT_MAX_VERTICES", "lots")
    with pytest.raises(BuilderError):
        dyck(2, 2)


def test_sum_zero_lattice_helper():
    assert LatticeBasis.standard(3).intersect_sum_zero().rank == 2

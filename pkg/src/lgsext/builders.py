"""Constructors for the example families.

* :func:`cuntz` -- one vertex per level, N loops.
* :func:`cuntz_krieger` -- constant system of a 0/1 transition matrix.
* :func:`markov_coded` -- canonical system of the Markov coded system of
  a directed graph, levels 3 and up.
* :func:`dyck` -- Cantor-horizon (minimal) presentation of the Dyck shift.
"""
from __future__ import annotations

import itertools
import os

from .intlinalg import IntMatrix, as_matrix
from .lgs import StructuralError, TruncatedLambdaGraphSystem

SIZE_CAP_ENV = "LGSEXT_MAX_VERTICES"
DEFAULT_SIZE_CAP = 4096


class BuilderError(ValueError):
    """A builder precondition failed."""


def size_cap() -> int:
    raw = os.environ.get(SIZE_CAP_ENV)
    if raw is None:
        return DEFAULT_SIZE_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise BuilderError(f"{SIZE_CAP_ENV}={raw!r} is not an integer") from None
    if cap < 1:
        raise BuilderError(f"{SIZE_CAP_ENV} must be positive")
    return cap


def _check_depth(depth: int) -> None:
    if depth < 1:
        raise BuilderError(f"depth must be at least 1, got {depth}")


def _zeros(r: int, c: int) -> list[list[int]]:
    return [[0] * c for _ in range(r)]


def cuntz(N: int, depth: int) -> TruncatedLambdaGraphSystem:
    """Single vertex per level with N self-loops."""
    if N < 2:
        raise BuilderError(f"Cuntz systems need N >= 2, got {N}")
    _check_depth(depth)
    symbols = tuple(f"s{k}" for k in range(1, N + 1))
    one = IntMatrix.from_rows([[1]])
    return TruncatedLambdaGraphSystem(
        symbols, 0, [1] * (depth + 1),
        [{s: one for s in symbols} for _ in range(depth)],
        [one] * depth)


def check_essential(A: IntMatrix, zero_one: bool = False) -> None:
    if A.rows != A.cols or A.rows == 0:
        raise BuilderError(f"transition matrix must be square and nonempty, got {A.shape}")
    if any(x < 0 for x in A.entries):
        raise BuilderError("transition matrix has negative entries")
    if zero_one and any(x not in (0, 1) for x in A.entries):
        raise BuilderError("transition matrix must have 0/1 entries")
    for i, row in enumerate(A):
        if not any(row):
            raise BuilderError(f"row {i} of the transition matrix is zero (degenerate)")
    for j, col in enumerate(A.columns()):
        if not any(col):
            raise BuilderError(f"column {j} of the transition matrix is zero (degenerate)")


def cuntz_krieger(A, depth: int) -> TruncatedLambdaGraphSystem:
    """Constant system of a 0/1 matrix: N vertices per level, iota the identity.

    The edge i -> j (present iff ``A[i, j] == 1``) carries label ``i``, so
    the symbol-i matrix is row i of A and the sum over symbols is A.
    """
    A = as_matrix(A)
    check_essential(A, zero_one=True)
    _check_depth(depth)
    N = A.rows
    if N < 2:
        # a 1x1 0/1 essential matrix is [1]: a one-symbol alphabet
        raise BuilderError("Cuntz-Krieger systems need N >= 2 symbols")
    symbols = tuple(str(k) for k in range(1, N + 1))
    per_symbol = {}
    for i, s in enumerate(symbols):
        m = _zeros(N, N)
        m[i] = list(A.row(i))
        per_symbol[s] = IntMatrix.from_rows(m)
    ident = IntMatrix.identity(N)
    return TruncatedLambdaGraphSystem(
        symbols, 0, [N] * (depth + 1), [per_symbol] * depth, [ident] * depth)


# ---------------------------------------------------------------------------
# Markov coded systems

MARKOV_BASE_LEVEL = 3


def _graph_edges(A: IntMatrix) -> list[tuple[int, int]]:
    # (source, target) per edge, row-major with multiplicity
    return [(i, j) for i in range(A.rows) for j in range(A.cols) for _ in range(A[i, j])]


def markov_block_patterns(level: int) -> dict[str, list[tuple[int, int]]]:
    """Block positions (0-based) of the identity blocks of M_{l,l+1} by role.

    ``b`` collects the upper diagonal band, the lower diagonal band and
    the trailing blocks of the last block row; ``c`` the anti-diagonal
    band.  ``iota`` is the block pattern of I_{l,l+1}; ``edge`` the block
    positions filled by A^t.
    """
    n = level + 1
    b, c = [], []
    for k in range(1, n + 1):
        b.append((k - 1, k - 1))
        c.append((k - 1, 2 * n + 2 - k))
    for k in range(n + 2, 2 * n):
        b.append((k - 1, k - 1))
    b += [(2 * n - 1, 2 * n - 1), (2 * n - 1, 2 * n), (2 * n - 1, 2 * n + 1)]
    edge = [(n, k) for k in range(n + 1)]
    iota = [(0, 0), (0, 1)] + [(k - 1, k) for k in range(2, 2 * n)] + [(2 * n - 1, 2 * n),
                                                                         (2 * n - 1, 2 * n + 1)]
    return {"b": b, "c": c, "edge": edge, "iota": iota}


def markov_coded(A, depth: int) -> TruncatedLambdaGraphSystem:
    """Canonical system of the Markov coded system of the graph with matrix A.

    ``A[i][j]`` counts edges v_i -> v_j.  Levels start at 3, where
    ``m(l) = 2 (l + 1) N``.
    """
    A = as_matrix(A)
    check_essential(A)
    _check_depth(depth)
    N = A.rows
    edges = _graph_edges(A)
    symbols = ("b", "c") + tuple(f"e{k}" for k in range(1, len(edges) + 1))
    counts = [2 * (l + 1) * N for l in range(MARKOV_BASE_LEVEL, MARKOV_BASE_LEVEL + depth + 1)]
    sym_mats, iota_mats = [], []
    for k in range(depth):
        l = MARKOV_BASE_LEVEL + k
        rows, cols = counts[k], counts[k + 1]
        pat = markov_block_patterns(l)
        mats = {}
        for role in ("b", "c"):
            m = _zeros(rows, cols)
            for br, bc in pat[role]:
                for t in range(N):
                    m[br * N + t][bc * N + t] = 1
            mats[role] = IntMatrix.from_rows(m, cols)
        for e, (src, tgt) in enumerate(edges, start=1):
            m = _zeros(rows, cols)
            # A^t block: row = target vertex, column = source vertex
            for br, bc in pat["edge"]:
                m[br * N + tgt][bc * N + src] = 1
            mats[f"e{e}"] = IntMatrix.from_rows(m, cols)
        im = _zeros(rows, cols)
        for br, bc in pat["iota"]:
            for t in range(N):
                im[br * N + t][bc * N + t] = 1
        sym_mats.append(mats)
        iota_mats.append(IntMatrix.from_rows(im, cols))
    return TruncatedLambdaGraphSystem(symbols, MARKOV_BASE_LEVEL, counts, sym_mats, iota_mats)


# ---------------------------------------------------------------------------
# Dyck shifts


def dyck_words(N: int, length: int) -> list[tuple[int, ...]]:
    """Vertex words at a level, lexicographic with the first letter most significant."""
    return list(itertools.product(range(N), repeat=length))


def dyck(N: int, depth: int, max_vertices: int | None = None) -> TruncatedLambdaGraphSystem:
    """Cantor-horizon presentation of the Dyck shift on N bracket pairs.

    Level l has the N^l words in beta_1..beta_N.  Edges into a vertex v of
    level l+1 from u in level l:

    * ``alpha_j``: iff v = (beta_j, u);
    * ``beta_j``:  iff u is the length-l prefix of (beta_j, v).

    iota drops the last letter.
    """
    if N < 2:
        raise BuilderError(f"Dyck shifts need N >= 2, got {N}")
    _check_depth(depth)
    cap = size_cap() if max_vertices is None else max_vertices
    top = N ** depth
    if top > cap:
        raise BuilderError(f"dyck({N}, {depth}) needs m({depth}) = {top} vertices, cap is {cap}")
    alphas = tuple(f"alpha{j}" for j in range(1, N + 1))
    betas = tuple(f"beta{j}" for j in range(1, N + 1))
    counts = [N ** l for l in range(depth + 1)]
    sym_mats, iota_mats = [], []
    for l in range(depth):
        lower = dyck_words(N, l)
        upper = dyck_words(N, l + 1)
        index = {w: i for i, w in enumerate(lower)}
        rows, cols = len(lower), len(upper)
        a = {s: _zeros(rows, cols) for s in alphas + betas}
        im = _zeros(rows, cols)
        for jv, v in enumerate(upper):
            im[index[v[:l]]][jv] = 1
            a[alphas[v[0]]][index[v[1:]]][jv] = 1
            for j in range(N):
                a[betas[j]][index[((j,) + v)[:l]]][jv] = 1
        sym_mats.append({s: IntMatrix.from_rows(m, cols) for s, m in a.items()})
        iota_mats.append(IntMatrix.from_rows(im, cols))
    return TruncatedLambdaGraphSystem(alphas + betas, 0, counts, sym_mats, iota_mats)


def dyck_jkl_reference(level: int, cap: int = 12) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """J, K, L for N = 2 from index rules alone (cross-check oracle).

    J(i, j) = 1 iff j in {i, m(l) + i}; L(i, j) = 1 iff j in {2i-1, 2i}
    (1-based).  K(i, j) = 1 iff the last l-1 letters of vertex i are the
    first l-1 letters of vertex j, i.e. ``(j-1) // 4 == (i-1) mod m(l-1)``;
    at level 0 every column gets both beta labels, so K_{0,1} = [2, 2].
    """
    if not 0 <= level <= cap:
        raise BuilderError(f"level must lie in 0..{cap}")
    ml, mn = 2 ** level, 2 ** (level + 1)
    J = [[1 if (j == i or j == ml + i) else 0 for j in range(mn)] for i in range(ml)]
    L = [[1 if j in (2 * i, 2 * i + 1) else 0 for j in range(mn)] for i in range(ml)]
    if level == 0:
        K = [[2, 2]]
    else:
        mp = 2 ** (level - 1)
        K = [[1 if j // 4 == i % mp else 0 for j in range(mn)] for i in range(ml)]
    return (IntMatrix.from_rows(J, mn), IntMatrix.from_rows(K, mn), IntMatrix.from_rows(L, mn))


__all__ = [
    "BuilderError", "StructuralError", "cuntz", "cuntz_krieger", "markov_coded", "dyck",
    "dyck_jkl_reference", "dyck_words", "markov_block_patterns", "size_cap",
]

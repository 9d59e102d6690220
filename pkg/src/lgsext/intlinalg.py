"""Exact integer linear algebra.

Everything here works on Python ``int`` so there is no overflow at any
step.  Matrices are small dense objects (:class:`IntMatrix`); the
elimination routines copy them into lists of lists, work in place and
hand back fresh immutable matrices.

Conventions
-----------
* Row-style HNF (:func:`hermite_normal_form`): echelon, pivots positive,
  entries above a pivot reduced into ``[0, pivot)``.
* Column-style HNF is used for lattice bases (:class:`LatticeBasis`):
  the transpose of the row-style HNF of the transposed generators.
* Invariant factors equal to 1 are dropped from group presentations.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence


class DimensionError(ValueError):
    """Raised when operands have incompatible shapes."""


class WellDefinednessError(ValueError):
    """Raised when a raw matrix does not carry relations into relations."""


class IntMatrix:
    """Immutable dense matrix of arbitrary-precision integers."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Iterable[int]):
        entries = tuple(int(x) for x in entries)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise DimensionError(
                f"{len(entries)} entries do not fill a {rows}x{cols} matrix")
        self.rows = rows
        self.cols = cols
        self._data = tuple(entries[i * cols:(i + 1) * cols] for i in range(rows))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise DimensionError("ragged row lengths")
        return cls(len(rows), cols, (x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        if any(len(c) != rows for c in columns):
            raise DimensionError("ragged column lengths")
        return cls(rows, len(columns), (c[i] for i in range(rows) for c in columns))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, (1 if i == j else 0 for i in range(n) for j in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(x for r in self._data for x in r)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._data]

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return self._data[i][j]

    def __iter__(self):
        return iter(self._data)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r})"

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         (self._data[i][j] for j in range(self.cols) for i in range(self.rows)))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._data)

    def _check_same_shape(self, other: "IntMatrix") -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix(self.rows, self.cols,
                         (a + b for ra, rb in zip(self._data, other._data) for a, b in zip(ra, rb)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix(self.rows, self.cols,
                         (a - b for ra, rb in zip(self._data, other._data) for a, b in zip(ra, rb)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, (-a for r in self._data for a in r))

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, (k * a for r in self._data for a in r))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        return IntMatrix.from_rows(_matmul(self._data, other._data, other.cols), other.cols)

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product."""
        if len(vec) != self.cols:
            raise DimensionError(f"vector of length {len(vec)} for {self.shape} matrix")
        nz = [(j, v) for j, v in enumerate(vec) if v]
        return tuple(sum(r[j] * v for j, v in nz) for r in self._data)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise DimensionError("hstack needs equal row counts")
        return IntMatrix.from_rows([a + b for a, b in zip(self._data, other._data)],
                                   self.cols + other.cols)

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise DimensionError("vstack needs equal column counts")
        return IntMatrix.from_rows(list(self._data) + list(other._data), self.cols)

    def select_columns(self, idx: Sequence[int]) -> "IntMatrix":
        return IntMatrix.from_rows([[r[j] for j in idx] for r in self._data], len(idx))

    def determinant(self) -> int:
        """Exact determinant by fraction-free Bareiss elimination."""
        if self.rows != self.cols:
            raise DimensionError("determinant of a non-square matrix")
        n = self.rows
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            akk = a[k][k]
            for i in range(k + 1, n):
                aik = a[i][k]
                ri, rk = a[i], a[k]
                for j in range(k + 1, n):
                    ri[j] = (ri[j] * akk - aik * rk[j]) // prev
            prev = akk
        return sign * a[n - 1][n - 1] if n else 1


def _matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], bcols: int) -> list[list[int]]:
    # skips zero entries of the left factor; the structure matrices are sparse
    out = []
    for ra in a:
        acc = [0] * bcols
        for k, x in enumerate(ra):
            if x:
                rb = b[k]
                if x == 1:
                    for j, y in enumerate(rb):
                        if y:
                            acc[j] += y
                else:
                    for j, y in enumerate(rb):
                        if y:
                            acc[j] += x * y
        out.append(acc)
    return out


def as_matrix(m) -> IntMatrix:
    """Coerce nested sequences to :class:`IntMatrix`."""
    if isinstance(m, IntMatrix):
        return m
    return IntMatrix.from_rows(m)


# ---------------------------------------------------------------------------
# Abelian groups and lattices


@dataclass(frozen=True)
class FGAbelianGroup:
    """Finitely generated abelian group ``Z^free_rank (+) Z/d1 (+) ... ``.

    ``torsion`` is the invariant-factor chain d1 | d2 | ... with every
    factor at least 2, so equal groups compare equal.
    """

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(int(d) for d in self.torsion)
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        if any(d < 2 for d in t):
            raise ValueError(f"torsion factors must be >= 2, got {t}")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"torsion factors must form a divisibility chain, got {t}")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_invariants(cls, free_rank: int, factors: Iterable[int]) -> "FGAbelianGroup":
        """Build from cyclic orders; 1s are dropped and 0s counted as free.

        Any list is accepted: ``[2, 3]`` gives ``Z/6``.
        """
        fs = [abs(d) for d in factors]
        free_rank += fs.count(0)
        fs = [d for d in fs if d > 1]
        if any(fs[i + 1] % fs[i] for i in range(len(fs) - 1)):
            k = len(fs)
            diag = [[fs[i] if i == j else 0 for j in range(k)] for i in range(k)]
            fs = [d for d in _smith(diag, k, k)[0] if d > 1]
        return cls(free_rank, tuple(fs))

    @classmethod
    def cyclic(cls, n: int) -> "FGAbelianGroup":
        """Z/nZ; ``n = 0`` gives Z."""
        n = abs(n)
        if n == 0:
            return cls(1)
        return cls.from_invariants(0, [n])

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def is_trivial(self) -> bool:
        return self.ngens == 0

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int | None:
        if self.free_rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def moduli(self) -> tuple[int, ...]:
        """Modulus of each generator coordinate, 0 for free coordinates."""
        return (0,) * self.free_rank + self.torsion

    def reduce(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Canonical coordinates of an element (torsion entries mod d)."""
        return tuple(v % d if d else v for v, d in zip(vec, self.moduli()))

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " (+) ".join(parts) if parts else "0"


@dataclass(frozen=True)
class LatticeBasis:
    """Sublattice of ``Z^ambient_dim``; columns of ``basis`` in column-style HNF."""

    ambient_dim: int
    basis: IntMatrix

    def __post_init__(self):
        if self.basis.rows != self.ambient_dim:
            raise DimensionError(
                f"basis has {self.basis.rows} rows for ambient dimension {self.ambient_dim}")

    @classmethod
    def from_generators(cls, ambient_dim: int, generators: IntMatrix) -> "LatticeBasis":
        """Canonical basis of the lattice spanned by the columns of ``generators``."""
        if generators.rows != ambient_dim:
            raise DimensionError(
                f"generators live in Z^{generators.rows}, expected Z^{ambient_dim}")
        h = _row_hnf([list(c) for c in generators.columns()], ambient_dim)[0]
        cols = [r for r in h if any(r)]
        return cls(ambient_dim, IntMatrix.from_columns(cols, ambient_dim))

    @classmethod
    def zero(cls, ambient_dim: int) -> "LatticeBasis":
        return cls(ambient_dim, IntMatrix.zeros(ambient_dim, 0))

    @classmethod
    def standard(cls, ambient_dim: int) -> "LatticeBasis":
        return cls(ambient_dim, IntMatrix.identity(ambient_dim))

    @property
    def rank(self) -> int:
        return self.basis.cols

    def vectors(self) -> list[tuple[int, ...]]:
        return self.basis.columns()

    def _pivots(self) -> list[int]:
        piv = []
        for col in self.basis.columns():
            piv.append(next(i for i, x in enumerate(col) if x))
        return piv

    def coordinates(self, vec: Sequence[int]) -> tuple[int, ...] | None:
        """Integer coefficients of ``vec`` in the basis, or None if not a member."""
        if len(vec) != self.ambient_dim:
            raise DimensionError("vector length does not match ambient dimension")
        rest = list(vec)
        coeffs = []
        for col, p in zip(self.basis.columns(), self._pivots()):
            if any(rest[:p]):
                return None
            q, r = divmod(rest[p], col[p])
            if r:
                return None
            coeffs.append(q)
            if q:
                for i in range(p, self.ambient_dim):
                    rest[i] -= q * col[i]
        if any(rest):
            return None
        return tuple(coeffs)

    def __contains__(self, vec) -> bool:
        return self.coordinates(vec) is not None

    def contains_lattice(self, other: "LatticeBasis") -> bool:
        return all(v in self for v in other.vectors())

    def intersect_sum_zero(self) -> "LatticeBasis":
        """Sublattice of vectors with coordinate sum 0."""
        sums = IntMatrix.from_rows([[sum(v) for v in self.vectors()]], self.rank)
        ker = kernel_basis(sums)
        return LatticeBasis.from_generators(self.ambient_dim, self.basis @ ker.basis)


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ M @ V == D`` with U, V unimodular and D in Smith form."""

    D: IntMatrix
    U: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i, i] for i in range(min(self.D.shape)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d)


@dataclass(frozen=True)
class Presentation:
    """A quotient ``Z^m / span(relations)`` with canonical generators.

    ``projection`` (ngens x m) sends each ambient vector to its class in
    canonical coordinates, free generators first; ``lift`` (m x ngens)
    holds an ambient representative of each generator.
    """

    group: FGAbelianGroup
    projection: IntMatrix
    lift: IntMatrix
    relations: IntMatrix = field(repr=False)

    @property
    def ambient_dim(self) -> int:
        return self.projection.cols

    def classify(self, vec: Sequence[int]) -> tuple[int, ...]:
        return self.group.reduce(self.projection.apply(vec))

    def __iter__(self):
        # (group, projection), the pair callers usually want
        return iter((self.group, self.projection))


@dataclass(frozen=True)
class InducedMap:
    """A homomorphism between two presentations, in canonical coordinates."""

    matrix: IntMatrix
    source: FGAbelianGroup
    target: FGAbelianGroup
    kernel: FGAbelianGroup
    cokernel: FGAbelianGroup

    @property
    def is_isomorphism(self) -> bool:
        return self.kernel.is_trivial and self.cokernel.is_trivial

    @property
    def is_injective(self) -> bool:
        return self.kernel.is_trivial

    @property
    def is_surjective(self) -> bool:
        return self.cokernel.is_trivial

    def __iter__(self):
        return iter((self.matrix, self.is_isomorphism))


# ---------------------------------------------------------------------------
# Elimination kernels


def _identity_rows(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _addmul(dst: list[int], src: list[int], q: int, start: int = 0) -> None:
    # dst += q * src, touching only nonzero entries of src
    for j in range(start, len(src)):
        s = src[j]
        if s:
            dst[j] += q * s


def _row_hnf(a: list[list[int]], ncols: int, track: bool = False):
    """Row-style HNF in place.  Returns (H rows, U rows or None, pivot columns)."""
    m = len(a)
    u = _identity_rows(m) if track else None
    r = 0
    pivots = []
    for c in range(ncols):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if a[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(a[i][c]))
            if p != r:
                a[p], a[r] = a[r], a[p]
                if track:
                    u[p], u[r] = u[r], u[p]
            if len(nz) == 1:
                break
            pv = a[r][c]
            row_r = a[r]
            for i in range(r + 1, m):
                x = a[i][c]
                if x:
                    q = x // pv
                    _addmul(a[i], row_r, -q, c)
                    if track:
                        _addmul(u[i], u[r], -q)
        if not any(a[i][c] for i in range(r, m)):
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            if track:
                u[r] = [-x for x in u[r]]
        pv = a[r][c]
        for i in range(r):
            q = a[i][c] // pv
            if q:
                _addmul(a[i], a[r], -q, c)
                if track:
                    _addmul(u[i], u[r], -q)
        pivots.append(c)
        r += 1
    return a, u, pivots


def _smith(a: list[list[int]], m: int, n: int, track_u: bool = False,
           track_uinv: bool = False, track_v: bool = False):
    """Diagonalize ``a`` in place.

    Returns (diagonal, U, Uinv^T, V^T) where the transforms are row lists
    or None when not tracked.  Pivot rule: least absolute value first.
    """
    u = _identity_rows(m) if track_u else None
    uit = _identity_rows(m) if track_uinv else None
    vt = _identity_rows(n) if track_v else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if u is not None:
            u[i], u[j] = u[j], u[i]
        if uit is not None:
            uit[i], uit[j] = uit[j], uit[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if vt is not None:
            vt[i], vt[j] = vt[j], vt[i]

    def row_addmul(dst, src, q, start):
        # row_dst += q * row_src
        _addmul(a[dst], a[src], q, start)
        if u is not None:
            _addmul(u[dst], u[src], q)
        if uit is not None:
            _addmul(uit[src], uit[dst], -q)

    diag = []
    t = 0
    while t < m and t < n:
        best, bi, bj = 0, -1, -1
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                x = row[j]
                if x and (best == 0 or abs(x) < best):
                    best, bi, bj = abs(x), i, j
                    if best == 1:
                        break
            if best == 1:
                break
        if best == 0:
            break
        if bi != t:
            swap_rows(bi, t)
        if bj != t:
            swap_cols(bj, t)

        while True:
            # clear column t
            while True:
                p = a[t][t]
                moved = False
                for i in range(t + 1, m):
                    x = a[i][t]
                    if x:
                        q = x // p
                        row_addmul(i, t, -q, t)
                        if a[i][t]:
                            moved = True
                if not moved:
                    break
                k = min((i for i in range(t, m) if a[i][t]), key=lambda i: abs(a[i][t]))
                if k != t:
                    swap_rows(k, t)
            # clear row t; column t is zero below the pivot so only row t moves
            p = a[t][t]
            row_t = a[t]
            leftover = False
            for j in range(t + 1, n):
                x = row_t[j]
                if x:
                    q = x // p
                    row_t[j] = x - q * p
                    if vt is not None:
                        _addmul(vt[j], vt[t], -q)
                    if row_t[j]:
                        leftover = True
            if leftover:
                k = min((j for j in range(t, n) if row_t[j]), key=lambda j: abs(row_t[j]))
                swap_cols(k, t)
                continue
            if abs(p) != 1:
                bad = None
                for i in range(t + 1, m):
                    row = a[i]
                    for j in range(t + 1, n):
                        if row[j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is not None:
                    row_addmul(t, bad, 1, t)
                    continue
            break

        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if u is not None:
                u[t] = [-x for x in u[t]]
            if uit is not None:
                uit[t] = [-x for x in uit[t]]
        diag.append(a[t][t])
        t += 1
    return diag, u, uit, vt


# ---------------------------------------------------------------------------
# Public operations


def hermite_normal_form(M) -> tuple[IntMatrix, IntMatrix]:
    """Row-style HNF ``H = U @ M`` with U unimodular."""
    M = as_matrix(M)
    h, u, _ = _row_hnf(M.tolist(), M.cols, track=True)
    return IntMatrix.from_rows(h, M.cols), IntMatrix.from_rows(u, M.rows)


def smith_normal_form(M) -> SmithDecomposition:
    """Smith normal form with both transforms: ``U @ M @ V == D``."""
    M = as_matrix(M)
    m, n = M.shape
    a = M.tolist()
    diag, u, _, vt = _smith(a, m, n, track_u=True, track_v=True)
    d = [[0] * n for _ in range(m)]
    for i, x in enumerate(diag):
        d[i][i] = x
    return SmithDecomposition(
        D=IntMatrix.from_rows(d, n),
        U=IntMatrix.from_rows(u, m),
        V=IntMatrix.from_rows(vt, n).T,
    )


def invariant_factors(M) -> tuple[int, ...]:
    """Nonzero Smith diagonal of ``M`` (including 1s)."""
    M = as_matrix(M)
    diag, *_ = _smith(M.tolist(), M.rows, M.cols)
    return tuple(diag)


def cokernel(M) -> Presentation:
    """Presentation of ``Z^m / M Z^n``."""
    M = as_matrix(M)
    m, n = M.shape
    diag, u, uit, _ = _smith(M.tolist(), m, n, track_u=True, track_uinv=True)
    r = len(diag)
    free_idx = list(range(r, m))
    tors_idx = [i for i, d in enumerate(diag) if d != 1]
    group = FGAbelianGroup.from_invariants(len(free_idx), diag)
    gens = free_idx + tors_idx
    moduli = [0] * len(free_idx) + [diag[i] for i in tors_idx]
    proj = [[x % d for x in u[i]] if d else list(u[i]) for i, d in zip(gens, moduli)]
    lift_cols = [uit[i] for i in gens]
    return Presentation(
        group=group,
        projection=IntMatrix.from_rows(proj, m),
        lift=IntMatrix.from_columns(lift_cols, m),
        relations=M,
    )


def kernel_basis(M) -> LatticeBasis:
    """Saturated lattice ``{x in Z^n : M x = 0}`` in canonical form."""
    M = as_matrix(M)
    m, n = M.shape
    # U M^T V = D, so the trailing rows of U span the kernel of M
    diag, u, _, _ = _smith(M.T.tolist(), n, m, track_u=True)
    gens = u[len(diag):]
    return LatticeBasis.from_generators(n, IntMatrix.from_columns(gens, n))


def sum_zero_basis(n: int) -> LatticeBasis:
    """Basis ``e_i - e_n`` of the coordinate-sum-zero sublattice of ``Z^n``."""
    if n < 1:
        raise ValueError("sum_zero_basis needs n >= 1")
    cols = []
    for i in range(n - 1):
        v = [0] * n
        v[i] = 1
        v[n - 1] = -1
        cols.append(v)
    return LatticeBasis(n, IntMatrix.from_columns(cols, n))


def sum_zero_generators(n: int) -> IntMatrix:
    return sum_zero_basis(n).basis


def image_restricted(M, S: LatticeBasis) -> LatticeBasis:
    """Canonical basis of ``M . span(S)``."""
    M = as_matrix(M)
    if S.ambient_dim != M.cols:
        raise DimensionError(
            f"sublattice of Z^{S.ambient_dim} cannot feed a {M.rows}x{M.cols} map")
    return LatticeBasis.from_generators(M.rows, M @ S.basis)


def quotient_by_sublattice(ambient_dim: int, S: LatticeBasis) -> FGAbelianGroup:
    """``Z^ambient_dim / span(S)``."""
    if S.ambient_dim != ambient_dim:
        raise DimensionError(f"sublattice of Z^{S.ambient_dim} in Z^{ambient_dim}")
    if S.rank == 0:
        return FGAbelianGroup(ambient_dim)
    return FGAbelianGroup.from_invariants(ambient_dim - S.rank, invariant_factors(S.basis))


def hom_kernel(matrix: IntMatrix, source: FGAbelianGroup, target: FGAbelianGroup) -> FGAbelianGroup:
    """Kernel of the homomorphism with ``matrix`` in canonical coordinates."""
    ks, kt = source.ngens, target.ngens
    if ks == 0:
        return FGAbelianGroup()
    tmod = target.moduli()
    # x with matrix @ x in the torsion relations of the target
    rel_t = [[tmod[i] if i == j else 0 for j in range(kt)] for i in range(kt)]
    block = [list(matrix.row(i)) + rel_t[i] for i in range(kt)]
    big = IntMatrix.from_rows(block, ks + kt) if kt else IntMatrix.zeros(0, ks)
    ker = kernel_basis(big)
    gens = IntMatrix.from_columns([v[:ks] for v in ker.vectors()], ks)
    lat = LatticeBasis.from_generators(ks, gens)
    smod = source.moduli()
    coords = []
    for i, d in enumerate(smod):
        if d:
            v = [0] * ks
            v[i] = d
            c = lat.coordinates(v)
            if c is None:
                raise WellDefinednessError("source relation escapes the kernel lattice")
            coords.append(list(c))
    if lat.rank == 0:
        return FGAbelianGroup()
    if not coords:
        return FGAbelianGroup(lat.rank)
    return cokernel(IntMatrix.from_columns(coords, lat.rank)).group


def hom_cokernel(matrix: IntMatrix, target: FGAbelianGroup) -> FGAbelianGroup:
    kt = target.ngens
    rels = [list(c) for c in matrix.columns()]
    for i, d in enumerate(target.moduli()):
        if d:
            v = [0] * kt
            v[i] = d
            rels.append(v)
    if not rels:
        return target
    return cokernel(IntMatrix.from_columns(rels, kt)).group


def induced_map_on_presentations(source: Presentation, target: Presentation, raw) -> InducedMap:
    """Homomorphism induced by ``raw`` between two quotient presentations.

    Raises :class:`WellDefinednessError` when ``raw`` does not carry the
    source relations into the target relation lattice.
    """
    raw = as_matrix(raw)
    if raw.shape != (target.ambient_dim, source.ambient_dim):
        raise DimensionError(
            f"raw map {raw.shape} does not go Z^{source.ambient_dim} -> Z^{target.ambient_dim}")
    pr = target.projection @ raw
    tg = target.group
    if source.relations.cols:
        images = pr @ source.relations
        for j in range(images.cols):
            if any(tg.reduce(images.column(j))):
                raise WellDefinednessError(
                    f"relation column {j} of the source is not sent to zero")
    mat = pr @ source.lift
    reduced = [tg.reduce(c) for c in mat.columns()]
    mat = IntMatrix.from_columns(reduced, tg.ngens)
    return InducedMap(
        matrix=mat,
        source=source.group,
        target=tg,
        kernel=hom_kernel(mat, source.group, tg),
        cokernel=hom_cokernel(mat, tg),
    )

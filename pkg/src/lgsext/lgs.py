"""Finite truncations of left-resolving lambda-graph systems.

A truncation keeps the levels ``base_level .. base_level + depth``.  For
each consecutive pair of levels it stores one 0/1 matrix per symbol
(``A_{l,l+1}(i, alpha, j)``) and the 0/1 matrix of the level map iota
(``I_{l,l+1}(i, j) = 1`` iff iota sends vertex j of level l+1 to vertex i
of level l).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .intlinalg import IntMatrix, as_matrix


class StructuralError(ValueError):
    """Malformed input: wrong shapes, counts or alphabet."""


class InvalidSystemError(ValueError):
    """A system failed axiom validation where a valid one is required."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__(report.summary())


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]

    def __post_init__(self):
        syms = tuple(str(s) for s in self.symbols)
        if len(syms) < 2:
            raise StructuralError(f"alphabet needs at least 2 symbols, got {len(syms)}")
        if len(set(syms)) != len(syms):
            raise StructuralError("alphabet symbols must be distinct")
        object.__setattr__(self, "symbols", syms)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, s) -> bool:
        return s in self.symbols

    def index(self, s: str) -> int:
        return self.symbols.index(s)


class TruncatedLambdaGraphSystem:
    """Levels ``base_level .. base_level + depth`` of a lambda-graph system.

    ``symbol_matrices[k]`` maps each symbol to the matrix for the level
    pair ``(base_level + k, base_level + k + 1)``; ``iota_matrices[k]`` is
    the iota matrix for the same pair.  Shapes are checked here; the
    axioms are checked by :func:`validate`.
    """

    __slots__ = ("alphabet", "base_level", "vertex_counts", "_symbol", "_iota", "_summed")

    def __init__(self, alphabet, base_level: int, vertex_counts: Sequence[int],
                 symbol_matrices: Sequence[Mapping[str, object]],
                 iota_matrices: Sequence[object]):
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(tuple(alphabet))
        if base_level < 0:
            raise StructuralError("base_level must be nonnegative")
        counts = tuple(int(c) for c in vertex_counts)
        if len(counts) < 2:
            raise StructuralError("a truncation needs at least two levels")
        if any(c < 1 for c in counts):
            raise StructuralError(f"every level needs at least one vertex: {counts}")
        depth = len(counts) - 1
        if len(symbol_matrices) != depth or len(iota_matrices) != depth:
            raise StructuralError(
                f"expected {depth} level pairs, got {len(symbol_matrices)} symbol "
                f"and {len(iota_matrices)} iota entries")
        sym = []
        iota = []
        for k in range(depth):
            shape = (counts[k], counts[k + 1])
            level = base_level + k
            given = dict(symbol_matrices[k])
            if set(given) != set(alphabet.symbols):
                raise StructuralError(
                    f"level {level}: symbol matrices for {sorted(given)} "
                    f"do not match the alphabet {list(alphabet.symbols)}")
            mats = {}
            for s in alphabet.symbols:
                m = as_matrix(given[s])
                if m.shape != shape:
                    raise StructuralError(
                        f"level {level}, symbol {s}: shape {m.shape}, expected {shape}")
                mats[s] = m
            sym.append(mats)
            im = as_matrix(iota_matrices[k])
            if im.shape != shape:
                raise StructuralError(f"level {level}: iota shape {im.shape}, expected {shape}")
            iota.append(im)
        self.alphabet = alphabet
        self.base_level = base_level
        self.vertex_counts = counts
        self._symbol = tuple(sym)
        self._iota = tuple(iota)
        self._summed: dict[int, IntMatrix] = {}

    @property
    def depth(self) -> int:
        return len(self.vertex_counts) - 1

    @property
    def top_level(self) -> int:
        return self.base_level + self.depth

    @property
    def levels(self) -> range:
        return range(self.base_level, self.top_level + 1)

    @property
    def pair_levels(self) -> range:
        """Levels l that have structure matrices for (l, l+1)."""
        return range(self.base_level, self.top_level)

    def m(self, level: int) -> int:
        """Vertex count of a represented level."""
        if level not in self.levels:
            raise IndexError(f"level {level} outside {self.base_level}..{self.top_level}")
        return self.vertex_counts[level - self.base_level]

    def _pair_index(self, level: int) -> int:
        if level not in self.pair_levels:
            raise IndexError(
                f"no level pair ({level}, {level + 1}); pairs cover "
                f"{self.base_level}..{self.top_level - 1}")
        return level - self.base_level

    def symbol_matrix(self, level: int, symbol: str) -> IntMatrix:
        k = self._pair_index(level)
        if symbol not in self.alphabet:
            raise KeyError(f"unknown symbol {symbol!r}")
        return self._symbol[k][symbol]

    def iota_matrix(self, level: int) -> IntMatrix:
        return self._iota[self._pair_index(level)]

    def summed_matrix(self, level: int) -> IntMatrix:
        """Sum over symbols of the symbol matrices at (level, level+1)."""
        k = self._pair_index(level)
        if level not in self._summed:
            mats = list(self._symbol[k].values())
            total = mats[0]
            for m in mats[1:]:
                total = total + m
            self._summed[level] = total
        return self._summed[level]

    def difference_matrix(self, level: int) -> IntMatrix:
        """``I_{l,l+1} - A_{l,l+1}`` with A the summed matrix."""
        return self.iota_matrix(level) - self.summed_matrix(level)

    def iota_chain(self, low: int, high: int) -> IntMatrix:
        """Product ``I_{low,low+1} ... I_{high-1,high}`` sending level high to level low."""
        if not self.base_level <= low <= high <= self.top_level:
            raise IndexError(f"bad level range {low}..{high}")
        out = IntMatrix.identity(self.m(high))
        for l in range(high - 1, low - 1, -1):
            out = self.iota_matrix(l) @ out
        return out

    def truncate(self, depth: int) -> "TruncatedLambdaGraphSystem":
        """The first ``depth`` level pairs of this system."""
        if not 1 <= depth <= self.depth:
            raise ValueError(f"depth must lie in 1..{self.depth}")
        return TruncatedLambdaGraphSystem(
            self.alphabet, self.base_level, self.vertex_counts[:depth + 1],
            self._symbol[:depth], self._iota[:depth])

    def replace(self, level: int, symbol: str | None, matrix) -> "TruncatedLambdaGraphSystem":
        """Copy with one symbol matrix (or the iota matrix when symbol is None) swapped out."""
        k = self._pair_index(level)
        sym = [dict(d) for d in self._symbol]
        iota = list(self._iota)
        if symbol is None:
            iota[k] = as_matrix(matrix)
        else:
            if symbol not in self.alphabet:
                raise KeyError(f"unknown symbol {symbol!r}")
            sym[k][symbol] = as_matrix(matrix)
        return TruncatedLambdaGraphSystem(self.alphabet, self.base_level,
                                          self.vertex_counts, sym, iota)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedLambdaGraphSystem):
            return NotImplemented
        return (self.alphabet == other.alphabet and self.base_level == other.base_level
                and self.vertex_counts == other.vertex_counts
                and self._symbol == other._symbol and self._iota == other._iota)

    def __repr__(self) -> str:
        return (f"TruncatedLambdaGraphSystem(alphabet={list(self.alphabet)}, "
                f"base_level={self.base_level}, vertex_counts={list(self.vertex_counts)})")


# ---------------------------------------------------------------------------
# Validation


@dataclass(frozen=True)
class Violation:
    kind: str
    level: int
    message: str
    symbol: str | None = None
    indices: tuple = ()

    def __str__(self) -> str:
        where = f"level {self.level}"
        if self.symbol is not None:
            where += f", symbol {self.symbol}"
        return f"[{self.kind}] {where}: {self.message}"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)
    warnings: list[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.passed

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def summary(self) -> str:
        if self.passed:
            head = "all axioms hold"
        else:
            head = f"{len(self.violations)} axiom violation(s)"
        lines = [head]
        lines += [str(v) for v in self.violations]
        lines += ["warning " + str(w) for w in self.warnings]
        return "\n".join(lines)


def _diff_positions(a: IntMatrix, b: IntMatrix, limit: int = 8) -> list[tuple[int, int]]:
    out = []
    for i, (ra, rb) in enumerate(zip(a, b)):
        if ra != rb:
            out.extend((i, j) for j, (x, y) in enumerate(zip(ra, rb)) if x != y)
            if len(out) >= limit:
                break
    return out[:limit]


def validate(lgs: TruncatedLambdaGraphSystem) -> ValidationReport:
    """Check every axiom of a truncated left-resolving lambda-graph system.

    Degenerate vertices (no outgoing or no incoming edge inside the
    window) are reported as warnings, not violations.
    """
    report = ValidationReport()
    bad = report.violations.append

    for l in lgs.pair_levels:
        im = lgs.iota_matrix(l)
        for j, col in enumerate(im.columns()):
            if any(x not in (0, 1) for x in col) or sum(col) != 1:
                bad(Violation("iota-column", l, f"column {j} of I_{{{l},{l + 1}}} is {list(col)}; "
                              "needs exactly one 1", indices=(j,)))
        for i, row in enumerate(im):
            if not any(row):
                bad(Violation("iota-surjective", l,
                              f"row {i} of I_{{{l},{l + 1}}} is zero; iota is not onto",
                              indices=(i,)))
        for s in lgs.alphabet:
            a = lgs.symbol_matrix(l, s)
            for i, row in enumerate(a):
                for j, x in enumerate(row):
                    if x not in (0, 1):
                        bad(Violation("entry", l, f"entry ({i}, {j}) is {x}, not 0/1",
                                      symbol=s, indices=(i, j)))
            for j, col in enumerate(a.columns()):
                if sum(1 for x in col if x) > 1:
                    rows = tuple(i for i, x in enumerate(col) if x)
                    bad(Violation("left-resolving", l,
                                  f"column {j} is reached from rows {list(rows)}",
                                  symbol=s, indices=(j,) + rows))

    for l in list(lgs.pair_levels)[:-1]:
        i0, i1 = lgs.iota_matrix(l), lgs.iota_matrix(l + 1)
        for s in lgs.alphabet:
            left = lgs.symbol_matrix(l, s) @ i1
            right = i0 @ lgs.symbol_matrix(l + 1, s)
            if left != right:
                pos = _diff_positions(left, right)
                bad(Violation("local-property", l,
                              f"A_{{{l},{l + 1}}} I_{{{l + 1},{l + 2}}} != "
                              f"I_{{{l},{l + 1}}} A_{{{l + 1},{l + 2}}} at {pos}",
                              symbol=s, indices=tuple(pos)))

    for l in lgs.pair_levels:
        a = lgs.summed_matrix(l)
        for i, row in enumerate(a):
            if not any(row):
                report.warnings.append(Violation("no-outgoing", l, f"vertex {i} has no outgoing edge",
                                                 indices=(i,)))
        for j, col in enumerate(a.columns()):
            if not any(col):
                report.warnings.append(Violation("no-incoming", l + 1,
                                                 f"vertex {j} has no incoming edge", indices=(j,)))
    return report


@dataclass(frozen=True)
class CommutationReport:
    results: dict[int, bool]

    @property
    def passed(self) -> bool:
        return all(self.results.values())

    def __bool__(self) -> bool:
        return self.passed


def check_commutation(lgs: TruncatedLambdaGraphSystem) -> CommutationReport:
    """``I_{l,l+1} A_{l+1,l+2} == A_{l,l+1} I_{l+1,l+2}`` for the summed matrices."""
    if lgs.depth < 2:
        raise ValueError("commutation needs depth >= 2")
    res = {}
    for l in list(lgs.pair_levels)[:-1]:
        res[l] = (lgs.iota_matrix(l) @ lgs.summed_matrix(l + 1)
                  == lgs.summed_matrix(l) @ lgs.iota_matrix(l + 1))
    return CommutationReport(res)


def require_valid(lgs: TruncatedLambdaGraphSystem) -> None:
    report = validate(lgs)
    if not report.passed:
        raise InvalidSystemError(report)

"""Extension-group invariants of lambda-graph systems as integer towers.

Level-wise objects computed here, for a truncation with levels
``base .. top``:

* ``Q_L = Z^{m(L)} / (I - A)_L Z^{m(L+1)}``   (weak Ext^1 tower)
* ``S_L = Z^{m(L)} / (I - A)_L Z_0^{m(L+1)}`` (strong Ext^1 tower)
* the kernel of ``I - A`` on compatible sequences (weak Ext^0) and its
  coordinate-sum-zero part (strong Ext^0), coordinatized at level L+1
* ``s`` (coordinate sum) and ``iota_hat`` (m -> class of (I - A)(m, 0, ..., 0))

Connecting maps between tower levels are induced by the iota matrices.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Callable, Sequence

from .intlinalg import (
    FGAbelianGroup,
    IntMatrix,
    InducedMap,
    LatticeBasis,
    Presentation,
    WellDefinednessError,
    cokernel,
    induced_map_on_presentations,
    kernel_basis,
    sum_zero_generators,
)
from .lgs import TruncatedLambdaGraphSystem, require_valid

DEFAULT_WINDOW = 3


class InsufficientDepthError(ValueError):
    """The truncation is too shallow for the requested level or window."""

    def __init__(self, message: str, required_depth: int):
        self.required_depth = required_depth
        super().__init__(f"{message} (minimum depth {required_depth})")


class ConsistencyError(RuntimeError):
    """Two routes to the same invariant disagreed."""


# ---------------------------------------------------------------------------
# Towers


@dataclass(frozen=True)
class Stabilization:
    stabilized: bool
    from_level: int | None
    window: int

    def __str__(self) -> str:
        if self.stabilized:
            return f"stabilized from level {self.from_level} (window {self.window})"
        return f"not stabilized within depth (window {self.window})"


@dataclass(frozen=True)
class TowerLevel:
    level: int
    presentation: Presentation

    @property
    def group(self) -> FGAbelianGroup:
        return self.presentation.group


@dataclass(frozen=True)
class GroupTower:
    """Level-wise quotient groups with connecting maps ``level L+1 -> level L``.

    ``connecting_maps[k]`` goes from ``levels[k + 1]`` to ``levels[k]``.
    """

    kind: str
    levels: tuple[TowerLevel, ...]
    connecting_maps: tuple[InducedMap, ...]
    stabilization: Stabilization

    @property
    def groups(self) -> list[FGAbelianGroup]:
        return [t.group for t in self.levels]

    @property
    def stabilized(self) -> bool:
        return self.stabilization.stabilized

    @property
    def limit(self) -> FGAbelianGroup | None:
        """The stabilized group, or None when the tower has not settled."""
        return self.levels[-1].group if self.stabilized else None

    def at(self, level: int) -> TowerLevel:
        for t in self.levels:
            if t.level == level:
                return t
        raise KeyError(f"level {level} not in tower")


def _stabilization(levels: Sequence[TowerLevel], maps: Sequence[InducedMap],
                   window: int) -> Stabilization:
    top = len(levels) - 1
    start = top
    while start > 0:
        if levels[start - 1].group != levels[top].group:
            break
        if not maps[start - 1].is_isomorphism:
            break
        start -= 1
    ok = top - start + 1 >= window
    return Stabilization(ok, levels[start].level if ok else None, window)


def _require_tower_depth(lgs: TruncatedLambdaGraphSystem, window: int) -> None:
    if window < 1:
        raise ValueError("window must be at least 1")
    if lgs.depth < window + 1:
        raise InsufficientDepthError(
            f"a window of {window} needs depth at least {window + 1}, got {lgs.depth}",
            window + 1)


def _build_tower(lgs: TruncatedLambdaGraphSystem, kind: str,
                 relations_at: Callable[[int], IntMatrix], window: int) -> GroupTower:
    levels = tuple(TowerLevel(l, cokernel(relations_at(l))) for l in lgs.pair_levels)
    maps = []
    for k in range(len(levels) - 1):
        l = levels[k].level
        try:
            maps.append(induced_map_on_presentations(
                levels[k + 1].presentation, levels[k].presentation, lgs.iota_matrix(l)))
        except WellDefinednessError as exc:
            raise WellDefinednessError(
                f"{kind} tower: I_{{{l},{l + 1}}} does not induce a map: {exc}") from exc
    return GroupTower(kind, levels, tuple(maps), _stabilization(levels, maps, window))


def strong_relations(lgs: TruncatedLambdaGraphSystem, level: int) -> IntMatrix:
    """Generators of ``(I - A)_L Z_0^{m(L+1)}``."""
    return lgs.difference_matrix(level) @ sum_zero_generators(lgs.m(level + 1))


def weak_ext1_tower(lgs: TruncatedLambdaGraphSystem, window: int = DEFAULT_WINDOW,
                    validate: bool = True) -> GroupTower:
    """Tower of ``Z^{m(L)} / (I - A)_L Z^{m(L+1)}``."""
    if validate:
        require_valid(lgs)
    _require_tower_depth(lgs, window)
    return _build_tower(lgs, "weak1", lgs.difference_matrix, window)


def strong_ext1_tower(lgs: TruncatedLambdaGraphSystem, window: int = DEFAULT_WINDOW,
                      validate: bool = True) -> GroupTower:
    """Tower of ``Z^{m(L)} / (I - A)_L Z_0^{m(L+1)}``."""
    if validate:
        require_valid(lgs)
    _require_tower_depth(lgs, window)
    for l in lgs.pair_levels:
        if any(sum(c) != 1 for c in lgs.iota_matrix(l).columns()):
            raise WellDefinednessError(f"I_{{{l},{l + 1}}} does not preserve sum-zero vectors")
    return _build_tower(lgs, "strong1", lambda l: strong_relations(lgs, l), window)


def strong_to_weak(strong: Presentation, weak: Presentation) -> InducedMap:
    """The quotient map ``S_L -> Q_L`` (identity on the ambient lattice)."""
    return induced_map_on_presentations(strong, weak, IntMatrix.identity(strong.ambient_dim))


# ---------------------------------------------------------------------------
# Kernel truncations


@dataclass(frozen=True)
class KernelTruncation:
    """Kernel of ``I - A`` on sequences over levels ``base .. L+1``.

    Elements are coordinatized by their level-(L+1) component.  The
    lattice is the image at level L+1 of the kernel computed with all
    constraints up to ``horizon`` (``horizon == top_level`` gives the
    plain stacked kernel).  ``sum_image`` is the nonnegative generator
    of the coordinate sums of the lattice.
    """

    kind: str
    top_level: int
    horizon: int
    lattice: LatticeBasis
    sum_image: int
    to_base: IntMatrix

    @property
    def rank(self) -> int:
        return self.lattice.rank


def stacked_constraints(lgs: TruncatedLambdaGraphSystem, horizon: int) -> IntMatrix:
    """Rows ``(I - A)_l P_{l+1}`` for ``base <= l <= horizon`` on ``Z^{m(horizon+1)}``.

    ``P_{l+1}`` is the iota chain from level horizon+1 down to level l+1.
    """
    top = horizon + 1
    rows: list[tuple[int, ...]] = []
    chain = IntMatrix.identity(lgs.m(top))
    for l in range(horizon, lgs.base_level - 1, -1):
        rows.extend(lgs.difference_matrix(l) @ chain)
        chain = lgs.iota_matrix(l) @ chain
    return IntMatrix.from_rows(rows, lgs.m(top))


def _check_level(lgs: TruncatedLambdaGraphSystem, level: int, horizon: int | None) -> int:
    if level < lgs.base_level:
        raise ValueError(f"level {level} is below the base level {lgs.base_level}")
    if level + 1 > lgs.top_level:
        raise InsufficientDepthError(
            f"level {level} needs level {level + 1} in the truncation",
            level + 1 - lgs.base_level)
    if horizon is None:
        return lgs.top_level - 1
    if not level <= horizon < lgs.top_level:
        raise InsufficientDepthError(
            f"horizon {horizon} must lie in {level}..{lgs.top_level - 1}",
            horizon + 1 - lgs.base_level)
    return horizon


def _kernel_truncation(lgs, level, horizon, strong: bool) -> KernelTruncation:
    horizon = _check_level(lgs, level, horizon)
    constraints = stacked_constraints(lgs, horizon)
    if strong:
        constraints = constraints.vstack(IntMatrix.from_rows([[1] * constraints.cols]))
    ker = kernel_basis(constraints)
    down = lgs.iota_chain(level + 1, horizon + 1)
    lattice = LatticeBasis.from_generators(lgs.m(level + 1), down @ ker.basis)
    to_base = lgs.iota_chain(lgs.base_level, level + 1)
    d = 0
    for v in lattice.vectors():
        d = gcd(d, sum(v))
    for v, w in zip(lattice.vectors(), (to_base @ lattice.basis).columns()):
        if sum(v) != sum(w):
            raise ConsistencyError("coordinate sum of a kernel element depends on the level")
    return KernelTruncation("strong0" if strong else "weak0", level, horizon, lattice, d, to_base)


def weak_ext0_truncated(lgs: TruncatedLambdaGraphSystem, level: int,
                        horizon: int | None = None) -> KernelTruncation:
    """Truncated ``Ker(I - A_L : Z_I -> Z_I)`` at ``level``.

    ``horizon`` defaults to the deepest level pair of the truncation.
    """
    return _kernel_truncation(lgs, level, horizon, strong=False)


def strong_ext0_truncated(lgs: TruncatedLambdaGraphSystem, level: int,
                          horizon: int | None = None) -> KernelTruncation:
    """Truncated ``Ker(I - A_L : Z_{I,0} -> Z_I)``: the sum-zero part of the weak kernel."""
    k = _kernel_truncation(lgs, level, horizon, strong=True)
    if k.sum_image != 0:
        raise ConsistencyError("strong kernel contains an element of nonzero sum")
    return k


def s_map(k: KernelTruncation, element: Sequence[int]) -> int:
    """Coordinate sum of a kernel element, checked to agree at the base level."""
    if element not in k.lattice:
        raise ValueError("element is not in the kernel truncation")
    top = sum(element)
    if sum(k.to_base.apply(element)) != top:
        raise ConsistencyError("coordinate sum differs between levels")
    return top


# ---------------------------------------------------------------------------
# iota_hat


@dataclass(frozen=True)
class IotaHatValue:
    """``iota_hat(m)`` at a level: representative in ``Z^{m(L)}`` and its class in S_L."""

    m: int
    level: int
    representative: tuple[int, ...]
    coordinates: tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        return not any(self.coordinates)

    @property
    def coordinate_sum(self) -> int:
        return sum(self.representative)


def canonical_representative(lgs: TruncatedLambdaGraphSystem, m: int, level: int) -> list[int]:
    v = [0] * lgs.m(level + 1)
    v[0] = m
    return v


def iota_hat(m: int, lgs: TruncatedLambdaGraphSystem, level: int,
             strong: Presentation | None = None,
             representative: Sequence[int] | None = None) -> IotaHatValue:
    """Class of ``(I - A)_L n`` in ``S_L`` where n has coordinate sum m.

    ``n`` defaults to ``(m, 0, ..., 0)`` at level L+1.
    """
    _check_level(lgs, level, None)
    if strong is None:
        strong = cokernel(strong_relations(lgs, level))
    n = canonical_representative(lgs, m, level) if representative is None else list(representative)
    if sum(n) != m:
        raise ValueError("representative must have coordinate sum m")
    rep = lgs.difference_matrix(level).apply(n)
    return IotaHatValue(m, level, rep, strong.classify(rep))


def element_order(group: FGAbelianGroup, coords: Sequence[int]) -> int:
    """Order of an element, 0 when infinite."""
    coords = group.reduce(coords)
    if any(coords[:group.free_rank]):
        return 0
    order = 1
    for c, d in zip(coords[group.free_rank:], group.torsion):
        k = d // gcd(c, d)
        order = order * k // gcd(order, k)
    return order


def sum_isomorphism(lgs: TruncatedLambdaGraphSystem, level: int,
                    strong: Presentation | None = None) -> bool:
    """True when the coordinate sum is a well-defined isomorphism ``S_L -> Z``."""
    if strong is None:
        strong = cokernel(strong_relations(lgs, level))
    if strong.group != FGAbelianGroup(1):
        return False
    if any(sum(c) for c in strong.relations.columns()):
        return False
    return abs(sum(strong.lift.column(0))) == 1


def iota_hat_as_integer(m: int, lgs: TruncatedLambdaGraphSystem, level: int,
                        strong: Presentation | None = None) -> int:
    """``iota_hat(m)`` read through the coordinate-sum isomorphism ``S_L = Z``."""
    if strong is None:
        strong = cokernel(strong_relations(lgs, level))
    if not sum_isomorphism(lgs, level, strong):
        raise ValueError(f"coordinate sum is not an isomorphism S_{level} -> Z")
    return iota_hat(m, lgs, level, strong).coordinate_sum


# ---------------------------------------------------------------------------
# Six-term sequence


@dataclass(frozen=True)
class SixTermReport:
    """Exactness of the truncated six-term sequence at one level.

    Junctions: ``a`` strong Ext^0 sits inside weak Ext^0; ``b`` the
    sum-zero part of weak Ext^0 is strong Ext^0; ``c`` Ker(iota_hat) is the
    image of s; ``d`` Ker(S -> Q) is the image of iota_hat; ``e`` S -> Q is
    onto.
    """

    level: int
    strong0: FGAbelianGroup
    weak0: FGAbelianGroup
    strong1: FGAbelianGroup
    weak1: FGAbelianGroup
    sum_image: int
    iota_hat_one: tuple[int, ...]
    iota_hat_kernel: int
    iota_hat_integer: int | None
    junctions: dict[str, bool]
    stabilized: bool
    notes: tuple[str, ...] = ()

    @property
    def verdict(self) -> bool:
        return all(self.junctions.values())

    @property
    def conclusive(self) -> bool:
        return self.stabilized

    def sequence_text(self) -> str:
        mid = (f"x({self.iota_hat_integer})" if self.iota_hat_integer is not None
               else f"iota_hat(1)={list(self.iota_hat_one)}")
        return (f"0 -> {self.strong0} -> {self.weak0} -s-> Z [image {self.sum_image}Z] "
                f"-{mid}-> {self.strong1} -> {self.weak1} -> 0")


def subgroup_equal(group: FGAbelianGroup, gens_a: Sequence[Sequence[int]],
                   gens_b: Sequence[Sequence[int]]) -> bool:
    """Whether two generating sets span the same subgroup of ``group``."""
    k = group.ngens
    rel = []
    for i, d in enumerate(group.moduli()):
        if d:
            v = [0] * k
            v[i] = d
            rel.append(v)

    def lattice(gens):
        cols = [list(g) for g in gens] + rel
        if not cols:
            return LatticeBasis.zero(k)
        return LatticeBasis.from_generators(k, IntMatrix.from_columns(cols, k))

    return lattice(gens_a) == lattice(gens_b)


def _exact_at_strong1(strong: Presentation, weak: Presentation, diff: IntMatrix,
                      iota_one: Sequence[int]) -> bool:
    # Ker(S -> Q) is generated by the classes of the Q-relations
    gens = [strong.classify(c) for c in diff.columns()]
    return subgroup_equal(strong.group, gens, [iota_one])


def six_term_check(lgs: TruncatedLambdaGraphSystem, level: int,
                   window: int = DEFAULT_WINDOW, horizon: int | None = None) -> SixTermReport:
    """Check every junction of the truncated six-term sequence at ``level``."""
    require_valid(lgs)
    weak_t = weak_ext1_tower(lgs, window, validate=False)
    strong_t = strong_ext1_tower(lgs, window, validate=False)
    weak1 = weak_t.at(level).presentation
    strong1 = strong_t.at(level).presentation
    kw = weak_ext0_truncated(lgs, level, horizon)
    ks = strong_ext0_truncated(lgs, level, horizon)
    notes = []
    stabilized = weak_t.stabilized and strong_t.stabilized
    if not stabilized:
        notes.append("inconclusive: towers not stabilized")
    elif (weak_t.stabilization.from_level > level or strong_t.stabilization.from_level > level):
        notes.append("level lies before the stabilized range")

    if kw.rank - ks.rank not in (0, 1):
        raise ConsistencyError("weak and strong kernel ranks differ by more than one")

    ih = iota_hat(1, lgs, level, strong1)
    ker_ih = element_order(strong1.group, ih.coordinates)
    q = strong_to_weak(strong1, weak1)
    try:
        as_int = iota_hat_as_integer(1, lgs, level, strong1)
    except ValueError:
        as_int = None

    junctions = {
        "a": kw.lattice.contains_lattice(ks.lattice),
        "b": kw.lattice.intersect_sum_zero() == ks.lattice,
        "c": ker_ih == kw.sum_image,
        "d": _exact_at_strong1(strong1, weak1, lgs.difference_matrix(level), ih.coordinates),
        "e": q.is_surjective,
    }
    return SixTermReport(
        level=level,
        strong0=FGAbelianGroup(ks.rank),
        weak0=FGAbelianGroup(kw.rank),
        strong1=strong1.group,
        weak1=weak1.group,
        sum_image=kw.sum_image,
        iota_hat_one=ih.coordinates,
        iota_hat_kernel=ker_ih,
        iota_hat_integer=as_int,
        junctions=junctions,
        stabilized=stabilized,
        notes=tuple(notes),
    )


# ---------------------------------------------------------------------------
# Aperiodicity


def is_aperiodic(A) -> bool:
    """Primitive nonnegative matrix test by boolean powers up to (N-1)^2 + 1."""
    from .intlinalg import as_matrix

    A = as_matrix(A)
    n = A.rows
    b = [[1 if x else 0 for x in row] for row in A]
    p = [row[:] for row in b]
    for _ in range((n - 1) ** 2):
        p = [[1 if any(p[i][k] and b[k][j] for k in range(n)) else 0 for j in range(n)]
             for i in range(n)]
    return all(all(row) for row in p)

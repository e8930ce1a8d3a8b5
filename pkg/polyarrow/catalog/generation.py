import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from sympy import ImmutableMatrix, Rational

from ..arrows import DoubleArrow, Operator, arrow_distance_upper, is_isometry
from ..errors import GeometryError
from ..linalg import Vector, columns_matrix, identity, independent_prefix, inverse, left_inverse, rank
from ..spaces import NormedSpace, from_vertices, isometries_between, l1, linf, norm
from ..utils import load_config

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CatalogEntry:
    arrow: DoubleArrow
    source_index: int
    target_index: int


@dataclass(frozen=True)
class ArrowCatalog:
    spaces: Tuple[NormedSpace, ...]
    entries: Tuple[CatalogEntry, ...]
    resolution: Rational
    seed: int
    params: Dict[str, Any] = field(default_factory=dict, compare=False)

    def entries_between(self, source_dim: int, target_dim: int) -> List[CatalogEntry]:
        return [e for e in self.entries if e.arrow.source.dim == source_dim and e.arrow.target.dim == target_dim]

    @property
    def arrows(self) -> List[DoubleArrow]:
        return [e.arrow for e in self.entries]


def grid_values(max_denom: int) -> List[Rational]:
    """Rationals in [-1, 1] with denominator <= max_denom, simplest first."""
    values = {Rational(0)}
    for q in range(1, max_denom + 1):
        for p in range(1, q + 1):
            values.add(Rational(p, q))
            values.add(Rational(-p, q))
    return sorted(values, key=lambda r: (r.q, abs(r), bool(r < 0)))


def grid_points(dim: int, max_denom: int) -> Iterator[Vector]:
    """Nonzero grid points, one per +- pair, in order of increasing denominator."""
    values = grid_values(max_denom)
    seen = set()
    for point in itertools.product(values, repeat=dim):
        if all(x == 0 for x in point):
            continue
        rep = max(point, tuple(-x for x in point))
        if rep not in seen:
            seen.add(rep)
            yield rep


def _units(n: int) -> List[Vector]:
    return [tuple(Rational(1) if i == k else Rational(0) for i in range(n)) for k in range(n)]


def gen_spaces(
    max_dim: int,
    max_vertices: Optional[int] = None,
    max_denom: Optional[int] = None,
    max_extra: Optional[int] = None,
    max_spaces: Optional[int] = None,
) -> List[NormedSpace]:
    """
    l1^n and linf^n for n <= max_dim, then symmetric hulls of +-e_i with up to
    `max_extra` grid points added; distinct balls only.
    """
    config = load_config()
    max_vertices = max_vertices if max_vertices is not None else int(config.get("catalog_max_vertices", 8))
    max_denom = max_denom if max_denom is not None else int(config.get("catalog_max_denom", 2))
    max_extra = max_extra if max_extra is not None else int(config.get("catalog_max_extra_points", 1))
    max_spaces = max_spaces if max_spaces is not None else int(config.get("catalog_max_spaces", 24))
    if max_dim < 1:
        raise GeometryError(f"max_dim = {max_dim} < 1")

    spaces: List[NormedSpace] = []
    seen = set()

    def add(space: NormedSpace) -> None:
        if len(spaces) < max_spaces and len(space.vertices) <= max_vertices and space.ball not in seen:
            seen.add(space.ball)
            spaces.append(space)

    for n in range(1, max_dim + 1):
        add(l1(n))
        add(linf(n))
    for n in range(1, max_dim + 1):
        units = _units(n)
        points = [p for p in grid_points(n, max_denom) if p not in units]
        for size in range(1, max_extra + 1):
            for k, extra in enumerate(itertools.combinations(points, size)):
                if len(spaces) >= max_spaces:
                    break
                add(from_vertices(units + list(extra), label=f"P{n}.{size}.{k}"))
    logger.debug(f"Generated {len(spaces)} spaces up to dimension {max_dim}")
    return spaces


def unit_sphere_points(G: NormedSpace, max_denom: int) -> List[Vector]:
    """Vertices of G's ball followed by normalized grid points."""
    points = list(G.vertices)
    seen = set(points)
    for p in grid_points(G.dim, max_denom):
        size = norm(G, p)
        for sign in (1, -1):
            unit = tuple(sign * x / size for x in p)
            if unit not in seen:
                seen.add(unit)
                points.append(unit)
    return points


def arrow_candidates(
    F: NormedSpace,
    G: NormedSpace,
    images: Sequence[Vector],
    max_denom: int,
    accept_fwd: Callable[[Operator], bool],
    accept_back: Callable[[Operator], bool],
    budget: int,
) -> Iterator[DoubleArrow]:
    """
    Embeddings sending F's vertex basis onto tuples of `images`, each paired
    with left inverses L0 + N (1 - u L0) over grid matrices N (N = 0 first).
    """
    basis_idx = independent_prefix(F.vertices, F.dim)
    basis_inv = inverse(columns_matrix([F.vertices[i] for i in basis_idx], F.dim))
    values = grid_values(max_denom)
    tried = 0
    for chosen in itertools.permutations(images, F.dim):
        w = columns_matrix(list(chosen), G.dim)
        if rank(w) < F.dim:
            continue
        fwd = Operator(F, G, w * basis_inv)
        if not accept_fwd(fwd):
            continue
        base = left_inverse(fwd.matrix)
        complement = identity(G.dim) - fwd.matrix * base
        for entries in itertools.product(values, repeat=F.dim * G.dim):
            tried += 1
            if tried > budget:
                return
            n = ImmutableMatrix(F.dim, G.dim, list(entries))
            back = Operator(G, F, base + n * complement)
            if accept_back(back):
                yield DoubleArrow(fwd, back)
            if complement.is_zero_matrix:
                break


def _orbit_key(arrow: DoubleArrow, sym_f: List[ImmutableMatrix], sym_g: List[ImmutableMatrix]) -> Tuple:
    keys = []
    for a in sym_f:
        a_inv = a.inv()
        for b in sym_g:
            fwd = b * arrow.fwd.matrix * a_inv
            back = a * arrow.back.matrix * b.inv()
            keys.append(tuple(fwd) + tuple(back))
    return min(keys)


def symmetry_group(X: NormedSpace, budget: Optional[int] = None) -> List[ImmutableMatrix]:
    found = isometries_between(X, X, budget)
    return found or [identity(X.dim)]


def _isometry_classes(spaces: Sequence[NormedSpace], budget: Optional[int] = None) -> List[int]:
    """Index of the first isometric space for every space."""
    classes: List[int] = []
    for k, X in enumerate(spaces):
        classes.append(next((classes[j] for j in range(k) if isometries_between(spaces[j], X, budget)), k))
    return classes


def _drop_intertwined(entries: List[CatalogEntry], classes: List[int]) -> List[CatalogEntry]:
    kept: List[CatalogEntry] = []
    for entry in entries:
        shape = (classes[entry.source_index], classes[entry.target_index])
        pair = (entry.source_index, entry.target_index)
        twin = next((
            other for other in kept
            if (classes[other.source_index], classes[other.target_index]) == shape
            and (other.source_index, other.target_index) != pair
            and arrow_distance_upper(other.arrow, entry.arrow) == 0
        ), None)
        if twin is None:
            kept.append(entry)
        else:
            logger.debug(f"Catalog: arrow {pair} intertwines exactly with ({twin.source_index}, {twin.target_index})")
    return kept


def gen_double_arrows(
    spaces: Sequence[NormedSpace],
    max_denom: Optional[int] = None,
    max_entries_per_pair: Optional[int] = None,
    seed: Optional[int] = None,
    budget: Optional[int] = None,
) -> ArrowCatalog:
    """
    Certified (1, 0, 1)-arrows F <-> G for every ordered pair with dim F <= dim G,
    one representative per orbit of the symmetry groups of F and G. Arrows that
    intertwine exactly with an earlier arrow of another pair are dropped.
    """
    config = load_config()
    max_denom = max_denom if max_denom is not None else int(config.get("catalog_max_denom", 2))
    per_pair = max_entries_per_pair if max_entries_per_pair is not None else int(config.get("catalog_max_entries_per_pair", 4))
    seed = seed if seed is not None else int(config.get("default_seed", 0))
    budget = budget if budget is not None else int(config.get("grid_budget", 400))
    spaces = tuple(spaces)
    groups = [symmetry_group(X) for X in spaces]

    entries: List[CatalogEntry] = []
    for si, F in enumerate(spaces):
        for ti, G in enumerate(spaces):
            if F.dim > G.dim:
                continue
            kept = {}
            candidates = arrow_candidates(
                F, G, list(G.vertices), max_denom,
                accept_fwd=is_isometry,
                accept_back=lambda back: back.norm == 1,
                budget=budget,
            )
            for arrow in candidates:
                if not arrow.arrow_class.is_double:
                    continue
                key = _orbit_key(arrow, groups[si], groups[ti])
                if key not in kept:
                    kept[key] = arrow
                    if len(kept) >= per_pair:
                        break
            for key in sorted(kept):
                entries.append(CatalogEntry(kept[key], si, ti))
    entries = _drop_intertwined(entries, _isometry_classes(spaces))
    logger.info(f"Catalog: {len(entries)} double arrows over {len(spaces)} spaces")
    params = {"max_denom": max_denom, "max_entries_per_pair": per_pair, "budget": budget}
    return ArrowCatalog(spaces, tuple(entries), Rational(1, max_denom), seed, params)


def arrow_grid(
    F: NormedSpace,
    X: NormedSpace,
    m: int,
    max_denom: Optional[int] = None,
    budget: Optional[int] = None,
) -> List[DoubleArrow]:
    """Contractive (1 + 2^-m, 0, 1 + 2^-m)-arrows F <-> X from the bounded grid."""
    if m < 0:
        raise GeometryError(f"grid level m = {m} < 0")
    config = load_config()
    max_denom = max_denom if max_denom is not None else int(config.get("catalog_max_denom", 2))
    budget = budget if budget is not None else int(config.get("grid_budget", 400))
    if F.dim > X.dim:
        return []
    eps = Rational(1, 2 ** m)
    grid: List[DoubleArrow] = []
    seen = set()
    candidates = arrow_candidates(
        F, X, unit_sphere_points(X, max_denom), max_denom,
        accept_fwd=lambda fwd: is_isometry(fwd, eps, contractive=True),
        accept_back=lambda back: back.norm <= 1 + eps,
        budget=budget,
    )
    for arrow in candidates:
        key = (arrow.fwd.matrix, arrow.back.matrix)
        if key in seen:
            continue
        seen.add(key)
        if arrow.arrow_class.within(1 + eps, 0, 1 + eps, contractive=True):
            grid.append(arrow)
    logger.debug(f"Grid level {m} for {F} -> {X}: {len(grid)} arrows")
    return grid

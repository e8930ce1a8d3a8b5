import itertools
import logging
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple

from ..arrows import DoubleArrow, Operator, compose
from ..catalog import ArrowCatalog, arrow_grid
from ..certificates import Certificate
from ..errors import HypothesisError
from ..linalg import block_diag, hstack, inverse, zero
from ..pushout import MultiPushout, factor, multi_pushout_extension
from ..spaces import NormedSpace, SUM_1, direct_sum
from .state import ConstructionState, EngineParams, Key, LedgerEntry, StepRecord

logger = logging.getLogger(__name__)

Candidate = Tuple[int, int, DoubleArrow]


@lru_cache(maxsize=512)
def _grid(F: NormedSpace, P: NormedSpace, m: int, max_denom: int, budget: int) -> Tuple[DoubleArrow, ...]:
    return tuple(arrow_grid(F, P, m, max_denom, budget))


def init(X: NormedSpace, catalog: ArrowCatalog, params: Optional[EngineParams] = None) -> ConstructionState:
    params = params or EngineParams.from_config()
    P0 = NormedSpace(X.dim, X.ball, X.label or "P0")
    logger.info(f"Engine initialised on {P0} with {len(catalog.entries)} catalog arrows")
    return ConstructionState((P0,), (), (), catalog, params)


def stage_candidates(state: ConstructionState, k: int) -> Iterator[Candidate]:
    """
    The enumeration of stage k: pairs (catalog arrow u: F <-> G, grid arrow
    F <-> P_k), ordered by grid level, then catalog entry, then grid order.
    """
    params = state.params
    P = state.stages[k]
    for m in range(params.grid_levels + 1):
        for ci, entry in enumerate(state.catalog.entries):
            for d in _grid(entry.arrow.source, P, m, params.max_denom, params.grid_budget):
                yield ci, m, d


def candidate_at(state: ConstructionState, key: Key) -> Optional[Candidate]:
    stage, index = key
    return next(itertools.islice(stage_candidates(state, stage), index, None), None)


def stage_inclusion(state: ConstructionState, j: int, k: int) -> DoubleArrow:
    """Composite (1, 0, 1)-arrow P_j <-> P_k for j <= k."""
    if not 0 <= j <= k <= state.n:
        raise HypothesisError(f"no inclusion from stage {j} to stage {k} of {state.n}")
    arrow = DoubleArrow.identity(state.stages[j])
    for link in state.inclusions[j:k]:
        arrow = compose(arrow, link)
    return arrow


def stage_projection(state: ConstructionState, k: int, n: Optional[int] = None) -> Operator:
    """Norm-one projection P_n -> P_k (n defaults to the last stage)."""
    return stage_inclusion(state, k, state.n if n is None else n).back


def _sum_arrow(arrows: Sequence[DoubleArrow]) -> DoubleArrow:
    source, target = arrows[0].source, arrows[0].target
    for arrow in arrows[1:]:
        source = direct_sum(source, arrow.source, SUM_1)
        target = direct_sum(target, arrow.target, SUM_1)
    return DoubleArrow.from_matrices(
        source, target,
        block_diag(*[a.fwd.matrix for a in arrows]),
        block_diag(*[a.back.matrix for a in arrows]),
    )


def _push_out(state: ConstructionState, entries: Sequence[LedgerEntry], step: int) -> MultiPushout:
    """Multiple push-out of the entries' catalog arrows along their probes lifted to P_step."""
    catalog = state.catalog.entries
    arrows = [catalog[e.catalog_index].arrow for e in entries]
    lifted = [compose(e.probe, stage_inclusion(state, e.stage, step)) for e in entries]
    if len(entries) == 1:
        return multi_pushout_extension(arrows[0], None, lifted[0], None)
    rest = _sum_arrow(arrows[1:])
    j2 = Operator(rest.source, state.stages[step], hstack(*[d.fwd.matrix for d in lifted[1:]]))
    return multi_pushout_extension(arrows[0], rest, lifted[0], j2)


def step_extension(state: ConstructionState, step: int) -> MultiPushout:
    record = state.ledger[step]
    if record.extension is not None:
        return record.extension
    return _push_out(state, record.entries, step)


def extension_at(state: ConstructionState, step: int, position: int) -> DoubleArrow:
    """
    Arrow G_u <-> P_step+1 extending the entry in slot `position` of `step`,
    expressed in the coordinates of the recorded stage.
    """
    record = state.ledger[step]
    main = step_extension(state, step)
    if position == 0:
        return main.j_restricted
    entries = list(record.entries)
    order = [position] + [k for k in range(len(entries)) if k != position]
    moved = _push_out(state, [entries[k] for k in order], step)

    catalog = state.catalog.entries
    dims = [catalog[e.catalog_index].arrow.target.dim for e in entries]
    offsets = [sum(dims[:k]) for k in range(len(dims))]
    perm = zero(sum(dims), sum(dims)).as_mutable()
    col = 0
    for k in order:
        for r in range(dims[k]):
            perm[offsets[k] + r, col] = 1
            col += 1
    target = main.main
    to_recorded = Operator(moved.main.j_prime.domain, target.j_prime.domain, perm.as_immutable())
    phi = factor(moved.main, target.j_prime @ to_recorded, target.i_prime)
    phi_inv = Operator(target.po, moved.main.po, inverse(phi.matrix))
    ext = moved.j_restricted
    return DoubleArrow(phi @ ext.fwd, ext.back @ phi_inv)


def _next_keys(state: ConstructionState) -> List[Key]:
    n = state.n
    return [(i, n - i) for i in range(n + 1)]


def step(state: ConstructionState) -> ConstructionState:
    """
    Pushes out the items d_(i, j) with i + j = n (after the pending ones) and
    appends P_n+1 with its (1, 0, 1) inclusion.
    """
    params = state.params
    n = state.n
    P = state.stages[n]
    catalog = state.catalog.entries
    # Deferred items go ahead of the new diagonal
    queue = list(state.pending) + [k for k in _next_keys(state) if k not in state.processed()]
    chosen: List[LedgerEntry] = []
    pending: List[Key] = []
    dim = P.dim
    for key in queue:
        found = candidate_at(state, key)
        if found is None:
            continue
        ci, m, probe = found
        grows = catalog[ci].arrow.target.dim - catalog[ci].arrow.source.dim
        if len(chosen) >= params.max_entries or dim + grows > params.max_dim:
            pending.append(key)
            continue
        dim += grows
        chosen.append(LedgerEntry(n, len(chosen), key[0], key[1], ci, m, probe))

    cert = Certificate(f"step[{n}]")
    cert.record("entries", len(chosen))
    cert.record("pending", len(pending))
    if not chosen:
        inclusion = DoubleArrow.identity(P)
        new_stage = NormedSpace(P.dim, P.ball, f"P{n + 1}")
        inclusion = DoubleArrow(inclusion.fwd.with_spaces(P, new_stage), inclusion.back.with_spaces(new_stage, P))
        extension = None
    else:
        extension = _push_out(state, chosen, n)
        cert.merge(extension.certificate, "extension")
        po = extension.main.po
        new_stage = NormedSpace(po.dim, po.ball, f"P{n + 1}")
        arrow = extension.po_arrow
        inclusion = DoubleArrow(arrow.fwd.with_spaces(P, new_stage), arrow.back.with_spaces(new_stage, P))
    cert.check_true("inclusion_double", inclusion.arrow_class.is_double)
    cert.check_eq("dimension_growth", new_stage.dim - P.dim, dim - P.dim)

    record = StepRecord(n, tuple(chosen), tuple(pending), cert, extension)
    grown = ConstructionState(
        state.stages + (new_stage,),
        state.inclusions + (inclusion,),
        state.ledger + (record,),
        state.catalog,
        params,
    )
    for j in range(n + 1):
        cert.check_true(f"composite[{j}]", stage_inclusion(grown, j, n + 1).arrow_class.is_double)
    cert.require()
    logger.info(f"Step {n}: {len(chosen)} items, {len(pending)} pending, P{n + 1} of dimension {new_stage.dim}")
    return grown


def run(state: ConstructionState, steps: int) -> ConstructionState:
    for _ in range(steps):
        state = step(state)
    return state

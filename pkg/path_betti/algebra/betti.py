"""Graded Betti numbers of R/I_t for cycles and lines.

Two independent routes: ``betti_hochster`` sums reduced homology of complements
of induced subcollections over every vertex subset, and the closed forms count
eligible run placements and read the top degree off n = (t+1)p + d.
"""

import logging
import os
import time
from functools import lru_cache, reduce
from multiprocessing import Pool
from types import MappingProxyType
from typing import Dict, Iterable, Mapping, Optional, Tuple

from ..types import (
    CYCLE,
    DEFAULT_MAX_SUBSET_BITS,
    MAX_SUBSET_BITS_ENV,
    METHOD_CLOSED_FORM,
    METHOD_ELIGIBLE_COUNT,
    METHOD_ORACLE,
    RATIONALS,
    ZERO_SUMMARY,
    BettiTable,
    DomainError,
    FieldSpec,
    HomologySummary,
    HomologyVector,
    PathFamilySpec,
    ResourceLimitError,
    RunSequence,
)
from .chains import reduced_homology_dims
from .paths import build_path_complex, enumerate_placements, placement_facets
from .simplicial import (
    Face,
    SimplicialComplex,
    complement,
    face_mask,
    induced_subcollection,
    make_complex,
    vertex_set,
)

LOGGER = logging.getLogger(__name__)

CHUNKS_PER_WORKER = 4


def max_subset_bits() -> int:
    value = os.environ.get(MAX_SUBSET_BITS_ENV)
    if value is None:
        return DEFAULT_MAX_SUBSET_BITS
    try:
        bits = int(value)
    except ValueError:
        raise DomainError(f"{MAX_SUBSET_BITS_ENV} must be an integer, got {value!r}")
    if bits < 0:
        raise DomainError(f"{MAX_SUBSET_BITS_ENV} must be nonnegative, got {bits}")
    return bits


def _require_cycle(spec: PathFamilySpec):
    if spec.kind != CYCLE:
        raise DomainError(f"Expected a cycle, got {spec}")


def _hochster_chunk(
    complex: SimplicialComplex, field: FieldSpec, lo: int, hi: int
) -> BettiTable:
    ambient = complex.ambient
    bit = {v: k for k, v in enumerate(ambient)}
    masks = [face_mask(bit[v] for v in f) for f in complex.facets]
    memo: Dict[Tuple[int, Tuple[Face, ...]], HomologyVector] = {}
    table = BettiTable()
    for mask in range(max(lo, 1), hi):
        inside = [k for k, m in enumerate(masks) if m & ~mask == 0]
        if not inside:
            continue
        support = 0
        for k in inside:
            support |= masks[k]
        # a vertex of Y outside every facet makes the complement a cone
        if support != mask:
            continue
        members = [v for v in ambient if mask >> bit[v] & 1]
        position = {v: k + 1 for k, v in enumerate(members)}
        key = (
            len(members),
            tuple(sorted(tuple(position[v] for v in complex.facets[k]) for k in inside)),
        )
        homology = memo.get(key)
        if homology is None:
            size, facets = key
            gamma = make_complex(range(1, size + 1), facets)
            homology = reduced_homology_dims(complement(gamma, range(1, size + 1)), field)
            memo[key] = homology
        for degree, value in homology.dims.items():
            table.add(degree + 2, len(members), value, METHOD_ORACLE)
    LOGGER.debug("subsets %d..%d: %d distinct complements", lo, hi, len(memo))
    return table


def betti_hochster(
    complex: SimplicialComplex,
    field: FieldSpec = RATIONALS,
    *,
    workers: int = 1,
    max_bits: Optional[int] = None,
) -> BettiTable:
    """β_{i,|Y|} += dim H̃_{i-2}(Γ^c_Y) over every Y whose induced Γ has support Y."""
    cap = max_subset_bits() if max_bits is None else max_bits
    size = len(complex.ambient)
    if size > cap:
        raise ResourceLimitError(
            f"{size} vertices exceed the oracle cap of {cap} ({MAX_SUBSET_BITS_ENV})"
        )
    start = time.perf_counter()
    total = 1 << size
    if workers <= 1:
        table = _hochster_chunk(complex, field, 0, total)
    else:
        step = max(1, -(-total // (workers * CHUNKS_PER_WORKER)))
        chunks = [(complex, field, lo, min(lo + step, total)) for lo in range(0, total, step)]
        with Pool(workers) as pool:
            parts = pool.starmap(_hochster_chunk, chunks)
        table = reduce(BettiTable.merge, parts, BettiTable())
    LOGGER.info(
        "oracle over %s on %d vertices: %d entries in %.3fs",
        field, size, len(table), time.perf_counter() - start,
    )
    return table


def homology_run_sequence(t: int, seq: RunSequence) -> HomologySummary:
    if t < 2:
        raise DomainError(f"Path length t={t} must be at least 2")
    shape = seq.shape(t)
    if not shape.eligible:
        return ZERO_SUMMARY
    return HomologySummary(shape.homological_degree - 2, 1)


def homology_cycle_complement(spec: PathFamilySpec) -> HomologySummary:
    _require_cycle(spec)
    if spec.d == 0:
        return HomologySummary(2 * spec.p - 2, spec.t)
    return HomologySummary(2 * spec.p - 1, 1)


def betti_top_degree(spec: PathFamilySpec) -> Tuple[int, int]:
    """(i, β_{i,n}) for the single nonzero Betti number of degree n."""
    summary = homology_cycle_complement(spec)
    return summary.nonzero_degree + 2, summary.dimension


@lru_cache(maxsize=None)
def _tally(spec: PathFamilySpec, window: Optional[Tuple[int, int]]) -> Mapping[Tuple[int, int], int]:
    counts: Dict[Tuple[int, int], int] = {}
    for placement in enumerate_placements(spec, window=window):
        shape = placement.sequence.shape(spec.t)
        if not shape.eligible:
            continue
        key = (shape.homological_degree, shape.internal_degree)
        counts[key] = counts.get(key, 0) + 1
    return MappingProxyType(counts)


def eligible_tally(
    spec: PathFamilySpec, window: Optional[Tuple[int, int]] = None
) -> Mapping[Tuple[int, int], int]:
    """Number of (i, j)-eligible subcollections for every (i, j), in one pass."""
    _require_cycle(spec)
    if spec.t == spec.n:
        return MappingProxyType({})
    return _tally(spec, window)


def count_eligible(spec: PathFamilySpec, i: int, j: int) -> int:
    _require_cycle(spec)
    if j >= spec.n:
        raise DomainError(f"Degree j={j} is not below n={spec.n}; use betti_top_degree")
    if i > j:
        raise DomainError(f"Homological degree i={i} exceeds j={j}")
    return eligible_tally(spec).get((i, j), 0)


def nonzero_criterion(spec: PathFamilySpec, i: int, j: int) -> bool:
    """False guarantees β_{i,j} = 0 for j < n; True promises nothing."""
    _require_cycle(spec)
    t, p, d = spec.t, spec.p, spec.d
    if j > i * t:
        return False
    if j - i > (t - 1) * p:
        return False
    if d == 0:
        return i < 2 * p
    return i <= 2 * p + 1


def betti_closed_cycle(spec: PathFamilySpec) -> BettiTable:
    _require_cycle(spec)
    table = BettiTable()
    for j in range(1, spec.n):
        for i in range(1, j + 1):
            if not nonzero_criterion(spec, i, j):
                continue
            table.add(i, j, count_eligible(spec, i, j), METHOD_ELIGIBLE_COUNT)
    i, value = betti_top_degree(spec)
    table.add(i, spec.n, value, METHOD_CLOSED_FORM)
    return table


def _table_from_counts(counts: Iterable[Tuple[Tuple[int, int], int]]) -> BettiTable:
    table = BettiTable()
    for (i, j), value in sorted(counts):
        table.add(i, j, value, METHOD_ELIGIBLE_COUNT)
    return table


def betti_closed_subcollection(spec: PathFamilySpec, vertices: Iterable[int]) -> BettiTable:
    """Betti table of the facet ideal of the induced subcollection of Δ_t(C_n) on ``vertices``."""
    _require_cycle(spec)
    vertices = vertex_set(vertices)
    if vertices == tuple(range(1, spec.n + 1)):
        return betti_closed_cycle(spec)
    lam = induced_subcollection(build_path_complex(spec), vertices)
    if lam.is_void or spec.t == spec.n:
        return BettiTable()
    allowed = set(lam.facets)
    counts: Dict[Tuple[int, int], int] = {}
    for placement in enumerate_placements(spec):
        if not allowed.issuperset(placement_facets(placement, spec)):
            continue
        shape = placement.sequence.shape(spec.t)
        if shape.eligible:
            key = (shape.homological_degree, shape.internal_degree)
            counts[key] = counts.get(key, 0) + 1
    return _table_from_counts(counts.items())


def betti_closed_line(spec: PathFamilySpec, *, embedding_size: Optional[int] = None) -> BettiTable:
    """Counts eligible subcollections of Δ_t(L_n) sitting inside a larger cycle."""
    if spec.is_cycle:
        raise DomainError(f"Expected a line, got {spec}")
    size = spec.n + spec.t + 1 if embedding_size is None else embedding_size
    if size <= spec.n:
        raise DomainError(f"Embedding cycle of size {size} does not contain {spec}")
    cycle = PathFamilySpec(CYCLE, size, spec.t)
    return _table_from_counts(eligible_tally(cycle, (1, spec.facet_count)).items())


def pd_reg(spec: PathFamilySpec) -> Tuple[int, int]:
    _require_cycle(spec)
    t, p, d = spec.t, spec.p, spec.d
    if d != 0:
        return 2 * p + 1, (t - 1) * p + d - 1
    return 2 * p, (t - 1) * p


def betti_oracle(
    spec: PathFamilySpec,
    field: FieldSpec = RATIONALS,
    *,
    vertices: Optional[Iterable[int]] = None,
    workers: int = 1,
    max_bits: Optional[int] = None,
) -> BettiTable:
    complex = build_path_complex(spec)
    if vertices is not None:
        complex = induced_subcollection(complex, vertices)
    return betti_hochster(complex, field, workers=workers, max_bits=max_bits)

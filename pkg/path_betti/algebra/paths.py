"""Path complexes of cycles and lines, runs, and run-sequence complements.

Facet ``a`` of the standard labeling of Δ_t(C_n) is {x_a, ..., x_{a+t-1}} taken
mod n. A run is a block of consecutive facets; a set of runs is an induced
subcollection exactly when at least t facets separate any two of them.
"""

from typing import Callable, Dict, Iterator, List, Optional, Tuple

from ..types import (
    LINE,
    PathFamilySpec,
    RunPlacement,
    RunSequence,
    DomainError,
    StructuralError,
)
from .simplicial import (
    Face,
    SimplicialComplex,
    VertexSet,
    complement,
    connected_components,
    disjoint_union,
    induced_subcollection,
    make_complex,
    vertex_set,
)

SequencePredicate = Callable[[RunSequence], bool]


def _wrap(position: int, n: int) -> int:
    return (position - 1) % n + 1


def standard_facet(spec: PathFamilySpec, a: int) -> Face:
    if spec.is_cycle:
        return vertex_set(_wrap(a + k, spec.n) for k in range(spec.t))
    if not 1 <= a <= spec.facet_count:
        raise DomainError(f"{spec} has no facet {a}")
    return tuple(range(a, a + spec.t))


def build_path_complex(spec: PathFamilySpec) -> SimplicialComplex:
    ambient = range(1, spec.n + 1)
    if spec.is_cycle and spec.t == spec.n:
        return make_complex(ambient, [ambient])
    return make_complex(ambient, [standard_facet(spec, a) for a in range(1, spec.facet_count + 1)])


def _facet_index(spec: PathFamilySpec) -> Dict[Face, int]:
    return {standard_facet(spec, a): a for a in range(1, spec.facet_count + 1)}


def _run_start(indices: List[int], spec: PathFamilySpec) -> int:
    present = set(indices)
    count = spec.facet_count
    if spec.is_cycle:
        starts = [a for a in indices if _wrap(a - 1, count) not in present]
    else:
        starts = [a for a in indices if a - 1 not in present]
    if len(starts) != 1:
        raise StructuralError(f"Facets {sorted(indices)} of {spec} do not form a run")
    start = starts[0]
    block = {_wrap(start + k, count) if spec.is_cycle else start + k for k in range(len(indices))}
    if block != present:
        raise StructuralError(f"Facets {sorted(indices)} of {spec} do not form a run")
    return start


def run_decomposition(
    subcollection: SimplicialComplex, spec: PathFamilySpec
) -> Tuple[RunSequence, RunPlacement]:
    if spec.is_cycle and spec.t == spec.n:
        raise DomainError(f"{spec} is a single simplex and has no standard labeling")
    index = _facet_index(spec)
    runs = []
    for component in connected_components(subcollection):
        try:
            indices = [index[f] for f in component.facets]
        except KeyError as e:
            raise StructuralError(f"{set(e.args[0])} is not a facet of {spec}")
        runs.append((_run_start(indices, spec), len(indices)))
    runs.sort()
    placement = RunPlacement(tuple(runs))
    return placement.sequence, placement


def vertex_count_of_runs(seq: RunSequence, t: int) -> int:
    return sum(s + t - 1 for s in seq.lengths)


def build_run_complement(seq: RunSequence, t: int) -> SimplicialComplex:
    """E(s_1, ..., s_r): each run laid out on its own block of s_j + t - 1 vertices."""
    runs = []
    offset = 0
    for s in seq.lengths:
        width = s + t - 1
        line = PathFamilySpec(LINE, width, t)
        runs.append(make_complex(
            range(offset + 1, offset + width + 1),
            [[v + offset for v in standard_facet(line, a)] for a in range(1, s + 1)],
        ))
        offset += width
    union = disjoint_union(runs)
    return complement(union, union.support)


def placement_support(placement: RunPlacement, spec: PathFamilySpec) -> VertexSet:
    return vertex_set(
        _wrap(a + k, spec.n) for a, s in placement.runs for k in range(s + spec.t - 1)
    )


def placement_facets(placement: RunPlacement, spec: PathFamilySpec) -> List[Face]:
    return [
        standard_facet(spec, _wrap(a + k, spec.n)) for a, s in placement.runs for k in range(s)
    ]


def placement_is_induced(placement: RunPlacement, spec: PathFamilySpec) -> bool:
    """Vertex form of the gap rule: inducing on the support adds no facet."""
    complex = build_path_complex(spec)
    induced = induced_subcollection(complex, placement_support(placement, spec))
    return set(induced.facets) == set(placement_facets(placement, spec))


def rotate_placement(placement: RunPlacement, spec: PathFamilySpec, k: int = 1) -> RunPlacement:
    return RunPlacement(tuple(sorted((_wrap(a + k, spec.n), s) for a, s in placement.runs)))


def _extend(
    runs: List[Tuple[int, int]], first: int, earliest: int, spec: PathFamilySpec,
    last_start: int, last_end: int,
) -> Iterator[List[Tuple[int, int]]]:
    yield runs
    # the next run (b, s) keeps t facets after the previous run and t before ``first`` comes round
    for b in range(earliest, last_start + 1):
        s = 1
        while b + s + spec.t <= first + spec.n and b + s - 1 <= last_end:
            runs.append((b, s))
            yield from _extend(runs, first, b + s + spec.t, spec, last_start, last_end)
            runs.pop()
            s += 1


def enumerate_placements(
    spec: PathFamilySpec,
    constraint: Optional[SequencePredicate] = None,
    *,
    window: Optional[Tuple[int, int]] = None,
) -> Iterator[RunPlacement]:
    """Every set of disjoint runs of Δ_t(C_n) that is an induced subcollection, once each.

    Each set is built up from its least start. ``window`` = (lo, hi) keeps only
    runs lying inside facets lo..hi without wrapping round.
    """
    if not spec.is_cycle or spec.t >= spec.n:
        raise DomainError(f"Placements are enumerated on cycles with t < n, got {spec}")
    lo, hi = window if window is not None else (1, spec.n)
    if not 1 <= lo <= hi <= spec.n:
        raise DomainError(f"Window {lo}..{hi} lies outside the facets of {spec}")
    last_end = hi if window is not None else 2 * spec.n
    for first in range(lo, hi + 1):
        s = 1
        while s <= spec.n - spec.t and first + s - 1 <= last_end:
            for runs in _extend([(first, s)], first, first + s + spec.t, spec, hi, last_end):
                placement = RunPlacement(tuple(runs))
                if constraint is None or constraint(placement.sequence):
                    yield placement
            s += 1

"""Facet-represented simplicial complexes.

Vertices are 1-based ints and faces are sorted tuples, so the empty face is
``()``. A complex with no facets is VOID (no faces at all); a complex whose
only facet is ``()`` is IRRELEVANT, the complex {∅}.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from ..types import DomainError

VertexSet = Tuple[int, ...]
Face = Tuple[int, ...]


def vertex_set(vertices: Iterable[int]) -> VertexSet:
    return tuple(sorted(set(vertices)))


def face_mask(face: Iterable[int]) -> int:
    mask = 0
    for v in face:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class SimplicialComplex:
    ambient: VertexSet
    facets: Tuple[Face, ...]

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def is_irrelevant(self) -> bool:
        return self.facets == ((),)

    @property
    def dimension(self) -> int:
        """-1 for {∅}; VOID is reported as -2 so it sorts below everything."""
        if self.is_void:
            return -2
        return max(len(f) for f in self.facets) - 1

    @property
    def support(self) -> VertexSet:
        return vertex_set(v for f in self.facets for v in f)

    def __str__(self) -> str:
        if self.is_void:
            return "VOID"
        return "<" + ", ".join("{" + ",".join(map(str, f)) + "}" for f in self.facets) + ">"


VOID = SimplicialComplex((), ())


def _check_inside(facets: Iterable[Face], ambient: VertexSet, what: str):
    allowed = set(ambient)
    for f in facets:
        if not allowed.issuperset(f):
            raise DomainError(f"{what} {set(f) or '{}'} is not contained in {set(ambient) or '{}'}")


def make_complex(ambient: Iterable[int], facets: Iterable[Iterable[int]]) -> SimplicialComplex:
    ambient = vertex_set(ambient)
    faces = {vertex_set(f) for f in facets}
    _check_inside(faces, ambient, "Facet")
    # longest first, so a face can only be swallowed by one already kept
    kept: List[Face] = []
    kept_sets = []
    for f in sorted(faces, key=lambda f: (-len(f), f)):
        fs = set(f)
        if any(fs <= k for k in kept_sets):
            continue
        kept.append(f)
        kept_sets.append(fs)
    return SimplicialComplex(ambient, tuple(sorted(kept)))


def induced_subcollection(complex: SimplicialComplex, vertices: Iterable[int]) -> SimplicialComplex:
    """Facets lying inside ``vertices``; the ambient of the result is their support."""
    vertices = vertex_set(vertices)
    _check_inside([vertices], complex.ambient, "Vertex set")
    allowed = set(vertices)
    facets = tuple(f for f in complex.facets if allowed.issuperset(f))
    return SimplicialComplex(vertex_set(v for f in facets for v in f), facets)


def complement(complex: SimplicialComplex, vertices: Iterable[int]) -> SimplicialComplex:
    vertices = vertex_set(vertices)
    _check_inside(complex.facets, vertices, "Facet")
    universe = set(vertices)
    return make_complex(vertices, [universe.difference(f) for f in complex.facets])


def cone(complex: SimplicialComplex, apex: int) -> SimplicialComplex:
    if apex in complex.ambient:
        raise DomainError(f"Apex {apex} is already a vertex")
    ambient = complex.ambient + (apex,)
    if complex.is_void:
        return make_complex(ambient, [(apex,)])
    return make_complex(ambient, [f + (apex,) for f in complex.facets])


def join(first: SimplicialComplex, second: SimplicialComplex) -> SimplicialComplex:
    if set(first.ambient) & set(second.ambient):
        raise DomainError("A join needs disjoint vertex sets")
    facets = [f + g for f in first.facets for g in second.facets]
    return make_complex(first.ambient + second.ambient, facets)


def disjoint_union(complexes: Sequence[SimplicialComplex]) -> SimplicialComplex:
    ambient: List[int] = []
    facets: List[Face] = []
    for c in complexes:
        if set(ambient) & set(c.ambient):
            raise DomainError("A disjoint union needs disjoint vertex sets")
        ambient.extend(c.ambient)
        facets.extend(c.facets)
    return make_complex(ambient, facets)


def relabel(complex: SimplicialComplex, mapping: Mapping[int, int]) -> SimplicialComplex:
    if set(mapping) != set(complex.ambient) or len(set(mapping.values())) != len(mapping):
        raise DomainError("Relabeling must be a bijection on the ambient vertex set")
    return make_complex(
        (mapping[v] for v in complex.ambient),
        ([mapping[v] for v in f] for f in complex.facets),
    )


def connected_components(complex: SimplicialComplex) -> List[SimplicialComplex]:
    if complex.is_void:
        raise DomainError("The void complex has no components")
    # union-find over facet indices, joined through shared vertices
    parent = list(range(len(complex.facets)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    owner: Dict[int, int] = {}
    for index, f in enumerate(complex.facets):
        for v in f:
            if v in owner:
                parent[find(index)] = find(owner[v])
            else:
                owner[v] = index

    blocks: Dict[int, List[Face]] = {}
    for index, f in enumerate(complex.facets):
        blocks.setdefault(find(index), []).append(f)
    components = [
        SimplicialComplex(vertex_set(v for f in fs for v in f), tuple(fs))
        for fs in blocks.values()
    ]
    return sorted(components, key=lambda c: c.facets[0])


def faces_of_dim(complex: SimplicialComplex, k: int) -> List[Face]:
    if k < -1:
        raise DomainError(f"Face dimension {k} is below -1")
    if complex.is_void:
        return []
    if k == -1:
        return [()]
    faces = set()
    for f in complex.facets:
        if len(f) > k:
            faces.update(combinations(f, k + 1))
    return sorted(faces)


def f_vector(complex: SimplicialComplex) -> List[int]:
    """Face counts f_{-1}, f_0, ..., f_dim."""
    return [len(faces_of_dim(complex, k)) for k in range(-1, complex.dimension + 1)]


def facet_ideal_generators(complex: SimplicialComplex, variable: str = "x") -> List[str]:
    return ["*".join(f"{variable}{v}" for v in f) or "1" for f in complex.facets]

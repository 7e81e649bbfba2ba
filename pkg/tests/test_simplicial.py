from math import comb

import pytest

from path_betti.types import DomainError, PathFamilySpec
from path_betti.algebra.chains import reduced_homology_dims
from path_betti.algebra.paths import build_path_complex
from path_betti.algebra.simplicial import (
    VOID,
    complement,
    cone,
    connected_components,
    disjoint_union,
    facet_ideal_generators,
    faces_of_dim,
    induced_subcollection,
    join,
    make_complex,
    relabel,
)

C7_T4 = [
    (1, 2, 3, 4), (2, 3, 4, 5), (3, 4, 5, 6), (4, 5, 6, 7),
    (1, 5, 6, 7), (1, 2, 6, 7), (1, 2, 3, 7),
]


def test_make_complex_prunes_contained_facets():
    complex = make_complex([1, 2, 3], [{1, 2}, {2, 3}, {2}])
    assert complex.facets == ((1, 2), (2, 3))


def test_make_complex_void_and_irrelevant():
    void = make_complex([1, 2, 3], [])
    assert void.is_void and not void.is_irrelevant
    irrelevant = make_complex([1, 2], [()])
    assert irrelevant.is_irrelevant and not irrelevant.is_void
    assert irrelevant.dimension == -1


def test_make_complex_keeps_cycle_facets():
    complex = make_complex(range(1, 8), C7_T4)
    assert set(complex.facets) == set(C7_T4)


def test_make_complex_is_idempotent():
    complex = make_complex(range(1, 6), [{1, 2, 3}, {3, 4}, {1, 2}, {4, 5}, {3, 4}])
    assert make_complex(complex.ambient, complex.facets) == complex


def test_make_complex_rejects_outside_facet():
    with pytest.raises(DomainError):
        make_complex([1, 2], [{1, 3}])


def test_induced_subcollection():
    complex = make_complex(range(1, 8), C7_T4)
    run = induced_subcollection(complex, [1, 2, 3, 4, 5])
    assert run.facets == ((1, 2, 3, 4), (2, 3, 4, 5))
    assert run.ambient == (1, 2, 3, 4, 5)
    assert induced_subcollection(complex, [1, 2, 3]).is_void


def test_induced_subcollection_support_is_ambient():
    pentagon = build_path_complex(PathFamilySpec("cycle", 5, 2))
    gamma = induced_subcollection(pentagon, [1, 2, 3, 4])
    assert gamma.facets == ((1, 2), (2, 3), (3, 4))
    assert induced_subcollection(pentagon, pentagon.ambient).facets == pentagon.facets
    assert induced_subcollection(pentagon, [1, 2, 4]).ambient == (1, 2)


def test_induced_subcollection_rejects_foreign_vertices():
    with pytest.raises(DomainError):
        induced_subcollection(make_complex([1, 2], [{1, 2}]), [1, 2, 3])


def test_complement_examples():
    assert complement(make_complex([1, 2, 3, 4], [{1, 2, 3, 4}]), [1, 2, 3, 4]).is_irrelevant
    assert complement(make_complex([1, 2, 3], [{1, 2}, {2, 3}]), [1, 2, 3]).facets == ((1,), (3,))
    assert complement(make_complex([1], [{1}]), [1, 2]).facets == ((2,),)


def test_complement_rejects_facet_outside():
    with pytest.raises(DomainError):
        complement(make_complex([1, 2, 3], [{1, 2}, {2, 3}]), [1, 2])


def test_complement_is_involution_without_pruning():
    complex = make_complex(range(1, 8), C7_T4)
    twice = complement(complement(complex, complex.ambient), complex.ambient)
    assert twice.facets == complex.facets


def test_cone():
    assert cone(VOID, 9).facets == ((9,),)
    assert cone(make_complex([1, 2], [{1}, {2}]), 3).facets == ((1, 3), (2, 3))
    assert cone(make_complex([1, 2, 3], [{1, 2}, {2, 3}]), 4).facets == ((1, 2, 4), (2, 3, 4))
    with pytest.raises(DomainError):
        cone(make_complex([1, 2], [{1, 2}]), 2)


@pytest.mark.parametrize("facets", [[()], [{1}, {2}], [{1, 2}, {2, 3}, {1, 3}], C7_T4])
def test_cone_is_acyclic(facets):
    complex = make_complex(range(1, 8), facets)
    assert reduced_homology_dims(cone(complex, 99)).is_zero


def test_join_matches_cone_and_identity():
    complex = make_complex([1, 2], [{1}, {2}])
    point = make_complex([5], [{5}])
    assert join(complex, point) == cone(complex, 5)
    assert join(complex, make_complex([], [()])).facets == complex.facets
    assert join(complex, VOID).is_void


def test_connected_components():
    parts = connected_components(make_complex(range(1, 7), [{1, 2}, {2, 3}, {5, 6}]))
    assert [p.facets for p in parts] == [((1, 2), (2, 3)), ((5, 6),)]
    assert parts[1].ambient == (5, 6)
    assert len(connected_components(make_complex([1, 2], [{1, 2}]))) == 1
    assert len(connected_components(make_complex(range(1, 8), C7_T4))) == 1
    with pytest.raises(DomainError):
        connected_components(VOID)


def test_disjoint_union_and_relabel():
    union = disjoint_union([make_complex([1, 2], [{1, 2}]), make_complex([3, 4], [{3, 4}])])
    assert union.facets == ((1, 2), (3, 4))
    swapped = relabel(union, {1: 3, 2: 4, 3: 1, 4: 2})
    assert swapped.facets == union.facets
    with pytest.raises(DomainError):
        relabel(union, {1: 1, 2: 1, 3: 3, 4: 4})


def test_faces_of_dim():
    triangle = make_complex([1, 2, 3], [{1, 2, 3}])
    assert faces_of_dim(triangle, 1) == [(1, 2), (1, 3), (2, 3)]
    assert faces_of_dim(VOID, -1) == []
    assert faces_of_dim(triangle, -1) == [()]
    assert faces_of_dim(make_complex([1, 2, 3], [{1, 2}, {2, 3}]), 0) == [(1,), (2,), (3,)]


@pytest.mark.parametrize("size", [1, 3, 5])
def test_faces_of_simplex_are_binomial(size):
    simplex = make_complex(range(1, size + 1), [range(1, size + 1)])
    for k in range(-1, size):
        assert len(faces_of_dim(simplex, k)) == comb(size, k + 1)


def test_facet_ideal_generators():
    complex = build_path_complex(PathFamilySpec("line", 4, 2))
    assert facet_ideal_generators(complex) == ["x1*x2", "x2*x3", "x3*x4"]

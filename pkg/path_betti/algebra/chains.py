"""Reduced simplicial homology over Q or GF(p) from sparse boundary-matrix ranks."""

import logging
from dataclasses import dataclass
from math import gcd
from typing import Dict, List, Sequence, Tuple

from ..types import DomainError, FieldSpec, HomologyVector, RATIONALS
from .simplicial import Face, SimplicialComplex, faces_of_dim

LOGGER = logging.getLogger(__name__)

Column = Dict[int, int]


@dataclass(frozen=True)
class BoundaryMatrix:
    """∂_k from k-faces (columns) to (k-1)-faces (rows), sparse column-major."""
    degree: int
    rows: Tuple[Face, ...]
    cols: Tuple[Face, ...]
    columns: Tuple[Column, ...]

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.cols)

    def entry(self, row: int, col: int) -> int:
        return self.columns[col].get(row, 0)

    def compose(self, other: "BoundaryMatrix") -> List[Column]:
        """Columns of self · other, zero entries dropped."""
        if len(self.cols) != len(other.rows):
            raise DomainError(f"Cannot compose {self.shape} with {other.shape}")
        product = []
        for column in other.columns:
            result: Column = {}
            for middle, coefficient in column.items():
                for row, value in self.columns[middle].items():
                    result[row] = result.get(row, 0) + coefficient * value
            product.append({row: value for row, value in result.items() if value})
        return product


def boundary_matrices(complex: SimplicialComplex) -> List[BoundaryMatrix]:
    if complex.is_void:
        raise DomainError("The void complex has no chain complex")
    matrices = []
    lower = faces_of_dim(complex, -1)
    for k in range(0, complex.dimension + 1):
        upper = faces_of_dim(complex, k)
        index = {face: row for row, face in enumerate(lower)}
        columns = []
        for face in upper:
            column = {}
            for position in range(len(face)):
                column[index[face[:position] + face[position + 1:]]] = -1 if position % 2 else 1
            columns.append(column)
        matrices.append(BoundaryMatrix(k, tuple(lower), tuple(upper), tuple(columns)))
        LOGGER.debug("boundary d_%d is %dx%d", k, len(lower), len(upper))
        lower = upper
    return matrices


def _reduce_modular(columns: Sequence[Column], prime: int) -> int:
    pivots: Dict[int, Column] = {}
    rank = 0
    for original in sorted(columns, key=len):
        column = {row: value % prime for row, value in original.items() if value % prime}
        while column:
            low = max(column)
            pivot = pivots.get(low)
            if pivot is None:
                inverse = pow(column[low], prime - 2, prime)
                pivots[low] = {row: value * inverse % prime for row, value in column.items()}
                rank += 1
                break
            factor = column[low]
            for row, value in pivot.items():
                updated = (column.get(row, 0) - factor * value) % prime
                if updated:
                    column[row] = updated
                else:
                    column.pop(row, None)
    return rank


def _reduce_integral(columns: Sequence[Column]) -> int:
    # fraction-free: cross-multiply by the two leading coefficients, then divide out the content
    pivots: Dict[int, Column] = {}
    rank = 0
    for original in sorted(columns, key=len):
        column = {row: value for row, value in original.items() if value}
        while column:
            low = max(column)
            pivot = pivots.get(low)
            if pivot is None:
                pivots[low] = column
                rank += 1
                break
            a, b = pivot[low], column[low]
            g = gcd(a, b)
            a, b = a // g, b // g
            updated = {row: a * value for row, value in column.items()}
            for row, value in pivot.items():
                entry = updated.get(row, 0) - b * value
                if entry:
                    updated[row] = entry
                else:
                    updated.pop(row, None)
            content = 0
            for value in updated.values():
                content = gcd(content, value)
                if content == 1:
                    break
            if content > 1:
                updated = {row: value // content for row, value in updated.items()}
            column = updated
    return rank


def matrix_rank(matrix: BoundaryMatrix, field: FieldSpec = RATIONALS) -> int:
    if field.is_rational:
        return _reduce_integral(matrix.columns)
    return _reduce_modular(matrix.columns, field.characteristic)


def reduced_homology_dims(complex: SimplicialComplex, field: FieldSpec = RATIONALS) -> HomologyVector:
    if complex.is_void:
        return HomologyVector({})
    if complex.is_irrelevant:
        return HomologyVector({-1: 1})
    matrices = boundary_matrices(complex)
    ranks = [matrix_rank(m, field) for m in matrices] + [0]
    dims = {}
    # H̃_{-1} vanishes: the augmentation of a nonempty complex is onto
    for k, matrix in enumerate(matrices):
        dims[k] = len(matrix.cols) - ranks[k] - ranks[k + 1]
    return HomologyVector(dims)

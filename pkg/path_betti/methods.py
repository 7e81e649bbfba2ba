import time
from dataclasses import dataclass
from typing import Dict, Optional, Tuple, Type

from .types import (
    BettiTable,
    DomainError,
    FieldSpec,
    PathFamilySpec,
)
from .algebra.betti import (
    betti_closed_cycle,
    betti_closed_line,
    betti_closed_subcollection,
    betti_oracle,
)


@dataclass(frozen=True)
class ComputeOptions:
    workers: int = 1
    max_bits: Optional[int] = None
    vertices: Optional[Tuple[int, ...]] = None


class Method:
    """A way of producing the Betti table of a path ideal."""

    @classmethod
    def get_name(cls) -> str:
        raise NotImplementedError

    @classmethod
    def compute(cls, spec: PathFamilySpec, field: FieldSpec, options: ComputeOptions) -> BettiTable:
        raise NotImplementedError

    @classmethod
    def timed(
        cls, spec: PathFamilySpec, field: FieldSpec, options: ComputeOptions
    ) -> Tuple[BettiTable, float]:
        start = time.perf_counter()
        table = cls.compute(spec, field, options)
        return table, (time.perf_counter() - start) * 1000.0


class OracleMethod(Method):
    @classmethod
    def get_name(cls) -> str:
        return "oracle"

    @classmethod
    def compute(cls, spec: PathFamilySpec, field: FieldSpec, options: ComputeOptions) -> BettiTable:
        return betti_oracle(
            spec, field, vertices=options.vertices, workers=options.workers, max_bits=options.max_bits
        )


class ClosedMethod(Method):
    """Closed forms; they hold over every field, so ``field`` is ignored."""

    @classmethod
    def get_name(cls) -> str:
        return "closed"

    @classmethod
    def compute(cls, spec: PathFamilySpec, field: FieldSpec, options: ComputeOptions) -> BettiTable:
        if not spec.is_cycle:
            if options.vertices is not None:
                raise DomainError("--vertices applies to cycles only")
            return betti_closed_line(spec)
        if options.vertices is not None:
            return betti_closed_subcollection(spec, options.vertices)
        return betti_closed_cycle(spec)


METHODS: Dict[str, Type[Method]] = {m.get_name(): m for m in [OracleMethod, ClosedMethod]}

from dataclasses import dataclass, field as dataclass_field
from typing import Dict, List, Mapping, Optional, Any, Tuple
import json
import math
from importlib import resources

import jsonschema

CYCLE = "cycle"
LINE = "line"
KINDS = (CYCLE, LINE)

METHOD_ORACLE = "oracle"
METHOD_CLOSED_FORM = "closed_form"
METHOD_ELIGIBLE_COUNT = "eligible_count"
METHOD_TAGS = (METHOD_ORACLE, METHOD_CLOSED_FORM, METHOD_ELIGIBLE_COUNT)

DEFAULT_PRIME = 32003
DEFAULT_MAX_SUBSET_BITS = 22
MAX_SUBSET_BITS_ENV = "PATHBETTI_MAX_SUBSET_BITS"

EXIT_VERIFICATION = 1
EXIT_RESOURCE = 3

SCHEMA_RESOURCE = "betti-table.schema.json"

KIND_FIELD = "kind"
N_FIELD = "n"
T_FIELD = "t"
P_FIELD = "p"
D_FIELD = "d"
CHARACTERISTIC_FIELD = "characteristic"
METHOD_FIELD = "method"
ENTRIES_FIELD = "entries"
PD_FIELD = "pd"
REG_FIELD = "reg"
TIMING_FIELD = "timing_ms"
DIFF_FIELD = "diff"
VERTICES_FIELD = "vertices"


class DomainError(ValueError):
    pass


class StructuralError(Exception):
    pass


class ResourceLimitError(Exception):
    pass


class InvalidRecordError(Exception):
    pass


def is_prime(value: int) -> bool:
    if value < 2:
        return False
    for divisor in range(2, math.isqrt(value) + 1):
        if value % divisor == 0:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: characteristic 0 means the rationals."""
    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic != 0 and not is_prime(self.characteristic):
            raise DomainError(f"Characteristic {self.characteristic} is neither 0 nor prime")

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    def __str__(self) -> str:
        return "QQ" if self.is_rational else f"GF({self.characteristic})"


RATIONALS = FieldSpec(0)


@dataclass(frozen=True)
class PathFamilySpec:
    """Δ_t(C_n) or Δ_t(L_n), with n = (t+1)p + d and 0 <= d <= t."""
    kind: str
    n: int
    t: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"Kind must be one of {', '.join(KINDS)}, got {self.kind!r}")
        if self.t < 2:
            raise DomainError(f"Path length t={self.t} must be at least 2")
        if self.t > self.n:
            raise DomainError(f"Path length t={self.t} exceeds vertex count n={self.n}")
        if self.kind == CYCLE and self.n < 3:
            raise DomainError(f"A cycle needs at least 3 vertices, got n={self.n}")

    @property
    def p(self) -> int:
        return self.n // (self.t + 1)

    @property
    def d(self) -> int:
        return self.n % (self.t + 1)

    @property
    def is_cycle(self) -> bool:
        return self.kind == CYCLE

    @property
    def facet_count(self) -> int:
        if self.is_cycle:
            return 1 if self.t == self.n else self.n
        return self.n - self.t + 1

    def __str__(self) -> str:
        return f"{self.kind}(n={self.n}, t={self.t})"


@dataclass(frozen=True)
class RunShape:
    """Residues s_j = (t+1)p_j + d_j of a run sequence and their aggregates."""
    t: int
    residues: Tuple[Tuple[int, int], ...]
    P: int
    Q: int
    alpha: int
    beta: int

    @property
    def eligible(self) -> bool:
        return all(d in (1, 2) for _, d in self.residues)

    @property
    def homological_degree(self) -> int:
        return 2 * (self.P + self.Q) + 2 * self.beta + self.alpha

    @property
    def internal_degree(self) -> int:
        return (self.t + 1) * (self.P + self.Q) + self.t * (self.alpha + self.beta) + self.beta


@dataclass(frozen=True)
class RunSequence:
    lengths: Tuple[int, ...]

    def __post_init__(self):
        if not self.lengths:
            raise DomainError("A run sequence needs at least one run")
        if any(s < 1 for s in self.lengths):
            raise DomainError(f"Run lengths must be positive, got {list(self.lengths)}")

    @classmethod
    def of(cls, *lengths: int) -> "RunSequence":
        return cls(tuple(lengths))

    def shape(self, t: int) -> RunShape:
        residues = tuple(divmod(s, t + 1) for s in self.lengths)
        P = sum(p for p, d in residues if d == 1)
        Q = sum(p for p, d in residues if d == 2)
        alpha = sum(1 for _, d in residues if d == 1)
        beta = sum(1 for _, d in residues if d == 2)
        return RunShape(t=t, residues=residues, P=P, Q=Q, alpha=alpha, beta=beta)

    def __str__(self) -> str:
        return ",".join(str(s) for s in self.lengths)


@dataclass(frozen=True)
class RunPlacement:
    """Disjoint runs on the standard labeling, as (start facet, length) sorted by start."""
    runs: Tuple[Tuple[int, int], ...]

    @property
    def sequence(self) -> RunSequence:
        return RunSequence(tuple(sorted((s for _, s in self.runs), reverse=True)))

    @property
    def starts(self) -> Tuple[int, ...]:
        return tuple(a for a, _ in self.runs)


@dataclass(frozen=True)
class HomologySummary:
    """At most one nonzero reduced homology group, of the stated dimension."""
    nonzero_degree: Optional[int] = None
    dimension: int = 0

    def __post_init__(self):
        if self.nonzero_degree is None and self.dimension != 0:
            raise DomainError("A zero summary has dimension 0")
        if self.nonzero_degree is not None and self.dimension < 1:
            raise DomainError("A nonzero summary needs dimension >= 1")

    @property
    def is_zero(self) -> bool:
        return self.nonzero_degree is None

    def to_payload(self) -> Dict[str, Any]:
        return {"degree": self.nonzero_degree, "dimension": self.dimension}


ZERO_SUMMARY = HomologySummary()


@dataclass(frozen=True)
class HomologyVector:
    """dim H̃_i for i >= -1; zero degrees are not stored."""
    dims: Mapping[int, int] = dataclass_field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "dims", {i: v for i, v in sorted(self.dims.items()) if v})
        if any(i < -1 or v < 0 for i, v in self.dims.items()):
            raise DomainError(f"Invalid homology dimensions {dict(self.dims)}")

    def dim(self, degree: int) -> int:
        return self.dims.get(degree, 0)

    @property
    def is_zero(self) -> bool:
        return not self.dims

    def euler_characteristic(self) -> int:
        return sum(v if i % 2 == 0 else -v for i, v in self.dims.items())

    def summary(self) -> Optional[HomologySummary]:
        """The vector as a summary, or None when it has several nonzero degrees."""
        if not self.dims:
            return ZERO_SUMMARY
        if len(self.dims) > 1:
            return None
        (degree, value), = self.dims.items()
        return HomologySummary(degree, value)

    def matches(self, summary: HomologySummary) -> bool:
        return self.summary() == summary

    def to_payload(self) -> Dict[str, int]:
        return {str(i): v for i, v in self.dims.items()}


@dataclass
class BettiTable:
    """Sparse β_{i,j} of R/I with the method that produced each entry; β_{0,0} is implicit."""
    entries: Dict[Tuple[int, int], int] = dataclass_field(default_factory=dict)
    methods: Dict[Tuple[int, int], str] = dataclass_field(default_factory=dict)

    def add(self, i: int, j: int, value: int, method: str):
        if method not in METHOD_TAGS:
            raise DomainError(f"Unknown method tag {method!r}")
        if value < 0:
            raise DomainError(f"Negative Betti number {value} at ({i}, {j})")
        if value == 0:
            return
        if i < 1:
            raise DomainError(f"Only entries with i >= 1 are stored, got ({i}, {j})")
        key = (i, j)
        self.entries[key] = self.entries.get(key, 0) + value
        self.methods[key] = method

    def get(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    def merge(self, other: "BettiTable") -> "BettiTable":
        merged = BettiTable(dict(self.entries), dict(self.methods))
        for (i, j), value in other.entries.items():
            merged.add(i, j, value, other.methods[(i, j)])
        return merged

    def sorted_entries(self) -> List[Tuple[int, int, int, str]]:
        keys = sorted(self.entries, key=lambda key: (key[1], key[0]))
        return [(i, j, self.entries[(i, j)], self.methods[(i, j)]) for i, j in keys]

    def same_entries(self, other: "BettiTable") -> bool:
        return self.entries == other.entries

    def diff(self, other: "BettiTable") -> List[Tuple[int, int, int, int]]:
        keys = set(self.entries) | set(other.entries)
        return [
            (i, j, self.get(i, j), other.get(i, j))
            for i, j in sorted(keys, key=lambda key: (key[1], key[0]))
            if self.get(i, j) != other.get(i, j)
        ]

    @property
    def projective_dimension(self) -> int:
        return max((i for i, _ in self.entries), default=0)

    @property
    def regularity(self) -> int:
        return max((j - i for i, j in self.entries), default=0)

    def __len__(self) -> int:
        return len(self.entries)


def load_schema() -> Any:
    return json.loads(resources.read_text(__package__, SCHEMA_RESOURCE))


@dataclass(frozen=True)
class OutputRecord:
    kind: str
    n: int
    t: int
    p: int
    d: int
    characteristic: int
    method: str
    entries: Tuple[Tuple[int, int, int, str], ...]
    pd: int
    reg: int
    timing_ms: float = 0.0
    diff: Optional[Tuple[Tuple[int, int, int, int], ...]] = None
    vertices: Optional[Tuple[int, ...]] = None

    @classmethod
    def from_table(
        cls,
        spec: PathFamilySpec,
        field: FieldSpec,
        method: str,
        table: BettiTable,
        *,
        timing_ms: float = 0.0,
        diff: Optional[List[Tuple[int, int, int, int]]] = None,
        vertices: Optional[Tuple[int, ...]] = None,
    ) -> "OutputRecord":
        return cls(
            kind=spec.kind,
            n=spec.n,
            t=spec.t,
            p=spec.p,
            d=spec.d,
            characteristic=field.characteristic,
            method=method,
            entries=tuple(table.sorted_entries()),
            pd=table.projective_dimension,
            reg=table.regularity,
            timing_ms=timing_ms,
            diff=None if diff is None else tuple(diff),
            vertices=vertices,
        )

    def same_result(self, other: "OutputRecord") -> bool:
        return self.to_payload(with_timing=False) == other.to_payload(with_timing=False)

    def to_payload(self, *, with_timing: bool = True) -> Dict[str, Any]:
        payload = {
            KIND_FIELD: self.kind,
            N_FIELD: self.n,
            T_FIELD: self.t,
            P_FIELD: self.p,
            D_FIELD: self.d,
            CHARACTERISTIC_FIELD: self.characteristic,
            METHOD_FIELD: self.method,
            ENTRIES_FIELD: [
                {"i": i, "j": j, "beta": beta, "method": method}
                for i, j, beta, method in self.entries
            ],
            PD_FIELD: self.pd,
            REG_FIELD: self.reg,
        }
        if with_timing:
            payload[TIMING_FIELD] = self.timing_ms
        if self.diff is not None:
            payload[DIFF_FIELD] = [
                {"i": i, "j": j, "oracle": oracle, "closed": closed}
                for i, j, oracle, closed in self.diff
            ]
        if self.vertices is not None:
            payload[VERTICES_FIELD] = list(self.vertices)
        return payload

    @classmethod
    def load_from_payload(cls, payload: Mapping[str, Any]) -> "OutputRecord":
        try:
            jsonschema.validate(payload, load_schema())
        except jsonschema.ValidationError as e:
            raise InvalidRecordError(e.message)
        diff = payload.get(DIFF_FIELD)
        vertices = payload.get(VERTICES_FIELD)
        return cls(
            kind=payload[KIND_FIELD],
            n=payload[N_FIELD],
            t=payload[T_FIELD],
            p=payload[P_FIELD],
            d=payload[D_FIELD],
            characteristic=payload[CHARACTERISTIC_FIELD],
            method=payload[METHOD_FIELD],
            entries=tuple(
                (e["i"], e["j"], e["beta"], e["method"]) for e in payload[ENTRIES_FIELD]
            ),
            pd=payload[PD_FIELD],
            reg=payload[REG_FIELD],
            timing_ms=payload.get(TIMING_FIELD, 0.0),
            diff=None if diff is None else tuple(
                (e["i"], e["j"], e["oracle"], e["closed"]) for e in diff
            ),
            vertices=None if vertices is None else tuple(vertices),
        )

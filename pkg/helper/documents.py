"""
JSON document schemas

Pydantic models for prismatoid and polygon input documents and for the
`verify` report. Parsing problems become DocumentError (exit 2); documents
that parse but describe invalid geometry raise the geometric error itself.
"""

from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .band import NestedPrismatoid
from .errors import DocumentError
from .geometry import ConvexPolygon
from .utils import read_json_with_size_limit

PointPair = Tuple[float, float]


class _Document(BaseModel):
    model_config = ConfigDict(extra="forbid", allow_inf_nan=False, populate_by_name=True)


class PolygonDocument(_Document):
    """{"polygon": [[x, y], ...]}"""

    polygon: List[PointPair] = Field(min_length=3)

    def to_polygon(self) -> ConvexPolygon:
        return ConvexPolygon(tuple(self.polygon))


class PrismatoidDocument(_Document):
    """{"B": [[x, y], ...], "A": [[x, y], ...], "z": h, "metadata": {...}}"""

    B: List[PointPair] = Field(min_length=3)
    A: List[PointPair] = Field(min_length=3)
    z: float = Field(ge=0.0)
    metadata: Optional[Dict[str, Any]] = None

    def to_prismatoid(self) -> NestedPrismatoid:
        return NestedPrismatoid(ConvexPolygon(tuple(self.B)), ConvexPolygon(tuple(self.A)), self.z)

    @classmethod
    def from_prismatoid(cls, p: NestedPrismatoid, metadata: Optional[Dict[str, Any]] = None) -> "PrismatoidDocument":
        return cls(B=list(p.B.vertices), A=list(p.A.vertices), z=p.z, metadata=metadata)

    def to_data(self) -> Dict[str, Any]:
        data = {"B": [list(v) for v in self.B], "A": [list(v) for v in self.A], "z": self.z}
        if self.metadata is not None:
            data["metadata"] = self.metadata
        return data


def _summarize(err: ValidationError) -> str:
    parts = []
    for item in err.errors():
        where = ".".join(str(loc) for loc in item["loc"]) or "document"
        parts.append(f"{where}: {item['msg']}")
    return "; ".join(parts)


def _read(path: Union[str, Path]) -> Any:
    try:
        return read_json_with_size_limit(Path(path) if str(path) != "-" else "-")
    except FileNotFoundError as e:
        raise DocumentError(str(e)) from e
    except ValueError as e:
        raise DocumentError(f"Cannot parse {path}: {e}") from e


def parse_prismatoid(data: Any) -> PrismatoidDocument:
    """Validate raw JSON data as a prismatoid document

    Raises:
        DocumentError: If the data does not match the schema
    """
    try:
        return PrismatoidDocument.model_validate(data)
    except ValidationError as e:
        raise DocumentError(f"Invalid prismatoid document: {_summarize(e)}") from e


def parse_polygon(data: Any) -> ConvexPolygon:
    """Polygon from a polygon document, or the top A of a prismatoid document

    Raises:
        DocumentError: If the data matches neither schema
    """
    if isinstance(data, dict) and "polygon" in data:
        try:
            return PolygonDocument.model_validate(data).to_polygon()
        except ValidationError as e:
            raise DocumentError(f"Invalid polygon document: {_summarize(e)}") from e
    return ConvexPolygon(tuple(parse_prismatoid(data).A))


def load_prismatoid(path: Union[str, Path]) -> Tuple[NestedPrismatoid, PrismatoidDocument]:
    doc = parse_prismatoid(_read(path))
    return doc.to_prismatoid(), doc


def load_polygon(path: Union[str, Path]) -> ConvexPolygon:
    return parse_polygon(_read(path))


# =============================================================================
# Verification report
# =============================================================================


class FailureRecord(BaseModel):
    seed: Optional[int] = None
    check: Optional[str] = None
    detail: str


class SuiteResult(BaseModel):
    name: str
    status: str  # passed, failed, skipped, missing
    trials: int = 0
    applicable: int = 0
    failures: List[FailureRecord] = Field(default_factory=list)
    worst_margin: Optional[float] = None
    elapsed: float = 0.0
    measurements: Dict[str, Any] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status in ("passed", "skipped")


class VerificationReport(BaseModel):
    seed: int
    trials: int
    tolerance: float
    suites: List[SuiteResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    def failures(self) -> List[Tuple[str, FailureRecord]]:
        return [(s.name, f) for s in self.suites for f in s.failures]

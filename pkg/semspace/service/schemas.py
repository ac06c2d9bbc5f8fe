"""Request and response bodies of the HTTP protocol."""

from typing import Dict, List, Literal

from pydantic import BaseModel, ConfigDict

from ..space import MetaModel


class _Body(BaseModel):
    model_config = ConfigDict(extra="forbid", protected_namespaces=())


class OntologyRequest(_Body):
    model: MetaModel
    format: Literal["pairs", "ntriples"] = "pairs"
    data: str


class OntologyResponse(BaseModel):
    concepts: int


class WriteRequest(_Body):
    model: MetaModel
    concept: str
    payload_b64: str
    lease_ms: int


class WriteResponse(BaseModel):
    id: int
    granted_lease_ms: int
    expires_at_ms: int


class ReadRequest(_Body):
    model: MetaModel
    concept: str
    floor: float


class ReadByIdRequest(_Body):
    identifier: str


class TakeRequest(_Body):
    model: MetaModel
    concept: str


class ResultItem(BaseModel):
    id: int
    concept: str
    degree: float
    payload_b64: str
    identifier: str


class ResultsResponse(BaseModel):
    results: List[ResultItem]


class DegreeResponse(BaseModel):
    degree: float


class StatsResponse(BaseModel):
    live_entries: int
    entries_per_model: Dict[str, int]
    total_writes: int
    total_reads: int
    total_takes: int
    taken_total: int
    expired_total: int


class WireError(BaseModel):
    code: Literal["MALFORMED_REQUEST", "MODEL_NOT_LOADED", "UNKNOWN_CONCEPT",
                  "FLOOR_OUT_OF_RANGE", "INVALID_LEASE", "PAYLOAD_TOO_LARGE", "INTERNAL"]
    message: str

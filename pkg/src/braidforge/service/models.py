"""Pydantic request and response models for the verification service."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field


class CheckRecord(BaseModel):
    name: str
    status: str  # "pass" | "fail" | "documented-diff"
    detail: Optional[str] = None  # residual, witness or note
    anchor: Optional[str] = None  # reference-table tag this check audits

    @property
    def ok(self) -> bool:
        return self.status in ("pass", "documented-diff")


class RunReport(BaseModel):
    command: str
    timestamp: Optional[str] = None  # stamped only on request, for determinism
    checks: list[CheckRecord] = Field(default_factory=list)
    passed: bool = True
    payload: Optional[dict] = None


class YbeRequest(BaseModel):
    mode: str = "constant"  # "constant" | "baxterized"
    cases: Optional[list[str]] = None  # default: all eight
    samples: int = 100
    tol: float = 1e-9
    seed: int = 0
    bound: float = 2.0
    dump_matrix: bool = False


class DeriveRequest(BaseModel):
    case: str
    basis: str = "tilde"  # "tilde" | "original"
    diff_reference: bool = False


class ClassifyRequest(BaseModel):
    pass


class DiffReferenceRequest(BaseModel):
    case: Optional[str] = None  # None = all eight


class BialgebraRequest(BaseModel):
    case: Optional[str] = None  # None = all eight
    basis: str = "original"


class CoproductsRequest(BaseModel):
    basis: str = "hat"
    diff_reference: bool = False


class DualRequest(BaseModel):
    max_degree: int = 4
    identity: Optional[str] = None  # e.g. "[K,P]-2P"; None runs the full suite


class BasisRequest(BaseModel):
    degree: int = 3
    diff_reference: bool = False

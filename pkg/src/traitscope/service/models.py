"""Pydantic request/response models for the debugger service."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel


class SpanModel(BaseModel):
    file: str
    line_start: int
    line_end: int


class GoalSummary(BaseModel):
    label: str
    result: str


class ImplHead(BaseModel):
    id: int
    head_short: str
    head_qualified: str
    span: SpanModel
    trait: str


class ImplList(BaseModel):
    trait: str
    impls: list[ImplHead]


class SourceReply(BaseModel):
    file: str
    line: int
    text: str


class SymbolReply(BaseModel):
    id: int
    path: str
    provenance: str
    span: Optional[SpanModel]

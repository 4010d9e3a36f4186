"""
Report - JSON documents emitted by the ``vk`` commands.
"""

import json
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from vk.exceptions import InputError

SCHEMA_VERSION = 1


class Certificate(BaseModel):
    """Model for a re-checkable certificate; the payload depends on ``kind``."""

    model_config = ConfigDict(extra="allow")

    kind: str

    def payload(self) -> Dict[str, Any]:
        return self.model_dump()


class Report(BaseModel):
    """Model for command reports."""

    command: str
    seed: Optional[int] = None
    inputs: Dict[str, Any] = Field(default_factory=dict)
    verdicts: Dict[str, Any] = Field(default_factory=dict)
    certificates: List[Certificate] = Field(default_factory=list)
    versions: Dict[str, Any] = Field(default_factory=lambda: {"schema": SCHEMA_VERSION})
    timing: Optional[Dict[str, float]] = None

    def add_certificate(self, data: Dict[str, Any], kind: Optional[str] = None) -> Certificate:
        """Append a certificate; ``kind`` overrides the one stored in ``data``."""
        fields = dict(data)
        if kind is not None:
            fields["kind"] = kind
        if "kind" not in fields:
            raise InputError("Certificates need a kind")
        certificate = Certificate(**fields)
        self.certificates.append(certificate)
        return certificate

    def to_dict(self) -> Dict[str, Any]:
        data = self.model_dump()
        if data.get("timing") is None:
            data.pop("timing", None)
        return data

    def to_json(self) -> str:
        """Stable serialisation: sorted keys, so equal reports are byte-identical."""
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        try:
            return cls.model_validate_json(text)
        except ValidationError as e:
            raise InputError(f"Malformed report: {e}") from e

"""Report envelopes and deterministic JSON rendering.

Payloads are byte-deterministic for identical inputs: keys are sorted,
rationals render as "p/q" strings (never floats), and the only varying
field is the timing, which sits outside the payload.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Any

SCHEMA = "srr-report/1"
TOOL_VERSION = "0.1.0"


def jsonable(value: Any) -> Any:
    """Recursively convert payload values; Fractions become 'p/q' strings."""
    if isinstance(value, Fraction):
        from .ratio import format_rational
        return format_rational(value)
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        raise TypeError("floats are banned from reports; use Fraction")
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        from .ratio import format_rational
        return format_rational(value)
    raise TypeError(f"cannot serialize {type(value).__name__} into a report")


def make_envelope(command: str, input_bytes: bytes, payload: Any,
                  timing_ms: int | None = None) -> dict:
    digest = hashlib.sha256(input_bytes).hexdigest()
    return {
        "schema": SCHEMA,
        "version": TOOL_VERSION,
        "command": command,
        "input_digest": f"sha256:{digest}",
        "result": jsonable(payload),
        "timing_ms": timing_ms,
    }


def render(envelope: dict) -> str:
    return json.dumps(envelope, sort_keys=True, indent=2) + "\n"


def payload_bytes(envelope: dict) -> bytes:
    """The deterministic part of an envelope (everything except timing)."""
    trimmed = {k: v for k, v in envelope.items() if k != "timing_ms"}
    return json.dumps(trimmed, sort_keys=True).encode()

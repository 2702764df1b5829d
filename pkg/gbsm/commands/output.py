import json
import sys
from pathlib import Path
from typing import Any, Optional

from gbsm.core.numeric import round_sig


def rounded(payload: Any) -> Any:
    """Round every float in a JSON-ready structure to the configured significant digits."""
    if isinstance(payload, float):
        return round_sig(payload)
    if isinstance(payload, dict):
        return {key: rounded(value) for key, value in payload.items()}
    if isinstance(payload, (list, tuple)):
        return [rounded(value) for value in payload]
    return payload


def emit(text: str, out: Optional[str] = None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def emit_json(payload: Any, out: Optional[str] = None) -> None:
    emit(json.dumps(rounded(payload), indent=2) + "\n", out)

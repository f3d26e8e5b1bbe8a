"""Published reference values and comparisons against them."""

import json
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional

from ..core.exceptions import ReferenceDataError
from ..core.models import Channel, Comparison

logger = logging.getLogger(__name__)

REFERENCE_ENV_VAR = "HYPERADIA_REF_DATA"
PACKAGED_REFERENCE = Path(__file__).resolve().parent.parent / "data" / "reference.json"


@dataclass(frozen=True)
class ReferenceEntry:
    """One printed number with its provenance tag."""
    key: str
    printed: str
    provenance: str
    channel: Optional[Channel] = None
    n_max: Optional[int] = None

    @property
    def value(self) -> float:
        return float(self.printed)

    @property
    def decimals(self) -> int:
        """Digits after the decimal point as printed."""
        _, _, fraction = self.printed.partition(".")
        return len(fraction)

    def last_digit_tolerance(self, units: float = 5.0) -> float:
        """``units`` of the last printed digit."""
        return units * 10.0 ** (-self.decimals)


class ReferenceData:
    """Keyed collection of reference entries."""

    def __init__(self, entries: List[ReferenceEntry], source: str):
        self.entries: Dict[str, ReferenceEntry] = {e.key: e for e in entries}
        self.source = source

    def __contains__(self, key: str) -> bool:
        return key in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, key: str) -> ReferenceEntry:
        try:
            return self.entries[key]
        except KeyError:
            raise ReferenceDataError(f"no reference value for {key!r}", {"source": self.source})

    def with_prefix(self, prefix: str) -> List[ReferenceEntry]:
        """Entries whose key starts with ``prefix``, in file order."""
        return [e for k, e in self.entries.items() if k.startswith(prefix)]


def _parse_entry(raw: Dict[str, Any]) -> ReferenceEntry:
    try:
        printed = str(raw["printed"])
        float(printed)
        channel = Channel.from_string(raw["channel"]) if raw.get("channel") else None
        return ReferenceEntry(
            key=raw["key"],
            printed=printed,
            provenance=raw["provenance"],
            channel=channel,
            n_max=raw.get("n_max"),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise ReferenceDataError(f"malformed reference entry {raw!r}: {e}") from e


def load_reference(path: Optional[str] = None) -> ReferenceData:
    """Load reference values.

    Args:
        path: Explicit JSON file; otherwise ``HYPERADIA_REF_DATA``, then the packaged file

    Returns:
        ReferenceData keyed by entry name
    """
    source = Path(path or os.environ.get(REFERENCE_ENV_VAR) or PACKAGED_REFERENCE)
    if not source.exists():
        raise ReferenceDataError(f"reference data not found: {source}")
    try:
        with open(source, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ReferenceDataError(f"reference data is not valid JSON: {source}: {e}") from e
    if not isinstance(data, dict) or not isinstance(data.get("entries"), list):
        raise ReferenceDataError(f"reference data needs an 'entries' list: {source}")

    entries = [_parse_entry(raw) for raw in data["entries"]]
    logger.debug(f"loaded {len(entries)} reference values from {source}")
    return ReferenceData(entries, str(source))


def compare(value: float, entry: ReferenceEntry, tolerance: Optional[float] = None) -> Comparison:
    """Comparison row of a computed value against one reference entry.

    The default tolerance is 5 units of the last printed digit.
    """
    return Comparison(
        key=entry.key,
        computed=float(value),
        reference=entry.value,
        tolerance=entry.last_digit_tolerance() if tolerance is None else tolerance,
        provenance=entry.provenance,
    )

"""
io — divisor / targets loading, report writing

Input files are parsed with line information and validated against the JSON
Schemas in bergman_divisors/schema. Reports are written atomically with
sorted keys so reruns are byte-identical.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from jsonschema import Draft202012Validator

from .divisor import Divisor, PSpace, RadiusRule, RuleKind, generate_lattice, parse_schedule
from .errors import BergmanError, DivisorFormatError
from .model import SampleIndex

SCHEMA_DIR = Path(__file__).resolve().parent.parent / "schema"
DIVISOR_SCHEMA = "divisor_schema_v1.json"
TARGETS_SCHEMA = "targets_schema_v1.json"
FIXTURE_SCHEMA = "lattice_fixture_schema_v1.json"


def _sha256_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


@lru_cache(maxsize=None)
def _validator(name: str) -> Draft202012Validator:
    schema = json.loads((SCHEMA_DIR / name).read_text(encoding="utf-8"))
    Draft202012Validator.check_schema(schema)
    return Draft202012Validator(schema)


def _load_json(path: Path) -> Tuple[Any, bytes]:
    """Parse a JSON file; syntax errors carry line and column."""
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise DivisorFormatError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(raw.decode("utf-8")), raw
    except UnicodeDecodeError as exc:
        raise DivisorFormatError(f"{path} is not UTF-8") from exc
    except json.JSONDecodeError as exc:
        raise DivisorFormatError(f"{path}: {exc.msg}", line=exc.lineno, column=exc.colno) from exc


def _validate(data: Any, schema_name: str, path: Path) -> None:
    errors = sorted(_validator(schema_name).iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        first = errors[0]
        where = "$" + "".join(f"[{p!r}]" if isinstance(p, int) else f".{p}" for p in first.absolute_path)
        raise DivisorFormatError(f"{path}: schema violation at {where}: {first.message}")


def load_divisor(path: Path) -> Tuple[Divisor, str]:
    """(divisor, sha256 of the file)."""
    data, raw = _load_json(path)
    _validate(data, DIVISOR_SCHEMA, path)
    try:
        divisor = Divisor.from_dict(data)
    except BergmanError as exc:
        raise DivisorFormatError(f"{path}: {exc}") from exc
    return divisor, _sha256_bytes(raw)


def parse_target_key(key: str) -> SampleIndex:
    parts = key.split(",")
    if len(parts) != 3:
        raise DivisorFormatError(f"target key must be 're,im,j', got {key!r}")
    try:
        return SampleIndex(complex(float(parts[0]), float(parts[1])), int(parts[2]))
    except (ValueError, BergmanError) as exc:
        raise DivisorFormatError(f"bad target key {key!r}: {exc}") from exc


def load_targets(path: Path) -> Tuple[Dict[SampleIndex, complex], str]:
    """Targets file: {"re,im,j": [re, im], ...}."""
    data, raw = _load_json(path)
    _validate(data, TARGETS_SCHEMA, path)
    targets = {parse_target_key(k): complex(v[0], v[1]) for k, v in data.items()}
    return targets, _sha256_bytes(raw)


def load_fixture(path: Path) -> Tuple[Dict[str, Any], str]:
    data, raw = _load_json(path)
    _validate(data, FIXTURE_SCHEMA, path)
    return data, _sha256_bytes(raw)


def divisor_from_fixture(data: Mapping[str, Any], r_end: Optional[float] = None) -> Divisor:
    """Regenerate the lattice a fixture describes; r_end caps the outer annulus radius."""
    r0, r1 = (float(v) for v in data["annulus"])
    if r_end is not None:
        r1 = min(r1, float(r_end))
    rule = data.get("rule")
    return generate_lattice(
        float(data["alpha"]),
        PSpace(str(data["p"])),
        float(data["density"]),
        parse_schedule(data["schedule"]),
        (r0, r1),
        RadiusRule(RuleKind(rule["kind"]), rule["constant"]) if rule else None,
    )


def _atomic_write_text(path: Path, content: str) -> None:
    """Write via a PID-suffixed temp file and os.replace."""
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + f".tmp.{os.getpid()}")
    tmp.write_text(content, encoding="utf-8")
    os.replace(tmp, path)


def dumps_json(data: Any) -> str:
    return json.dumps(data, ensure_ascii=False, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _save_json(path: Path, data: Mapping[str, Any]) -> None:
    _atomic_write_text(path, dumps_json(data))


def _save_csv(path: Path, schema: str, version: str, fieldnames: Sequence[str], rows: Iterable[Mapping[str, Any]]) -> None:
    """CSV with a `# schema: <name> v<version>` first line; rows are written in the order given."""
    buf = io.StringIO()
    buf.write(f"# schema: {schema} v{version}\n")
    writer = csv.DictWriter(buf, fieldnames=list(fieldnames), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    _atomic_write_text(path, buf.getvalue())


def read_csv(path: Path) -> Tuple[str, List[Dict[str, str]]]:
    """(schema comment, rows) of a report written by _save_csv."""
    lines = path.read_text(encoding="utf-8").splitlines()
    header = lines[0] if lines and lines[0].startswith("#") else ""
    body = lines[1:] if header else lines
    return header, list(csv.DictReader(body))

"""Shared helpers: derived seeds, stable formatting, config files."""

from __future__ import annotations

import csv
import hashlib
import json

__all__ = [
    "derive_seed",
    "fmt",
    "config_digest",
    "parse_config_file",
    "write_csv",
    "write_json",
]


def derive_seed(root: int, *parts) -> int:
    """Derive a child seed from a root seed and a label path.

    The child depends only on the root and its own labels, so results
    keyed by one label are unaffected when sibling labels come or go.
    """
    tag = ":".join([str(root)] + [str(p) for p in parts])
    digest = hashlib.sha256(tag.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def fmt(value) -> str:
    """Render a value for byte-stable text output.

    Floats use 12 significant digits, None becomes the empty string.
    """
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, float):
        if value != value:
            return "nan"
        return format(value, ".12g")
    return str(value)


def config_digest(settings: dict) -> str:
    """Short hex digest of a flat settings mapping, order-insensitive."""
    canon = "\n".join(f"{k}={settings[k]}" for k in sorted(settings))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()[:12]


def parse_config_file(path) -> dict:
    """Parse a flat ``key = value`` file; blank lines and # comments ignored."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, _, value = line.partition("=")
            out[key.strip()] = value.strip()
    return out


def write_csv(path, header, rows, meta=None):
    """Write a CSV file with an optional leading ``# ...`` metadata line.

    All values pass through :func:`fmt` so floats are stable across runs.
    """
    with open(path, "w", encoding="utf-8", newline="") as fh:
        if meta:
            fh.write(f"# {meta}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) for v in row])


def write_json(path, payload):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, ensure_ascii=False)
        fh.write("\n")

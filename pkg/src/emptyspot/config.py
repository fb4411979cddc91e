"""Flat ``key = value`` configuration with flag > file > default precedence."""

from __future__ import annotations

from dataclasses import fields
from importlib import resources
from pathlib import Path

from .errors import ParseError
from .evaluation import ExperimentConfig
from .formats import load_manifest

BUNDLED = ("paper_homogeneous.cfg",)


def _int_or_auto(text):
    if text is None or str(text).strip().lower() in ("auto", "none", ""):
        return None
    return int(text)


def _optional_int(text):
    if text is None or str(text).strip().lower() in ("none", ""):
        return None
    return int(text)


def _labels(text):
    if isinstance(text, (list, tuple)):
        return tuple(text)
    return tuple(t.strip() for t in str(text).split(",") if t.strip())


CONVERTERS = {
    "model": str,
    "n": int,
    "m": int,
    "d_min": int,
    "d_max": int,
    "lam": float,
    "ring_degree": int,
    "rewire_prob": float,
    "seed": int,
    "graph_seed": _optional_int,
    "radius": _int_or_auto,
    "coverage_target": float,
    "k_hidden": int,
    "clusters": int,
    "restarts": int,
    "max_iter": int,
    "centers": _labels,
    "repetitions": int,
    "score_variant": str,
}
assert set(CONVERTERS) == {f.name for f in fields(ExperimentConfig)}


def bundled_path(name: str):
    return resources.files("emptyspot") / "data" / name


def _convert(key, raw, path, line=None):
    if key not in CONVERTERS:
        raise ParseError(f"unknown configuration key {key!r}", path, line)
    try:
        return CONVERTERS[key](raw)
    except (TypeError, ValueError):
        raise ParseError(f"bad value {raw!r} for {key}", path, line) from None


def parse_config_text(text: str, path=None) -> dict:
    values = {}
    for no, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, raw = line.partition("=")
        if not sep:
            raise ParseError(f"expected 'key = value', got {line!r}", path, no)
        key = key.strip()
        values[key] = _convert(key, raw.strip(), path, no)
    return values


def read_config(path) -> tuple[dict, dict]:
    """Values and per-key sources from a ``.cfg`` file or a run manifest.

    A manifest carries the sources recorded by the original run, so a
    rerun from it reproduces the manifest itself.
    """
    p = Path(path)
    if not p.exists() and p.name in BUNDLED and str(p) == p.name:
        text = bundled_path(p.name).read_text(encoding="utf-8")
        values = parse_config_text(text, path)
        return values, {k: "file" for k in values}
    if p.suffix == ".json":
        manifest = load_manifest(p)
        try:
            entries = manifest["config"]
        except (KeyError, TypeError):
            raise ParseError("manifest has no 'config' section", path) from None
        values, sources = {}, {}
        for key, entry in entries.items():
            values[key] = _convert(key, entry["value"], path)
            sources[key] = entry["source"]
        return values, sources
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read config ({e.strerror})", path) from None
    values = parse_config_text(text, path)
    return values, {k: "file" for k in values}


def resolve(flags: dict, file_values: dict | None = None, file_sources: dict | None = None):
    """Merge flags over file values over defaults.

    Returns the config and a ``{key: source}`` map with sources
    ``flag``, ``file`` or ``default``.
    """
    file_values = file_values or {}
    file_sources = file_sources or {k: "file" for k in file_values}
    values, sources = {}, {}
    for f in fields(ExperimentConfig):
        key = f.name
        if flags.get(key) is not None:
            values[key] = flags[key]
            sources[key] = "flag"
        elif key in file_values:
            values[key] = file_values[key]
            sources[key] = file_sources.get(key, "file")
        else:
            sources[key] = "default"
    return ExperimentConfig(**values), sources

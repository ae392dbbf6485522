"""Reading and writing category/functor files and the bundled corpus."""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .errors import FormatError
from .fincat import FinCat, Functor, make_functor, validate_category


def read_json(path) -> object:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"{path}: cannot read file ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def load_category(path) -> FinCat:
    return validate_category(read_json(path))


def load_functor(path) -> Functor:
    """Load a functor file; ``source``/``target`` paths are relative to it."""
    path = Path(path)
    raw = read_json(path)
    if not isinstance(raw, dict) or not {"source", "target"} <= set(raw):
        raise FormatError(f"{path}: functor file needs 'source' and 'target'")
    objects = raw.get("objects", {})
    arrows = raw.get("arrows", {})
    if not isinstance(objects, dict) or not isinstance(arrows, dict):
        raise FormatError(f"{path}: 'objects' and 'arrows' must be objects")
    source = load_category(path.parent / raw["source"])
    target = load_category(path.parent / raw["target"])
    return make_functor(source, target, objects, arrows)


def dump_category(c: FinCat) -> str:
    return json.dumps(c.to_dict(), indent=2, ensure_ascii=False) + "\n"


def corpus_dir():
    return resources.files("skelcat") / "corpus"


def corpus_names() -> list[str]:
    return sorted(p.name[:-5] for p in corpus_dir().iterdir() if p.name.endswith(".json"))


def corpus_path(name: str):
    return corpus_dir() / f"{name}.json"


def load_corpus() -> dict[str, FinCat]:
    """All bundled categories, keyed by name, in sorted order."""
    out = {}
    for name in corpus_names():
        out[name] = validate_category(json.loads(corpus_path(name).read_text(encoding="utf-8")))
    return out


def load_directory(path) -> dict[str, FinCat]:
    return {p.stem: load_category(p) for p in sorted(Path(path).glob("*.json"))}

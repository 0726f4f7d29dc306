"""Built-in presentations shipped with the package."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .dsl import PresentationSource, parse
from .rewrite import Presentation

BUILTIN_ORDER = (
    "wzz-3-5a",
    "env-abelian-3",
    "env-nonabelian-2",
    "env-heisenberg",
    "central-acc",
    "borel-acc",
    "two-acc",
)
SAMPLES = ("jacobi-violating",)


def _read(folder: str, name: str) -> PresentationSource:
    path = resources.files("hopfgk") / "data" / folder / f"{name}.hopf"
    return PresentationSource(path.read_text(encoding="utf-8"), f"builtin:{name}")


def builtins() -> list[PresentationSource]:
    return [_read("builtins", name) for name in BUILTIN_ORDER]


def samples() -> list[PresentationSource]:
    """Deliberately defective inputs used for negative checks."""
    return [_read("samples", name) for name in SAMPLES]


def load(name_or_path: str) -> Presentation:
    """Parse a built-in or sample by name, otherwise a DSL file path."""
    if name_or_path in BUILTIN_ORDER:
        return parse(_read("builtins", name_or_path))
    if name_or_path in SAMPLES:
        return parse(_read("samples", name_or_path))
    path = Path(name_or_path)
    return parse(PresentationSource(path.read_text(encoding="utf-8"), str(path)))

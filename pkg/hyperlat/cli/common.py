"""Helpers shared by the sub-commands: lattice arguments, budgets and output."""

import argparse
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, TextIO

from pydantic import BaseModel
from pydantic import ValidationError as PydanticValidationError

from hyperlat.core.config import settings
from hyperlat.core.exceptions import UsageError, ValidationError
from hyperlat.core.health import run_metadata
from hyperlat.core.utils import dump_json, load_json, parse_rational
from hyperlat.models.lattice import LatticeRecord
from hyperlat.services.corpus import CorpusStore
from hyperlat.services.lattice import (
    Lattice,
    even_unimodular_lorentzian,
    hyperbolic_plane,
    integer_lattice,
    odd_lorentzian,
    root_lattice,
)

# settings attribute <- command line destination
BUDGET_FLAGS = {
    "enumeration_budget": "enumeration_budget",
    "isometry_budget": "isometry_budget",
    "vinberg_max_roots": "vinberg_max_roots",
    "workers": "workers",
    "random_seed": "seed",
}

_EVEN_LORENTZ = re.compile(r"^ii_?(\d+),1$")
_ODD_LORENTZ = re.compile(r"^i_?(\d+),1$")
_INTEGER = re.compile(r"^i(\d+)$")
ALIASES = {"e8cubed": "e8^3", "e8squared": "e8^2"}


def read_lattice_file(path: Path) -> Lattice:
    try:
        record = LatticeRecord.model_validate(load_json(path))
    except PydanticValidationError as e:
        raise ValidationError(detail=f"{path} is not a lattice file", errors=e.errors()) from e
    return Lattice.from_record(record)


def resolve_lattice(source: str, store: Optional[CorpusStore] = None) -> Lattice:
    """A lattice file, a corpus entry, ``leech``, ``U``, ``I<n>``, ``II_<n>,1``, ``I_<n>,1`` or a root system."""
    path = Path(source)
    if path.suffix == ".json" or path.exists():
        return read_lattice_file(path)
    store = store or CorpusStore()
    if source in store:
        return store.lattice(source)
    key = source.strip().lower()
    if key == "leech":
        from hyperlat.services.leech import leech_lattice

        return leech_lattice(store)
    if key == "u":
        return hyperbolic_plane()
    for pattern, build in ((_EVEN_LORENTZ, even_unimodular_lorentzian), (_ODD_LORENTZ, odd_lorentzian), (_INTEGER, integer_lattice)):
        m = pattern.match(key)
        if m:
            return build(int(m.group(1)))
    return root_lattice(ALIASES.get(key, source))


def parse_vector(text: Optional[str]) -> Optional[List[Fraction]]:
    """``"1,0,-1/2"`` -> exact coordinates."""
    if text is None:
        return None
    parts = [p for p in re.split(r"[,\s]+", text.strip()) if p]
    if not parts:
        raise UsageError(detail="empty vector")
    return [parse_rational(p) for p in parts]


def parse_int_vector(text: str) -> List[int]:
    coords = parse_vector(text) or []
    if any(c.denominator != 1 for c in coords):
        raise UsageError(detail=f"expected integer coordinates, got {text!r}")
    return [int(c) for c in coords]


def add_budget_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("budgets")
    group.add_argument("--enumeration-budget", type=int, default=None, help="vectors per enumeration")
    group.add_argument("--isometry-budget", type=int, default=None, help="backtracking nodes per isometry test")
    group.add_argument("--vinberg-max-roots", type=int, default=None)
    group.add_argument("--workers", type=int, default=None, help="process pool size")
    group.add_argument("--seed", type=int, default=None, help="random seed for sampling")


def apply_budgets(args: argparse.Namespace) -> Dict[str, Any]:
    """Copy budget flags onto the settings; returns the overrides."""
    overrides = {}
    for key, dest in BUDGET_FLAGS.items():
        value = getattr(args, dest, None)
        if value is None:
            continue
        if key != "random_seed" and value < 1:
            raise UsageError(detail=f"--{dest.replace('_', '-')} must be positive")
        setattr(settings, key, value)
        overrides[key] = value
    return overrides


def metadata(args: argparse.Namespace, **extra: Any) -> Dict[str, Any]:
    meta = run_metadata(include_system=getattr(args, "system_info", False))
    meta["command"] = getattr(args, "command", None)
    meta.update(extra)
    return meta


def emit(document: Any, path: Optional[str] = None, stream: Optional[TextIO] = None) -> str:
    """Write the JSON document to ``path``, or to stdout when no path is given."""
    if isinstance(document, BaseModel):
        document = document.model_dump(mode="python")
    text = dump_json(document, path)
    if path is None:
        (stream or sys.stdout).write(text)
    return text


def write_text(text: str, path: Optional[str]) -> None:
    if path:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding="utf-8")

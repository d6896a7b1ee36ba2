import hashlib
import importlib
import json
import os
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Union

from pydantic import BaseModel
from slugify import slugify

from hyperlat.core.config import settings
from hyperlat.core.exceptions import BudgetExceededError, ValidationError


def to_jsonable(obj: Any) -> Any:
    """Convert exact values to plain JSON types.

    Fractions with denominator 1 become ints, others ``"p/q"`` strings.
    Tuples become lists and pydantic models their dumped form.
    """
    if isinstance(obj, BaseModel):
        return to_jsonable(obj.model_dump(mode="python"))
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, float):
        return obj
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [to_jsonable(v) for v in obj]
        if isinstance(obj, (set, frozenset)):
            items.sort(key=lambda x: json.dumps(x, sort_keys=True))
        return items
    if isinstance(obj, Path):
        return str(obj)
    raise TypeError(f"Object of type {type(obj).__name__} is not JSON serializable")


def dump_json(obj: Any, path: Optional[Union[str, Path]] = None) -> str:
    """Serialize deterministically (sorted keys, fixed separators).

    Args:
        obj: Value to serialize
        path: Optional file to write the text to

    Returns:
        The JSON text, newline terminated
    """
    text = json.dumps(to_jsonable(obj), sort_keys=True, indent=1, separators=(",", ": ")) + "\n"
    if path is not None:
        path = Path(path)
        create_dir_if_not_exists(str(path.parent))
        path.write_text(text, encoding="utf-8")
    return text


def load_json(path: Union[str, Path]) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError as e:
        raise ValidationError(detail=f"File not found: {path}") from e
    except json.JSONDecodeError as e:
        raise ValidationError(detail=f"Malformed JSON in {path}: {e}") from e


def parse_rational(value: Union[int, str, Fraction]) -> Fraction:
    """Read ``7``, ``"7"`` or ``"-3/4"`` as an exact rational."""
    try:
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise ValidationError(detail=f"Not a rational number: {value!r}") from e


def content_hash(obj: Any) -> str:
    return hashlib.sha256(dump_json(obj).encode("utf-8")).hexdigest()


def slug(label: str) -> str:
    """File-system friendly name for a lattice label (``"d16 e8"`` -> ``"d16-e8"``)."""
    return slugify(label.replace("^", "-pow-"), lowercase=True) or "lattice"


def import_string(dotted_path: str) -> Any:
    """Import a dotted module path and return the attribute/class designated by the last name.

    Args:
        dotted_path: The dotted path to import (e.g., "hyperlat.services.verify.suite_ch1")

    Returns:
        The imported attribute/class

    Raises:
        ImportError: If the import failed
    """
    try:
        module_path, class_name = dotted_path.rsplit(".", 1)
    except ValueError as e:
        raise ImportError(f"{dotted_path} doesn't look like a module path") from e

    module = importlib.import_module(module_path)

    try:
        return getattr(module, class_name)
    except AttributeError as e:
        raise ImportError(f"Module '{module_path}' does not define a '{class_name}' attribute") from e


def create_dir_if_not_exists(directory: str) -> None:
    """Create a directory if it doesn't exist.

    Args:
        directory: The directory path to create
    """
    os.makedirs(directory, exist_ok=True)


def get_cache_dir() -> Path:
    """Corpus directory (``HYPERLAT_CACHE``), created on first use."""
    path = Path(os.getenv("HYPERLAT_CACHE") or settings.cache_dir).expanduser()
    create_dir_if_not_exists(str(path))
    return path


def get_project_root() -> Path:
    """Checkout directory holding the ``hyperlat`` package, README and tests."""
    return Path(__file__).parent.parent.parent


def check_deadline(deadline: Optional[float], what: str = "computation") -> None:
    """Raise BudgetExceededError once ``time.monotonic()`` has passed ``deadline``."""
    if deadline is not None and time.monotonic() > deadline:
        raise BudgetExceededError(detail=f"{what} ran out of its time budget")


def deadline_after(seconds: Optional[float]) -> Optional[float]:
    return time.monotonic() + seconds if seconds else None

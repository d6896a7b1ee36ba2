"""Named lattices cached as JSON under ``HYPERLAT_CACHE``.

Each entry records how it was built so that a rebuild reproduces the same
bytes.
"""

from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Union

from pydantic import ValidationError as PydanticValidationError

from hyperlat.core.config import settings
from hyperlat.core.exceptions import ConstructionError, ValidationError
from hyperlat.core.logging import get_logger
from hyperlat.core.utils import content_hash, dump_json, get_cache_dir, import_string, load_json, slug
from hyperlat.models.corpus import CorpusEntry, Provenance
from hyperlat.services.lattice import Lattice, invariants_summary

logger = get_logger(__name__)


class CorpusStore:
    """Directory of ``<slug>.json`` corpus entries."""

    def __init__(self, root: Optional[Union[str, Path]] = None):
        self.root = Path(root).expanduser() if root is not None else get_cache_dir()
        self.root.mkdir(parents=True, exist_ok=True)

    def path(self, name: str) -> Path:
        return self.root / f"{slug(name)}.json"

    def names(self) -> List[str]:
        out = []
        for p in sorted(self.root.glob("*.json")):
            try:
                out.append(CorpusEntry.model_validate(load_json(p)).name)
            except (PydanticValidationError, ValidationError):
                logger.warning(f"skipping unreadable corpus file {p.name}")
        return out

    def __contains__(self, name: str) -> bool:
        return self.path(name).exists()

    def get(self, name: str) -> CorpusEntry:
        p = self.path(name)
        if not p.exists():
            raise ValidationError(detail=f"no corpus entry named {name!r}", context={"path": str(p)})
        try:
            return CorpusEntry.model_validate(load_json(p))
        except PydanticValidationError as e:
            raise ValidationError(detail=f"corpus entry {name!r} is malformed", errors=e.errors()) from e

    def lattice(self, name: str) -> Lattice:
        return Lattice.from_record(self.get(name).lattice)

    def put(self, name: str, lattice: Lattice, command: str, inputs: Optional[Dict[str, Any]] = None) -> CorpusEntry:
        inputs = inputs or {}
        record = lattice.to_record()
        entry = CorpusEntry(
            name=name,
            provenance=Provenance(command=command, inputs=inputs, inputs_hash=content_hash(inputs), version=settings.app_version),
            lattice=record,
            invariants=invariants_summary(lattice),
            content_hash=content_hash(record),
        )
        dump_json(entry, self.path(name))
        logger.info(f"stored corpus entry {name} (rank {lattice.rank})")
        return entry

    def verify(self, name: str, builder: Optional[Callable[[], Lattice]] = None) -> bool:
        """Rebuild an entry (with its recorded builder by default) and compare the lattice bytes."""
        entry = self.get(name)
        rebuilt = (builder() if builder is not None else rebuild(entry)).to_record()
        rebuilt.label = entry.lattice.label
        return content_hash(rebuilt) == content_hash(entry.lattice)


def rebuild(entry: CorpusEntry) -> Lattice:
    """Run the recorded builder again with the recorded inputs."""
    try:
        builder = import_string(entry.provenance.command)
    except ImportError as e:
        raise ValidationError(detail=f"cannot import builder {entry.provenance.command!r}") from e
    return builder(**entry.provenance.inputs)


def get_or_build(
    name: str,
    builder: Callable[[], Lattice],
    command: Optional[str] = None,
    inputs: Optional[Dict[str, Any]] = None,
    store: Optional[CorpusStore] = None,
) -> Lattice:
    """Cached lattice ``name``, building and storing it on a miss."""
    store = store or CorpusStore()
    if name in store:
        lattice = store.lattice(name)
        logger.debug(f"corpus hit for {name}")
        return lattice
    lattice = builder()
    if lattice is None:
        raise ConstructionError(detail=f"builder for {name!r} returned nothing")
    store.put(name, lattice, command or f"{builder.__module__}.{builder.__qualname__}", inputs)
    return lattice

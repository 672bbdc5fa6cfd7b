"""Reading and writing systems, universes, reports and formula files.

System files are JSON ``{"format": 1, "values": [...], "rows": [[...], ...]}``
or CSV with one row per line. Universe files are JSON
``{"format": 1, "particulars": [...], "systems": [[row, ...], ...]}``; every
system in a universe file is abstracted again on load.
"""

import csv
import io
import json
import logging
from pathlib import Path

from .abstraction import abstract
from .config import FORMAT_VERSION
from .errors import InputFormatError, InvalidSystem, UnknownValue
from .objects import ParticularObjectSystem, validate_pos
from .universe import Bounds, Universe

logger = logging.getLogger(__name__)


def ensure_dir_exists(dir_path):
    """Ensure that a directory exists, creating it if necessary."""
    dir_path = Path(dir_path)
    if not dir_path.exists():
        try:
            dir_path.mkdir(parents=True, exist_ok=True)
            logger.info(f"Created directory: {dir_path}")
        except PermissionError:
            raise InputFormatError("permission denied when creating the directory", dir_path) from None
    elif not dir_path.is_dir():
        raise InputFormatError("path exists but is not a directory", dir_path)


def _read_text(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as error:
        raise InputFormatError(f"cannot read file: {error.strerror}", path) from None


def _load_json(text, path=None):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as error:
        raise InputFormatError(f"invalid JSON: {error.msg}", path, error.lineno) from None
    if not isinstance(data, dict):
        raise InputFormatError("expected a JSON object", path)
    version = data.get("format", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise InputFormatError(f"unsupported format version {version!r}", path)
    return data


def _rows_from(value, path, what="rows"):
    if not isinstance(value, list) or not all(isinstance(row, list) for row in value):
        raise InputFormatError(f"'{what}' must be a list of lists of atoms", path)
    for row in value:
        for entry in row:
            if not isinstance(entry, (str, int)) or isinstance(entry, bool):
                raise InputFormatError(f"atom {entry!r} is not a string", path)
    return [[str(entry) for entry in row] for row in value]


def _validate(rows, path, line=None, strict=False):
    try:
        return validate_pos(rows, strict=strict)
    except InvalidSystem as error:
        raise InputFormatError(str(error), path, line) from None


def parse_system_json(text, path=None, strict=False):
    """Returns ``(system, values)``; ``values`` is None when the file lists none."""
    data = _load_json(text, path)
    if "rows" not in data:
        raise InputFormatError("missing 'rows'", path)
    rows = _rows_from(data["rows"], path)
    values = data.get("values")
    if values is not None:
        values = [str(value) for value in values]
        stray = sorted({entry for row in rows for entry in row} - set(values))
        if stray:
            raise InputFormatError(f"rows use atoms missing from 'values': {stray}", path)
    return _validate(rows, path, strict=strict), values


def parse_system_csv(text, path=None, strict=False):
    rows = []
    width = None
    for line_number, record in enumerate(csv.reader(io.StringIO(text)), start=1):
        cells = [cell.strip() for cell in record]
        if not cells or cells == [""]:
            continue
        if "" in cells:
            raise InputFormatError("empty atom", path, line_number)
        if width is not None and len(cells) != width:
            raise InputFormatError(f"row has {len(cells)} entries, expected {width}", path, line_number)
        width = len(cells)
        rows.append(cells)
    return _validate(rows, path, strict=strict), None


def read_system(path, strict=False):
    """Read a system file; the format follows the suffix (``.csv`` or JSON)."""
    text = _read_text(path)
    if Path(path).suffix.lower() == ".csv":
        system, values = parse_system_csv(text, path, strict)
    else:
        system, values = parse_system_json(text, path, strict)
    logger.info(f"Read system with {len(system)} rows of width {system.width} from {path}")
    return system, values


def system_to_dict(system: ParticularObjectSystem, values=None):
    if values is None:
        values = sorted(value.atom for value in system.values())
    return {"format": FORMAT_VERSION, "values": list(values), "rows": system.to_atoms()}


def system_to_csv(system: ParticularObjectSystem) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(system.to_atoms())
    return buffer.getvalue()


def _bounds_from(data, path):
    raw = data.get("bounds") or {}
    try:
        return Bounds(int(raw.get("max_objects", Bounds().max_objects)),
                      int(raw.get("max_states", Bounds().max_states)))
    except (TypeError, ValueError, AttributeError):
        raise InputFormatError("'bounds' must hold integer max_objects and max_states", path) from None


def universe_from_dict(data, path=None):
    """Build a universe from parsed universe-file (or system-file) data."""
    bounds = _bounds_from(data, path)
    if "systems" in data:
        if "particulars" not in data:
            raise InputFormatError("missing 'particulars'", path)
        particulars = [str(atom) for atom in data["particulars"]]
        blueprints = data["systems"]
        if not isinstance(blueprints, list):
            raise InputFormatError("'systems' must be a list of row sets", path)
    elif "rows" in data:
        rows = _rows_from(data["rows"], path)
        particulars = data.get("values") or sorted({entry for row in rows for entry in row})
        blueprints = [rows]
    else:
        raise InputFormatError("expected 'systems' (universe file) or 'rows' (system file)", path)

    if not particulars:
        raise InputFormatError("a universe needs at least one particular", path)
    u = Universe(particulars, bounds)
    for index, blueprint in enumerate(blueprints, start=1):
        rows = _rows_from(blueprint, path, what=f"systems[{index}]")
        try:
            abstract(u, validate_pos(rows))
        except (InvalidSystem, UnknownValue) as error:
            raise InputFormatError(f"system {index}: {error}", path) from None
    return u


def read_universe(path) -> Universe:
    u = universe_from_dict(_load_json(_read_text(path), path), path)
    logger.info(f"Loaded {u!r} from {path}")
    return u


def universe_to_dict(u: Universe):
    return {
        "format": FORMAT_VERSION,
        "particulars": [p.atom for p in u.particulars],
        "bounds": u.bounds.to_dict(),
        "systems": [[[entry.atom for entry in row] for row in system.canonical_matrix]
                    for system in u.systems()],
    }


def to_json(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def write_json(data, path):
    path = Path(path)
    ensure_dir_exists(path.parent)
    path.write_text(to_json(data), encoding="utf-8")
    logger.info(f"Wrote {path}")


def read_formulas(path):
    """Formulas from a file, one per line; blank lines and ``#`` comments are skipped.

    Returns ``(line_number, text)`` pairs.
    """
    formulas = []
    for line_number, line in enumerate(_read_text(path).splitlines(), start=1):
        text = line.strip()
        if text and not text.startswith("#"):
            formulas.append((line_number, text))
    return formulas

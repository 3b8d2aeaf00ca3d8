"""Knot records: JSON/CSV ingestion, validation and canonical emission."""
from __future__ import annotations

import csv
import json
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Optional

from .seifert import (
    DegenerateFormError,
    SeifertMatrix,
    SeifertMatrixError,
    SeifertValidationWarning,
    determinant,
    gram_schmidt_diagonalize,
    knot_determinant,
    rational_witt_class,
    symmetrize,
)
from .witt import DiagonalForm, as_fraction

MODES = ("seifert", "symmetric", "scalars")
FORMATS = ("json", "csv")
CSV_FIELDS = ("name", "seifert", "symmetric", "det", "sigma", "u1", "lens", "form")


class IngestError(ValueError):
    """Malformed input.  The message starts with a file/record/field location."""


@dataclass
class KnotRecord:
    name: str
    seifert: Optional[SeifertMatrix] = None
    symmetrized: Optional[tuple[tuple[Fraction, ...], ...]] = None
    form: Optional[DiagonalForm] = None
    det: Optional[int] = None
    sigma: Optional[int] = None
    u1_known: Optional[bool] = None
    lens: Optional[tuple[int, int]] = None
    issues: list[str] = field(default_factory=list, compare=False)
    notices: list[str] = field(default_factory=list, compare=False)
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def has_matrix(self) -> bool:
        return self.seifert is not None or self.symmetrized is not None

    def phi(self) -> Optional[DiagonalForm]:
        """Diagonal representative of the rational Witt class, or None."""
        if "phi" not in self._cache:
            if self.seifert is not None:
                self._cache["phi"] = rational_witt_class(self.seifert)
            elif self.symmetrized is not None:
                self._cache["phi"] = gram_schmidt_diagonalize(self.symmetrized)
            else:
                self._cache["phi"] = self.form
        return self._cache["phi"]

    def computed_det(self) -> Optional[int]:
        if "det" not in self._cache:
            d = None
            if self.seifert is not None:
                d = knot_determinant(self.seifert)
            elif self.symmetrized is not None:
                q = abs(determinant(self.symmetrized))
                d = int(q) if q.denominator == 1 else None
            self._cache["det"] = d
        return self._cache["det"]

    def computed_sigma(self) -> Optional[int]:
        phi = self.phi()
        return phi.signature() if phi is not None else None

    def resolved(self) -> tuple[Optional[DiagonalForm], Optional[int], Optional[int]]:
        """(phi, det, sigma), preferring values computed from a matrix."""
        phi = self.phi()
        det = self.computed_det()
        sigma = self.computed_sigma()
        return (phi, det if det is not None else self.det,
                sigma if sigma is not None else self.sigma)

    def validate(self) -> list[str]:
        """Compare stored scalars with matrix-computed ones; record mismatches."""
        cd, cs = self.computed_det(), self.computed_sigma()
        if self.det is not None and cd is not None and cd != self.det:
            self.issues.append(f"{self.name}: stored det {self.det} but matrix gives {cd}")
        if self.sigma is not None and cs is not None and cs != self.sigma:
            self.issues.append(f"{self.name}: stored sigma {self.sigma} but matrix gives {cs}")
        if not self.has_matrix and self.form is None and (self.det is None or self.sigma is None):
            self.issues.append(f"{self.name}: needs a matrix, a form, or both det and sigma")
        return self.issues

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"name": self.name}
        if self.seifert is not None:
            out["seifert"] = self.seifert.as_lists()
            out["symmetric"] = False
        elif self.symmetrized is not None:
            out["seifert"] = [[_num_out(x) for x in row] for row in self.symmetrized]
            out["symmetric"] = True
        if self.form is not None:
            out["form"] = [str(x) for x in self.form]
        for key, val in (("det", self.det), ("sigma", self.sigma), ("u1", self.u1_known)):
            if val is not None:
                out[key] = val
        if self.lens is not None:
            out["lens"] = list(self.lens)
        return out


def _num_out(x: Fraction):
    return x.numerator if x.denominator == 1 else str(x)


def _fraction(x, where: str) -> Fraction:
    if isinstance(x, bool):
        raise IngestError(f"{where}: expected a number, got {x!r}")
    try:
        return as_fraction(x)
    except (TypeError, ValueError, ZeroDivisionError):
        raise IngestError(f"{where}: expected an integer or rational, got {x!r}") from None


def _int(x, where: str) -> int:
    if isinstance(x, bool):
        raise IngestError(f"{where}: expected an integer, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x.strip())
        except ValueError:
            pass
    raise IngestError(f"{where}: expected an integer, got {x!r}")


def _bool(x, where: str) -> bool:
    if isinstance(x, bool):
        return x
    if isinstance(x, str) and x.strip().lower() in ("true", "1", "yes", "false", "0", "no"):
        return x.strip().lower() in ("true", "1", "yes")
    raise IngestError(f"{where}: expected true/false, got {x!r}")


def _matrix(x, where: str) -> list[list[Fraction]]:
    if isinstance(x, str):
        try:
            x = json.loads(x)
        except json.JSONDecodeError as e:
            raise IngestError(f"{where}: bad matrix string ({e.msg})") from None
    if not isinstance(x, list) or not all(isinstance(r, list) for r in x):
        raise IngestError(f"{where}: matrix must be a list of rows")
    n = len(x)
    rows = []
    for i, r in enumerate(x):
        if len(r) != n:
            raise IngestError(f"{where}: row {i} has {len(r)} entries, expected {n}")
        rows.append([_fraction(v, f"{where}[{i}][{j}]") for j, v in enumerate(r)])
    return rows


def build_record(raw: dict, where: str, mode: Optional[str] = None,
                 strict: bool = False) -> KnotRecord:
    """Turn one parsed JSON object / CSV row into a validated KnotRecord."""
    if not isinstance(raw, dict):
        raise IngestError(f"{where}: expected an object")
    name = raw.get("name")
    if not isinstance(name, str) or not name.strip():
        raise IngestError(f"{where}.name: missing knot name")
    rec = KnotRecord(name=name.strip())
    where = f"{where} ({rec.name})"

    def present(key):
        v = raw.get(key)
        return v is not None and v != ""

    if present("det"):
        rec.det = _int(raw["det"], f"{where}.det")
        if rec.det <= 0:
            raise IngestError(f"{where}.det: determinant must be positive")
    if present("sigma"):
        rec.sigma = _int(raw["sigma"], f"{where}.sigma")
    if present("u1"):
        rec.u1_known = _bool(raw["u1"], f"{where}.u1")
    if present("lens"):
        lens = raw["lens"]
        if isinstance(lens, str):
            try:
                lens = json.loads(lens)
            except json.JSONDecodeError:
                raise IngestError(f"{where}.lens: expected [p, q]") from None
        if not isinstance(lens, list) or len(lens) != 2:
            raise IngestError(f"{where}.lens: expected [p, q]")
        rec.lens = (_int(lens[0], f"{where}.lens"), _int(lens[1], f"{where}.lens"))
    if present("form"):
        form = raw["form"]
        if isinstance(form, str):
            try:
                form = json.loads(form)
            except json.JSONDecodeError:
                raise IngestError(f"{where}.form: expected a list of rationals") from None
        if not isinstance(form, list):
            raise IngestError(f"{where}.form: expected a list of rationals")
        entries = [_fraction(v, f"{where}.form[{i}]") for i, v in enumerate(form)]
        if any(e == 0 for e in entries):
            raise IngestError(f"{where}.form: zero entries are not allowed")
        rec.form = DiagonalForm(entries)

    if present("seifert") and mode != "scalars":
        rows = _matrix(raw["seifert"], f"{where}.seifert")
        symmetric = mode == "symmetric" or (
            mode is None and present("symmetric") and _bool(raw["symmetric"], f"{where}.symmetric"))
        try:
            if symmetric:
                if any(rows[i][j] != rows[j][i] for i in range(len(rows)) for j in range(i)):
                    raise IngestError(f"{where}.seifert: symmetric mode needs a symmetric matrix")
                rec.symmetrized = tuple(tuple(r) for r in rows)
                if rows and determinant(rows) == 0:
                    raise DegenerateFormError("symmetrized form degenerate")
            else:
                if any(x.denominator != 1 for r in rows for x in r):
                    raise IngestError(f"{where}.seifert: Seifert matrices have integer entries")
                with warnings.catch_warnings(record=True) as caught:
                    warnings.simplefilter("always", SeifertValidationWarning)
                    rec.seifert = SeifertMatrix(tuple(tuple(int(x) for x in r) for r in rows),
                                                strict=strict)
                rec.notices.extend(f"{rec.name}: {w.message}" for w in caught
                                   if issubclass(w.category, SeifertValidationWarning))
                symmetrize(rec.seifert)
        except (SeifertMatrixError, DegenerateFormError) as e:
            raise IngestError(f"{where}.seifert: {e}") from None
    rec.validate()
    return rec


def _detect_format(path: Path, fmt: Optional[str]) -> str:
    if fmt is not None:
        if fmt not in FORMATS:
            raise ValueError(f"unknown format {fmt!r}")
        return fmt
    return "csv" if path.suffix.lower() == ".csv" else "json"


def parse_text(text: str, fmt: str, source: str = "<input>", mode: Optional[str] = None,
               strict: bool = False) -> list[KnotRecord]:
    if mode is not None and mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if not text.strip():
        return []
    if fmt == "json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise IngestError(f"{source}:{e.lineno}:{e.colno}: {e.msg}") from None
        if isinstance(data, dict):
            data = [data]
        if not isinstance(data, list):
            raise IngestError(f"{source}: expected a list of records")
        return [build_record(r, f"{source}: record {i}", mode, strict) for i, r in enumerate(data)]
    reader = csv.DictReader(text.splitlines())
    if reader.fieldnames is None or "name" not in reader.fieldnames:
        raise IngestError(f"{source}:1: CSV header must include a 'name' column")
    unknown = set(reader.fieldnames) - set(CSV_FIELDS)
    if unknown:
        raise IngestError(f"{source}:1: unknown columns {sorted(unknown)}")
    out = []
    for row in reader:
        if None in row:
            raise IngestError(f"{source}:{reader.line_num}: too many fields")
        out.append(build_record(row, f"{source}:{reader.line_num}", mode, strict))
    return out


def ingest(path, fmt: Optional[str] = None, mode: Optional[str] = None,
           strict: bool = False) -> list[KnotRecord]:
    path = Path(path)
    fmt = _detect_format(path, fmt)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise IngestError(f"{path}: not UTF-8 ({e.reason})") from None
    return parse_text(text, fmt, str(path), mode, strict)


def emit(records) -> str:
    """Canonical JSON: fixed key order, one record per line."""
    lines = [json.dumps(r.to_dict(), sort_keys=True, separators=(",", ":")) for r in records]
    if not lines:
        return "[]\n"
    return "[\n" + ",\n".join(lines) + "\n]\n"


def emit_csv(records) -> str:
    import io
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(CSV_FIELDS), lineterminator="\n")
    w.writeheader()
    for r in records:
        d = r.to_dict()
        for key in ("seifert", "form", "lens"):
            if key in d:
                d[key] = json.dumps(d[key], separators=(",", ":"))
        for key in ("symmetric", "u1"):
            if key in d:
                d[key] = "true" if d[key] else "false"
        w.writerow(d)
    return buf.getvalue()


def bundled_path(name: str) -> Path:
    return Path(str(resources.files("wittknot") / "data" / name))


def load_bundled(name: str, strict: bool = False) -> list[KnotRecord]:
    return ingest(bundled_path(name), strict=strict)


def mirror_name(name: str) -> str:
    return name[1:] if name.startswith("m") else "m" + name


_KNOTINFO_COLUMNS = {
    "name": ("name",),
    "seifert": ("seifert_matrix", "seifert"),
    "sigma": ("signature", "sigma"),
    "det": ("determinant", "det"),
    "u": ("unknotting_number", "u"),
}


def normalize_name(name: str) -> str:
    """'11a_{16}', '11a16' and 'K11a16' all become '11a_16'."""
    s = name.strip().replace("{", "").replace("}", "")
    if s[:1] in "Kk" and s[1:2].isdigit():
        s = s[1:]
    if "_" in s:
        return s
    i = 0
    while i < len(s) and s[i].isdigit():
        i += 1
    j = i
    while j < len(s) and s[j].isalpha():
        j += 1
    return s[:j] + "_" + s[j:] if i < j < len(s) else s


def _knotinfo_matrix(text: str):
    # exports use [[..],[..]] or {{..},{..}}, sometimes with ';' row separators
    t = text.strip().replace("{", "[").replace("}", "]").replace(";", "],[")
    if not t.startswith("[["):
        t = "[[" + t.strip("[]") + "]]"
    return json.loads(t)


def import_knotinfo(path, strict: bool = False) -> list[KnotRecord]:
    """Read a CSV exported from the KnotInfo database.

    Only the name, Seifert matrix, signature, determinant and unknotting
    number columns are used; anything else in the export is ignored.
    """
    path = Path(path)
    lines = path.read_text(encoding="utf-8").splitlines()
    reader = csv.reader(lines)
    header = None
    for header in reader:
        if any(h.strip().lower() == "name" for h in header):
            break
    else:
        raise IngestError(f"{path}: no header row with a 'name' column")
    cols = {}
    low = [h.strip().lower() for h in header]
    for key, aliases in _KNOTINFO_COLUMNS.items():
        for a in aliases:
            if a in low:
                cols[key] = low.index(a)
                break
    out = []
    for row in reader:
        if not row or not row[cols["name"]].strip():
            continue
        where = f"{path}:{reader.line_num}"
        raw = {"name": normalize_name(row[cols["name"]])}
        if "seifert" in cols and row[cols["seifert"]].strip():
            try:
                raw["seifert"] = _knotinfo_matrix(row[cols["seifert"]])
            except json.JSONDecodeError:
                raise IngestError(f"{where}.seifert_matrix: cannot parse matrix") from None
        if "sigma" in cols:
            raw["sigma"] = row[cols["sigma"]].strip()
        if "det" in cols:
            raw["det"] = row[cols["det"]].strip()
        if "u" in cols and row[cols["u"]].strip().isdigit():
            raw["u1"] = row[cols["u"]].strip() == "1"
        out.append(build_record(raw, where, None, strict))
    return out

"""Batch commands behind the CLI.  Each returns plain ReportRow objects."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable, Optional, Sequence

from .pretzel import (
    PretzelParams,
    check_pretzel1,
    check_pretzel2,
    pretzel2_form,
    pretzel_class,
    u1_verdict,
)
from .records import KnotRecord, mirror_name
from .unknotting import (
    LensSurgeryDescription,
    ObstructionVerdict,
    lickorish_solutions,
    u1_obstruction,
    u2_candidate_filter,
    u2_matches,
)
from .witt import DiagonalForm, canonical_gen, is_equal


@dataclass
class ReportRow:
    name: str
    phi: Optional[list[str]] = None
    sigma: Optional[int] = None
    det: Optional[int] = None
    verdict: str = ""
    witness: Optional[int] = None
    detail: dict[str, Any] = field(default_factory=dict)

    @property
    def canonical(self) -> Optional[list[int]]:
        return None if self.phi is None else [canonical_gen(x) for x in self.phi]

    def as_dict(self) -> dict[str, Any]:
        d = {"name": self.name, "phi": self.phi, "sigma": self.sigma, "det": self.det,
             "verdict": self.verdict, "witness": self.witness}
        if self.phi is not None:
            d["canonical"] = self.canonical
        d.update(self.detail)
        return d


def _form_strings(f: Optional[DiagonalForm]) -> Optional[list[str]]:
    return None if f is None else [str(x) for x in f]


def _map(fn, items: Sequence, jobs: int = 1) -> list:
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        # map preserves input order, so output never depends on scheduling
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def compute_row(rec: KnotRecord) -> ReportRow:
    phi, det, sigma = rec.resolved()
    row = ReportRow(rec.name, _form_strings(phi), sigma, det)
    if rec.issues:
        row.verdict = "invalid"
        row.detail["issues"] = list(rec.issues)
    return row


def cmd_compute(records: Sequence[KnotRecord], jobs: int = 1) -> list[ReportRow]:
    return _map(compute_row, list(records), jobs)


def describe_u1(v: ObstructionVerdict) -> str:
    cls = v.classification()
    if cls == "a":
        reasons = {v.positive.reason, v.negative.reason}
        how = "signature" if reasons == {"signature"} else "both signs"
        return f"excluded ({how})"
    if cls == "b":
        return "negative change excluded"
    if cls == "c":
        return "positive change excluded"
    return "consistent"


def u1_row(rec: KnotRecord) -> ReportRow:
    phi, det, sigma = rec.resolved()
    row = ReportRow(rec.name, _form_strings(phi), sigma, det)
    if phi is None:
        row.verdict = "skipped"
        row.detail["notice"] = "no matrix or form, cannot compare Witt classes"
        return row
    if rec.issues:
        row.verdict = "invalid"
        row.detail["issues"] = list(rec.issues)
        return row
    v = u1_obstruction(phi, det, sigma)
    row.verdict = describe_u1(v)
    row.witness = v.witness
    row.detail["class"] = v.classification()
    row.detail["positive"] = v.positive.status
    row.detail["negative"] = v.negative.status
    if row.witness is not None:
        seps = []
        for case in (v.positive, v.negative):
            if case.separating and row.witness in case.separating:
                a, b = case.separating[row.witness]
                seps.append(f"{a} vs {b}")
        row.detail["witness_classes"] = seps
    if rec.u1_known is True and v.obstructed:
        row.detail["fixture_mismatch"] = "record says u = 1 but the class excludes it"
    return row


def cmd_obstruct_u1(records: Sequence[KnotRecord], jobs: int = 1) -> list[ReportRow]:
    return _map(u1_row, list(records), jobs)


@dataclass
class U2Result:
    name: str
    det: int
    sigma: int
    survivors: list[int]
    candidates: Optional[list[tuple[str, int, int]]] = None
    notices: list[str] = field(default_factory=list)

    def as_dict(self) -> dict[str, Any]:
        d = {"name": self.name, "det": self.det, "sigma": self.sigma,
             "survivors": self.survivors}
        if self.candidates is not None:
            d["candidates"] = [{"name": n, "det": dl, "sigma": s} for n, dl, s in self.candidates]
        if self.notices:
            d["notices"] = self.notices
        return d


def cmd_obstruct_u2(rec: KnotRecord, d_values: Optional[Iterable[int]] = None,
                    candidates: Optional[Sequence[KnotRecord]] = None) -> U2Result:
    """Surviving det L values, and optionally the table knots L that remain.

    A knot with positive signature is mirrored first; table answers are
    mirrored back so they refer to the chirality of the input knot.
    """
    phi, det, sigma = rec.resolved()
    if phi is None:
        raise ValueError(f"{rec.name}: needs a matrix or a form")
    flip = sigma > 0
    if flip:
        phi, sigma = -phi, -sigma
    notices = []
    if candidates is not None:
        table = []
        for c in candidates:
            _, cd, cs = c.resolved()
            if cd is None or cs is None or c.u1_known is None:
                notices.append(f"{c.name}: missing det, sigma or u1, skipped")
                continue
            table.append((c, cd, cs))
        d_set = sorted({cd for _, cd, _ in table} | set(d_values or ()))
    else:
        d_set = sorted(set(d_values or ()))
    survivors = u2_candidate_filter(phi, det, sigma, d_set)
    found = None
    if candidates is not None:
        allowed = {d: {s for *_, sl in u2_matches(phi, det, sigma, d) for s in sl}
                   for d in survivors}
        found = []
        for c, cd, cs in table:
            if cd not in allowed or not c.u1_known:
                continue
            # both chiralities of L are candidates
            for name, s in ((c.name, cs), (mirror_name(c.name), -cs)):
                if s in allowed[cd]:
                    if flip:
                        name, s = mirror_name(name), -s
                    if (name, cd, s) not in found:
                        found.append((name, cd, s))
        if d_values is not None:
            d_keep = set(d_values)
            found = [x for x in found if x[1] in d_keep]
            survivors = [d for d in survivors if d in d_keep]
    return U2Result(rec.name, det, -sigma if flip else sigma, survivors, found, notices)


def pretzel_row(strands: Sequence[int]) -> ReportRow:
    params = PretzelParams(tuple(strands))
    inv = pretzel_class(params.strands)
    row = ReportRow("P(" + ",".join(map(str, params.strands)) + ")",
                    _form_strings(inv.form), inv.signature, inv.det)
    v = u1_verdict(inv)
    row.verdict = describe_u1(v)
    row.witness = v.witness
    row.detail["class"] = v.classification()
    if len(inv.form) == 0:
        row.detail["note"] = "trivial Witt class"
    if len(params.strands) == 3 and params.strands[0] + params.strands[1] == 4:
        try:
            chk = check_pretzel1(params.strands[0], params.strands[2])
        except ValueError:
            chk = None  # outside the family's parameter range
        if chk is not None:
            row.detail["family_check"] = "obstructed" if chk.obstructed else "not obstructed"
            row.detail["family_witness"] = chk.witness
    return row


def four_family_p(q: int, k: int, ell: int) -> int:
    return 2 + (2 * k + 1) * q ** (ell + 1)


def four_family_row(q: int, k: int, ell: int) -> ReportRow:
    p = four_family_p(q, k, ell)
    strands = (p, p, p, -3 * p - 1)
    chk = check_pretzel2(p)
    phi = pretzel2_form(p)
    inv = pretzel_class(strands)
    row = ReportRow(f"P({p},{p},{p},{-3 * p - 1})", _form_strings(phi), inv.signature, inv.det)
    row.verdict = "obstructed" if chk.obstructed else "not obstructed"
    row.witness = chk.witness
    row.detail.update({"k": k, "l": ell, "p": p})
    if q in chk.separating:
        a, b = chk.separating[q]
        row.detail[f"boundary_{q}"] = f"{a} vs {b}"
        row.witness = q  # the prime the family is built around
    else:
        row.detail[f"boundary_{q}"] = "equal"
    return row


def cmd_pretzel(three: Optional[Sequence[int]] = None, four: Optional[Sequence[int]] = None,
                family: Optional[int] = None, grid: tuple[int, int] = (3, 3),
                jobs: int = 1) -> list[ReportRow]:
    rows = []
    if three is not None:
        rows.append(pretzel_row(three))
    if four is not None:
        rows.append(pretzel_row(four))
    if family is not None:
        ks, ls = grid
        cells = [(family, k, ell) for k in range(ks) for ell in range(ls)]
        rows.extend(_map(_family_cell, cells, jobs))
    return rows


def _family_cell(cell):
    return four_family_row(*cell)


def cmd_lickorish(p: int, q: int, det: int, rec: Optional[KnotRecord] = None) -> ReportRow:
    sols = lickorish_solutions(LensSurgeryDescription(p, q), det)
    name = rec.name if rec is not None else f"L({p},{q})"
    row = ReportRow(name, det=det)
    row.verdict = "solvable" if sols else "no solution: u > 1"
    row.detail["lens"] = [p, q]
    row.detail["solutions"] = [[t, s] for t, s in sols]
    if rec is not None and rec.phi() is not None:
        phi = rec.phi()
        row.phi = _form_strings(phi)
        row.sigma = phi.signature()
        if is_equal(phi, DiagonalForm()):
            row.detail["note"] = "phi = 0, so the Witt class alone gives no obstruction"
    return row


def cmd_report(records: Sequence[KnotRecord], jobs: int = 1) -> list[ReportRow]:
    """u = 1 verdicts plus the linking-form check wherever a lens space is given."""
    rows = cmd_obstruct_u1(records, jobs)
    for rec, row in zip(records, rows):
        if rec.lens is not None and row.det is not None:
            lk = cmd_lickorish(rec.lens[0], rec.lens[1], row.det, rec)
            row.detail["lickorish"] = lk.verdict
            if "note" in lk.detail:
                row.detail["note"] = lk.detail["note"]
    return rows

"""Golden residue tables for G2(3,1) and F4(2,1) and their recomputation."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Optional

from .exactalg import IrrationalCoefficients, NonCyclotomicRemainder, SignedCycloProduct
from .mu import exceptional_spec
from .residual import ResidueReport, TorusPoint, galois_conjugates, parse_point, residue_at

__all__ = ["TABLE_NAMES", "TableRow", "check_table", "load_golden"]

TABLE_NAMES = ("3D4", "2E6")


def load_golden(path: Optional[str] = None) -> dict:
    if path is None:
        text = resources.files("hecketransfer").joinpath("data/golden_tables.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    return json.loads(text)


@dataclass
class TableRow:
    label: str
    point: TorusPoint
    golden: SignedCycloProduct
    computed: Optional[SignedCycloProduct]
    is_residual: bool
    match: bool
    evaluated_at: Optional[TorusPoint]  # Galois conjugate actually used
    cuspidal: str = ""
    note: str = ""

    def diff(self) -> dict[int, int]:
        """Phi-index -> (computed - golden) exponent, nonzero entries only."""
        if self.computed is None:
            return {}
        out = dict(self.computed.exps_map)
        for n, e in self.golden.exps:
            out[n] = out.get(n, 0) - e
        return {n: e for n, e in sorted(out.items()) if e}


def _evaluate(spec, point: TorusPoint, bound: int) -> tuple[Optional[ResidueReport], str]:
    try:
        return residue_at(spec, point, bound), ""
    except (IrrationalCoefficients, NonCyclotomicRemainder) as exc:
        return None, f"{type(exc).__name__}: {exc}"


def check_table(which: str, golden: Optional[dict] = None, bound: int = 64) -> list[TableRow]:
    """Recompute every row; a row matches when some Galois conjugate of its unit parts
    is residual with the printed cyclotomic product (up to sign and powers of q)."""
    data = (golden or load_golden())[which]
    spec = exceptional_spec(data["system"], *data["params"])
    rows = []
    for row in data["rows"]:
        point = parse_point(row["point"])
        want = SignedCycloProduct.parse(row["residue"])
        first: Optional[ResidueReport] = None
        notes = []
        hit = None
        for conj in galois_conjugates(point):
            rep, note = _evaluate(spec, conj, bound)
            if note:
                notes.append(note)
                continue
            first = first or rep
            if rep.is_residual and rep.residue.equal_up_to_unit(want):
                hit = rep
                break
        rep = hit or first
        note = "; ".join(dict.fromkeys(notes))
        if rep is not None and not rep.is_residual:
            note = (note + "; " if note else "") + f"not residual (pole count {rep.net}, rank {spec.rank})"
        rows.append(TableRow(row["s"], point, want, rep.residue if rep else None,
                             bool(rep and rep.is_residual), hit is not None,
                             rep.point if rep else None, row.get("cuspidal", ""), note))
    return rows

"""
JSON and CSV encodings for qsw values.

Rationals are "p/q" strings (or plain integers as strings) unless
floats are requested; compositions and permutations are integer arrays.
"""

import csv
import io
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional

import click

from combinatorics import format_rational, parse_rational
from descent_algebra import DElement
from endomorphism import BhrResult, Distribution, EndoMatrix, PartitionLump, StationaryResult, TransitionMatrix
from errors import SpecSyntaxError
from lyndon import AMatrix
from qsym import QSymElement


class Encoder:
    """Formats scalars either exactly or as floats."""

    def __init__(self, as_float: bool = False):
        self.as_float = as_float

    def number(self, value: Fraction):
        value = Fraction(value)
        return float(value) if self.as_float else format_rational(value)

    def state(self, state) -> Any:
        return list(state) if isinstance(state, (tuple, frozenset)) else state

    def qsym(self, x: QSymElement) -> Dict:
        return {"grade": x.grade, "basis": x.basis,
                "coeffs": [{"comp": list(a), "value": self.number(c)} for a, c in x.items()]}

    def delement(self, w: DElement) -> Dict:
        key = "perm" if w.basis == "perm" else "comp"
        return {"grade": w.grade, "basis": w.basis,
                "coeffs": [{key: list(k), "value": self.number(c)} for k, c in w.items()]}

    def transition(self, m: TransitionMatrix) -> Dict:
        return {"space": m.space,
                "states": [self.state(s) for s in m.states],
                "rows": [[self.number(v) for v in row] for row in m.to_rows()]}

    def endo(self, m: EndoMatrix) -> Dict:
        return {"n": m.n, "basis": m.basis,
                "states": [list(s) for s in m.states],
                "rows": [[self.number(v) for v in row] for row in m.to_rows()]}

    def distribution(self, d: Distribution) -> Dict:
        return {"support": d.support,
                "probabilities": [{"state": self.state(s), "value": self.number(p)} for s, p in d.items()]}

    def stationary(self, result: StationaryResult) -> Dict:
        return {"unique": result.unique,
                "kernel_dimension": result.kernel_dimension,
                "distribution": self.distribution(result.distribution) if result.distribution else None}

    def amatrix(self, a: AMatrix) -> Dict:
        states = a.rows()
        return {"n": a.n, "states": [list(s) for s in states],
                "rows": [[str(a[b, c]) for c in states] for b in states]}

    def lump(self, lump: PartitionLump) -> Dict:
        return {"classes": [{"label": self.state(label), "members": [list(a) for a in members]}
                            for label, members in zip(lump.labels, lump.classes)],
                "khat": self.transition(lump.khat),
                "d": [[self.number(lump.d[(s, t)]) for t in lump.labels] for s in lump.labels],
                "matches_kbar": lump.matches_kbar}

    def bhr(self, result: BhrResult) -> Dict:
        return {"is_bhr": result.is_bhr, "expansion": self.delement(result.expansion)}


def dumps(payload: Any) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False)


def transition_csv(m, enc: Encoder) -> str:
    """Square table for a TransitionMatrix or an EndoMatrix."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    labels = [_label(s) for s in m.states]
    writer.writerow(["from"] + labels)
    for label, row in zip(labels, m.to_rows()):
        writer.writerow([label] + [enc.number(v) for v in row])
    return buffer.getvalue()


def records_csv(header: List[str], records: Iterable[Iterable]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for record in records:
        writer.writerow(list(record))
    return buffer.getvalue()


def _label(state) -> str:
    if isinstance(state, (tuple, list, frozenset)):
        return "".join(str(x) for x in state) if all(int(x) < 10 for x in state) else "_".join(str(x) for x in state)
    return str(state)


def transition_from_json(data: Dict) -> TransitionMatrix:
    """Inverse of Encoder.transition for exact output."""
    try:
        states = [tuple(s) if isinstance(s, list) else s for s in data["states"]]
        rows = [[parse_rational(str(v)) for v in row] for row in data["rows"]]
        space = data.get("space", "composition")
    except (KeyError, TypeError) as exc:
        raise SpecSyntaxError(str(exc), 'a matrix object {"states": [...], "rows": [[...]]}')
    return TransitionMatrix.from_rows(space, states, rows)


def load_transition(path) -> TransitionMatrix:
    try:
        data = json.loads(Path(path).read_text())
    except ValueError as exc:
        raise SpecSyntaxError(str(path), f"a JSON matrix file ({exc})")
    return transition_from_json(data)


def write_output(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        click.echo(text.rstrip("\n"))

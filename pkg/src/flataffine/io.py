"""AlgebraFile: a strict JSON document for algebras, products, forms and bivectors.

    {
      "name": "aff",
      "dim": 2,
      "basis": ["e1", "e2"],
      "bracket": [[0, 1, 1, "1"]],
      "product": [[0, 0, 0, "-1"], [0, 1, 1, "1"]],
      "forms": {"omega": {"symmetry": "antisymmetric", "entries": [[0, 1, "1"]]}},
      "bivector": [[0, 1, "1/2"]]
    }

Indices are 0-based.  Bracket entries (i, j, k, c) mean c is the e_k
coefficient of [e_i, e_j] and are listed for i < j only.  Bivector entries
(i, j, c) are coefficients of e_i ^ e_j, again for i < j.  Coefficients are
rational strings such as "-1/2"; bare JSON numbers other than integers are
refused so that nothing passes through a float.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .algebra import SYMMETRY_FLAGS, BilinearForm, ProductTable, StructureConstants
from .linalg import format_scalar, to_scalar
from .yang_baxter import Bivector


class AlgebraFileError(ValueError):
    pass


REQUIRED = ("name", "dim", "basis", "bracket")
OPTIONAL = ("product", "forms", "bivector")


@dataclass
class AlgebraDocument:
    name: str
    lie: StructureConstants
    product: ProductTable | None = None
    forms: dict[str, BilinearForm] = field(default_factory=dict)
    bivector: Bivector | None = None

    def same_as(self, other: "AlgebraDocument") -> bool:
        if self.name != other.name or not self.lie.same_as(other.lie):
            return False
        if (self.product is None) != (other.product is None):
            return False
        if self.product is not None and not self.product.same_as(other.product):
            return False
        if set(self.forms) != set(other.forms):
            return False
        for k, f in self.forms.items():
            g = other.forms[k]
            if f.matrix != g.matrix or f.symmetry != g.symmetry:
                return False
        if (self.bivector is None) != (other.bivector is None):
            return False
        return self.bivector is None or self.bivector.matrix == other.bivector.matrix


def _coeff(value, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise AlgebraFileError(f"{where}: coefficient must be a rational string, got {value!r}")
    try:
        return to_scalar(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise AlgebraFileError(f"{where}: bad coefficient {value!r}") from exc


def _index(value, n: int, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or not 0 <= value < n:
        raise AlgebraFileError(f"{where}: index {value!r} out of range 0..{n - 1}")
    return value


def _rows(value, width: int, where: str) -> list:
    if not isinstance(value, list) or any(not isinstance(r, list) or len(r) != width for r in value):
        raise AlgebraFileError(f"{where}: expected a list of {width}-element lists")
    return value


def from_dict(doc: dict) -> AlgebraDocument:
    if not isinstance(doc, dict):
        raise AlgebraFileError("top level must be an object")
    unknown = set(doc) - set(REQUIRED) - set(OPTIONAL)
    if unknown:
        raise AlgebraFileError(f"unknown keys {sorted(unknown)}")
    missing = [k for k in REQUIRED if k not in doc]
    if missing:
        raise AlgebraFileError(f"missing keys {missing}")
    name, n, basis = doc["name"], doc["dim"], doc["basis"]
    if not isinstance(name, str):
        raise AlgebraFileError("name must be a string")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise AlgebraFileError("dim must be a positive integer")
    if not isinstance(basis, list) or len(basis) != n or not all(isinstance(b, str) for b in basis):
        raise AlgebraFileError("basis must list dim string labels")

    entries = {}
    for r, (i, j, k, c) in enumerate(_rows(doc["bracket"], 4, "bracket")):
        where = f"bracket[{r}]"
        i, j, k = (_index(v, n, where) for v in (i, j, k))
        if i >= j:
            raise AlgebraFileError(f"{where}: bracket entries need i < j")
        if (i, j, k) in entries:
            raise AlgebraFileError(f"{where}: duplicate entry")
        entries[(i, j, k)] = _coeff(c, where)
    try:
        lie = StructureConstants(tuple(basis), entries, name)
    except ValueError as exc:
        raise AlgebraFileError(str(exc)) from exc

    product = None
    if "product" in doc:
        pe = {}
        for r, (i, j, k, c) in enumerate(_rows(doc["product"], 4, "product")):
            where = f"product[{r}]"
            key = tuple(_index(v, n, where) for v in (i, j, k))
            if key in pe:
                raise AlgebraFileError(f"{where}: duplicate entry")
            pe[key] = _coeff(c, where)
        product = ProductTable(tuple(basis), pe, name)

    forms = {}
    if "forms" in doc:
        if not isinstance(doc["forms"], dict):
            raise AlgebraFileError("forms must be an object")
        for fname, block in doc["forms"].items():
            if not isinstance(block, dict) or set(block) != {"symmetry", "entries"}:
                raise AlgebraFileError(f"forms.{fname}: needs exactly 'symmetry' and 'entries'")
            sym = block["symmetry"]
            if sym not in SYMMETRY_FLAGS:
                raise AlgebraFileError(f"forms.{fname}: symmetry must be one of {SYMMETRY_FLAGS}")
            fe = {}
            for r, (i, j, c) in enumerate(_rows(block["entries"], 3, f"forms.{fname}.entries")):
                where = f"forms.{fname}.entries[{r}]"
                i, j = _index(i, n, where), _index(j, n, where)
                if sym != "none" and i > j:
                    raise AlgebraFileError(f"{where}: list i <= j for a {sym} form")
                fe[(i, j)] = _coeff(c, where)
            try:
                forms[fname] = BilinearForm.from_entries(n, fe, sym, tuple(basis))
            except ValueError as exc:
                raise AlgebraFileError(f"forms.{fname}: {exc}") from exc

    bivector = None
    if "bivector" in doc:
        be = {}
        for r, (i, j, c) in enumerate(_rows(doc["bivector"], 3, "bivector")):
            where = f"bivector[{r}]"
            i, j = _index(i, n, where), _index(j, n, where)
            if i >= j:
                raise AlgebraFileError(f"{where}: bivector entries need i < j")
            be[(i, j)] = _coeff(c, where)
        bivector = Bivector.from_entries(lie, be)
    return AlgebraDocument(name, lie, product, forms, bivector)


def to_dict(doc: AlgebraDocument) -> dict:
    lie = doc.lie
    out = {
        "name": doc.name,
        "dim": lie.dim,
        "basis": list(lie.basis),
        "bracket": [[i, j, k, format_scalar(c)] for (i, j, k), c in sorted(lie.entries.items()) if c],
    }
    if doc.product is not None:
        out["product"] = [[i, j, k, format_scalar(c)] for (i, j, k), c in sorted(doc.product.entries.items()) if c]
    if doc.forms:
        blocks = {}
        for fname in sorted(doc.forms):
            f = doc.forms[fname]
            n = len(f.matrix)
            pairs = [(i, j) for i in range(n) for j in range(n) if f.symmetry == "none" or i <= j]
            blocks[fname] = {"symmetry": f.symmetry,
                             "entries": [[i, j, format_scalar(f.matrix[i][j])] for i, j in pairs if f.matrix[i][j]]}
        out["forms"] = blocks
    if doc.bivector is not None:
        m = doc.bivector.matrix
        out["bivector"] = [[i, j, format_scalar(m[i][j])] for i in range(len(m)) for j in range(i + 1, len(m)) if m[i][j]]
    return out


def loads(text: str) -> AlgebraDocument:
    try:
        raw = json.loads(text, parse_float=lambda s: (_ for _ in ()).throw(AlgebraFileError(f"float literal {s}")))
    except json.JSONDecodeError as exc:
        raise AlgebraFileError(f"not valid JSON: {exc}") from exc
    return from_dict(raw)


_FLAT_LIST = re.compile(r"\[\s*([^\[\]{}]*?)\s*\]", re.S)


def dumps(doc: AlgebraDocument) -> str:
    text = json.dumps(to_dict(doc), indent=2, ensure_ascii=False)
    # innermost lists (rows, basis) on one line
    text = _FLAT_LIST.sub(lambda m: "[" + ", ".join(x.strip() for x in m.group(1).split(",") if x.strip()) + "]", text)
    return text + "\n"


def load(path: str | Path) -> AlgebraDocument:
    return loads(Path(path).read_text(encoding="utf-8"))


def dump(doc: AlgebraDocument, path: str | Path) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")


def from_catalog(entry) -> AlgebraDocument:
    # a bivector on a different algebra (the r that produced a dual) is not part of this document
    r = entry.bivector if entry.bivector is not None and entry.bivector.algebra.same_as(entry.lie) else None
    return AlgebraDocument(entry.name, entry.lie, entry.product, dict(entry.forms), r)

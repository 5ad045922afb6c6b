"""JSON descriptor files.

A descriptor file is a JSON object with these blocks::

    {
      "name": "group_sl2",
      "root_datum": {"sum": [{"series": "A", "rank": 1}, {"series": "A", "rank": 1}]},
      "a_H": [["1", "-1"]],
      "sigma_u": [0, 1],
      "monoid_generators": [["2", "2"]],
      "ideals": [{"label": "1", "dim": 3, "factor": 0}, ...],
      "h_blocks": [{"dim": 3, "support": ["1", "2"]}],
      "dim_m_Z": 0,
      "flags": {"h_reductive": true, "unimodular": true, "symmetric": false},
      "realization": "group_sl2",
      "quotients": [{"trivial_on": ["1"], "space": "sl2_gk"}]
    }

Rationals are written as integers or strings such as ``"-3/2"``. A root datum
block is either ``{"series", "rank", "multiplicities"}``, a ``{"sum": [...]}``
of such blocks, or explicit ``{"simple_roots", "positive_roots", "gram"}``
with ``positive_roots`` a list of ``[covector, multiplicity]`` pairs.
"""
from __future__ import annotations

import json
from pathlib import Path

from . import _linalg as la
from .cones import Subspace
from .rootsys import RootDatum, direct_sum, standard_datum
from .spherical import HBlock, Ideal, SphericalDescriptor, validate

__all__ = [
    "DescriptorError",
    "parse_descriptor",
    "descriptor_from_dict",
    "descriptor_to_dict",
]

REQUIRED = ("name", "root_datum", "sigma_u", "monoid_generators")


class DescriptorError(Exception):
    """Raised for unreadable (``kind='parse'``) or invalid (``'validation'``) input."""

    def __init__(self, kind: str, diagnostics: list[str]):
        self.kind = kind
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


def _field(obj: dict, key: str, where: str):
    if key not in obj:
        raise DescriptorError("parse", [f"{where}: missing required field '{key}'"])
    return obj[key]


def _rationals(rows, where: str):
    try:
        return la.mat(rows)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise DescriptorError("parse", [f"{where}: {exc}"]) from None


def _datum(block, where: str = "root_datum") -> RootDatum:
    if not isinstance(block, dict):
        raise DescriptorError("parse", [f"{where}: expected an object"])
    if "sum" in block:
        parts = [_datum(b, f"{where}.sum[{i}]") for i, b in enumerate(block["sum"])]
        return direct_sum(*parts, name=block.get("name"))
    if "series" in block:
        series = _field(block, "series", where)
        rank = _field(block, "rank", where) if series.upper() != "G2" else block.get("rank", 2)
        mults = block.get("multiplicities")
        if isinstance(mults, list):
            mults = dict(enumerate(mults))
        elif isinstance(mults, dict):
            mults = {int(k): v for k, v in mults.items()}
        try:
            return standard_datum(series, rank, mults)
        except (ValueError, TypeError) as exc:
            raise DescriptorError("parse", [f"{where}: {exc}"]) from None
    simple = _rationals(_field(block, "simple_roots", where), f"{where}.simple_roots")
    pos_raw = _field(block, "positive_roots", where)
    try:
        pos = [(la.vec(r), int(m)) for r, m in pos_raw]
    except (TypeError, ValueError) as exc:
        raise DescriptorError("parse", [f"{where}.positive_roots: {exc}"]) from None
    gram = _rationals(_field(block, "gram", where), f"{where}.gram")
    try:
        factors = tuple(
            (tuple(c), tuple(r)) for c, r in block.get("factors", [])
        )
        return RootDatum(
            len(simple), len(gram), simple, pos, gram, block.get("name", ""), factors
        )
    except ValueError as exc:
        raise DescriptorError("parse", [f"{where}: {exc}"]) from None


def descriptor_from_dict(obj: dict, *, check: bool = True) -> SphericalDescriptor:
    """Build (and by default validate) a descriptor from parsed JSON."""
    if not isinstance(obj, dict):
        raise DescriptorError("parse", ["top level: expected a JSON object"])
    for key in REQUIRED:
        _field(obj, key, "descriptor")
    datum = _datum(obj["root_datum"])
    n = datum.ambient_dim
    a_h_rows = _rationals(obj.get("a_H", []), "a_H")
    if any(len(r) != n for r in a_h_rows):
        raise DescriptorError("parse", [f"a_H: vectors must have {n} coordinates"])
    gens = _rationals(obj["monoid_generators"], "monoid_generators")
    try:
        sigma_u = tuple(int(i) for i in obj["sigma_u"])
        ideals = tuple(
            Ideal(
                str(_field(i, "label", f"ideals[{k}]")),
                int(_field(i, "dim", f"ideals[{k}]")),
                bool(i.get("simple", True)),
                bool(i.get("compact", False)),
                i.get("factor"),
            )
            for k, i in enumerate(obj.get("ideals", []))
        )
        blocks = tuple(
            HBlock(
                int(_field(b, "dim", f"h_blocks[{k}]")),
                tuple(str(s) for s in _field(b, "support", f"h_blocks[{k}]")),
            )
            for k, b in enumerate(obj.get("h_blocks", []))
        )
        quotients = tuple(
            (
                tuple(str(s) for s in _field(q, "trivial_on", f"quotients[{k}]")),
                str(_field(q, "space", f"quotients[{k}]")),
            )
            for k, q in enumerate(obj.get("quotients", []))
        )
    except (TypeError, ValueError, AttributeError) as exc:
        raise DescriptorError("parse", [f"descriptor: {exc}"]) from None
    flags = obj.get("flags", {})
    desc = SphericalDescriptor(
        name=str(obj["name"]),
        datum=datum,
        a_H=Subspace(n, a_h_rows),
        sigma_u=sigma_u,
        monoid_generators=gens,
        ideals=ideals,
        h_blocks=blocks,
        dim_m_Z=obj.get("dim_m_Z"),
        h_reductive=bool(flags.get("h_reductive", True)),
        unimodular=flags.get("unimodular", True),
        symmetric=bool(flags.get("symmetric", False)),
        realization=obj.get("realization"),
        quotients=quotients,
        description=str(obj.get("description", "")),
    )
    if check:
        problems = validate(desc)
        if problems:
            raise DescriptorError("validation", problems)
    return desc


def parse_descriptor(path) -> SphericalDescriptor:
    """Read, parse and validate a descriptor file.

    Raises
    ------
    DescriptorError
        ``kind == 'parse'`` for unreadable files, JSON syntax errors (with
        line and column) and missing fields; ``kind == 'validation'`` when the
        data violates a descriptor invariant.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise DescriptorError("parse", [f"{path}: {exc.strerror}"]) from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DescriptorError(
            "parse", [f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}"]
        ) from None
    return descriptor_from_dict(obj)


def descriptor_to_dict(desc: SphericalDescriptor) -> dict:
    """Explicit-form JSON object; :func:`descriptor_from_dict` inverts it."""
    d = desc.datum
    return {
        "name": desc.name,
        "root_datum": {
            "name": d.name,
            "simple_roots": [la.fmt_vec(s) for s in d.simple_roots],
            "positive_roots": [[la.fmt_vec(r), m] for r, m in d.positive_roots],
            "gram": [la.fmt_vec(r) for r in d.gram],
            "factors": [[list(c), list(r)] for c, r in d.factors],
        },
        "a_H": [la.fmt_vec(b) for b in desc.a_H.basis],
        "sigma_u": list(desc.sigma_u),
        "monoid_generators": [la.fmt_vec(nu) for nu in desc.monoid_generators],
        "ideals": [
            {"label": i.label, "dim": i.dim, "simple": i.simple, "compact": i.compact,
             "factor": i.factor}
            for i in desc.ideals
        ],
        "h_blocks": [{"dim": b.dim, "support": list(b.support)} for b in desc.h_blocks],
        "dim_m_Z": desc.dim_m_Z,
        "flags": {
            "h_reductive": desc.h_reductive,
            "unimodular": desc.unimodular,
            "symmetric": desc.symmetric,
        },
        "realization": desc.realization,
        "quotients": [{"trivial_on": list(s), "space": n} for s, n in desc.quotients],
        "description": desc.description,
    }

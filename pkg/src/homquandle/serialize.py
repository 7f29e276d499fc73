"""JSON encodings for groups, quandles, maps, triplets, reports and Clifford elements.

Group::

    {"kind": "cayley", "order": n, "table": [[...]], "labels": [...]}
    {"kind": "perm", "degree": d, "generators": [[...], ...]}
    {"kind": "catalog", "name": "S3"}

Triplet::

    {"group": <group>,
     "subgroup": [elements] | {"generators": [...]} | "fix" | "trivial",
     "automorphism": {"image": [...]} | {"inner": q} | {"generators": [...], "images": [...]},
     "witness": q}                       # optional

Elements inside a triplet may be indices, permutation lists (perm groups) or labels.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

import numpy as np

from .clifford import CliffordElement, VersorElement
from .embed import BergmanReport, EmbeddingReport
from .errors import HomQuandleError
from .groups import (
    FiniteGroup,
    GroupAutomorphism,
    Subgroup,
    alternating_group,
    automorphism_from_conjugation,
    automorphism_from_generators,
    cyclic_group,
    dihedral_group,
    direct_product,
    fix_subgroup,
    generated_subgroup,
    group_from_cayley,
    group_from_permutations,
    quaternion_group,
    symmetric_group,
    trivial_subgroup,
)
from .quandles import FiniteQuandle, QuandleMap, QuandleTriplet, make_quandle


class FormatError(HomQuandleError):
    """Malformed JSON document."""


def dumps(obj) -> str:
    return json.dumps(obj, separators=(", ", ": ")) + "\n"


def load_json(source):
    """Parse a path, a JSON string, or pass a dict through."""
    if isinstance(source, dict):
        return source
    text = str(source)
    if not text.lstrip().startswith(("{", "[")):
        try:
            text = Path(text).read_text()
        except OSError as exc:
            raise FormatError(f"cannot read {source}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None


def _field(d: dict, key: str):
    if not isinstance(d, dict) or key not in d:
        raise FormatError(f"missing field {key!r}")
    return d[key]


# ---------------------------------------------------------------------------
# groups

_CATALOG = re.compile(r"^(Z|S|A|D)(\d+)$")


def catalog_group(name: str) -> FiniteGroup:
    """``Z5``, ``S3``, ``A4``, ``D4`` (order 8), ``Q8`` and products like ``Z2xZ2``."""
    parts = name.replace("×", "x").split("x")
    if len(parts) > 1:
        out = catalog_group(parts[0])
        for p in parts[1:]:
            out = direct_product(out, catalog_group(p))
        return out
    if name == "Q8":
        return quaternion_group()
    m = _CATALOG.match(name)
    if not m:
        raise FormatError(f"unknown catalog group {name!r}")
    kind, n = m.group(1), int(m.group(2))
    if n < 1:
        raise FormatError(f"bad catalog size in {name!r}")
    return {"Z": cyclic_group, "S": symmetric_group, "A": alternating_group,
            "D": dihedral_group}[kind](n)


def group_to_json(G: FiniteGroup) -> dict:
    return {"kind": "cayley", "order": G.order, "table": G.mul.tolist(),
            "labels": [G.label(g) for g in range(G.order)]}


def group_from_json(source) -> FiniteGroup:
    if isinstance(source, str) and _looks_like_catalog(source):
        return catalog_group(source)
    d = load_json(source)
    kind = _field(d, "kind")
    if kind == "cayley":
        table = _field(d, "table")
        if "order" in d and len(table) != d["order"]:
            raise FormatError("order does not match the table size")
        return group_from_cayley(table, labels=d.get("labels"), name=d.get("name", ""))
    if kind == "perm":
        return group_from_permutations(_field(d, "degree"), _field(d, "generators"),
                                       name=d.get("name", ""))
    if kind == "catalog":
        return catalog_group(_field(d, "name"))
    raise FormatError(f"unknown group kind {kind!r}")


def _looks_like_catalog(text: str) -> bool:
    return not Path(text).exists() and bool(re.fullmatch(r"[A-Za-z0-9×]+", text))


def element(G: FiniteGroup, ref) -> int:
    if isinstance(ref, bool):
        raise FormatError(f"bad element reference {ref!r}")
    if isinstance(ref, int):
        if not 0 <= ref < G.order:
            raise FormatError(f"element index {ref} out of range for order {G.order}")
        return ref
    try:
        return G.index(ref)
    except (KeyError, ValueError, TypeError):
        raise FormatError(f"{ref!r} is not an element of the group") from None


# ---------------------------------------------------------------------------
# quandles and maps

def quandle_to_json(Q: FiniteQuandle) -> dict:
    return {"order": Q.order, "table": Q.op.tolist(), "labels": [Q.label(x) for x in range(Q.order)]}


def quandle_from_json(source, validate: bool = True) -> FiniteQuandle:
    d = load_json(source)
    table = _field(d, "table")
    if "order" in d and len(table) != d["order"]:
        raise FormatError("order does not match the table size")
    return make_quandle(table, labels=d.get("labels"), validate=validate)


def map_to_json(f: QuandleMap | np.ndarray) -> dict:
    image = f.image if isinstance(f, QuandleMap) else f
    return {"image": [int(i) for i in image]}


# ---------------------------------------------------------------------------
# triplets

def automorphism_from_json(G: FiniteGroup, obj) -> GroupAutomorphism:
    obj = load_json(obj)
    if "image" in obj:
        return GroupAutomorphism(G, np.array([element(G, r) for r in obj["image"]]))
    if "inner" in obj:
        return automorphism_from_conjugation(G, element(G, obj["inner"]))
    if "generators" in obj:
        gens = [element(G, r) for r in obj["generators"]]
        imgs = [element(G, r) for r in _field(obj, "images")]
        return automorphism_from_generators(G, gens, imgs)
    raise FormatError("automorphism needs 'image', 'inner' or 'generators'/'images'")


def subgroup_from_json(G: FiniteGroup, sigma: GroupAutomorphism, obj) -> Subgroup:
    if obj == "fix":
        return fix_subgroup(sigma)
    if obj == "trivial":
        return trivial_subgroup(G)
    if isinstance(obj, dict):
        return generated_subgroup(G, [element(G, r) for r in _field(obj, "generators")])
    if isinstance(obj, list):
        return Subgroup(G, tuple(sorted({element(G, r) for r in obj})))
    raise FormatError(f"bad subgroup description {obj!r}")


def triplet_from_json(source) -> tuple[QuandleTriplet, int | None]:
    """The triplet and the optional witness q."""
    d = load_json(source)
    G = group_from_json(_field(d, "group"))
    sigma = automorphism_from_json(G, _field(d, "automorphism"))
    H = subgroup_from_json(G, sigma, d.get("subgroup", "fix"))
    witness = d.get("witness")
    if witness is not None:
        witness = element(G, witness)
    return QuandleTriplet(G, H, sigma), witness


def triplet_to_json(T: QuandleTriplet) -> dict:
    return {"group": group_to_json(T.G), "subgroup": [int(h) for h in T.H],
            "automorphism": {"image": T.sigma.image.tolist()}}


# ---------------------------------------------------------------------------
# reports

def embedding_report_to_json(r: EmbeddingReport) -> dict:
    return {
        "verdict": r.verdict,
        "mode": r.mode,
        "fix_equals_h": r.fix_equals_h,
        "modulus": r.modulus,
        "witness_q": r.witness_q,
        "collision": list(r.certificate) if r.certificate is not None else None,
        "cosets": [r.cosets.label(c) for c in range(len(r.cosets))],
        "target_group": group_to_json(r.target_group),
        "map": [int(i) for i in r.map.image],
        "map_labels": [r.target_group.label(int(i)) for i in r.map.image],
    }


def bergman_report_to_json(b: BergmanReport) -> dict:
    return {
        "ok": b.ok,
        "fix_equals_diagonal": b.fix_equals_diagonal,
        "coincides": b.coincides,
        "f_b_is_embedding": b.f_b_is_embedding,
        "core_isomorphism": map_to_json(b.core_iso)["image"],
        "f_b": [int(i) for i in b.f_b],
        "f_b_labels": [b.report.target_group.label(int(i)) for i in b.f_b],
        "embedding": embedding_report_to_json(b.report),
    }


# ---------------------------------------------------------------------------
# Clifford elements

def clifford_to_json(a: CliffordElement | VersorElement) -> dict:
    out = {}
    if isinstance(a, VersorElement):
        out = {"parity": a.parity, "factor_count": a.factor_count}
        a = a.element
    coeffs = {str(m): float(c) for m, c in enumerate(a.coeffs) if c != 0.0}
    return {"n": a.n, "coeffs": coeffs, **out}


def clifford_from_json(source) -> CliffordElement | VersorElement:
    d = load_json(source)
    n = int(_field(d, "n"))
    c = np.zeros(1 << n)
    for key, value in _field(d, "coeffs").items():
        mask = int(key)
        if not 0 <= mask < (1 << n):
            raise FormatError(f"blade mask {mask} out of range for Cl({n})")
        c[mask] = float(value)
    a = CliffordElement(n, c)
    if "parity" in d:
        return VersorElement(a, d["parity"], int(d.get("factor_count", 0 if d["parity"] == "even" else 1)))
    return a

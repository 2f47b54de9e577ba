"""Declarative spec documents: named objects plus a list of checks.

A document is one JSON object with an "objects" map and a "checks" list.
Every scalar is a string ("2", "-1/3"); no JSON float is ever read or
written.  Object blocks carry a "type" tag:

    algebra          field, dim, mult [[i,j,k,"c"],...], unit [..] or null
    coalgebra        field, dim, comult [[k,i,j,"c"],...], counit or null
    comodule         coalgebra (ref), dim, coaction [[t,s,k,"c"],...]
    functional       field, sequence ["1","1","2",...]
    quiver           vertices [...], arrows [[src,tgt],...]
    quiver-template  name ("line" | "ray" | "loop" | "star:<k>")
    poset            elements [...], relation [[a,b],...] (closure is taken)
    bialgebra        field, cayley [[..],..], inverses [..]

Checks reference objects by name: {"check": ..., "refs": [...], "params": {}}.
Unknown check names raise UnknownCheck, dangling refs UnresolvedReference,
malformed JSON SpecParseError with line and column.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from random import Random

from .algebra import FinAlgebra
from .coalgebra import FinCoalgebra, dual_unitalization_iso
from .combinat import (
    Poset,
    Quiver,
    make_template,
    verify_incidencedual_iso,
    verify_pathdual_iso,
    FiniteTemplate,
    semiperfect_check,
)
from .comodule import FinComodule, lattice_agreement_check
from .errors import (
    SpecParseError,
    UnknownCheck,
    UnresolvedReference,
)
from .fields import field_from_name
from .finite_dual import (
    LinRec,
    linrec_analyze,
    membership_bounded,
    polynomial_algebra,
    seq_functional,
    unital_dual_compat,
    Member,
)
from .reflexivity import (
    decompose_injectives,
    hopf_selfdual_check,
    left_coreflexive_check,
)
from .report import matrix_json, parse_scalar, scalar_str


@dataclass(frozen=True)
class SequenceFunctional:
    """A stored scalar sequence viewed as a functional on K[X]."""

    field: object
    sequence: tuple

    def functional(self):
        return seq_functional(self.field, list(self.sequence))

    def carrier(self):
        return polynomial_algebra(self.field, len(self.sequence) - 1)


@dataclass(frozen=True)
class Check:
    name: str
    refs: tuple
    params: dict


@dataclass(frozen=True)
class SpecDocument:
    objects: dict  # name -> (kind, object)
    checks: tuple

    def resolve(self, name: str):
        if name not in self.objects:
            raise UnresolvedReference(f"no object named {name!r}")
        return self.objects[name][1]


def _field_of(block: dict):
    return field_from_name(str(block.get("field", "q")))


def _build_algebra(block, doc_objects):
    F = _field_of(block)
    dim = int(block["dim"])
    mult: dict = {}
    for row in block.get("mult", []):
        i, j, k, c = row
        mult.setdefault((int(i), int(j)), {})[int(k)] = parse_scalar(F, c)
    unit = block.get("unit")
    if unit is not None:
        unit = tuple(parse_scalar(F, c) for c in unit)
    return FinAlgebra(F, dim, mult, unit)


def _build_coalgebra(block, doc_objects):
    F = _field_of(block)
    dim = int(block["dim"])
    comult: dict = {}
    for row in block.get("comult", []):
        k, i, j, c = row
        comult.setdefault(int(k), {})[(int(i), int(j))] = parse_scalar(F, c)
    counit = block.get("counit")
    if counit is not None:
        counit = tuple(parse_scalar(F, c) for c in counit)
    return FinCoalgebra(F, dim, comult, counit)


def _build_comodule(block, doc_objects):
    ref = str(block["coalgebra"])
    if ref not in doc_objects:
        raise UnresolvedReference(f"no object named {ref!r}")
    kind, C = doc_objects[ref]
    if kind != "coalgebra":
        raise UnresolvedReference(f"object {ref!r} is a {kind}, not a coalgebra")
    F = C.field
    dim = int(block["dim"])
    coaction: dict = {}
    for row in block.get("coaction", []):
        t, s, k, c = row
        coaction.setdefault(int(t), {})[(int(s), int(k))] = parse_scalar(F, c)
    return FinComodule(C, dim, coaction)


def _build_functional(block, doc_objects):
    F = _field_of(block)
    seq = tuple(parse_scalar(F, c) for c in block["sequence"])
    if not seq:
        raise SpecParseError("functional needs a nonempty sequence")
    return SequenceFunctional(F, seq)


def _build_quiver(block, doc_objects):
    vertices = tuple(block["vertices"])
    arrows = tuple((a[0], a[1]) for a in block.get("arrows", []))
    return Quiver(vertices, arrows)


def _build_template(block, doc_objects):
    name = str(block["name"])
    if name == "finite":
        ref = str(block["quiver"])
        if ref not in doc_objects:
            raise UnresolvedReference(f"no object named {ref!r}")
        return FiniteTemplate(doc_objects[ref][1])
    return make_template(name)


def _build_poset(block, doc_objects):
    elements = tuple(block["elements"])
    strict = {(a, b) for a, b in block.get("relation", []) if a != b}
    changed = True
    while changed:
        changed = False
        for (a, b) in list(strict):
            for (c, d) in list(strict):
                if b == c and (a, d) not in strict:
                    strict.add((a, d))
                    changed = True
    rel = frozenset(strict) | frozenset((e, e) for e in elements)
    return Poset(elements, rel)


def _build_bialgebra(block, doc_objects):
    from .finite_dual import group_bialgebra

    F = _field_of(block)
    cayley = [[int(v) for v in row] for row in block["cayley"]]
    inverses = [int(v) for v in block["inverses"]]
    return group_bialgebra(F, cayley, inverses)


_BUILDERS = {
    "algebra": _build_algebra,
    "coalgebra": _build_coalgebra,
    "comodule": _build_comodule,
    "functional": _build_functional,
    "quiver": _build_quiver,
    "quiver-template": _build_template,
    "poset": _build_poset,
    "bialgebra": _build_bialgebra,
}

_REFERENCING = {"comodule", "quiver-template"}


def parse_spec(text: str) -> SpecDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecParseError(f"invalid JSON: {e.msg}", line=e.lineno,
                             col=e.colno) from e
    if not isinstance(raw, dict):
        raise SpecParseError("document root must be a JSON object")
    raw_objects = raw.get("objects", {})
    if not isinstance(raw_objects, dict):
        raise SpecParseError('"objects" must be a map')
    objects: dict = {}
    deferred = []
    for name, block in raw_objects.items():
        if not isinstance(block, dict) or "type" not in block:
            raise SpecParseError(f"object {name!r} needs a type tag")
        kind = str(block["type"])
        if kind not in _BUILDERS:
            raise SpecParseError(f"object {name!r} has unknown type {kind!r}")
        if kind in _REFERENCING:
            deferred.append((name, kind, block))
        else:
            objects[name] = (kind, _build_object(kind, block, objects))
    for name, kind, block in deferred:
        objects[name] = (kind, _build_object(kind, block, objects))
    raw_checks = raw.get("checks", [])
    if not isinstance(raw_checks, list):
        raise SpecParseError('"checks" must be a list')
    checks = []
    for n, item in enumerate(raw_checks):
        if not isinstance(item, dict) or "check" not in item:
            raise SpecParseError(f"check #{n} needs a check name")
        name = str(item["check"])
        if name not in CHECKS:
            raise UnknownCheck(f"unknown check {name!r}")
        refs = tuple(str(r) for r in item.get("refs", []))
        params = dict(item.get("params", {}))
        checks.append(Check(name, refs, params))
    doc = SpecDocument(objects, tuple(checks))
    for check in doc.checks:
        for r in check.refs:
            doc.resolve(r)
    return doc


def _build_object(kind, block, objects):
    try:
        return _BUILDERS[kind](block, objects)
    except SpecParseError:
        raise
    except (KeyError, TypeError, IndexError, ValueError) as e:
        raise SpecParseError(f"malformed {kind} block: {e!r}") from e


# ---------------------------------------------------------------------------
# check registry: name -> fn(objs, params, rng) -> (ok, details)

def _check_pathdual(objs, params, rng):
    Q = objs[0]
    F = field_from_name(str(params.get("field", "q")))
    max_len = params.get("max_len")
    alg, co = verify_pathdual_iso(F, Q, None if max_len is None else int(max_len))
    return True, {
        "dim": alg.source.dim,
        "algebra_to_dual_matrix": matrix_json(alg.matrix),
        "coalgebra_to_dual_matrix": matrix_json(co.matrix),
    }


def _check_incidencedual(objs, params, rng):
    P = objs[0]
    F = field_from_name(str(params.get("field", "q")))
    alg, co = verify_incidencedual_iso(F, P)
    return True, {"dim": alg.source.dim,
                  "algebra_to_dual_matrix": matrix_json(alg.matrix)}


def _check_semiperfect(objs, params, rng):
    template = objs[0]
    side = str(params.get("side", "right"))
    radius = int(params.get("radius", 3))
    bound = int(params.get("bound", 64))
    rep = semiperfect_check(template, side, radius, bound)
    expect = str(params.get("expect", "holds"))
    details = {"status": rep.status, "side": rep.side, "radius": rep.radius,
               "bound": rep.bound}
    if rep.vertex is not None:
        details["vertex"] = str(rep.vertex)
        details["count"] = rep.count
    if rep.per_vertex is not None:
        details["per_vertex"] = [[str(v), c] for v, c in rep.per_vertex]
    return rep.status == expect, details


def _check_coreflexive(objs, params, rng):
    C = objs[0]
    rep = left_coreflexive_check(C, seed=rng.randrange(1 << 30))
    return rep.bijective, {
        "bijective": rep.bijective,
        "kernel_rank": rep.kernel_rank,
        "source_dim": rep.source_dim,
        "target_dim": rep.target_dim,
    }


def _check_unital_dual_compat(objs, params, rng):
    A = objs[0]
    iso = unital_dual_compat(A)
    return True, {"dim": iso.source.dim}


def _check_dual_unitalization(objs, params, rng):
    C = objs[0]
    iso = dual_unitalization_iso(C)
    return True, {"dim": iso.source.dim}


def _check_decompose_injectives(objs, params, rng):
    C = objs[0]
    side = str(params.get("side", "right"))
    dec = decompose_injectives(C, side)
    return True, {"side": side, "block_dims": list(dec.block_dims),
                  "certificates": list(dec.certificates)}


def _check_hopf_selfdual(objs, params, rng):
    H = objs[0]
    out = hopf_selfdual_check(H)
    return True, {"block_dims": list(out["block_dims"])}


def _check_lattice_agreement(objs, params, rng):
    M = objs[0]
    samples = int(params.get("samples", 50))
    out = lattice_agreement_check(M, seed=rng.randrange(1 << 30),
                                  samples=samples)
    return out["agree"] == out["checked"], {
        "checked": out["checked"], "agree": out["agree"],
        "exhaustive": out["exhaustive"],
    }


def _check_linrec(objs, params, rng):
    holder = objs[0]
    F = holder.field
    bound = int(params.get("rank_bound", 8))
    out = linrec_analyze(F, list(holder.sequence), bound)
    if isinstance(out, LinRec):
        details = {"order": out.order,
                   "poly": [scalar_str(F, c) for c in out.poly]}
        expect = params.get("expect_order")
        ok = True if expect is None else out.order == int(expect)
        return ok, details
    details = {"not_within": out.dim, "level": out.level}
    return params.get("expect_order") is None, details


def _check_membership(objs, params, rng):
    holder = objs[0]
    bound = int(params.get("bound", 4))
    out = membership_bounded(holder.carrier(), holder.functional(), bound)
    if isinstance(out, Member):
        return True, {"member": True, "dim": out.dim,
                      "level_dims": list(out.level_dims)}
    return False, {"member": False, "dim": out.dim, "level": out.level}


CHECKS = {
    "verify_pathdual_iso": _check_pathdual,
    "verify_incidencedual_iso": _check_incidencedual,
    "semiperfect": _check_semiperfect,
    "coreflexive": _check_coreflexive,
    "unital_dual_compat": _check_unital_dual_compat,
    "dual_unitalization_iso": _check_dual_unitalization,
    "decompose_injectives": _check_decompose_injectives,
    "hopf_selfdual": _check_hopf_selfdual,
    "lattice_agreement": _check_lattice_agreement,
    "linrec": _check_linrec,
    "membership": _check_membership,
}


def run_check(doc: SpecDocument, check: Check, rng: Random):
    objs = [doc.resolve(r) for r in check.refs]
    return CHECKS[check.name](objs, check.params, rng)


# ---------------------------------------------------------------------------
# serializers back to spec blocks, so CLI transformations round-trip

def algebra_block(A: FinAlgebra) -> dict:
    F = A.field
    mult = []
    for (i, j), terms in sorted(A.mult.items()):
        for k, c in sorted(terms.items()):
            mult.append([i, j, k, scalar_str(F, c)])
    unit = None
    if A.unit is not None:
        unit = [scalar_str(F, c) for c in A.unit]
    return {"type": "algebra", "field": F.name(), "dim": A.dim,
            "mult": mult, "unit": unit}


def coalgebra_block(C: FinCoalgebra) -> dict:
    F = C.field
    comult = []
    for k in sorted(C.comult):
        for (i, j), c in sorted(C.comult[k].items()):
            comult.append([k, i, j, scalar_str(F, c)])
    counit = None
    if C.counit is not None:
        counit = [scalar_str(F, c) for c in C.counit]
    return {"type": "coalgebra", "field": F.name(), "dim": C.dim,
            "comult": comult, "counit": counit}

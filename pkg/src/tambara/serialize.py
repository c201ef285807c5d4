"""Canonical JSON / DOT / text forms of every artifact, and loaders back.

Every JSON artifact is a dict carrying a ``"kind"`` key. ``emit`` is
deterministic (sorted keys, fixed indentation, trailing newline) and
``load_artifact`` inverts it, so ``emit(load(emit(x))) == emit(x)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Mapping

from . import frames as fr
from .frames import FiniteFrame
from .functor import AxiomReport, TambaraFunctor, TambaraMorphism
from .groups import FiniteGroup
from .ideals import TambaraIdeal, make_ideal
from .rings import FiniteCommRing
from .spectrum import NakaokaSpectrum, RadIdFrame, SpectralReport

FORMATS = ("json", "dot", "text")


class SerializationError(ValueError):
    pass


def _scalar(v: Any) -> bool:
    return not isinstance(v, (dict, list, tuple))


def _fmt(obj: Any, pad: str) -> str:
    inner = pad + " "
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k), ensure_ascii=False)}: {_fmt(obj[k], inner)}"
                 for k in sorted(obj, key=str)]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if all(_scalar(v) for v in obj):
            return json.dumps(list(obj), ensure_ascii=False, separators=(",", ":"))
        return "[\n" + ",\n".join(inner + _fmt(v, inner) for v in obj) + "\n" + pad + "]"
    return json.dumps(obj, ensure_ascii=False)


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, one-space indent, scalar arrays on one line."""
    return _fmt(obj, "") + "\n"


def _key(a: int, b: int) -> str:
    return f"{a},{b}"


def _unkey(s: str) -> tuple[int, int]:
    try:
        a, b = s.split(",")
        return int(a), int(b)
    except ValueError:
        raise SerializationError(f"bad table key {s!r}; expected 'i,j'") from None


def _ideal_levels(levels) -> dict[str, list[int]]:
    return {str(h): sorted(lv) for h, lv in enumerate(levels)}


# -- loaded-only carriers ----------------------------------------------------

@dataclass
class FrameArtifact:
    """A finite frame with JSON-able element labels (ideal level dicts)."""
    kind: str
    functor: str | None
    labels: list
    frame: FiniteFrame


@dataclass
class SpectrumArtifact:
    functor: str
    primes: list[dict]
    opens: list[list[int]]
    basis: list[dict]


# -- to JSON -----------------------------------------------------------------

def group_json(g: FiniteGroup) -> dict:
    return {"kind": "group", "name": g.name, "labels": list(g.labels),
            "table": [list(r) for r in g.mul]}


def ring_json(r: FiniteCommRing) -> dict:
    return {"kind": "ring", "name": r.name, "labels": list(r.labels),
            "add": [list(x) for x in r.add], "mul": [list(x) for x in r.mul]}


def functor_json(t: TambaraFunctor) -> dict:
    tab = lambda d: {_key(*k): list(v) for k, v in d.items()}
    return {"kind": "functor", "name": t.name, "group": group_json(t.group),
            "levels": [ring_json(r) for r in t.levels],
            "res": tab(t.res), "tr": tab(t.tr), "nm": tab(t.nm), "conj": tab(t.conj)}


def ideal_json(i: TambaraIdeal) -> dict:
    return {"kind": "ideal", "functor": i.functor.name, "levels": _ideal_levels(i.levels)}


def morphism_json(m: TambaraMorphism) -> dict:
    return {"kind": "morphism", "source": m.source.name, "target": m.target.name,
            "maps": [list(p) for p in m.phi]}


def _frame_payload(kind: str, functor: str | None, labels: list, l: FiniteFrame) -> dict:
    pts = fr.meet_primes(l)
    space = fr.point_space(l)
    return {"kind": kind, "functor": functor, "elements": labels,
            "leq": [[int(v) for v in row] for row in l.leq],
            "points": [p.meet_prime_index for p in pts],
            "opens": sorted(sorted(o) for o in space.opens),
            "hasse": [list(e) for e in l.covers]}


def frame_json(f: RadIdFrame | FrameArtifact | FiniteFrame) -> dict:
    if isinstance(f, RadIdFrame):
        return _frame_payload("radid_frame", f.functor.name,
                              [_ideal_levels(i.levels) for i in f.ideals], f.frame)
    if isinstance(f, FrameArtifact):
        return _frame_payload(f.kind, f.functor, f.labels, f.frame)
    return _frame_payload("frame", None, [str(e) for e in f.elements], f)


def spectrum_json(s: NakaokaSpectrum | SpectrumArtifact) -> dict:
    if isinstance(s, SpectrumArtifact):
        return {"kind": "spectrum", "functor": s.functor, "primes": s.primes,
                "opens": s.opens, "basis": s.basis}
    return {"kind": "spectrum", "functor": s.functor.name,
            "primes": [_ideal_levels(p.levels) for p in s.primes],
            "opens": sorted(sorted(o) for o in s.topology.opens),
            "basis": sorted(({"open": sorted(o), "generators": [list(g) for g in gens]}
                             for o, gens in s.basis_provenance.items()),
                            key=lambda d: (len(d["open"]), d["open"]))}


def to_json(obj: Any) -> dict:
    if isinstance(obj, dict):
        if "kind" not in obj:
            raise SerializationError("raw dict artifacts need a 'kind' key")
        return obj
    if isinstance(obj, FiniteGroup):
        return group_json(obj)
    if isinstance(obj, FiniteCommRing):
        return ring_json(obj)
    if isinstance(obj, TambaraFunctor):
        return functor_json(obj)
    if isinstance(obj, TambaraIdeal):
        return ideal_json(obj)
    if isinstance(obj, TambaraMorphism):
        return morphism_json(obj)
    if isinstance(obj, (RadIdFrame, FrameArtifact, FiniteFrame)):
        return frame_json(obj)
    if isinstance(obj, (NakaokaSpectrum, SpectrumArtifact)):
        return spectrum_json(obj)
    if isinstance(obj, SpectralReport):
        return {"kind": "spectral_report"} | obj.as_dict()
    if isinstance(obj, AxiomReport):
        return {"kind": "axiom_report"} | obj.as_dict()
    raise SerializationError(f"no JSON form for {type(obj).__name__}")


# -- from JSON ---------------------------------------------------------------

def _need(d: Mapping, *keys: str) -> None:
    missing = [k for k in keys if k not in d]
    if missing:
        raise SerializationError(f"{d.get('kind', 'artifact')} is missing {missing}")


def group_from_json(d: Mapping) -> FiniteGroup:
    _need(d, "table")
    return FiniteGroup(d["table"], name=d.get("name", "G"), labels=d.get("labels"))


def ring_from_json(d: Mapping) -> FiniteCommRing:
    _need(d, "add", "mul")
    return FiniteCommRing(d["add"], d["mul"], name=d.get("name", "R"), labels=d.get("labels"))


def functor_from_json(d: Mapping, group: FiniteGroup | None = None,
                      levels: list[FiniteCommRing] | None = None, name: str | None = None) -> TambaraFunctor:
    _need(d, "res", "tr", "nm", "conj")
    g = group or group_from_json(d["group"])
    lv = levels or [ring_from_json(r) for r in d["levels"]]
    tab = lambda k: {_unkey(s): tuple(v) for s, v in d[k].items()}
    t = TambaraFunctor(g, lv, tab("res"), tab("tr"), tab("nm"), tab("conj"),
                       name=name or d.get("name", "T"), builtin=False)
    errs = t.shape_errors()
    if errs:
        raise SerializationError(f"functor {t.name}: {errs[0]}")
    return t


def ideal_from_json(d: Mapping, functor: TambaraFunctor) -> TambaraIdeal:
    _need(d, "levels")
    levels = [d["levels"].get(str(h), []) for h in range(functor.n_sub)]
    return make_ideal(functor, levels)


def morphism_from_json(d: Mapping, source: TambaraFunctor, target: TambaraFunctor) -> TambaraMorphism:
    _need(d, "maps")
    maps = d["maps"]
    if len(maps) != source.n_sub or any(
            len(m) != source.levels[h].size or any(not 0 <= v < target.levels[h].size for v in m)
            for h, m in enumerate(maps)):
        raise SerializationError(f"morphism {source.name} -> {target.name} has wrong shape")
    return TambaraMorphism(source, target, maps)


def load_artifact(d: Mapping, functors: Mapping[str, TambaraFunctor] | None = None) -> Any:
    """Rebuild an object from its JSON dict; ideals and morphisms need ``functors``."""
    kind = d.get("kind")
    functors = functors or {}

    def ref(name):
        if name not in functors:
            raise SerializationError(f"{kind} refers to unknown functor {name!r}")
        return functors[name]

    if kind == "group":
        return group_from_json(d)
    if kind == "ring":
        return ring_from_json(d)
    if kind == "functor":
        return functor_from_json(d)
    if kind == "ideal":
        return ideal_from_json(d, ref(d.get("functor")))
    if kind == "morphism":
        return morphism_from_json(d, ref(d.get("source")), ref(d.get("target")))
    if kind in ("frame", "radid_frame"):
        _need(d, "elements", "leq")
        return FrameArtifact(kind, d.get("functor"), list(d["elements"]),
                             FiniteFrame(list(range(len(d["elements"]))), d["leq"]))
    if kind == "spectrum":
        _need(d, "functor", "primes", "opens", "basis")
        return SpectrumArtifact(d["functor"], list(d["primes"]), [list(o) for o in d["opens"]],
                                list(d["basis"]))
    if kind in ("spectral_report", "axiom_report", "run_report", "ideal_list", "map_report"):
        return dict(d)
    raise SerializationError(f"unknown artifact kind {kind!r}")


def loads(text: str, functors: Mapping[str, TambaraFunctor] | None = None) -> Any:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise SerializationError(f"JSON parse error at line {e.lineno}, column {e.colno}: {e.msg}") from None
    return load_artifact(d, functors)


# -- DOT and text ------------------------------------------------------------

def _ideal_label(levels: Mapping[str, list[int]]) -> str:
    return " | ".join("{" + ",".join(map(str, levels[k])) + "}" for k in sorted(levels, key=int))


def frame_dot(d: dict) -> str:
    """Hasse diagram, bottom to top, nodes in canonical element order."""
    name = d.get("functor") or "frame"
    lines = [f'digraph "{name}" {{', "  rankdir=BT;", "  node [shape=box];"]
    points = set(d["points"])
    for k, e in enumerate(d["elements"]):
        label = _ideal_label(e) if isinstance(e, dict) else str(e)
        style = ", style=bold" if k in points else ""
        lines.append(f'  n{k} [label="{k}: {label}"{style}];')
    for a, b in d["hasse"]:
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def spectrum_dot(d: dict) -> str:
    """Specialization order: an edge P -> Q when Q lies in the closure of P."""
    prime_sets = [{int(h): set(v) for h, v in p.items()} for p in d["primes"]]
    n = len(prime_sets)
    below = lambda a, b: all(prime_sets[a][h] <= prime_sets[b][h] for h in prime_sets[a])
    lines = [f'digraph "Spec {d["functor"]}" {{', "  rankdir=BT;"]
    for k, p in enumerate(d["primes"]):
        lines.append(f'  p{k} [label="P{k}: {_ideal_label(p)}"];')
    for a in range(n):
        for b in range(n):
            if a != b and below(a, b) and not any(
                    c not in (a, b) and below(a, c) and below(c, b) for c in range(n)):
                lines.append(f"  p{a} -> p{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_text(d: dict) -> str:
    kind = d.get("kind")
    out = [f"kind: {kind}"]
    if kind in ("frame", "radid_frame"):
        out.append(f"functor: {d.get('functor')}")
        out.append(f"elements: {len(d['elements'])}, points: {len(d['points'])}")
        for k, e in enumerate(d["elements"]):
            mark = "*" if k in d["points"] else " "
            out.append(f" {mark}{k}: {_ideal_label(e) if isinstance(e, dict) else e}")
    elif kind == "spectrum":
        out.append(f"functor: {d['functor']}")
        out.append(f"points: {len(d['primes'])}")
        for k, p in enumerate(d["primes"]):
            out.append(f"  P{k}: {_ideal_label(p)}")
        out.append(f"opens: {d['opens']}")
    elif kind in ("spectral_report", "axiom_report", "run_report", "map_report", "ideal_list"):
        out.append(f"ok: {d.get('ok')}")
        out.extend(_flatten_status(d))
    else:
        out.append(f"name: {d.get('name', d.get('functor'))}")
    return "\n".join(out) + "\n"


def _flatten_status(d: Any, path: str = "") -> list[str]:
    lines = []
    if isinstance(d, dict):
        if "ok" in d and path:
            lines.append(f"  {'PASS' if d['ok'] else 'FAIL'} {path}")
        elif "status" in d and path:
            lines.append(f"  {d['status'].upper()} {path}")
        for k in sorted(d):
            if isinstance(d[k], dict):
                lines.extend(_flatten_status(d[k], f"{path}.{k}" if path else k))
            elif k == "axioms" and isinstance(d[k], list):
                for r in d[k]:
                    name = f"{path}.{r['axiom']}" if path else r["axiom"]
                    lines.append(f"  {r['status'].upper()} {name} ({r['checked']} checked)")
    return lines


def emit(obj: Any, fmt: str = "json") -> str:
    d = to_json(obj)
    if fmt == "json":
        return dumps(d)
    if fmt == "text":
        return to_text(d)
    if fmt == "dot":
        if d["kind"] in ("frame", "radid_frame"):
            return frame_dot(d)
        if d["kind"] == "spectrum":
            return spectrum_dot(d)
        raise SerializationError(f"no DOT form for {d['kind']}")
    raise SerializationError(f"unknown format {fmt!r}; expected one of {FORMATS}")

"""Workspace documents, the constructor mini-language, and verification suites.

A workspace is one JSON object with optional sections ``groups``, ``rings``,
``functors``, ``ideals``, ``morphisms`` and ``jobs``. Names resolve lazily and
recursively (a functor may be ``product a b`` of two others), with cycles
reported. Without a workspace the built-in fixture set is used.
"""
from __future__ import annotations

import hashlib
import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Mapping

from . import serialize as ser
from .functor import (TambaraError, TambaraFunctor, TambaraMorphism, burnside_c2_mod, check_axioms,
                      constant_functor, fixed_point_functor, frobenius_action, mod_map_morphism,
                      product_functor, product_projections, quotient_functor, reduction)
from .groups import FiniteGroup, GroupError, builtin_group
from .ideals import (enumerate_ideals, generate_ideal, ideal_intersection, ideal_product,
                     make_ideal, prime_ideals, prime_ideals_slow, radical,
                     radical_by_definition, radical_by_primes)
from .rings import (FiniteCommRing, GaloisField, RingError, construct_gf, construct_poly_quot,
                    construct_zmod, is_ring_prime, parse_relation)
from .spectrum import SpectralReport, closed_immersion, crt_connectedness, full_report, non_ring_prime_levels, spectral_map

SUITES = ("axioms", "ideals", "frame", "spectrum", "functoriality", "full")


class WorkspaceError(ValueError):
    pass


# -- built-in fixture set ------------------------------------------------------

BUILTIN_DOC: dict = {
    "functors": {
        "z4-trivial": "constant zmod 4 over trivial",
        "z6-trivial": "constant zmod 6 over trivial",
        "z12-trivial": "constant zmod 12 over trivial",
        "f2-c2": "constant zmod 2 over C2",
        "f3-c2": "constant zmod 3 over C2",
        "z4-c2": "constant zmod 4 over C2",
        "z6-c2": "constant zmod 6 over C2",
        "gf4-c2": "fixedpoint gf 4 over C2 frobenius",
        "burnside3": "burnside-c2-mod 3",
        "burnside9": "burnside-c2-mod 9",
        "f2xf3-c2": "product f2-c2 f3-c2",
        "z9-c3": "constant zmod 9 over C3",
        "f2-s3": "constant zmod 2 over S3",
    },
    "ideals": {
        "z6-c2.(2)": {"functor": "z6-c2", "generators": [[1, 2]]},
        "z6-c2.(3)": {"functor": "z6-c2", "generators": [[1, 3]]},
    },
    "morphisms": {
        "z4-c2.reduction": {"construct": "reduction", "source": "z4-c2"},
        "burnside9.reduction": {"construct": "reduction", "source": "burnside9"},
        "z6-c2.mod2": {"construct": "mod", "source": "z6-c2", "target": "f2-c2"},
        "z6-c2.mod3": {"construct": "mod", "source": "z6-c2", "target": "f3-c2"},
        "f2xf3-c2.pr1": {"construct": "projection", "source": "f2xf3-c2", "index": 0},
        "f2xf3-c2.pr2": {"construct": "projection", "source": "f2xf3-c2", "index": 1},
        "z6-c2.quotient(2)": {"construct": "quotient", "source": "z6-c2", "ideal": "z6-c2.(2)"},
        "z6-c2.quotient(3)": {"construct": "quotient", "source": "z6-c2", "ideal": "z6-c2.(3)"},
    },
    "scope": ["z4-trivial", "z6-trivial", "z12-trivial", "f2-c2", "z4-c2", "z6-c2", "gf4-c2",
              "burnside3", "burnside9", "f2xf3-c2", "z9-c3", "f2-s3"],
}


# -- mini-language -----------------------------------------------------------

def parse_ring_spec(words: list[str], named: Callable[[str], FiniteCommRing] | None = None) -> FiniteCommRing:
    """``zmod 6``, ``gf 4``, ``polyquot zmod 4 t2=2t`` or a ring name."""
    if not words:
        raise WorkspaceError("empty ring specification")
    head = words[0]
    try:
        if head == "zmod" and len(words) == 2:
            return construct_zmod(int(words[1]))
        if head == "gf" and len(words) == 2:
            return construct_gf(int(words[1]))
        if head == "polyquot" and len(words) >= 3:
            base = parse_ring_spec(words[1:-1], named)
            const, lin = parse_relation(base, words[-1])
            return construct_poly_quot(base, const, lin)
    except ValueError as e:
        raise WorkspaceError(f"ring {' '.join(words)!r}: {e}") from None
    if len(words) == 1 and named is not None:
        return named(head)
    raise WorkspaceError(f"cannot parse ring specification {' '.join(words)!r}")


@dataclass
class Workspace:
    doc: dict
    base: Path = Path(".")
    _groups: dict = field(default_factory=dict)
    _rings: dict = field(default_factory=dict)
    _functors: dict = field(default_factory=dict)
    _ideals: dict = field(default_factory=dict)
    _morphisms: dict = field(default_factory=dict)
    _products: dict = field(default_factory=dict)
    _busy: set = field(default_factory=set)

    # names ------------------------------------------------------------------
    def section(self, key: str) -> dict:
        return self.doc.get(key) or {}

    @property
    def functor_names(self) -> list[str]:
        return list(self.doc.get("scope") or self.section("functors"))

    @property
    def morphism_names(self) -> list[str]:
        return list(self.section("morphisms"))

    @property
    def jobs(self) -> list[dict]:
        return list(self.doc.get("jobs") or [])

    def _guard(self, kind: str, name: str):
        key = (kind, name)
        if key in self._busy:
            raise WorkspaceError(f"cyclic reference through {kind} {name!r}")
        self._busy.add(key)

    # resolution -------------------------------------------------------------
    def group(self, name: str) -> FiniteGroup:
        if name in self._groups:
            return self._groups[name]
        spec = self.section("groups").get(name)
        try:
            if spec is None:
                g = builtin_group(name)
            elif isinstance(spec, str):
                g = builtin_group(spec)
            else:
                g = FiniteGroup(spec["table"], name=name, labels=spec.get("labels"))
        except (GroupError, KeyError) as e:
            raise WorkspaceError(f"group {name!r}: {e}") from None
        self._groups[name] = g
        return g

    def ring(self, name: str) -> FiniteCommRing:
        if name in self._rings:
            return self._rings[name]
        spec = self.section("rings").get(name)
        if spec is None:
            raise WorkspaceError(f"unknown ring {name!r}")
        self._guard("ring", name)
        try:
            if isinstance(spec, str):
                r = parse_ring_spec(spec.split(), self.ring)
            else:
                r = FiniteCommRing(spec["add"], spec["mul"], name=name, labels=spec.get("labels"))
        except (RingError, KeyError) as e:
            raise WorkspaceError(f"ring {name!r}: {e}") from None
        finally:
            self._busy.discard(("ring", name))
        self._rings[name] = r
        return r

    def functor(self, name: str) -> TambaraFunctor:
        if name in self._functors:
            return self._functors[name]
        spec = self.section("functors").get(name)
        if spec is None:
            raise WorkspaceError(f"unknown functor {name!r}")
        self._guard("functor", name)
        try:
            t = self._build_functor(name, spec)
        except (TambaraError, RingError, GroupError, ser.SerializationError) as e:
            raise WorkspaceError(f"functor {name!r}: {e}") from None
        finally:
            self._busy.discard(("functor", name))
        t.name = name
        self._functors[name] = t
        return t

    def _build_functor(self, name: str, spec: Any) -> TambaraFunctor:
        if isinstance(spec, dict):
            g = self.group(spec.get("group", "trivial"))
            levels = [self.ring(r) if isinstance(r, str) else ser.ring_from_json(r)
                      for r in spec.get("levels", [])]
            return ser.functor_from_json(spec, group=g, levels=levels, name=name)
        if not isinstance(spec, str):
            raise WorkspaceError("functor spec must be a string or an object")
        return self.parse_functor(spec)

    def parse_functor(self, text: str) -> TambaraFunctor:
        words = text.split()
        if not words:
            raise WorkspaceError("empty functor specification")
        head, rest = words[0], words[1:]
        if head in ("constant", "fixedpoint"):
            if "over" not in rest:
                raise WorkspaceError(f"{text!r}: expected '... over <group>'")
            k = rest.index("over")
            ring = parse_ring_spec(rest[:k], self.ring)
            tail = rest[k + 1:]
            if not tail:
                raise WorkspaceError(f"{text!r}: missing group after 'over'")
            g = self.group(tail[0])
            if head == "constant":
                if len(tail) != 1:
                    raise WorkspaceError(f"{text!r}: unexpected words {tail[1:]}")
                return constant_functor(ring, g)
            if tail[1:] != ["frobenius"] or not isinstance(ring, GaloisField):
                raise WorkspaceError(f"{text!r}: only 'fixedpoint gf q over Cn frobenius' is supported")
            return fixed_point_functor(ring, g, frobenius_action(ring, g))
        if head == "burnside-c2-mod" and len(rest) == 1 and rest[0].isdigit():
            return burnside_c2_mod(int(rest[0]))
        if head == "product" and len(rest) == 2:
            a, b = self.functor(rest[0]), self.functor(rest[1])
            p = product_functor(a, b)
            self._products[id(p)] = (a, b)
            return p
        if head == "quotient" and len(rest) == 3 and rest[1] == "by":
            return quotient_functor(self.functor(rest[0]), self.ideal(rest[2]))[0]
        if head == "reduction" and len(rest) == 1:
            return reduction(self.functor(rest[0]))[0]
        raise WorkspaceError(f"cannot parse functor specification {text!r}")

    def ideal(self, name: str):
        if name in self._ideals:
            return self._ideals[name]
        spec = self.section("ideals").get(name)
        if spec is None or "functor" not in spec:
            raise WorkspaceError(f"unknown or malformed ideal {name!r}")
        t = self.functor(spec["functor"])
        try:
            if "levels" in spec:
                i = make_ideal(t, [spec["levels"].get(str(h), []) for h in range(t.n_sub)])
            else:
                gens = [tuple(g) for g in spec.get("generators", [])]
                for h, x in gens:
                    if not (0 <= h < t.n_sub and 0 <= x < t.levels[h].size):
                        raise WorkspaceError(f"ideal {name!r}: generator {[h, x]} out of range")
                i = generate_ideal(t, gens)
        except ValueError as e:
            raise WorkspaceError(f"ideal {name!r}: {e}") from None
        self._ideals[name] = i
        return i

    def morphism(self, name: str) -> TambaraMorphism:
        if name in self._morphisms:
            return self._morphisms[name]
        spec = self.section("morphisms").get(name)
        if spec is None or "source" not in spec:
            raise WorkspaceError(f"unknown or malformed morphism {name!r}")
        src = self.functor(spec["source"])
        how = spec.get("construct")
        try:
            if how is None:
                m = ser.morphism_from_json(spec, src, self.functor(spec["target"]))
            elif how == "reduction":
                m = reduction(src)[1]
            elif how == "quotient":
                m = quotient_functor(src, self.ideal(spec["ideal"]))[1]
            elif how == "mod":
                m = mod_map_morphism(src, self.functor(spec["target"]))
            elif how == "projection":
                if id(src) not in self._products:
                    raise WorkspaceError(f"morphism {name!r}: {spec['source']!r} is not a 'product a b'")
                a, b = self._products[id(src)]
                m = product_projections(src, a, b)[int(spec.get("index", 0))]
            else:
                raise WorkspaceError(f"morphism {name!r}: unknown construct {how!r}")
        except (TambaraError, ser.SerializationError, KeyError) as e:
            raise WorkspaceError(f"morphism {name!r}: {e}") from None
        self._morphisms[name] = m
        return m

    def resolve_all(self) -> None:
        for n in self.section("groups"):
            self.group(n)
        for n in self.section("rings"):
            self.ring(n)
        for n in self.section("functors"):
            self.functor(n)
        for n in self.section("ideals"):
            self.ideal(n)
        for n in self.section("morphisms"):
            self.morphism(n)
        for j in self.jobs:
            if j.get("verb") not in VERBS:
                raise WorkspaceError(f"job {j}: unknown verb {j.get('verb')!r}")

    def functor_or_expression(self, text: str) -> TambaraFunctor:
        if text in self.section("functors"):
            return self.functor(text)
        return self.parse_functor(text)


def builtin_workspace() -> Workspace:
    return Workspace(json.loads(json.dumps(BUILTIN_DOC)))


def parse_workspace(text: str, base: Path = Path(".")) -> Workspace:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise WorkspaceError(f"parse error at line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise WorkspaceError("workspace must be a JSON object")
    unknown = set(doc) - {"groups", "rings", "functors", "ideals", "morphisms", "jobs", "scope"}
    if unknown:
        raise WorkspaceError(f"unknown workspace sections {sorted(unknown)}")
    ws = Workspace(doc, base)
    ws.resolve_all()
    return ws


def load_workspace(path: str | Path) -> Workspace:
    p = Path(path)
    if not p.is_file():
        raise WorkspaceError(f"workspace file {str(p)!r} not found")
    return parse_workspace(p.read_text(encoding="utf-8"), p.parent)


# -- per-functor checks --------------------------------------------------------

def axioms_section(t: TambaraFunctor) -> dict:
    return check_axioms(t).as_dict()


def ideals_section(t: TambaraFunctor) -> dict:
    ideals = enumerate_ideals(t)
    rad = enumerate_ideals(t, radical_only=True)
    primes = prime_ideals(t)
    out: dict[str, Any] = {"counts": {"ideals": len(ideals), "radical": len(rad), "primes": len(primes)}}
    bad = next((ser._ideal_levels(i.levels) for i in ideals
                if not radical(i) == radical_by_definition(i) == radical_by_primes(i, primes)), None)
    out["radical_agreement"] = _sec(bad is None, bad)
    slow = prime_ideals_slow(t)
    out["prime_criterion_vs_definition"] = _sec(set(slow) == set(primes), len(slow))
    bad = None
    for i, j in itertools.combinations_with_replacement(ideals, 2):
        ij = ideal_product(i, j)
        if not ij <= ideal_intersection([i, j]) or radical(ij) != ideal_intersection([radical(i), radical(j)]):
            bad = [ser._ideal_levels(i.levels), ser._ideal_levels(j.levels)]
            break
    out["product_laws"] = _sec(bad is None, bad)
    out["non_ring_prime_levels"] = [[k, h] for k, p in enumerate(primes) for h in range(t.n_sub)
                                    if not is_ring_prime(t.levels[h], p.levels[h])]
    out["ok"] = all(v["ok"] for v in out.values() if isinstance(v, dict) and "ok" in v)
    return out


def _sec(ok: bool, witness: Any = None) -> dict:
    return {"ok": bool(ok)} | ({} if ok else {"witness": witness})


def frame_section(t: TambaraFunctor) -> tuple[dict, dict[str, str]]:
    f, s, rep = full_report(t)
    keep = {k: v for k, v in rep.sections.items() if k.startswith(("frame.", "spectral."))
            and not k.startswith("spectral.D_basis")}
    sub = SpectralReport(keep)
    arts = {f"{t.name}.frame.json": ser.emit(f, "json"), f"{t.name}.frame.dot": ser.emit(f, "dot")}
    return sub.as_dict() | {"size": f.frame.size}, arts


def spectrum_section(t: TambaraFunctor) -> tuple[dict, dict[str, str]]:
    f, s, rep = full_report(t)
    c = crt_connectedness(t)
    rep.merge(c.report, "connectedness.")
    d = rep.as_dict()
    d["points"] = len(s.primes)
    d["discrete"] = len(s.topology.opens) == 2 ** len(s.primes)
    d["connectedness"] = {k: v for k, v in c.as_dict().items() if k not in ("report",)}
    d["non_ring_prime_levels"] = [list(p) for p in non_ring_prime_levels(s)]
    arts = {f"{t.name}.frame.json": ser.emit(f, "json"), f"{t.name}.frame.dot": ser.emit(f, "dot"),
            f"{t.name}.spectrum.json": ser.emit(s, "json"), f"{t.name}.spectrum.dot": ser.emit(s, "dot")}
    return d, arts


def geometry_section(t: TambaraFunctor) -> dict:
    out = {}
    for k, i in enumerate(enumerate_ideals(t)):
        out[f"closed_immersion_{k}"] = closed_immersion(t, i).as_dict()
    red_map = spectral_map(reduction(t)[1])
    out["reduction"] = _sec(red_map.report.ok and red_map.is_frame_isomorphism and red_map.is_homeomorphism,
                            red_map.report.failures())
    out["ok"] = all(v["ok"] for v in out.values() if isinstance(v, dict))
    return out


def map_section(m: TambaraMorphism) -> dict:
    sm = spectral_map(m)
    d = sm.report.as_dict()
    d["frame_map"] = sm.frame_map
    d["point_map"] = sm.point_map
    d["frame_isomorphism"] = sm.is_frame_isomorphism
    d["homeomorphism"] = sm.is_homeomorphism
    return d


# -- suites --------------------------------------------------------------------

def run_functor_suite(ws: Workspace, suite: str, name: str) -> tuple[dict, dict[str, str]]:
    """One functor's share of a suite: (sections, artifacts)."""
    t = ws.functor_or_expression(name)
    out, arts = {}, {}
    if suite in ("axioms", "full"):
        out["axioms"] = axioms_section(t)
    if suite in ("ideals", "full"):
        out["ideals"] = ideals_section(t)
    if suite == "frame":
        out["frame"], arts = frame_section(t)
    if suite in ("spectrum", "full"):
        out["spectrum"], arts = spectrum_section(t)
    if suite == "full":
        out["geometry"] = geometry_section(t)
    out["ok"] = all(v.get("ok", False) for v in out.values() if isinstance(v, dict))
    return out, arts


def _worker(args):
    doc, suite, name, kind = args
    ws = Workspace(doc) if doc is not None else builtin_workspace()
    ws.resolve_all() if doc is not None else None
    if kind == "functor":
        return run_functor_suite(ws, suite, name)
    return map_section(ws.morphism(name)), {}


def _map_ordered(tasks: list, jobs: int) -> list:
    if jobs <= 1 or len(tasks) <= 1:
        return [_worker(a) for a in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(_worker, tasks))


def content_hash(report: dict, artifacts: Mapping[str, str]) -> str:
    h = hashlib.sha256()
    h.update(ser.dumps(report).encode())
    for k in sorted(artifacts):
        h.update(k.encode() + b"\0" + artifacts[k].encode() + b"\0")
    return h.hexdigest()


def run_suite(ws: Workspace | None, suite: str, functors: list[str] | None = None,
              morphisms: list[str] | None = None, jobs: int = 1,
              ) -> tuple[dict, dict[str, str]]:
    """Run a named suite; returns (run report, artifacts by file name)."""
    if suite not in SUITES:
        raise WorkspaceError(f"unknown suite {suite!r}; expected one of {list(SUITES)}")
    ws = ws or builtin_workspace()
    builtin = ws.doc.get("scope") == BUILTIN_DOC["scope"] and ws.section("functors") == BUILTIN_DOC["functors"]
    doc = None if builtin else ws.doc
    names = functors if functors is not None else ws.functor_names
    report: dict[str, Any] = {"kind": "run_report", "suite": suite, "functors": {}, "morphisms": {}}
    artifacts: dict[str, str] = {}
    if suite != "functoriality":
        results = _map_ordered([(doc, suite, n, "functor") for n in names], jobs)
        for n, (sec, arts) in zip(names, results):
            report["functors"][n] = sec
            artifacts.update(arts)
    if suite in ("functoriality", "full"):
        mnames = morphisms if morphisms is not None else [
            m for m in ws.morphism_names
            if functors is None or ws.section("morphisms")[m].get("source") in functors]
        if suite == "functoriality" and not mnames:
            raise WorkspaceError("suite 'functoriality' needs at least one morphism in scope")
        results = _map_ordered([(doc, suite, m, "morphism") for m in mnames], jobs)
        for m, (sec, _) in zip(mnames, results):
            report["morphisms"][m] = sec
    report["ok"] = all(v["ok"] for grp in ("functors", "morphisms") for v in report[grp].values())
    report["artifacts"] = {k: hashlib.sha256(v.encode()).hexdigest() for k, v in sorted(artifacts.items())}
    report["content_hash"] = content_hash(report, artifacts)
    return report, artifacts


VERBS = ("check", "ideals", "spectrum", "frame", "map", "suite", "run")

"""Finite intensional models with rigid individuals and attitude sources.

A model fixes one universe of individuals shared by every world, gives each
predicate a per-world extension, and attaches propositional contents (sets of
worlds) to informational individuals such as reports, plans and believers.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping

SORTS = ("communication", "plan", "belief-holder")


class ModelError(Exception):
    """Malformed model declaration."""


class UnknownSource(ModelError, KeyError):
    pass


class UnknownPredicate(ModelError, KeyError):
    pass


class UnknownWorld(ModelError, KeyError):
    pass


@dataclass(frozen=True)
class AttitudeSource:
    sort: str
    content: frozenset

    def __post_init__(self):
        if self.sort not in SORTS:
            raise ModelError(f"unknown attitude sort {self.sort!r}")
        object.__setattr__(self, "content", frozenset(self.content))


def _freeze(mapping):
    return MappingProxyType(dict(mapping))


@dataclass(frozen=True, eq=False)
class Model:
    worlds: frozenset
    individuals: frozenset
    constants: Mapping[str, str] = field(default_factory=dict)
    predicates: Mapping[str, Mapping[str, frozenset]] = field(default_factory=dict)
    arities: Mapping[str, int] = field(default_factory=dict)
    sources: Mapping[str, AttitudeSource] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "worlds", frozenset(self.worlds))
        object.__setattr__(self, "individuals", frozenset(self.individuals))
        preds = {
            name: _freeze({w: frozenset(map(tuple, ext)) for w, ext in by_world.items()})
            for name, by_world in self.predicates.items()
        }
        arities = dict(self.arities)
        for name in preds:
            if name not in arities:
                arities[name] = _infer_arity(name, preds[name])
        for name in arities:
            preds.setdefault(name, _freeze({}))
        object.__setattr__(self, "predicates", _freeze(preds))
        object.__setattr__(self, "arities", _freeze(arities))
        object.__setattr__(self, "constants", _freeze(self.constants))
        object.__setattr__(self, "sources", _freeze(self.sources))
        self.validate()

    def validate(self):
        for name, ind in self.constants.items():
            if ind not in self.individuals:
                raise ModelError(f"constant {name} names undeclared individual {ind!r}")
        for name, by_world in self.predicates.items():
            if name in SORTS:
                raise ModelError(f"{name!r} is reserved for attitude sorts")
            arity = self.arities[name]
            for w, ext in by_world.items():
                if w not in self.worlds:
                    raise ModelError(f"predicate {name} mentions undeclared world {w!r}")
                for tup in ext:
                    if len(tup) != arity:
                        raise ModelError(f"predicate {name}/{arity} has tuple {tup!r}")
                    bad = [d for d in tup if d not in self.individuals]
                    if bad:
                        raise ModelError(f"predicate {name} mentions undeclared {bad}")
        for ind, src in self.sources.items():
            if ind not in self.individuals:
                raise ModelError(f"source {ind!r} is not a declared individual")
            if not src.content <= self.worlds:
                raise ModelError(f"content of {ind} mentions undeclared worlds")

    def __eq__(self, other):
        if not isinstance(other, Model):
            return NotImplemented
        return (
            self.worlds == other.worlds
            and self.individuals == other.individuals
            and dict(self.constants) == dict(other.constants)
            and dict(self.arities) == dict(other.arities)
            and {k: _nonempty(v) for k, v in self.predicates.items()}
            == {k: _nonempty(v) for k, v in other.predicates.items()}
            and dict(self.sources) == dict(other.sources)
        )

    __hash__ = None

    def universe(self, world=None) -> frozenset:
        # rigid: the same universe in every world
        if world is not None and world not in self.worlds:
            raise UnknownWorld(world)
        return self.individuals

    def resolve_constant(self, name):
        if name in self.constants:
            return self.constants[name]
        if name in self.individuals:
            return name
        return None

    def is_sort_predicate(self, pred):
        return pred in SORTS and pred not in self.predicates


def _nonempty(by_world):
    return {w: ext for w, ext in by_world.items() if ext}


def _infer_arity(name, by_world):
    lengths = {len(t) for ext in by_world.values() for t in ext}
    if len(lengths) > 1:
        raise ModelError(f"inconsistent arity for {name}: {sorted(lengths)}")
    if not lengths:
        raise ModelError(f"cannot infer arity of empty predicate {name}")
    return lengths.pop()


def content_of(model: Model, r) -> frozenset:
    try:
        return model.sources[r].content
    except (KeyError, TypeError):
        raise UnknownSource(r) from None


def sort_of(model: Model, r) -> str:
    try:
        return model.sources[r].sort
    except (KeyError, TypeError):
        raise UnknownSource(r) from None


def extension(model: Model, pred: str, world) -> frozenset:
    if pred not in model.predicates:
        raise UnknownPredicate(pred)
    if world not in model.worlds:
        raise UnknownWorld(world)
    return model.predicates[pred].get(world, frozenset())


# -- text format -------------------------------------------------------------

_NAME = r"[A-Za-z_][A-Za-z0-9_\-']*"
_STMT = re.compile(r"\s*([^;]*);", re.S)


def _names(text):
    return [t for t in re.split(r"[\s,]+", text.strip()) if t]


def _braced(text, where):
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ModelError(f"{where}: expected {{...}}, got {text!r}")
    return text[1:-1]


def _tuples(body):
    body = body.strip()
    if not body:
        return []
    if "(" in body:
        return [tuple(_names(m)) for m in re.findall(r"\(([^)]*)\)", body)]
    return [(n,) for n in _names(body)]


def loads(text: str) -> Model:
    """Parse the line-oriented model format."""
    text = re.sub(r"#[^\n]*", "", text)
    worlds, individuals, constants = [], [], {}
    preds: dict = {}
    arities: dict = {}
    sources = {}
    pos = 0
    for m in _STMT.finditer(text):
        pos = m.end()
        stmt = m.group(1).strip()
        if not stmt:
            continue
        head, _, tail = stmt.partition(" ")
        if head == "worlds":
            worlds += _names(tail)
        elif head == "individuals":
            individuals += _names(tail)
        elif head == "const":
            name, eq, ind = tail.partition("=")
            if not eq:
                raise ModelError(f"bad const declaration: {stmt!r}")
            constants[name.strip()] = ind.strip()
        elif head == "pred":
            m2 = re.fullmatch(rf"({_NAME})\s*/\s*(\d+)\s*(?::\s*({_NAME})\s*(\{{.*\}}))?", tail.strip(), re.S)
            if not m2:
                raise ModelError(f"bad pred declaration: {stmt!r}")
            name, arity = m2.group(1), int(m2.group(2))
            if arities.setdefault(name, arity) != arity:
                raise ModelError(f"inconsistent arity for {name}")
            by_world = preds.setdefault(name, {})
            if m2.group(3):
                by_world.setdefault(m2.group(3), set()).update(_tuples(_braced(m2.group(4), name)))
        elif head == "source":
            m2 = re.fullmatch(rf"({_NAME})\s*:\s*({_NAME})\s+content\s*(\{{.*\}})", tail.strip(), re.S)
            if not m2:
                raise ModelError(f"bad source declaration: {stmt!r}")
            if m2.group(1) in sources:
                raise ModelError(f"source {m2.group(1)} declared twice")
            sources[m2.group(1)] = AttitudeSource(m2.group(2), frozenset(_names(_braced(m2.group(3), "content"))))
        else:
            raise ModelError(f"unknown declaration {head!r}")
    rest = text[pos:].strip()
    if rest:
        raise ModelError(f"trailing text without ';': {rest[:40]!r}")
    return Model(
        worlds=frozenset(worlds),
        individuals=frozenset(individuals),
        constants=constants,
        predicates=preds,
        arities=arities,
        sources=sources,
    )


def load(path) -> Model:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def _fmt_tuple(t):
    return t[0] if len(t) == 1 else "(" + ", ".join(t) + ")"


def dumps(model: Model) -> str:
    lines = [
        "worlds " + " ".join(sorted(model.worlds)) + ";",
        "individuals " + " ".join(sorted(model.individuals)) + ";",
    ]
    lines += [f"const {k} = {v};" for k, v in sorted(model.constants.items())]
    for name in sorted(model.predicates):
        arity = model.arities[name]
        by_world = _nonempty(model.predicates[name])
        if not by_world:
            lines.append(f"pred {name}/{arity};")
        for w in sorted(by_world):
            body = ", ".join(_fmt_tuple(t) for t in sorted(by_world[w]))
            lines.append(f"pred {name}/{arity}: {w} {{{body}}};")
    for ind in sorted(model.sources):
        src = model.sources[ind]
        lines.append(f"source {ind} : {src.sort} content {{{', '.join(sorted(src.content))}}};")
    return "\n".join(lines) + "\n"


def build(worlds: Iterable, individuals: Iterable, **kw) -> Model:
    return Model(worlds=frozenset(worlds), individuals=frozenset(individuals), **kw)

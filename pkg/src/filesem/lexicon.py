"""Lexical entries for epistemic participles and determiners.

A participle contributes a stored formula: sortal presupposition on an
informational individual ``y``, the presupposition that file ``q`` is a
world-preserving update of ``content(y)``, and an (un)identification
assertion about its target dref. ``y`` and ``q`` are resolved later when a
landing site is chosen.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Mapping, Union

from . import logic as L
from .model import SORTS

DREF_INTRODUCING = "dref-introducing"
QUANTIFICATIONAL = "quantificational"
Y, Q = "y", "q"


class LexiconError(Exception):
    pass


class UnknownLexeme(LexiconError, KeyError):
    pass


@dataclass(frozen=True)
class ParticipleEntry:
    name: str
    polarity: str  # "Id" | "Ud"
    sorts: frozenset = frozenset()
    extrapolated: bool = False

    def __post_init__(self):
        if self.polarity not in ("Id", "Ud"):
            raise LexiconError(f"{self.name}: polarity must be Id or Ud")
        bad = set(self.sorts) - set(SORTS)
        if bad:
            raise LexiconError(f"{self.name}: unknown sorts {sorted(bad)}")
        object.__setattr__(self, "sorts", frozenset(self.sorts))


@dataclass(frozen=True)
class DeterminerEntry:
    name: str
    cls: str
    idiom_sorts: frozenset | None = None

    def __post_init__(self):
        if self.cls not in (DREF_INTRODUCING, QUANTIFICATIONAL):
            raise LexiconError(f"{self.name}: unknown determiner class {self.cls!r}")
        if self.idiom_sorts is not None:
            if self.cls == QUANTIFICATIONAL:
                raise LexiconError(f"{self.name}: quantificational determiners carry no attitude idiom")
            object.__setattr__(self, "idiom_sorts", frozenset(self.idiom_sorts))

    @property
    def introduces_dref(self) -> bool:
        return self.cls == DREF_INTRODUCING


Entry = Union[ParticipleEntry, DeterminerEntry]


def _sort_condition(sorts, y):
    if len(sorts) == 1:
        return L.Atom(next(iter(sorts)), (y,))
    return L.SortIn(y, tuple(s for s in SORTS if s in sorts))


@dataclass(frozen=True)
class StoredFormula:
    """Conditions with open slots ``y`` (informational individual) and ``q`` (file)."""

    target: str
    polarity: str
    sorts: frozenset = frozenset()

    @property
    def conditions(self) -> tuple:
        return self.resolve(Y, Q)

    def resolve(self, y: str, q: str) -> tuple:
        out = []
        if self.sorts:
            out.append(L.PartialCond(L.Pred(_sort_condition(self.sorts, y))))
        out.append(L.PartialCond(L.Approx(L.Content(y), L.FileRef(q))))
        out.append((L.IdCond if self.polarity == "Id" else L.UdCond)(self.target, q))
        return tuple(out)


@dataclass
class Lexicon:
    entries: Mapping[str, Entry] = field(default_factory=dict)

    def lookup(self, name) -> Entry:
        try:
            return self.entries[name]
        except KeyError:
            raise UnknownLexeme(name) from None

    def participle(self, name) -> ParticipleEntry:
        e = self.lookup(name)
        if not isinstance(e, ParticipleEntry):
            raise LexiconError(f"{name} is not a participle")
        return e

    def determiner(self, name) -> DeterminerEntry:
        e = self.lookup(name)
        if not isinstance(e, DeterminerEntry):
            raise LexiconError(f"{name} is not a determiner")
        return e

    def add(self, entry: Entry) -> "Lexicon":
        if entry.name in self.entries:
            raise LexiconError(f"duplicate entry {entry.name}")
        return Lexicon({**self.entries, entry.name: entry})

    def __contains__(self, name):
        return name in self.entries


def instantiate(entry: Entry, v: str) -> StoredFormula:
    if isinstance(entry, ParticipleEntry):
        return StoredFormula(v, entry.polarity, entry.sorts)
    if isinstance(entry, DeterminerEntry) and entry.idiom_sorts is not None:
        return StoredFormula(v, "Id", entry.idiom_sorts)
    raise LexiconError(f"{entry.name} contributes no stored formula")


_LINE = re.compile(r"(participle|determiner)\s+(\S+)\s*(.*)")
_SET = re.compile(r"(\w[\w-]*)=\{([^}]*)\}")
_KV = re.compile(r"(\w[\w-]*)=([^\s{]+)")


def loads(text: str) -> Lexicon:
    entries: dict = {}
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE.fullmatch(line)
        if not m:
            raise LexiconError(f"line {n}: cannot parse {raw!r}")
        kind, name, rest = m.groups()
        sets = {k: frozenset(s.strip() for s in v.split(",") if s.strip()) for k, v in _SET.findall(rest)}
        kv = dict(_KV.findall(_SET.sub("", rest)))
        flags = set(_SET.sub("", _KV.sub("", rest)).split())
        if name in entries:
            raise LexiconError(f"line {n}: duplicate entry {name}")
        if kind == "participle":
            entries[name] = ParticipleEntry(name, kv.get("polarity", ""), sets.get("sorts", frozenset()),
                                            "extrapolated" in flags)
        else:
            entries[name] = DeterminerEntry(name, kv.get("class", ""), sets.get("idiom-sorts"))
    return Lexicon(entries)


def load(path=None) -> Lexicon:
    if path is None:
        return loads(resources.files("filesem").joinpath("data/lexicon.txt").read_text(encoding="utf-8"))
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dumps(lex: Lexicon) -> str:
    lines = []
    for name in sorted(lex.entries):
        e = lex.entries[name]
        if isinstance(e, ParticipleEntry):
            sorts = ", ".join(s for s in SORTS if s in e.sorts)
            lines.append(f"participle {name} polarity={e.polarity} sorts={{{sorts}}}"
                         + (" extrapolated" if e.extrapolated else ""))
        else:
            extra = ""
            if e.idiom_sorts is not None:
                extra = " idiom-sorts={" + ", ".join(s for s in SORTS if s in e.idiom_sorts) + "}"
            lines.append(f"determiner {name} class={e.cls}{extra}")
    return "\n".join(lines) + "\n"

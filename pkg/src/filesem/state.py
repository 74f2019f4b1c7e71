"""Files: information states with an explicit dref domain.

A file is a set of possibilities, each pairing a total assignment on the
file's domain with a world. Possibilities may additionally carry bindings of
file drefs (files defined inside an increment depend on the possibility they
were defined in).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping


class StateError(Exception):
    pass


class DuplicateDref(StateError):
    pass


class DrefNotInDomain(StateError):
    pass


class AbsurdFile(StateError):
    pass


class EmptyGroup(StateError):
    pass


def _items(mapping):
    pairs = mapping if isinstance(mapping, tuple) else tuple(dict(mapping).items())
    return tuple(sorted(pairs, key=lambda kv: kv[0]))


@dataclass(frozen=True)
class Possibility:
    assignment: tuple = ()
    world: str = ""
    files: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "assignment", _items(self.assignment))
        object.__setattr__(self, "files", _items(self.files))

    @property
    def g(self) -> dict:
        return dict(self.assignment)

    def value(self, x):
        for k, v in self.assignment:
            if k == x:
                return v
        raise DrefNotInDomain(x)

    def file(self, p):
        for k, v in self.files:
            if k == p:
                return v
        return None

    def extend(self, x, d) -> "Possibility":
        return Possibility(self.assignment + ((x, d),), self.world, self.files)

    def bind_file(self, p, f) -> "Possibility":
        return Possibility(self.assignment, self.world, self.files + ((p, f),))

    def extends(self, other: "Possibility") -> bool:
        """True if self is a descendant of other (same world, larger assignment)."""
        if self.world != other.world:
            return False
        mine = dict(self.assignment)
        return all(k in mine and mine[k] == v for k, v in other.assignment)


class File:
    __slots__ = ("domain", "possibilities", "_hash")

    def __init__(self, domain: Iterable = (), possibilities: Iterable[Possibility] = ()):
        domain = tuple(dict.fromkeys(domain))
        possibilities = frozenset(possibilities)
        dset = set(domain)
        for i in possibilities:
            if {k for k, _ in i.assignment} != dset:
                raise StateError(f"assignment {i.g} not total on domain {domain}")
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "possibilities", possibilities)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("File is immutable")

    def __eq__(self, other):
        if not isinstance(other, File):
            return NotImplemented
        return set(self.domain) == set(other.domain) and self.possibilities == other.possibilities

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((frozenset(self.domain), self.possibilities)))
        return self._hash

    def __len__(self):
        return len(self.possibilities)

    def __iter__(self):
        return iter(sorted_possibilities(self))

    def __repr__(self):
        return f"File(domain={list(self.domain)}, n={len(self.possibilities)})"

    @property
    def absurd(self) -> bool:
        return not self.possibilities

    def with_possibilities(self, possibilities) -> "File":
        return File(self.domain, possibilities)

    def filter(self, keep) -> "File":
        return File(self.domain, (i for i in self.possibilities if keep(i)))


def absurd(domain=()) -> File:
    return File(domain, ())


def from_proposition(worlds: Iterable) -> File:
    """Lift a set of worlds to an empty-domain file."""
    return File((), (Possibility((), w) for w in worlds))


def from_rows(domain, rows) -> File:
    """Build a file from (assignment-dict, world) rows."""
    return File(domain, (Possibility(g, w) for g, w in rows))


def introduce(file: File, x, model) -> File:
    if x in file.domain:
        raise DuplicateDref(x)
    universe = sorted(model.universe())
    return File(file.domain + (x,), (i.extend(x, d) for i, d in product(file.possibilities, universe)))


def bind_group(file: File, x, witnesses) -> File:
    """Add dref x bound to a group value (frozenset of individuals).

    witnesses is either one set used everywhere or a callable mapping a
    possibility to its witness set.
    """
    if x in file.domain:
        raise DuplicateDref(x)
    pick = witnesses if callable(witnesses) else (lambda _i: witnesses)
    out = []
    for i in file.possibilities:
        group = frozenset(pick(i))
        if not group:
            raise EmptyGroup(f"no witnesses for {x} in world {i.world}")
        out.append(i.extend(x, group))
    return File(file.domain + (x,), out)


def _check(file, x):
    if x not in file.domain:
        raise DrefNotInDomain(f"{x} not in domain {list(file.domain)}")
    if file.absurd:
        raise AbsurdFile(f"identification of {x} is undefined on the absurd file")


def is_identified(file: File, x) -> bool:
    _check(file, x)
    return len({i.value(x) for i in file.possibilities}) == 1


def is_unidentified(file: File, x) -> bool:
    _check(file, x)
    return len({i.value(x) for i in file.possibilities}) > 1


def world_projection(file: File) -> frozenset:
    return frozenset(i.world for i in file.possibilities)


def approx(file: File, prop) -> bool:
    return world_projection(file) == frozenset(prop)


def sorted_possibilities(file: File):
    order = {x: n for n, x in enumerate(file.domain)}

    def key(i):
        vals = sorted(i.assignment, key=lambda kv: order[kv[0]])
        return tuple(_show(v) for _, v in vals), i.world

    return sorted(file.possibilities, key=key)


def _show(v):
    if isinstance(v, frozenset):
        return "{" + ",".join(sorted(v)) + "}"
    return str(v)


def render(file: File) -> str:
    """Deterministic table: one row per possibility, domain columns then world."""
    header = list(file.domain) + ["world"]
    rows = []
    for i in sorted_possibilities(file):
        g = i.g
        rows.append([_show(g[x]) for x in file.domain] + [i.world])
    widths = [max(len(h), *(len(r[c]) for r in rows)) if rows else len(h) for c, h in enumerate(header)]
    fmt = lambda cells: " | ".join(s.ljust(w) for s, w in zip(cells, widths)).rstrip()
    out = [fmt(header), "-+-".join("-" * w for w in widths)]
    out += [fmt(r) for r in rows]
    if not rows:
        out.append("(absurd)")
    return "\n".join(out)


def restrict_world(file: File, w) -> File:
    return file.filter(lambda i: i.world == w)


def as_rows(file: File) -> list[tuple[Mapping, str]]:
    return [(i.g, i.world) for i in sorted_possibilities(file)]

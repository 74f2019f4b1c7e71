"""Update semantics for formulas and discourse boxes.

Formulas update files eliminatively except for existential quantification,
which extends the domain by random assignment. Discourse boxes are processed
condition by condition; file definitions inside an increment are bound per
possibility, so a file such as ``content(x2) + K`` can depend on the value of
``x2``.

Two failure channels are kept apart: a failed assertion makes the sentence
false, a failed presupposition (``presup``) makes it undefined.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Optional, Union

from . import logic as L
from .model import Model, content_of, extension
from .state import (
    AbsurdFile,
    DrefNotInDomain,
    DuplicateDref,
    File,
    Possibility,
    bind_group,
    from_proposition,
    introduce,
    is_identified,
    is_unidentified,
    world_projection,
)


class EvalError(Exception):
    pass


class UnboundDref(EvalError, L.ScopeError):
    pass


class RebindError(EvalError):
    pass


class _Undefined(Exception):
    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path, self.message = path, message


@dataclass(frozen=True)
class Proceed:
    file: File
    failures: tuple = ()
    bindings: Mapping[str, File] = field(default_factory=dict)


@dataclass(frozen=True)
class PresupFailure:
    path: str
    message: str

    def __str__(self):
        return f"{self.path}: {self.message}"


Outcome = Union[Proceed, PresupFailure]


@dataclass(frozen=True)
class Env:
    model: Model
    bindings: Mapping[str, File] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "bindings", MappingProxyType(dict(self.bindings)))

    def bind(self, p, f: File) -> "Env":
        if p in self.bindings:
            raise RebindError(p)
        return Env(self.model, {**self.bindings, p: f})


@dataclass(frozen=True)
class Verdict:
    value: str  # "true" | "false" | "presup-failure"
    diagnostic: str = ""
    failures: tuple = ()
    file: Optional[File] = None

    def __str__(self):
        if self.value == "presup-failure":
            return f"presup-failure: {self.diagnostic}"
        return self.value

    def __bool__(self):
        return self.value == "true"


@dataclass
class _Ctx:
    model: Model
    params: Mapping = field(default_factory=dict)
    files: Mapping = field(default_factory=dict)
    path: tuple = ()
    failures: Optional[list] = None  # only the top level records failures

    def at(self, idx):
        return _Ctx(self.model, self.params, self.files, self.path + (idx,), self.failures)

    def nested(self, i: Possibility):
        return _Ctx(
            self.model,
            {**self.params, **i.g},
            {**self.files, **dict(i.files)},
            self.path,
            None,
        )

    @property
    def where(self):
        return ".".join(str(n) for n in self.path) or "-"


# -- term and file resolution ---------------------------------------------------

def _value(t, i: Possibility, ctx: _Ctx):
    for k, v in i.assignment:
        if k == t:
            return v
    if t in ctx.params:
        return ctx.params[t]
    d = ctx.model.resolve_constant(t)
    if d is None:
        raise UnboundDref(t)
    return d


def _file(p, i: Possibility, ctx: _Ctx) -> File:
    f = i.file(p)
    if f is None:
        f = ctx.files.get(p)
    if f is None:
        raise UnboundDref(f"file dref {p} is not bound")
    return f


def _source_worlds(term, i, ctx):
    return content_of(ctx.model, _value(term, i, ctx))


# -- formulas -----------------------------------------------------------------

def _holds_atom(phi: L.Atom, i, ctx) -> bool:
    model = ctx.model
    vals = tuple(_value(t, i, ctx) for t in phi.terms)
    if model.is_sort_predicate(phi.pred):
        if len(vals) != 1:
            raise EvalError(f"sort predicate {phi.pred} takes one argument")
        src = model.sources.get(vals[0]) if isinstance(vals[0], str) else None
        return src is not None and src.sort == phi.pred
    ext = extension(model, phi.pred, i.world)
    if len(vals) != model.arities[phi.pred]:
        raise EvalError(f"{phi.pred} has arity {model.arities[phi.pred]}, got {len(vals)}")
    return vals in ext


def _identification(phi, file: File, i, ctx) -> bool:
    target = _file(phi.file, i, ctx)
    ident = isinstance(phi, (L.Id, L.IdCond))
    label = f"{'Id' if ident else 'Ud'}({phi.var}, {phi.file})"
    try:
        if ident:
            return is_identified(target, phi.var)
        return is_unidentified(target, phi.var)
    except DrefNotInDomain:
        raise _Undefined(ctx.where, f"dref-domain: {phi.var} not in domain of {phi.file} in {label}")
    except AbsurdFile:
        raise _Undefined(ctx.where, f"{label} undefined on the absurd file {phi.file}")


def _not(file: File, result: File) -> File:
    dom = set(file.domain)
    survivors = {
        (tuple((k, v) for k, v in j.assignment if k in dom), j.world, j.files)
        for j in result.possibilities
    }
    return file.filter(lambda i: (i.assignment, i.world, i.files) not in survivors)


def _update(file: File, phi, ctx: _Ctx) -> File:
    if isinstance(phi, L.Atom):
        return file.filter(lambda i: _holds_atom(phi, i, ctx))
    if isinstance(phi, L.Eq):
        return file.filter(lambda i: _value(phi.left, i, ctx) == _value(phi.right, i, ctx))
    if isinstance(phi, L.Neq):
        return file.filter(lambda i: _value(phi.left, i, ctx) != _value(phi.right, i, ctx))
    if isinstance(phi, L.SortIn):
        def ok(i):
            d = _value(phi.term, i, ctx)
            src = ctx.model.sources.get(d) if isinstance(d, str) else None
            return src is not None and src.sort in phi.sorts
        return file.filter(ok)
    if isinstance(phi, L.And):
        return _update(_update(file, phi.left, ctx), phi.right, ctx)
    if isinstance(phi, L.Exists):
        domain = file.domain + tuple(x for x in L.exported_drefs(phi) if x not in file.domain)
        out = set()
        for d in sorted(ctx.model.universe()):
            if phi.var in file.domain:
                raise DuplicateDref(phi.var)
            branch = File(file.domain + (phi.var,), (i.extend(phi.var, d) for i in file.possibilities))
            out |= _update(branch, phi.body, ctx).possibilities
        return File(domain, out)
    if isinstance(phi, L.Not):
        return _not(file, _update(file, phi.body, ctx))
    if isinstance(phi, L.Diamond):
        return file if _update(file, phi.body, ctx).possibilities else file.with_possibilities(())
    if isinstance(phi, L.Box):
        return _update(file, L.Not(L.Diamond(L.Not(phi.body))), ctx)
    if isinstance(phi, L.Forall):
        return _update(file, L.Not(L.Exists(phi.var, L.Not(phi.body))), ctx)
    if isinstance(phi, L.Partial):
        result = _update(file, phi.body, ctx)
        if result.possibilities != file.possibilities:
            raise _Undefined(ctx.where, L.pretty(phi))
        return file
    if isinstance(phi, (L.Id, L.Ud)):
        if phi.file is None:
            if file.absurd:
                return file
            try:
                test = is_identified if isinstance(phi, L.Id) else is_unidentified
                return file if test(file, phi.var) else file.with_possibilities(())
            except DrefNotInDomain:
                raise UnboundDref(phi.var) from None
        return file.filter(lambda i: _identification(phi, file, i, ctx))
    raise TypeError(f"not a formula: {phi!r}")


# -- discourse boxes -------------------------------------------------------------

def evaluation_order(box: L.DiscourseBox):
    """Conditions that read a file dref defined later in the same box are
    deferred until just after its definition."""
    defined = L.files_defined(box)
    bound: set = set()
    out, pending = [], []
    for idx, c in enumerate(box.conditions):
        need = (L.condition_local_files(c) & defined) - bound
        if isinstance(c, L.FileDef):
            need.discard(c.name)
        if need:
            pending.append((idx, c, need))
            continue
        out.append((idx, c))
        if isinstance(c, L.FileDef):
            bound.add(c.name)
            ready = [p for p in pending if p[2] <= bound]
            pending = [p for p in pending if not p[2] <= bound]
            out += [(idx2, c2) for idx2, c2, _ in ready]
    out += [(idx, c) for idx, c, _ in pending]
    return out


def _lift(base, i, ctx) -> File:
    if isinstance(base, L.FileRef):
        return _file(base.name, i, ctx)
    return from_proposition(_source_worlds(base.term, i, ctx))


def _worlds(target, i, ctx) -> frozenset:
    if isinstance(target, L.FileRef):
        return world_projection(_file(target.name, i, ctx))
    if isinstance(target, L.FileSum):
        f = _lift(target.base, i, ctx)
        inner = ctx.nested(i)
        for k in target.increments:
            f = _run_box(k, f, inner)
        return world_projection(f)
    return _source_worlds(target.term, i, ctx)


_ASSERTIONS = (L.Approx, L.IdCond, L.UdCond)


def _apply(c, file: File, ctx: _Ctx) -> File:
    if isinstance(c, L.FileDef):
        out = []
        for i in file.possibilities:
            if i.file(c.name) is not None or c.name in ctx.files:
                raise RebindError(f"file dref {c.name} is already bound")
            base = _lift(c.base, i, ctx)
            out.append(i.bind_file(c.name, _run_box(c.increment, base, ctx.nested(i))))
        return file.with_possibilities(out)
    if isinstance(c, L.Approx):
        return file.filter(lambda i: _worlds(c.base, i, ctx) == _worlds(c.target, i, ctx))
    if isinstance(c, (L.IdCond, L.UdCond)):
        return file.filter(lambda i: _identification(c, file, i, ctx))
    if isinstance(c, L.Pred):
        return _update(file, c.formula, ctx)
    if isinstance(c, L.PartialCond):
        quiet = _Ctx(ctx.model, ctx.params, ctx.files, ctx.path, None)
        result = _apply(c.body, file, quiet)
        if result.possibilities != file.possibilities or set(result.domain) != set(file.domain):
            raise _Undefined(ctx.where, L.pretty(c))
        return file
    if isinstance(c, L.SumCond):
        scope = _update(introduce(file, c.var, ctx.model), c.body, ctx)
        found: dict = {}
        for j in scope.possibilities:
            key = (tuple((k, v) for k, v in j.assignment if k != c.var), j.world, j.files)
            found.setdefault(key, set()).add(j.value(c.var))
        return bind_group(file, c.group, lambda i: found.get((i.assignment, i.world, i.files), ()))
    raise TypeError(f"not a condition: {c!r}")


def _run_box(box: L.DiscourseBox, file: File, ctx: _Ctx) -> File:
    for x in box.individual_drefs:
        file = introduce(file, x, ctx.model)
    for idx, c in evaluation_order(box):
        here = ctx.at(idx)
        before = file
        file = _apply(c, file, here)
        if ctx.failures is None or isinstance(c, (L.FileDef, L.PartialCond)):
            continue
        eliminated = file.possibilities != before.possibilities and not (
            isinstance(c, L.Pred) and file.possibilities
        )
        if eliminated and before.possibilities:
            # top-level assertions act as tests: record, then keep going
            ctx.failures.append(f"{here.where}: {L.pretty(c)}")
            file = before
    return file


# -- public API ------------------------------------------------------------------

def _as_env(env, model) -> Env:
    if env is None:
        return Env(model)
    if isinstance(env, Env):
        return env
    return Env(model, env)


def update(file: File, phi, model: Model, env=None) -> Outcome:
    env = _as_env(env, model)
    ctx = _Ctx(model, {}, dict(env.bindings))
    try:
        return Proceed(_update(file, phi, ctx))
    except _Undefined as e:
        return PresupFailure(e.path, e.message)


def _top_bindings(file: File) -> dict:
    seen: dict = {}
    for i in file.possibilities:
        for p, f in i.files:
            seen.setdefault(p, set()).add(f)
    return {p: next(iter(fs)) for p, fs in seen.items() if len(fs) == 1}


def run_discourse(box: L.DiscourseBox, env=None, model: Model = None, context: File = None) -> Outcome:
    """Evaluate a box against a context file (default: all worlds of the model)."""
    env = _as_env(env, model)
    model = env.model
    check_scope(box, model, env)
    if context is None:
        context = from_proposition(model.worlds)
    failures: list = []
    ctx = _Ctx(model, {}, dict(env.bindings), (), failures)
    try:
        out = _run_box(box, context, ctx)
    except _Undefined as e:
        return PresupFailure(e.path, e.message)
    return Proceed(out, tuple(failures), _top_bindings(out))


def check_sentence(box: L.DiscourseBox, env=None, model: Model = None, context: File = None) -> Verdict:
    outcome = run_discourse(box, env, model, context)
    if isinstance(outcome, PresupFailure):
        return Verdict("presup-failure", str(outcome))
    if outcome.failures:
        return Verdict("false", outcome.failures[0], outcome.failures, outcome.file)
    return Verdict("true", "", (), outcome.file)


def check_formula(phi, file: File, model: Model, env=None) -> Verdict:
    """Three-valued verdict for a formula updating a context file."""
    outcome = update(file, phi, model, env)
    if isinstance(outcome, PresupFailure):
        return Verdict("presup-failure", str(outcome))
    if outcome.file.absurd and not file.absurd:
        return Verdict("false", L.pretty(phi), (L.pretty(phi),), outcome.file)
    return Verdict("true", "", (), outcome.file)


# -- static scope check ---------------------------------------------------------

def _check_terms(terms, bound, model):
    for t in terms:
        if t not in bound and model.resolve_constant(t) is None:
            raise UnboundDref(f"unbound term {t}")


def _check_file(p, fdom):
    if p not in fdom:
        raise UnboundDref(f"file dref {p} is not bound here")


def _scope_formula(phi, bound: frozenset, model, fdom=None) -> frozenset:
    if isinstance(phi, L.Atom):
        _check_terms(phi.terms, bound, model)
    elif isinstance(phi, (L.Eq, L.Neq)):
        _check_terms((phi.left, phi.right), bound, model)
    elif isinstance(phi, L.SortIn):
        _check_terms((phi.term,), bound, model)
    elif isinstance(phi, (L.Id, L.Ud)):
        if phi.file is None:
            _check_terms((phi.var,), bound, model)
        elif fdom is not None:
            _check_file(phi.file, fdom)
    elif isinstance(phi, L.And):
        return _scope_formula(phi.right, _scope_formula(phi.left, bound, model, fdom), model, fdom)
    elif isinstance(phi, L.Exists):
        return _scope_formula(phi.body, bound | {phi.var}, model, fdom)
    elif isinstance(phi, L.Forall):
        _scope_formula(phi.body, bound | {phi.var}, model, fdom)
    elif isinstance(phi, (L.Not, L.Diamond, L.Box, L.Partial)):
        _scope_formula(phi.body, bound, model, fdom)
    return bound


def _scope_box(box, bound: frozenset, fdom: dict, model) -> frozenset:
    bound = bound | set(box.individual_drefs)
    fdom = dict(fdom)
    for _, c in evaluation_order(box):
        bound = _scope_cond(c, bound, fdom, model)
    return bound


def _scope_base(b, bound, fdom, model) -> frozenset:
    if isinstance(b, L.FileRef):
        _check_file(b.name, fdom)
        return frozenset(fdom[b.name])
    if isinstance(b, (L.Content, L.Belief)):
        _check_terms((b.term,), bound, model)
        return frozenset()
    if isinstance(b, L.FileSum):
        dom = _scope_base(b.base, bound, fdom, model)
        for k in b.increments:
            dom = _scope_box(k, bound | dom, fdom, model)
        return dom
    raise TypeError(b)


def _scope_cond(c, bound, fdom, model) -> frozenset:
    if isinstance(c, L.FileDef):
        base = _scope_base(c.base, bound, fdom, model)
        _scope_box(c.increment, bound | base, fdom, model)
        fdom[c.name] = base | frozenset(L.box_domain(c.increment))
    elif isinstance(c, L.Approx):
        _scope_base(c.base, bound, fdom, model)
        _scope_base(c.target, bound, fdom, model)
    elif isinstance(c, L.Pred):
        return _scope_formula(c.formula, bound, model, fdom)
    elif isinstance(c, (L.IdCond, L.UdCond)):
        _check_file(c.file, fdom)
    elif isinstance(c, L.PartialCond):
        _scope_cond(c.body, bound, fdom, model)
    elif isinstance(c, L.SumCond):
        _scope_formula(c.body, bound | {c.var}, model, fdom)
        return bound | {c.group}
    return bound


def check_scope(box: L.DiscourseBox, model: Model, env=None):
    """Raise UnboundDref if some term can never be resolved."""
    env = _as_env(env, model)
    fdom = {p: set(f.domain) for p, f in env.bindings.items()}
    _scope_box(box, frozenset(), fdom, model)

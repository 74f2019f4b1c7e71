"""Scenario fixtures: plain-text files pairing a model with a discourse box or
a sentence skeleton and the expected verdict or reading set."""
from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional

from . import logic as L
from . import model as M
from .evaluate import check_sentence
from .lexicon import Lexicon, load as load_lexicon
from .readings import load_skeleton, readings
from .state import from_proposition

VERDICTS = ("true", "false", "presup-failure")
_KEYS = {"name", "model", "discourse", "skeleton", "context", "expect", "basis", "anchor"}


class CorpusError(ValueError):
    pass


def default_corpus() -> Path:
    return Path(str(resources.files("filesem") / "data" / "scenarios"))


@dataclass(frozen=True)
class ScenarioFixture:
    name: str
    model: Path
    expect: object  # verdict string or frozenset of scope names
    basis: str
    anchor: str
    discourse: Optional[Path] = None
    skeleton: Optional[Path] = None
    context: Optional[str] = None

    @property
    def kind(self):
        return "readings" if self.skeleton else "eval"


def parse_scope_set(text: str) -> frozenset:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise CorpusError(f"expected a reading set like {{wide, narrow}}, got {text!r}")
    return frozenset(s.strip() for s in text[1:-1].split(",") if s.strip())


def show_expect(value) -> str:
    if isinstance(value, frozenset):
        order = {"widest": 0, "wide": 1, "narrow": 2}
        return "{" + ", ".join(sorted(value, key=lambda s: (order.get(s, 9), s))) + "}"
    return str(value)


def load_fixture(path) -> ScenarioFixture:
    path = Path(path)
    fields = {}
    for n, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        key, sep, value = line.partition(":")
        key = key.strip()
        if not sep or key not in _KEYS:
            raise CorpusError(f"{path.name}:{n}: bad line {line!r}")
        if key in fields:
            raise CorpusError(f"{path.name}:{n}: duplicate field {key}")
        fields[key] = value.strip()
    missing = {"name", "model", "expect", "basis", "anchor"} - set(fields)
    if missing:
        raise CorpusError(f"{path.name}: missing {sorted(missing)}")
    if ("discourse" in fields) == ("skeleton" in fields):
        raise CorpusError(f"{path.name}: give exactly one of discourse or skeleton")
    if "skeleton" in fields:
        if "context" in fields:
            raise CorpusError(f"{path.name}: context only applies to discourse fixtures")
        expect = parse_scope_set(fields["expect"])
    else:
        expect = fields["expect"]
        if expect not in VERDICTS:
            raise CorpusError(f"{path.name}: expected verdict must be one of {VERDICTS}")
    base = path.parent
    resolve = lambda key: base / fields[key] if key in fields else None
    return ScenarioFixture(
        name=fields["name"], model=base / fields["model"], expect=expect,
        basis=fields["basis"], anchor=fields["anchor"],
        discourse=resolve("discourse"), skeleton=resolve("skeleton"), context=fields.get("context"),
    )


def load_corpus(directory) -> list[ScenarioFixture]:
    fixtures = [load_fixture(p) for p in sorted(Path(directory).glob("*.scenario"))]
    names = [f.name for f in fixtures]
    dupes = sorted({n for n in names if names.count(n) > 1})
    if dupes:
        raise CorpusError(f"duplicate fixture names {dupes}")
    return sorted(fixtures, key=lambda f: f.name)


def context_file(model: M.Model, source: Optional[str]):
    if source is None:
        return None
    return from_proposition(M.content_of(model, model.resolve_constant(source) or source))


def run_fixture(fx: ScenarioFixture, lex: Lexicon = None):
    """Observed value for a fixture: a verdict string or a scope set."""
    model = M.load(fx.model)
    if fx.skeleton:
        return readings(load_skeleton(fx.skeleton), model, lex or load_lexicon()).scopes
    box = L.parse_discourse(fx.discourse.read_text(encoding="utf-8"))
    return check_sentence(box, model=model, context=context_file(model, fx.context)).value

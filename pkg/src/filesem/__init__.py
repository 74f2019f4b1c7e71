"""Dynamic modal logic with files, for epistemic NP modifiers."""
from .model import Model, AttitudeSource, SORTS
from .state import File, Possibility
from .logic import parse_formula, parse_discourse, pretty
from .evaluate import Verdict, check_sentence, check_formula, run_discourse, update
from .lexicon import Lexicon
from .readings import Skeleton, ReadingCandidate, ReadingReport

__all__ = [
    "Model", "AttitudeSource", "SORTS", "File", "Possibility",
    "parse_formula", "parse_discourse", "pretty",
    "Verdict", "check_sentence", "check_formula", "run_discourse", "update",
    "Lexicon", "Skeleton", "ReadingCandidate", "ReadingReport",
]

"""Two ways of describing an attitude's content together with an
identification claim about a dref introduced in it.

The split form names the output file and states three conditions:
``p : content(r) + K, content(r) ~= p, Ud(x, p)``. The fused form folds the
claim into the file as a one-place test and keeps a single condition:
``content(r) ~= content(r) + K + [| Ud(x)]``. They agree except when the
source's content is empty, where the split form is undefined (identification
on the absurd file) and the fused form is trivially true.
"""
from __future__ import annotations

from . import logic as L

_COND = {"Id": L.IdCond, "Ud": L.UdCond}
_TEST = {"Id": L.Id, "Ud": L.Ud}


def _increment(k):
    return L.parse_discourse(k) if isinstance(k, str) else k


def split_form(source: str, increment, x: str, polarity: str = "Ud", p: str = "p") -> L.DiscourseBox:
    k = _increment(increment)
    return L.DiscourseBox((p,), (
        L.FileDef(p, L.Content(source), k),
        L.Approx(L.Content(source), L.FileRef(p)),
        _COND[polarity](x, p),
    ))


def fused_form(source: str, increment, x: str, polarity: str = "Ud") -> L.DiscourseBox:
    k = _increment(increment)
    test = L.DiscourseBox((), (L.Pred(_TEST[polarity](x)),))
    return L.DiscourseBox((), (
        L.Approx(L.Content(source), L.FileSum(L.Content(source), (k, test))),
    ))

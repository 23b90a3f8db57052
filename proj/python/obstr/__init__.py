"""Python access to the obstruction engine; every result is a parsed JSON dict."""

import json

from . import _obstr
from ._obstr import ObstrError

__version__ = _obstr.__version__

__all__ = ["ObstrError", "analyze", "check_report", "gm", "family", "cpxcp", "search", "enumerate"]


def _spec(group):
    return group if isinstance(group, str) else json.dumps(group)


def analyze(group, filtration, level="arithmetic", p=None, theta=None):
    """Report for one filtration; `filtration` is a dict or JSON text."""
    text = filtration if isinstance(filtration, str) else json.dumps(filtration)
    return json.loads(_obstr.analyze(_spec(group), text, level, p, theta))


def check_report(report):
    """List of mismatches found when re-deriving a report (empty when consistent)."""
    return _obstr.check_report(report if isinstance(report, str) else json.dumps(report))


def gm(group, p):
    return json.loads(_obstr.gm(_spec(group), p))


def family(name, i, d=(), p=2):
    return json.loads(_obstr.family(name, p, list(i), list(d)))


def cpxcp(p, i0, deep=False):
    return json.loads(_obstr.cpxcp(p, i0, deep))


def search(group, p, jump_bound=20, mode="bertin", min_jump=1, threads=0):
    return json.loads(_obstr.search(_spec(group), p, jump_bound, mode, min_jump, threads))


def enumerate(group, p, jump_bound=20, level="arithmetic", min_jump=1):
    return [json.loads(x) for x in _obstr.enumerate(_spec(group), p, jump_bound, level, min_jump)]

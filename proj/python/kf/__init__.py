"""Python access to the kf engine: reduced Khovanov homology over F2, kappa invariants, classical invariants.

Diagrams are given as exactly one of ``pd`` (a list of 4-tuples or a PD JSON dict), ``braid`` (a braid
word string such as "(2,1,3,2)^3,1,2,3,3,2") or ``catalog`` (a catalog name). Results are plain dicts
in the kf-1 JSON format.
"""

import json

from . import _core
from ._core import KfError, ParseError, RangeError, catalog_names

__all__ = [
    "KfError",
    "ParseError",
    "RangeError",
    "alexander",
    "catalog_names",
    "determinant",
    "fill",
    "kappa",
    "kh",
    "selftest",
    "semigroup",
    "validate",
    "width",
]


def _pd_text(pd):
    if pd is None:
        return ""
    if isinstance(pd, dict):
        return json.dumps(pd)
    return json.dumps({"pd": [list(x) for x in pd], "unknot": len(pd) == 0})


def _template_text(template):
    if template is None:
        return ""
    return template if isinstance(template, str) else json.dumps(template)


def kh(pd=None, braid=None, catalog=None, mirror=False, threads=1):
    """Reduced Khovanov table: {"entries": [{"h", "q", "dim"}], "width", "total_dim", ...}."""
    return json.loads(_core.kh_json(_pd_text(pd), braid or "", catalog or "", mirror, threads))


def width(pd=None, braid=None, catalog=None, mirror=False):
    return kh(pd=pd, braid=braid, catalog=catalog, mirror=mirror)["width"]


def determinant(pd=None, braid=None, catalog=None):
    return _core.determinant(_pd_text(pd), braid or "", catalog or "")


def semigroup(pd=None, braid=None, catalog=None):
    """Alexander polynomial, determinant, L-space form flag and formal semigroup."""
    return json.loads(_core.lspace_json(_pd_text(pd), braid or "", catalog or ""))


def alexander(pd=None, braid=None, catalog=None):
    """Symmetrised Alexander polynomial as {exponent: coefficient}."""
    return {int(e): c for e, c in semigroup(pd=pd, braid=braid, catalog=catalog)["alexander"].items()}


def fill(slope, template=None, catalog=None):
    """PD JSON of the filling of a template by a slope such as 19, "41/2" or "inf"."""
    return json.loads(_core.fill_json(_template_text(template), catalog or "", str(slope)))


def kappa(template=None, catalog=None, range=None, mirror=False, threads=1):
    """Transition N, kappa table and per-filling data of a template family."""
    return json.loads(_core.kappa_json(_template_text(template), catalog or "", range, mirror, threads))


def validate(template=None, catalog=None):
    return json.loads(_core.validate_json(_template_text(template), catalog or ""))


def selftest(threads=1):
    return json.loads(_core.selftest_json(threads))

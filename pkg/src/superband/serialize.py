"""Strict JSON forms for every value the command line reads or writes.

Dumps are canonical: object keys sorted, compact separators, and term lists
in their natural order (monomials in tuple order, polynomial terms by
(t, s) degree, Laurent terms by inverse exponent).  The parser accepts
exactly the canonical shape — wrong key sets, unsorted or duplicated terms,
and malformed rationals raise ParseError — while parity, shape, and
algebra-mismatch violations surface as the constructing module's own errors.

An element is {"n": 3, "terms": [{"idx": [1, 2], "c": "-1/2"}]} with
rationals as strings.  A constant supermatrix is {"p", "q", "rows"} with
element entries.  Containers whose entries are bare term lists (parametric
and Laurent matrices, parametric supervectors) carry a top-level "n",
because an all-zero entry is an empty list with no element object to name
the algebra.  A zero parametric matrix and a zero Laurent matrix share one
canonical form; sniffing resolves it as parametric.
"""

import json
from fractions import Fraction

from .algebra import GrassmannElement, create_algebra
from .errors import ConfigError, ParseError
from .evolution import LaurentMatrix, LaurentScalar
from .families import ParamSuperMatrix, ParamSuperVector
from .poly import MAX_VAR_DEGREE, GrassmannPoly
from .supermatrix import SuperMatrix, SuperVector

# ---------------------------------------------------------------------------
# shared validation helpers
# ---------------------------------------------------------------------------


def _require_keys(obj, keys, what):
    if not isinstance(obj, dict):
        raise ParseError(f"{what} must be a JSON object, got {type(obj).__name__}")
    got, want = set(obj), set(keys)
    if got != want:
        missing = ", ".join(sorted(want - got))
        extra = ", ".join(sorted(got - want))
        detail = "; ".join(
            part
            for part in (
                f"missing {missing}" if missing else "",
                f"unexpected {extra}" if extra else "",
            )
            if part
        )
        raise ParseError(f"{what} must have exactly keys {sorted(want)} ({detail})")
    return obj


def _int(value, what, minimum=None, maximum=None):
    if not isinstance(value, int) or isinstance(value, bool):
        raise ParseError(f"{what} must be an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ParseError(f"{what} must be at least {minimum}, got {value}")
    if maximum is not None and value > maximum:
        raise ParseError(f"{what} must be at most {maximum}, got {value}")
    return value


def _rational(value, what) -> Fraction:
    if not isinstance(value, str):
        raise ParseError(f"{what} must be a rational string like '-1/2', got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{what} is not a rational: {value!r}") from None


def _list(value, what):
    if not isinstance(value, list):
        raise ParseError(f"{what} must be a JSON array, got {type(value).__name__}")
    return value


def _grid(obj, what):
    rows = _list(obj["rows"], f"{what} rows")
    if not rows:
        raise ParseError(f"{what} rows must be nonempty")
    for row in rows:
        _list(row, f"{what} row")
    return rows


def _context(obj, what):
    n = _int(obj["n"], f"{what} generator count")
    try:
        return create_algebra(n)
    except ConfigError as exc:
        raise ParseError(str(exc)) from None


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------


def dump_element(x: GrassmannElement) -> dict:
    return {
        "n": x.ctx.n,
        "terms": [
            {"c": str(c), "idx": list(idx)} for idx, c in x.sorted_terms()
        ],
    }


def load_element(obj) -> GrassmannElement:
    _require_keys(obj, ("n", "terms"), "element")
    ctx = _context(obj, "element")
    terms = {}
    previous = None
    for entry in _list(obj["terms"], "element terms"):
        _require_keys(entry, ("c", "idx"), "element term")
        idx = tuple(
            _int(i, "monomial index", minimum=1, maximum=ctx.n)
            for i in _list(entry["idx"], "monomial index list")
        )
        if any(a >= b for a, b in zip(idx, idx[1:])):
            raise ParseError(f"monomial indices must be strictly increasing: {list(idx)}")
        if previous is not None and idx <= previous:
            raise ParseError(
                f"element terms must be strictly ascending; {list(idx)} repeats or"
                " precedes an earlier monomial"
            )
        previous = idx
        c = _rational(entry["c"], "coefficient")
        if c:
            terms[idx] = c
    return ctx.element(terms)


# ---------------------------------------------------------------------------
# constant supermatrices and supervectors
# ---------------------------------------------------------------------------


def dump_matrix(m: SuperMatrix) -> dict:
    return {
        "p": m.p,
        "q": m.q,
        "rows": [[dump_element(x) for x in row] for row in m.rows],
    }


def load_matrix(obj) -> SuperMatrix:
    _require_keys(obj, ("p", "q", "rows"), "supermatrix")
    p = _int(obj["p"], "p", minimum=1)
    q = _int(obj["q"], "q", minimum=1)
    rows = [[load_element(x) for x in row] for row in _grid(obj, "supermatrix")]
    return SuperMatrix(p, q, rows)


def dump_supervector(v: SuperVector) -> dict:
    return {
        "even": [dump_element(x) for x in v.even],
        "odd": [dump_element(x) for x in v.odd],
    }


def load_supervector(obj) -> SuperVector:
    _require_keys(obj, ("even", "odd"), "supervector")
    return SuperVector(
        [load_element(x) for x in _list(obj["even"], "even slots")],
        [load_element(x) for x in _list(obj["odd"], "odd slots")],
    )


# ---------------------------------------------------------------------------
# polynomials in t and s
# ---------------------------------------------------------------------------


def dump_poly(poly: GrassmannPoly) -> list:
    return [
        {"c": dump_element(c), "s": es, "t": et}
        for (et, es), c in poly.sorted_terms()
    ]


def load_poly(entries, ctx) -> GrassmannPoly:
    out = GrassmannPoly.zero(ctx)
    previous = None
    for entry in _list(entries, "polynomial"):
        _require_keys(entry, ("c", "s", "t"), "polynomial term")
        et = _int(entry["t"], "t exponent", minimum=0, maximum=MAX_VAR_DEGREE)
        es = _int(entry["s"], "s exponent", minimum=0, maximum=MAX_VAR_DEGREE)
        if previous is not None and (et, es) <= previous:
            raise ParseError(
                f"polynomial terms must be strictly ascending by (t, s);"
                f" ({et}, {es}) repeats or precedes an earlier term"
            )
        previous = (et, es)
        out = out + GrassmannPoly.term(load_element(entry["c"]), t=et, s=es)
    return out


def dump_param_matrix(m: ParamSuperMatrix) -> dict:
    return {
        "n": m.ctx.n,
        "p": m.p,
        "q": m.q,
        "rows": [[dump_poly(x) for x in row] for row in m.rows],
    }


def load_param_matrix(obj) -> ParamSuperMatrix:
    _require_keys(obj, ("n", "p", "q", "rows"), "parametric supermatrix")
    ctx = _context(obj, "parametric supermatrix")
    p = _int(obj["p"], "p", minimum=1)
    q = _int(obj["q"], "q", minimum=1)
    rows = [
        [load_poly(x, ctx) for x in row]
        for row in _grid(obj, "parametric supermatrix")
    ]
    return ParamSuperMatrix(p, q, rows)


def dump_param_supervector(v: ParamSuperVector) -> dict:
    return {
        "even": [dump_poly(x) for x in v.even],
        "n": v.ctx.n,
        "odd": [dump_poly(x) for x in v.odd],
    }


def load_param_supervector(obj) -> ParamSuperVector:
    _require_keys(obj, ("even", "n", "odd"), "parametric supervector")
    ctx = _context(obj, "parametric supervector")
    return ParamSuperVector(
        [load_poly(x, ctx) for x in _list(obj["even"], "even slots")],
        [load_poly(x, ctx) for x in _list(obj["odd"], "odd slots")],
    )


# ---------------------------------------------------------------------------
# Laurent values
# ---------------------------------------------------------------------------


def dump_laurent_scalar(x: LaurentScalar) -> list:
    return [
        {"c": dump_element(c), "iw": iw, "iz": iz}
        for (iz, iw), c in x.sorted_terms()
    ]


def load_laurent_scalar(entries, ctx) -> LaurentScalar:
    terms = {}
    previous = None
    for entry in _list(entries, "Laurent scalar"):
        _require_keys(entry, ("c", "iw", "iz"), "Laurent term")
        iz = _int(entry["iz"], "iz exponent")
        iw = _int(entry["iw"], "iw exponent")
        if previous is not None and (iz, iw) <= previous:
            raise ParseError(
                f"Laurent terms must be strictly ascending by (iz, iw);"
                f" ({iz}, {iw}) repeats or precedes an earlier term"
            )
        previous = (iz, iw)
        terms[(iz, iw)] = load_element(entry["c"])
    return LaurentScalar(ctx, terms)


def dump_laurent_matrix(m: LaurentMatrix) -> dict:
    return {
        "n": m.ctx.n,
        "p": m.p,
        "q": m.q,
        "rows": [[dump_laurent_scalar(x) for x in row] for row in m.rows],
    }


def load_laurent_matrix(obj) -> LaurentMatrix:
    _require_keys(obj, ("n", "p", "q", "rows"), "Laurent matrix")
    ctx = _context(obj, "Laurent matrix")
    p = _int(obj["p"], "p", minimum=1)
    q = _int(obj["q"], "q", minimum=1)
    rows = [
        [load_laurent_scalar(x, ctx) for x in row]
        for row in _grid(obj, "Laurent matrix")
    ]
    return LaurentMatrix(p, q, rows)


# ---------------------------------------------------------------------------
# whole-value dispatch
# ---------------------------------------------------------------------------

_DUMPERS = (
    (GrassmannElement, dump_element),
    (SuperMatrix, dump_matrix),
    (SuperVector, dump_supervector),
    (ParamSuperMatrix, dump_param_matrix),
    (ParamSuperVector, dump_param_supervector),
    (LaurentMatrix, dump_laurent_matrix),
    (LaurentScalar, dump_laurent_scalar),
)


def to_obj(value):
    """The canonical JSON-ready object for any serializable value."""
    for kind, dump in _DUMPERS:
        if isinstance(value, kind):
            return dump(value)
    if isinstance(value, (dict, list, str, int, bool)) or value is None:
        return value
    raise ConfigError(f"cannot serialize {type(value).__name__}")


def dumps(value) -> str:
    """Deterministic canonical JSON text."""
    return json.dumps(to_obj(value), sort_keys=True, separators=(",", ":"))


def load_value(obj):
    """Recover a value from its canonical object form by shape sniffing."""
    if not isinstance(obj, dict):
        raise ParseError(
            "top-level value must be a JSON object (element, matrix, or vector)"
        )
    keys = set(obj)
    if keys == {"n", "terms"}:
        return load_element(obj)
    if keys == {"p", "q", "rows"}:
        return load_matrix(obj)
    if keys == {"even", "odd"}:
        return load_supervector(obj)
    if keys == {"even", "n", "odd"}:
        return load_param_supervector(obj)
    if keys == {"n", "p", "q", "rows"}:
        for row in _grid(obj, "matrix"):
            for entry in row:
                for term in _list(entry, "matrix entry"):
                    if isinstance(term, dict) and "iz" in term:
                        return load_laurent_matrix(obj)
                    return load_param_matrix(obj)
        return load_param_matrix(obj)
    raise ParseError(
        f"unrecognized value shape with keys {sorted(keys)}; expected an element,"
        " a (parametric or Laurent) supermatrix, or a supervector"
    )


def load_json(text: str):
    """json.loads with decode errors mapped to ParseError carrying the byte
    offset of the first syntax error."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", offset=exc.pos) from None


def loads(text: str):
    """Parse canonical JSON text into a value."""
    return load_value(load_json(text))


def parse_input(path):
    """Read one canonical JSON value from a file."""
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())

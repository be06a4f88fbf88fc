"""Canonical JSON for exact results: sorted keys, no floats, lossless round trips.

Scalars are written as {"num": p, "den": q}.  A polynomial is
{"vars": [...], "terms": [[e_1, ..., e_k, num, den], ...], "laurent": bool}
with terms in descending graded-lex order; ``laurent`` is set when some q
exponent is negative.  A rational function is {"num": poly, "den": poly}.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .exactmath import Matrix, Poly, RationalFunction
from .tlcore import TLElement

SCHEMA = 1


def encode_scalar(x) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def decode_scalar(d: dict):
    x = Fraction(d["num"], d["den"])
    return x.numerator if x.denominator == 1 else x


def encode_poly(p: Poly) -> dict:
    p = p.trimmed()
    terms = []
    laurent = False
    qpos = p.vars.index("q") if "q" in p.vars else -1
    for exps, c in p.sorted_items():
        c = Fraction(c)
        terms.append([*exps, c.numerator, c.denominator])
        if qpos >= 0 and exps[qpos] < 0:
            laurent = True
    return {"vars": list(p.vars), "terms": terms, "laurent": laurent}


def decode_poly(d: dict) -> Poly:
    nv = len(d["vars"])
    items = [(t[:nv], Fraction(t[nv], t[nv + 1])) for t in d["terms"]]
    return Poly.from_terms(d["vars"], items)


def encode_value(x) -> dict:
    """Any exact coefficient: scalar, Poly or RationalFunction."""
    if isinstance(x, RationalFunction):
        return {"num": encode_poly(x.num), "den": encode_poly(x.den)}
    if isinstance(x, Poly):
        return encode_poly(x)
    return encode_scalar(x)


def decode_value(d: dict):
    if "vars" in d:
        p = decode_poly(d)
        return p.constant_value() if p.is_constant() else p
    if isinstance(d["num"], dict):
        return RationalFunction(decode_poly(d["num"]), decode_poly(d["den"]))
    return decode_scalar(d)


def ring_tag(a: TLElement) -> str:
    vars_used = set()
    field = False
    for c in list(a.terms.values()) + [a.beta]:
        if isinstance(c, RationalFunction):
            field = True
            vars_used.update(c.num.used_vars() + c.den.used_vars())
        elif isinstance(c, Poly):
            vars_used.update(c.used_vars())
            if any(Fraction(v).denominator != 1 for _, v in c.items()):
                field = True
        elif Fraction(c).denominator != 1:
            field = True
    order = [v for v in ("u", "v", "beta", "q", "x", "h") if v in vars_used]
    if "q" in vars_used:
        base = "Z[" + ",".join(order).replace("q", "q,1/q") + "]"
        return base if not field else "Q(" + ",".join(order) + ")"
    if not order:
        return "Q" if field else "Z"
    return ("Q(" if field else "Z[") + ",".join(order) + (")" if field else "]")


def encode_element(a: TLElement) -> dict:
    terms = [{"pairing": list(d), "coeff": encode_value(c)} for d, c in sorted(a.terms.items())]
    return {"kind": "TLElement", "n": a.n, "ring": ring_tag(a), "beta": encode_value(a.beta), "terms": terms}


def decode_element(d: dict) -> TLElement:
    terms = {tuple(t["pairing"]): decode_value(t["coeff"]) for t in d["terms"]}
    return TLElement(d["n"], terms, decode_value(d["beta"]))


def encode_matrix(M: Matrix) -> dict:
    return {"kind": "Matrix", "shape": [M.nrows, M.ncols],
            "entries": [[i, j, encode_value(x)] for i, j, x in M.entries()]}


def decode_matrix(d: dict) -> Matrix:
    M = Matrix(*d["shape"])
    for i, j, x in d["entries"]:
        M.rows[i][j] = decode_value(x)
    return M


def encode_link_state(x) -> dict:
    return {"pairing": list(x), "defects": [i for i, p in enumerate(x) if p < 0]}


def encode_rep_matrix(r) -> dict:
    out = encode_matrix(r.matrix)
    out.update({"kind": "RepMatrix", "n": r.n, "d": r.d, "basis": [encode_link_state(x) for x in r.basis]})
    return out


def encode(obj):
    """Recursively encode a result into JSON-ready data."""
    from .polyint import MinPolyResult, PolyExpression
    from .transfer import TransferOperator

    if isinstance(obj, TransferOperator):
        out = encode_element(obj.element)
        out["ring"] = "Z[u,beta]"
        return out
    if isinstance(obj, TLElement):
        return encode_element(obj)
    if isinstance(obj, Matrix):
        return encode_matrix(obj)
    if isinstance(obj, MinPolyResult):
        return {"kind": "MinPoly", "coeffs": [encode_value(c) for c in obj.coeffs], "degree": obj.degree,
                "squarefree": obj.squarefree, "certificate": obj.certificate, "field": obj.field}
    if isinstance(obj, PolyExpression):
        return {"kind": "PolyExpression", "status": obj.status, "scalar": encode(obj.scalar),
                "coeffs": [encode(c) for c in obj.coeffs], "f": encode(obj.f), "var": obj.var,
                "degree": obj.degree}
    if isinstance(obj, (Poly, RationalFunction, int, Fraction)) and not isinstance(obj, bool):
        return encode_value(obj)
    if isinstance(obj, dict):
        return {str(k) if not isinstance(k, Fraction) else _fraction_key(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _fraction_key(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def scan_table(report: dict) -> list:
    """Scan report as rows {beta, degree, expressible, ...} ordered by beta."""
    rows = []
    for b in sorted(report):
        r = report[b]
        rows.append({"beta": _fraction_key(Fraction(b)), "degree": r["minpoly_degree"],
                     "rep_degree": r["rep_minpoly_degree"], "expressible": r["expressible"],
                     "in_Z": r["in_Z"], "defined": r["defined"]})
    return rows


def dumps(data, pretty: bool = False) -> str:
    """Canonical text: sorted keys; compact unless ``pretty``."""
    if pretty:
        return json.dumps(data, sort_keys=True, indent=2)
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def document(command: str, result) -> dict:
    return {"schema": SCHEMA, "command": command, "result": result}

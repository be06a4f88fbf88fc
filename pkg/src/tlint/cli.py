"""Command-line front end: ``tlint tl ...`` and ``tlint ev ...``.

Every command builds a JSON payload (cached on disk when enabled) and renders
it either as canonical JSON (``--json``) or as plain text.  Both renderings
depend only on the payload, so cached and fresh runs print identical bytes.

Exit codes: 0 success, 2 usage error, 3 a checked property failed (the
payload, including the counterexample, is still printed).
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import eightvertex, polyint, tlcore, tlrep, transfer
from .cache import Cache
from .exactmath import DimError, DomainError, Poly
from .serialize import (
    decode_value,
    document,
    dumps,
    encode,
    encode_element,
    encode_rep_matrix,
    encode_value,
    scan_table,
)
from .tlcore import InternalError, TLElement

EXIT_USAGE = 2
EXIT_FALSIFIED = 3


class UsageError(Exception):
    pass


def parse_beta(text):
    if text is None:
        return None
    try:
        x = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"--beta expects a rational p/q, got {text!r}") from exc
    return x.numerator if x.denominator == 1 else x


def parse_word(text: str) -> list:
    text = (text or "").strip()
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"a word is a comma-separated list of generator indices, got {text!r}") from exc


def _pmap(fn, items, threads: int):
    """Ordered map, in worker processes when threads > 1."""
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _beta_key(b):
    return None if b is None else str(b)


def _need_n(args, low=1):
    if args.n is None:
        raise UsageError("--n is required")
    if args.n < low:
        raise UsageError(f"--n must be at least {low}")
    return args.n


def _word_element(n: int, word: list, beta) -> TLElement:
    b = Poly.var("beta") if beta is None else beta
    for i in word:
        if not 1 <= i < n:
            raise UsageError(f"generator index {i} out of range for n={n}")
    return TLElement.word(n, word, b)


# tl commands -------------------------------------------------------------------------


def tl_diagrams(args):
    n = _need_n(args, 0)
    ds = tlcore.enumerate_diagrams(n)
    return {"n": n, "count": len(ds), "diagrams": [list(d) for d in ds]}


def tl_mult(args):
    n = _need_n(args)
    beta = parse_beta(args.beta)
    a = _word_element(n, parse_word(args.a), beta)
    b = _word_element(n, parse_word(args.b), beta)
    return {"a": encode_element(a), "b": encode_element(b), "product": encode_element(a * b)}


def tl_jw(args):
    n = _need_n(args)
    beta = parse_beta(args.beta)
    w = tlcore.jones_wenzl(n) if beta is None else tlcore.jones_wenzl(n, beta)
    return {"n": n, "beta": _beta_key(beta), "ok": True, "element": encode_element(w)}


def tl_gram(args):
    n = _need_n(args, 0)
    if args.d is None or args.d == "full":
        raise UsageError("--d (number of defects) is required")
    d = int(args.d)
    if d not in tlrep.defect_counts(n):
        raise UsageError(f"d={d} is not a defect count for n={n}")
    r = tlrep.gram_det_check(n, d)
    return {"n": n, "d": d, "matrix": encode(tlrep.gram_matrix(n, d)), "determinant": encode(r["direct"]),
            "formula": encode(r["formula"]), "ok": bool(r["equal"])}


def tl_repmat(args):
    n = _need_n(args)
    beta = parse_beta(args.beta)
    d = "full" if args.d in (None, "full") else int(args.d)
    if d != "full" and d not in tlrep.defect_counts(n):
        raise UsageError(f"d={d} is not a defect count for n={n}")
    a = _word_element(n, parse_word(args.word), beta)
    return {"word": parse_word(args.word), "rep": encode_rep_matrix(tlrep.rep_matrix(a, n, d))}


def tl_transfer(args):
    n = _need_n(args)
    beta = parse_beta(args.beta)
    T = transfer.build_transfer(n, beta)
    return {"n": n, "beta": _beta_key(beta), "transfer": encode(T)}


def tl_commutator(args):
    n = _need_n(args, 2)
    ok = transfer.commutator_check(n, mutate=args.mutate)
    out = {"n": n, "mutated": bool(args.mutate), "ok": ok}
    if not ok:
        out["counterexample"] = {"n": n, "statement": "[T_n(u), T_n(v)] != 0"}
    return out


def tl_identity_points(args):
    n = _need_n(args, 2)
    beta = parse_beta(args.beta)
    if beta is None:
        raise UsageError("--beta is required")
    r = transfer.identity_points(n, beta)
    want = transfer.expected_identity_points(beta)
    return {"n": n, "beta": str(beta), "points": sorted(_str(p) for p in r.points),
            "expected": sorted(_str(p) for p in want), "gcd": encode(r.gcd), "ok": r.points == want}


def _str(x):
    return str(Fraction(x))


def tl_hamiltonian(args):
    n = _need_n(args, 2)
    beta = parse_beta(args.beta)
    if args.ham == "h0":
        ex = transfer.hamiltonian_at(n, 0, "h0", beta)
        h = ex.principal
        ok = h == transfer.h0(n, h.beta)
    else:
        if beta is not None and beta in (0, 2, -2):
            raise UsageError("h_{-2/beta} needs beta outside {0, 2, -2}")
        us = Fraction(-2) / beta if beta is not None else None
        if beta is None:
            h = transfer.hbeta(n)
            ex = None
        else:
            ex = transfer.hamiltonian_at(n, us, "hbeta", beta)
            h = ex.principal
        ok = True
    out = {"n": n, "ham": args.ham, "beta": _beta_key(beta), "element": encode_element(h), "ok": ok}
    if ex is not None:
        out["order"] = ex.k
    return out


def tl_minpoly(args):
    n = _need_n(args, 2)
    beta = parse_beta(args.beta)
    h = _ham(args, n, beta)
    r = polyint.minimal_polynomial(polyint.rho(h))
    out = encode(r)
    out.update({"n": n, "ham": args.ham, "beta": _beta_key(beta), "dimension": polyint.rho(h).nrows})
    if beta is not None:
        out["nondegenerate"] = polyint.spectrum_nondegenerate(polyint.rho(h))
        out["algebra_degree"] = polyint.PowerBasis(h).degree
    return out


def _ham(args, n, beta):
    try:
        return polyint.hamiltonian(n, args.ham, beta)
    except ZeroDivisionError as exc:
        raise UsageError(f"{args.ham} is undefined at beta={beta}") from exc


def tl_centralizer(args):
    n = _need_n(args, 2)
    beta = parse_beta(args.beta)
    if beta is None:
        raise UsageError("--beta is required")
    h = _ham(args, n, beta)
    dim = polyint.centralizer_dimension(h, n, beta)
    deg = polyint.PowerBasis(h).degree
    return {"n": n, "ham": args.ham, "beta": str(beta), "dimension": dim, "algebra_degree": deg,
            "self_centralizing": dim == deg}


def tl_polyint(args):
    n = _need_n(args, 2)
    beta = parse_beta(args.beta)
    if args.ham == "hbeta" and beta is not None and not beta:
        raise UsageError("hbeta is undefined at beta=0")
    T = transfer.build_transfer(n)
    h = polyint.hamiltonian(n, args.ham)
    if beta is None:
        e = polyint.express_in_polynomial(T, h, "symbolic_beta")
    else:
        e = polyint.express_in_polynomial(T, h, "numeric_beta", beta=beta)
    out = encode(e)
    out.update({"n": n, "ham": args.ham, "beta": _beta_key(beta)})
    return out


def _scan_one(job):
    n, ham, b = job
    return polyint.exceptional_scan(n, ham, [b])


def tl_scan(args):
    n = _need_n(args, 2)
    if args.betas:
        betas = [Fraction(parse_beta(b.strip())) for b in args.betas.split(",")]
    else:
        betas = polyint.default_scan_betas()
    parts = _pmap(_scan_one, [(n, args.ham, b) for b in betas], args.threads)
    report = {}
    for p in parts:
        report.update(p)
    rows = scan_table(report)
    return {"n": n, "ham": args.ham, "rows": rows,
            "ok": all(not r["defined"] or r["expressible"] or r["in_Z"] for r in rows)}


# ev commands -------------------------------------------------------------------------


def ev_transfer(args):
    n = _need_n(args)
    if n > 12:
        raise UsageError("explicit matrices are limited to n <= 12")
    T = eightvertex.transfer_multiplicative(n)
    ok = eightvertex.forms_agree(n) if n <= 8 else T == eightvertex.transfer_additive(n)
    terms = [{"mask": m, "coeff": encode_value(Poly.from_dense(c, "u"))} for m, c in sorted(T.terms.items())]
    return {"n": n, "form": "xor", "terms": terms, "ok": ok}


def ev_spectrum(args):
    n = _need_n(args)
    sp = eightvertex.spectrum(n)
    return {"n": n, "entries": [{"k": e["k"], "mu": e["mu"], "multiplicity": e["multiplicity"],
                                 "eigenvalue": encode_value(e["eigenvalue"])} for e in sp.entries],
            "ok": sum(e["multiplicity"] for e in sp.entries) == 2 ** n}


def ev_idempotents(args):
    n = _need_n(args)
    if n > 10:
        raise UsageError("idempotents are limited to n <= 10")
    r = eightvertex.idempotent_check(n)
    ranks = eightvertex.idempotent_ranks(n)
    return {"n": n, "ranks": ranks, **r, "ok": all(r.values())}


def _conj_one(n):
    t0 = time.perf_counter()
    r = eightvertex.verify_conjecture_tmu_single(n)
    return n, r, int((time.perf_counter() - t0) * 1000)


def ev_verify_conjecture(args):
    n_max = args.max_n if args.max_n is not None else 180
    if not 1 <= n_max <= 200:
        raise UsageError("--max-n must lie in 1..200")
    results = _pmap(_conj_one, list(range(1, n_max + 1)), args.threads)
    rows = [{"n": n, "ok": r is True} for n, r, _ in results]
    out = {"max_n": n_max, "passed": sum(r["ok"] for r in rows), "rows": rows, "ok": all(r["ok"] for r in rows)}
    bad = [r for _, r, _ in results if r is not True]
    if bad:
        out["counterexample"] = bad[0]
    # timings are reported on stderr only, so the payload stays deterministic
    if args.timings:
        for n, _, ms in results:
            print(f"n={n} {ms} ms", file=sys.stderr)
    return out


COMMANDS = {
    ("tl", "diagrams"): tl_diagrams,
    ("tl", "mult"): tl_mult,
    ("tl", "jw"): tl_jw,
    ("tl", "gram"): tl_gram,
    ("tl", "repmat"): tl_repmat,
    ("tl", "transfer"): tl_transfer,
    ("tl", "commutator"): tl_commutator,
    ("tl", "identity-points"): tl_identity_points,
    ("tl", "hamiltonian"): tl_hamiltonian,
    ("tl", "minpoly"): tl_minpoly,
    ("tl", "centralizer"): tl_centralizer,
    ("tl", "polyint"): tl_polyint,
    ("tl", "scan"): tl_scan,
    ("ev", "transfer"): ev_transfer,
    ("ev", "spectrum"): ev_spectrum,
    ("ev", "idempotents"): ev_idempotents,
    ("ev", "verify-conjecture"): ev_verify_conjecture,
}

HELP = {
    "diagrams": "list the planar diagrams of TL_n",
    "mult": "multiply two words in the generators",
    "jw": "Jones-Wenzl idempotent",
    "gram": "Gram matrix and determinant of a standard module",
    "repmat": "matrix of a word in a standard or the full representation",
    "transfer": "transfer tangle T_n(u)",
    "commutator": "check [T_n(u), T_n(v)] = 0",
    "identity-points": "values of u where T_n(u) is a multiple of the identity",
    "hamiltonian": "principal hamiltonian at an identity point",
    "minpoly": "minimal polynomial of the hamiltonian",
    "centralizer": "dimension of the commutant of the hamiltonian",
    "polyint": "T_n(u) as a polynomial in the hamiltonian",
    "scan": "classify beta values as expressible or exceptional",
    "spectrum": "eigenvalues of the eight-vertex transfer matrix",
    "idempotents": "spectral idempotents of the eight-vertex hamiltonian",
    "verify-conjecture": "double-factorial eigenvalue identity for n = 1..max-n",
}
FAMILY_HELP = {"tl": "Temperley-Lieb loop model", "ev": "eight-vertex model"}

# parameters that do not change the payload and stay out of the cache key
_NOT_KEYED = {"family", "command", "json", "threads", "cache_dir", "no_cache", "timings", "verbose"}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--beta", help='rational loop value, e.g. "-2" or "7/2"; symbolic when omitted')
    common.add_argument("--ham", choices=["h0", "hbeta"], default="h0")
    common.add_argument("--symbolic", action="store_true", help="keep beta symbolic (the default without --beta)")
    common.add_argument("--max-n", type=int, dest="max_n")
    common.add_argument("--json", action="store_true")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--cache-dir", dest="cache_dir")
    common.add_argument("--no-cache", action="store_true", dest="no_cache")
    common.add_argument("--d", help="number of defects, or 'full'")
    common.add_argument("--a", default="", help="first factor as a generator word, e.g. 1,2")
    common.add_argument("--b", default="", help="second factor as a generator word")
    common.add_argument("--word", default="", help="element as a generator word")
    common.add_argument("--betas", help="comma-separated beta values for scans")
    common.add_argument("--mutate", action="store_true", help="perturb the construction (sanity check)")
    common.add_argument("--timings", action="store_true", help="per-n timings on stderr")
    common.add_argument("--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="tlint", description=__doc__.splitlines()[0])
    fam = parser.add_subparsers(dest="family", required=True)
    for family in ("tl", "ev"):
        sp = fam.add_parser(family, help=FAMILY_HELP[family]).add_subparsers(dest="command", required=True)
        for (f, name) in COMMANDS:
            if f == family:
                text = "eight-vertex transfer matrix" if (f, name) == ("ev", "transfer") else HELP[name]
                sp.add_parser(name, parents=[common], help=text, description=text)
    return parser


def render_text(payload, indent: str = "") -> list:
    """Plain-text rendering of a payload (exact values printed in the usual notation)."""
    lines = []
    for key in sorted(payload):
        val = payload[key]
        if isinstance(val, dict) and ("vars" in val or set(val) == {"num", "den"}):
            lines.append(f"{indent}{key}: {_show_value(val)}")
        elif isinstance(val, dict) and val.get("kind") in ("TLElement", "Matrix", "RepMatrix"):
            lines.append(f"{indent}{key}:")
            lines.extend(_show_structure(val, indent + "  "))
        elif isinstance(val, dict):
            lines.append(f"{indent}{key}:")
            lines.extend(render_text(val, indent + "  "))
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{indent}{key}:")
            for item in val:
                if "vars" in item or set(item) == {"num", "den"}:
                    lines.append(f"{indent}  {_show_value(item)}")
                else:
                    lines.append(f"{indent}  " + ", ".join(f"{k}={_show_inline(item[k])}" for k in sorted(item)))
        else:
            lines.append(f"{indent}{key}: {_show_inline(val)}")
    return lines


def _show_value(d) -> str:
    v = decode_value(d)
    return str(v)


def _show_inline(v) -> str:
    if isinstance(v, dict) and ("vars" in v or set(v) == {"num", "den"}):
        return _show_value(v)
    if isinstance(v, bool) or v is None:
        return str(v).lower() if isinstance(v, bool) else "-"
    return str(v)


def _show_structure(d, indent) -> list:
    if d["kind"] == "TLElement":
        out = [f"{indent}n={d['n']} ring={d['ring']} beta={_show_value(d['beta'])}"]
        out += [f"{indent}({_show_value(t['coeff'])}) * {t['pairing']}" for t in d["terms"]]
        return out
    out = [f"{indent}shape={d['shape']}"]
    out += [f"{indent}[{i},{j}] = {_show_value(x)}" for i, j, x in d["entries"]]
    return out


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    fn = COMMANDS[(args.family, args.command)]
    params = {k: v for k, v in sorted(vars(args).items()) if k not in _NOT_KEYED}
    cache = Cache(args.cache_dir, enabled=not args.no_cache)
    command = f"{args.family} {args.command}"
    try:
        payload = cache.get_put(command, params, lambda: _normalise(fn(args)))
    except UsageError as exc:
        print(f"tlint: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, DimError) as exc:
        print(f"tlint: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalError as exc:
        payload = {"ok": False, "counterexample": {"error": str(exc)}}
    if args.json:
        stdout.write(dumps(document(command, payload)) + "\n")
    else:
        stdout.write("\n".join(render_text(payload)) + "\n")
    return EXIT_FALSIFIED if payload.get("ok") is False else 0


def _normalise(payload):
    """Round-trip through canonical JSON so fresh and cached payloads are identical objects."""
    import json

    return json.loads(dumps(payload))


def main(argv=None) -> int:
    code = run(argv)
    sys.exit(code)


if __name__ == "__main__":
    main()


"""Command-line runner for workbench scripts.

Usage::

    tightclosure-wb SCRIPT [--json] [--emax N] [--kpow N] [--bound N] [--smax N]
                           [--order lex|grevlex] [--primes 2,3,5] [--threads N]
                           [--assert-test-element NAME]

Exit codes: 0 success, 1 error, 2 completed with an UNDETERMINED verdict.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import __version__
from .closure import (UNDETERMINED, ClosureConfig, bracket_power, tc_certificate_check, tc_hull,
                      tc_membership)
from .errors import PreconditionError, UnresolvedName, WorkbenchError
from .hilbert_kunz import hk_compare, hk_table, hs_table
from .local_cohomology import (a_invariant, fujita_probe, kodaira_tc_check, lc_fraction,
                               lc_frobenius, lc_zero_test, zero_star_test)
from .poly import Polynomial, PolyRing
from .rings import (IntegerPresentation, RingIdeal, RingPresentation, jacobian_test_candidates,
                    parameter_system, reduce_model_family, regular_sequence_check)
from .syntax import ElementDecl, IdealDecl, RingDecl, TaskDecl, WorkbenchScript, parse_script
from .theorems import (briancon_skoda_check, colon_capture_report, f_rational_probe,
                       f_regular_probe, mather_check, monomial_colon_check, monomial_integral_closure)

log = logging.getLogger("tightclosure.cli")

SCHEMA_ID = "tightclosure-result/1"


def schema_path():
    """Location of the shipped JSON schema for result documents."""
    from importlib.resources import files
    return files("tightclosure") / "schema" / "result.schema.json"
DEFAULT_PRIMES = (2, 3, 5, 7, 11, 13)


@dataclass
class RunOptions:
    emax: int = 5
    kpow: int | None = None
    bound: int = 3
    smax: int = 3
    order: str = "grevlex"
    primes: tuple = DEFAULT_PRIMES
    threads: int = 1
    test_element: str | None = None

    def echo(self) -> dict:
        return {"emax": self.emax, "kpow": self.kpow, "bound": self.bound, "smax": self.smax,
                "order": self.order, "primes": list(self.primes),
                "assert_test_element": self.test_element}


# ---------------------------------------------------------------------------
# binding declarations to a concrete ring

class Context:
    """Names of one script bound into a characteristic-p ring."""

    def __init__(self, script: WorkbenchScript, ring_decl: RingDecl, R: RingPresentation):
        self.script = script
        self.decl = ring_decl
        self.R = R

    def poly(self, terms) -> Polynomial:
        return self.R.ambient.poly(dict(terms))

    def ideal(self, name: str) -> RingIdeal:
        d = self._get(name, IdealDecl)
        return RingIdeal(self.R, [self.poly(g) for g in d.generators])

    def element(self, name: str) -> Polynomial:
        d = self._get(name, ElementDecl)
        return self.poly(d.poly)

    def _get(self, name, kind):
        d = self.script.lookup(name)
        if not isinstance(d, kind):
            raise PreconditionError(f"{name} is not an {kind.__name__[:-4].lower()}")
        if d.ring != self.decl.name:
            raise PreconditionError(f"{name} belongs to ring {d.ring}, not {self.decl.name}")
        return d


def build_ring(decl: RingDecl, order: str = "grevlex", p: int | None = None) -> RingPresentation:
    char = decl.char if p is None else p
    amb = PolyRing(char, decl.vars, decl.weights, order)
    return RingPresentation(amb, [amb.poly(dict(r)) for r in decl.relations], decl.domain)


def integer_presentation(decl: RingDecl, order: str = "grevlex") -> IntegerPresentation:
    return IntegerPresentation(decl.vars, decl.weights, tuple(dict(r) for r in decl.relations),
                               decl.domain, order)


# ---------------------------------------------------------------------------
# task dispatch

def _need(args, n, usage):
    if len(args) < n:
        raise PreconditionError(f"usage: {usage}")


def _config(opts: dict, run: RunOptions, ctx: Context) -> ClosureConfig:
    te = ctx.element(run.test_element) if run.test_element else None
    return ClosureConfig(e_max=opts.get("emax", run.emax), k_power=opts.get("kpow", run.kpow),
                         stabilization_window=opts.get("window", 2), cert_degree=opts.get("degree"),
                         test_element=te)


def _run_inner(task: TaskDecl, ctx: Context, run: RunOptions) -> dict:
    R = ctx.R
    op = task.op
    a = task.args[1:]
    o = task.opts
    cfg = _config(o, run, ctx)
    emax = o.get("emax", run.emax)
    bound = o.get("bound", run.bound)
    if op == "tc-membership":
        _need(a, 2, "tc-membership R I z")
        return tc_membership(R, ctx.ideal(a[0]), ctx.element(a[1]), cfg).to_dict()
    if op == "certificate":
        _need(a, 3, "certificate R I z c")
        return tc_certificate_check(R, ctx.ideal(a[0]), ctx.element(a[1]), ctx.element(a[2]),
                                    range(1, emax + 1)).to_dict()
    if op == "bracket-power":
        _need(a, 1, "bracket-power R I e N")
        bp = bracket_power(ctx.ideal(a[0]), o.get("e", 1))
        return {"e": bp.e, "q": bp.q, "generators": [str(g) for g in bp.generators]}
    if op == "tc-hull":
        _need(a, 1, "tc-hull R I bound N")
        return tc_hull(R, ctx.ideal(a[0]), bound, cfg).to_dict()
    if op == "hk":
        _need(a, 1, "hk R I emax N")
        return hk_table(R, ctx.ideal(a[0]), emax).to_dict()
    if op == "hs":
        _need(a, 1, "hs R I nmax N")
        return hs_table(R, ctx.ideal(a[0]), o.get("nmax", 4)).to_dict()
    if op == "hk-compare":
        _need(a, 2, "hk-compare R I J emax N")
        return hk_compare(R, ctx.ideal(a[0]), ctx.ideal(a[1]), emax).to_dict()
    if op == "colon-capture":
        _need(a, 1, "colon-capture R X index N")
        xs = parameter_system(R, ctx.ideal(a[0]).generators)
        return colon_capture_report(R, xs, o.get("index", 1), cfg).to_dict()
    if op == "monomial-colon":
        _need(a, 1, "monomial-colon R X t N")
        xs = parameter_system(R, ctx.ideal(a[0]).generators)
        return monomial_colon_check(R, xs, o.get("t", 2), cfg).to_dict()
    if op == "integral-closure":
        _need(a, 1, "integral-closure R I")
        res = monomial_integral_closure(_ambient(ctx, a[0]))
        return {"generators": [str(g) for g in res.ideal.generators],
                "facets": [{"normal": list(w), "bound": c} for w, c in res.region.facets],
                "verified": res.verified}
    if op == "briancon-skoda":
        _need(a, 1, "briancon-skoda R I")
        _regular(R)
        return briancon_skoda_check(_ambient(ctx, a[0])).to_dict()
    if op == "mather":
        _need(a, 1, "mather R f")
        _regular(R)
        return mather_check(ctx.element(a[0])).to_dict()
    if op in ("f-regular", "f-rational"):
        _need(a, 1, f"{op} R I1 I2 ... bound N")
        samples = [ctx.ideal(n) for n in a]
        fn = f_regular_probe if op == "f-regular" else f_rational_probe
        return fn(R, samples, bound, cfg).to_dict()
    if op in ("lc-zero", "lc-frobenius", "zero-star"):
        _need(a, 2, f"{op} R z X t N")
        xs = parameter_system(R, ctx.ideal(a[1]).generators)
        eta = lc_fraction(R, ctx.element(a[0]), o.get("t", 1), xs)
        if op == "lc-zero":
            return {"fraction": eta.to_dict(), "verdict": lc_zero_test(eta, o.get("smax", run.smax)).to_dict()}
        if op == "lc-frobenius":
            return {"fraction": eta.to_dict(), "image": lc_frobenius(eta, o.get("e", 1)).to_dict()}
        return {"fraction": eta.to_dict(), "verdict": zero_star_test(eta, cfg).to_dict()}
    if op == "a-invariant":
        return {"a_invariant": a_invariant(R)}
    if op == "fujita":
        xs = parameter_system(R, ctx.ideal(a[0]).generators) if a else None
        if "n" not in o:
            raise PreconditionError("usage: fujita R [X] n N t N")
        return fujita_probe(R, o["n"], o.get("t", o["n"]), xs, cfg).to_dict()
    if op == "kodaira":
        _need(a, 1, "kodaira R X bound N")
        return kodaira_tc_check(R, ctx.ideal(a[0]).generators, bound, cfg).to_dict()
    if op == "regular-sequence":
        _need(a, 1, "regular-sequence R X")
        xs = parameter_system(R, ctx.ideal(a[0]).generators)
        if not xs.verified:
            return {"parameters": False, "flags": []}
        rep = regular_sequence_check(R, xs)
        return {"parameters": True, "flags": rep.flags, "regular": rep.regular}
    if op == "test-candidates":
        return {"candidates": [str(c.rep) for c in jacobian_test_candidates(R, require_domain=False)]}
    if op == "dimension":
        return {"dimension": R.dim, "polynomial_ring": R.is_polynomial_ring}
    raise PreconditionError(f"unknown operation {op}")


def _ambient(ctx: Context, name: str):
    from .groebner import AmbientIdeal
    return AmbientIdeal(ctx.R.ambient, ctx.ideal(name).generators)


def _regular(R: RingPresentation):
    if not R.is_polynomial_ring:
        raise PreconditionError("this check needs a polynomial ring (no relations)")


def _statuses(obj):
    if isinstance(obj, dict):
        for k, v in obj.items():
            if k == "status" and isinstance(v, str):
                yield v
            else:
                yield from _statuses(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from _statuses(v)


def _summary(op: str, payload: dict):
    """The part of a fiber result that must agree across primes."""
    if op == "tc-membership":
        return payload["status"]
    if op == "tc-hull":
        return [g["generator"] for g in payload["generators"]]
    if op in ("zero-star", "lc-zero"):
        return payload["verdict"]["status"]
    return json.dumps(payload, sort_keys=True)


def run_models(script: WorkbenchScript, task: TaskDecl, run: RunOptions) -> dict:
    decl = script.ring(task.args[0])
    fam = reduce_model_family(integer_presentation(decl, run.order), run.primes)

    def one(fiber):
        ctx = Context(script, decl, fiber.ring)
        try:
            return {"prime": fiber.prime, "flags": fiber.flags, "result": _run_inner(task, ctx, run)}
        except WorkbenchError as exc:
            return {"prime": fiber.prime, "flags": fiber.flags, "error": exc.to_dict()}

    if run.threads > 1 and len(fam.fibers) > 1:
        with ThreadPoolExecutor(max_workers=run.threads) as pool:
            results = list(pool.map(one, fam.fibers))
    else:
        results = [one(f) for f in fam.fibers]
    groups: dict = {}
    for r in results:
        key = json.dumps(_summary(task.op, r["result"]), sort_keys=True) if "result" in r else "error"
        groups.setdefault(key, []).append(r["prime"])
    if len(groups) == 1:
        ((key, primes),) = groups.items()
        agreement = {"unanimous": True, "message": "all fibers agree", "value": json.loads(key)
                     if key != "error" else "error", "primes": primes}
    else:
        agreement = {"unanimous": False, "message": "fibers disagree",
                     "groups": [{"value": json.loads(k) if k != "error" else "error", "primes": v}
                                for k, v in groups.items()]}
    return {
        "primes": list(fam.primes),
        "skipped": [{"prime": s.prime, "reason": s.reason, "detail": s.detail} for s in fam.skipped],
        "fibers": results,
        "agreement": agreement,
    }


def run_task(script: WorkbenchScript, task: TaskDecl, run: RunOptions) -> dict:
    """One task entry of the result document (never raises for module errors)."""
    entry = {"task": task.render()[5:-1], "op": task.op}
    try:
        if not task.args:
            raise PreconditionError(f"task {task.op} needs a ring argument")
        decl = script.lookup(task.args[0])
        if not isinstance(decl, RingDecl):
            raise UnresolvedName(f"{task.args[0]} is not a ring", task.line, 1, ["ring name"])
        if decl.char is None:
            entry["models"] = run_models(script, task, run)
        else:
            ctx = Context(script, decl, build_ring(decl, run.order))
            entry["result"] = _run_inner(task, ctx, run)
        entry["ok"] = True
    except WorkbenchError as exc:
        entry["ok"] = False
        entry["error"] = exc.to_dict()
    return entry


def run_script(script: WorkbenchScript, run: RunOptions) -> tuple[dict, int]:
    tasks = [run_task(script, t, run) for t in script.tasks]
    doc = {"schema": SCHEMA_ID, "tool": {"name": "tightclosure", "version": __version__},
           "config": run.echo(), "tasks": tasks}
    if any(not t["ok"] for t in tasks):
        code = 1
    elif UNDETERMINED in set(_statuses(tasks)):
        code = 2
    else:
        code = 0
    return doc, code


# ---------------------------------------------------------------------------
# text rendering

def _table(rows: list[dict]) -> list[str]:
    cols = list(rows[0])
    cells = [[str(r.get(c, "")) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    out = ["  ".join(c.rjust(w) for c, w in zip(cols, widths))]
    out += ["  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in cells]
    return out


def _render(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, list) and v and all(isinstance(r, dict) for r in v) and \
                    all(not isinstance(x, (dict, list)) for r in v for x in r.values()):
                lines.append(f"{pad}{k}:")
                lines += [pad + "  " + ln for ln in _table(v)]
            elif isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines += _render(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj):
            lines.append(pad + ", ".join(_scalar(v) for v in obj))
        else:
            for i, v in enumerate(obj):
                lines.append(f"{pad}- [{i}]")
                lines += _render(v, indent + 1)
    else:
        lines.append(pad + _scalar(obj))
    return lines


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list) and not v:
        return "(none)"
    if isinstance(v, dict) and not v:
        return "{}"
    return str(v)


def render_text(doc: dict) -> str:
    lines = [f"tightclosure {doc['tool']['version']}"]
    for t in doc["tasks"]:
        lines.append("")
        lines.append(f"== task {t['task']}")
        body = {k: v for k, v in t.items() if k not in ("task", "op", "ok")}
        lines += _render(body, 1)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# entry point

def _primes(text: str) -> tuple:
    try:
        out = tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}")
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tightclosure-wb",
                                 description="Run a tight-closure workbench script.")
    ap.add_argument("script", help="script file, or - for standard input")
    ap.add_argument("--json", action="store_true", help="emit one JSON result document")
    ap.add_argument("--emax", type=int, default=5, help="largest Frobenius exponent e")
    ap.add_argument("--kpow", type=int, default=None, help="power K of test candidates (default p)")
    ap.add_argument("--bound", type=int, default=3, help="degree bound for hulls")
    ap.add_argument("--smax", type=int, default=3, help="search bound for local-cohomology zero tests")
    ap.add_argument("--order", choices=("lex", "grlex", "grevlex"), default="grevlex")
    ap.add_argument("--primes", type=_primes, default=DEFAULT_PRIMES,
                    help="comma-separated primes for char Z rings")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--assert-test-element", dest="test_element", metavar="NAME", default=None,
                    help="element to treat as a test element")
    ap.add_argument("--timing", action="store_true", help="report wall time on stderr")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    run = RunOptions(args.emax, args.kpow, args.bound, args.smax, args.order, args.primes,
                     max(1, args.threads), args.test_element)
    start = time.perf_counter()
    try:
        if args.script == "-":
            text = sys.stdin.read()
        else:
            with open(args.script, encoding="utf-8") as fh:
                text = fh.read()
        script = parse_script(text)
    except (OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except WorkbenchError as exc:
        if args.json:
            print(json.dumps({"schema": SCHEMA_ID, "tool": {"name": "tightclosure", "version": __version__},
                              "error": exc.to_dict()}, indent=2, sort_keys=True))
        print(f"error: {exc}", file=sys.stderr)
        return 1
    doc, code = run_script(script, run)
    if args.json:
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        sys.stdout.write(render_text(doc))
    for t in doc["tasks"]:
        if not t["ok"]:
            print(f"error in task {t['task']}: {t['error']['message']}", file=sys.stderr)
    if args.timing:
        print(f"elapsed {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())

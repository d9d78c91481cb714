"""The ``spcalc`` command line.

Each command resolves its names against the workspace (and the built-in
procedural categories) before computing, then prints one JSON record:

    {"cmd": ..., "verdict": ..., "certificate" | "witness": ..., "bounds": ..., "seed": ..., "wall_time": ...}

Exit status: 0 when every verdict was delivered, 1 when a check failed,
2 on parse, validation or usage errors.
"""

from __future__ import annotations

import argparse
import shlex
import sys
import time

from .base import base_by_name
from .category import FiniteCategory
from .config import DEFAULT_BOUNDS, Bounds
from .dsl import Workspace, load_workspace
from .errors import CommandError, ParseError, SpcalcError, ValidationError
from .presheaf import Weight, empty_diagram, presheaf_hom, weighted_colimit, yoneda_diagram
from .serial import dumps, jsonable, presheaf_json

FAILED = {"Incomplete", "NotComplete", "ConditionFails", "NotFlat", "Disagree", "Inconsistent", "Fails", "Fail"}


def _atom(text):
    try:
        return int(text)
    except ValueError:
        return text


def _sizes(f, bounds):
    k = f.ambient
    objs = k.objects() if k.is_finite else k.objects(bounds.probes)
    return {a: len(f.value(a)) for a in objs}


def _presheaf_record(f, bounds):
    return {"certificate": presheaf_json(f), "sizes": _sizes(f, bounds)}


class Context:
    def __init__(self, ws, bounds, seed, base):
        self.ws = ws
        self.bounds = bounds
        self.seed = seed
        self.base = base

    def category(self, name):
        return self.ws.category(name, self.base)

    def presheaf(self, name):
        return self.ws.lookup("presheaf", name)

    def functor(self, name):
        return self.ws.lookup("functor", name)

    def monoidal(self, name):
        if name in self.ws.monoidals:
            return self.ws.monoidals[name]
        from . import day

        builtins = {"xor2": day.xor_structure, "max": day.max_structure, "min": day.min_structure}
        if name in builtins:
            return builtins[name](base=self.base)
        raise CommandError(f"unknown monoidal structure {name!r}")

    def object(self, k, text):
        a = _atom(text)
        if not k.has_object(a):
            raise CommandError(f"{text!r} is not an object of {k.name}")
        return a


# ---------------------------------------------------------------------------
# commands: each returns a thunk so that name resolution happens up front


def cmd_eval(ctx, args):
    f = ctx.presheaf(args.presheaf)
    words = [w for w in args.at if w != "at"]
    if len(words) != 1:
        raise CommandError("usage: eval PRESHEAF [at] OBJECT")
    a = ctx.object(f.ambient, words[0])

    def run():
        v = f.value(a)
        return {"verdict": "Value", "size": len(v), "elements": jsonable(v.carrier)}
    return run


def cmd_hom(ctx, args):
    f, g = ctx.presheaf(args.source), ctx.presheaf(args.target)
    if f.ambient is not g.ambient:
        raise CommandError(f"{args.source} and {args.target} live on different categories")

    def run():
        h = presheaf_hom(f, g, ctx.bounds.iso_budget)
        return {"verdict": "Hom", "size": len(h)}
    return run


def _diagram(ctx, name, k_name):
    if name == "empty":
        if not k_name:
            raise CommandError("the empty diagram needs --cat")
        k = ctx.category(k_name)
        return empty_diagram(k), FiniteCategory.empty(k.base), k
    s = ctx.functor(name)
    return yoneda_diagram(s, s.target), s.source, s.target


def _weight(ctx, name, shape, variance):
    if name == "empty" or name == "unit":
        return Weight.unit(shape, variance, name=name)
    w = ctx.ws.lookup("weight", name)
    if w.variance != variance:
        raise CommandError(f"weight {name} is {w.variance}variant; this command needs a {variance} weight")
    return w


def cmd_colim(ctx, args):
    d, shape, k = _diagram(ctx, args.diagram, args.cat)
    w = _weight(ctx, args.weight, shape, "contra")

    def run():
        f = weighted_colimit(w, d, ambient=k)
        return {"verdict": "Small", **_presheaf_record(f, ctx.bounds)}
    return run


def cmd_limit(ctx, args):
    from .smallness import pointwise_limit

    d, shape, k = _diagram(ctx, args.diagram, args.cat)
    w = _weight(ctx, args.weight, shape, "co")

    def run():
        v = pointwise_limit(w, d, ctx.bounds, ambient=k).verdict
        out = v.to_json()
        if v.certificate is not None:
            out["sizes"] = _sizes(v.certificate, ctx.bounds)
        return out
    return run


def cmd_kan(ctx, args):
    from .kan import left_kan_along

    f, g = ctx.functor(args.functor), ctx.presheaf(args.presheaf)
    if g.ambient is not f.source:
        raise CommandError(f"{args.presheaf} does not live on the source of {args.functor}")

    def run():
        return {"verdict": "Small", **_presheaf_record(left_kan_along(f, g), ctx.bounds)}
    return run


def cmd_restrict(ctx, args):
    from .kan import restrict_along

    f, h = ctx.functor(args.functor), ctx.presheaf(args.presheaf)
    if h.ambient is not f.target:
        raise CommandError(f"{args.presheaf} does not live on the target of {args.functor}")

    def run():
        r = restrict_along(f, h, ctx.bounds)
        out = r.to_json()
        if r.presheaf is not None:
            out["sizes"] = _sizes(r.presheaf, ctx.bounds)
        return out
    return run


def _promonoidal(ctx, name):
    from .day import from_monoidal

    m = ctx.monoidal(name)
    return m, from_monoidal(m, bounds=ctx.bounds)


def cmd_convolve(ctx, args):
    from .day import convolve

    f, g = ctx.presheaf(args.left), ctx.presheaf(args.right)
    m = ctx.monoidal(args.monoidal)
    if f.ambient is not m.k or g.ambient is not m.k:
        raise CommandError(f"the presheaves must live on the category of {args.monoidal}")

    def run():
        _, p = _promonoidal(ctx, args.monoidal)
        return {"verdict": "Small", **_presheaf_record(convolve(f, g, p), ctx.bounds)}
    return run


def cmd_ihom(ctx, args):
    from .day import internal_hom_left, internal_hom_right

    g, h = ctx.presheaf(args.left), ctx.presheaf(args.right)
    m = ctx.monoidal(args.monoidal)
    if g.ambient is not m.k or h.ambient is not m.k:
        raise CommandError(f"the presheaves must live on the category of {args.monoidal}")

    def run():
        _, p = _promonoidal(ctx, args.monoidal)
        r = (internal_hom_left if args.left_hom else internal_hom_right)(g, h, p, ctx.bounds)
        out = r.to_json()
        if r.presheaf is not None:
            out.update(_presheaf_record(r.presheaf, ctx.bounds))
        return out
    return run


def cmd_isbell(ctx, args):
    from .isbell import left_conjugate, right_conjugate

    f = ctx.presheaf(args.presheaf)

    def run():
        r = (right_conjugate if args.right else left_conjugate)(f, ctx.bounds)
        out = r.to_json()
        if r.presheaf is not None:
            out["sizes"] = _sizes(r.presheaf, ctx.bounds)
        return out
    return run


def cmd_dm(ctx, args):
    from .isbell import dedekind_macneille_fixed_points, dm_cuts_oracle

    k = ctx.category(args.poset)
    if not k.is_finite or not k.base.truncate:
        raise CommandError(f"{args.poset} is not a finite category over Bool2")

    def run():
        fixed = dedekind_macneille_fixed_points(k, ctx.bounds)
        cuts = dm_cuts_oracle(k.objects(), lambda a, b: bool(k.hom(a, b).carrier))
        agree = set(fixed) == cuts
        return {"verdict": "FixedPoints", "count": len(fixed), "fixed_points": [k.sorted(d) for d in fixed],
                "oracle_agrees": agree}
    return run


def cmd_check(ctx, args):
    from . import completeness, day, isbell, kan

    what = args.what
    if what in ("complete", "isbell-gate", "phi"):
        if not args.cat:
            raise CommandError(f"check {what} needs --cat")
        k = ctx.category(args.cat)
        if what == "complete":
            return lambda: completeness.completeness_check(k, ctx.bounds).to_json()
        if what == "isbell-gate":
            return lambda: isbell.global_existence_gate(k, ctx.bounds).to_json()
        cls = args.phi_class or "FiniteProducts"
        if args.closure_bound is not None or args.closure_size is not None:
            bound = args.closure_bound if args.closure_bound is not None else 64
            return lambda: {"verdict": "Closure", **completeness.phi_closure(
                k, cls, bound, ctx.bounds, max_size=args.closure_size).to_json()}
        return lambda: completeness.phi_complete_check(k, cls, ctx.bounds, side=args.side).to_json()
    if what == "closed":
        if not args.monoidal:
            raise CommandError("check closed needs --monoidal")
        m = ctx.monoidal(args.monoidal)
        return lambda: day.closedness_check(m, ctx.bounds).to_json()
    if what == "continuity":
        if not args.functor:
            raise CommandError("check continuity needs --functor")
        f = ctx.functor(args.functor)
        return lambda: kan.continuity_check(f, args.phi_class or "FiniteLimits", ctx.bounds).to_json()
    if what == "flat":
        if not args.presheaf:
            raise CommandError("check flat needs --presheaf")
        g = ctx.presheaf(args.presheaf)
        return lambda: kan.flatness_check(g, args.phi_class or "FiniteProducts", ctx.bounds).to_json()
    raise CommandError(f"unknown check {what!r}")


def cmd_replay(ctx, args):
    from .replay import SUITES, replay_suite

    if args.suite not in SUITES:
        raise CommandError(f"unknown suite {args.suite!r}; choose one of {', '.join(sorted(SUITES))}")
    return lambda: replay_suite(args.suite, ctx.seed, ctx.bounds).to_json()


COMMANDS = {
    "eval": cmd_eval, "hom": cmd_hom, "colim": cmd_colim, "limit": cmd_limit, "kan": cmd_kan,
    "restrict": cmd_restrict, "convolve": cmd_convolve, "ihom": cmd_ihom, "isbell": cmd_isbell, "dm": cmd_dm,
    "check": cmd_check, "replay": cmd_replay,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workspace", help="workspace file (.cat)")
    common.add_argument("--bounds", default="", help="e.g. probes=16,depth=4")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--base", default="FinSet", help="base for built-in categories (FinSet or Bool2)")
    p = argparse.ArgumentParser(prog="spcalc", description="Small presheaves on enriched categories.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", parents=[common], help="evaluate a presheaf at an object")
    s.add_argument("presheaf")
    s.add_argument("at", nargs="+", metavar="[at] OBJECT")

    s = sub.add_parser("hom", parents=[common], help="size of the hom between two presheaves")
    s.add_argument("source")
    s.add_argument("target")

    for name, helptext in (("colim", "weighted colimit of representables"), ("limit", "weighted limit, certified")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--weight", required=True)
        s.add_argument("--diagram", required=True)
        s.add_argument("--cat")

    for name in ("kan", "restrict"):
        s = sub.add_parser(name, parents=[common], help="left Kan extension" if name == "kan" else "restriction along a functor")
        s.add_argument("--functor", required=True)
        s.add_argument("--presheaf", required=True)

    s = sub.add_parser("convolve", parents=[common], help="Day convolution")
    s.add_argument("left")
    s.add_argument("right")
    s.add_argument("--monoidal", required=True)

    s = sub.add_parser("ihom", parents=[common], help="internal hom for Day convolution")
    s.add_argument("left")
    s.add_argument("right")
    s.add_argument("--monoidal", required=True)
    s.add_argument("--left-hom", action="store_true", help="the hom adjoint on the other side")

    s = sub.add_parser("isbell", parents=[common], help="Isbell conjugate")
    s.add_argument("presheaf")
    side = s.add_mutually_exclusive_group()
    side.add_argument("--left", action="store_true", help="O, for a presheaf on K (default)")
    side.add_argument("--right", action="store_true", help="Spec, for a presheaf on K^op")

    s = sub.add_parser("dm", parents=[common], help="Dedekind-MacNeille fixed points of a poset")
    s.add_argument("poset")

    s = sub.add_parser("check", parents=[common], help="property checks")
    s.add_argument("what", choices=["complete", "closed", "continuity", "flat", "isbell-gate", "phi"])
    s.add_argument("--cat")
    s.add_argument("--monoidal")
    s.add_argument("--functor")
    s.add_argument("--presheaf")
    s.add_argument("--class", dest="phi_class")
    s.add_argument("--side", default="K", choices=["K", "PK"])
    s.add_argument("--closure-bound", type=int, help="cap on iso classes in the closure")
    s.add_argument("--closure-size", type=int, help="drop closure members with a larger value")

    s = sub.add_parser("replay", parents=[common], help="run a randomized replay suite")
    s.add_argument("suite")
    return p


def run_command(ws, argv, seed=0, bounds=DEFAULT_BOUNDS):
    """Run one command against a workspace and return the record (without wall time)."""
    args = build_parser().parse_args(argv)
    return _execute(ws, args, bounds, seed, " ".join(argv))[0]


def _execute(ws, args, bounds, seed, echo):
    ctx = Context(ws, bounds, seed, base_by_name(args.base))
    thunk = COMMANDS[args.command](ctx, args)
    start = time.perf_counter()
    payload = thunk()
    elapsed = time.perf_counter() - start
    record = {"cmd": echo, "bounds": bounds.to_json(), "seed": seed, **payload}
    return record, elapsed


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        bounds = Bounds.parse(args.bounds) if args.bounds else DEFAULT_BOUNDS
        ws = load_workspace(args.workspace) if args.workspace else Workspace(bounds=bounds)
        if args.bounds:
            ws.bounds = bounds
        else:
            bounds = ws.bounds
        record, elapsed = _execute(ws, args, bounds, args.seed, shlex.join(argv))
    except (ParseError, ValidationError, CommandError, OSError) as e:
        print(dumps({"cmd": shlex.join(argv), "verdict": "Error", "error": type(e).__name__, "message": str(e)}))
        print(f"spcalc: {e}", file=sys.stderr)
        if isinstance(e, CommandError):
            print(parser.format_usage(), file=sys.stderr, end="")
        return 2
    except SpcalcError as e:
        print(dumps({"cmd": shlex.join(argv), "verdict": "Error", "error": type(e).__name__, "message": str(e)}))
        print(f"spcalc: {e}", file=sys.stderr)
        return 1
    record["wall_time"] = round(elapsed, 6)
    print(dumps(record))
    return 1 if record.get("verdict") in FAILED else 0


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``dvdp analyze|fedder|singular|classify|members|catalog``.

Every command builds one report dict and writes it once, either as key-sorted
JSON (``--format json``, versioned by ``schema``) or as a plain text rendering.
Exit status: 0 when every check passes, 1 on an expectation failure, 2 on bad
input (argparse usage errors included).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .catalog import (CatalogError, DynkinType, PARAMETRIZATIONS, VerificationError, analyze_surface,
                      get_entry, load_catalog, parse_parameters, verify_entry, verify_family,
                      verify_parametrization)
from .catalog.entries import DOMAIN_MIN_DEGREE
from .exactalg import ParseError, PolyRing, field_create, poly_parse
from .fsplit import fedder
from .pencil import sample_members
from .wvariety import default_k_max, singular_points, surface_create

SCHEMA = 1
HYPERSURFACE_VARS = ("x", "y", "z", "w")
CI_VARS = ("x0", "x1", "x2", "x3", "x4")


class InputError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


# ---------------------------------------------------------------------------
# input handling
# ---------------------------------------------------------------------------


def _int_list(text):
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def _surface(args):
    eqs = [e.strip() for e in args.eq.split(";") if e.strip()]
    if not eqs or len(eqs) > 2:
        raise InputError("--eq takes one equation, or two quadrics separated by ';'")
    kind = "ci" if len(eqs) == 2 else "hypersurface"
    if args.vars:
        names = tuple(v.strip() for v in args.vars.split(","))
    else:
        names = CI_VARS if kind == "ci" else HYPERSURFACE_VARS
    weights = _int_list(args.weights) if args.weights else None
    if kind == "hypersurface" and weights is None:
        raise InputError("hypersurfaces need --weights")
    if kind == "ci":
        if weights is not None and set(weights) != {1}:
            raise InputError("complete intersections live in P^4 with weights 1,1,1,1,1")
        weights = None
    F = field_create(args.p, args.base_degree)
    R = PolyRing(F, names)
    polys = [poly_parse(e, R, F) for e in eqs]
    return surface_create(kind, F, polys, weights, names)


def _k_max(args):
    if args.ext_bound is None:
        return default_k_max()
    if args.ext_bound < 1:
        raise InputError("--ext-bound must be at least 1")
    return args.ext_bound


def _sampling_degree(X, k):
    if k is None:
        k = 4 if X.p == 2 else 2
    if k % X.field.k:
        raise InputError(f"--field-ext {k} is not a multiple of the coefficient field degree {X.field.k}")
    return k


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _check(name, passed, expected, computed):
    return {"name": name, "passed": bool(passed), "expected": expected, "computed": computed}


def _expectations(args, dynkin=None, fsplit=None):
    checks = []
    if getattr(args, "expect_dynkin", None) is not None:
        exp = DynkinType.parse(args.expect_dynkin)
        checks.append(_check("dynkin", dynkin.matches(exp), str(exp), str(dynkin)))
    if getattr(args, "expect_fsplit", None) is not None:
        exp = args.expect_fsplit == "yes"
        checks.append(_check("fsplit", fsplit == exp, exp, fsplit))
    return checks


def cmd_analyze(args, with_fedder=True):
    X = _surface(args)
    an = analyze_surface(X, _k_max(args))
    results = an.to_json()
    if not with_fedder:
        results.pop("fedder")
    checks = [_check("certificate", an.certificate.ok, True, an.certificate.ok)]
    checks += _expectations(args, an.dynkin, an.fedder.fsplit if with_fedder else None)
    if with_fedder and args.trials:
        k = _sampling_degree(X, args.field_ext)
        results["sampling"] = sample_members(X, k, args.trials, args.seed).to_json()
    return results, checks


def cmd_classify(args):
    return cmd_analyze(args, with_fedder=False)


def cmd_fedder(args):
    X = _surface(args)
    v = fedder(X)
    return {"model": X.describe(), "fedder": v.to_json()}, _expectations(args, fsplit=v.fsplit)


def cmd_singular(args):
    X = _surface(args)
    points, cert = singular_points(X, _k_max(args))
    results = {
        "model": X.describe(),
        "singular_points": [sp.to_json() for sp in points],
        "certificate": dict(cert.to_json(), ok=cert.ok),
    }
    return results, [_check("certificate", cert.ok, True, cert.ok)]


def cmd_members(args):
    X = _surface(args)
    k = _sampling_degree(X, args.field_ext)
    rep = sample_members(X, k, args.trials, args.seed)
    return {"model": X.describe(), "sampling": rep.to_json(detail=True)}, []


def _catalog_entries(args):
    entries = load_catalog(args.catalog)
    if args.id:
        entries = [get_entry(args.id, args.catalog)]
    return entries


def cmd_catalog_verify(args):
    entries = _catalog_entries(args)
    if args.params and (len(entries) != 1 or not entries[0].domain):
        raise InputError("--params needs --id of a parametrized family")
    sample = None
    if args.members:
        sample = {"trials": args.trials, "seed": args.seed, "k": args.field_ext}
    k_max = _k_max(args)
    reports = []
    lines = []
    for e in entries:
        try:
            if args.params:
                k = args.field_degree or DOMAIN_MIN_DEGREE[e.domain]
                prm = parse_parameters(e, args.params, field_create(2, k))
                reps = [verify_entry(e, prm, k_max=k_max, sample=sample)]
            else:
                reps = verify_family(e, args.samples if e.domain else 1, k_max=k_max, sample=sample)
        except VerificationError as exc:
            reports.append({"id": e.id, "passed": False, "error": str(exc)})
            lines.append(f"FAIL {e.id} error: {exc}")
            continue
        for r in reps:
            reports.append(r.to_json())
            lines.append(r.summary())
    checks = [_check(r["id"], r["passed"], True, r["passed"]) for r in reports]
    return {"reports": reports, "lines": lines}, checks


def cmd_catalog_list(args):
    entries = _catalog_entries(args)
    return {"entries": [e.to_json() for e in entries]}, []


def cmd_catalog_parametrize(args):
    names = [args.which] if args.which else sorted(PARAMETRIZATIONS)
    out = []
    checks = []
    for name in names:
        if name not in PARAMETRIZATIONS:
            raise InputError(f"unknown parametrization {name!r}; choose from {sorted(PARAMETRIZATIONS)}")
        res = verify_parametrization(name)
        out.append(res.to_json())
        checks.append(_check(f"{name}:identity", res.identity_holds, True, res.identity_holds))
        checks.append(_check(f"{name}:rank", res.independence_holds, 7, res.rank))
    return {"parametrizations": out}, checks


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _text(command, results, checks):
    lines = [f"dvdp {__version__} {command}"]
    model = results.get("model")
    if model:
        eqs = " ; ".join(model["equations"])
        lines.append(f"model: {model['kind']} over {model['field']} weights={model['weights']} "
                     f"degree={model['degree']}: {eqs}")
    for sp in results.get("singular_points", []):
        coords = ", ".join(f"{v}={c}" for v, c in sp["coords"].items())
        desc = f"  point {sp['chart']}=1: {coords} over {sp['field']}"
        if "type" in sp:
            desc += f": {sp['type']} (tau={sp['tjurina']})"
        lines.append(desc)
    if "certificate" in results:
        c = results["certificate"]
        lines.append(f"certificate: {'ok' if c['ok'] else 'FAILED'}")
    if "dynkin" in results:
        lines.append(f"dynkin: {results['dynkin']} (rank {results['rank']})")
    if "fedder" in results:
        f = results["fedder"]
        lines.append(f"fsplit: {'yes' if f['fsplit'] else 'no'}" + (f" witness {f['witness']}" if f["witness"] else ""))
    if "sampling" in results:
        s = results["sampling"]
        lines.append(f"members over F_{s['q']}: {s['trials']} trials seed {s['seed']}: "
                     f"smooth {s['smooth_count']}, ordinary {s['ordinary_count']}, "
                     f"supersingular {s['supersingular_count']}")
        for m in s.get("members", []):
            tail = f" N={m['N']} a={m['a']} {'ordinary' if m['ordinary'] else 'supersingular'}" if m["smooth"] else " singular"
            lines.append(f"  trial {m['trial']} section [{', '.join(m['section'])}]:{tail}")
    lines.extend(results.get("lines", []))
    for e in results.get("entries", []):
        if "equations" in e:
            lines.append(f"{e['id']} {e['p']} degree {e['degree']}: {' ; '.join(e['equations'])}")
        else:
            lines.append(f"{e['id']} {e['p']} degree {e['degree']}: registry {e['type']}")
    for r in results.get("parametrizations", []):
        lines.append(f"{r['which']}: identity {'holds' if r['identity_holds'] else 'FAILS'}, "
                     f"rank {r['rank']} over {r['field']}")
    bad = [c["name"] for c in checks if not c["passed"]]
    lines.append(f"summary: {len(checks) - len(bad)} passed, {len(bad)} failed")
    return "\n".join(lines) + "\n"


def _report(args, command, results, checks):
    echo = {k: v for k, v in vars(args).items() if k not in ("func", "format") and v is not None}
    results = {k: v for k, v in results.items() if k != "lines"}
    return {
        "schema": SCHEMA,
        "tool": {"name": "dvdp", "version": __version__},
        "command": command,
        "input": echo,
        "results": results,
        "checks": checks,
        "summary": {
            "passed": all(c["passed"] for c in checks),
            "checks": len(checks),
            "failed": [c["name"] for c in checks if not c["passed"]],
        },
    }


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_common(sp):
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("--ext-bound", type=int, help="largest extension degree searched for points "
                    "(default: $DVDP_EXT_BOUND or 4)")


def _add_surface(sp):
    sp.add_argument("--p", type=int, required=True, help="characteristic")
    sp.add_argument("--weights", help="e.g. 1,1,2,3; omit for a complete intersection in P^4")
    sp.add_argument("--eq", required=True, help="equation, or two quadrics separated by ';'")
    sp.add_argument("--vars", help="variable names, comma separated (default x,y,z,w or x0..x4)")
    sp.add_argument("--base-degree", type=int, default=1,
                    help="coefficients live in F_{p^k}, written in the generator g")


def _add_sampling(sp, trials):
    sp.add_argument("--trials", type=int, default=trials)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--field-ext", type=int, help="sample over F_{p^k} (default 4 for p=2, 2 otherwise)")


def _add_expect(sp, dynkin=True):
    if dynkin:
        sp.add_argument("--expect-dynkin", help="fail (exit 1) unless the Dynkin type matches")
    sp.add_argument("--expect-fsplit", choices=("yes", "no"))


def build_parser():
    parser = _Parser(prog="dvdp", description="Du Val del Pezzo surfaces over finite fields")
    parser.add_argument("--version", action="version", version=f"dvdp {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("analyze", help="full pipeline: singular points, ADE types, Fedder, sampling")
    _add_surface(sp)
    _add_common(sp)
    _add_sampling(sp, 0)
    _add_expect(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("classify", help="singular points and their ADE types with coindices")
    _add_surface(sp)
    _add_common(sp)
    sp.add_argument("--expect-dynkin")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("singular", help="certified singular locus")
    _add_surface(sp)
    _add_common(sp)
    sp.set_defaults(func=cmd_singular)

    sp = sub.add_parser("fedder", help="F-splitting by Fedder's criterion")
    _add_surface(sp)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    _add_expect(sp, dynkin=False)
    sp.set_defaults(func=cmd_fedder)

    sp = sub.add_parser("members", help="sample anti-canonical members and count points")
    _add_surface(sp)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    _add_sampling(sp, 50)
    sp.set_defaults(func=cmd_members)

    cat = sub.add_parser("catalog", help="replay the bundled catalog")
    csub = cat.add_subparsers(dest="action", required=True, parser_class=_Parser)
    sp = csub.add_parser("verify", help="verify catalog entries against their expectations")
    sp.add_argument("--id")
    sp.add_argument("--params", help='family parameters, e.g. "a=1,b=g^2"')
    sp.add_argument("--field-degree", type=int, help="parameters live in F_{2^k}")
    sp.add_argument("--samples", type=int, default=5, help="parameter points per family")
    sp.add_argument("--members", action="store_true", help="also sample anti-canonical members")
    sp.add_argument("--catalog", help="alternative catalog file")
    _add_common(sp)
    _add_sampling(sp, 50)
    sp.set_defaults(func=cmd_catalog_verify)

    sp = csub.add_parser("list", help="list catalog entries")
    sp.add_argument("--id")
    sp.add_argument("--catalog")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_catalog_list)

    sp = csub.add_parser("parametrize", help="check the explicit parametrizations")
    sp.add_argument("--which", help=f"one of {', '.join(sorted(PARAMETRIZATIONS))}")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_catalog_parametrize)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        command = args.command if args.command != "catalog" else f"catalog {args.action}"
        results, checks = args.func(args)
    except SystemExit as exc:     # --help, --version
        return exc.code or 0
    except InputError as exc:
        sys.stderr.write(f"dvdp: error: {exc}\n")
        return 2
    except (ValueError, KeyError, CatalogError, ParseError) as exc:
        sys.stderr.write(f"dvdp: error: {type(exc).__name__}: {exc}\n")
        return 2
    report = _report(args, command, results, checks)
    if args.format == "json":
        out = json.dumps(report, sort_keys=True, indent=2) + "\n"
    else:
        out = _text(command, results, checks)
    sys.stdout.write(out)
    sys.stdout.flush()
    return 0 if report["summary"]["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())

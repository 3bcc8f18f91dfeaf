"""Command-line front end.

Every command reads JSON (a file path, '-' for stdin, or an inline JSON
string) and writes canonical JSON to stdout.  Exit codes:

    0  success / FiniteDim / all identities hold
    1  NotFiniteDim or a failed identity
    2  malformed input or an engine error (the error name is printed)
    3  NecessaryOnly
"""

import argparse
import json
import os
import re
import sys
from fractions import Fraction

from . import drinfeld as dr
from . import lowrank, reflection
from .errors import DegreeLimitExceeded, TwYangianError
from .exactalg import poly_from_json, rat_str, to_rat
from .tensorrep import RFMatrix, parse_pair

EXIT_OK, EXIT_FAIL, EXIT_ERROR, EXIT_NECESSARY = 0, 1, 2, 3

_NEGATIVE = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")


class InputError(Exception):
    pass


def max_degree():
    try:
        return int(os.environ.get("TYK_MAX_DEGREE", "128"))
    except ValueError:
        return 128


def _check_degree(d, what):
    if d > max_degree():
        raise DegreeLimitExceeded("%s has degree %d > TYK_MAX_DEGREE=%d" % (what, d, max_degree()))


# ---------------------------------------------------------------------------
# input


def load_json(source):
    if source is None:
        raise InputError("missing input")
    if source == "-":
        text = sys.stdin.read()
    elif os.path.exists(source):
        with open(source) as fh:
            text = fh.read()
    elif source.lstrip()[:1] in "{[":
        text = source
    else:
        raise InputError("no such file: %s" % source)
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError("invalid JSON: %s" % e)


def load_pair(text, fallback=None):
    if text is None:
        if fallback is None:
            raise InputError("--pair is required")
        text = fallback
    if isinstance(text, str) and text.lstrip().startswith("{"):
        try:
            text = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError("invalid pair JSON: %s" % e)
    try:
        return parse_pair(text)
    except (KeyError, TypeError, ValueError) as e:
        raise InputError("invalid pair: %s" % e)


def _is_weight(obj):
    return isinstance(obj, dict) and "mu" in obj


def _is_tuple(obj):
    return isinstance(obj, dict) and ("polys" in obj or "tuple" in obj)


def parse_item(obj, pair_arg):
    """Return (pair, HighestWeight or DrinfeldTuple)."""
    if not isinstance(obj, dict):
        raise InputError("expected a JSON object")
    pair = load_pair(pair_arg, obj.get("pair"))
    try:
        if _is_weight(obj):
            w = dr.HighestWeight.from_json(obj, pair)
            for f in w.mu:
                _check_degree(max(f.num.degree, f.den.degree), "weight component")
            return pair, w
        if _is_tuple(obj):
            body = obj.get("tuple", obj)
            t = dr.DrinfeldTuple.from_json(body)
            for P in t.polys:
                _check_degree(P.degree, "polynomial")
            return pair, t
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise InputError("malformed input: %s" % e)
    raise InputError("input is neither a weight (key 'mu') nor a tuple (key 'polys')")


def parse_items(obj, pair_arg):
    if isinstance(obj, list):
        return [parse_item(x, pair_arg) for x in obj]
    return [parse_item(obj, pair_arg)]


# ---------------------------------------------------------------------------
# output


def tuple_out(t, pretty):
    if t is None:
        return None
    return t.pretty() if pretty else t.to_json()


def weight_out(w, pretty):
    if pretty:
        return {"pair": w.pair.label(), "mu": [str(f) for f in w.mu]}
    return w.to_json()


def verdict_out(v, pretty):
    return {"verdict": v.verdict, "tuple": tuple_out(v.tuple, pretty),
            "violations": list(v.violations)}


def emit(obj):
    sys.stdout.write(json.dumps(obj, sort_keys=True, ensure_ascii=False) + "\n")


def _many(results):
    return results[0] if len(results) == 1 else results


# ---------------------------------------------------------------------------
# commands


def cmd_verify(args):
    pair = load_pair(args.pair)
    sol = args.solution or "trivial"
    if sol == "trivial":
        S = reflection.g_solution(pair)
    elif sol == "kmatrix":
        S = reflection.kmatrix(pair, "a" if args.param is None else to_rat(args.param))
    elif sol in ("ev", "evaluation"):
        if pair.low_rank == "so3":
            S = lowrank.ev_so3_matrix("a" if args.param is None else to_rat(args.param))
        elif pair.low_rank == "so4":
            mus = (args.mu or ["a", "0"]) + ["0"]
            S = lowrank.ev_so4_matrix(mus[0], mus[1])
        else:
            raise InputError("evaluation matrices exist for so3 and so4 only")
    else:
        obj = load_json(sol)
        try:
            S = RFMatrix.from_json(obj, pair.indices)
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
            raise InputError("malformed matrix: %s" % e)
    reports = reflection.verify_all(pair, S, jobs=args.jobs)
    emit({"pair": pair.key(), "checks": [r.to_json() for r in reports]})
    return EXIT_OK if all(r.holds for r in reports) else EXIT_FAIL


def _classify_one(item):
    pair, obj = item
    return dr.classify_finite_dim(pair, obj)


def cmd_classify(args):
    items = parse_items(load_json(args.input), args.pair)
    if args.jobs and args.jobs > 1 and len(items) > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=args.jobs) as ex:
            verdicts = list(ex.map(_classify_one, items))
    else:
        verdicts = [_classify_one(it) for it in items]
    emit(_many([verdict_out(v, args.pretty) for v in verdicts]))
    # a batch reports its worst verdict: NotFiniteDim over NecessaryOnly over FiniteDim
    if any(v.verdict == dr.NOT_FINITE for v in verdicts):
        return EXIT_FAIL
    if any(v.verdict == dr.NECESSARY for v in verdicts):
        return EXIT_NECESSARY
    return EXIT_OK


def _need_weight(obj):
    if not isinstance(obj, dr.HighestWeight):
        raise InputError("this command needs a weight (key 'mu')")
    return obj


def _need_tuple(obj):
    if not isinstance(obj, dr.DrinfeldTuple):
        raise InputError("this command needs a tuple (key 'polys')")
    return obj


def cmd_associate(args):
    out = []
    for pair, obj in parse_items(load_json(args.input), args.pair):
        out.append(tuple_out(dr.associate(_need_weight(obj)), args.pretty))
    emit(_many(out))
    return EXIT_OK


def cmd_synthesize(args):
    out = []
    for pair, obj in parse_items(load_json(args.input), args.pair):
        t = _need_tuple(obj)
        bad = dr.validate_tuple(pair, t)
        if bad:
            raise InputError("; ".join(bad))
        out.append(weight_out(dr.synthesize(pair, t), args.pretty))
    emit(_many(out))
    return EXIT_OK


def cmd_twist(args):
    out = []
    for pair, obj in parse_items(load_json(args.input), args.pair):
        if isinstance(obj, dr.HighestWeight):
            out.append(weight_out(dr.psi_twist_weight(obj), args.pretty))
        else:
            out.append(tuple_out(dr.psi_twist(pair, obj), args.pretty))
    emit(_many(out))
    return EXIT_OK


def cmd_restrict(args):
    if args.m is None:
        raise InputError("--m is required")
    out = []
    for pair, obj in parse_items(load_json(args.input), args.pair):
        if isinstance(obj, dr.HighestWeight):
            out.append(weight_out(dr.restrict_weight(pair, obj, args.m), args.pretty))
        else:
            red, t = dr.restrict_tuple(pair, obj, args.m)
            body = tuple_out(t, args.pretty)
            out.append({"pair": red.key(), "tuple": body})
    emit(_many(out))
    return EXIT_OK


def _parse_q(text, n):
    if text is None:
        raise InputError("--param must give the Drinfeld polynomials as a JSON list")
    obj = load_json(text)
    if not isinstance(obj, list) or len(obj) != n:
        raise InputError("expected a list of %d polynomials" % n)
    try:
        Q = [poly_from_json(x) for x in obj]
    except (KeyError, TypeError, ValueError) as e:
        raise InputError("malformed polynomial: %s" % e)
    for q in Q:
        _check_degree(q.degree, "Drinfeld polynomial")
        if q.is_zero() or q.lc() != 1:
            raise InputError("Drinfeld polynomials must be monic")
    return Q


def cmd_tensor(args):
    out = []
    for pair, obj in parse_items(load_json(args.input), args.pair):
        Q = _parse_q(args.param, pair.n)
        if isinstance(obj, dr.HighestWeight):
            out.append(weight_out(dr.tensor_weight(obj, dr.yangian_weight(pair, Q)), args.pretty))
        else:
            out.append(tuple_out(dr.tensor_compose(pair, Q, obj), args.pretty))
    emit(_many(out))
    return EXIT_OK


def cmd_evaluate(args):
    pair = load_pair(args.pair)
    mus = [to_rat(x) for x in (args.mu or [])]
    if pair.low_rank == "so3":
        mus = mus or [Fraction(0)]
        w, M = lowrank.ev_so3(mus[0])
        S = lowrank.ev_so3_matrix("a")
        params = [rat_str(mus[0])]
    elif pair.low_rank == "so4":
        mus = (mus + [Fraction(0), Fraction(0)])[:2]
        w, M = lowrank.ev_so4(*mus)
        S = lowrank.ev_so4_matrix("a", mus[1])
        params = [rat_str(m) for m in mus]
    else:
        raise InputError("evaluate supports so3 and so4 only")
    reports = reflection.verify_all(pair, S, jobs=args.jobs)
    emit({"pair": pair.key(), "params": params, "weight": weight_out(w, args.pretty),
          "tuple": tuple_out(dr.associate(w), args.pretty),
          "checks": [r.to_json() for r in reports]})
    return EXIT_OK if all(r.holds for r in reports) else EXIT_FAIL


COMMANDS = {
    "verify": cmd_verify, "classify": cmd_classify, "associate": cmd_associate,
    "synthesize": cmd_synthesize, "twist": cmd_twist, "restrict": cmd_restrict,
    "tensor": cmd_tensor, "evaluate": cmd_evaluate,
}


def build_parser():
    ap = argparse.ArgumentParser(prog="twyangian",
                                 description="Highest weights and Drinfeld tuples of twisted Yangians.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_input=True):
        if with_input:
            p.add_argument("input", help="JSON file, '-' for stdin, or inline JSON")
        p.add_argument("--pair", help="pair as JSON or shorthand such as so6/so4+so2")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--pretty", action="store_true", help="render polynomials as factored strings")
        return p

    p = common(sub.add_parser("verify", help="check the reflection equation and related identities"), False)
    p.add_argument("--solution", default="trivial", help="trivial, kmatrix, ev, or a matrix JSON file")
    p.add_argument("--param", help="value of the K-matrix parameter (symbolic if omitted)")
    p.add_argument("--mu", nargs="+")
    common(sub.add_parser("classify", help="finite-dimensionality verdict"))
    common(sub.add_parser("associate", help="Drinfeld tuple of a weight"))
    common(sub.add_parser("synthesize", help="a weight associated to a tuple"))
    common(sub.add_parser("twist", help="apply the swap twist (so_{2n+1}, so_{2n})"))
    p = common(sub.add_parser("restrict", help="restrict to the reduced pair"))
    p.add_argument("--m", type=int)
    p = common(sub.add_parser("tensor", help="tensor with a Yangian module"))
    p.add_argument("--param", help="JSON list of Drinfeld polynomials Q_1..Q_n")
    p = common(sub.add_parser("evaluate", help="evaluation modules for so3 and so4"), False)
    p.add_argument("--mu", nargs="+", help="highest weight of the fixed-point subalgebra")
    # let values such as -1/3 through as arguments rather than option names
    for parser in [ap] + list(sub.choices.values()):
        parser._negative_number_matcher = _NEGATIVE
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except InputError as e:
        sys.stderr.write("error: %s\n" % e)
        return EXIT_ERROR
    except TwYangianError as e:
        sys.stderr.write("%s: %s\n" % (e.name, e))
        return EXIT_ERROR
    except (ValueError, ZeroDivisionError) as e:
        sys.stderr.write("error: %s\n" % e)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

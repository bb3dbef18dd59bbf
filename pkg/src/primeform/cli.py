"""Command-line interface: ``nf compute | enumerate | presentation | intersection | check``.

Exit status is 0 on success, 2 for invalid input and 3 when an internal
certificate fails (a diagnostic bundle goes to stderr).
"""

import argparse
import json
import sys

from .classdata import enumerate_classes, is_prime, normalize_class, validate_class
from .errors import InvariantError, ValidationError
from .intersection import adapted_intersection
from .intmatrix import IntMatrix
from .normalform import candidate_check, normal_form, render
from .presentation import build_presentation


def _tuple(text):
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _class_args(sp):
    sp.add_argument("-p", type=int, required=True, help="prime order")
    sp.add_argument("-n", type=_tuple, default=(), help="rotation data, e.g. 1,1,2,1,1 (empty for t=0)")
    sp.add_argument("--g0", type=int, required=True, help="genus of the quotient")


def build_parser():
    ap = argparse.ArgumentParser(prog="nf", description="Symplectic normal forms of prime-order mapping classes.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("compute", help="normal form of one class")
    _class_args(sp)
    sp.add_argument("--format", choices=["json", "text"], default="json")
    sp.add_argument("--trace-steps", action="store_true", help="include one record per reduction step")

    sp = sub.add_parser("enumerate", help="normal forms of every class of a given genus")
    sp.add_argument("-g", type=int, required=True)
    sp.add_argument("-p", type=int)
    sp.add_argument("--all-primes", action="store_true", help="every prime p <= 2g+1")
    sp.add_argument("--format", choices=["csv", "json"], default="csv")

    sp = sub.add_parser("presentation", help="adapted generators and defining relation")
    _class_args(sp)
    sp.add_argument("--format", choices=["json", "text"], default="json")

    sp = sub.add_parser("intersection", help="intersection matrix on the adapted basis")
    _class_args(sp)
    sp.add_argument("--format", choices=["json", "text"], default="json")

    sp = sub.add_parser("check", help="screen a candidate matrix")
    sp.add_argument("--matrix", required=True, help="JSON array of rows")
    sp.add_argument("--J", dest="J", help="form to test against (default: standard)")
    return ap


def _read_matrix(path):
    try:
        with open(path) as fh:
            return IntMatrix.from_json(fh.read())
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not JSON: {exc}") from None


def _emit(data, out):
    if isinstance(data, bytes):
        out.buffer.write(data) if hasattr(out, "buffer") else out.write(data.decode())
    else:
        out.write(data)
    out.flush()


def run(args, out):
    if args.cmd == "compute":
        res = normal_form(args.p, args.n, args.g0)
        if args.format == "json":
            _emit(render(res, "json", with_steps=args.trace_steps), out)
        else:
            _emit(render(res, "text"), out)
            if args.trace_steps:
                _emit("".join(json.dumps(s) + "\n" for s in res.steps), out)
    elif args.cmd == "enumerate":
        if args.all_primes:
            primes = [q for q in range(2, 2 * args.g + 2) if is_prime(q)]
        elif args.p is None:
            raise ValidationError("give -p or --all-primes")
        else:
            primes = [args.p]
        results = [normal_form(c.p, c.n, c.g0) for q in primes for c in enumerate_classes(args.g, q)]
        _emit(render(results, args.format), out)
    elif args.cmd == "presentation":
        cls = validate_class(args.p, args.n, args.g0)
        norm, power = normalize_class(cls)
        pres = build_presentation(norm)
        if args.format == "json":
            d = {"p": norm.p, "n": list(norm.n), "g0": norm.g0, "power": power}
            d.update(pres.to_json())
            _emit(json.dumps(d, indent=2) + "\n", out)
        else:
            _emit(pres.to_text() + "\n", out)
    elif args.cmd == "intersection":
        cls = validate_class(args.p, args.n, args.g0)
        norm, _ = normalize_class(cls)
        J = adapted_intersection(norm)
        if args.format == "json":
            _emit(json.dumps(J.to_json()) + "\n", out)
        else:
            _emit(J.to_text() + "\n", out)
    elif args.cmd == "check":
        M = _read_matrix(args.matrix)
        J = _read_matrix(args.J) if args.J else None
        _emit(json.dumps(candidate_check(M, J).to_dict(), indent=2) + "\n", out)


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        run(args, out)
    except ValidationError as exc:
        err.write(f"nf: error: {exc}\n")
        return 2
    except InvariantError as exc:
        bundle = {"error": str(exc), "details": {k: v for k, v in exc.details.items()}}
        err.write(json.dumps(bundle, indent=2, default=str) + "\n")
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())

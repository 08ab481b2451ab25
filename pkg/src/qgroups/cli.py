"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 on bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import fixtures
from .bialgebra import (CheckReport, LinearFunctional, check_antipode, check_coassociativity, check_counit,
                        check_density_spans, check_invariance, convolution_inverse, convolve)
from .finite.characters import NotExactlyRepresentable, characters, convolution_table
from .finite.core import FiniteQuantumGroup, InvalidQuantumGroup, tensor_product
from .finite.corep import CorepDecomposition, CorepError, corep_decompose
from .finite.haar import NotAState, NotFaithful, gns, haar_solve, multiplicative_unitary, reduce
from .graded import DiscSemigroup
from .groups.discrete import DiscreteGroup, FiniteTableGroup, GroupSpecError, builtin_group
from .groups.cayley import BallTooLarge
from .groups.kesten import condition5_check, kesten_estimate
from .jsonio import dumps
from .scalars import ONE, parse_rational, parse_scalar
from .suq2.algebra import SUq2Element, algebra as suq2_algebra, check_q, format_terms
from .suq2.rep import spectral_witness
from .suq2.rewriting import parse_element

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


# -- input/output helpers -------------------------------------------------------


def _read_json(source: str) -> dict:
    """A path, "-" for stdin, or the name of a bundled example."""
    try:
        if source == "-":
            return json.loads(sys.stdin.read())
        p = Path(source)
        if p.is_file():
            return json.loads(p.read_text(encoding="utf-8"))
        name = source.removeprefix("bundled:")
        try:
            return fixtures.bundled_json(name)
        except KeyError:
            raise InputError(f"{source}: no such file or bundled example (bundled: {', '.join(fixtures.names())})")
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: invalid JSON ({exc})") from None
    except OSError as exc:
        raise InputError(f"{source}: {exc}") from None


def _load(source: str):
    data = _read_json(source)
    try:
        return fixtures.load_document(data)
    except (InvalidQuantumGroup, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{source}: {exc}") from None


def _load_qg(source: str) -> FiniteQuantumGroup:
    obj = _load(source)
    if not isinstance(obj, FiniteQuantumGroup):
        raise InputError(f"{source}: expected a finite quantum group file")
    return obj


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, (list, tuple)) and obj and all(isinstance(v, (list, tuple, dict)) for v in obj):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}[{i}]")
    elif isinstance(obj, (list, tuple)):
        yield prefix, "\t".join(_cell(v) for v in obj)
    else:
        yield prefix, _cell(obj)


def _cell(v) -> str:
    if isinstance(v, float):
        return format(v, ".17g")
    if v is None:
        return ""
    return str(v)


def _emit(args, doc):
    if isinstance(doc, str):
        text = doc if doc.endswith("\n") else doc + "\n"
    elif getattr(args, "format", None) == "tsv":
        text = "".join(f"{k}\t{v}\n" for k, v in _flatten(doc))
    else:
        text = dumps(doc)
    out = getattr(args, "output", "-")
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _scalars(values) -> list:
    return [str(v) for v in values]


def _functional_doc(A, f: LinearFunctional) -> dict:
    return {A.label(k): str(c) for k, c in zip(f.keys, f.coeffs)}


# -- subcommands -------------------------------------------------------------


def cmd_check_axioms(args) -> int:
    A = _load(args.input)
    if isinstance(A, FiniteTableGroup):
        raise InputError("check-axioms needs a quantum group, got a group table")
    reports: list[CheckReport] = []
    extra: dict = {}
    if isinstance(A, DiscSemigroup):
        d = A.degree_bound
        reports.append(check_coassociativity(A))
        eps = A.counit()
        reports.append(check_counit(A, eps))
        reports.append(check_invariance(A, A.haar_candidate()))
        reports.append(check_density_spans(A, d))
        extra = {"counit": "evaluation at 1", "haar": "evaluation at 0", "degree_bound": d}
    else:
        reports.append(A.validate())
        reports.append(check_coassociativity(A))
        reports.append(check_counit(A))
        if A.counit() is not None:
            try:
                kappa = A.antipode_key if A.has_antipode() else None
            except Exception:
                kappa = None
            if kappa is not None:
                reports.append(check_antipode(A))
            else:
                reports.append(CheckReport("antipode", failures=["no antipode solves the axiom"]))
        reports.append(check_density_spans(A))
        haar = CheckReport("haar")
        try:
            h = haar_solve(A)
            haar.checked = A.dim
            extra["haar"] = _functional_doc(A, h)
        except (InvalidQuantumGroup, ValueError) as exc:
            haar.failures.append(str(exc))
        reports.append(haar)
        if A.counit() is not None:
            extra["counit"] = _functional_doc(A, A.counit())
    ok = all(r.passed for r in reports)
    doc = {"algebra": A.name, "passed": ok, "checks": [r.to_dict() for r in reports]}
    doc.update(extra)
    _emit(args, doc)
    return EXIT_OK if ok else EXIT_FAIL


def _group(spec: str) -> DiscreteGroup:
    p = Path(spec)
    if p.suffix == ".json" or p.is_file():
        data = _read_json(spec)
        try:
            return FiniteTableGroup.from_json(data)
        except (ValueError, KeyError, TypeError) as exc:
            raise InputError(f"{spec}: {exc}") from None
    try:
        return builtin_group(spec)
    except GroupSpecError as exc:
        raise InputError(str(exc)) from None


def cmd_kesten(args) -> int:
    G = _group(args.group)
    try:
        rep = kesten_estimate(G, args.radius, args.method, walk_length=args.walk_length,
                              oracle_norm=args.oracle_norm, use_builtin_oracle=args.builtin_oracle,
                              tol=args.tol, cap=args.cap)
    except (GroupSpecError, BallTooLarge) as exc:
        raise InputError(str(exc)) from None
    _emit(args, rep.to_dict())
    return EXIT_OK


def _complex_list(text: str) -> list[complex]:
    try:
        return [complex(t.strip().replace("i", "j")) for t in text.split(",")]
    except ValueError:
        raise InputError(f"cannot parse λ list {text!r}; use e.g. 0,1,1,1,1 or 1+2j,0") from None


def cmd_condition5(args) -> int:
    G = _group(args.group)
    lam = _complex_list(args.lam)
    try:
        rep = condition5_check(G, args.radius, lam, oracle_upper=args.oracle_upper, tol=args.tol, cap=args.cap)
    except (GroupSpecError, BallTooLarge) as exc:
        raise InputError(str(exc)) from None
    except ValueError as exc:
        if "λ needs" in str(exc):
            raise InputError(str(exc)) from None
        raise
    _emit(args, rep.to_dict())
    return EXIT_OK


def _q(text: str) -> Fraction:
    try:
        return check_q(parse_rational(text))
    except ValueError as exc:
        raise InputError(f"--q: {exc}") from None


def cmd_haar_suq2(args) -> int:
    q = _q(args.q)
    if (args.monomial is None) == (args.element is None):
        raise InputError("give exactly one of --monomial k,m,n and --element TEXT")
    if args.monomial is not None:
        try:
            k, m, n = (int(t) for t in args.monomial.split(","))
        except ValueError:
            raise InputError(f"--monomial expects k,m,n, got {args.monomial!r}") from None
        if m < 0 or n < 0:
            raise InputError("--monomial needs m, n >= 0")
        x = SUq2Element.monomial(q, k, m, n)
    else:
        try:
            x = SUq2Element(q, parse_element(args.element, q))
        except ValueError as exc:
            raise InputError(str(exc)) from None
    value = suq2_algebra(q).haar(x.terms)
    if args.format == "json":
        _emit(args, {"q": str(q), "terms": {f"{k},{m},{n}": str(c) for (k, m, n), c in sorted(x.terms.items())},
                     "haar": str(value)})
    else:
        _emit(args, str(value))
    return EXIT_OK


def cmd_suq2_normal_form(args) -> int:
    q = _q(args.q)
    try:
        terms = parse_element(args.element, q, args.strategy)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.format == "json":
        _emit(args, {"q": str(q), "terms": [[k, m, n, str(c)] for (k, m, n), c in sorted(terms.items())]})
    else:
        _emit(args, format_terms(terms) or "0")
    return EXIT_OK


def cmd_suq2_witness(args) -> int:
    try:
        q = float(Fraction(args.q)) if "/" in args.q else float(args.q)
    except ValueError:
        raise InputError(f"--q: cannot parse {args.q!r}") from None
    values = []
    try:
        for n in args.n_max:
            values.append({"n_max": n, "witness": spectral_witness(q, n)})
    except ValueError as exc:
        raise InputError(str(exc)) from None
    mono = all(a["witness"] <= b["witness"] + 1e-12 for a, b in zip(values, values[1:]))
    bounded = all(v["witness"] <= 2 + 1e-9 for v in values)
    _emit(args, {"q": q, "N": 2, "values": values, "monotone": mono, "bounded_by_N": bounded})
    return EXIT_OK if mono and bounded else EXIT_FAIL


def cmd_reduce(args) -> int:
    A = _load_qg(args.input)
    try:
        r = reduce(A)
    except (InvalidQuantumGroup, NotAState) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    doc = r.algebra.to_json()
    doc["theta"] = [_scalars(row) for row in r.theta]
    doc["haar"] = _scalars(r.haar.coeffs)
    doc["bijective"] = r.bijective
    _emit(args, doc)
    return EXIT_OK


def _state(A: FiniteQuantumGroup, spec: str) -> LinearFunctional:
    if spec == "haar":
        return haar_solve(A)
    if spec == "counit":
        eps = A.counit()
        if eps is None:
            raise InputError(f"{A.name} has no counit")
        return eps
    try:
        vals = [parse_scalar(t) for t in spec.split(",")]
    except ValueError as exc:
        raise InputError(f"--state: {exc}") from None
    if len(vals) != A.dim:
        raise InputError(f"--state needs {A.dim} values, got {len(vals)}")
    return A.functional(vals)


def cmd_gns(args) -> int:
    A = _load_qg(args.input)
    phi = _state(A, args.state)
    try:
        g = gns(A, phi)
    except NotAState as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    fails = g.check(A, phi)
    doc = g.to_json()
    doc["checks_passed"] = not fails
    doc["failures"] = fails
    _emit(args, doc)
    return EXIT_OK if not fails else EXIT_FAIL


def cmd_unitary(args) -> int:
    A = _load_qg(args.input)
    try:
        W = multiplicative_unitary(A)
    except NotFaithful as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    doc = W.to_json()
    ok = W.is_unitary()
    doc["unitary"] = ok
    _emit(args, doc)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_characters(args) -> int:
    A = _load_qg(args.input)
    try:
        chars = characters(A)
    except NotExactlyRepresentable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    table = convolution_table(A, chars)
    eps = A.counit()
    unit = [i for i, c in enumerate(chars) if eps is not None and c.same_values(eps)]
    inverse = []
    for c in chars:
        inv = convolution_inverse(c, A)
        inverse.append(next(i for i, d in enumerate(chars) if d.same_values(inv)))
    ok = len(unit) == 1 and all(table[i][inverse[i]] == unit[0] == table[inverse[i]][i] for i in range(len(chars)))
    doc = {
        "algebra": A.name,
        "labels": list(A.labels),
        "count": len(chars),
        "characters": [_scalars(c.coeffs) for c in chars],
        "unit_index": unit[0] if unit else None,
        "inverse": inverse,
        "convolution_table": table,
        "group_axioms": ok,
    }
    _emit(args, doc)
    return EXIT_OK if ok else EXIT_FAIL


def _element(A: FiniteQuantumGroup, spec: str) -> dict:
    if spec in A.labels:
        return {A.labels.index(spec): ONE}
    if spec.isdigit() and int(spec) < A.dim:
        return {int(spec): ONE}
    try:
        vals = [parse_scalar(t) for t in spec.split(",")]
    except ValueError:
        raise InputError(f"--element: not a label, index or coefficient list: {spec!r}") from None
    if len(vals) != A.dim:
        raise InputError(f"--element needs {A.dim} coefficients, got {len(vals)}")
    return A.element(vals)


def cmd_corep(args) -> int:
    if args.check:
        data = _read_json(args.input)
        try:
            dec = CorepDecomposition.from_json(data)
        except CorepError as exc:
            _emit(args, {"passed": False, "failures": str(exc).split("; ")})
            return EXIT_FAIL
        except (InvalidQuantumGroup, ValueError) as exc:
            raise InputError(str(exc)) from None
        _emit(args, {"passed": True, "size": dec.w.size, "failures": []})
        return EXIT_OK
    A = _load_qg(args.input)
    if args.element is None:
        raise InputError("corep needs --element (label, index or coefficient list) unless --check is given")
    x = _element(A, args.element)
    if not x:
        raise InputError("--element must be nonzero")
    dec = corep_decompose(A, x)
    _emit(args, dec.to_json())
    return EXIT_OK


def cmd_tensor(args) -> int:
    A, B = _load_qg(args.first), _load_qg(args.second)
    T = tensor_product(A, B)
    _emit(args, T.to_json())
    return EXIT_OK if T.validate().passed else EXIT_FAIL


def cmd_convolve(args) -> int:
    A = _load_qg(args.input)
    f, g = _state(A, args.left), _state(A, args.right)
    _emit(args, {"values": _scalars(convolve(f, g, A).coeffs)})
    return EXIT_OK


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qgroups", description="Exact compact quantum group computations.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "tsv"), default=None,
                        help="json (default) or tsv; haar-suq2 and suq2-normal-form print plain text by default")
    common.add_argument("-o", "--output", default="-", help="output path, '-' for stdout")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check-axioms", parents=[common], help="Hopf axioms, density spans and Haar state")
    s.add_argument("input", help="JSON file, '-' for stdin, or a bundled name such as c_s3")
    s.set_defaults(func=cmd_check_axioms)

    for name, func in (("kesten", cmd_kesten), ("condition5", cmd_condition5)):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("group", help='built-in name ("Z^2", "F_2", "S_3", "Z x F_2") or a group-table JSON file')
        s.add_argument("--radius", type=int, required=True)
        s.add_argument("--tol", type=float, default=5e-2)
        s.add_argument("--cap", type=int, default=10_000_000, help="maximum ball size")
        s.set_defaults(func=func)
        if name == "kesten":
            s.add_argument("--method", choices=("lanczos", "walks", "both"), default="lanczos")
            s.add_argument("--walk-length", type=int, default=None, help="even word length 2n (default 8R)")
            s.add_argument("--oracle-norm", type=float, default=None, help="certified upper bound for the norm")
            s.add_argument("--builtin-oracle", action="store_true", help="use the bundled closed-form norm")
        else:
            s.add_argument("--lam", required=True, help="λ_0,...,λ_N (complex entries like 1+2j allowed)")
            s.add_argument("--oracle-upper", type=float, default=None)

    s = sub.add_parser("haar-suq2", parents=[common], help="exact Haar state of SU_q(2)")
    s.add_argument("--q", required=True, help="rational p/r with 0 < |q| < 1")
    s.add_argument("--monomial", help="k,m,n")
    s.add_argument("--element", help='e.g. "a* a + 2 g g*"')
    s.set_defaults(func=cmd_haar_suq2)

    s = sub.add_parser("suq2-normal-form", parents=[common], help="PBW normal form of an SU_q(2) element")
    s.add_argument("element")
    s.add_argument("--q", required=True)
    s.add_argument("--strategy", choices=("letter", "leftmost", "rightmost"), default="letter")
    s.set_defaults(func=cmd_suq2_normal_form)

    s = sub.add_parser("suq2-witness", parents=[common], help="spectral co-amenability witness of SU_q(2)")
    s.add_argument("--q", required=True)
    s.add_argument("--n-max", type=int, nargs="+", required=True)
    s.set_defaults(func=cmd_suq2_witness)

    for name, func, hlp in (("reduce", cmd_reduce, "quotient by the left kernel of the Haar state"),
                            ("characters", cmd_characters, "characters and their convolution group"),
                            ("unitary", cmd_unitary, "multiplicative unitary on the Haar GNS space")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("input")
        s.set_defaults(func=func)

    s = sub.add_parser("gns", parents=[common], help="GNS data of a state")
    s.add_argument("input")
    s.add_argument("--state", default="haar", help='"haar", "counit" or comma-separated values')
    s.set_defaults(func=cmd_gns)

    s = sub.add_parser("corep", parents=[common], help="corepresentation containing an element")
    s.add_argument("input", help="quantum group file, or a corepresentation file with --check")
    s.add_argument("--element", help="basis label, basis index or comma-separated coefficients")
    s.add_argument("--check", action="store_true", help="re-verify a corepresentation JSON file")
    s.set_defaults(func=cmd_corep)

    s = sub.add_parser("tensor", parents=[common], help="tensor product quantum group")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(func=cmd_tensor)

    s = sub.add_parser("convolve", parents=[common], help="convolution of two functionals")
    s.add_argument("input")
    s.add_argument("left")
    s.add_argument("right")
    s.set_defaults(func=cmd_convolve)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InvalidQuantumGroup, CorepError, NotAState, NotFaithful, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

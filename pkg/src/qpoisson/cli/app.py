"""Command-line front end.

Exit codes: 0 on success, 1 when a verify suite (or a mathematical membership
test) fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .. import cartan
from ..errors import ConfigError, LocalizationError, MembershipError, QPoissonError
from ..pairing import sigma, tau
from ..poisson import poisson_u1, poisson_zzeta, txi_element
from ..qalg.pbw import pbw_coordinates
from ..qalg.printing import format_key
from ..scalars import SpecPoint
from ..specfrob import (ClassicalElement, SpecializedElement, format_basis_key, frobenius_transpose,
                        frobenius_xi, frobenius_xiL, specialize)
from .parser import evaluate, evaluate_in
from .suites import SUITES, SuiteOptions, run_suite

FORMS = ("plain", "L", "DCP", "V")
CONFIG_KEYS = {"type", "at", "form", "l", "height", "json"}


@dataclass(frozen=True)
class Session:
    datum: object
    point: SpecPoint
    form: str | None
    json: bool
    ell: int | None
    height: int | None
    type_given: bool


class UsageError(QPoissonError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def read_config(path: str) -> dict:
    """Plain key=value lines; '#' starts a comment."""
    out = {}
    try:
        lines = open(path, encoding="utf-8").read().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc.strerror}") from exc
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{n}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise ConfigError(f"{path}:{n}: unknown key {key!r}")
        out[key] = value
    return out


def _session(args) -> Session:
    conf = read_config(args.config) if getattr(args, "config", None) else {}
    flags = {k: getattr(args, k) for k in ("type", "at", "form", "l", "height")
             if getattr(args, k, None) is not None}
    merged = {**conf, **flags}
    type_given = "type" in merged
    datum = cartan.parse_type(merged.get("type", "A1"))
    point = SpecPoint.parse(str(merged.get("at", "1")))
    point.check_datum(datum)
    form = merged.get("form")
    if form is not None and form not in FORMS:
        raise ConfigError(f"unknown form {form!r}; expected one of {', '.join(FORMS)}")

    def as_int(key):
        if merged.get(key) is None:
            return None
        try:
            return int(merged[key])
        except ValueError:
            raise ConfigError(f"{key} must be an integer, got {merged[key]!r}") from None
    use_json = getattr(args, "json", False) or str(conf.get("json", "")).lower() in ("1", "true", "yes")
    return Session(datum, point, form, use_json, as_int("l"), as_int("height"), type_given)


# -- output ------------------------------------------------------------------------

def element_json(x) -> dict:
    terms = []
    for key in sorted(x.terms):
        f, lam, e = key
        terms.append({"f": list(f), "k": list(lam), "e": list(e), "coeff": str(x.terms[key]),
                      "text": format_key(key, x.alg.flavor) or "1"})
    fn, kn, en = ("F", "K", "E") if x.alg.flavor == "U" else ("Y", "Z", "X")
    return {"type": x.alg.datum.name, "algebra": x.alg.flavor,
            "legend": {"f": f"{fn}(i) for each index, left to right",
                       "k": f"{kn}(weight) in simple-root coordinates",
                       "e": f"{en}(i) for each index, left to right"},
            "terms": terms}


def tensor_json(t) -> dict:
    terms = []
    for keys in sorted(t.terms):
        legs = [{"f": list(f), "k": list(lam), "e": list(e)} for f, lam, e in keys]
        terms.append({"legs": legs, "coeff": str(t.terms[keys]),
                      "text": " (x) ".join(format_key(k, t.alg.flavor) or "1" for k in keys)})
    return {"type": t.alg.datum.name, "algebra": t.alg.flavor, "arity": t.arity, "terms": terms}


def classical_json(c: ClassicalElement) -> dict:
    from ..specfrob import format_classical_key
    return {"algebra": "U(g)" if c.flavor == "U" else "U(m)",
            "terms": [{"f": list(m), "h": list(h), "e": list(n), "coeff": str(v),
                       "text": format_classical_key(c.datum, c.flavor, (m, h, n))}
                      for (m, h, n), v in sorted(c.terms.items())]}


def _emit(session, out, text: str, payload: dict):
    if session.json:
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        out.write(text + "\n")


def _emit_value(session, out, x):
    if isinstance(x, SpecializedElement):
        _emit(session, out, str(x), x.to_json())
    elif isinstance(x, ClassicalElement):
        _emit(session, out, str(x), classical_json(x))
    else:
        _emit(session, out, str(x), element_json(x))


# -- commands --------------------------------------------------------------------------

def cmd_normal_form(session, args, out):
    _emit_value(session, out, evaluate(args.expr, session.datum))
    return 0


def cmd_coproduct(session, args, out):
    x = evaluate(args.expr, session.datum)
    t = x.alg.coproduct(x, args.n)
    _emit(session, out, str(t), tensor_json(t))
    return 0


def cmd_antipode(session, args, out):
    x = evaluate(args.expr, session.datum)
    y = x.alg.antipode_inverse(x) if args.inverse else x.alg.antipode(x)
    _emit_value(session, out, y)
    return 0


def cmd_pair(session, args, out):
    if args.which == "tau":
        x, y = evaluate_in(args.x, session.datum, "U"), evaluate_in(args.y, session.datum, "U")
        value = tau(x, y)
    else:
        x, y = evaluate_in(args.x, session.datum, "U"), evaluate_in(args.y, session.datum, "V")
        value = sigma(x, y)
    _emit(session, out, str(value), {"pairing": args.which, "value": str(value)})
    return 0


def _pbw_key_text(datum, key, form):
    m, lam, n = key
    if form == "DCP":
        return format_basis_key(datum, "DCP", key)
    from ..specfrob import _root_name
    N = len(m)

    def piece(k, e, letter):
        name = _root_name(datum, k, letter)
        if e == 1:
            return name
        return f"dp({name}, {e})" if form == "L" else f"{name}^{e}"
    parts = [piece(k, m[k], "F") for k in reversed(range(N)) if m[k]]
    if any(lam):
        parts.append(f"K({cartan.format_weight(lam)})")
    parts += [piece(k, n[k], "E") for k in reversed(range(N)) if n[k]]
    return "*".join(parts) or "1"


def cmd_pbw_coords(session, args, out):
    form = args.form or session.form or "plain"
    if form not in ("plain", "L", "DCP"):
        raise UsageError("pbw-coords takes --form plain, L or DCP")
    x = evaluate_in(args.expr, session.datum, "U")
    coords = pbw_coordinates(x, form)
    rows = [(key, coords[key]) for key in sorted(coords)]
    text = "\n".join(f"{c}\t{_pbw_key_text(session.datum, key, form)}" for key, c in rows) or "0"
    payload = {"form": form, "roots": [list(b) for b in session.datum.longest_word().roots],
               "terms": [{"f": list(m), "k": list(lam), "e": list(n), "coeff": str(c),
                          "text": _pbw_key_text(session.datum, (m, lam, n), form)}
                         for (m, lam, n), c in rows]}
    _emit(session, out, text, payload)
    return 0


def cmd_specialize(session, args, out):
    point = SpecPoint.parse(args.at) if args.at else session.point
    x = evaluate(args.expr, session.datum)
    form = args.form or session.form or ("DCP" if x.alg.flavor == "U" else "V")
    if form == "plain":
        raise UsageError("specialize needs an integral form: L, DCP or V")
    _emit_value(session, out, specialize(x, point, form))
    return 0


def cmd_frobenius(session, args, out):
    ell = session.ell or 3
    zeta = SpecPoint(ell)
    if zeta.is_one:
        raise UsageError("the Frobenius maps need l >= 3")
    if args.which == "xiL":
        x = evaluate_in(args.expr, session.datum, "U")
        y = frobenius_xiL(specialize(x, zeta, "L"))
    elif args.which == "xi":
        x = evaluate_in(args.expr, session.datum, "V")
        y = frobenius_xi(specialize(x, zeta, "V"))
    else:
        x = evaluate_in(args.expr, session.datum, "U")
        y = frobenius_transpose(specialize(x, SpecPoint(1), "DCP"), ell)
    _emit_value(session, out, y)
    return 0


def cmd_poisson(session, args, out):
    point = SpecPoint.parse(args.at) if args.at else session.point
    a = evaluate_in(args.a, session.datum, "U")
    b = evaluate_in(args.b, session.datum, "U")
    if point.is_one:
        value = poisson_u1(a, b).value
    else:
        if not args.via_txi:
            raise UsageError("at a root of unity the bracket is defined on the Frobenius center; "
                             "pass --via-txi to bracket the images of the arguments under txi")
        value = poisson_zzeta(txi_element(a, point.ell), txi_element(b, point.ell)).value
    _emit_value(session, out, value)
    return 0


def cmd_verify(session, args, out):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    opts = SuiteOptions(types=(session.datum.name,) if session.type_given else None,
                        ell=session.ell, height=session.height)
    reports = [run_suite(name, opts) for name in names]
    failed = any(r["status"] != "pass" for r in reports)
    if session.json:
        out.write(json.dumps({"status": "fail" if failed else "pass", "suites": reports}, sort_keys=True) + "\n")
    else:
        for r in reports:
            for c in r["checks"]:
                line = f"{c['status'].upper()} {r['suite']}: {c['name']}"
                if "witness" in c:
                    line += f"  witness: {json.dumps(c['witness'], default=str)}"
                out.write(line + "\n")
            out.write(f"== {r['suite']}: {r['status'].upper()} ({r['seconds']:.2f} s)\n")
    return 1 if failed else 0


# -- argument parsing --------------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    s = argparse.SUPPRESS
    p.add_argument("--type", default=s, help="Cartan type, e.g. A1, A2, B2 (default A1)")
    p.add_argument("--config", default=s, help="key=value file with defaults for these options")
    p.add_argument("--json", action="store_true", default=s, help="machine-readable output")
    p.add_argument("--l", type=int, default=s, help="order of the root of unity")
    p.add_argument("--height", type=int, default=s, help="height bound for verify suites")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    p = _Parser(prog="qpoisson", parents=[common],
                description="Exact computations in U_q(g), U_q(m), their integral forms, "
                            "specializations, Frobenius maps and Poisson brackets.")
    p.add_argument("--at", default=argparse.SUPPRESS, help="specialization point: 1 or zeta:l")
    p.add_argument("--form", default=argparse.SUPPRESS, choices=FORMS, help="default basis")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, func, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        sp.set_defaults(func=func)
        return sp

    sp = cmd("normal-form", cmd_normal_form, "print the triangular normal form")
    sp.add_argument("expr")
    sp = cmd("coproduct", cmd_coproduct, "iterated coproduct")
    sp.add_argument("expr")
    sp.add_argument("--n", type=int, default=1, help="number of coproducts (n+1 legs)")
    sp = cmd("antipode", cmd_antipode, "antipode (or its inverse)")
    sp.add_argument("expr")
    sp.add_argument("--inverse", action="store_true")
    sp = cmd("pair", cmd_pair, "tau on U^{>=0} x U^{<=0} or sigma on U x V")
    sp.add_argument("which", choices=("tau", "sigma"))
    sp.add_argument("x")
    sp.add_argument("y")
    sp = cmd("pbw-coords", cmd_pbw_coords, "coordinates in a PBW basis of U")
    sp.add_argument("expr")
    sp.add_argument("--form", choices=("plain", "L", "DCP"), default=None)
    sp = cmd("specialize", cmd_specialize, "specialize an integral element at q = 1 or zeta")
    sp.add_argument("expr")
    sp.add_argument("--at", default=None, help="1 or zeta:l")
    sp.add_argument("--form", choices=("L", "DCP", "V"), default=None)
    sp = cmd("frobenius", cmd_frobenius, "xiL: U^L_zeta -> U^L_1, xi: V_zeta -> U(m), txi: U_1 -> U_zeta")
    sp.add_argument("which", choices=("xiL", "xi", "txi"))
    sp.add_argument("expr")
    sp = cmd("poisson", cmd_poisson, "Poisson bracket on U_1 or on the Frobenius center")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--at", default=None, help="1 or zeta:l")
    sp.add_argument("--via-txi", action="store_true", help="bracket txi(a) and txi(b) at zeta")
    sp = cmd("verify", cmd_verify, "run verification suites")
    sp.add_argument("suite", choices=sorted(SUITES) + ["all"])
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        session = _session(args)
        return args.func(session, args, out)
    except (MembershipError, LocalizationError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except QPoissonError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2

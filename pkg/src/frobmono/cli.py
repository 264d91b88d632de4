"""Command line front end.

Exit codes: 0 when every check passes, 1 when a verification fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

import numpy as np

from . import a3, g24
from .chambers import RefinementError, load_path, track_braid
from .linalg import SymMatrix
from .monodromy import BraidWord, MonodromyData, apply_braid_with_matrix, check_constraints
from .report import Report
from .symring import SymError

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def fmt_num(x) -> str:
    """Numbers with 15 significant digits."""
    if isinstance(x, complex):
        if x.imag == 0:
            return format(x.real, ".15g")
        return f"{x.real:.15g}{'+' if x.imag >= 0 else '-'}{abs(x.imag):.15g}j"
    return format(float(x), ".15g")


# ---------------------------------------------------------------------------
# output helpers


def _report_csv(rep: Report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["name", "status", "detail"])
    for c in sorted(rep.checks, key=lambda c: c.name):
        w.writerow([c.name, c.status, c.detail])
    return buf.getvalue()


def _matrix_csv(M: SymMatrix) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(M.to_strings())
    return buf.getvalue()


def _emit(args, rep: Report, extra: dict | None = None, matrix: SymMatrix | None = None) -> int:
    if args.format == "csv":
        text = _matrix_csv(matrix) if matrix is not None else _report_csv(rep)
    else:
        d = rep.to_dict()
        if extra:
            d.update(extra)
        text = json.dumps(d, sort_keys=True, indent=1) + "\n"
    _write(args.out, text)
    return rep.exit_code()


def _write(path: str | None, text: str) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


# ---------------------------------------------------------------------------
# commands


def _verify_a3() -> Report:
    rep = Report("verify a3")
    rep.extend(check_constraints(a3.a3_reference(0)), "constraints ")
    rep.extend(a3.reproduce_a3_table(), "table ")
    return rep


def _verify_g24() -> Report:
    rep = Report("verify g24")
    rep.extend(check_constraints(g24.g24_reference()), "constraints ")
    rep.extend(g24.psi_check_g24(), "psi ")
    rep.extend(g24.identity_in_v(), "v ")
    v = g24.solve_v()
    rep.add("v solve_v = 6", v == 6, f"v = {v}")
    return rep


def cmd_verify(args) -> int:
    if args.target == "a3":
        rep = _verify_a3()
    elif args.target == "g24":
        rep = _verify_g24()
    else:
        md = MonodromyData.from_json(_read(args.target))
        rep = Report(f"verify {args.target}")
        rep.extend(check_constraints(md))
    return _emit(args, rep)


def cmd_braid(args) -> int:
    md = MonodromyData.from_json(_read(args.input))
    word = BraidWord.parse(args.word)
    new, A = apply_braid_with_matrix(md, word)
    text = new.to_json()
    msg = f"A^beta({word})\n{A}\n"
    if args.out:
        _write(args.out, text)
        sys.stdout.write(msg)
    else:
        sys.stdout.write(text)
        sys.stderr.write(msg)
    return EXIT_OK


def cmd_track(args) -> int:
    phi, samples = load_path(_read(args.path))
    if args.phi is not None:
        phi = args.phi
    try:
        word = track_braid(samples, phi)
    except RefinementError as e:
        sys.stderr.write(f"refinement failed: {e}\n")
        return EXIT_FAIL
    sys.stdout.write(f"{word}\n")
    if args.apply:
        md = MonodromyData.from_json(_read(args.apply))
        new, _ = apply_braid_with_matrix(md, word)
        _write(args.out, new.to_json())
    return EXIT_OK


def cmd_a3_table(args) -> int:
    return _emit(args, a3.reproduce_a3_table())


def cmd_a3_point(args) -> int:
    p = a3.A3Point(args.t1, args.t2, args.t3)
    xs, us = a3.critical_data(p)
    Psi = a3.psi_matrix_a3(p)
    E = a3.flat_euler_matrix(p)
    eta = a3.ETA.to_numpy()
    rep = Report("a3 point")
    scale = max(1.0, float(np.abs(E).max()))
    rep.add("Psi^T Psi = eta", np.allclose(Psi.T @ Psi, eta, atol=1e-9))
    rep.add("Psi E Psi^-1 = diag(u)", np.allclose(Psi @ E @ np.linalg.inv(Psi), np.diag(us), atol=1e-9 * scale))
    extra = {
        "critical_points": [fmt_num(x) for x in xs],
        "canonical_coordinates": [fmt_num(u) for u in us],
        "psi": [[fmt_num(complex(x)) for x in row] for row in Psi],
    }
    return _emit(args, rep, extra)


def cmd_g24_verify(args) -> int:
    return _emit(args, _verify_g24())


def cmd_g24_gamma(args) -> int:
    sign = 1 if args.sign in ("+", "plus", "+1") else -1
    gam = g24.gamma_class(sign)
    rep = Report(f"gamma class ({args.sign})")
    tgt = g24.gamma_target(sign)
    for lab, a, b in zip(g24.BASIS, gam.coeffs, tgt.coeffs):
        rep.add(f"coefficient of sigma_{lab}", a == b, str(a))
    M = SymMatrix([[c] for c in gam.coeffs])
    return _emit(args, rep, {"class": [str(c) for c in gam.coeffs]}, M)


def cmd_g24_gram(args) -> int:
    td, G = g24.todd_and_gram()
    rep = Report("Riemann-Roch Gram matrix")
    rep.add("Gram matrix equals the Kapranov Gram matrix", G == g24.G_KAP)
    rep.add("Todd class integrates to 1", td.integral() == 1)
    return _emit(args, rep, {"gram": G.to_strings(), "todd": [str(c) for c in td.coeffs]}, G)


def cmd_g24_kapranov(args) -> int:
    return _emit(args, g24.verify_resultg24(), matrix=g24.c_kap(-1))


def cmd_g24_bands(args) -> int:
    return _emit(args, g24.band_table())


def cmd_g24_levelt(args) -> int:
    return _emit(args, g24.levelt_conjugation_check())


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", metavar="FILE")

    p = argparse.ArgumentParser(prog="frobmono", description="Monodromy data of semisimple Frobenius manifolds.")
    sub = p.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("verify", parents=[common], help="run the constraint suites")
    v.add_argument("target", help="a3, g24 or a monodromy-data JSON file")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("braid", parents=[common], help="apply a braid word to monodromy data")
    b.add_argument("input")
    b.add_argument("word", help='signed generators, e.g. "1 2 -1"')
    b.set_defaults(func=cmd_braid)

    t = sub.add_parser("track", parents=[common], help="braid word swept out along a path")
    t.add_argument("path")
    t.add_argument("--phi", type=float)
    t.add_argument("--apply", metavar="DATA")
    t.set_defaults(func=cmd_track)

    a = sub.add_parser("a3").add_subparsers(dest="sub", required=True)
    a.add_parser("table", parents=[common]).set_defaults(func=cmd_a3_table)
    ap = a.add_parser("point", parents=[common])
    for name in ("--t1", "--t2", "--t3"):
        ap.add_argument(name, type=complex, required=True, help="flat coordinate (Python complex syntax, e.g. 1+2j)")
    ap.set_defaults(func=cmd_a3_point)

    g = sub.add_parser("g24").add_subparsers(dest="sub", required=True)
    g.add_parser("verify", parents=[common]).set_defaults(func=cmd_g24_verify)
    gg = g.add_parser("gamma", parents=[common])
    gg.add_argument("--sign", choices=("+", "-", "plus", "minus", "+1", "-1"), default="-")
    gg.set_defaults(func=cmd_g24_gamma)
    g.add_parser("gram", parents=[common]).set_defaults(func=cmd_g24_gram)
    g.add_parser("kapranov", parents=[common]).set_defaults(func=cmd_g24_kapranov)
    g.add_parser("bands", parents=[common]).set_defaults(func=cmd_g24_bands)
    g.add_parser("levelt", parents=[common]).set_defaults(func=cmd_g24_levelt)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, SymError, ValueError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

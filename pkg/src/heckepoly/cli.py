"""Command-line front end.

Commands:

* ``datum``  -- describe a root datum (Weyl order, small minuscule coweights);
* ``poly``   -- the polynomial of a minuscule coweight, Satake basis or
  double-coset basis;
* ``eval``   -- evaluate the polynomial data at one Satake parameter;
* ``verify`` -- seeded verification suites (ch, inertia, satake, newton,
  modell), one JSON report per line.

All output is canonical JSON (sorted keys); with a fixed seed the bytes
are reproducible.  Exit codes: 0 pass, 1 verification failure,
2 validation error, 3 resource guard.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from .errors import ResourceLimitError, ValidationError
from .laurent import LaurentHalf, PrimeFieldWithV, RationalWithV, ScalarDomain
from .root_data import BasedRootDatum, build_standard
from .characters import (ext_power_character, minuscule_weights,
                         orbit_character)
from .satake import (FormalTorusDomain, SatakeParameter, evaluate,
                     frobenius_matrix)
from .hecke import (cayley_hamilton_check, evaluate_coefficients,
                    excursion_values, hecke_polynomial,
                    inertia_relation_check, reduce_mod_ell)
from .iwahori import DEFAULT_MAX_SUPPORT, AffineHeckeAlgebra

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_VALIDATION = 2
EXIT_RESOURCE = 3

_TRIAL_STRIDE = 1_000_003


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ": "))


def parse_mu(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise ValidationError(f"bad coweight {text!r}") from exc


def parse_field(text: str, rank: int) -> ScalarDomain:
    """formal | rat:v=<num>[/den] | ell=<p>,v=<r>[,q=<r>]"""
    text = text.strip()
    if text == "formal":
        return FormalTorusDomain(rank)
    if text.startswith("rat:v="):
        return RationalWithV(Fraction(text[len("rat:v="):]))
    if text.startswith("ell="):
        parts = dict(p.split("=", 1) for p in text.split(","))
        if "ell" not in parts or "v" not in parts:
            raise ValidationError(f"bad field spec {text!r}")
        q = int(parts["q"]) if "q" in parts else None
        return PrimeFieldWithV(int(parts["ell"]), int(parts["v"]), q)
    raise ValidationError(f"bad field spec {text!r} "
                          "(expected formal | rat:v=<q> | ell=<p>,v=<r>)")


def parse_twist(text: str):
    if text in ("paper", "classical"):
        return text
    if text.startswith("exp="):
        try:
            return int(text[4:])
        except ValueError as exc:
            raise ValidationError(f"bad twist {text!r}") from exc
    raise ValidationError(f"bad twist {text!r} (paper|classical|exp=<int>)")


@dataclass
class RunConfig:
    """Validated run parameters; a rejected config never starts a run."""

    command: str
    family: str = "GL"
    rank: int = 2
    mu: tuple[int, ...] | None = None
    twist: str | int = "paper"
    e_over_f: int = 1
    field: str = "formal"
    basis: str = "satake"
    trials: int = 10
    seed: int = 0
    d: int = 2
    max_norm: int = 2
    max_support: int = DEFAULT_MAX_SUPPORT
    entries: str | None = None
    out: str | None = None

    def datum(self) -> BasedRootDatum:
        return build_standard(self.family, self.rank)

    def domain(self, rank: int) -> ScalarDomain:
        return parse_field(self.field, rank)

    def require_mu(self) -> tuple[int, ...]:
        if self.mu is None:
            raise ValidationError("--mu is required")
        return self.mu


def _config_from_args(args) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for name in ("family", "rank", "twist", "e_over_f", "field", "basis",
                 "trials", "seed", "d", "max_norm", "max_support",
                 "entries", "out"):
        if getattr(args, name, None) is not None:
            setattr(cfg, name, getattr(args, name))
    if getattr(args, "mu", None) is not None:
        cfg.mu = parse_mu(args.mu)
    if isinstance(cfg.twist, str):
        cfg.twist = parse_twist(cfg.twist)
    if getattr(args, "check", None) is not None:
        cfg.command = f"verify-{args.check}"
    if cfg.trials < 1:
        raise ValidationError("--trials must be >= 1")
    return cfg


def _trial_rng(seed: int, index: int) -> random.Random:
    return random.Random(seed * _TRIAL_STRIDE + index)


# -- commands ----------------------------------------------------------------

def cmd_datum(cfg: RunConfig) -> tuple[list[str], int]:
    datum = cfg.datum()
    payload = {
        "command": "datum",
        "family": datum.family,
        "rank": datum.rank,
        "simple_roots": [list(a) for a in datum.simple_roots],
        "simple_coroots": [list(a) for a in datum.simple_coroots],
        "weyl_order": datum.weyl_order,
        "positive_roots": [list(a) for a in datum.positive_roots],
        "two_rho": list(datum.two_rho),
        "minuscule_dominant_coweights":
            [list(m) for m in datum.small_minuscule_dominants()],
    }
    return [_dump(payload)], EXIT_OK


def _laurent_pretty(c: LaurentHalf) -> str:
    """Readable rendering: even powers of v become powers of q."""
    if c.is_zero():
        return "0"
    parts = []
    for e, k in sorted(c.terms.items()):
        if e == 0:
            parts.append(str(k))
            continue
        if e % 2 == 0:
            base = "q" if e == 2 else f"q^{e // 2}"
        else:
            base = "v" if e == 1 else f"v^{e}"
        if k == 1:
            parts.append(base)
        elif k == -1:
            parts.append(f"-{base}")
        else:
            parts.append(f"{k}*{base}")
    return " + ".join(parts).replace("+ -", "- ")


def _render_coset_poly(degree: int, coset_coeffs) -> str:
    zero_vec = None
    terms = []
    for i, vec in enumerate(coset_coeffs):
        power = degree - i
        x_part = "" if power == 0 else ("X" if power == 1 else f"X^{power}")
        for lam, c in sorted(vec.coords.items(), reverse=True):
            if zero_vec is None:
                zero_vec = tuple(0 for _ in lam)
            if lam == zero_vec and c == LaurentHalf.from_int(1):
                terms.append(x_part or "1")
                continue
            label = "T[" + ",".join(str(x) for x in lam) + "]"
            if c == LaurentHalf.from_int(1):
                coeff = ""
            elif c == LaurentHalf.from_int(-1):
                coeff = "-"
            else:
                pretty = _laurent_pretty(c)
                coeff = f"({pretty})*" if "+" in pretty or "-" in pretty[1:] \
                    else f"{pretty}*"
            term = coeff + label + (f"*{x_part}" if x_part else "")
            terms.append(term)
    rendered = " + ".join(terms).replace("+ -", "- ")
    return rendered


def cmd_poly(cfg: RunConfig) -> tuple[list[str], int]:
    datum = cfg.datum()
    mu = cfg.require_mu()
    h = hecke_polynomial(datum, mu, cfg.twist, cfg.e_over_f)
    payload = {"command": "poly", "basis": cfg.basis,
               "polynomial": h.to_json()}
    if cfg.basis == "double-coset":
        algebra = AffineHeckeAlgebra(datum, max_support=cfg.max_support)
        coset = [algebra.satake_inverse(c) for c in h.coefficients]
        payload["coset_coefficients"] = [vec.to_json() for vec in coset]
        payload["rendering"] = _render_coset_poly(h.degree, coset)
    elif cfg.basis != "satake":
        raise ValidationError(f"unknown basis {cfg.basis!r}")
    return [_dump(payload)], EXIT_OK


def cmd_eval(cfg: RunConfig) -> tuple[list[str], int]:
    datum = cfg.datum()
    mu = cfg.require_mu()
    dom = cfg.domain(datum.rank)
    if cfg.entries is not None:
        entries = tuple(dom.parse_scalar(t) for t in cfg.entries.split(","))
        s = SatakeParameter(dom, entries)
    elif isinstance(dom, FormalTorusDomain):
        s = SatakeParameter.generic(datum.rank)
    else:
        s = SatakeParameter.random(dom, datum.rank, _trial_rng(cfg.seed, 0))
    h = hecke_polynomial(datum, mu, cfg.twist, cfg.e_over_f)
    values = evaluate_coefficients(h, s)
    m = frobenius_matrix(datum, mu, s, twist_exponent=h.twist_exponent)
    exc = excursion_values(datum, mu, s, cfg.twist, cfg.e_over_f)
    payload = {
        "command": "eval",
        "group": {"family": datum.family, "rank": datum.rank},
        "mu": list(mu),
        "twist": {"preset": h.twist_preset, "exponent": h.twist_exponent},
        "domain": dom.to_json(),
        "parameter": s.to_json()["entries"],
        "coefficient_values": [dom.scalar_str(x) for x in values],
        "frobenius": m.to_json(),
        "excursion_frobenius": [dom.scalar_str(e.value) for e in exc],
        "excursion_inertia": [e.value for e in
                              excursion_values(datum, mu, frobenius=False)],
    }
    return [_dump(payload)], EXIT_OK


# -- verification suites -------------------------------------------------------

def _verify_lines(reports) -> tuple[list[str], int]:
    lines = []
    failures = 0
    for rep in reports:
        obj = rep.to_json() if hasattr(rep, "to_json") else rep
        obj.setdefault("command", "verify")
        failures += 0 if obj["passed"] else 1
        lines.append(_dump(obj))
    summary = {"command": "verify", "check": "summary",
               "passed": failures == 0, "trials": len(lines),
               "failures": failures}
    lines.append(_dump(summary))
    return lines, EXIT_OK if failures == 0 else EXIT_VERIFY_FAILED


def verify_ch(cfg: RunConfig):
    datum = cfg.datum()
    mu = cfg.require_mu()
    dom = cfg.domain(datum.rank)
    h = hecke_polynomial(datum, mu, cfg.twist, cfg.e_over_f)
    reports = []
    for k in range(cfg.trials):
        rng = _trial_rng(cfg.seed, k)
        s = SatakeParameter.random(dom, datum.rank, rng)
        values = evaluate_coefficients(h, s)
        m = frobenius_matrix(datum, mu, s, twist_exponent=h.twist_exponent)
        rep = cayley_hamilton_check(h, m, values, dom, s)
        rep.extra.update({"trial": k, "seed": cfg.seed})
        reports.append(rep)
    return _verify_lines(reports)


def verify_inertia(cfg: RunConfig):
    d = cfg.d
    reports = []
    for k in range(cfg.trials):
        rng = _trial_rng(cfg.seed, k)
        m = [[rng.randint(-9, 9) for _ in range(d)] for _ in range(d)]
        rep = inertia_relation_check(d, m)
        rep.extra.update({"trial": k, "seed": cfg.seed, "matrix": m})
        reports.append(rep)
    jordan = [[1 if i == j or j == i + 1 else 0 for j in range(d)]
              for i in range(d)]
    rep = inertia_relation_check(d, jordan, require_nilpotent=True)
    rep.extra.update({"trial": cfg.trials, "seed": cfg.seed,
                      "matrix": jordan, "mode": "unipotent-jordan"})
    reports.append(rep)
    return _verify_lines(reports)


def verify_satake(cfg: RunConfig):
    datum = cfg.datum()
    algebra = AffineHeckeAlgebra(datum, max_support=cfg.max_support)
    reports = []
    for mu in datum.small_minuscule_dominants():
        image = algebra.satake_of_indicator(mu)
        expected = orbit_character(datum, mu).scale(
            LaurentHalf.v_power(datum.rho_pairing_exponent(mu)))
        reports.append({
            "check": "satake-minuscule", "mu": list(mu),
            "passed": image == expected,
            "image": image.to_json(), "expected": expected.to_json()})
    window = sorted(
        {lam for lam in _dominant_window(datum, cfg.max_norm)})
    closure = set()
    for lam in window:
        closure.update(datum.dominants_below(lam))
    labels, b = algebra.satake_transform_matrix(sorted(closure))
    diag_ok = all(
        b[i][i] == LaurentHalf.v_power(datum.rho_pairing_exponent(labels[i]))
        for i in range(len(labels)))
    tri_ok = all(b[i][j].is_zero() or datum.dominance_leq(labels[i], labels[j])
                 for i in range(len(labels)) for j in range(len(labels)))
    reports.append({
        "check": "satake-triangular",
        "labels": [list(l) for l in labels],
        "passed": diag_ok and tri_ok,
        "diagonal": [b[i][i].serialize() for i in range(len(labels))]})
    return _verify_lines(reports)


def _dominant_window(datum: BasedRootDatum, max_norm: int):
    import itertools
    out = []
    for cand in itertools.product(range(0, max_norm + 1), repeat=datum.rank):
        if datum.is_dominant(cand):
            out.append(tuple(cand))
    return out


def verify_newton(cfg: RunConfig):
    datum = cfg.datum()
    mu = cfg.require_mu()
    dom = cfg.domain(datum.rank)
    weights = minuscule_weights(datum, mu)
    d = len(weights)
    reports = []
    for k in range(cfg.trials):
        rng = _trial_rng(cfg.seed, k)
        s = SatakeParameter.random(dom, datum.rank, rng)
        e_vals = [evaluate(ext_power_character(datum, weights, i), s)
                  for i in range(d + 1)]
        p_vals = [None]
        for j in range(1, d + 1):
            total = dom.zero()
            for w in weights:
                total = dom.add(total, s.power(tuple(j * x for x in w)))
            p_vals.append(total)
        ok = True
        for kk in range(1, d + 1):
            lhs = dom.mul(dom.from_int(kk), e_vals[kk])
            rhs = dom.zero()
            for j in range(1, kk + 1):
                term = dom.mul(e_vals[kk - j], p_vals[j])
                if j % 2 == 0:
                    term = dom.neg(term)
                rhs = dom.add(rhs, term)
            if not dom.eq(lhs, rhs):
                ok = False
        reports.append({"check": "newton", "trial": k, "seed": cfg.seed,
                        "passed": ok,
                        "parameter": s.to_json()["entries"]})
    return _verify_lines(reports)


def verify_modell(cfg: RunConfig):
    datum = cfg.datum()
    mu = cfg.require_mu()
    dom = cfg.domain(datum.rank)
    if not isinstance(dom, PrimeFieldWithV):
        raise ValidationError("verify modell needs a prime-field domain")
    h = hecke_polynomial(datum, mu, cfg.twist, cfg.e_over_f)
    h_red = reduce_mod_ell(h, dom)
    reports = []
    for k in range(cfg.trials):
        rng = _trial_rng(cfg.seed, k)
        s = SatakeParameter.random(dom, datum.rank, rng)
        direct = evaluate_coefficients(h, s)
        reduced = evaluate_coefficients(h_red, s)
        ok = all(dom.eq(a, b) for a, b in zip(direct, reduced))
        reports.append({"check": "modell", "trial": k, "seed": cfg.seed,
                        "passed": ok,
                        "parameter": s.to_json()["entries"],
                        "values": [dom.scalar_str(x) for x in direct]})
    return _verify_lines(reports)


_VERIFY = {"ch": verify_ch, "inertia": verify_inertia, "satake": verify_satake,
           "newton": verify_newton, "modell": verify_modell}


# -- parser ---------------------------------------------------------------------

def _add_group_flags(p, need_mu=False):
    p.add_argument("--family", default="GL", help="GL | SL | PGL | Sp")
    p.add_argument("--rank", type=int, default=2,
                   help="n for GL_n/SL_n/PGL_n/Sp_n (Sp: n even)")
    if need_mu:
        p.add_argument("--mu", help="coweight, e.g. 1,0")


def _add_common_flags(p):
    p.add_argument("--twist", default="paper", help="paper|classical|exp=<int>")
    p.add_argument("--e-over-f", dest="e_over_f", type=int, default=1)
    p.add_argument("--field", default="formal",
                   help="formal | rat:v=<q> | ell=<p>,v=<r>[,q=<r>]")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--max-support", dest="max_support", type=int,
                   default=DEFAULT_MAX_SUPPORT)
    p.add_argument("--out", help="write output to a file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heckepoly",
        description="Exact Hecke polynomials and their matrix relations")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("datum", help="describe a root datum")
    _add_group_flags(p)
    p.add_argument("--out")

    p = sub.add_parser("poly", help="the polynomial of a minuscule coweight")
    _add_group_flags(p, need_mu=True)
    _add_common_flags(p)
    p.add_argument("--basis", default="satake", help="satake | double-coset")

    p = sub.add_parser("eval", help="evaluate at one Satake parameter")
    _add_group_flags(p, need_mu=True)
    _add_common_flags(p)
    p.add_argument("--entries", help="parameter entries, e.g. 2,7")

    p = sub.add_parser("verify", help="seeded verification suites")
    vsub = p.add_subparsers(dest="check", required=True)
    for name in sorted(_VERIFY):
        vp = vsub.add_parser(name)
        _add_group_flags(vp, need_mu=(name in ("ch", "newton", "modell")))
        _add_common_flags(vp)
        if name == "inertia":
            vp.add_argument("--d", type=int, default=2)
        if name == "satake":
            vp.add_argument("--max-norm", dest="max_norm", type=int, default=2)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args)
        if args.command == "datum":
            lines, code = cmd_datum(cfg)
        elif args.command == "poly":
            lines, code = cmd_poly(cfg)
        elif args.command == "eval":
            lines, code = cmd_eval(cfg)
        elif args.command == "verify":
            lines, code = _VERIFY[args.check](cfg)
        else:  # pragma: no cover
            raise ValidationError(f"unknown command {args.command!r}")
    except ValidationError as exc:
        print(_dump({"error": {"kind": "validation", "message": str(exc)}}),
              file=sys.stderr)
        return EXIT_VALIDATION
    except ResourceLimitError as exc:
        print(_dump({"error": {"kind": "resource", "message": str(exc)}}),
              file=sys.stderr)
        return EXIT_RESOURCE
    text = "\n".join(lines) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()

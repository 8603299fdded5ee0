"""Command line entry point.

Every subcommand prints one report line and, with ``--out``, appends it to
a file.  ``--config FILE`` supplies defaults as ``key=value`` lines using
the long option names (dashes or underscores).
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from typing import Sequence

from ..bbcore import bb_sl
from ..cyclic import factored_exponent, involution_from, zeta_sample
from ..datum import sl_box_with_datum
from ..ffield import GF, fe_frobenius, field_create
from ..frobenius import FrobeniusJob, frobenius_psl2, frobenius_sl2
from ..morphisms import enrich
from ..numtheory import miller_rabin, prime_power
from ..twisted import inverse_transpose, kk_involution, su_subgroup
from .census import closure_size
from .hermitian import find_hermitian_form
from .report import Report
from .verify import (
    verify_enrichment,
    verify_frobenius,
    rho_bruteforce_check,
    verify_inverse_transpose,
    verify_shift_order,
    verify_uniformity,
)
from .whitebox import WhiteBox, frobenius_matrix

# prime factors of p - 1 and p + 1 for the 60-digit prime below, found offline
BIG_PRIME = 622288097498926496141095869268883999563096063592498055290461
BIG_PRIME_HINTS = (
    311,
    619,
    251941,
    41062172279,
    570300372023,
    7549434103241,
    176970255507089899085755393169,
    163586797794002197521332331922373494513451,
)


class ConfigError(ValueError):
    pass


def _default_seed() -> int:
    try:
        return int(os.environ.get("BBGROUP_SEED", "0"))
    except ValueError:
        return 0


def read_config(path: str) -> dict[str, str]:
    out = {}
    with open(path) as fh:
        for n, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{n}: expected key=value")
            k, v = line.split("=", 1)
            out[k.strip().replace("-", "_")] = v.strip()
    return out


# ---------------------------------------------------------------------------
# subcommands


def cmd_ff_check(a) -> Report:
    if a.poly:
        F = field_create(a.p, a.n, ("poly", [int(c) for c in a.poly.split(",")]))
    else:
        F = GF(a.p, a.n)
    rng = random.Random(a.seed)
    rep = Report("ff-check", {"p": a.p, "n": a.n, "modulus": "/".join(map(str, F.modulus))}, seed=a.seed)
    for _ in range(a.trials):
        x, y, z = F.random(rng), F.random(rng), F.random(rng)
        ok = F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z))
        ok &= F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
        ok &= F.mul(x, y) == F.mul(y, x)
        ok &= fe_frobenius(F, F.mul(x, y), 1) == F.mul(fe_frobenius(F, x, 1), fe_frobenius(F, y, 1))
        if any(x):
            ok &= F.mul(x, F.inv(x)) == F.one
        rep.record(ok, F.encode(x) + F.encode(y) + F.encode(z))
    return rep.finish()


def cmd_involution(a) -> Report:
    p, n = prime_power(a.q)
    if p != 2:
        raise SystemExit("involution: q must be a power of 2")
    X = bb_sl(GF(2, n), 2, seed=a.seed)
    E = factored_exponent(X)
    rep = Report("involution", {"q": a.q}, seed=a.seed)
    for t in range(a.trials):
        i = kk_involution(X.clone(a.seed * 1_000_003 + t), E, budget=a.budget)
        rep.record(not X.is_identity(i) and X.is_identity(X.mul(i, i)), i)
    return rep.finish()


def cmd_frobenius(a) -> Report:
    F = GF(a.p, a.k)
    X = bb_sl(F, 2, a.group == "psl2", seed=a.seed)
    job = FrobeniusJob(a.p, a.k)
    if a.budget is not None:
        job.cyclic_budget = a.budget
    build = frobenius_psl2 if a.group == "psl2" else frobenius_sl2
    E = build(X, job)
    W = WhiteBox(X)
    rep = verify_frobenius(E, W, a.p, a.trials, seed=a.seed)
    order = verify_shift_order(E, a.trials)
    rep.parameters.update({"group": a.group, "k": a.k, "generation": E.flags.get("generation", "")})
    rep.trials += order.trials
    rep.failures += order.failures
    rep.witnesses += order.witnesses[: 10 - len(rep.witnesses)]
    return rep


def cmd_invtrans(a) -> Report:
    F = GF(a.p, a.k)
    X, D = sl_box_with_datum(F, a.n, seed=a.seed)
    E = inverse_transpose(X, D)
    rep = verify_inverse_transpose(E, WhiteBox(X), a.trials, seed=a.seed)
    rep.parameters.update({"p": a.p, "k": a.k})
    return rep


def cmd_su_embed(a) -> Report:
    if a.q % 2 == 0:
        raise SystemExit("su-embed: odd q required")
    p, k = prime_power(a.q) if a.q != BIG_PRIME else (BIG_PRIME, 1)
    F = GF(p, 2 * k)
    hints = BIG_PRIME_HINTS if p == BIG_PRIME else ()
    X, D = sl_box_with_datum(F, a.n, seed=a.seed, hints=hints)
    S = su_subgroup(X, D, a.q, seed=a.seed)
    W = WhiteBox(X)
    rep = Report("su-embed", {"q": a.q, "n": a.n, "samples": a.samples}, seed=a.seed)
    res = find_hermitian_form([W.project(S.rand()) for _ in range(a.samples)], F, a.q)
    rep.parameters["form"] = res.status
    rep.record(res.found, f"form:{res.status}")
    if a.census:
        size = closure_size(W, S.seeds)
        rep.parameters["census"] = size
        if a.expect is not None:
            rep.record(size == a.expect, f"census:{size}")
    return rep.finish()


def cmd_verify(a) -> Report:
    if a.check == "uniformity":
        X = bb_sl(GF(a.p), 2, seed=a.seed)
        order = a.p * (a.p * a.p - 1)
        return verify_uniformity(X, WhiteBox(X), order, a.samples, seed=a.seed)
    if a.check == "enrichment":
        p, n = prime_power(a.q)
        F = GF(p, n)
        X = bb_sl(F, 2, seed=a.seed)
        W = WhiteBox(X)
        tuples = [[X.encode(frobenius_matrix(F, W.project(g), j)) for j in range(n)] for g in X.gens]
        E = enrich(X, n, tuples, seed=a.seed)
        rep = verify_enrichment(E, W, lambda m: frobenius_matrix(F, m), a.samples, seed=a.seed)
        rep.parameters["q"] = a.q
        return rep
    if a.check == "zeta":
        p, n = prime_power(a.q)
        X = bb_sl(GF(p, n), 2, True, seed=a.seed)
        E = factored_exponent(X)
        i = None
        while i is None:
            i = involution_from(X, X.rand(), E)
        rep = Report("zeta", {"q": a.q}, seed=a.seed)
        for _ in range(a.samples):
            z = zeta_sample(X, i, E)
            rep.record(X.commutes(z, i), z)
        return rep.finish()
    if a.check == "rho":
        rep = Report("rho", {"max_order": a.max_order}, seed=a.seed)
        for d in range(1, a.max_order + 1):
            ok, witness = rho_bruteforce_check(d)
            rep.record(ok, witness)
        return rep.finish()
    raise SystemExit(f"verify: unknown check {a.check!r}")


def cmd_mr(a) -> Report:
    verdict = miller_rabin(a.n, a.rounds, random.Random(a.seed))
    rep = Report("mr", {"n": a.n, "rounds": a.rounds, "verdict": verdict}, seed=a.seed)
    rep.record(True)
    return rep.finish()


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=_default_seed())
    common.add_argument("--config", help="key=value defaults file")
    common.add_argument("--out", help="append the report line to this file")
    common.add_argument("--no-time", action="store_true", help="omit wall_time_ms so records are byte-identical")

    ap = argparse.ArgumentParser(prog="bbgroup", description="black box group experiments")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("ff-check", parents=[common], help="field axiom and Frobenius checks")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--n", type=int, default=1)
    s.add_argument("--poly", help="comma-separated modulus coefficients, ascending")
    s.add_argument("--trials", type=int, default=1000)
    s.set_defaults(func=cmd_ff_check)

    s = sub.add_parser("involution", parents=[common], help="involutions of SL_2(2^n)")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--budget", type=int, default=100)
    s.set_defaults(func=cmd_involution)

    s = sub.add_parser("frobenius", parents=[common], help="Frobenius map on (P)SL_2(p^k)")
    s.add_argument("--group", choices=("psl2", "sl2"), default="psl2")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--budget", type=int, default=None)
    s.set_defaults(func=cmd_frobenius)

    s = sub.add_parser("invtrans", parents=[common], help="inverse-transpose map on SL_n(p^k)")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--trials", type=int, default=1000)
    s.set_defaults(func=cmd_invtrans)

    s = sub.add_parser("su-embed", parents=[common], help="SU_n(q) inside SL_n(q^2)")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--samples", type=int, default=200)
    s.add_argument("--census", action="store_true")
    s.add_argument("--expect", type=int, default=None, help="expected census size")
    s.set_defaults(func=cmd_su_embed)

    s = sub.add_parser("verify", parents=[common], help="white-box verification suites")
    s.add_argument("--check", choices=("uniformity", "enrichment", "zeta", "rho"), required=True)
    s.add_argument("--p", type=int, default=5)
    s.add_argument("--q", type=int, default=4)
    s.add_argument("--samples", type=int, default=12000)
    s.add_argument("--max-order", type=int, default=64)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("mr", parents=[common], help="Miller-Rabin verdict")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--rounds", type=int, default=20)
    s.set_defaults(func=cmd_mr)
    return ap


def _apply_config(ap: argparse.ArgumentParser, argv: Sequence[str]) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    cfg = read_config(known.config)
    cmd = next((a for a in argv if not a.startswith("-")), None)
    subparsers = next(a for a in ap._actions if isinstance(a, argparse._SubParsersAction))
    sp = subparsers.choices.get(cmd)
    if sp is None:
        return
    dests = {a.dest: a for a in sp._actions}
    defaults = {}
    for k, v in cfg.items():
        act = dests.get(k)
        if act is None:
            raise ConfigError(f"unknown config key {k!r} for {cmd}")
        if isinstance(act, argparse._StoreTrueAction):
            defaults[k] = v.lower() in ("1", "true", "yes", "on")
        else:
            defaults[k] = act.type(v) if act.type else v
        act.required = False
    sp.set_defaults(**defaults)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        _apply_config(ap, argv)
    except (ConfigError, OSError, ValueError) as exc:
        print(f"bbgroup: bad config: {exc}", file=sys.stderr)
        return 2
    args = ap.parse_args(argv)
    rep = args.func(args)
    line = rep.to_line(with_time=not args.no_time)
    print(line)
    if args.out:
        with open(args.out, "a") as fh:
            fh.write(line + "\n")
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())

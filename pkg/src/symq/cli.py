"""Command-line front end.

Exit codes: 0 success, 1 audit property violation, 2 usage/parse error,
3 non-physical state, 4 output path not writable.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import collective, reduction
from .classify import (
    DEFAULT_TOL,
    SeparableEnsemble,
    classify,
    partial_transpose,
    ppt_entangled,
    separable_pair,
)
from .formats import CSV_HEADER, StateFileError, csv_row, fmt, read_state, write_state
from .invariants import (
    InvariantSet,
    bath_invariants_closed,
    compute_invariants,
    dicke_invariants_closed,
    ku_invariants_closed,
)
from .reduction import NonPhysicalStateError, PairState
from .squeezing import (
    align_mean_spin,
    i5_collective_identity,
    korbicz_scan_pair,
    max_fluctuation,
    xi_squared,
)

EXIT_OK, EXIT_AUDIT, EXIT_USAGE, EXIT_PHYSICAL, EXIT_IO = 0, 1, 2, 3, 4
CLOSED_FORM_TOL = 1e-9


class UsageError(Exception):
    pass


def default_tol() -> float:
    raw = os.environ.get("SYMQ_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise UsageError(f"SYMQ_TOL is not a number: {raw!r}") from None
    if not tol > 0:
        raise UsageError("SYMQ_TOL must be positive")
    return tol


@dataclass
class Evaluation:
    n_qubits: int
    pair: PairState
    inv: InvariantSet
    closed: InvariantSet | None = None


def _closed_form(family: str, n: int, param: float) -> InvariantSet:
    if family == "dicke":
        return dicke_invariants_closed(n, param)
    if family == "ku":
        return ku_invariants_closed(n, param)
    return bath_invariants_closed(n, param)


def _family_state(family: str, n: int, param: float):
    if family == "dicke":
        return collective.dicke_state(n, param)
    if family == "ku":
        return collective.kitagawa_ueda_state(n, param)
    return collective.squeezed_bath_state(n, param)


def evaluate_family(family: str, n: int, param: float) -> Evaluation:
    """Numerical pipeline on the generated state, with the closed form alongside."""
    try:
        state = _family_state(family, n, param)
        closed = _closed_form(family, n, param)
    except NonPhysicalStateError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    pair = reduction.reduce_pure(state)
    return Evaluation(n, pair, compute_invariants(pair), closed)


def _warn_closed_form(ev: Evaluation, label: str) -> None:
    if ev.closed is None:
        return
    diff = np.abs(ev.inv.as_array() - ev.closed.as_array()).max()
    if diff > CLOSED_FORM_TOL:
        print(
            f"warning: {label}: closed form differs from numerical reduction by {diff:.3g}",
            file=sys.stderr,
        )
        for name, a, b in zip(("I1", "I2", "I3", "I4", "I5", "I6", "I4mI3sq"),
                              ev.inv.as_array(), ev.closed.as_array()):
            print(f"  {name} numerical={fmt(a)} closed={fmt(b)}", file=sys.stderr)


def _squeezing_values(ev: Evaluation) -> tuple[float, float]:
    if np.linalg.norm(ev.pair.s) <= 1e-12:
        return float("nan"), float("nan")
    aligned = align_mean_spin(ev.pair)
    return xi_squared(aligned, ev.n_qubits), max_fluctuation(aligned, ev.n_qubits)


def cmd_invariants(args) -> int:
    tol = default_tol()
    if args.family == "file":
        try:
            text = Path(args.path).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {args.path}: {exc}") from None
        n, state = read_state(text)
        if isinstance(state, collective.PureSymmetricState):
            if n < 2:
                raise NonPhysicalStateError("pair reduction needs N >= 2")
            pair = reduction.reduce_pure(state)
        else:
            pair = state
            if n < 2:
                raise NonPhysicalStateError("pair state needs N >= 2")
        ev = Evaluation(n, pair, compute_invariants(pair))
        label = f"file {args.path}"
    else:
        param = {"dicke": "m", "ku": "chit", "bath": "x"}[args.family]
        value = getattr(args, param)
        ev = evaluate_family(args.family, args.n, value)
        label = f"{args.family} n={args.n} {param}={value!r}"

    dens = reduction.require_physical(ev.pair)
    flags = classify(ev.inv, tol)
    xi2, maxfl = _squeezing_values(ev)
    out = [f"source {label}", f"N {ev.n_qubits}"]
    out.append("s " + " ".join(fmt(v) for v in ev.pair.s))
    out += [
        f"{name} {fmt(v)}"
        for name, v in zip(("I1", "I2", "I3", "I4", "I5", "I6", "I4mI3sq"), ev.inv.as_array())
    ]
    out += [
        f"flag_ss {int(flags.spin_squeezed)}",
        f"flag_long {int(flags.longitudinal)}",
        f"flag_window {int(flags.window)}",
        f"flag_zero_i1 {int(flags.zero_spin_i1)}",
        f"any_entanglement {int(flags.any_entanglement_flag)}",
        f"tolerance {fmt(tol)}",
        f"xi2 {fmt(xi2)}",
        f"maxfluct {fmt(maxfl)}",
    ]
    if not np.isnan(xi2):
        aligned = align_mean_spin(ev.pair)
        resid = abs(ev.inv.i5 - i5_collective_identity(aligned, ev.n_qubits))
        out.append(f"i5_identity_residual {fmt(resid)}")
    witness = korbicz_scan_pair(ev.pair, ev.n_qubits, tol=tol)
    if witness is None:
        out.append("korbicz_witness none")
    else:
        mean, anti = reduction.pair_moments(ev.pair, ev.n_qubits)
        sk = witness @ mean
        sk2 = witness @ (0.5 * anti) @ witness
        n = ev.n_qubits
        out.append("korbicz_witness " + " ".join(fmt(v) for v in witness))
        out.append(f"korbicz_lhs {fmt(4 * (sk2 - sk**2) / n)}")
        out.append(f"korbicz_rhs_mean_squared {fmt(1 - 4 * sk**2 / n**2)}")
        out.append(f"korbicz_rhs_second_moment {fmt(1 - 4 * sk2 / n**2)}")
    out.append(f"ppt_entangled {int(ppt_entangled(dens))}")
    print("\n".join(out))
    _warn_closed_form(ev, label)
    return EXIT_OK


def sweep_rows(family: str, n: int, start: float, stop: float, points: int, tol: float):
    """CSV lines (without header) for a uniform parameter sweep."""
    if points < 2:
        raise UsageError("--points must be at least 2")
    if not (np.isfinite(start) and np.isfinite(stop)):
        raise UsageError("sweep bounds must be finite")
    if family == "bath" and not (0 < start < 1 and 0 < stop < 1):
        raise UsageError("bath sweeps need both bounds inside (0, 1)")
    if start > stop:
        raise UsageError("--from must not exceed --to")
    rows = []
    for p in np.linspace(start, stop, points):
        ev = evaluate_family(family, n, float(p))
        _warn_closed_form(ev, f"{family} n={n} param={fmt(p)}")
        xi2, maxfl = _squeezing_values(ev)
        flags = classify(ev.inv, tol)
        rows.append(csv_row(p, [*ev.inv.as_array(), xi2, maxfl], flags.as_row()))
    return rows


def cmd_sweep(args) -> int:
    tol = default_tol()
    rows = sweep_rows(args.family, args.n, args.start, args.stop, args.points, tol)
    text = CSV_HEADER + "\n" + "\n".join(rows) + "\n"
    try:
        with open(args.out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {len(rows)} rows to {args.out}", file=sys.stderr)
    return EXIT_OK


@dataclass
class AuditFailure:
    check: str
    detail: str
    n_qubits: int
    state: object


def run_audit(seed: int, samples: int, inject_bad: bool = False, tol: float = DEFAULT_TOL):
    """Seeded batch of property checks. Returns (margins, failures)."""
    rng = np.random.default_rng(seed)
    margins = {
        "theorem2_min": np.inf,
        "separable_ppt_min_eig": np.inf,
        "eq25_max_residual": 0.0,
        "theorem3_min_guard": np.inf,
        "theorem3_checked": 0,
        "flagged_states": 0,
    }
    failures: list[AuditFailure] = []

    for k in range(samples):
        ens = SeparableEnsemble.random(rng, int(rng.integers(1, 11)))
        pair = separable_pair(ens)
        if inject_bad and k == 0:
            # deliberately wrong: an entangled pair posing as a separable sample
            pair = reduction.dicke_pair_closed(2, 0)
        inv = compute_invariants(pair)
        worst = min(inv.i1, inv.i4, inv.i5, inv.comb)
        margins["theorem2_min"] = min(margins["theorem2_min"], worst)
        if worst < -tol:
            failures.append(AuditFailure("theorem2", f"sample {k}: min invariant {worst:.3g}", 2, pair))
        dens = reduction.pair_density(pair)
        pt_min = float(np.linalg.eigvalsh(partial_transpose(dens.rho)).min())
        margins["separable_ppt_min_eig"] = min(margins["separable_ppt_min_eig"], pt_min)
        if ppt_entangled(dens):
            failures.append(AuditFailure("separable_ppt", f"sample {k}: PT eigenvalue {pt_min:.3g}", 2, pair))

        n = int(rng.integers(2, 11))
        state = collective.random_symmetric_state(n, rng)
        spair = reduction.reduce_pure(state)
        sinv = compute_invariants(spair)
        flags = classify(sinv, tol)
        if flags.spin_squeezed and flags.longitudinal:
            failures.append(AuditFailure("exclusivity", f"sample {k}", n, state))
        if sinv.i4 <= 0 and sinv.i5 < -tol:
            failures.append(AuditFailure("exclusivity", f"sample {k}: I4={sinv.i4:.3g} I5={sinv.i5:.3g}", n, state))
        if flags.any_entanglement_flag:
            margins["flagged_states"] += 1
            if not ppt_entangled(reduction.pair_density(spair)):
                failures.append(AuditFailure("ppt_soundness", f"sample {k}", n, state))
        if np.linalg.norm(spair.s) > 1e-6:
            aligned = align_mean_spin(spair)
            resid = abs(sinv.i5 - i5_collective_identity(aligned, n))
            margins["eq25_max_residual"] = max(margins["eq25_max_residual"], resid)
            if resid > 1e-10:
                failures.append(AuditFailure("eq25", f"sample {k}: residual {resid:.3g}", n, state))
            xi2 = xi_squared(aligned, n)
            guard = abs(xi2 - 1)
            if guard > 1e-8:
                margins["theorem3_checked"] += 1
                margins["theorem3_min_guard"] = min(margins["theorem3_min_guard"], guard)
                if (sinv.i5 < 0) != (xi2 < 1):
                    failures.append(AuditFailure(
                        "theorem3", f"sample {k}: I5={sinv.i5:.3g} xi2={xi2:.17g}", n, state))
    return margins, failures


def cmd_audit(args) -> int:
    if args.samples < 1:
        raise UsageError("--samples must be at least 1")
    tol = default_tol()
    margins, failures = run_audit(args.seed, args.samples, args.inject_bad, tol)
    print(f"seed {args.seed}")
    print(f"samples {args.samples}")
    for key, value in margins.items():
        print(f"{key} {value if isinstance(value, int) else fmt(value)}")
    print(f"failures {len(failures)}")
    if not failures:
        print("status pass")
        return EXIT_OK
    print("status fail")
    first = failures[0]
    for f in failures:
        print(f"violation {f.check}: {f.detail}", file=sys.stderr)
    try:
        Path(args.dump).write_text(write_state(first.n_qubits, first.state))
    except OSError as exc:
        print(f"error: cannot write counterexample to {args.dump}: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"counterexample ({first.check}) written to {args.dump}", file=sys.stderr)
    return EXIT_AUDIT


def _add_family_args(sub, family: str, sweep: bool) -> None:
    sub.add_argument("--n", type=int, required=True, help="number of qubits N")
    if family == "dicke" and not sweep:
        sub.add_argument("--m", type=float, required=True, help="magnetic quantum number M (half-integer)")
    elif family == "ku" and not sweep:
        sub.add_argument("--chit", type=float, required=True, help="twisting angle chi*t in radians")
    elif family == "bath" and not sweep:
        sub.add_argument("--x", type=float, required=True, help="dimensionless x = exp(2 theta) in (0, 1); N must be even")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="symq",
        description="Pairwise-entanglement invariants of symmetric N-qubit states. "
        "Environment variable SYMQ_TOL overrides the zero tolerance (default 1e-10).",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    inv = sub.add_parser("invariants", help="invariants, classification and squeezing for one state")
    fam = inv.add_subparsers(dest="family", required=True)
    for family, help_text in (
        ("dicke", "Dicke state |N/2, M>"),
        ("ku", "one-axis twisted state; --chit in radians"),
        ("bath", "squeezed-bath steady state; --x dimensionless in (0,1), even N"),
    ):
        _add_family_args(fam.add_parser(family, help=help_text), family, sweep=False)
    fp = fam.add_parser("file", help="state file (kind pure or pair)")
    fp.add_argument("path")
    inv.set_defaults(func=cmd_invariants)

    sw = sub.add_parser("sweep", help="CSV sweep of invariants over chi*t (radians) or x (dimensionless)")
    sw.add_argument("family", choices=["ku", "bath"])
    sw.add_argument("--n", type=int, required=True)
    sw.add_argument("--from", dest="start", type=float, required=True,
                    help="first parameter value (chi*t in radians, or x in (0,1))")
    sw.add_argument("--to", dest="stop", type=float, required=True, help="last parameter value")
    sw.add_argument("--points", type=int, required=True, help="number of rows (>= 2)")
    sw.add_argument("--out", required=True, help="output CSV path")
    sw.set_defaults(func=cmd_sweep)

    au = sub.add_parser("audit", help="seeded property checks of the separability and squeezing theorems")
    au.add_argument("--seed", type=int, default=0)
    au.add_argument("--samples", type=int, default=1000)
    au.add_argument("--inject-bad", action="store_true", help="inject a known violation (harness self-test)")
    au.add_argument("--dump", default="audit_counterexample.txt", help="where to write a counterexample")
    au.set_defaults(func=cmd_audit)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, StateFileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NonPhysicalStateError as exc:
        print(f"error: non-physical state: {exc}", file=sys.stderr)
        return EXIT_PHYSICAL


if __name__ == "__main__":
    raise SystemExit(main())

"""Command-line front end: generate, analyze, classify, verify, sample.

Reports go to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 usage or parse error, 2 tolerance/identity failure, 3 internal
inconsistency (an impossible zero pattern in the entanglement vector).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass

from . import classify as classify_mod
from . import copies, measures, shots, states

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_TOLERANCE = 2
EXIT_INCONSISTENT = 3

IDENTITY_TOL_DEFAULT = 1e-9
CLASSIFY_TOL_DEFAULT = 1e-7


class _Parser(argparse.ArgumentParser):
    """argparse exits with code 2 on usage errors; the contract here is 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class AnalysisReport:
    """Everything the analyzer knows about one state."""

    entanglement_vector: list[float]
    alt_vector: list[float]
    pair_concurrences: dict[str, float]
    coa: dict[str, float]
    tau_det_r: float
    tau_ckw: float
    tau_copies: float
    slocc_class: str
    identity_residuals: dict[str, float]
    b_identity_verdict: str

    def max_residual(self) -> float:
        return max(self.identity_residuals.values())


def build_analysis_report(
    psi: states.PureTripartiteState, tol: float, classify_eps: float
) -> AnalysisReport:
    vector = measures.entanglement_vector(psi)
    label = classify_mod.label_vector(vector, classify_eps)
    identity = measures.verify_identities(psi, tol)
    residuals = dict(identity.residuals)

    tau_det_r = measures.three_tangle(psi)
    tau_copies = copies.tau_via_copies(psi)
    residuals["tangle_copies_gap"] = abs(tau_det_r - tau_copies)
    for focus in "ABC":
        residuals[f"cut_copies_gap_{focus}"] = abs(
            measures.pure_cut_concurrence(psi, focus)
            - copies.cut_concurrence_via_copies(psi, focus)
        )

    return AnalysisReport(
        entanglement_vector=[vector.e_ii, vector.e_iii, vector.e_iv, vector.e_v],
        alt_vector=list(measures.alt_entanglement_vector(psi)),
        pair_concurrences={
            pair: measures.wootters_concurrence(psi.reduced(pair))
            for pair in measures.PAIRS
        },
        coa={pair: measures.coa(psi.reduced(pair)) for pair in measures.PAIRS},
        tau_det_r=tau_det_r,
        tau_ckw=measures.three_tangle_ckw(psi),
        tau_copies=tau_copies,
        slocc_class=label.value,
        identity_residuals=residuals,
        b_identity_verdict=copies.default_b_identity_report().verdict.value,
    )


def _read_state(path: str) -> states.PureTripartiteState:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise states.StateFileError(f"cannot read {path}: {e.strerror}") from None
    try:
        return states.parse_state(text)
    except states.StateFileError as e:
        raise states.StateFileError(f"{path}: {e}") from None


def _flatten(obj, prefix=""):
    """(name, value) rows for the table format, in a stable order."""
    rows = []
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        obj = dataclasses.asdict(obj)
    if isinstance(obj, dict):
        for key, value in obj.items():
            rows.extend(_flatten(value, f"{prefix}{key}."))
    elif isinstance(obj, (list, tuple)):
        for i, value in enumerate(obj):
            rows.extend(_flatten(value, f"{prefix}{i}."))
    else:
        rows.append((prefix[:-1], obj))
    return rows


def _emit(obj, fmt: str) -> None:
    """Print a report; repr-level floats so both formats carry identical numbers."""
    if fmt == "json":
        if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
            obj = dataclasses.asdict(obj)
        print(json.dumps(obj, indent=2))
        return
    rows = _flatten(obj)
    width = max(len(name) for name, _ in rows)
    for name, value in rows:
        rendered = repr(value) if isinstance(value, float) else str(value)
        print(f"{name:<{width}}  {rendered}")


def cmd_gen(args) -> int:
    cls = states.SloccClass.from_tag(args.slocc_class)
    psi = states.random_in_class(cls, args.seed)
    text = states.serialize_state(psi, name=f"class-{cls.value}-seed-{args.seed}")
    try:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as e:
        print(f"cannot write {args.output}: {e.strerror}", file=sys.stderr)
        return EXIT_USAGE
    print(args.output)
    return EXIT_OK


def cmd_analyze(args) -> int:
    psi = _read_state(args.input)
    try:
        report = build_analysis_report(psi, args.tol, CLASSIFY_TOL_DEFAULT)
    except classify_mod.InconsistentVectorError as e:
        print(f"inconsistent entanglement vector: {e}", file=sys.stderr)
        return EXIT_INCONSISTENT
    _emit(report, args.format)
    if not report.max_residual() < args.tol:
        print(
            f"identity residual {report.max_residual():.3e} exceeds tol {args.tol}",
            file=sys.stderr,
        )
        return EXIT_TOLERANCE
    return EXIT_OK


def cmd_classify(args) -> int:
    psi = _read_state(args.input)
    try:
        result = classify_mod.classify(psi, classify_mod.ClassifierConfig(args.tol))
    except classify_mod.InconsistentVectorError as e:
        print(f"inconsistent entanglement vector: {e}", file=sys.stderr)
        return EXIT_INCONSISTENT
    v = result.vector
    payload = {
        "slocc_class": result.slocc_class.value,
        "entanglement_vector": [v.e_ii, v.e_iii, v.e_iv, v.e_v],
        "epsilon": result.epsilon,
    }
    _emit(payload, args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.states < 1:
        print("--states must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    corpus = states.haar_corpus(args.states, args.seed)
    worst: dict[str, float] = {}
    marginals = []
    for psi in corpus:
        report = measures.verify_identities(psi, args.tol)
        for name, value in report.residuals.items():
            worst[name] = max(worst.get(name, 0.0), value)
        tau = measures.three_tangle(psi)
        worst["tangle_copies_gap"] = max(
            worst.get("tangle_copies_gap", 0.0), abs(tau - copies.tau_via_copies(psi))
        )
        for focus in "ABC":
            gap = abs(
                measures.pure_cut_concurrence(psi, focus)
                - copies.cut_concurrence_via_copies(psi, focus)
            )
            worst[f"cut_copies_gap_{focus}"] = max(
                worst.get(f"cut_copies_gap_{focus}", 0.0), gap
            )
        marginals.extend(psi.reduced(pair) for pair in measures.PAIRS)

    if len(marginals) >= 100:
        b_report = copies.resolve_b_identity(marginals, args.tol)
    else:
        b_report = copies.default_b_identity_report()
    payload = {
        "states": args.states,
        "seed": args.seed,
        "tol": args.tol,
        "max_residuals": worst,
        "b_identity_verdict": b_report.verdict.value,
        "b_identity_residual_no_root": b_report.max_residual_no_root,
        "b_identity_residual_printed_root": b_report.max_residual_printed_root,
    }
    _emit(payload, args.format)
    failed = {k: v for k, v in worst.items() if not v < args.tol}
    if failed or b_report.verdict is copies.BIdentityVerdict.UNRESOLVED:
        for name, value in failed.items():
            print(f"residual {name} = {value:.3e} exceeds tol {args.tol}", file=sys.stderr)
        if b_report.verdict is copies.BIdentityVerdict.UNRESOLVED:
            print("B identity unresolved on this corpus", file=sys.stderr)
        return EXIT_TOLERANCE
    return EXIT_OK


def cmd_sample(args) -> int:
    psi = _read_state(args.input)
    observable = shots.Observable.from_name(args.observable)
    plan = shots.ShotPlan(observable=observable, n_shots=args.shots, seed=args.seed)
    noise = shots.NoiseSpec(args.noise) if args.noise is not None else None
    result = shots.sample(plan, psi, noise=noise)
    payload = {
        "observable": observable.value,
        "n_shots": result.n_shots,
        "seed": result.seed,
        "successes": result.successes,
        "p_hat": result.p_hat,
        "estimate": result.estimate,
        "std_error": result.std_error,
        "one_sided": result.one_sided,
    }
    if noise is not None:
        exact_noisy = shots.noisy_expectation(psi, noise, observable)
        noisy_estimate = shots.estimate_from_probability(observable, exact_noisy)
        target = shots.true_value(psi, observable)
        payload["noise_q"] = noise.q
        payload["noisy_expectation"] = exact_noisy
        payload["noisy_estimate"] = noisy_estimate
        payload["bias"] = noisy_estimate - target
    _emit(payload, args.format)
    return EXIT_OK


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--format", choices=("json", "table"), default="table",
        help="output format (default: table)",
    )


def build_parser() -> _Parser:
    parser = _Parser(prog="tritangle", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a random state in a SLOCC class")
    p_gen.add_argument("--class", dest="slocc_class", required=True,
                       type=str.lower,
                       choices=[c.value.lower() for c in states.SloccClass],
                       help="target SLOCC class")
    p_gen.add_argument("--seed", type=int, required=True)
    p_gen.add_argument("-o", "--output", required=True, help="output state file")
    p_gen.set_defaults(func=cmd_gen)

    p_an = sub.add_parser("analyze", help="full entanglement report for a state file")
    p_an.add_argument("input", help="state file to analyze")
    p_an.add_argument("--tol", type=float, default=IDENTITY_TOL_DEFAULT,
                      help="identity residual gate (default: 1e-9)")
    _add_format(p_an)
    p_an.set_defaults(func=cmd_analyze)

    p_cl = sub.add_parser("classify", help="SLOCC class of a state file")
    p_cl.add_argument("input", help="state file to classify")
    p_cl.add_argument("--tol", type=float, default=CLASSIFY_TOL_DEFAULT,
                      help="zero tolerance for vector entries (default: 1e-7)")
    _add_format(p_cl)
    p_cl.set_defaults(func=cmd_classify)

    p_ver = sub.add_parser("verify", help="randomized identity suite over Haar states")
    p_ver.add_argument("--states", type=int, default=100, help="corpus size")
    p_ver.add_argument("--seed", type=int, required=True)
    p_ver.add_argument("--tol", type=float, default=IDENTITY_TOL_DEFAULT)
    _add_format(p_ver)
    p_ver.set_defaults(func=cmd_verify)

    p_sm = sub.add_parser("sample", help="simulate projective-measurement sampling")
    p_sm.add_argument("input", help="state file to sample from")
    p_sm.add_argument("--observable", required=True,
                      choices=[o.value for o in shots.Observable])
    p_sm.add_argument("--shots", type=int, required=True)
    p_sm.add_argument("--seed", type=int, required=True)
    p_sm.add_argument("--noise", type=float, default=None,
                      help="depolarizing weight in [0, 1]")
    _add_format(p_sm)
    p_sm.set_defaults(func=cmd_sample)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except states.StateFileError as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, shots.DegenerateObservableError) as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

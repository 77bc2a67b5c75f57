"""Monte Carlo simulation of the projective-measurement protocol.

Each copy observable is a product of projectors, so one prepared batch yields
a single Bernoulli outcome ("all projections succeeded") whose probability is
the exact expectation computed by the copies module.  Sampling therefore
draws successes from Binomial(n, p_true) rather than collapsing a 12-qubit
wavefunction shot by shot; the induced estimator distribution is identical.

The generator is counter-based (Philox), so results depend only on the seed,
never on execution order or thread count.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .copies import (
    BIdentityVerdict,
    DEFAULT_LAYOUT,
    _b_observable,
    _singlet_product_vector,
    cut_observable_expectation,
    default_b_identity_report,
    observable_a_expectation,
    observable_b_expectation,
)
from .linalg import kron, partial_trace
from .measures import _require_density, pure_cut_concurrence, three_tangle, tr_rho_rhotilde
from .states import PureTripartiteState, party_index


class Observable(enum.Enum):
    """The simulatable copy observables."""

    TAU4COPY = "tau4copy"  # four-copy singlet product; estimates the tangle
    CUT_A = "cutA"         # two-copy antisymmetric pair for the A|(BC) cut
    CUT_B = "cutB"
    CUT_C = "cutC"
    TR_B_PAIR = "trBpair"  # two-copy B observable on the AB marginal

    @classmethod
    def from_name(cls, name: str) -> "Observable":
        try:
            return cls(name)
        except ValueError:
            raise ValueError(
                f"unknown observable {name!r}; expected one of "
                + ", ".join(m.value for m in cls)
            ) from None


_CUT_FOCUS = {Observable.CUT_A: "A", Observable.CUT_B: "B", Observable.CUT_C: "C"}


class DegenerateObservableError(ValueError):
    """The success probability is 0 or 1, so no shot count reaches the target."""


@dataclass(frozen=True)
class ShotPlan:
    observable: Observable
    n_shots: int
    seed: int

    def __post_init__(self):
        if self.n_shots < 1:
            raise ValueError(f"n_shots must be >= 1, got {self.n_shots}")


@dataclass(frozen=True)
class ShotResult:
    """Bernoulli counts and the derived estimator for one sampling run.

    ``one_sided`` marks boundary runs (p_hat of 0 or 1) where the delta
    method degenerates; ``std_error`` is then the one-sided width obtained by
    moving p_hat by the rule-of-three bound 3/n instead.
    """

    observable: Observable
    successes: int
    p_hat: float
    estimate: float
    std_error: float
    n_shots: int
    seed: int
    one_sided: bool = False


@dataclass(frozen=True)
class NoiseSpec:
    """Depolarizing preparation noise: psi -> (1-q)|psi><psi| + q I/8."""

    q: float

    def __post_init__(self):
        if not 0.0 <= self.q <= 1.0:
            raise ValueError(f"depolarizing weight must lie in [0, 1], got {self.q!r}")

    def apply(self, psi: PureTripartiteState) -> np.ndarray:
        return (1.0 - self.q) * psi.density() + self.q * np.eye(8, dtype=complex) / 8.0


def true_probability(psi: PureTripartiteState, observable: Observable) -> float:
    """Exact Bernoulli parameter of the chosen observable on the pure state.

    For trBpair this is the expectation of B itself (computed by the copies
    route, in [0, 1]), not the analytic Tr(rho rho~).
    """
    if observable is Observable.TAU4COPY:
        return observable_a_expectation(psi)
    if observable in _CUT_FOCUS:
        return cut_observable_expectation(psi, _CUT_FOCUS[observable])
    return observable_b_expectation(psi.reduced("AB"))


def true_value(psi: PureTripartiteState, observable: Observable) -> float:
    """The analytic quantity the observable's estimator targets."""
    if observable is Observable.TAU4COPY:
        return three_tangle(psi)
    if observable in _CUT_FOCUS:
        return pure_cut_concurrence(psi, _CUT_FOCUS[observable])
    return tr_rho_rhotilde(psi.reduced("AB"))


def _estimator(observable: Observable, p: float) -> float:
    if observable is Observable.TAU4COPY:
        return math.sqrt(max(0.0, 256.0 * p))
    if observable in _CUT_FOCUS:
        return math.sqrt(max(0.0, 4.0 * p))
    verdict = default_b_identity_report().verdict
    if verdict is BIdentityVerdict.NO_ROOT:
        return p
    if verdict is BIdentityVerdict.PRINTED_ROOT:
        return math.sqrt(max(0.0, p))
    raise RuntimeError("B identity unresolved; cannot form the trBpair estimator")


def _delta_std_error(
    observable: Observable, p_hat: float, n: int
) -> tuple[float, bool]:
    """Delta-method standard error of the estimator, with one-sided fallback.

    At an interior p_hat the error is |g'(p_hat)| sqrt(p_hat (1-p_hat)/n).
    At the boundary (p_hat of 0 or 1, where the binomial variance or the
    sqrt derivative degenerates) the reported width is one-sided:
    |g(p_hat -+ 3/n) - g(p_hat)|, the estimator swing across the
    rule-of-three 95% bound.
    """
    est = _estimator(observable, p_hat)
    boundary = p_hat <= 0.0 or p_hat >= 1.0
    sqrt_like = observable is Observable.TAU4COPY or observable in _CUT_FOCUS
    if not boundary and not (sqrt_like and est == 0.0):
        sp = math.sqrt(p_hat * (1.0 - p_hat) / n)
        if observable is Observable.TAU4COPY:
            return 128.0 * sp / est, False
        if observable in _CUT_FOCUS:
            return 2.0 * sp / est, False
        verdict = default_b_identity_report().verdict
        if verdict is BIdentityVerdict.NO_ROOT:
            return sp, False
        return sp / (2.0 * est), False
    step = 3.0 / n
    p_moved = min(1.0, p_hat + step) if p_hat <= 0.0 else max(0.0, p_hat - step)
    return abs(_estimator(observable, p_moved) - est), True


def sample(
    plan: ShotPlan, psi: PureTripartiteState, noise: NoiseSpec | None = None
) -> ShotResult:
    """Simulate one sampling run of the protocol.

    With ``noise`` the Bernoulli probability is the exact expectation on the
    depolarized preparation, which is how preparation bias enters the
    estimate.  Identical (plan, state, noise) gives a bit-identical result.
    """
    if noise is None:
        p_true = true_probability(psi, plan.observable)
    else:
        p_true = noisy_expectation(psi, noise, plan.observable)
    rng = np.random.Generator(np.random.Philox(plan.seed))
    successes = int(rng.binomial(plan.n_shots, p_true))
    p_hat = successes / plan.n_shots
    std_error, one_sided = _delta_std_error(plan.observable, p_hat, plan.n_shots)
    return ShotResult(
        observable=plan.observable,
        successes=successes,
        p_hat=p_hat,
        estimate=_estimator(plan.observable, p_hat),
        std_error=std_error,
        n_shots=plan.n_shots,
        seed=plan.seed,
        one_sided=one_sided,
    )


def estimate_from_probability(observable: Observable, p: float) -> float:
    """Map an exact or estimated success probability to the estimator value."""
    return _estimator(observable, p)


def noisy_expectation(
    psi: PureTripartiteState, noise: NoiseSpec, observable: Observable
) -> float:
    """Exact expectation of the observable on the depolarized preparation.

    Works on rho^(x)k (k = 4 for the tangle observable, 2 otherwise) by
    contracting rho against the projector structure; the four-copy case
    applies the 8x8 rho to each copy axis of the singlet-product vector, so
    no 4096^2 matrix is ever formed.
    """
    rho = noise.apply(psi)
    if observable is Observable.TAU4COPY:
        s = _singlet_product_vector(DEFAULT_LAYOUT)
        t = s.astype(complex).reshape(8, 8, 8, 8)
        for axis in range(4):
            t = np.moveaxis(np.tensordot(rho, t, axes=(1, axis)), 0, axis)
        val = complex(np.dot(s, t.reshape(4096)))
    elif observable in _CUT_FOCUS:
        proj = _cut_projector(party_index(_CUT_FOCUS[observable]))
        val = complex(np.trace(kron(rho, rho) @ proj))
    else:
        rho_ab = partial_trace(rho, [2, 2, 2], (0, 1))
        val = complex(np.trace(kron(rho_ab, rho_ab) @ _b_observable()))
    if abs(val.imag) > 1e-10:
        raise ValueError(f"noisy expectation {val!r} is not real")
    return max(0.0, val.real)


def _cut_projector(focus_index: int) -> np.ndarray:
    """P-^(focus copies) (x) P-^(rest copies) as a dense 64x64 operator,
    arranged on the interleaved qubit order (A1, B1, C1, A2, B2, C2)."""
    from .copies import antisym_projector, permute_qubits

    rest = [i for i in range(3) if i != focus_index]
    # natural order: (focus1, focus2, rest1 copy1, rest2 copy1, rest1 copy2, rest2 copy2)
    op = kron(antisym_projector(2), antisym_projector(4))
    natural = [focus_index, focus_index + 3, rest[0], rest[1], rest[0] + 3, rest[1] + 3]
    order = tuple(natural.index(q) for q in range(6))
    return permute_qubits(op, order)


def precision_plan(
    target_se: float, psi: PureTripartiteState, observable: Observable
) -> int:
    """Smallest shot count whose delta-method error at p_true meets target_se.

    Degenerate observables (p_true indistinguishable from 0 or 1) admit no
    finite plan and are rejected.
    """
    if not target_se > 0.0:
        raise ValueError(f"target_se must be positive, got {target_se!r}")
    p = true_probability(psi, observable)
    if p < 1e-12 or p > 1.0 - 1e-12:
        raise DegenerateObservableError(
            f"success probability {p!r} is degenerate (0 or 1); "
            "the standard error cannot be driven to a finite target"
        )
    if observable is Observable.TAU4COPY:
        deriv = 8.0 / math.sqrt(p)
    elif observable in _CUT_FOCUS:
        deriv = 1.0 / math.sqrt(p)
    else:
        verdict = default_b_identity_report().verdict
        deriv = 1.0 if verdict is BIdentityVerdict.NO_ROOT else 1.0 / (2.0 * math.sqrt(p))
    if math.isinf(target_se):
        return 1
    n = math.ceil(deriv**2 * p * (1.0 - p) / target_se**2)
    return max(1, n)

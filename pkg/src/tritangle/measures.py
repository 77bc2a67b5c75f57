"""Analytic entanglement quantities for three-qubit pure states.

Covers the one-cut concurrences, the Wootters concurrence and concurrence of
assistance of two-qubit marginals, the three-tangle (via the 2x2 tangle
matrix and, independently, via the Coffman-Kundu-Wootters monogamy residual),
Tr(rho rho~), and the web of identities connecting all of them.

Every returned quantity lies in [0, 1].  Values are clamped to that interval
only after a drift check: anything outside [-1e-7, 1 + 1e-7] before clamping
is treated as a bug and raised, not silently clamped.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import SIGMA_Y, herm_eig, hermiticity_residual, kron, psd_sqrt
from .states import PureTripartiteState, party_index

SY_SY = kron(SIGMA_Y, SIGMA_Y)

CLAMP_TOL = 1e-7
DENSITY_TOL = 1e-10

PAIRS = ("AB", "AC", "BC")


class MeasureRangeError(ValueError):
    """An entanglement quantity drifted outside [0, 1] beyond float noise."""


def _clamp_unit(x: float, what: str) -> float:
    if x < -CLAMP_TOL or x > 1.0 + CLAMP_TOL:
        raise MeasureRangeError(f"{what} = {x!r} is outside [0, 1] beyond tolerance")
    return min(1.0, max(0.0, float(x)))


def _require_density(rho: np.ndarray, dim: int) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (dim, dim):
        raise ValueError(f"expected a {dim}x{dim} density matrix, got {rho.shape}")
    res = hermiticity_residual(rho)
    if res >= DENSITY_TOL:
        raise ValueError(f"density matrix is not Hermitian (residual {res:.3e})")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > DENSITY_TOL:
        raise ValueError(f"density matrix trace {tr!r} is not 1")
    return rho


def reduced(psi: PureTripartiteState, parties: str) -> np.ndarray:
    """Reduced density matrix of the named parties ("A", "BC", ...)."""
    return psi.reduced(parties)


def spin_flip(rho: np.ndarray) -> np.ndarray:
    """rho~ = (sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y).

    Hermitian with the same eigenvalue multiset as rho; trace-preserving but
    the result of flipping a non-maximally-mixed state is generally a
    different state.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"spin flip is defined for 4x4 matrices, got {rho.shape}")
    res = hermiticity_residual(rho)
    if res >= DENSITY_TOL:
        raise ValueError(f"spin flip input is not Hermitian (residual {res:.3e})")
    return SY_SY @ rho.conj() @ SY_SY


def pure_cut_concurrence(psi: PureTripartiteState, focus: str) -> float:
    """Concurrence across the focus-vs-rest cut: sqrt(2(1 - Tr rho_focus^2))."""
    party_index(focus)  # validate
    rho = psi.reduced(focus)
    purity = float(np.trace(rho @ rho).real)
    return _clamp_unit(
        np.sqrt(max(0.0, 2.0 * (1.0 - purity))), f"cut concurrence {focus}"
    )


def wootters_spectrum(rho: np.ndarray) -> np.ndarray:
    """Square roots of the eigenvalues of rho rho~, sorted descending.

    Computed through the Hermitian matrix sqrt(rho) rho~ sqrt(rho), which has
    the same spectrum as the non-Hermitian product rho rho~ but keeps the
    whole calculation inside the Hermitian eigensolver.
    """
    rho = _require_density(rho, 4)
    s = psd_sqrt(rho)
    m = s @ spin_flip(rho) @ s
    m = (m + m.conj().T) / 2
    w = herm_eig(m).eigenvalues
    if w[-1] < -1e-10:
        raise ValueError(f"rho rho~ spectrum has eigenvalue {w[-1]:.3e} < 0")
    return np.sqrt(np.clip(w, 0.0, None))


def wootters_concurrence(rho: np.ndarray) -> float:
    """Mixed-state two-qubit concurrence max(0, l1 - l2 - l3 - l4)."""
    l = wootters_spectrum(rho)
    return _clamp_unit(max(0.0, float(l[0] - l[1] - l[2] - l[3])), "concurrence")


def coa(rho: np.ndarray) -> float:
    """Concurrence of assistance: Tr sqrt(sqrt(rho) rho~ sqrt(rho)) = sum_i l_i.

    The maximal average pair concurrence the two parties can reach when the
    third party measures and communicates its outcome.
    """
    return _clamp_unit(float(np.sum(wootters_spectrum(rho))), "coa")


def tangle_matrix(psi: PureTripartiteState) -> np.ndarray:
    """The 2x2 matrix R with R_kl = sum a_ijk (sy)_ii' (sy)_jj' a_i'j'l.

    The bilinear (unconjugated) contraction of the state with itself over
    parties A and B, indexed by the computational basis of party C.  Its
    determinant carries the three-way tangle: tau = 4|det R|.
    """
    t = psi.tensor()
    return np.einsum("ijk,im,jn,mnl->kl", t, SIGMA_Y, SIGMA_Y, t)


def three_tangle(psi: PureTripartiteState) -> float:
    """Three-tangle tau = 4|det R|."""
    r = tangle_matrix(psi)
    return _clamp_unit(4.0 * abs(np.linalg.det(r)), "three-tangle")


def three_tangle_ckw(psi: PureTripartiteState) -> float:
    """Three-tangle as the monogamy residual C^2_A(BC) - C^2(rho_AB) - C^2(rho_AC).

    Independent of the determinant route; the two must agree on every state.
    """
    c2_cut = pure_cut_concurrence(psi, "A") ** 2
    c2_ab = wootters_concurrence(psi.reduced("AB")) ** 2
    c2_ac = wootters_concurrence(psi.reduced("AC")) ** 2
    return _clamp_unit(max(0.0, c2_cut - c2_ab - c2_ac), "three-tangle (monogamy)")


def tr_rho_rhotilde(rho: np.ndarray) -> float:
    """Tr(rho rho~) of a two-qubit density matrix."""
    rho = _require_density(rho, 4)
    val = complex(np.trace(rho @ spin_flip(rho)))
    if abs(val.imag) > 1e-10:
        raise ValueError(f"Tr(rho rho~) = {val!r} is not real")
    return _clamp_unit(val.real, "Tr(rho rho~)")


@dataclass(frozen=True)
class EntanglementVector:
    """[E_ii, E_iii, E_iv, E_v]: the three cut concurrences and the tangle."""

    e_ii: float   # A vs (BC) concurrence
    e_iii: float  # B vs (AC) concurrence
    e_iv: float   # C vs (AB) concurrence
    e_v: float    # three-tangle

    def as_array(self) -> np.ndarray:
        return np.array([self.e_ii, self.e_iii, self.e_iv, self.e_v])

    def cut_entries(self) -> tuple[float, float, float]:
        return (self.e_ii, self.e_iii, self.e_iv)


def entanglement_vector(psi: PureTripartiteState) -> EntanglementVector:
    """The four-component entanglement vector of a pure three-qubit state."""
    return EntanglementVector(
        e_ii=pure_cut_concurrence(psi, "A"),
        e_iii=pure_cut_concurrence(psi, "B"),
        e_iv=pure_cut_concurrence(psi, "C"),
        e_v=three_tangle(psi),
    )


def alt_entanglement_vector(psi: PureTripartiteState) -> tuple[float, float, float, float]:
    """Alternative vector (Tr(rho_AB rho~_AB), Tr(rho_AC ...), Tr(rho_BC ...), tau).

    Each pair entry is measurable from two copies of the corresponding
    marginal alone, so a single pair's entanglement can be evaluated without
    knowing the rest of the vector.
    """
    return (
        tr_rho_rhotilde(psi.reduced("AB")),
        tr_rho_rhotilde(psi.reduced("AC")),
        tr_rho_rhotilde(psi.reduced("BC")),
        three_tangle(psi),
    )


@dataclass(frozen=True)
class IdentityReport:
    """Absolute residuals of the identity web on one state."""

    residuals: dict[str, float]
    tol: float
    flagged: dict[str, float] = field(init=False)

    def __post_init__(self):
        object.__setattr__(
            self,
            "flagged",
            {k: v for k, v in self.residuals.items() if not v < self.tol},
        )

    @property
    def ok(self) -> bool:
        return not self.flagged

    def max_residual(self) -> float:
        return max(self.residuals.values())


def verify_identities(psi: PureTripartiteState, tol: float = 1e-9) -> IdentityReport:
    """Check every identity tying the measures together on one state.

    Residuals reported (all should vanish for any unit-norm pure state):

    - ``monogamy_X``: C^2 of the X-vs-rest cut minus the two pair
      concurrences squared minus tau, for X in A, B, C.
    - ``coa_gap_XY``: Ca^2 - C^2 - tau for each pair.
    - ``lambda_product_XY``: 4 l1 l2 - tau for each pair.
    - ``coa_overlap_XY``: Ca^2 - Tr(rho rho~) - tau/2 for each pair.
    - ``concurrence_overlap_XY``: C^2 - Tr(rho rho~) + tau/2 for each pair.
    - ``tangle_route_gap``: |4 det R| route vs monogamy-residual route.
    """
    tau = three_tangle(psi)
    cut = {p: pure_cut_concurrence(psi, p) for p in "ABC"}
    res: dict[str, float] = {}

    pair_rho = {pair: psi.reduced(pair) for pair in PAIRS}
    lam = {pair: wootters_spectrum(rho) for pair, rho in pair_rho.items()}
    conc = {pair: max(0.0, float(l[0] - l[1] - l[2] - l[3])) for pair, l in lam.items()}
    assist = {pair: float(np.sum(l)) for pair, l in lam.items()}
    overlap = {pair: tr_rho_rhotilde(rho) for pair, rho in pair_rho.items()}

    for focus in "ABC":
        touching = [p for p in PAIRS if focus in p]
        res[f"monogamy_{focus}"] = abs(
            cut[focus] ** 2 - sum(conc[p] ** 2 for p in touching) - tau
        )
    for pair in PAIRS:
        res[f"coa_gap_{pair}"] = abs(assist[pair] ** 2 - conc[pair] ** 2 - tau)
        res[f"lambda_product_{pair}"] = abs(4.0 * lam[pair][0] * lam[pair][1] - tau)
        res[f"coa_overlap_{pair}"] = abs(assist[pair] ** 2 - overlap[pair] - tau / 2.0)
        res[f"concurrence_overlap_{pair}"] = abs(
            conc[pair] ** 2 - overlap[pair] + tau / 2.0
        )
    res["tangle_route_gap"] = abs(tau - three_tangle_ckw(psi))
    return IdentityReport(residuals=res, tol=tol)

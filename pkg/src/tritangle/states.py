"""Three-qubit pure states: canonical constructors, random sampling, file I/O.

A state is stored as 8 complex amplitudes indexed |ijk> -> 4i + 2j + k with
parties A = i, B = j, C = k.  The on-disk format is a JSON object with an
optional ``"name"`` and a required ``"amplitudes"`` array of exactly 8
``[re, im]`` pairs in index order.
"""

from __future__ import annotations

import enum
import json
import math
import warnings

import numpy as np

from .linalg import kron, partial_trace, require_finite

PARTIES = "ABC"

NORM_TOL = 1e-9
MIN_FILE_NORM = 1e-12

#: Minimum pair concurrence accepted when sampling bipartite-separable classes;
#: keeps classifier tests away from the zero-tolerance boundary.
PAIR_CONCURRENCE_FLOOR = 0.1


class SloccClass(enum.Enum):
    """The six inequivalence classes of three-qubit pure states under SLOCC."""

    I = "I"      # fully separable product states
    II = "II"    # A separated from an entangled BC pair
    III = "III"  # B separated from an entangled AC pair
    IV = "IV"    # C separated from an entangled AB pair
    V = "V"      # GHZ class (nonzero three-way tangle)
    VI = "VI"    # W class (genuine tripartite, zero tangle)

    @classmethod
    def from_tag(cls, tag: str) -> "SloccClass":
        try:
            return cls(tag.upper())
        except ValueError:
            raise ValueError(
                f"unknown SLOCC class {tag!r}; expected one of "
                + ", ".join(m.value for m in cls)
            ) from None


class StateFileError(ValueError):
    """Raised when a state file cannot be parsed or validated."""


class NormalizationWarning(UserWarning):
    """Emitted when a parsed state needed more than cosmetic renormalization."""


class PureTripartiteState:
    """Unit-norm three-qubit pure state.

    The amplitude array is validated (finite, normalized within 1e-9) and
    frozen at construction; instances are safe to share.
    """

    __slots__ = ("amplitudes",)

    def __init__(self, amplitudes) -> None:
        amps = np.array(amplitudes, dtype=complex).reshape(-1)
        if amps.shape != (8,):
            raise ValueError(f"expected 8 amplitudes, got {amps.shape[0]}")
        require_finite(amps, "amplitudes")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm {norm!r} is not 1 within {NORM_TOL}")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    def __setattr__(self, name, value):
        raise AttributeError("PureTripartiteState is immutable")

    def __repr__(self) -> str:
        return f"PureTripartiteState({self.amplitudes.tolist()})"

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to a (2, 2, 2) tensor T[i, j, k]."""
        return self.amplitudes.reshape(2, 2, 2)

    def density(self) -> np.ndarray:
        """8x8 projector |psi><psi|."""
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def fidelity(self, other: "PureTripartiteState") -> float:
        return float(abs(np.vdot(self.amplitudes, other.amplitudes)) ** 2)

    def reduced(self, parties: str) -> np.ndarray:
        """Reduced density matrix over the named parties (e.g. "AB" or "C")."""
        keep = sorted(party_index(p) for p in parties)
        if len(keep) != len(parties) or not parties:
            raise ValueError(f"invalid party set {parties!r}")
        return partial_trace(self.density(), [2, 2, 2], keep)


def party_index(party: str) -> int:
    try:
        return PARTIES.index(party.upper())
    except ValueError:
        raise ValueError(f"unknown party {party!r}; expected one of A, B, C") from None


def ghz() -> PureTripartiteState:
    """(|000> + |111>)/sqrt(2)."""
    amps = np.zeros(8, dtype=complex)
    amps[0] = amps[7] = 1.0 / math.sqrt(2.0)
    return PureTripartiteState(amps)


def w() -> PureTripartiteState:
    """(|001> + |010> + |100>)/sqrt(3)."""
    amps = np.zeros(8, dtype=complex)
    amps[1] = amps[2] = amps[4] = 1.0 / math.sqrt(3.0)
    return PureTripartiteState(amps)


def generalized_ghz(a: float, b: float) -> PureTripartiteState:
    """a|000> + b|111> for real a, b with a^2 + b^2 = 1."""
    if abs(a * a + b * b - 1.0) > NORM_TOL:
        raise ValueError(f"(a, b) = ({a}, {b}) is not normalized")
    amps = np.zeros(8, dtype=complex)
    amps[0] = a
    amps[7] = b
    return PureTripartiteState(amps)


def _require_unit(v: np.ndarray, dim: int, what: str) -> np.ndarray:
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.shape != (dim,):
        raise ValueError(f"{what} must have dimension {dim}, got {v.shape[0]}")
    require_finite(v, what)
    norm = float(np.linalg.norm(v))
    if norm < MIN_FILE_NORM:
        raise ValueError(f"{what} has zero norm")
    if abs(norm - 1.0) > NORM_TOL:
        raise ValueError(f"{what} is not unit norm (norm {norm!r})")
    return v


def product_state(phi_a, chi_b, eta_c) -> PureTripartiteState:
    """Fully separable state phi_A (x) chi_B (x) eta_C from unit 2-vectors."""
    phi_a = _require_unit(phi_a, 2, "party A factor")
    chi_b = _require_unit(chi_b, 2, "party B factor")
    eta_c = _require_unit(eta_c, 2, "party C factor")
    return PureTripartiteState(kron(phi_a, chi_b, eta_c))


def bipartite_product(separated: str, single, pair) -> PureTripartiteState:
    """Single qubit at the ``separated`` party, two-qubit state on the rest.

    The pair occupies the remaining two parties in A < B < C order, so for
    ``separated="B"`` the pair amplitudes are read as (A, C).
    """
    idx = party_index(separated)
    single = _require_unit(single, 2, "single-party factor")
    pair = _require_unit(pair, 4, "pair factor").reshape(2, 2)
    if idx == 0:
        t = np.einsum("a,bc->abc", single, pair)
    elif idx == 1:
        t = np.einsum("b,ac->abc", single, pair)
    else:
        t = np.einsum("c,ab->abc", single, pair)
    return PureTripartiteState(t.reshape(8))


def haar_random(seed: int) -> PureTripartiteState:
    """Haar-random three-qubit pure state; deterministic per seed."""
    rng = np.random.default_rng(seed)
    return _haar_state(rng, 8)


def haar_corpus(n: int, seed: int) -> list[PureTripartiteState]:
    """n Haar-random states drawn from a single seeded stream."""
    rng = np.random.default_rng(seed)
    return [_haar_state(rng, 8) for _ in range(n)]


def _haar_vector(rng: np.random.Generator, dim: int) -> np.ndarray:
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return z / np.linalg.norm(z)


def _haar_state(rng: np.random.Generator, dim: int) -> PureTripartiteState:
    assert dim == 8
    return PureTripartiteState(_haar_vector(rng, 8))


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary: Ginibre matrix, QR, R-diagonal phase fix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_local_unitaries(seed: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Three independent Haar 2x2 unitaries, deterministic per seed."""
    rng = np.random.default_rng(seed)
    return tuple(haar_unitary(2, rng) for _ in range(3))


def apply_local_unitaries(psi: PureTripartiteState, u_a, u_b, u_c) -> PureTripartiteState:
    """Apply (u_a (x) u_b (x) u_c) to the state."""
    t = np.einsum("ai,bj,ck,ijk->abc", u_a, u_b, u_c, psi.tensor())
    return PureTripartiteState(t.reshape(8))


def _pure_pair_concurrence(pair: np.ndarray) -> float:
    a, b, c, d = pair
    return float(2.0 * abs(a * d - b * c))


_CLASS_SALT = {c: i + 1 for i, c in enumerate(SloccClass)}


def random_in_class(cls: SloccClass, seed: int) -> PureTripartiteState:
    """Random state carrying the given SLOCC label, reproducible per seed.

    Classes V and VI are sampled as local unitaries acting on the GHZ and W
    states; this covers a subset of each orbit but makes the label exact,
    since local unitaries preserve every entry of the entanglement vector.
    Classes II-IV resample until the entangled pair has concurrence at least
    0.1 so the label is well clear of any classifier tolerance.
    """
    rng = np.random.default_rng([_CLASS_SALT[cls], seed])
    if cls is SloccClass.I:
        return product_state(
            _haar_vector(rng, 2), _haar_vector(rng, 2), _haar_vector(rng, 2)
        )
    if cls in (SloccClass.II, SloccClass.III, SloccClass.IV):
        separated = {SloccClass.II: "A", SloccClass.III: "B", SloccClass.IV: "C"}[cls]
        single = _haar_vector(rng, 2)
        pair = _haar_vector(rng, 4)
        while _pure_pair_concurrence(pair) < PAIR_CONCURRENCE_FLOOR:
            pair = _haar_vector(rng, 4)
        return bipartite_product(separated, single, pair)
    base = ghz() if cls is SloccClass.V else w()
    u_a, u_b, u_c = (haar_unitary(2, rng) for _ in range(3))
    return apply_local_unitaries(base, u_a, u_b, u_c)


def serialize_state(state: PureTripartiteState, name: str | None = None) -> str:
    """Render a state in the JSON file format (amplitudes as [re, im] pairs)."""
    doc: dict = {}
    if name is not None:
        doc["name"] = name
    doc["amplitudes"] = [[z.real, z.imag] for z in state.amplitudes]
    return json.dumps(doc, indent=2) + "\n"


def parse_state(text: str) -> PureTripartiteState:
    """Parse the JSON state format, normalizing the amplitudes.

    A norm differing from 1 by more than 1e-9 is accepted with a
    NormalizationWarning; a norm below 1e-12 is rejected.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise StateFileError(
            f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}"
        ) from None
    if not isinstance(doc, dict):
        raise StateFileError("state file must be a JSON object")
    if "amplitudes" in doc:
        raw = doc["amplitudes"]
    else:
        raise StateFileError('state file is missing the "amplitudes" field')
    if not isinstance(raw, list) or len(raw) != 8:
        count = len(raw) if isinstance(raw, list) else "non-list"
        raise StateFileError(f'"amplitudes" must hold exactly 8 entries, got {count}')
    amps = np.empty(8, dtype=complex)
    for i, entry in enumerate(raw):
        if not isinstance(entry, (list, tuple)) or len(entry) != 2:
            raise StateFileError(f"amplitude {i} must be a [re, im] pair")
        re, im = entry
        if not isinstance(re, (int, float)) or not isinstance(im, (int, float)):
            raise StateFileError(f"amplitude {i} has non-numeric components")
        if not (math.isfinite(re) and math.isfinite(im)):
            raise StateFileError(f"amplitude {i} has non-finite components")
        amps[i] = complex(re, im)
    norm = float(np.linalg.norm(amps))
    if norm < MIN_FILE_NORM:
        raise StateFileError(f"state norm {norm!r} is below {MIN_FILE_NORM}")
    if abs(norm - 1.0) > NORM_TOL:
        warnings.warn(
            f"state norm {norm!r} differs from 1; renormalizing",
            NormalizationWarning,
            stacklevel=2,
        )
    return PureTripartiteState(amps / norm)

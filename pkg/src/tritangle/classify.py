"""SLOCC classification of three-qubit pure states from the entanglement vector."""

from __future__ import annotations

from dataclasses import dataclass

from .measures import EntanglementVector, entanglement_vector
from .states import PureTripartiteState, SloccClass


@dataclass(frozen=True)
class ClassifierConfig:
    """Tolerance below which an entanglement-vector entry counts as zero."""

    epsilon: float = 1e-7

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1e-2:
            raise ValueError(f"epsilon must lie in (0, 1e-2), got {self.epsilon!r}")


class InconsistentVectorError(RuntimeError):
    """Exactly two cut concurrences vanish: impossible for a normalized pure
    state, so this flags a numerical pathology rather than a class."""

    def __init__(self, vector: EntanglementVector, epsilon: float):
        self.vector = vector
        self.epsilon = epsilon
        super().__init__(
            "exactly two cut concurrences are below epsilon "
            f"({epsilon}): {vector}; two separable cuts force the third"
        )


@dataclass(frozen=True)
class Classification:
    slocc_class: SloccClass
    vector: EntanglementVector
    epsilon: float


_SINGLE_CUT_CLASS = (SloccClass.II, SloccClass.III, SloccClass.IV)


def label_vector(vector: EntanglementVector, epsilon: float) -> SloccClass:
    """Map an entanglement vector to its SLOCC class.

    Zero cut concurrences (below epsilon) decide separability: all three zero
    is a product state (I); exactly one zero names the separated party
    (A -> II, B -> III, C -> IV); none zero is genuinely tripartite, split
    into GHZ class (V) when the tangle is nonzero and W class (VI) otherwise.
    Exactly two zeros is raised as an inconsistency.
    """
    cuts = vector.cut_entries()
    zeros = [c < epsilon for c in cuts]
    z = sum(zeros)
    if z == 3:
        return SloccClass.I
    if z == 1:
        return _SINGLE_CUT_CLASS[zeros.index(True)]
    if z == 2:
        raise InconsistentVectorError(vector, epsilon)
    return SloccClass.V if vector.e_v >= epsilon else SloccClass.VI


def classify(
    psi: PureTripartiteState, cfg: ClassifierConfig | None = None
) -> Classification:
    """Classify a state, returning the raw vector alongside the label so
    borderline calls are auditable."""
    cfg = cfg or ClassifierConfig()
    vector = entanglement_vector(psi)
    return Classification(
        slocc_class=label_vector(vector, cfg.epsilon),
        vector=vector,
        epsilon=cfg.epsilon,
    )

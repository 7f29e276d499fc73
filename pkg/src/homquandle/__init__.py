"""Homogeneous quandles from triplets (G, H, sigma) and their embeddings
into conjugation quandles, finite and continuous."""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import HomQuandleError, InvariantBreach  # noqa: E402
from .groups import (  # noqa: E402
    FiniteGroup,
    GroupAutomorphism,
    Subgroup,
    automorphism_from_conjugation,
    cyclic_group,
    dihedral_group,
    fix_subgroup,
    generated_subgroup,
    group_from_cayley,
    group_from_permutations,
    symmetric_group,
    trivial_subgroup,
)
from .quandles import (  # noqa: E402
    FiniteQuandle,
    QuandleTriplet,
    check_quandle_axioms,
    conj_quandle,
    core_quandle,
    joyce_triplet,
    triplet_quandle,
)
from .embed import (  # noqa: E402
    bergman_embed,
    embed_inner,
    embed_semidirect,
    embeddability_report,
    factor_map,
)

__all__ = [
    "HomQuandleError", "InvariantBreach",
    "FiniteGroup", "GroupAutomorphism", "Subgroup", "automorphism_from_conjugation",
    "cyclic_group", "dihedral_group", "fix_subgroup", "generated_subgroup", "group_from_cayley",
    "group_from_permutations", "symmetric_group", "trivial_subgroup",
    "FiniteQuandle", "QuandleTriplet", "check_quandle_axioms", "conj_quandle",
    "core_quandle", "joyce_triplet", "triplet_quandle",
    "bergman_embed", "embed_inner", "embed_semidirect", "embeddability_report", "factor_map",
]

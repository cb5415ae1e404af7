"""Exact finite-group constructions around the CPT groups of QED.

Quick tour::

    from cptgroups import build_atlas, identify
    at = build_atlas()
    identify(at.groups["G_psi"])      # 'Q8 x Z2'
"""

__version__ = "0.1.0"

from .atlas import Atlas, build_atlas  # noqa: E402
from .catalog import identify  # noqa: E402
from .groups import FiniteGroup, GroupMap, fingerprint, is_isomorphic  # noqa: E402

__all__ = ["Atlas", "FiniteGroup", "GroupMap", "build_atlas", "fingerprint", "identify", "is_isomorphic"]

"""Resource caps for the enumeration-bound operations.

Every cap is configuration rather than a constant: the blow-up points of the
library (subset scans, L^X enumeration, filter search) are its main hazard and
must stay user-visible.  Defaults are chosen so that all registered desk-scale
instances run in seconds.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Caps:
    # frame-level suites accept frames up to this size
    max_frame_size: int = 16
    # subset-quantified frame laws enumerate all 2^|L| subsets up to here,
    # above it they fall back to pairs plus seeded random subsets
    max_subset_exact: int = 12
    random_subset_samples: int = 64
    # operations that enumerate all of L^X (lorder, scott) require
    # |L| ** |X| <= max_pointwise
    max_pointwise: int = 81
    # topology closure aborts once the open family exceeds this
    max_opens: int = 4096
    # open-filter enumeration requires |L| <= max_filter_frame and a raw
    # search space |L| ** |opens| <= max_filter_search
    max_filter_frame: int = 4
    max_filter_search: int = 10_000_000
    # level-3 monad samples are truncated beyond this many level-2 points
    max_level2_points: int = 256
    # node budget for the seeded sampling walk through a filter search space
    max_sample_nodes: int = 200_000
    # directed-family checks over the filter space enumerate all of L^Phi
    # only up to this bound, otherwise they run the documented sample policy
    max_filter_families: int = 4096

    def require(self, condition: bool, stage: str, detail: str) -> None:
        from .errors import ResourceLimitError

        if not condition:
            raise ResourceLimitError(f"{stage}: {detail}", stage=stage)

    def with_overrides(self, **kw) -> "Caps":
        return replace(self, **kw)

    @classmethod
    def from_file(cls, path: str) -> "Caps":
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            from .errors import InvalidParameterError

            raise InvalidParameterError(
                f"unknown cap names in {path}: {sorted(unknown)}"
            )
        return cls(**data)


DEFAULT_CAPS = Caps()

"""Consistent digital line segments derived from total orders on the integers."""

from ._core import (
    TotalOrder,
    bound_check,
    check_axioms,
    check_axioms_d,
    check_consequences,
    check_translation_invariance,
    contains_own_segments,
    extract_order,
    find_mixed_s3_violation,
    hausdorff,
    line_window,
    parallels_through,
    recover_global_order,
    segment,
    segment_d,
    sort_interval,
    system_segment,
    vdc_index,
)

__all__ = [
    "TotalOrder",
    "bound_check",
    "check_axioms",
    "check_axioms_d",
    "check_consequences",
    "check_translation_invariance",
    "contains_own_segments",
    "extract_order",
    "find_mixed_s3_violation",
    "hausdorff",
    "line_window",
    "parallels_through",
    "recover_global_order",
    "segment",
    "segment_d",
    "sort_interval",
    "system_segment",
    "vdc_index",
]

# SPDX-License-Identifier: Apache-2.0
"""Python bindings for the vlprep data preparation library."""

from ._vlprep import (
    AlignmentError,
    BudgetExceeded,
    GeometryError,
    InputError,
    assemble,
    build_pairs,
    composite_layout,
    distill,
    dpo_loss,
    plan_partition,
    reassemble,
    render_composite,
    render_tiles,
    resize_bilinear,
    rope_inv_frequencies,
    sample_frame_indices,
)

__all__ = [
    "AlignmentError",
    "BudgetExceeded",
    "GeometryError",
    "InputError",
    "assemble",
    "build_pairs",
    "composite_layout",
    "distill",
    "dpo_loss",
    "plan_partition",
    "reassemble",
    "render_composite",
    "render_tiles",
    "resize_bilinear",
    "rope_inv_frequencies",
    "sample_frame_indices",
]

# SPDX-License-Identifier: Apache-2.0

import math

import numpy as np
import pytest

import vlprep


def test_plan_partition_budget():
    plan = vlprep.plan_partition(1000, 1000, max_partitions=12)
    assert (plan["p_w"], plan["p_h"]) == (2, 2)
    assert plan["token_budget"]["total"] == 2004


def test_tiles_reassemble():
    rng = np.random.default_rng(0)
    img = rng.integers(0, 256, size=(700, 1000, 3), dtype=np.uint8)
    tiles, global_view = vlprep.render_tiles(img)
    assert len(tiles) == 4
    assert global_view.shape == (560, 560, 3)
    canvas = vlprep.reassemble(tiles, 2, 2)
    assert canvas.shape == (1120, 1120, 3)
    assert np.array_equal(canvas[:560, :560], tiles[0])
    assert np.array_equal(vlprep.resize_bilinear(img, 1000, 700), img)


def test_video_helpers():
    assert vlprep.sample_frame_indices(10, 5) == [1, 3, 5, 7, 9]
    layout = vlprep.composite_layout(360, 640, 4)
    assert layout["axis"] == "vertical"
    frames = [np.full((48, 64, 3), v, dtype=np.uint8) for v in (10, 200)]
    out = vlprep.render_composite(frames)
    assert out.shape == (96, 64, 3)
    assert out[47, 63, 0] == 10 and out[95, 63, 0] == 200


def test_assemble_over_budget():
    items = [{"kind": "image", "h": 1000, "w": 1000}] * 12
    with pytest.raises(vlprep.BudgetExceeded):
        vlprep.assemble(items)
    seq = vlprep.assemble(items, limit=96000)
    assert seq["total_tokens"] == 24108


def test_rope_and_dpo():
    base, freqs = vlprep.rope_inv_frequencies(128, 10000.0, 24000, 96000)
    assert abs(base - 40890.1) / 40890.1 < 1e-3
    assert all(a > b for a, b in zip(freqs, freqs[1:]))
    result = vlprep.dpo_loss(-3.0, -3.0, -3.0, -3.0, 0.1)
    assert abs(result["loss"] - math.log(2)) < 1e-12
    pairs, diagnostics = vlprep.build_pairs(
        [{"prompt_id": "q", "seed": s, "text": "", "score": v}
         for s, v in ((1, 0.9), (2, 0.2), (3, 0.5), (4, 0.9))],
        min_gap=0.3)
    assert len(pairs) == 1 and diagnostics == []
    assert pairs[0]["chosen"]["seed"] == 1 and pairs[0]["rejected"]["seed"] == 2


def test_distill():
    html, report = vlprep.distill("<!--c--><p onclick=f()>t</p>", [".x{a:b}p{c:d}"])
    assert html == "<head><style>p{c:d}\n</style></head><p>t</p>"
    assert report["rules_in"] == 2 and report["rules_kept"] == 1
    with pytest.raises(vlprep.GeometryError):
        vlprep.plan_partition(0, 10)

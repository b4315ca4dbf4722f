// SPDX-License-Identifier: Apache-2.0

#include "vlprep/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vlprep/error.hpp"

namespace vlprep {

namespace {

std::int64_t ceil_div(std::int64_t num, std::int64_t den) {
  return (num + den - 1) / den;
}

// Tiles used by a grid with `cols` columns over an h x w image.
std::int64_t grid_cost(std::int64_t cols, int h, int w) {
  return cols * ceil_div(cols * h, w);
}

void check_dims(int h, int w) {
  if (h < 1 || w < 1) {
    throw GeometryError("image dimensions must be positive, got " +
                        std::to_string(w) + "x" + std::to_string(h));
  }
}

}  // namespace

std::optional<int> max_width_partitions(int h, int w, int max_partitions) {
  check_dims(h, w);
  if (max_partitions < 1) {
    throw GeometryError("max_partitions must be >= 1");
  }
  if (grid_cost(1, h, w) > max_partitions) {
    return std::nullopt;
  }
  // grid_cost is nondecreasing in cols and cols <= grid_cost(cols), so the
  // answer lies in [1, max_partitions].
  int lo = 1;
  int hi = max_partitions;
  while (lo < hi) {
    const int mid = lo + (hi - lo + 1) / 2;
    if (grid_cost(mid, h, w) <= max_partitions) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

PartitionPlan plan_partition(int h, int w, int max_partitions,
                             double scale_factor, int tile_size) {
  check_dims(h, w);
  if (max_partitions < 1) {
    throw GeometryError("max_partitions must be >= 1");
  }
  if (!(scale_factor > 0.0) || !std::isfinite(scale_factor)) {
    throw GeometryError("scale_factor must be positive and finite");
  }
  if (tile_size < 14) {
    throw GeometryError("tile_size must be >= 14");
  }

  PartitionPlan plan;
  plan.input_h = h;
  plan.input_w = w;
  plan.tile_size = tile_size;
  plan.max_partitions = max_partitions;
  plan.scale_factor = scale_factor;

  const double scaled_cols =
      std::ceil(static_cast<double>(w) * scale_factor / tile_size);
  plan.p_w2 = static_cast<int>(
      std::clamp(scaled_cols, 1.0,
                 static_cast<double>(std::numeric_limits<int>::max())));

  if (const auto widest = max_width_partitions(h, w, max_partitions)) {
    plan.p_w1 = *widest;
    plan.p_w = std::max(1, std::min(plan.p_w1, plan.p_w2));
    plan.p_h = static_cast<int>(ceil_div(std::int64_t{plan.p_w} * h, w));
  } else {
    plan.p_w1 = 0;
    plan.p_w = 1;
    plan.p_h = max_partitions;
    plan.aspect_clamped = true;
  }
  plan.canvas_w = plan.p_w * tile_size;
  plan.canvas_h = plan.p_h * tile_size;
  return plan;
}

TokenBudget token_budget(const PartitionPlan& plan, int tokens_per_tile,
                         bool include_global, const SeparatorScheme& scheme) {
  if (tokens_per_tile < 1) {
    throw InputError("tokens_per_tile must be >= 1");
  }
  if (plan.p_w < 1 || plan.p_h < 1) {
    throw GeometryError("plan has an empty tile grid");
  }
  TokenBudget budget;
  budget.tokens_per_tile = tokens_per_tile;
  budget.local_tokens = std::int64_t{tokens_per_tile} * plan.p_w * plan.p_h;
  budget.global_tokens = include_global ? tokens_per_tile : 0;
  budget.separator_tokens =
      std::int64_t{scheme.per_tile_row} * plan.p_h + scheme.global_local_glue +
      (include_global ? scheme.after_global : 0);
  budget.total =
      budget.local_tokens + budget.global_tokens + budget.separator_tokens;
  return budget;
}

PlacementRect resize_pad_geometry(int h, int w, const PartitionPlan& plan) {
  check_dims(h, w);
  if (plan.canvas_w < 1 || plan.canvas_h < 1) {
    throw GeometryError("plan has an empty canvas");
  }
  PlacementRect rect;
  if (!plan.aspect_clamped) {
    // round(h * canvas_w / w), half up, in exact integer arithmetic.
    const std::int64_t num = 2 * std::int64_t{h} * plan.canvas_w + w;
    rect.scaled_w = plan.canvas_w;
    rect.scaled_h = static_cast<int>(
        std::clamp<std::int64_t>(num / (2 * std::int64_t{w}), 1,
                                 plan.canvas_h));
  } else {
    const std::int64_t num = 2 * std::int64_t{w} * plan.canvas_h + h;
    rect.scaled_h = plan.canvas_h;
    rect.scaled_w = static_cast<int>(
        std::clamp<std::int64_t>(num / (2 * std::int64_t{h}), 1,
                                 plan.canvas_w));
  }
  return rect;
}

}  // namespace vlprep

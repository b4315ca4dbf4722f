// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>

namespace vlprep {

inline constexpr int kDefaultTileSize = 560;
inline constexpr int kDefaultTokensPerTile = 400;
inline constexpr int kPretrainMaxPartitions = 12;
inline constexpr int kSftMaxPartitions = 24;

// Tile grid chosen for one image. The canvas is the padded image that is cut
// into p_w x p_h tiles of tile_size pixels.
struct PartitionPlan {
  int input_h = 0;
  int input_w = 0;
  int tile_size = kDefaultTileSize;
  int max_partitions = kPretrainMaxPartitions;
  // Largest column count whose implied grid fits the budget; 0 when no
  // column count fits (the plan is then aspect_clamped).
  int p_w1 = 0;
  int p_w2 = 0;
  int p_w = 1;
  int p_h = 1;
  double scale_factor = 1.0;
  int canvas_w = 0;
  int canvas_h = 0;
  bool aspect_clamped = false;

  int num_tiles() const { return p_w * p_h; }

  bool operator==(const PartitionPlan&) const = default;
};

// How many separator tokens surround the visual tokens of one image.
struct SeparatorScheme {
  int per_tile_row = 1;
  int after_global = 1;
  int global_local_glue = 1;
};

struct TokenBudget {
  int tokens_per_tile = kDefaultTokensPerTile;
  std::int64_t local_tokens = 0;
  std::int64_t global_tokens = 0;
  std::int64_t separator_tokens = 0;
  std::int64_t total = 0;

  bool operator==(const TokenBudget&) const = default;
};

// Where the resized image lands on the canvas. Everything outside is padding.
struct PlacementRect {
  int scaled_w = 0;
  int scaled_h = 0;
  int offset_x = 0;
  int offset_y = 0;

  bool operator==(const PlacementRect&) const = default;
};

// Largest p >= 1 with p * ceil(p * h / w) <= max_partitions, or nullopt when
// p = 1 already violates the budget.
std::optional<int> max_width_partitions(int h, int w, int max_partitions);

PartitionPlan plan_partition(int h, int w, int max_partitions,
                             double scale_factor = 1.0,
                             int tile_size = kDefaultTileSize);

TokenBudget token_budget(const PartitionPlan& plan,
                         int tokens_per_tile = kDefaultTokensPerTile,
                         bool include_global = true,
                         const SeparatorScheme& scheme = {});

// Width-fit placement: the image is scaled so its width equals canvas_w and
// the bottom band is padding. Aspect-clamped plans cannot hold a width-fit
// image, so they are fitted to the canvas height and padded on the right.
PlacementRect resize_pad_geometry(int h, int w, const PartitionPlan& plan);

}  // namespace vlprep

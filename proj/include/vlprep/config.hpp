// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "vlprep/serialize.hpp"

namespace vlprep {

// Environment variable naming a config file, used when --config is absent.
inline constexpr const char* kConfigEnvVar = "PIPE_CONFIG";

struct Config {
  int tile_size = kDefaultTileSize;
  int max_partitions_pretrain = kPretrainMaxPartitions;
  int max_partitions_sft = kSftMaxPartitions;
  int tokens_per_tile = kDefaultTokensPerTile;
  double scale_factor = 1.0;
  bool include_global = true;
  std::int64_t context_limit = kTrainedContextTokens;
  std::int64_t extended_limit = kExtendedContextTokens;
  int marker_tokens = kDefaultMarkerTokens;
  int head_dim = 128;
  double rope_base = 10000.0;
  int max_frames = kDefaultMaxFrames;
  int label_scale = 2;
  int label_margin = 4;
  double beta = pref::kDefaultBeta;
  double min_gap = 0.0;
  std::size_t min_elements = 10;
  std::size_t min_chars = 50;
  unsigned workers = 4;
};

// Overlays the keys present in `j` onto `base`. Unknown keys are rejected.
Config config_from_json(const Json& j, Config base = {});
Json to_json(const Config& config);

void validate(const Config& config);

// Loads `explicit_path` if given, else the file named by PIPE_CONFIG, else
// returns defaults.
Config load_config(const std::optional<std::filesystem::path>& explicit_path);

}  // namespace vlprep

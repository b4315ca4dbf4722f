// SPDX-License-Identifier: Apache-2.0

#include "vlprep/config.hpp"

#include <cstdlib>
#include <functional>
#include <map>

#include "vlprep/error.hpp"
#include "vlprep/image_io.hpp"

namespace vlprep {

namespace {

template <typename T>
void read_field(const Json& j, const char* key, T& field) {
  try {
    field = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(std::string("config: '") + key + "' has the wrong type");
  }
}

}  // namespace

Config config_from_json(const Json& j, Config base) {
  if (!j.is_object()) throw InputError("config must be a JSON object");
  const std::map<std::string, std::function<void(const Json&)>> fields = {
      {"tile_size", [&](const Json& v) { read_field(v, "tile_size", base.tile_size); }},
      {"max_partitions_pretrain",
       [&](const Json& v) { read_field(v, "max_partitions_pretrain", base.max_partitions_pretrain); }},
      {"max_partitions_sft",
       [&](const Json& v) { read_field(v, "max_partitions_sft", base.max_partitions_sft); }},
      {"tokens_per_tile", [&](const Json& v) { read_field(v, "tokens_per_tile", base.tokens_per_tile); }},
      {"scale_factor", [&](const Json& v) { read_field(v, "scale_factor", base.scale_factor); }},
      {"include_global", [&](const Json& v) { read_field(v, "include_global", base.include_global); }},
      {"context_limit", [&](const Json& v) { read_field(v, "context_limit", base.context_limit); }},
      {"extended_limit", [&](const Json& v) { read_field(v, "extended_limit", base.extended_limit); }},
      {"marker_tokens", [&](const Json& v) { read_field(v, "marker_tokens", base.marker_tokens); }},
      {"head_dim", [&](const Json& v) { read_field(v, "head_dim", base.head_dim); }},
      {"rope_base", [&](const Json& v) { read_field(v, "rope_base", base.rope_base); }},
      {"max_frames", [&](const Json& v) { read_field(v, "max_frames", base.max_frames); }},
      {"label_scale", [&](const Json& v) { read_field(v, "label_scale", base.label_scale); }},
      {"label_margin", [&](const Json& v) { read_field(v, "label_margin", base.label_margin); }},
      {"beta", [&](const Json& v) { read_field(v, "beta", base.beta); }},
      {"min_gap", [&](const Json& v) { read_field(v, "min_gap", base.min_gap); }},
      {"min_elements", [&](const Json& v) { read_field(v, "min_elements", base.min_elements); }},
      {"min_chars", [&](const Json& v) { read_field(v, "min_chars", base.min_chars); }},
      {"workers", [&](const Json& v) { read_field(v, "workers", base.workers); }},
  };
  for (const auto& [key, value] : j.items()) {
    const auto it = fields.find(key);
    if (it == fields.end()) throw InputError("config: unknown key '" + key + "'");
    it->second(j);
  }
  validate(base);
  return base;
}

Json to_json(const Config& c) {
  return Json{{"tile_size", c.tile_size},
              {"max_partitions_pretrain", c.max_partitions_pretrain},
              {"max_partitions_sft", c.max_partitions_sft},
              {"tokens_per_tile", c.tokens_per_tile},
              {"scale_factor", c.scale_factor},
              {"include_global", c.include_global},
              {"context_limit", c.context_limit},
              {"extended_limit", c.extended_limit},
              {"marker_tokens", c.marker_tokens},
              {"head_dim", c.head_dim},
              {"rope_base", c.rope_base},
              {"max_frames", c.max_frames},
              {"label_scale", c.label_scale},
              {"label_margin", c.label_margin},
              {"beta", c.beta},
              {"min_gap", c.min_gap},
              {"min_elements", c.min_elements},
              {"min_chars", c.min_chars},
              {"workers", c.workers}};
}

void validate(const Config& c) {
  auto positive = [](bool ok, const char* what) {
    if (!ok) throw InputError(std::string("config: ") + what + " must be positive");
  };
  positive(c.tile_size >= 14, "tile_size (>= 14)");
  positive(c.max_partitions_pretrain > 0, "max_partitions_pretrain");
  positive(c.max_partitions_sft > 0, "max_partitions_sft");
  positive(c.tokens_per_tile > 0, "tokens_per_tile");
  positive(c.scale_factor > 0.0, "scale_factor");
  positive(c.context_limit > 0, "context_limit");
  positive(c.extended_limit > 0, "extended_limit");
  positive(c.marker_tokens >= 0, "marker_tokens (>= 0)");
  positive(c.head_dim >= 2 && c.head_dim % 2 == 0, "head_dim (even)");
  positive(c.rope_base > 1.0, "rope_base (> 1)");
  positive(c.max_frames > 0, "max_frames");
  positive(c.label_scale > 0, "label_scale");
  positive(c.label_margin >= 0, "label_margin (>= 0)");
  positive(c.beta > 0.0, "beta");
  positive(c.min_gap >= 0.0, "min_gap (>= 0)");
  positive(c.workers > 0, "workers");
  // A single-tile image with its global view must fit either window.
  const std::int64_t one_image =
      token_budget(plan_partition(c.tile_size, c.tile_size, 1, 1.0, c.tile_size),
                   c.tokens_per_tile, c.include_global)
          .total +
      c.marker_tokens;
  if (c.context_limit < one_image || c.extended_limit < c.context_limit) {
    throw InputError("config: context limits must hold one image and extended_limit >= context_limit");
  }
}

Config load_config(const std::optional<std::filesystem::path>& explicit_path) {
  std::optional<std::filesystem::path> path = explicit_path;
  if (!path) {
    if (const char* env = std::getenv(kConfigEnvVar); env != nullptr && *env != '\0') {
      path = env;
    }
  }
  if (!path) return Config{};
  Json j;
  try {
    j = Json::parse(read_file(*path));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("config " + path->string() + ": " + e.what());
  }
  return config_from_json(j);
}

}  // namespace vlprep

// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vlprep/context.hpp"
#include "vlprep/partition.hpp"
#include "vlprep/prefalign.hpp"
#include "vlprep/videocomp.hpp"
#include "vlprep/web/distill.hpp"

namespace vlprep {

using Json = nlohmann::ordered_json;

Json to_json(const TokenBudget& budget);
Json to_json(const PartitionPlan& plan, const TokenBudget& budget);
Json to_json(const PlacementRect& rect);
Json to_json(const FrameSamplePlan& plan);
Json to_json(const CompositeLayout& layout);
Json to_json(const ContextSequence& seq);
Json to_json(const pref::BatchStats& stats);
Json to_json(const pref::DpoResult& result);
Json to_json(const web::DistillReport& report);

// Frequency table: header then one row per frequency pair.
std::string rope_csv(const RopeSpec& spec);

// JSON-lines datasets. Field names match the struct members.
Json to_json(const pref::PromptRecord& prompt);
Json to_json(const pref::ResponseSample& sample);
Json to_json(const pref::PreferencePair& pair);
pref::PromptRecord prompt_from_json(const Json& j);
pref::ResponseSample sample_from_json(const Json& j);
pref::PreferencePair pair_from_json(const Json& j);

std::vector<Json> parse_jsonl(std::string_view text);
std::string to_jsonl(const std::vector<Json>& rows);

// Deterministic text form used for every report: two-space indent, final
// newline.
std::string dump(const Json& j);

}  // namespace vlprep

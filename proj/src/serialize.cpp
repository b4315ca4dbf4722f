// SPDX-License-Identifier: Apache-2.0

#include "vlprep/serialize.hpp"

#include <cstdio>
#include <sstream>

#include "vlprep/error.hpp"

namespace vlprep {

namespace {

Json rect_json(const Rect& r) { return Json{{"x", r.x}, {"y", r.y}, {"w", r.w}, {"h", r.h}}; }

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

template <typename T>
T required(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(std::string("field '") + key + "' has the wrong type");
  }
}

std::optional<double> optional_number(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  if (!j.at(key).is_number()) {
    throw InputError(std::string("field '") + key + "' must be a number");
  }
  return j.at(key).get<double>();
}

void put_optional(Json& j, const char* key, const std::optional<double>& v) {
  if (v) {
    j[key] = *v;
  } else {
    j[key] = nullptr;
  }
}

}  // namespace

Json to_json(const TokenBudget& b) {
  return Json{{"tokens_per_tile", b.tokens_per_tile},
              {"local_tokens", b.local_tokens},
              {"global_tokens", b.global_tokens},
              {"separator_tokens", b.separator_tokens},
              {"total", b.total}};
}

Json to_json(const PartitionPlan& p, const TokenBudget& budget) {
  return Json{{"input_h", p.input_h},
              {"input_w", p.input_w},
              {"tile_size", p.tile_size},
              {"max_partitions", p.max_partitions},
              {"scale_factor", p.scale_factor},
              {"p_w1", p.p_w1},
              {"p_w2", p.p_w2},
              {"p_w", p.p_w},
              {"p_h", p.p_h},
              {"canvas_w", p.canvas_w},
              {"canvas_h", p.canvas_h},
              {"aspect_clamped", p.aspect_clamped},
              {"token_budget", to_json(budget)}};
}

Json to_json(const PlacementRect& r) {
  return Json{{"scaled_w", r.scaled_w},
              {"scaled_h", r.scaled_h},
              {"offset_x", r.offset_x},
              {"offset_y", r.offset_y}};
}

Json to_json(const FrameSamplePlan& plan) {
  return Json{{"total_frames", plan.total_frames},
              {"max_frames", plan.max_frames},
              {"selected", plan.selected}};
}

Json to_json(const CompositeLayout& layout) {
  Json rects = Json::array();
  for (const auto& r : layout.rects) rects.push_back(rect_json(r));
  Json anchors = Json::array();
  for (const auto& a : layout.label_anchors) anchors.push_back(Json{{"x", a.x}, {"y", a.y}});
  return Json{{"frame_w", layout.frame_w},
              {"frame_h", layout.frame_h},
              {"count", layout.count},
              {"axis", axis_name(layout.axis)},
              {"composite_w", layout.composite_w},
              {"composite_h", layout.composite_h},
              {"rects", rects},
              {"label_anchors", anchors}};
}

Json to_json(const ContextSequence& seq) {
  Json segments = Json::array();
  for (const auto& s : seq.segments) {
    Json j{{"kind", s.kind == SegmentKind::kText ? "text" : "image"},
           {"tokens", s.tokens},
           {"range", Json::array({s.range.begin, s.range.end})}};
    if (s.kind == SegmentKind::kImage) {
      j["image_index"] = s.image_index;
      j["marker"] = s.marker();
      j["marker_tokens"] = s.marker_tokens;
      j["plan"] = to_json(s.plan, s.budget);
    }
    segments.push_back(std::move(j));
  }
  return Json{{"total_tokens", seq.total_tokens},
              {"limit", seq.limit},
              {"image_count", seq.image_count},
              {"segments", segments}};
}

Json to_json(const pref::BatchStats& s) {
  return Json{{"count", s.count},
              {"mean_loss", s.mean_loss},
              {"accuracy", s.accuracy},
              {"mean_margin", s.mean_margin}};
}

Json to_json(const pref::DpoResult& r) {
  return Json{{"loss", r.loss},
              {"z", r.z},
              {"grad_policy_chosen", r.grad_policy_chosen},
              {"grad_policy_rejected", r.grad_policy_rejected},
              {"reward_chosen", r.reward_chosen},
              {"reward_rejected", r.reward_rejected}};
}

Json to_json(const web::DistillReport& r) {
  return Json{{"rules_in", r.rules_in},
              {"rules_kept", r.rules_kept},
              {"selectors_dropped", r.selectors_dropped},
              {"nodes_removed", r.nodes_removed},
              {"attributes_removed", r.attributes_removed},
              {"quality",
               Json{{"pass", r.quality.pass},
                    {"reasons", r.quality.reasons},
                    {"elements", r.quality.elements},
                    {"text_chars", r.quality.text_chars},
                    {"style_rules", r.quality.style_rules}}},
              {"diagnostics", r.diagnostics}};
}

std::string rope_csv(const RopeSpec& spec) {
  std::ostringstream out;
  out << "j,inv_freq,wavelength,scaled_base\n";
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  for (std::size_t j = 0; j < spec.inv_freqs.size(); ++j) {
    out << j << ',' << format_double(spec.inv_freqs[j]) << ','
        << format_double(kTwoPi / spec.inv_freqs[j]) << ','
        << format_double(spec.scaled_base) << '\n';
  }
  return out.str();
}

Json to_json(const pref::PromptRecord& p) {
  return Json{{"prompt_id", p.prompt_id}, {"prompt", p.prompt}, {"augmented", p.augmented}};
}

Json to_json(const pref::ResponseSample& s) {
  Json j{{"prompt_id", s.prompt_id}, {"seed", s.seed}, {"text", s.text}};
  put_optional(j, "score", s.score);
  put_optional(j, "logp_policy", s.logp_policy);
  put_optional(j, "logp_ref", s.logp_ref);
  return j;
}

Json to_json(const pref::PreferencePair& p) {
  return Json{{"prompt_id", p.prompt_id},
              {"chosen", to_json(p.chosen)},
              {"rejected", to_json(p.rejected)},
              {"gap", p.gap}};
}

pref::PromptRecord prompt_from_json(const Json& j) {
  pref::PromptRecord p;
  p.prompt_id = required<std::string>(j, "prompt_id");
  p.prompt = required<std::string>(j, "prompt");
  p.augmented = j.value("augmented", false);
  return p;
}

pref::ResponseSample sample_from_json(const Json& j) {
  pref::ResponseSample s;
  s.prompt_id = required<std::string>(j, "prompt_id");
  s.seed = required<std::int64_t>(j, "seed");
  s.text = j.contains("text") && j.at("text").is_string() ? j.at("text").get<std::string>() : "";
  s.score = optional_number(j, "score");
  s.logp_policy = optional_number(j, "logp_policy");
  s.logp_ref = optional_number(j, "logp_ref");
  pref::validate_sample(s);
  return s;
}

pref::PreferencePair pair_from_json(const Json& j) {
  pref::PreferencePair p;
  p.chosen = sample_from_json(required<Json>(j, "chosen"));
  p.rejected = sample_from_json(required<Json>(j, "rejected"));
  p.prompt_id = j.contains("prompt_id") ? required<std::string>(j, "prompt_id")
                                        : p.chosen.prompt_id;
  p.gap = j.contains("gap") && j.at("gap").is_number()
              ? j.at("gap").get<double>()
              : p.chosen.score.value_or(0.0) - p.rejected.score.value_or(0.0);
  return p;
}

std::vector<Json> parse_jsonl(std::string_view text) {
  std::vector<Json> rows;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(start, end - start);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.remove_suffix(1);
    }
    if (!line.empty()) {
      try {
        rows.push_back(Json::parse(line));
      } catch (const nlohmann::json::parse_error& e) {
        throw InputError("line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return rows;
}

std::string to_jsonl(const std::vector<Json>& rows) {
  std::string out;
  for (const auto& r : rows) {
    out += r.dump();
    out += '\n';
  }
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace vlprep

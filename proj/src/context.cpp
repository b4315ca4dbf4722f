// SPDX-License-Identifier: Apache-2.0

#include "vlprep/context.hpp"

#include <cctype>
#include <cmath>

#include "vlprep/error.hpp"

namespace vlprep {

std::string Segment::marker() const {
  if (kind != SegmentKind::kImage) return {};
  return "<IMAGE " + std::to_string(image_index) + ">";
}

ContextSequence assemble(std::span<const ContextItem> items, std::int64_t limit,
                         const AssembleOptions& options) {
  if (items.empty()) {
    throw InputError("context needs at least one item");
  }
  if (limit < 1) {
    throw InputError("context limit must be >= 1");
  }
  if (options.marker_tokens < 0) {
    throw InputError("marker token cost must be >= 0");
  }
  ContextSequence seq;
  seq.limit = limit;
  seq.segments.reserve(items.size());
  std::int64_t cursor = 0;
  for (const auto& item : items) {
    Segment seg;
    if (const auto* text = std::get_if<TextItem>(&item)) {
      if (text->tokens < 0) throw InputError("text token count must be >= 0");
      seg.kind = SegmentKind::kText;
      seg.tokens = text->tokens;
      seg.text = text->text;
    } else {
      const auto& image = std::get<ImageItem>(item);
      if (image.budget.total <= 0) throw InputError("image budget must be > 0");
      seg.kind = SegmentKind::kImage;
      seg.image_index = ++seq.image_count;
      seg.tokens = image.budget.total;
      seg.marker_tokens = options.marker_tokens;
      seg.plan = image.plan;
      seg.budget = image.budget;
    }
    seg.range = {cursor, cursor + seg.marker_tokens + seg.tokens};
    cursor = seg.range.end;
    seq.segments.push_back(std::move(seg));
  }
  seq.total_tokens = cursor;
  if (seq.total_tokens > limit) {
    throw BudgetExceeded(seq.total_tokens, limit);
  }
  return seq;
}

std::int64_t estimate_text_tokens(std::string_view text) {
  std::int64_t words = 0;
  bool in_word = false;
  for (const char c : text) {
    const bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!space && !in_word) ++words;
    in_word = !space;
  }
  return words;
}

RopeSpec rope_inv_frequencies(int head_dim, double base,
                              std::int64_t trained_len,
                              std::int64_t target_len) {
  if (head_dim < 2 || head_dim % 2 != 0) {
    throw InputError("head_dim must be even and >= 2");
  }
  if (!(base > 1.0) || !std::isfinite(base)) {
    throw InputError("rope base must be finite and > 1");
  }
  if (trained_len < 1) {
    throw InputError("trained length must be >= 1");
  }
  if (target_len < trained_len) {
    throw InputError("target length " + std::to_string(target_len) +
                     " is shorter than trained length " +
                     std::to_string(trained_len));
  }
  RopeSpec spec;
  spec.head_dim = head_dim;
  spec.base = base;
  spec.trained_len = trained_len;
  spec.target_len = target_len;
  const double scale =
      static_cast<double>(target_len) / static_cast<double>(trained_len);
  // With head_dim == 2 the only frequency is base'^0 = 1, so the exponent
  // d / (d - 2) is never needed.
  spec.scaled_base =
      head_dim == 2 ? base
                    : base * std::pow(scale, static_cast<double>(head_dim) /
                                                 (head_dim - 2));
  const int pairs = head_dim / 2;
  spec.inv_freqs.resize(pairs);
  const double log_base = std::log(spec.scaled_base);
  for (int j = 0; j < pairs; ++j) {
    spec.inv_freqs[j] = std::exp(-2.0 * j / head_dim * log_base);
  }
  return spec;
}

std::vector<double> rope_rotate(std::span<const double> vec, double position,
                                const RopeSpec& spec) {
  if (vec.size() != static_cast<std::size_t>(spec.head_dim) ||
      spec.inv_freqs.size() * 2 != vec.size()) {
    throw InputError("vector length " + std::to_string(vec.size()) +
                     " does not match head_dim " +
                     std::to_string(spec.head_dim));
  }
  std::vector<double> out(vec.size());
  for (std::size_t j = 0; j < spec.inv_freqs.size(); ++j) {
    const double angle = position * spec.inv_freqs[j];
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const double x = vec[2 * j];
    const double y = vec[2 * j + 1];
    out[2 * j] = x * c - y * s;
    out[2 * j + 1] = x * s + y * c;
  }
  return out;
}

}  // namespace vlprep

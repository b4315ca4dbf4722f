// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vlprep/partition.hpp"

namespace vlprep {

inline constexpr std::int64_t kTrainedContextTokens = 24000;
inline constexpr std::int64_t kExtendedContextTokens = 96000;
inline constexpr int kDefaultMarkerTokens = 5;

struct TextItem {
  std::int64_t tokens = 0;
  std::string text;
};

struct ImageItem {
  PartitionPlan plan;
  TokenBudget budget;
};

using ContextItem = std::variant<TextItem, ImageItem>;

enum class SegmentKind { kText, kImage };

// Half-open token interval.
struct TokenRange {
  std::int64_t begin = 0;
  std::int64_t end = 0;
  std::int64_t size() const { return end - begin; }
  bool operator==(const TokenRange&) const = default;
};

struct Segment {
  SegmentKind kind = SegmentKind::kText;
  // Content tokens: the caller's count for text, the image budget total for
  // images. The "<IMAGE i>" marker is accounted separately.
  std::int64_t tokens = 0;
  std::int64_t marker_tokens = 0;
  // Covers marker and content.
  TokenRange range;
  int image_index = 0;  // 1-based; 0 for text
  std::string text;
  PartitionPlan plan;
  TokenBudget budget;

  std::string marker() const;
};

struct ContextSequence {
  std::vector<Segment> segments;
  std::int64_t total_tokens = 0;
  std::int64_t limit = 0;
  int image_count = 0;
};

struct AssembleOptions {
  int marker_tokens = kDefaultMarkerTokens;
};

// Numbers images 1..n in order of appearance and lays segments out left to
// right. Throws BudgetExceeded rather than truncating.
ContextSequence assemble(std::span<const ContextItem> items,
                         std::int64_t limit = kTrainedContextTokens,
                         const AssembleOptions& options = {});

// Whitespace-split word count. Only a rough stand-in for a tokenizer.
std::int64_t estimate_text_tokens(std::string_view text);

struct RopeSpec {
  int head_dim = 128;
  double base = 10000.0;
  std::int64_t trained_len = kTrainedContextTokens;
  std::int64_t target_len = kTrainedContextTokens;
  double scaled_base = 10000.0;
  std::vector<double> inv_freqs;
};

// Static NTK-aware scaling: base' = base * (target/trained)^(d / (d - 2)),
// inv_freq[j] = base'^(-2j / d).
RopeSpec rope_inv_frequencies(int head_dim, double base = 10000.0,
                              std::int64_t trained_len = kTrainedContextTokens,
                              std::int64_t target_len = kTrainedContextTokens);

// Rotates each (x[2j], x[2j+1]) pair by position * inv_freq[j].
std::vector<double> rope_rotate(std::span<const double> vec, double position,
                                const RopeSpec& spec);

}  // namespace vlprep

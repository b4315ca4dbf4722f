// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace vlprep::web {

enum class SimpleKind { kType, kUniversal, kClass, kId, kAttribute, kPseudo };

struct SimpleSelector {
  SimpleKind kind = SimpleKind::kType;
  std::string name;   // tag, class, id, attribute name, or raw pseudo text
  std::string value;  // [name=value]
  bool has_value = false;
  bool operator==(const SimpleSelector&) const = default;
};

struct CompoundSelector {
  std::vector<SimpleSelector> parts;
  bool operator==(const CompoundSelector&) const = default;
};

enum class Combinator { kDescendant, kChild };

// Compounds left to right; combinators[i] joins compounds[i] and
// compounds[i + 1]. Selectors outside the supported grammar keep only their
// normalized text and are treated as matching everything.
struct ComplexSelector {
  std::vector<CompoundSelector> compounds;
  std::vector<Combinator> combinators;
  bool supported = true;
  std::string text;
  bool operator==(const ComplexSelector&) const = default;
};

struct CssRule {
  std::vector<ComplexSelector> selectors;
  std::string declarations;  // block body, comments removed, trimmed
};

// An at-rule kept byte-for-byte (after comment removal), e.g. @font-face.
struct VerbatimAtRule {
  std::string text;
};

using MediaItem = std::variant<CssRule, VerbatimAtRule>;

struct MediaBlock {
  std::string prelude;  // e.g. "(max-width:600px)"
  std::vector<MediaItem> items;
};

using StyleItem = std::variant<CssRule, MediaBlock, VerbatimAtRule>;

struct Stylesheet {
  std::vector<StyleItem> items;
  std::vector<std::string> diagnostics;
};

ComplexSelector parse_selector(std::string_view text);
std::string serialize_selector(const ComplexSelector& sel);

// Comments are removed before anything else; malformed rules are skipped
// with a diagnostic.
Stylesheet parse_css(std::string_view text);
std::string serialize_css(const Stylesheet& sheet);

// Style rules, including those nested in @media blocks.
std::size_t rule_count(const Stylesheet& sheet);

std::string strip_css_comments(std::string_view text);

}  // namespace vlprep::web

// SPDX-License-Identifier: Apache-2.0

#include "vlprep/web/match.hpp"

#include <algorithm>
#include <optional>
#include <string_view>

namespace vlprep::web {

namespace {

bool has_class(const Node& element, std::string_view cls) {
  const std::string* attr = element.attribute("class");
  if (attr == nullptr) return false;
  const std::string_view list = *attr;
  std::size_t i = 0;
  while (i < list.size()) {
    while (i < list.size() && (list[i] == ' ' || list[i] == '\t' || list[i] == '\n' ||
                               list[i] == '\r' || list[i] == '\f')) {
      ++i;
    }
    const std::size_t start = i;
    while (i < list.size() && !(list[i] == ' ' || list[i] == '\t' || list[i] == '\n' ||
                                list[i] == '\r' || list[i] == '\f')) {
      ++i;
    }
    if (i > start && list.substr(start, i - start) == cls) return true;
  }
  return false;
}

// Matches compounds[0..last] with compounds[last] anchored at `element`.
bool match_from(const ComplexSelector& sel, std::size_t last, const ElementIndex& index,
                std::size_t element) {
  if (!compound_matches(sel.compounds[last], index.element(element))) return false;
  if (last == 0) return true;
  const Combinator comb = sel.combinators[last - 1];
  std::size_t up = index.parent(element);
  if (comb == Combinator::kChild) {
    return up != ElementIndex::kNoParent && match_from(sel, last - 1, index, up);
  }
  for (; up != ElementIndex::kNoParent; up = index.parent(up)) {
    if (match_from(sel, last - 1, index, up)) return true;
  }
  return false;
}

}  // namespace

ElementIndex::ElementIndex(const DomDocument& doc) {
  for (const auto& child : doc.root.children) add(child, kNoParent);
}

void ElementIndex::add(const Node& node, std::size_t parent) {
  std::size_t self = parent;
  if (node.is_element()) {
    self = nodes_.size();
    nodes_.push_back(&node);
    parents_.push_back(parent);
  }
  for (const auto& child : node.children) add(child, self);
}

bool compound_matches(const CompoundSelector& compound, const Node& element) {
  for (const auto& part : compound.parts) {
    switch (part.kind) {
      case SimpleKind::kType:
        if (element.tag != part.name) return false;
        break;
      case SimpleKind::kUniversal:
      case SimpleKind::kPseudo:
        break;
      case SimpleKind::kClass:
        if (!has_class(element, part.name)) return false;
        break;
      case SimpleKind::kId: {
        const std::string* id = element.attribute("id");
        if (id == nullptr || *id != part.name) return false;
        break;
      }
      case SimpleKind::kAttribute: {
        const std::string* value = element.attribute(part.name);
        if (value == nullptr || (part.has_value && *value != part.value)) return false;
        break;
      }
    }
  }
  return true;
}

bool selector_matches(const ComplexSelector& sel, const ElementIndex& index,
                      std::size_t element) {
  if (!sel.supported) return true;
  if (sel.compounds.empty() || element >= index.size()) return false;
  return match_from(sel, sel.compounds.size() - 1, index, element);
}

bool selector_referenced(const ComplexSelector& sel, const ElementIndex& index) {
  if (!sel.supported) return true;
  for (std::size_t id = 0; id < index.size(); ++id) {
    if (selector_matches(sel, index, id)) return true;
  }
  return false;
}

Stylesheet prune_unused_rules(const Stylesheet& sheet, const DomDocument& doc,
                              PruneStats* stats) {
  const ElementIndex index(doc);
  PruneStats local;
  auto keep_rule = [&](const CssRule& rule) -> std::optional<CssRule> {
    ++local.rules_in;
    CssRule kept;
    kept.declarations = rule.declarations;
    for (const auto& sel : rule.selectors) {
      if (selector_referenced(sel, index)) {
        kept.selectors.push_back(sel);
      } else {
        ++local.selectors_dropped;
      }
    }
    if (kept.selectors.empty()) return std::nullopt;
    ++local.rules_kept;
    return kept;
  };

  Stylesheet out;
  out.diagnostics = sheet.diagnostics;
  for (const auto& item : sheet.items) {
    if (const auto* rule = std::get_if<CssRule>(&item)) {
      if (auto kept = keep_rule(*rule)) out.items.push_back(std::move(*kept));
    } else if (const auto* media = std::get_if<MediaBlock>(&item)) {
      MediaBlock pruned;
      pruned.prelude = media->prelude;
      for (const auto& inner : media->items) {
        if (const auto* r = std::get_if<CssRule>(&inner)) {
          if (auto kept = keep_rule(*r)) pruned.items.push_back(std::move(*kept));
        } else {
          pruned.items.push_back(inner);
        }
      }
      if (!pruned.items.empty()) out.items.push_back(std::move(pruned));
    } else {
      out.items.push_back(item);
    }
  }
  if (stats != nullptr) *stats = local;
  return out;
}

}  // namespace vlprep::web

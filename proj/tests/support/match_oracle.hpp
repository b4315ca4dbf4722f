// SPDX-License-Identifier: Apache-2.0
//
// Brute-force selector matcher for tests. It walks the node tree directly and
// evaluates a selector left to right as a sequence of element sets, so it
// shares no traversal logic with the library matcher.

#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "vlprep/web/css.hpp"
#include "vlprep/web/dom.hpp"

namespace vlprep::oracle {

struct FlatElement {
  const web::Node* node;
  std::vector<std::size_t> ancestors;  // nearest first
};

inline void flatten(const web::Node& node, std::vector<std::size_t>& chain,
                    std::vector<FlatElement>& out) {
  bool pushed = false;
  if (node.kind == web::NodeKind::kElement) {
    std::vector<std::size_t> anc(chain.rbegin(), chain.rend());
    out.push_back({&node, anc});
    chain.push_back(out.size() - 1);
    pushed = true;
  }
  for (const auto& c : node.children) flatten(c, chain, out);
  if (pushed) chain.pop_back();
}

inline std::vector<FlatElement> flatten(const web::DomDocument& doc) {
  std::vector<FlatElement> out;
  std::vector<std::size_t> chain;
  flatten(doc.root, chain, out);
  return out;
}

inline bool class_list_contains(const std::string& list, const std::string& cls) {
  std::string token;
  for (std::size_t i = 0; i <= list.size(); ++i) {
    const char c = i < list.size() ? list[i] : ' ';
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f') {
      if (token == cls) return true;
      token.clear();
    } else {
      token += c;
    }
  }
  return false;
}

inline const std::string* attr(const web::Node& n, const std::string& name) {
  for (const auto& a : n.attributes)
    if (a.name == name) return &a.value;
  return nullptr;
}

inline bool simple_ok(const web::SimpleSelector& s, const web::Node& n) {
  using web::SimpleKind;
  switch (s.kind) {
    case SimpleKind::kType: return n.tag == s.name;
    case SimpleKind::kUniversal: return true;
    case SimpleKind::kPseudo: return true;
    case SimpleKind::kClass: {
      const auto* v = attr(n, "class");
      return v != nullptr && class_list_contains(*v, s.name);
    }
    case SimpleKind::kId: {
      const auto* v = attr(n, "id");
      return v != nullptr && *v == s.name;
    }
    case SimpleKind::kAttribute: {
      const auto* v = attr(n, s.name);
      return v != nullptr && (!s.has_value || *v == s.value);
    }
  }
  return false;
}

// Indices (into flatten(doc)) of every element the selector matches.
inline std::set<std::size_t> matching_elements(const web::ComplexSelector& sel,
                                               const std::vector<FlatElement>& els) {
  std::set<std::size_t> current;
  if (!sel.supported) {
    for (std::size_t i = 0; i < els.size(); ++i) current.insert(i);
    return current;
  }
  for (std::size_t step = 0; step < sel.compounds.size(); ++step) {
    std::set<std::size_t> next;
    for (std::size_t i = 0; i < els.size(); ++i) {
      const auto& parts = sel.compounds[step].parts;
      if (!std::all_of(parts.begin(), parts.end(),
                       [&](const auto& s) { return simple_ok(s, *els[i].node); })) {
        continue;
      }
      if (step == 0) {
        next.insert(i);
        continue;
      }
      const auto& anc = els[i].ancestors;
      if (sel.combinators[step - 1] == web::Combinator::kChild) {
        if (!anc.empty() && current.count(anc.front())) next.insert(i);
      } else if (std::any_of(anc.begin(), anc.end(),
                             [&](std::size_t a) { return current.count(a) > 0; })) {
        next.insert(i);
      }
    }
    current = std::move(next);
  }
  return current;
}

// Every top-level and @media-nested rule, in document order.
inline std::vector<const web::CssRule*> all_rules(const web::Stylesheet& sheet) {
  std::vector<const web::CssRule*> out;
  for (const auto& item : sheet.items) {
    if (const auto* r = std::get_if<web::CssRule>(&item)) {
      out.push_back(r);
    } else if (const auto* m = std::get_if<web::MediaBlock>(&item)) {
      for (const auto& inner : m->items)
        if (const auto* r2 = std::get_if<web::CssRule>(&inner)) out.push_back(r2);
    }
  }
  return out;
}

}  // namespace vlprep::oracle

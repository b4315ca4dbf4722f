// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "vlprep/web/css.hpp"
#include "vlprep/web/dom.hpp"

namespace vlprep::web {

// Flat pre-order view of a document's elements with parent links. Holds
// pointers into the document, which must outlive it and stay unmodified.
class ElementIndex {
 public:
  static constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

  explicit ElementIndex(const DomDocument& doc);

  std::size_t size() const { return nodes_.size(); }
  const Node& element(std::size_t id) const { return *nodes_[id]; }
  std::size_t parent(std::size_t id) const { return parents_[id]; }

 private:
  void add(const Node& node, std::size_t parent);

  std::vector<const Node*> nodes_;
  std::vector<std::size_t> parents_;
};

// Structural match of `sel` against one element. Pseudo-classes and
// pseudo-elements are treated as satisfied, and selectors outside the
// supported grammar always match.
bool selector_matches(const ComplexSelector& sel, const ElementIndex& index,
                      std::size_t element);

bool compound_matches(const CompoundSelector& compound, const Node& element);

// True when the selector matches at least one element of the document.
bool selector_referenced(const ComplexSelector& sel, const ElementIndex& index);

struct PruneStats {
  std::size_t rules_in = 0;
  std::size_t rules_kept = 0;
  std::size_t selectors_dropped = 0;
};

// Keeps rules with at least one referenced selector, and within them only
// the referenced selectors. @media blocks left empty are dropped; other
// at-rules are kept untouched.
Stylesheet prune_unused_rules(const Stylesheet& sheet, const DomDocument& doc,
                              PruneStats* stats = nullptr);

}  // namespace vlprep::web

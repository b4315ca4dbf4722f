// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace vlprep::web {

enum class NodeKind { kDocument, kElement, kText, kComment, kDoctype };

struct Attribute {
  std::string name;  // lowercased
  std::string value;
  bool operator==(const Attribute&) const = default;
};

struct Node {
  NodeKind kind = NodeKind::kElement;
  std::string tag;   // lowercased element name
  std::string text;  // text run, comment body or doctype body
  std::vector<Attribute> attributes;
  std::vector<Node> children;

  static Node element(std::string tag, std::vector<Attribute> attrs = {});
  static Node text_node(std::string text);

  bool is_element() const { return kind == NodeKind::kElement; }
  bool is_element(std::string_view name) const {
    return kind == NodeKind::kElement && tag == name;
  }

  const std::string* attribute(std::string_view name) const;
  bool has_attribute(std::string_view name) const {
    return attribute(name) != nullptr;
  }
  void set_attribute(std::string_view name, std::string value);

  // Concatenated text of all descendant text runs.
  std::string text_content() const;

  bool operator==(const Node&) const = default;
};

struct DomDocument {
  Node root{NodeKind::kDocument};
  std::vector<std::string> diagnostics;
};

bool is_void_element(std::string_view tag);
// Elements whose content is stored as one verbatim text child.
bool is_raw_text_element(std::string_view tag);

// Tree building never fails; recoverable problems land in diagnostics.
DomDocument parse_html(std::string_view text);

std::string serialize_html(const DomDocument& doc);
std::string serialize_html(const Node& node);

// Pre-order walk over every node below (and including) `node`.
void visit(const Node& node, const std::function<void(const Node&)>& fn);

std::size_t count_nodes(const Node& node);
std::size_t count_elements(const Node& node);

// First element in pre-order with the given tag, or nullptr.
const Node* find_element(const Node& node, std::string_view tag);
Node* find_element(Node& node, std::string_view tag);

}  // namespace vlprep::web

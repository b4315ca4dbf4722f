// SPDX-License-Identifier: Apache-2.0

#include "vlprep/web/distill.hpp"

#include <algorithm>
#include <cctype>

namespace vlprep::web {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

std::string lower_trimmed(std::string_view s) {
  std::size_t b = 0;
  while (b < s.size() && (is_space(s[b]) || static_cast<unsigned char>(s[b]) < 0x20)) ++b;
  std::string out;
  for (std::size_t i = b; i < s.size(); ++i) {
    // Browsers ignore tabs and newlines inside URL schemes.
    if (s[i] == '\t' || s[i] == '\n' || s[i] == '\r') continue;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(s[i])));
  }
  return out;
}

bool is_javascript_url(std::string_view value) {
  return lower_trimmed(value).starts_with("javascript:");
}

bool is_absolute_url(std::string_view value) {
  const std::string v = lower_trimmed(value);
  return v.starts_with("http://") || v.starts_with("https://") || v.starts_with("//");
}

bool is_url_attribute(std::string_view name) { return name == "src" || name == "href"; }

bool removed_element(const Node& n) {
  return n.is_element("script") || n.is_element("link") || n.is_element("iframe") ||
         n.is_element("embed") || n.is_element("object");
}

void strip_node(Node& node, const StripOptions& options, StripStats& stats) {
  if (node.is_element()) {
    auto& attrs = node.attributes;
    const auto before = attrs.size();
    attrs.erase(std::remove_if(attrs.begin(), attrs.end(),
                               [&](const Attribute& a) {
                                 if (a.name.size() > 2 && a.name.starts_with("on")) return true;
                                 if (!is_url_attribute(a.name)) return false;
                                 if (is_javascript_url(a.value)) return true;
                                 if (!is_absolute_url(a.value)) return false;
                                 return !(node.tag == "a" && a.name == "href") ||
                                        options.strip_anchor_links;
                               }),
                attrs.end());
    stats.attributes_removed += before - attrs.size();
  }

  auto& kids = node.children;
  std::vector<Node> kept;
  kept.reserve(kids.size());
  for (auto& child : kids) {
    if (child.kind == NodeKind::kComment || removed_element(child)) {
      stats.nodes_removed += count_nodes(child);
      continue;
    }
    strip_node(child, options, stats);
    if (child.kind == NodeKind::kText) {
      if (child.text.empty()) continue;
      if (!kept.empty() && kept.back().kind == NodeKind::kText) {
        kept.back().text += child.text;
        continue;
      }
    }
    kept.push_back(std::move(child));
  }
  kids = std::move(kept);
}

void remove_styles(Node& node) {
  auto& kids = node.children;
  kids.erase(std::remove_if(kids.begin(), kids.end(),
                            [](const Node& n) { return n.is_element("style"); }),
             kids.end());
  for (auto& child : kids) remove_styles(child);
}

// <head>, created when absent: first child of <html> if there is one,
// otherwise right after any leading doctype.
Node& ensure_head(DomDocument& doc) {
  if (Node* head = find_element(doc.root, "head")) return *head;
  Node* html = nullptr;
  for (auto& child : doc.root.children) {
    if (child.is_element("html")) html = &child;
  }
  if (html != nullptr) {
    html->children.insert(html->children.begin(), Node::element("head"));
    return html->children.front();
  }
  auto& kids = doc.root.children;
  auto pos = kids.begin();
  while (pos != kids.end() && pos->kind == NodeKind::kDoctype) ++pos;
  return *kids.insert(pos, Node::element("head"));
}

void count_visible(const Node& node, std::size_t& chars) {
  if (node.is_element("head") || node.is_element("style") || node.is_element("script") ||
      node.is_element("template") || node.is_element("noscript")) {
    return;
  }
  if (node.kind == NodeKind::kText) {
    bool pending = false;
    bool any = false;
    for (const char c : node.text) {
      if (is_space(c)) {
        pending = any;
      } else {
        chars += pending ? 2 : 1;
        pending = false;
        any = true;
      }
    }
    return;
  }
  for (const auto& child : node.children) count_visible(child, chars);
}

}  // namespace

std::vector<Stylesheet> collect_style_sheets(const DomDocument& doc) {
  std::vector<Stylesheet> sheets;
  visit(doc.root, [&sheets](const Node& n) {
    if (n.is_element("style")) sheets.push_back(parse_css(n.text_content()));
  });
  return sheets;
}

DomDocument merge(DomDocument doc, std::span<const Stylesheet> external) {
  std::string css;
  for (const auto& sheet : collect_style_sheets(doc)) css += serialize_css(sheet);
  for (const auto& sheet : external) css += serialize_css(sheet);
  remove_styles(doc.root);
  Node style = Node::element("style");
  if (!css.empty()) style.children.push_back(Node::text_node(std::move(css)));
  ensure_head(doc).children.push_back(std::move(style));
  return doc;
}

DomDocument strip(DomDocument doc, const StripOptions& options, StripStats* stats) {
  StripStats local;
  strip_node(doc.root, options, local);
  if (stats != nullptr) *stats = local;
  return doc;
}

std::size_t visible_text_chars(const DomDocument& doc) {
  std::size_t chars = 0;
  count_visible(doc.root, chars);
  return chars;
}

QualityVerdict quality_gate(const DomDocument& doc, const QualityThresholds& thresholds) {
  QualityVerdict v;
  v.elements = count_elements(doc.root);
  v.text_chars = visible_text_chars(doc);
  for (const auto& sheet : collect_style_sheets(doc)) v.style_rules += rule_count(sheet);
  if (v.elements < thresholds.min_elements) v.reasons.push_back("elements");
  if (v.text_chars < thresholds.min_chars) v.reasons.push_back("text");
  if (v.style_rules == 0) v.reasons.push_back("styles");
  v.pass = v.reasons.empty();
  return v;
}

DistillOutput distill(std::string_view html_text, std::span<const std::string> css_texts,
                      const DistillOptions& options) {
  DistillOutput out;
  DomDocument doc = parse_html(html_text);
  out.report.diagnostics = doc.diagnostics;

  std::vector<Stylesheet> external;
  external.reserve(css_texts.size());
  for (const auto& text : css_texts) external.push_back(parse_css(text));

  for (const auto& sheet : collect_style_sheets(doc)) {
    for (const auto& d : sheet.diagnostics) out.report.diagnostics.push_back("css: " + d);
  }
  for (const auto& sheet : external) {
    for (const auto& d : sheet.diagnostics) out.report.diagnostics.push_back("css: " + d);
  }

  DomDocument merged = merge(std::move(doc), external);
  const Stylesheet combined = parse_css(find_element(merged.root, "style")->text_content());
  StripStats strip_stats;
  DomDocument stripped = strip(std::move(merged), options.strip, &strip_stats);
  out.report.nodes_removed = strip_stats.nodes_removed;
  out.report.attributes_removed = strip_stats.attributes_removed;

  Node* style = find_element(stripped.root, "style");
  if (style == nullptr) {
    // The head sat inside a removed element; start over with a fresh one.
    Node& head = ensure_head(stripped);
    head.children.push_back(Node::element("style"));
    style = &head.children.back();
  }

  PruneStats prune_stats;
  out.sheet = prune_unused_rules(combined, stripped, &prune_stats);
  out.report.rules_in = prune_stats.rules_in;
  out.report.rules_kept = prune_stats.rules_kept;
  out.report.selectors_dropped = prune_stats.selectors_dropped;

  style->children.clear();
  std::string css = serialize_css(out.sheet);
  if (!css.empty()) style->children.push_back(Node::text_node(std::move(css)));

  out.report.quality = quality_gate(stripped, options.quality);
  out.html = serialize_html(stripped);
  out.doc = std::move(stripped);
  return out;
}

}  // namespace vlprep::web

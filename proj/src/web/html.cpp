// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <array>
#include <cctype>

#include "vlprep/web/dom.hpp"

namespace vlprep::web {

namespace {

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

bool starts_with_ci(std::string_view s, std::size_t pos, std::string_view prefix) {
  if (s.size() - pos < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[pos + i])) !=
        std::tolower(static_cast<unsigned char>(prefix[i]))) {
      return false;
    }
  }
  return true;
}

template <std::size_t N>
bool one_of(std::string_view tag, const std::array<std::string_view, N>& set) {
  return std::find(set.begin(), set.end(), tag) != set.end();
}

constexpr std::array<std::string_view, 14> kVoid = {
    "area", "base", "br", "col", "embed", "hr", "img",
    "input", "link", "meta", "param", "source", "track", "wbr"};

constexpr std::array<std::string_view, 8> kRawText = {
    "script", "style", "textarea", "title", "xmp", "iframe", "noembed", "noframes"};

// Start tags that close an open <p>.
constexpr std::array<std::string_view, 30> kClosesP = {
    "address", "article", "aside", "blockquote", "details", "dialog", "div",
    "dl", "fieldset", "figcaption", "figure", "footer", "form", "h1", "h2",
    "h3", "h4", "h5", "h6", "header", "hgroup", "hr", "main", "menu", "nav",
    "ol", "p", "pre", "section", "table"};

// Elements that stop the search for an implicitly closed element.
constexpr std::array<std::string_view, 10> kScopeBoundary = {
    "html", "table", "td", "th", "caption", "marquee", "object", "applet",
    "button", "template"};

// Open elements that are closed silently at end of input.
constexpr std::array<std::string_view, 16> kOptionalEnd = {
    "html", "head", "body", "p", "li", "dt", "dd", "tr", "td", "th",
    "option", "optgroup", "thead", "tbody", "tfoot", "colgroup"};

class TreeBuilder {
 public:
  explicit TreeBuilder(DomDocument& doc) : doc_(doc) { stack_.push_back(&doc.root); }

  Node& current() { return *stack_.back(); }

  void add_text(std::string_view text) {
    if (text.empty()) return;
    auto& kids = current().children;
    if (!kids.empty() && kids.back().kind == NodeKind::kText) {
      kids.back().text.append(text);
    } else {
      kids.push_back(Node::text_node(std::string(text)));
    }
  }

  void add_leaf(NodeKind kind, std::string text) {
    Node n{kind};
    n.text = std::move(text);
    current().children.push_back(std::move(n));
  }

  // Returns the element that further content goes into, or nullptr when the
  // start tag was ignored.
  Node* open(std::string tag, std::vector<Attribute> attrs) {
    if (tag == "html" || tag == "body" || tag == "head") {
      if (find_open(tag) != npos || (tag == "html" && has_root_element("html"))) {
        doc_.diagnostics.push_back("duplicate <" + tag + "> ignored");
        return nullptr;
      }
    }
    implicit_close(tag);
    current().children.push_back(Node::element(std::move(tag), std::move(attrs)));
    Node* node = &current().children.back();
    if (!is_void_element(node->tag)) stack_.push_back(node);
    return node;
  }

  void close(std::string_view tag) {
    const std::size_t at = find_open(tag);
    if (at == npos) {
      doc_.diagnostics.push_back("stray </" + std::string(tag) + "> ignored");
      return;
    }
    for (std::size_t i = stack_.size() - 1; i > at; --i) {
      if (!one_of(stack_[i]->tag, kOptionalEnd)) {
        doc_.diagnostics.push_back("<" + stack_[i]->tag + "> closed by </" +
                                   std::string(tag) + ">");
      }
    }
    stack_.resize(at);
  }

  void finish() {
    for (std::size_t i = stack_.size() - 1; i > 0; --i) {
      if (!one_of(stack_[i]->tag, kOptionalEnd)) {
        doc_.diagnostics.push_back("unclosed <" + stack_[i]->tag + "> closed at end of input");
      }
    }
    stack_.resize(1);
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  bool has_root_element(std::string_view tag) const {
    for (const auto& n : doc_.root.children) {
      if (n.is_element(tag)) return true;
    }
    return false;
  }

  std::size_t find_open(std::string_view tag) const {
    for (std::size_t i = stack_.size() - 1; i > 0; --i) {
      if (stack_[i]->tag == tag) return i;
    }
    return npos;
  }

  // Finds an open element named one of `targets` above the nearest boundary.
  template <std::size_t N, std::size_t M>
  std::size_t find_in_scope(const std::array<std::string_view, N>& targets,
                            const std::array<std::string_view, M>& boundary) const {
    for (std::size_t i = stack_.size() - 1; i > 0; --i) {
      if (one_of(stack_[i]->tag, targets)) return i;
      if (one_of(stack_[i]->tag, boundary)) return npos;
    }
    return npos;
  }

  template <std::size_t N, std::size_t M>
  void close_in_scope(const std::array<std::string_view, N>& targets,
                      const std::array<std::string_view, M>& boundary) {
    const std::size_t at = find_in_scope(targets, boundary);
    if (at != npos) stack_.resize(at);
  }

  void implicit_close(std::string_view tag) {
    static constexpr std::array<std::string_view, 1> kP = {"p"};
    static constexpr std::array<std::string_view, 1> kLi = {"li"};
    static constexpr std::array<std::string_view, 2> kListBoundary = {"ul", "ol"};
    static constexpr std::array<std::string_view, 2> kDtDd = {"dt", "dd"};
    static constexpr std::array<std::string_view, 1> kDl = {"dl"};
    static constexpr std::array<std::string_view, 2> kCell = {"td", "th"};
    static constexpr std::array<std::string_view, 3> kRowBoundary = {"tr", "table", "template"};
    static constexpr std::array<std::string_view, 1> kTr = {"tr"};
    static constexpr std::array<std::string_view, 5> kSectionBoundary = {
        "table", "thead", "tbody", "tfoot", "template"};
    static constexpr std::array<std::string_view, 3> kSection = {"thead", "tbody", "tfoot"};
    static constexpr std::array<std::string_view, 2> kTableBoundary = {"table", "template"};
    static constexpr std::array<std::string_view, 1> kOption = {"option"};
    static constexpr std::array<std::string_view, 2> kSelectBoundary = {"select", "datalist"};

    if (one_of(tag, kClosesP) || tag == "li" || tag == "dt" || tag == "dd") {
      close_in_scope(kP, kScopeBoundary);
    }
    if (tag == "li") {
      close_in_scope(kLi, kListBoundary);
    } else if (tag == "dt" || tag == "dd") {
      close_in_scope(kDtDd, kDl);
    } else if (tag == "td" || tag == "th") {
      close_in_scope(kCell, kRowBoundary);
    } else if (tag == "tr") {
      close_in_scope(kCell, kRowBoundary);
      close_in_scope(kTr, kSectionBoundary);
    } else if (tag == "thead" || tag == "tbody" || tag == "tfoot") {
      close_in_scope(kCell, kRowBoundary);
      close_in_scope(kTr, kSectionBoundary);
      close_in_scope(kSection, kTableBoundary);
    } else if (tag == "option" || tag == "optgroup") {
      close_in_scope(kOption, kSelectBoundary);
    }
  }

  DomDocument& doc_;
  std::vector<Node*> stack_;
};

class HtmlParser {
 public:
  HtmlParser(std::string_view src, DomDocument& doc) : src_(src), tree_(doc), doc_(doc) {}

  void run() {
    while (pos_ < src_.size()) {
      if (src_[pos_] == '<' && markup()) continue;
      const std::size_t next = src_.find('<', pos_ + 1);
      const std::size_t end = next == std::string_view::npos ? src_.size() : next;
      tree_.add_text(src_.substr(pos_, end - pos_));
      pos_ = end;
    }
    tree_.finish();
  }

 private:
  // Consumes markup at '<'. Returns false when the '<' is literal text.
  bool markup() {
    const std::string_view rest = src_.substr(pos_);
    if (rest.starts_with("<!--")) {
      std::size_t body = pos_ + 4;
      if (src_.substr(body).starts_with(">")) {
        tree_.add_leaf(NodeKind::kComment, "");
        pos_ = body + 1;
        return true;
      }
      const std::size_t end = src_.find("-->", body);
      if (end == std::string_view::npos) {
        doc_.diagnostics.push_back("unterminated comment");
        tree_.add_leaf(NodeKind::kComment, std::string(src_.substr(body)));
        pos_ = src_.size();
      } else {
        tree_.add_leaf(NodeKind::kComment, std::string(src_.substr(body, end - body)));
        pos_ = end + 3;
      }
      return true;
    }
    if (rest.starts_with("<!") || rest.starts_with("<?")) {
      const std::size_t end = src_.find('>', pos_ + 2);
      const std::size_t stop = end == std::string_view::npos ? src_.size() : end;
      std::string body(src_.substr(pos_ + 2, stop - pos_ - 2));
      if (rest.starts_with("<!") && starts_with_ci(body, 0, "doctype")) {
        tree_.add_leaf(NodeKind::kDoctype, std::move(body));
      } else {
        if (rest.starts_with("<?")) body.insert(body.begin(), '?');
        tree_.add_leaf(NodeKind::kComment, std::move(body));
      }
      pos_ = end == std::string_view::npos ? src_.size() : end + 1;
      return true;
    }
    if (rest.starts_with("</")) {
      if (rest.size() > 2 && is_alpha(rest[2])) {
        std::size_t i = pos_ + 2;
        const std::size_t name_start = i;
        while (i < src_.size() && !is_space(src_[i]) && src_[i] != '/' && src_[i] != '>') ++i;
        const std::string name = to_lower(src_.substr(name_start, i - name_start));
        const std::size_t end = src_.find('>', i);
        pos_ = end == std::string_view::npos ? src_.size() : end + 1;
        tree_.close(name);
        return true;
      }
      if (rest.size() > 2 && rest[2] == '>') {
        pos_ += 3;
        return true;
      }
      if (rest.size() > 2) {
        const std::size_t end = src_.find('>', pos_ + 2);
        const std::size_t stop = end == std::string_view::npos ? src_.size() : end;
        tree_.add_leaf(NodeKind::kComment, std::string(src_.substr(pos_ + 2, stop - pos_ - 2)));
        pos_ = end == std::string_view::npos ? src_.size() : end + 1;
        return true;
      }
      return false;
    }
    if (rest.size() > 1 && is_alpha(rest[1])) {
      start_tag();
      return true;
    }
    return false;
  }

  void start_tag() {
    std::size_t i = pos_ + 1;
    const std::size_t name_start = i;
    while (i < src_.size() && !is_space(src_[i]) && src_[i] != '/' && src_[i] != '>') ++i;
    std::string tag = to_lower(src_.substr(name_start, i - name_start));
    std::vector<Attribute> attrs;

    while (i < src_.size()) {
      while (i < src_.size() && (is_space(src_[i]) || src_[i] == '/')) ++i;
      if (i >= src_.size() || src_[i] == '>') break;
      const std::size_t an = i;
      ++i;  // a leading '=' belongs to the name
      while (i < src_.size() && !is_space(src_[i]) && src_[i] != '/' &&
             src_[i] != '>' && src_[i] != '=') {
        ++i;
      }
      std::string name = to_lower(src_.substr(an, i - an));
      std::string value;
      std::size_t j = i;
      while (j < src_.size() && is_space(src_[j])) ++j;
      if (j < src_.size() && src_[j] == '=') {
        ++j;
        while (j < src_.size() && is_space(src_[j])) ++j;
        if (j < src_.size() && (src_[j] == '"' || src_[j] == '\'')) {
          const char quote = src_[j];
          const std::size_t close = src_.find(quote, j + 1);
          const std::size_t stop = close == std::string_view::npos ? src_.size() : close;
          value.assign(src_.substr(j + 1, stop - j - 1));
          i = close == std::string_view::npos ? src_.size() : close + 1;
        } else {
          const std::size_t vs = j;
          while (j < src_.size() && !is_space(src_[j]) && src_[j] != '>') ++j;
          value.assign(src_.substr(vs, j - vs));
          i = j;
        }
      }
      const bool duplicate = std::any_of(attrs.begin(), attrs.end(),
                                         [&](const Attribute& a) { return a.name == name; });
      if (duplicate) {
        doc_.diagnostics.push_back("duplicate attribute '" + name + "' on <" + tag + "> dropped");
      } else {
        attrs.push_back({std::move(name), std::move(value)});
      }
    }
    if (i >= src_.size()) {
      doc_.diagnostics.push_back("unterminated <" + tag + "> tag");
      pos_ = src_.size();
    } else {
      pos_ = i + 1;
    }

    Node* node = tree_.open(tag, std::move(attrs));
    if (node != nullptr && is_raw_text_element(tag)) raw_text(tag);
  }

  void raw_text(const std::string& tag) {
    std::size_t search = pos_;
    std::size_t end = std::string_view::npos;
    while ((search = src_.find("</", search)) != std::string_view::npos) {
      const std::size_t after = search + 2 + tag.size();
      if (starts_with_ci(src_, search + 2, tag) &&
          (after >= src_.size() || is_space(src_[after]) || src_[after] == '/' ||
           src_[after] == '>')) {
        end = search;
        break;
      }
      search += 2;
    }
    if (end == std::string_view::npos) {
      doc_.diagnostics.push_back("unterminated <" + tag + "> content");
      tree_.add_text(src_.substr(pos_));
      pos_ = src_.size();
      tree_.close(tag);
      return;
    }
    tree_.add_text(src_.substr(pos_, end - pos_));
    const std::size_t gt = src_.find('>', end);
    pos_ = gt == std::string_view::npos ? src_.size() : gt + 1;
    tree_.close(tag);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  TreeBuilder tree_;
  DomDocument& doc_;
};

bool safe_unquoted(std::string_view v) {
  if (v.empty()) return false;
  return std::none_of(v.begin(), v.end(), [](char c) {
    return is_space(c) || c == '"' || c == '\'' || c == '=' || c == '<' ||
           c == '>' || c == '`';
  });
}

void serialize_attribute(const Attribute& a, std::string& out) {
  out += ' ';
  out += a.name;
  if (a.value.empty()) return;
  out += '=';
  if (safe_unquoted(a.value)) {
    out += a.value;
  } else if (a.value.find('"') == std::string::npos) {
    out += '"';
    out += a.value;
    out += '"';
  } else if (a.value.find('\'') == std::string::npos) {
    out += '\'';
    out += a.value;
    out += '\'';
  } else {
    out += '"';
    for (const char c : a.value) {
      if (c == '"') {
        out += "&quot;";
      } else {
        out += c;
      }
    }
    out += '"';
  }
}

void serialize_into(const Node& node, std::string& out) {
  switch (node.kind) {
    case NodeKind::kDocument:
      for (const auto& c : node.children) serialize_into(c, out);
      break;
    case NodeKind::kText:
      out += node.text;
      break;
    case NodeKind::kComment:
      out += "<!--";
      out += node.text;
      out += "-->";
      break;
    case NodeKind::kDoctype:
      out += "<!";
      out += node.text;
      out += '>';
      break;
    case NodeKind::kElement:
      out += '<';
      out += node.tag;
      for (const auto& a : node.attributes) serialize_attribute(a, out);
      out += '>';
      if (is_void_element(node.tag)) break;
      for (const auto& c : node.children) serialize_into(c, out);
      out += "</";
      out += node.tag;
      out += '>';
      break;
  }
}

}  // namespace

Node Node::element(std::string tag, std::vector<Attribute> attrs) {
  Node n{NodeKind::kElement};
  n.tag = std::move(tag);
  n.attributes = std::move(attrs);
  return n;
}

Node Node::text_node(std::string text) {
  Node n{NodeKind::kText};
  n.text = std::move(text);
  return n;
}

const std::string* Node::attribute(std::string_view name) const {
  for (const auto& a : attributes) {
    if (a.name == name) return &a.value;
  }
  return nullptr;
}

void Node::set_attribute(std::string_view name, std::string value) {
  for (auto& a : attributes) {
    if (a.name == name) {
      a.value = std::move(value);
      return;
    }
  }
  attributes.push_back({std::string(name), std::move(value)});
}

std::string Node::text_content() const {
  std::string out;
  visit(*this, [&out](const Node& n) {
    if (n.kind == NodeKind::kText) out += n.text;
  });
  return out;
}

bool is_void_element(std::string_view tag) { return one_of(tag, kVoid); }

bool is_raw_text_element(std::string_view tag) { return one_of(tag, kRawText); }

DomDocument parse_html(std::string_view text) {
  DomDocument doc;
  HtmlParser(text, doc).run();
  return doc;
}

std::string serialize_html(const DomDocument& doc) { return serialize_html(doc.root); }

std::string serialize_html(const Node& node) {
  std::string out;
  serialize_into(node, out);
  return out;
}

void visit(const Node& node, const std::function<void(const Node&)>& fn) {
  fn(node);
  for (const auto& c : node.children) visit(c, fn);
}

std::size_t count_nodes(const Node& node) {
  std::size_t n = 1;
  for (const auto& c : node.children) n += count_nodes(c);
  return n;
}

std::size_t count_elements(const Node& node) {
  std::size_t n = node.is_element() ? 1 : 0;
  for (const auto& c : node.children) n += count_elements(c);
  return n;
}

const Node* find_element(const Node& node, std::string_view tag) {
  if (node.is_element(tag)) return &node;
  for (const auto& c : node.children) {
    if (const Node* hit = find_element(c, tag)) return hit;
  }
  return nullptr;
}

Node* find_element(Node& node, std::string_view tag) {
  return const_cast<Node*>(find_element(static_cast<const Node&>(node), tag));
}

}  // namespace vlprep::web

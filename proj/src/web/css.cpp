// SPDX-License-Identifier: Apache-2.0

#include "vlprep/web/css.hpp"

#include <cctype>
#include <optional>

namespace vlprep::web {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

bool is_ident_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '-' || c == '_' || u >= 0x80;
}

bool is_ident_start(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalpha(u) || c == '-' || c == '_' || u >= 0x80;
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

std::string collapse_space(std::string_view s) {
  std::string out;
  bool pending = false;
  for (const char c : s) {
    if (is_space(c)) {
      pending = !out.empty();
    } else {
      if (pending) out += ' ';
      pending = false;
      out += c;
    }
  }
  return out;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Index just past the string literal opened at `pos`.
std::size_t skip_string(std::string_view s, std::size_t pos) {
  const char quote = s[pos];
  std::size_t i = pos + 1;
  while (i < s.size() && s[i] != quote) {
    if (s[i] == '\\' && i + 1 < s.size()) ++i;
    if (s[i] == '\n') break;  // unterminated string ends at the line
    ++i;
  }
  return i < s.size() ? i + 1 : s.size();
}

// Index just past the '}' matching the '{' at `open`, or npos when the block
// runs to end of input.
std::size_t match_block(std::string_view s, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < s.size();) {
    const char c = s[i];
    if (c == '"' || c == '\'') {
      i = skip_string(s, i);
      continue;
    }
    if (c == '\\') {
      i += 2;
      continue;
    }
    if (c == '{') ++depth;
    if (c == '}' && --depth == 0) return i + 1;
    ++i;
  }
  return std::string_view::npos;
}

// Index of the first of `stops` at bracket depth zero, or npos.
std::size_t find_top_level(std::string_view s, std::size_t pos, std::string_view stops) {
  int depth = 0;
  for (std::size_t i = pos; i < s.size();) {
    const char c = s[i];
    if (c == '"' || c == '\'') {
      i = skip_string(s, i);
      continue;
    }
    if (c == '\\') {
      i += 2;
      continue;
    }
    if (depth == 0 && stops.find(c) != std::string_view::npos) return i;
    if (c == '(' || c == '[') ++depth;
    if ((c == ')' || c == ']') && depth > 0) --depth;
    ++i;
  }
  return std::string_view::npos;
}

std::vector<std::string> split_selector_list(std::string_view prelude) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = find_top_level(prelude, start, ",");
    if (comma == std::string_view::npos) {
      out.push_back(trim(prelude.substr(start)));
      break;
    }
    out.push_back(trim(prelude.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

class SelectorParser {
 public:
  explicit SelectorParser(std::string_view s) : s_(s) {}

  ComplexSelector parse() {
    ComplexSelector sel;
    sel.supported = run(sel);
    if (sel.supported) {
      sel.text = serialize_selector(sel);
    } else {
      sel.compounds.clear();
      sel.combinators.clear();
      sel.text = collapse_space(s_);
    }
    return sel;
  }

 private:
  bool run(ComplexSelector& sel) {
    skip_space();
    if (i_ >= s_.size()) return false;
    while (true) {
      CompoundSelector compound;
      if (!parse_compound(compound)) return false;
      sel.compounds.push_back(std::move(compound));
      const bool had_space = skip_space();
      if (i_ >= s_.size()) return true;
      const char c = s_[i_];
      if (c == '>') {
        ++i_;
        skip_space();
        if (i_ >= s_.size()) return false;
        sel.combinators.push_back(Combinator::kChild);
      } else if (c == '+' || c == '~' || c == '|' || c == ',') {
        return false;
      } else if (had_space) {
        sel.combinators.push_back(Combinator::kDescendant);
      } else {
        return false;
      }
    }
  }

  bool skip_space() {
    const std::size_t start = i_;
    while (i_ < s_.size() && is_space(s_[i_])) ++i_;
    return i_ > start;
  }

  std::string ident() {
    const std::size_t start = i_;
    while (i_ < s_.size() && is_ident_char(s_[i_])) ++i_;
    return std::string(s_.substr(start, i_ - start));
  }

  bool parse_compound(CompoundSelector& compound) {
    bool first = true;
    while (i_ < s_.size() && !is_space(s_[i_]) && s_[i_] != '>') {
      const char c = s_[i_];
      if (c == '*') {
        if (!first) return false;
        ++i_;
        compound.parts.push_back({SimpleKind::kUniversal, "*"});
      } else if (is_ident_start(c)) {
        if (!first) return false;
        std::string name = ident();
        compound.parts.push_back({SimpleKind::kType, to_lower(name)});
      } else if (c == '.' || c == '#') {
        ++i_;
        if (i_ >= s_.size() || !is_ident_char(s_[i_])) return false;
        std::string name = ident();
        // Identifiers may not start with a digit; an id may.
        if (c == '.' && std::isdigit(static_cast<unsigned char>(name[0]))) return false;
        compound.parts.push_back(
            {c == '.' ? SimpleKind::kClass : SimpleKind::kId, std::move(name)});
      } else if (c == '[') {
        if (!parse_attribute(compound)) return false;
      } else if (c == ':') {
        if (!parse_pseudo(compound)) return false;
      } else {
        return false;  // escapes, namespaces, nesting '&', sibling combinators...
      }
      first = false;
    }
    return !compound.parts.empty();
  }

  bool parse_attribute(CompoundSelector& compound) {
    ++i_;  // '['
    skip_space();
    if (i_ >= s_.size() || !is_ident_start(s_[i_])) return false;
    SimpleSelector attr{SimpleKind::kAttribute, to_lower(ident())};
    skip_space();
    if (i_ >= s_.size()) return false;
    if (s_[i_] == '=') {
      ++i_;
      skip_space();
      if (i_ >= s_.size()) return false;
      if (s_[i_] == '"' || s_[i_] == '\'') {
        const char quote = s_[i_];
        const std::size_t close = s_.find(quote, i_ + 1);
        if (close == std::string_view::npos) return false;
        attr.value.assign(s_.substr(i_ + 1, close - i_ - 1));
        if (attr.value.find('\\') != std::string::npos) return false;
        i_ = close + 1;
      } else {
        if (!is_ident_char(s_[i_])) return false;
        attr.value = ident();
      }
      attr.has_value = true;
      skip_space();
    }
    if (i_ >= s_.size() || s_[i_] != ']') return false;  // other operators, flags
    ++i_;
    compound.parts.push_back(std::move(attr));
    return true;
  }

  bool parse_pseudo(CompoundSelector& compound) {
    const std::size_t start = i_;
    ++i_;
    if (i_ < s_.size() && s_[i_] == ':') ++i_;
    if (i_ >= s_.size() || !is_ident_start(s_[i_])) return false;
    ident();
    if (i_ < s_.size() && s_[i_] == '(') {
      int depth = 0;
      while (i_ < s_.size()) {
        const char c = s_[i_];
        if (c == '"' || c == '\'') {
          i_ = skip_string(s_, i_);
          continue;
        }
        if (c == '(') ++depth;
        if (c == ')' && --depth == 0) break;
        ++i_;
      }
      if (i_ >= s_.size()) return false;
      ++i_;
    }
    compound.parts.push_back(
        {SimpleKind::kPseudo, collapse_space(s_.substr(start, i_ - start))});
    return true;
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

void serialize_rule(const CssRule& rule, std::string& out) {
  for (std::size_t i = 0; i < rule.selectors.size(); ++i) {
    if (i > 0) out += ',';
    out += rule.selectors[i].text;
  }
  out += '{';
  out += rule.declarations;
  out += "}\n";
}

class CssParser {
 public:
  CssParser(std::string_view s, Stylesheet& sheet) : s_(s), sheet_(sheet) {}

  void run() {
    while (true) {
      skip_trivia();
      if (i_ >= s_.size()) break;
      if (s_[i_] == '}') {
        diag("stray '}' skipped");
        ++i_;
        continue;
      }
      if (s_[i_] == '@') {
        if (auto item = at_rule(/*nested=*/false)) sheet_.items.push_back(std::move(*item));
        continue;
      }
      if (auto rule = qualified_rule()) sheet_.items.push_back(std::move(*rule));
    }
  }

 private:
  void diag(std::string message) { sheet_.diagnostics.push_back(std::move(message)); }

  void skip_trivia() {
    while (i_ < s_.size()) {
      if (is_space(s_[i_])) {
        ++i_;
      } else if (s_.substr(i_).starts_with("<!--")) {
        i_ += 4;
      } else if (s_.substr(i_).starts_with("-->")) {
        i_ += 3;
      } else {
        break;
      }
    }
  }

  std::optional<CssRule> qualified_rule() {
    const std::size_t open = find_top_level(s_, i_, "{");
    if (open == std::string_view::npos) {
      diag("rule without a block dropped: " + collapse_space(s_.substr(i_)));
      i_ = s_.size();
      return std::nullopt;
    }
    const std::string_view prelude = s_.substr(i_, open - i_);
    const std::size_t end = match_block(s_, open);
    std::string_view body;
    if (end == std::string_view::npos) {
      diag("unterminated block closed at end of input");
      body = s_.substr(open + 1);
      i_ = s_.size();
    } else {
      body = s_.substr(open + 1, end - open - 2);
      i_ = end;
    }
    return make_rule(prelude, body);
  }

  std::optional<CssRule> make_rule(std::string_view prelude, std::string_view body) {
    CssRule rule;
    for (const auto& text : split_selector_list(prelude)) {
      if (text.empty() || find_top_level(text, 0, ";}") != std::string_view::npos) {
        diag("malformed selector list skipped: " + collapse_space(prelude));
        return std::nullopt;
      }
      rule.selectors.push_back(parse_selector(text));
    }
    rule.declarations = trim(body);
    return rule;
  }

  std::optional<StyleItem> at_rule(bool nested) {
    const std::size_t start = i_;
    ++i_;
    std::size_t name_end = i_;
    while (name_end < s_.size() && is_ident_char(s_[name_end])) ++name_end;
    const std::string name = to_lower(s_.substr(i_, name_end - i_));
    const std::size_t stop = find_top_level(s_, name_end, "{;");
    if (stop == std::string_view::npos) {
      diag("incomplete @" + name + " dropped");
      i_ = s_.size();
      return std::nullopt;
    }
    if (s_[stop] == ';') {
      i_ = stop + 1;
      return VerbatimAtRule{trim(s_.substr(start, i_ - start))};
    }
    const std::size_t end = match_block(s_, stop);
    const std::size_t block_end = end == std::string_view::npos ? s_.size() : end;
    if (end == std::string_view::npos) diag("unterminated @" + name + " block");
    if (name != "media" || nested) {
      i_ = block_end;
      std::string text = trim(s_.substr(start, block_end - start));
      if (end == std::string_view::npos) text += '}';
      return VerbatimAtRule{std::move(text)};
    }
    MediaBlock media;
    media.prelude = collapse_space(s_.substr(name_end, stop - name_end));
    const std::size_t inner_end = end == std::string_view::npos ? s_.size() : end - 1;
    i_ = stop + 1;
    while (true) {
      skip_trivia();
      if (i_ >= inner_end) break;
      if (s_[i_] == '@') {
        const std::size_t saved = i_;
        const auto inner = at_rule(/*nested=*/true);
        if (i_ > inner_end) {
          // Unbalanced nested at-rule; discard the remainder of the block.
          i_ = saved;
          break;
        }
        if (inner) media.items.push_back(std::get<VerbatimAtRule>(*inner));
        continue;
      }
      const std::size_t open = find_top_level(s_.substr(0, inner_end), i_, "{");
      if (open == std::string_view::npos) {
        diag("rule without a block dropped inside @media");
        break;
      }
      const std::size_t rule_end = match_block(s_.substr(0, inner_end), open);
      std::string_view body;
      const std::string_view prelude = s_.substr(i_, open - i_);
      if (rule_end == std::string_view::npos) {
        diag("unterminated block inside @media");
        body = s_.substr(open + 1, inner_end - open - 1);
        i_ = inner_end;
      } else {
        body = s_.substr(open + 1, rule_end - open - 2);
        i_ = rule_end;
      }
      if (auto rule = make_rule(prelude, body)) media.items.push_back(std::move(*rule));
    }
    i_ = block_end;
    return media;
  }

  std::string_view s_;
  std::size_t i_ = 0;
  Stylesheet& sheet_;
};

}  // namespace

std::string strip_css_comments(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    const char c = text[i];
    if (c == '"' || c == '\'') {
      const std::size_t end = skip_string(text, i);
      out.append(text.substr(i, end - i));
      i = end;
    } else if (c == '/' && i + 1 < text.size() && text[i + 1] == '*') {
      const std::size_t end = text.find("*/", i + 2);
      i = end == std::string_view::npos ? text.size() : end + 2;
    } else {
      out += c;
      ++i;
    }
  }
  return out;
}

ComplexSelector parse_selector(std::string_view text) {
  return SelectorParser(text).parse();
}

std::string serialize_selector(const ComplexSelector& sel) {
  if (!sel.supported) return sel.text;
  std::string out;
  for (std::size_t i = 0; i < sel.compounds.size(); ++i) {
    if (i > 0) {
      out += sel.combinators[i - 1] == Combinator::kChild ? " > " : " ";
    }
    for (const auto& part : sel.compounds[i].parts) {
      switch (part.kind) {
        case SimpleKind::kType:
        case SimpleKind::kUniversal:
        case SimpleKind::kPseudo:
          out += part.name;
          break;
        case SimpleKind::kClass:
          out += '.';
          out += part.name;
          break;
        case SimpleKind::kId:
          out += '#';
          out += part.name;
          break;
        case SimpleKind::kAttribute:
          out += '[';
          out += part.name;
          if (part.has_value) {
            const char quote = part.value.find('"') == std::string::npos ? '"' : '\'';
            out += '=';
            out += quote;
            out += part.value;
            out += quote;
          }
          out += ']';
          break;
      }
    }
  }
  return out;
}

Stylesheet parse_css(std::string_view text) {
  Stylesheet sheet;
  const std::string clean = strip_css_comments(text);
  CssParser(clean, sheet).run();
  return sheet;
}

std::string serialize_css(const Stylesheet& sheet) {
  std::string out;
  for (const auto& item : sheet.items) {
    if (const auto* rule = std::get_if<CssRule>(&item)) {
      serialize_rule(*rule, out);
    } else if (const auto* media = std::get_if<MediaBlock>(&item)) {
      out += "@media";
      if (!media->prelude.empty()) {
        out += ' ';
        out += media->prelude;
      }
      out += "{\n";
      for (const auto& inner : media->items) {
        if (const auto* r = std::get_if<CssRule>(&inner)) {
          serialize_rule(*r, out);
        } else {
          out += std::get<VerbatimAtRule>(inner).text;
          out += '\n';
        }
      }
      out += "}\n";
    } else {
      out += std::get<VerbatimAtRule>(item).text;
      out += '\n';
    }
  }
  return out;
}

std::size_t rule_count(const Stylesheet& sheet) {
  std::size_t n = 0;
  for (const auto& item : sheet.items) {
    if (std::holds_alternative<CssRule>(item)) {
      ++n;
    } else if (const auto* media = std::get_if<MediaBlock>(&item)) {
      for (const auto& inner : media->items) {
        if (std::holds_alternative<CssRule>(inner)) ++n;
      }
    }
  }
  return n;
}

}  // namespace vlprep::web

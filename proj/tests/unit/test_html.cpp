// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>

#include "vlprep/image_io.hpp"
#include "vlprep/web/dom.hpp"

using namespace vlprep::web;

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '\n') {
      out += "\\n";
    } else {
      out += c;
    }
  }
  return out + "\"";
}

void dump(const Node& n, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  switch (n.kind) {
    case NodeKind::kDocument:
      for (const auto& c : n.children) dump(c, depth, out);
      return;
    case NodeKind::kText: out += pad + "#text " + quoted(n.text) + "\n"; return;
    case NodeKind::kComment: out += pad + "#comment " + quoted(n.text) + "\n"; return;
    case NodeKind::kDoctype: out += pad + "#doctype " + n.text + "\n"; return;
    case NodeKind::kElement:
      out += pad + n.tag;
      for (const auto& a : n.attributes) out += " " + a.name + "=" + quoted(a.value);
      out += "\n";
      for (const auto& c : n.children) dump(c, depth + 1, out);
      return;
  }
}

std::string dump(const DomDocument& doc) {
  std::string out;
  dump(doc.root, 0, out);
  return out;
}

const std::filesystem::path kGolden = std::filesystem::path(VLPREP_FIXTURES) / "golden";

}  // namespace

TEST_CASE("parse_html auto-closes open elements") {
  const auto doc = parse_html("<div><p>hi");
  REQUIRE(doc.root.children.size() == 1);
  const Node& div = doc.root.children[0];
  CHECK(div.tag == "div");
  REQUIRE(div.children.size() == 1);
  CHECK(div.children[0].tag == "p");
  REQUIRE(div.children[0].children.size() == 1);
  CHECK(div.children[0].children[0].kind == NodeKind::kText);
  CHECK(div.children[0].children[0].text == "hi");
  CHECK(serialize_html(doc) == "<div><p>hi</p></div>");
}

TEST_CASE("void elements take no children") {
  const auto doc = parse_html("<img src=a><br>");
  REQUIRE(doc.root.children.size() == 2);
  CHECK(doc.root.children[0].tag == "img");
  CHECK(doc.root.children[0].children.empty());
  CHECK(*doc.root.children[0].attribute("src") == "a");
  CHECK(doc.root.children[1].tag == "br");
  CHECK(serialize_html(doc) == "<img src=a><br>");
  CHECK(serialize_html(parse_html("<br/><hr />text")) == "<br><hr>text");
}

TEST_CASE("nested fixture matches the golden tree") {
  const auto doc = parse_html(vlprep::read_file(kGolden / "nested.html"));
  CHECK(dump(doc) == vlprep::read_file(kGolden / "nested.tree"));
}

TEST_CASE("implicit closing rules") {
  CHECK(serialize_html(parse_html("<p>a<p>b")) == "<p>a</p><p>b</p>");
  CHECK(serialize_html(parse_html("<ul><li>a<li>b</ul>")) == "<ul><li>a</li><li>b</li></ul>");
  CHECK(serialize_html(parse_html("<dl><dt>a<dd>b<dt>c</dl>")) ==
        "<dl><dt>a</dt><dd>b</dd><dt>c</dt></dl>");
  CHECK(serialize_html(parse_html("<table><tr><td>1<td>2<tr><td>3</table>")) ==
        "<table><tr><td>1</td><td>2</td></tr><tr><td>3</td></tr></table>");
  CHECK(serialize_html(parse_html("<p>a<div>b</div>")) == "<p>a</p><div>b</div>");
  CHECK(serialize_html(parse_html("<select><option>a<option>b</select>")) ==
        "<select><option>a</option><option>b</option></select>");
}

TEST_CASE("stray and mismatched tags") {
  auto doc = parse_html("<div>a</span>b</div>");
  CHECK(serialize_html(doc) == "<div>ab</div>");
  CHECK_FALSE(doc.diagnostics.empty());
  CHECK(serialize_html(parse_html("<b><i>x</b>y")) == "<b><i>x</i></b>y");
  CHECK(serialize_html(parse_html("a < b")) == "a < b");
  CHECK(serialize_html(parse_html("<DIV CLASS=X>t</div>")) == "<div class=X>t</div>");
}

TEST_CASE("raw text elements keep their content verbatim") {
  const auto doc = parse_html("<script>if (a < b) { x = '</p>'; }</script><style>p>a{}</style>");
  const Node* script = find_element(doc.root, "script");
  REQUIRE(script != nullptr);
  REQUIRE(script->children.size() == 1);
  CHECK(script->children[0].text == "if (a < b) { x = '</p>'; }");
  const Node* style = find_element(doc.root, "style");
  REQUIRE(style != nullptr);
  CHECK(style->text_content() == "p>a{}");
}

TEST_CASE("attributes") {
  const auto doc = parse_html(R"(<input disabled value="a b" data-x='say "hi"' id=k id=dup>)");
  const Node& input = doc.root.children.at(0);
  REQUIRE(input.attributes.size() == 4);
  CHECK(input.attribute("disabled")->empty());
  CHECK(*input.attribute("value") == "a b");
  CHECK(*input.attribute("data-x") == "say \"hi\"");
  CHECK(*input.attribute("id") == "k");
  CHECK(doc.diagnostics.size() == 1);
  CHECK(serialize_html(doc) == R"(<input disabled value="a b" data-x='say "hi"' id=k>)");
}

TEST_CASE("comments and doctype") {
  const auto doc = parse_html("<!doctype html><!--c-->x<!---->");
  REQUIRE(doc.root.children.size() == 4);
  CHECK(doc.root.children[0].kind == NodeKind::kDoctype);
  CHECK(doc.root.children[1].kind == NodeKind::kComment);
  CHECK(doc.root.children[1].text == "c");
  CHECK(serialize_html(doc) == "<!doctype html><!--c-->x<!---->");
  CHECK_FALSE(parse_html("<!-- open").diagnostics.empty());
}

TEST_CASE("serialization round trip is a fixed point") {
  const char* inputs[] = {
      "<html><head><title>t</title></head><body><p class=a>x<br>y</p></body></html>",
      "<div><p>unclosed<span>deep",
      "<ul><li>a<li>b<li>c</ul><p>after",
      "<a href='x y'>q</a><img alt=\"\" src=z>",
      "text only",
      "",
  };
  for (const char* in : inputs) {
    const auto once = serialize_html(parse_html(in));
    CHECK(serialize_html(parse_html(once)) == once);
  }
}

TEST_CASE("tree helpers") {
  const auto doc = parse_html("<div><p>a</p><p>b<span>c</span></p></div>");
  CHECK(count_elements(doc.root) == 4);
  CHECK(count_nodes(doc.root) == 8);
  CHECK(find_element(doc.root, "span")->text_content() == "c");
  CHECK(find_element(doc.root, "table") == nullptr);
  CHECK(doc.root.text_content() == "abc");
  CHECK(is_void_element("img"));
  CHECK_FALSE(is_void_element("div"));
  CHECK(is_raw_text_element("script"));
  CHECK(is_raw_text_element("style"));
}

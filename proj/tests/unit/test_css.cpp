// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "match_oracle.hpp"
#include "vlprep/web/css.hpp"
#include "vlprep/web/match.hpp"

using namespace vlprep::web;

namespace {

const CssRule& rule_at(const Stylesheet& s, std::size_t i) { return std::get<CssRule>(s.items.at(i)); }

bool matches_first(const std::string& selector, const std::string& html, const std::string& tag) {
  const auto doc = parse_html(html);
  const ElementIndex index(doc);
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (index.element(i).tag == tag) return selector_matches(parse_selector(selector), index, i);
  }
  FAIL("no element " << tag);
  return false;
}

}  // namespace

TEST_CASE("parse_css basics") {
  SUBCASE("single rule") {
    const auto s = parse_css(".a{color:red}");
    REQUIRE(s.items.size() == 1);
    CHECK(rule_at(s, 0).selectors.size() == 1);
    CHECK(rule_at(s, 0).declarations == "color:red");
    CHECK(serialize_css(s) == ".a{color:red}\n");
  }
  SUBCASE("comment and selector list") {
    const auto s = parse_css("/*x*/ p,div{margin:0}");
    REQUIRE(s.items.size() == 1);
    CHECK(rule_at(s, 0).selectors.size() == 2);
    CHECK(serialize_css(s) == "p,div{margin:0}\n");
  }
  SUBCASE("media wrapper") {
    const auto s = parse_css("@media (max-width:600px){.a{display:none}}");
    REQUIRE(s.items.size() == 1);
    const auto& m = std::get<MediaBlock>(s.items[0]);
    CHECK(m.prelude == "(max-width:600px)");
    REQUIRE(m.items.size() == 1);
    CHECK(serialize_css(s) == "@media (max-width:600px){\n.a{display:none}\n}\n");
    CHECK(rule_count(s) == 1);
  }
  SUBCASE("verbatim at-rules") {
    const auto s = parse_css("@import url(x.css);@font-face{font-family:F;src:url(f.woff)}b{x:y}");
    REQUIRE(s.items.size() == 3);
    CHECK(std::holds_alternative<VerbatimAtRule>(s.items[0]));
    CHECK(std::holds_alternative<VerbatimAtRule>(s.items[1]));
    CHECK(rule_count(s) == 1);
    const auto again = parse_css(serialize_css(s));
    CHECK(serialize_css(again) == serialize_css(s));
  }
  SUBCASE("whitespace and multiple rules") {
    const auto s = parse_css("  h1  ,  h2 > a.b  {  color : red ;  }\n\n p { }");
    REQUIRE(s.items.size() == 2);
    CHECK(serialize_css(s) == "h1,h2 > a.b{color : red ;}\np{}\n");
  }
  SUBCASE("malformed input is reported") {
    const auto s = parse_css("a{color:red} b{unterminated");
    CHECK(rule_count(s) == 2);
    CHECK(rule_at(s, 1).declarations == "unterminated");
    CHECK_FALSE(s.diagnostics.empty());
    CHECK(rule_count(parse_css("a{x:y} stray")) == 1);
    CHECK_FALSE(parse_css("a{x:y} stray").diagnostics.empty());
    CHECK_FALSE(parse_css("}{").diagnostics.empty());
  }
  SUBCASE("strings containing braces and comment markers") {
    const auto s = parse_css(R"(a::after{content:"}/*x*/{"}b{c:d})");
    REQUIRE(s.items.size() == 2);
    CHECK(rule_at(s, 0).declarations == R"(content:"}/*x*/{")");
  }
}

TEST_CASE("strip_css_comments") {
  CHECK(strip_css_comments("a/* x */b") == "ab");
  CHECK(strip_css_comments("a/* unterminated") == "a");
  CHECK(strip_css_comments("'/*keep*/'") == "'/*keep*/'");
}

TEST_CASE("parse_selector") {
  SUBCASE("compound parts") {
    const auto sel = parse_selector("div#main.a.b[data-x=\"1\"]:hover");
    REQUIRE(sel.supported);
    REQUIRE(sel.compounds.size() == 1);
    const auto& parts = sel.compounds[0].parts;
    REQUIRE(parts.size() == 6);
    CHECK(parts[0].kind == SimpleKind::kType);
    CHECK(parts[1].kind == SimpleKind::kId);
    CHECK(parts[1].name == "main");
    CHECK(parts[2].kind == SimpleKind::kClass);
    CHECK(parts[4].kind == SimpleKind::kAttribute);
    CHECK(parts[4].value == "1");
    CHECK(parts[4].has_value);
    CHECK(parts[5].kind == SimpleKind::kPseudo);
  }
  SUBCASE("combinators") {
    const auto sel = parse_selector("ul  li > a");
    REQUIRE(sel.compounds.size() == 3);
    CHECK(sel.combinators == std::vector<Combinator>{Combinator::kDescendant, Combinator::kChild});
    CHECK(serialize_selector(sel) == "ul li > a");
  }
  SUBCASE("type selectors are case-insensitive") {
    CHECK(serialize_selector(parse_selector("DIV.Foo")) == "div.Foo");
  }
  SUBCASE("unsupported syntax is flagged") {
    for (const char* s : {"a + b", "a ~ b", "[href^=http]", "svg|rect", "a\\:b"}) {
      CAPTURE(s);
      CHECK_FALSE(parse_selector(s).supported);
    }
    CHECK(parse_selector("a:not(.x)").supported);
    CHECK(parse_selector("p::before").supported);
    CHECK(parse_selector("*").supported);
  }
}

TEST_CASE("selector_matches") {
  CHECK(matches_first(".foo", R"(<div class="foo bar"></div>)", "div"));
  CHECK_FALSE(matches_first(".fo", R"(<div class="foo bar"></div>)", "div"));
  CHECK_FALSE(matches_first("div > span", "<div><p><span>x</span></p></div>", "span"));
  CHECK(matches_first("div span", "<div><p><span>x</span></p></div>", "span"));
  CHECK(matches_first("#x p", "<div id=x><section><p>t</p></section></div>", "p"));
  CHECK(matches_first("[type=text]", "<input type=text>", "input"));
  CHECK_FALSE(matches_first("[type=text]", "<input type=textarea>", "input"));
  CHECK(matches_first("[disabled]", "<input disabled>", "input"));
  CHECK(matches_first("a:hover", "<a>x</a>", "a"));
  CHECK(matches_first("a + b", "<i></i>", "i"));
  CHECK(matches_first("div > p > b", "<div><p><b>x</b></p></div>", "b"));
  CHECK_FALSE(matches_first("div > b", "<div><p><b>x</b></p></div>", "b"));
  CHECK(matches_first("div p b", "<div><div><p><i><b>x</b></i></p></div></div>", "b"));
}

TEST_CASE("prune_unused_rules") {
  SUBCASE("only referenced classes survive") {
    const auto doc = parse_html(R"(<div class="foo"></div>)");
    PruneStats stats;
    const auto out = prune_unused_rules(parse_css(".foo{a:b}.bar{c:d}"), doc, &stats);
    CHECK(serialize_css(out) == ".foo{a:b}\n");
    CHECK(stats.rules_in == 2);
    CHECK(stats.rules_kept == 1);
  }
  SUBCASE("dead selectors inside a live rule are dropped") {
    const auto doc = parse_html("<p>x</p>");
    PruneStats stats;
    const auto out = prune_unused_rules(parse_css("p, .missing{m:0}"), doc, &stats);
    CHECK(serialize_css(out) == "p{m:0}\n");
    CHECK(stats.selectors_dropped == 1);
  }
  SUBCASE("empty body keeps only conservative selectors") {
    const auto doc = parse_html("<body></body>");
    const auto out =
        prune_unused_rules(parse_css("p{a:b}body{c:d}a ~ b{e:f}li:hover{g:h}"), doc);
    CHECK(serialize_css(out) == "body{c:d}\na ~ b{e:f}\n");
  }
  SUBCASE("media blocks and at-rules") {
    const auto doc = parse_html("<p>x</p>");
    const auto out = prune_unused_rules(
        parse_css("@media print{p{a:b}}@media screen{.gone{c:d}}@font-face{font-family:F}"), doc);
    CHECK(serialize_css(out) == "@media print{\np{a:b}\n}\n@font-face{font-family:F}\n");
  }
}

TEST_CASE("library matcher agrees with the brute-force oracle") {
  const auto doc = parse_html(
      "<html><body><div id=main class='wrap x'><ul class=nav><li><a href=/>h</a></li>"
      "<li class=on><a>b</a></li></ul><section><p class=lead>t<b>u</b></p><p>v</p></section>"
      "</div><footer><p>f</p></footer></body></html>");
  const char* selectors[] = {"p", "div p", "div > p", "section > p", "#main p", "#main > ul",
                             ".nav li a", "ul > li > a", "li.on a", "body > p", "footer p",
                             "html body footer", "*", "* > b", "p b", "div b", ".x.wrap",
                             ".wrap.y", "a[href]", "a[href=/]", "li:first-child",
                             "html > footer", "div div", "section p.lead > b", "footer > *"};
  const auto flat = vlprep::oracle::flatten(doc);
  const ElementIndex index(doc);
  REQUIRE(flat.size() == index.size());
  for (const char* s : selectors) {
    CAPTURE(s);
    const auto sel = parse_selector(s);
    const auto expected = vlprep::oracle::matching_elements(sel, flat);
    for (std::size_t i = 0; i < index.size(); ++i) {
      REQUIRE(&index.element(i) == flat[i].node);
      CHECK(selector_matches(sel, index, i) == (expected.count(i) > 0));
    }
  }
}

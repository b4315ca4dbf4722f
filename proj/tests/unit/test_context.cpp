// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "vlprep/context.hpp"
#include "vlprep/error.hpp"

using namespace vlprep;

namespace {

ImageItem image_2x2() {
  const auto plan = plan_partition(1000, 1000, 12);
  return {plan, token_budget(plan)};
}

}  // namespace

TEST_CASE("assemble examples") {
  SUBCASE("single text item") {
    const std::vector<ContextItem> items{TextItem{100, "hello"}};
    const auto seq = assemble(items);
    CHECK(seq.total_tokens == 100);
    REQUIRE(seq.segments.size() == 1);
    CHECK(seq.segments[0].range == TokenRange{0, 100});
    CHECK(seq.image_count == 0);
  }
  SUBCASE("text then image") {
    const std::vector<ContextItem> items{TextItem{100, ""}, image_2x2()};
    const auto seq = assemble(items);
    CHECK(seq.total_tokens == 2109);
    CHECK(seq.segments[1].range == TokenRange{100, 2109});
    CHECK(seq.segments[1].tokens == 2004);
    CHECK(seq.segments[1].marker_tokens == 5);
    CHECK(seq.segments[1].marker() == "<IMAGE 1>");
  }
  SUBCASE("twelve images overflow the trained window") {
    std::vector<ContextItem> items(12, image_2x2());
    try {
      assemble(items, kTrainedContextTokens);
      FAIL("expected BudgetExceeded");
    } catch (const BudgetExceeded& e) {
      CHECK(e.total() == 24108);
      CHECK(e.limit() == 24000);
    }
    const auto seq = assemble(items, kExtendedContextTokens);
    CHECK(seq.total_tokens == 24108);
    CHECK(seq.image_count == 12);
  }
  SUBCASE("exactly at the limit fits") {
    const std::vector<ContextItem> items{TextItem{24000, ""}};
    CHECK(assemble(items).total_tokens == 24000);
    const std::vector<ContextItem> over{TextItem{24001, ""}};
    CHECK_THROWS_AS(assemble(over), BudgetExceeded);
  }
  SUBCASE("custom marker cost") {
    const std::vector<ContextItem> items{image_2x2()};
    CHECK(assemble(items, 24000, AssembleOptions{0}).total_tokens == 2004);
  }
  CHECK_THROWS_AS(assemble(std::vector<ContextItem>{TextItem{-1, ""}}), InputError);
}

TEST_CASE("assemble properties on random mixes") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<ContextItem> items;
    const int n = 1 + static_cast<int>(rng() % 12);
    long long expected_total = 0;
    std::vector<int> image_positions;
    for (int i = 0; i < n; ++i) {
      if (rng() % 2 == 0) {
        const auto t = static_cast<std::int64_t>(rng() % 500);
        items.push_back(TextItem{t, ""});
        expected_total += t;
      } else {
        const int h = 1 + static_cast<int>(rng() % 3000);
        const int w = 1 + static_cast<int>(rng() % 3000);
        const auto plan = plan_partition(h, w, 1 + static_cast<int>(rng() % 24));
        const auto budget = token_budget(plan);
        items.push_back(ImageItem{plan, budget});
        expected_total += budget.total + 5;
        image_positions.push_back(i);
      }
    }
    const auto seq = assemble(items, 1'000'000);
    REQUIRE(seq.total_tokens == expected_total);
    REQUIRE(seq.image_count == static_cast<int>(image_positions.size()));
    std::int64_t cursor = 0;
    int next_image = 1;
    for (std::size_t i = 0; i < seq.segments.size(); ++i) {
      const auto& s = seq.segments[i];
      REQUIRE(s.range.begin == cursor);
      REQUIRE(s.range.size() == s.tokens + s.marker_tokens);
      cursor = s.range.end;
      if (s.kind == SegmentKind::kImage) {
        REQUIRE(s.image_index == next_image++);
      } else {
        REQUIRE(s.image_index == 0);
        REQUIRE(s.marker_tokens == 0);
      }
    }
    REQUIRE(cursor == seq.total_tokens);
    const auto again = assemble(items, 1'000'000);
    for (std::size_t i = 0; i < seq.segments.size(); ++i) {
      REQUIRE(again.segments[i].range == seq.segments[i].range);
    }
  }
}

TEST_CASE("estimate_text_tokens") {
  CHECK(estimate_text_tokens("") == 0);
  CHECK(estimate_text_tokens("  one two\tthree\n") == 3);
}

TEST_CASE("rope_inv_frequencies") {
  SUBCASE("unit scale") {
    const auto spec = rope_inv_frequencies(128, 10000.0, 24000, 24000);
    CHECK(spec.scaled_base == 10000.0);
    CHECK(spec.inv_freqs.size() == 64);
    CHECK(spec.inv_freqs[0] == 1.0);
    CHECK(spec.inv_freqs[1] == doctest::Approx(std::pow(10000.0, -2.0 / 128)).epsilon(1e-15));
  }
  SUBCASE("96K extension") {
    const auto spec = rope_inv_frequencies(128, 10000.0, 24000, 96000);
    // Reference value from 50-digit evaluation of 10000 * 4^(128/126).
    CHECK(std::abs(spec.scaled_base - 40889.94243248622) < 1e-8);
    CHECK(std::abs(spec.scaled_base - 40890.1) / 40890.1 < 1e-3);
  }
  SUBCASE("exponent two") {
    CHECK(rope_inv_frequencies(4, 10000.0, 1, 2).scaled_base == doctest::Approx(40000.0).epsilon(1e-14));
  }
  SUBCASE("head_dim two keeps base") {
    const auto spec = rope_inv_frequencies(2, 500.0, 10, 40);
    CHECK(spec.scaled_base == 500.0);
    CHECK(spec.inv_freqs == std::vector<double>{1.0});
  }
  SUBCASE("monotone in index and target") {
    for (int d : {4, 8, 64, 128, 256}) {
      std::vector<double> prev;
      for (std::int64_t target : {24000, 48000, 96000, 384000}) {
        const auto spec = rope_inv_frequencies(d, 10000.0, 24000, target);
        for (std::size_t j = 1; j < spec.inv_freqs.size(); ++j) {
          REQUIRE(spec.inv_freqs[j] < spec.inv_freqs[j - 1]);
        }
        if (!prev.empty()) {
          for (std::size_t j = 0; j < prev.size(); ++j) REQUIRE(spec.inv_freqs[j] <= prev[j]);
        }
        prev = spec.inv_freqs;
      }
    }
  }
  CHECK_THROWS_AS(rope_inv_frequencies(3), InputError);
  CHECK_THROWS_AS(rope_inv_frequencies(0), InputError);
  CHECK_THROWS_AS(rope_inv_frequencies(128, 10000.0, 96000, 24000), InputError);
  CHECK_THROWS_AS(rope_inv_frequencies(128, 1.0), InputError);
}

TEST_CASE("rope_rotate") {
  const auto spec = rope_inv_frequencies(128, 10000.0, 24000, 96000);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> normal;
  std::vector<double> v(128);
  for (auto& x : v) x = normal(rng);
  CHECK(rope_rotate(v, 0.0, spec) == v);

  auto norm = [](const std::vector<double>& x) {
    double s = 0;
    for (double e : x) s += e * e;
    return std::sqrt(s);
  };
  for (double pos : {1.0, 17.0, 24000.0, 95999.0}) {
    CHECK(std::abs(norm(rope_rotate(v, pos, spec)) - norm(v)) < 1e-9);
  }

  const auto two = rope_inv_frequencies(2);
  const std::vector<double> unit{1.0, 0.0};
  const auto r = rope_rotate(unit, std::numbers::pi / two.inv_freqs[0], two);
  CHECK(std::abs(r[0] + 1.0) < 1e-9);
  CHECK(std::abs(r[1]) < 1e-9);

  const auto quarter = rope_rotate(unit, std::numbers::pi / 2, two);
  CHECK(std::abs(quarter[0]) < 1e-12);
  CHECK(std::abs(quarter[1] - 1.0) < 1e-12);

  CHECK_THROWS_AS(rope_rotate(std::vector<double>(3), 1.0, two), InputError);
}

// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <vector>

#include "vlprep/error.hpp"
#include "vlprep/partition.hpp"
#include "vlprep/videocomp.hpp"

using namespace vlprep;

TEST_CASE("sample_frame_indices") {
  CHECK(sample_frame_indices(10, 5).selected == std::vector<int>{1, 3, 5, 7, 9});
  std::vector<int> all(64);
  for (int i = 0; i < 64; ++i) all[i] = i;
  CHECK(sample_frame_indices(64, 64).selected == all);
  CHECK(sample_frame_indices(3, 64).selected == std::vector<int>{0, 1, 2});
  CHECK(sample_frame_indices(1, 1).selected == std::vector<int>{0});

  for (int total = 1; total <= 400; total += 7) {
    for (int m : {1, 2, 5, 64}) {
      const auto plan = sample_frame_indices(total, m);
      REQUIRE(static_cast<int>(plan.selected.size()) == std::min(total, m));
      for (std::size_t i = 0; i < plan.selected.size(); ++i) {
        const double expected = std::floor((i + 0.5) * total / plan.selected.size());
        REQUIRE(plan.selected[i] == static_cast<int>(expected));
        if (i > 0) REQUIRE(plan.selected[i] > plan.selected[i - 1]);
      }
      REQUIRE(plan.selected.back() < total);
      REQUIRE(sample_frame_indices(total, m).selected == plan.selected);
    }
  }
  CHECK_THROWS_AS(sample_frame_indices(0, 4), InputError);
  CHECK_THROWS_AS(sample_frame_indices(4, 0), InputError);
}

TEST_CASE("composite_layout") {
  SUBCASE("landscape stacks vertically") {
    const auto l = composite_layout(360, 640, 4);
    CHECK(l.axis == StackAxis::kVertical);
    CHECK(l.composite_w == 640);
    CHECK(l.composite_h == 1440);
    std::vector<int> ys;
    for (const auto& r : l.rects) ys.push_back(r.y);
    CHECK(ys == std::vector<int>{0, 360, 720, 1080});
  }
  SUBCASE("portrait forms a horizontal strip") {
    const auto l = composite_layout(640, 360, 4);
    CHECK(l.axis == StackAxis::kHorizontal);
    CHECK(l.composite_w == 1440);
    CHECK(l.composite_h == 640);
  }
  SUBCASE("square ties to vertical") {
    CHECK(composite_layout(100, 100, 3).axis == StackAxis::kVertical);
  }
  SUBCASE("single frame") {
    const auto l = composite_layout(123, 77, 1);
    CHECK(l.composite_w == 77);
    CHECK(l.composite_h == 123);
    REQUIRE(l.rects.size() == 1);
    CHECK(l.rects[0] == Rect{0, 0, 77, 123});
  }
  SUBCASE("anchors sit at the margin") {
    const auto l = composite_layout(50, 80, 3, 6);
    CHECK(l.label_anchors[2] == Point{6, 106});
  }
  CHECK_THROWS_AS(composite_layout(0, 10, 1), GeometryError);
  CHECK_THROWS_AS(composite_layout(10, 10, 0), InputError);
}

TEST_CASE("layout cover, disjointness and order over k and shapes") {
  const std::pair<int, int> shapes[] = {{360, 640}, {640, 360}, {100, 100}, {1, 1}, {7, 3}};
  for (auto [h, w] : shapes) {
    for (int k = 1; k <= 64; ++k) {
      const auto l = composite_layout(h, w, k);
      long long area = 0;
      for (std::size_t i = 0; i < l.rects.size(); ++i) {
        const Rect& r = l.rects[i];
        area += r.area();
        REQUIRE(r.x >= 0);
        REQUIRE(r.y >= 0);
        REQUIRE(r.x + r.w <= l.composite_w);
        REQUIRE(r.y + r.h <= l.composite_h);
        for (std::size_t j = i + 1; j < l.rects.size(); ++j) {
          REQUIRE_FALSE(r.intersects(l.rects[j]));
        }
        if (i > 0) {
          const Rect& p = l.rects[i - 1];
          if (l.axis == StackAxis::kVertical) {
            REQUIRE(p.y + p.h == r.y);
          } else {
            REQUIRE(p.x + p.w == r.x);
          }
        }
      }
      REQUIRE(area == static_cast<long long>(l.composite_w) * l.composite_h);
    }
  }
}

TEST_CASE("label_box metrics") {
  const LabelSpec spec{true, 2, 4};
  const Rect box = label_box(12, spec);
  CHECK(box.w == 22);
  CHECK(box.h == 14);
  CHECK(label_box(7, LabelSpec{true, 1, 0}).w == 5);
  CHECK(label_box(64, LabelSpec{true, 3, 0}, Point{2, 9}) == Rect{2, 9, 33, 21});
}

TEST_CASE("render_composite") {
  SUBCASE("label off copies the frame") {
    const ImageBuffer frame(40, 30);
    const CompositeLayout l = composite_layout(30, 40, 1);
    const std::vector<ImageBuffer> frames{frame};
    CHECK(render_composite(frames, l, LabelSpec{false, 2, 4}) == frame);
  }
  SUBCASE("pixels outside label boxes keep source colours") {
    const std::vector<ImageBuffer> frames{ImageBuffer(64, 48, Rgb8{200, 10, 10}),
                                          ImageBuffer(64, 48, Rgb8{10, 200, 10})};
    const LabelSpec spec{true, 2, 4};
    const auto l = composite_layout(48, 64, 2, spec.margin);
    const auto out = render_composite(frames, l, spec);
    REQUIRE(out.width() == 64);
    REQUIRE(out.height() == 96);
    std::vector<Rect> boxes;
    for (int i = 0; i < 2; ++i) boxes.push_back(label_box(i + 1, spec, l.label_anchors[i]));
    int inked = 0;
    int boxed = 0;
    for (int y = 0; y < out.height(); ++y) {
      for (int x = 0; x < out.width(); ++x) {
        const int f = y / 48;
        const Rect px{x, y, 1, 1};
        if (px.intersects(boxes[f])) {
          const Rgb8 c = out.at(x, y);
          REQUIRE((c == Rgb8{255, 255, 255} || c == Rgb8{0, 0, 0}));
          (c.r == 255 ? inked : boxed)++;
        } else {
          REQUIRE(out.at(x, y) == frames[f].at(x, y % 48));
        }
      }
    }
    CHECK(inked > 0);
    CHECK(boxed > 0);
  }
  SUBCASE("digit one draws its stem") {
    const LabelSpec spec{true, 1, 0};
    const std::vector<ImageBuffer> frames{ImageBuffer(10, 10, Rgb8{9, 9, 9})};
    const auto out = render_composite(frames, composite_layout(10, 10, 1, 0), spec);
    for (int y = 0; y < 7; ++y) CHECK(out.at(2, y) == Rgb8{255, 255, 255});
    CHECK(out.at(0, 0) == Rgb8{0, 0, 0});
    CHECK(out.at(5, 0) == Rgb8{9, 9, 9});
  }
  SUBCASE("labels larger than the frame are clipped to it") {
    const LabelSpec spec{true, 4, 2};
    const std::vector<ImageBuffer> frames{ImageBuffer(12, 12, Rgb8{1, 1, 1}),
                                          ImageBuffer(12, 12, Rgb8{2, 2, 2})};
    const auto out = render_composite(frames, composite_layout(12, 12, 2, 2), spec);
    CHECK(out.at(1, 1) == Rgb8{1, 1, 1});
    CHECK(out.at(0, 12) == Rgb8{2, 2, 2});
    CHECK(out.at(5, 12) == Rgb8{2, 2, 2});
  }
  SUBCASE("mismatches are rejected") {
    const auto l = composite_layout(10, 10, 2);
    const std::vector<ImageBuffer> one{ImageBuffer(10, 10)};
    CHECK_THROWS_AS(render_composite(one, l), GeometryError);
    const std::vector<ImageBuffer> wrong{ImageBuffer(10, 10), ImageBuffer(11, 10)};
    CHECK_THROWS_AS(render_composite(wrong, l), GeometryError);
  }
}

TEST_CASE("strips inside the aspect window plan without clamping") {
  for (int h : {90, 240, 360, 480, 720, 1080}) {
    for (int w : {90, 320, 640, 1280, 1920}) {
      for (int k = 1; k <= 64; ++k) {
        const auto l = composite_layout(h, w, k);
        const double aspect = static_cast<double>(l.composite_h) / l.composite_w;
        if (aspect > kSftMaxPartitions || aspect < 1.0 / kSftMaxPartitions) continue;
        const auto plan = plan_partition(l.composite_h, l.composite_w, kSftMaxPartitions);
        REQUIRE_FALSE(plan.aspect_clamped);
        REQUIRE(plan.num_tiles() <= kSftMaxPartitions);
      }
    }
  }
}

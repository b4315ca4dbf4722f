// SPDX-License-Identifier: Apache-2.0

#include "vlprep/videocomp.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>

#include "vlprep/error.hpp"

namespace vlprep {

namespace {

constexpr int kGlyphW = 5;
constexpr int kGlyphH = 7;
constexpr int kGlyphAdvance = kGlyphW + 1;

// Rows of each digit, most significant bit on the left (bit 4).
constexpr std::array<std::array<std::uint8_t, kGlyphH>, 10> kDigits = {{
    {0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E},  // 0
    {0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E},  // 1
    {0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F},  // 2
    {0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E},  // 3
    {0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02},  // 4
    {0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E},  // 5
    {0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E},  // 6
    {0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08},  // 7
    {0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E},  // 8
    {0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C},  // 9
}};

constexpr Rgb8 kLabelInk{255, 255, 255};
constexpr Rgb8 kLabelBox{0, 0, 0};

}  // namespace

FrameSamplePlan sample_frame_indices(int total, int max_frames) {
  if (total < 1 || max_frames < 1) {
    throw InputError("frame counts must be >= 1");
  }
  FrameSamplePlan plan;
  plan.total_frames = total;
  plan.max_frames = max_frames;
  const int k = std::min(total, max_frames);
  plan.selected.reserve(k);
  for (int i = 0; i < k; ++i) {
    // floor((i + 0.5) * total / k) in integers.
    plan.selected.push_back(static_cast<int>(
        (static_cast<long long>(2 * i + 1) * total) / (2LL * k)));
  }
  return plan;
}

CompositeLayout composite_layout(int frame_h, int frame_w, int k,
                                 int label_margin) {
  if (frame_h < 1 || frame_w < 1) {
    throw GeometryError("frame dimensions must be positive");
  }
  if (k < 1) {
    throw InputError("composite needs at least one frame");
  }
  CompositeLayout layout;
  layout.frame_w = frame_w;
  layout.frame_h = frame_h;
  layout.count = k;
  layout.axis = frame_h <= frame_w ? StackAxis::kVertical : StackAxis::kHorizontal;
  const long long long_side =
      static_cast<long long>(layout.axis == StackAxis::kVertical ? frame_h : frame_w) * k;
  if (long_side > (1LL << 30)) {
    throw GeometryError("composite too large");
  }
  if (layout.axis == StackAxis::kVertical) {
    layout.composite_w = frame_w;
    layout.composite_h = static_cast<int>(long_side);
  } else {
    layout.composite_w = static_cast<int>(long_side);
    layout.composite_h = frame_h;
  }
  layout.rects.reserve(k);
  layout.label_anchors.reserve(k);
  for (int i = 0; i < k; ++i) {
    Rect r{0, 0, frame_w, frame_h};
    if (layout.axis == StackAxis::kVertical) {
      r.y = i * frame_h;
    } else {
      r.x = i * frame_w;
    }
    layout.rects.push_back(r);
    layout.label_anchors.push_back({r.x + label_margin, r.y + label_margin});
  }
  return layout;
}

Rect label_box(int index, const LabelSpec& label, Point anchor) {
  const int digits = static_cast<int>(std::to_string(index).size());
  return {anchor.x, anchor.y, (digits * kGlyphAdvance - 1) * label.scale,
          kGlyphH * label.scale};
}

void draw_index_label(ImageBuffer& img, int index, Point anchor,
                      const LabelSpec& label, const Rect& clip) {
  if (label.scale < 1) {
    throw InputError("label scale must be >= 1");
  }
  const Rect box = label_box(index, label, anchor);
  const int x0 = std::max({box.x, clip.x, 0});
  const int y0 = std::max({box.y, clip.y, 0});
  const int x1 = std::min({box.x + box.w, clip.x + clip.w, img.width()});
  const int y1 = std::min({box.y + box.h, clip.y + clip.h, img.height()});
  const std::string text = std::to_string(index);
  for (int y = y0; y < y1; ++y) {
    const int dot_y = (y - box.y) / label.scale;
    for (int x = x0; x < x1; ++x) {
      const int dot_x = (x - box.x) / label.scale;
      const int glyph = dot_x / kGlyphAdvance;
      const int col = dot_x % kGlyphAdvance;
      bool ink = false;
      if (col < kGlyphW) {
        const auto& rows = kDigits[text[glyph] - '0'];
        ink = (rows[dot_y] >> (kGlyphW - 1 - col)) & 1;
      }
      img.set(x, y, ink ? kLabelInk : kLabelBox);
    }
  }
}

ImageBuffer render_composite(std::span<const ImageBuffer> frames,
                             const CompositeLayout& layout,
                             const LabelSpec& label) {
  if (frames.size() != layout.rects.size() ||
      static_cast<int>(frames.size()) != layout.count) {
    throw GeometryError("layout expects " + std::to_string(layout.count) +
                        " frames, got " + std::to_string(frames.size()));
  }
  ImageBuffer out(layout.composite_w, layout.composite_h);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const Rect& r = layout.rects[i];
    if (frames[i].width() != r.w || frames[i].height() != r.h) {
      throw GeometryError("frame " + std::to_string(i) + " is " +
                          std::to_string(frames[i].width()) + "x" +
                          std::to_string(frames[i].height()) +
                          ", layout expects " + std::to_string(r.w) + "x" +
                          std::to_string(r.h));
    }
    out.blit(frames[i], r.x, r.y);
    if (label.enabled) {
      draw_index_label(out, static_cast<int>(i) + 1, layout.label_anchors[i],
                       label, r);
    }
  }
  return out;
}

const char* axis_name(StackAxis axis) {
  return axis == StackAxis::kVertical ? "vertical" : "horizontal";
}

}  // namespace vlprep

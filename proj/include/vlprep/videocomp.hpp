// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "vlprep/raster.hpp"

namespace vlprep {

inline constexpr int kDefaultMaxFrames = 64;

struct FrameSamplePlan {
  int total_frames = 0;
  int max_frames = kDefaultMaxFrames;
  std::vector<int> selected;
};

enum class StackAxis { kVertical, kHorizontal };

struct Rect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  long long area() const { return static_cast<long long>(w) * h; }
  bool intersects(const Rect& o) const {
    return x < o.x + o.w && o.x < x + w && y < o.y + o.h && o.y < y + h;
  }
  bool operator==(const Rect&) const = default;
};

struct Point {
  int x = 0;
  int y = 0;
  bool operator==(const Point&) const = default;
};

struct LabelSpec {
  bool enabled = true;
  int scale = 2;   // pixels per font dot
  int margin = 4;  // offset of the label box from the frame's top-left
};

struct CompositeLayout {
  int frame_w = 0;
  int frame_h = 0;
  int count = 0;
  StackAxis axis = StackAxis::kVertical;
  std::vector<Rect> rects;
  std::vector<Point> label_anchors;
  int composite_w = 0;
  int composite_h = 0;
};

// k = min(total, max_frames) frames at the centers of k equal bins.
FrameSamplePlan sample_frame_indices(int total, int max_frames = kDefaultMaxFrames);

// Frames are concatenated along their short side: landscape and square frames
// stack vertically, portrait frames form a horizontal strip.
CompositeLayout composite_layout(int frame_h, int frame_w, int k,
                                 int label_margin = LabelSpec{}.margin);

// Size of the rendered label box for a 1-based frame index.
Rect label_box(int index, const LabelSpec& label, Point anchor = {});

ImageBuffer render_composite(std::span<const ImageBuffer> frames,
                             const CompositeLayout& layout,
                             const LabelSpec& label = {});

// Draws `index` in white 5x7 digits on a black box at `anchor`, clipped to
// `clip`.
void draw_index_label(ImageBuffer& img, int index, Point anchor,
                      const LabelSpec& label, const Rect& clip);

const char* axis_name(StackAxis axis);

}  // namespace vlprep

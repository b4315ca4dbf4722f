// SPDX-License-Identifier: Apache-2.0

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "vlprep/context.hpp"
#include "vlprep/error.hpp"
#include "vlprep/partition.hpp"
#include "vlprep/prefalign.hpp"
#include "vlprep/raster.hpp"
#include "vlprep/serialize.hpp"
#include "vlprep/videocomp.hpp"
#include "vlprep/web/distill.hpp"

namespace py = pybind11;
using namespace vlprep;

namespace {

using ImageArray = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

py::object to_python(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

Json from_python(const py::handle& obj) {
  return Json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

ImageBuffer to_image(const ImageArray& arr) {
  if (arr.ndim() != 3 || arr.shape(2) != 3) {
    throw InputError("expected an (H, W, 3) uint8 array");
  }
  const auto h = static_cast<int>(arr.shape(0));
  const auto w = static_cast<int>(arr.shape(1));
  std::vector<std::uint8_t> data(arr.data(), arr.data() + arr.size());
  return ImageBuffer(w, h, std::move(data));
}

ImageArray to_array(const ImageBuffer& img) {
  ImageArray arr({img.height(), img.width(), 3});
  std::memcpy(arr.mutable_data(), img.data().data(), img.data().size());
  return arr;
}

PartitionPlan plan_of(int h, int w, int max_partitions, double scale, int tile_size) {
  return plan_partition(h, w, max_partitions, scale, tile_size);
}

}  // namespace

PYBIND11_MODULE(_vlprep, m) {
  m.doc() = "Image tiling, video compositing, context accounting, web distillation and DPO math.";

  py::register_exception<GeometryError>(m, "GeometryError", PyExc_ValueError);
  py::register_exception<AlignmentError>(m, "AlignmentError", PyExc_ValueError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_ValueError);

  m.def(
      "plan_partition",
      [](int h, int w, int max_partitions, double scale, int tile_size, int tokens_per_tile,
         bool include_global) {
        const auto plan = plan_of(h, w, max_partitions, scale, tile_size);
        return to_python(to_json(plan, token_budget(plan, tokens_per_tile, include_global)));
      },
      py::arg("h"), py::arg("w"), py::arg("max_partitions") = kPretrainMaxPartitions,
      py::arg("scale") = 1.0, py::arg("tile_size") = kDefaultTileSize,
      py::arg("tokens_per_tile") = kDefaultTokensPerTile, py::arg("include_global") = true,
      "Solve the tile grid and token budget for an h x w image.");

  m.def(
      "render_tiles",
      [](const ImageArray& image, int max_partitions, double scale, int tile_size) {
        const ImageBuffer img = to_image(image);
        const auto plan = plan_of(img.height(), img.width(), max_partitions, scale, tile_size);
        const TileSet set = tile(render_canvas(img, plan), tile_size);
        py::list tiles;
        for (const auto& t : set.tiles) tiles.append(to_array(t));
        return py::make_tuple(tiles, to_array(global_view(img, tile_size)));
      },
      py::arg("image"), py::arg("max_partitions") = kPretrainMaxPartitions, py::arg("scale") = 1.0,
      py::arg("tile_size") = kDefaultTileSize,
      "Resize, pad and tile an (H, W, 3) image. Returns (tiles in row-major order, global view).");

  m.def(
      "reassemble",
      [](const std::vector<ImageArray>& tiles, int p_w, int p_h) {
        TileSet set;
        set.p_w = p_w;
        set.p_h = p_h;
        for (const auto& t : tiles) set.tiles.push_back(to_image(t));
        set.tile_size = set.tiles.empty() ? 0 : set.tiles.front().width();
        return to_array(reassemble(set));
      },
      py::arg("tiles"), py::arg("p_w"), py::arg("p_h"));

  m.def("resize_bilinear", [](const ImageArray& image, int out_w, int out_h) {
    return to_array(resize_bilinear(to_image(image), out_w, out_h));
  }, py::arg("image"), py::arg("out_w"), py::arg("out_h"));

  m.def("sample_frame_indices",
        [](int total, int max_frames) { return sample_frame_indices(total, max_frames).selected; },
        py::arg("total"), py::arg("max_frames") = kDefaultMaxFrames);

  m.def("composite_layout",
        [](int frame_h, int frame_w, int k) { return to_python(to_json(composite_layout(frame_h, frame_w, k))); },
        py::arg("frame_h"), py::arg("frame_w"), py::arg("k"));

  m.def(
      "render_composite",
      [](const std::vector<ImageArray>& frames, bool label, int label_scale, int margin) {
        std::vector<ImageBuffer> imgs;
        for (const auto& f : frames) imgs.push_back(to_image(f));
        if (imgs.empty()) throw InputError("no frames");
        const auto layout = composite_layout(imgs.front().height(), imgs.front().width(),
                                             static_cast<int>(imgs.size()), margin);
        return to_array(render_composite(imgs, layout, LabelSpec{label, label_scale, margin}));
      },
      py::arg("frames"), py::arg("label") = true, py::arg("label_scale") = 2, py::arg("margin") = 4);

  m.def(
      "assemble",
      [](const py::list& items, std::int64_t limit, int marker_tokens, int max_partitions) {
        std::vector<ContextItem> seq;
        for (const auto& item : items) {
          const Json j = from_python(item);
          const std::string kind = j.value("kind", "");
          if (kind == "text") {
            seq.push_back(TextItem{j.at("tokens").get<std::int64_t>(), j.value("text", "")});
          } else if (kind == "image") {
            const auto plan = plan_partition(j.at("h").get<int>(), j.at("w").get<int>(),
                                             j.value("max_partitions", max_partitions));
            seq.push_back(ImageItem{plan, token_budget(plan)});
          } else {
            throw InputError("item kind must be 'text' or 'image'");
          }
        }
        return to_python(to_json(assemble(seq, limit, AssembleOptions{marker_tokens})));
      },
      py::arg("items"), py::arg("limit") = kTrainedContextTokens,
      py::arg("marker_tokens") = kDefaultMarkerTokens, py::arg("max_partitions") = kPretrainMaxPartitions);

  m.def(
      "rope_inv_frequencies",
      [](int head_dim, double base, std::int64_t trained_len, std::int64_t target_len) {
        const auto spec = rope_inv_frequencies(head_dim, base, trained_len, target_len);
        return py::make_tuple(spec.scaled_base, spec.inv_freqs);
      },
      py::arg("head_dim") = 128, py::arg("base") = 10000.0,
      py::arg("trained_len") = kTrainedContextTokens, py::arg("target_len") = kTrainedContextTokens,
      "Returns (scaled_base, inv_freqs).");

  m.def(
      "dpo_loss",
      [](double pw, double rw, double pl, double rl, double beta) {
        return to_python(to_json(pref::dpo_loss(pw, rw, pl, rl, beta)));
      },
      py::arg("logp_policy_chosen"), py::arg("logp_ref_chosen"), py::arg("logp_policy_rejected"),
      py::arg("logp_ref_rejected"), py::arg("beta") = pref::kDefaultBeta);

  m.def(
      "build_pairs",
      [](const py::list& samples, double min_gap) {
        std::vector<pref::ResponseSample> parsed;
        for (const auto& s : samples) parsed.push_back(sample_from_json(from_python(s)));
        const auto result = pref::build_pairs(parsed, min_gap);
        Json pairs = Json::array();
        for (const auto& p : result.pairs) pairs.push_back(to_json(p));
        return py::make_tuple(to_python(pairs), result.diagnostics);
      },
      py::arg("samples"), py::arg("min_gap") = 0.0, "Returns (pairs, diagnostics).");

  m.def(
      "distill",
      [](const std::string& html, const std::vector<std::string>& css, std::size_t min_elements,
         std::size_t min_chars, bool strip_anchor_links) {
        web::DistillOptions options;
        options.strip.strip_anchor_links = strip_anchor_links;
        options.quality = {min_elements, min_chars};
        const auto out = web::distill(html, css, options);
        return py::make_tuple(out.html, to_python(to_json(out.report)));
      },
      py::arg("html"), py::arg("css") = std::vector<std::string>{}, py::arg("min_elements") = 10,
      py::arg("min_chars") = 50, py::arg("strip_anchor_links") = false,
      "Returns (distilled html, report).");
}

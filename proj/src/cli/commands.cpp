// SPDX-License-Identifier: Apache-2.0

#include "vlprep/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <functional>
#include <filesystem>
#include <map>
#include <optional>
#include <regex>

#include "vlprep/config.hpp"
#include "vlprep/error.hpp"
#include "vlprep/image_io.hpp"
#include "vlprep/parallel.hpp"
#include "vlprep/raster.hpp"
#include "vlprep/serialize.hpp"

namespace vlprep::cli {

namespace fs = std::filesystem;

namespace {

std::string hex64(std::uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[i] = kDigits[v & 0xF];
  return s;
}

void emit(const std::string& text, const std::optional<std::string>& path, std::ostream& out) {
  if (path) {
    write_file(*path, text);
  } else {
    out << text;
  }
}

bool is_image_file(const fs::path& p) {
  const std::string ext = p.extension().string();
  return ext == ".ppm" || ext == ".png" || ext == ".PPM" || ext == ".PNG";
}

std::vector<fs::path> sorted_files(const fs::path& dir, const std::function<bool(const fs::path&)>& keep) {
  if (!fs::is_directory(dir)) throw InputError("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && keep(entry.path())) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

struct Common {
  std::optional<std::string> config_path;
  Config config;
};

void add_config_option(CLI::App* sub, Common& common) {
  sub->add_option("--config", common.config_path, "JSON config file (overrides PIPE_CONFIG)");
}

int max_partitions_for(const Config& c, const std::optional<int>& flag, bool sft) {
  if (flag) return *flag;
  return sft ? c.max_partitions_sft : c.max_partitions_pretrain;
}

// ---- plan -----------------------------------------------------------------

struct PlanArgs {
  int h = 0;
  int w = 0;
  std::optional<int> max;
  bool sft = false;
  std::optional<double> scale;
  std::optional<int> tile_size;
  std::optional<int> tokens_per_tile;
  bool no_global = false;
  std::optional<std::string> out;
};

int run_plan(const PlanArgs& a, const Config& c, std::ostream& out) {
  const PartitionPlan plan = plan_partition(a.h, a.w, max_partitions_for(c, a.max, a.sft),
                                            a.scale.value_or(c.scale_factor),
                                            a.tile_size.value_or(c.tile_size));
  const TokenBudget budget = token_budget(plan, a.tokens_per_tile.value_or(c.tokens_per_tile),
                                          c.include_global && !a.no_global);
  Json j = to_json(plan, budget);
  j["placement"] = to_json(resize_pad_geometry(a.h, a.w, plan));
  emit(dump(j), a.out, out);
  return kExitOk;
}

// ---- tile -----------------------------------------------------------------

struct TileArgs {
  std::optional<std::string> image;
  std::optional<std::string> in_dir;
  std::string out_dir;
  std::optional<int> max;
  bool sft = false;
  std::optional<double> scale;
  std::optional<int> tile_size;
  std::optional<int> tokens_per_tile;
  bool no_global = false;
  std::optional<unsigned> workers;
  std::optional<std::string> report;
};

Json tile_one(const fs::path& src, const fs::path& out_dir, const TileArgs& a, const Config& c) {
  const ImageBuffer img = read_image(src);
  const int tile_size = a.tile_size.value_or(c.tile_size);
  const bool with_global = c.include_global && !a.no_global;
  const PartitionPlan plan = plan_partition(img.height(), img.width(),
                                            max_partitions_for(c, a.max, a.sft),
                                            a.scale.value_or(c.scale_factor), tile_size);
  const TokenBudget budget =
      token_budget(plan, a.tokens_per_tile.value_or(c.tokens_per_tile), with_global);
  const ImageBuffer canvas = render_canvas(img, plan);
  const TileSet tiles = tile(canvas, tile_size);

  const std::string name = src.stem().string();
  const fs::path dir = out_dir / name;
  fs::create_directories(dir);
  Json entry{{"name", name}, {"source", src.filename().string()}};
  entry["plan"] = to_json(plan, budget);
  entry["placement"] = to_json(resize_pad_geometry(img.height(), img.width(), plan));
  Json files = Json::array();
  for (int r = 0; r < tiles.p_h; ++r) {
    for (int col = 0; col < tiles.p_w; ++col) {
      const auto& t = tiles.tiles[static_cast<std::size_t>(r) * tiles.p_w + col];
      char fname[64];
      std::snprintf(fname, sizeof(fname), "tile_r%02d_c%02d.ppm", r, col);
      write_ppm(dir / fname, t);
      files.push_back(Json{{"file", fname}, {"row", r}, {"col", col}, {"checksum", hex64(checksum(t))}});
    }
  }
  entry["tiles"] = files;
  if (with_global) {
    const ImageBuffer g = global_view(img, tile_size);
    write_ppm(dir / "global.ppm", g);
    entry["global"] = Json{{"file", "global.ppm"}, {"checksum", hex64(checksum(g))}};
  }
  write_file(dir / "plan.json", dump(entry));
  return entry;
}

int run_tile(const TileArgs& a, const Config& c, std::ostream& out) {
  std::vector<fs::path> inputs;
  if (a.image) inputs.emplace_back(*a.image);
  if (a.in_dir) {
    for (auto& p : sorted_files(*a.in_dir, is_image_file)) inputs.push_back(std::move(p));
  }
  if (inputs.empty()) throw InputError("tile: no input images (use --image or --in)");
  fs::create_directories(a.out_dir);
  std::vector<Json> entries(inputs.size());
  parallel_for(inputs.size(), a.workers.value_or(c.workers),
               [&](std::size_t i) { entries[i] = tile_one(inputs[i], a.out_dir, a, c); });
  // Sort by name so the report does not depend on argument order.
  std::sort(entries.begin(), entries.end(), [](const Json& x, const Json& y) {
    return x["name"].get<std::string>() < y["name"].get<std::string>();
  });
  std::int64_t tiles = 0;
  std::int64_t tokens = 0;
  for (const auto& e : entries) {
    tiles += static_cast<std::int64_t>(e["tiles"].size());
    tokens += e["plan"]["token_budget"]["total"].get<std::int64_t>();
  }
  Json report{{"images", entries},
              {"totals", Json{{"images", entries.size()}, {"tiles", tiles}, {"tokens", tokens}}}};
  emit(dump(report), a.report, out);
  return kExitOk;
}

// ---- montage --------------------------------------------------------------

struct MontageArgs {
  std::string frames_dir;
  std::string out;
  std::optional<std::string> layout;
  std::optional<int> max_frames;
  std::optional<int> label_scale;
  std::optional<int> margin;
  bool no_label = false;
};

int run_montage(const MontageArgs& a, const Config& c, std::ostream& out) {
  static const std::regex kFramePattern(R"(frame_(\d+)\.(ppm|png|PPM|PNG))");
  std::vector<std::pair<long long, fs::path>> numbered;
  for (const auto& p : sorted_files(a.frames_dir, is_image_file)) {
    std::smatch m;
    const std::string fname = p.filename().string();
    if (std::regex_match(fname, m, kFramePattern)) numbered.emplace_back(std::stoll(m[1].str()), p);
  }
  if (numbered.empty()) throw InputError("montage: no frame_NNNNN images in " + a.frames_dir);
  std::sort(numbered.begin(), numbered.end());

  const FrameSamplePlan sample =
      sample_frame_indices(static_cast<int>(numbered.size()), a.max_frames.value_or(c.max_frames));
  std::vector<ImageBuffer> frames;
  frames.reserve(sample.selected.size());
  Json sources = Json::array();
  for (const int idx : sample.selected) {
    frames.push_back(read_image(numbered[idx].second));
    sources.push_back(numbered[idx].second.filename().string());
    if (frames.back().width() != frames.front().width() ||
        frames.back().height() != frames.front().height()) {
      throw InputError("montage: frame " + numbered[idx].second.filename().string() +
                       " differs in size from the first frame");
    }
  }
  LabelSpec label;
  label.enabled = !a.no_label;
  label.scale = a.label_scale.value_or(c.label_scale);
  label.margin = a.margin.value_or(c.label_margin);
  const CompositeLayout layout = composite_layout(frames.front().height(), frames.front().width(),
                                                  static_cast<int>(frames.size()), label.margin);
  const ImageBuffer composite = render_composite(frames, layout, label);
  write_ppm(a.out, composite);

  const PartitionPlan plan =
      plan_partition(composite.height(), composite.width(), c.max_partitions_sft, c.scale_factor,
                     c.tile_size);
  Json j{{"composite", fs::path(a.out).filename().string()},
         {"checksum", hex64(checksum(composite))},
         {"sampling", to_json(sample)},
         {"sources", sources},
         {"label", Json{{"enabled", label.enabled}, {"scale", label.scale}, {"margin", label.margin}}},
         {"layout", to_json(layout)},
         {"plan", to_json(plan, token_budget(plan, c.tokens_per_tile, c.include_global))}};
  const std::string sidecar = a.layout.value_or(a.out + ".json");
  write_file(sidecar, dump(j));
  out << dump(j);
  return kExitOk;
}

// ---- assemble -------------------------------------------------------------

struct AssembleArgs {
  std::string items;
  std::optional<std::int64_t> limit;
  bool extended = false;
  std::optional<int> marker_tokens;
  std::optional<int> max;
  bool sft = false;
  std::optional<std::string> out;
};

int run_assemble(const AssembleArgs& a, const Config& c, std::ostream& out) {
  Json items_json;
  try {
    items_json = Json::parse(read_file(a.items));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("assemble: " + std::string(e.what()));
  }
  if (!items_json.is_array()) throw InputError("assemble: items file must hold a JSON array");
  const fs::path base = fs::path(a.items).parent_path();
  std::vector<ContextItem> items;
  for (const auto& it : items_json) {
    const std::string kind = it.value("kind", "");
    if (kind == "text") {
      TextItem t;
      t.text = it.value("text", "");
      t.tokens = it.contains("tokens") ? it.at("tokens").get<std::int64_t>() : estimate_text_tokens(t.text);
      items.push_back(std::move(t));
    } else if (kind == "image") {
      int h = 0;
      int w = 0;
      if (it.contains("path")) {
        const ImageBuffer img = read_image(base / it.at("path").get<std::string>());
        h = img.height();
        w = img.width();
      } else {
        if (!it.contains("h") || !it.contains("w")) {
          throw InputError("assemble: image item needs 'path' or 'h'/'w'");
        }
        h = it.at("h").get<int>();
        w = it.at("w").get<int>();
      }
      const int max_parts =
          it.contains("max_partitions") ? it.at("max_partitions").get<int>() : max_partitions_for(c, a.max, a.sft);
      ImageItem img;
      img.plan = plan_partition(h, w, max_parts, c.scale_factor, c.tile_size);
      img.budget = token_budget(img.plan, c.tokens_per_tile, c.include_global);
      items.push_back(std::move(img));
    } else {
      throw InputError("assemble: item kind must be 'text' or 'image'");
    }
  }
  const std::int64_t limit = a.limit.value_or(a.extended ? c.extended_limit : c.context_limit);
  const ContextSequence seq =
      assemble(items, limit, AssembleOptions{a.marker_tokens.value_or(c.marker_tokens)});
  emit(dump(to_json(seq)), a.out, out);
  return kExitOk;
}

// ---- rope -----------------------------------------------------------------

struct RopeArgs {
  std::optional<int> dim;
  std::optional<double> base;
  std::optional<std::int64_t> train;
  std::optional<std::int64_t> target;
  std::optional<std::string> out;
};

int run_rope(const RopeArgs& a, const Config& c, std::ostream& out) {
  const RopeSpec spec = rope_inv_frequencies(a.dim.value_or(c.head_dim), a.base.value_or(c.rope_base),
                                             a.train.value_or(c.context_limit),
                                             a.target.value_or(c.extended_limit));
  emit(rope_csv(spec), a.out, out);
  return kExitOk;
}

// ---- distill --------------------------------------------------------------

struct DistillArgs {
  std::string in_dir;
  std::string out_dir;
  std::optional<std::string> report;
  std::optional<std::size_t> min_elements;
  std::optional<std::size_t> min_chars;
  std::optional<unsigned> workers;
  bool keep_failed = false;
  bool strip_anchors = false;
};

int run_distill(const DistillArgs& a, const Config& c, std::ostream& out) {
  const auto pages = sorted_files(a.in_dir, [](const fs::path& p) { return p.extension() == ".html"; });
  fs::create_directories(a.out_dir);
  web::DistillOptions options;
  options.quality.min_elements = a.min_elements.value_or(c.min_elements);
  options.quality.min_chars = a.min_chars.value_or(c.min_chars);
  options.strip.strip_anchor_links = a.strip_anchors;

  std::vector<Json> entries(pages.size());
  parallel_for(pages.size(), a.workers.value_or(c.workers), [&](std::size_t i) {
    const fs::path& html_path = pages[i];
    std::vector<std::string> css;
    fs::path css_path = html_path;
    css_path.replace_extension(".css");
    if (fs::exists(css_path)) css.push_back(read_file(css_path));
    const web::DistillOutput result = web::distill(read_file(html_path), css, options);
    const bool written = result.report.quality.pass || a.keep_failed;
    if (written) write_file(fs::path(a.out_dir) / html_path.filename(), result.html);
    Json entry{{"name", html_path.stem().string()}, {"has_css", !css.empty()}, {"written", written}};
    entry.update(to_json(result.report));
    entries[i] = std::move(entry);
  });

  std::size_t rules_in = 0, rules_kept = 0, nodes_removed = 0, passed = 0;
  for (const auto& e : entries) {
    rules_in += e["rules_in"].get<std::size_t>();
    rules_kept += e["rules_kept"].get<std::size_t>();
    nodes_removed += e["nodes_removed"].get<std::size_t>();
    if (e["quality"]["pass"].get<bool>()) ++passed;
  }
  Json report{{"pages", entries},
              {"totals", Json{{"pages", entries.size()},
                              {"rules_in", rules_in},
                              {"rules_kept", rules_kept},
                              {"nodes_removed", nodes_removed},
                              {"passed", passed},
                              {"failed", entries.size() - passed}}}};
  emit(dump(report), a.report, out);
  return kExitOk;
}

// ---- dpo ------------------------------------------------------------------

struct DpoArgs {
  std::optional<std::string> pairs;
  std::optional<std::string> samples;
  std::optional<std::string> write_pairs;
  std::optional<double> min_gap;
  std::optional<double> beta;
};

int run_dpo(const DpoArgs& a, const Config& c, std::ostream& out, std::ostream& err) {
  if (a.pairs.has_value() == a.samples.has_value()) {
    throw InputError("dpo: give exactly one of --pairs or --samples");
  }
  std::vector<pref::PreferencePair> pairs;
  Json diagnostics = Json::array();
  if (a.pairs) {
    for (const auto& row : parse_jsonl(read_file(*a.pairs))) pairs.push_back(pair_from_json(row));
  } else {
    std::vector<pref::ResponseSample> samples;
    for (const auto& row : parse_jsonl(read_file(*a.samples))) samples.push_back(sample_from_json(row));
    pref::PairingResult built = pref::build_pairs(samples, a.min_gap.value_or(c.min_gap));
    for (const auto& d : built.diagnostics) {
      err << "dpo: " << d << '\n';
      diagnostics.push_back(d);
    }
    pairs = std::move(built.pairs);
    if (a.write_pairs) {
      std::vector<Json> rows;
      for (const auto& p : pairs) rows.push_back(to_json(p));
      write_file(*a.write_pairs, to_jsonl(rows));
    }
  }
  const double beta = a.beta.value_or(c.beta);
  const pref::BatchStats stats = pref::dpo_batch(pairs, beta);
  Json j = to_json(stats);
  j["beta"] = beta;
  if (a.samples) j["diagnostics"] = diagnostics;
  out << dump(j);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Data preparation for long-context vision-language training", "vlprep"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  Common common;

  PlanArgs plan;
  auto* plan_cmd = app.add_subcommand("plan", "Solve the tile grid for one image size");
  plan_cmd->add_option("--h", plan.h, "Image height in pixels")->required();
  plan_cmd->add_option("--w", plan.w, "Image width in pixels")->required();
  plan_cmd->add_option("--max", plan.max, "Maximum number of tiles");
  plan_cmd->add_flag("--sft", plan.sft, "Use the fine-tuning tile budget");
  plan_cmd->add_option("--scale", plan.scale, "Scale factor for the width-derived column count");
  plan_cmd->add_option("--tile-size", plan.tile_size, "Tile edge in pixels");
  plan_cmd->add_option("--tokens-per-tile", plan.tokens_per_tile);
  plan_cmd->add_flag("--no-global", plan.no_global, "Drop the global view from the budget");
  plan_cmd->add_option("--out", plan.out, "Write the plan here instead of stdout");
  add_config_option(plan_cmd, common);

  TileArgs tile_args;
  auto* tile_cmd = app.add_subcommand("tile", "Resize, pad and cut images into tiles");
  tile_cmd->add_option("--image", tile_args.image, "Single input image (PPM or PNG)");
  tile_cmd->add_option("--in", tile_args.in_dir, "Directory of input images");
  tile_cmd->add_option("--out", tile_args.out_dir, "Output directory")->required();
  tile_cmd->add_option("--max", tile_args.max, "Maximum number of tiles");
  tile_cmd->add_flag("--sft", tile_args.sft, "Use the fine-tuning tile budget");
  tile_cmd->add_option("--scale", tile_args.scale);
  tile_cmd->add_option("--tile-size", tile_args.tile_size);
  tile_cmd->add_option("--tokens-per-tile", tile_args.tokens_per_tile);
  tile_cmd->add_flag("--no-global", tile_args.no_global, "Skip the global view");
  tile_cmd->add_option("--workers", tile_args.workers, "Worker threads");
  tile_cmd->add_option("--report", tile_args.report, "Write the JSON report here");
  add_config_option(tile_cmd, common);

  MontageArgs montage;
  auto* montage_cmd = app.add_subcommand("montage", "Composite sampled video frames into one image");
  montage_cmd->add_option("--frames", montage.frames_dir, "Directory of frame_NNNNN.ppm/png")->required();
  montage_cmd->add_option("--out", montage.out, "Composite PPM path")->required();
  montage_cmd->add_option("--layout", montage.layout, "Layout sidecar path (default: <out>.json)");
  montage_cmd->add_option("--max-frames", montage.max_frames);
  montage_cmd->add_option("--label-scale", montage.label_scale);
  montage_cmd->add_option("--margin", montage.margin);
  montage_cmd->add_flag("--no-label", montage.no_label, "Do not draw frame indices");
  add_config_option(montage_cmd, common);

  AssembleArgs assemble_args;
  auto* assemble_cmd = app.add_subcommand("assemble", "Lay out an interleaved text/image context");
  assemble_cmd->add_option("--items", assemble_args.items, "JSON array of text/image items")->required();
  assemble_cmd->add_option("--limit", assemble_args.limit, "Context window in tokens");
  assemble_cmd->add_flag("--extended", assemble_args.extended, "Use the extended context window");
  assemble_cmd->add_option("--marker-tokens", assemble_args.marker_tokens);
  assemble_cmd->add_option("--max", assemble_args.max, "Maximum number of tiles per image");
  assemble_cmd->add_flag("--sft", assemble_args.sft, "Use the fine-tuning tile budget");
  assemble_cmd->add_option("--out", assemble_args.out);
  add_config_option(assemble_cmd, common);

  RopeArgs rope;
  auto* rope_cmd = app.add_subcommand("rope", "Print scaled rotary frequencies as CSV");
  rope_cmd->add_option("--dim", rope.dim, "Head dimension");
  rope_cmd->add_option("--base", rope.base, "Rotary base");
  rope_cmd->add_option("--train", rope.train, "Trained context length");
  rope_cmd->add_option("--target", rope.target, "Target context length");
  rope_cmd->add_option("--out", rope.out);
  add_config_option(rope_cmd, common);

  DistillArgs distill_args;
  auto* distill_cmd = app.add_subcommand("distill", "Distill HTML/CSS pages into self-contained files");
  distill_cmd->add_option("--in", distill_args.in_dir, "Directory of <name>.html [+ <name>.css]")->required();
  distill_cmd->add_option("--out", distill_args.out_dir, "Output directory")->required();
  distill_cmd->add_option("--report", distill_args.report, "Write the JSON report here");
  distill_cmd->add_option("--min-elements", distill_args.min_elements);
  distill_cmd->add_option("--min-chars", distill_args.min_chars);
  distill_cmd->add_option("--workers", distill_args.workers, "Worker threads");
  distill_cmd->add_flag("--keep-failed", distill_args.keep_failed, "Also write pages failing the quality gate");
  distill_cmd->add_flag("--strip-anchors", distill_args.strip_anchors, "Drop absolute <a href> links too");
  add_config_option(distill_cmd, common);

  DpoArgs dpo;
  auto* dpo_cmd = app.add_subcommand("dpo", "Evaluate the preference objective over a dataset");
  dpo_cmd->add_option("--pairs", dpo.pairs, "pairs.jsonl with filled log-probabilities");
  dpo_cmd->add_option("--samples", dpo.samples, "samples.jsonl to pair up first");
  dpo_cmd->add_option("--write-pairs", dpo.write_pairs, "Where to write pairs built from --samples");
  dpo_cmd->add_option("--min-gap", dpo.min_gap);
  dpo_cmd->add_option("--beta", dpo.beta);
  add_config_option(dpo_cmd, common);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "vlprep: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    const std::optional<fs::path> config_path =
        common.config_path ? std::optional<fs::path>(*common.config_path) : std::nullopt;
    const Config config = load_config(config_path);
    if (plan_cmd->parsed()) return run_plan(plan, config, out);
    if (tile_cmd->parsed()) return run_tile(tile_args, config, out);
    if (montage_cmd->parsed()) return run_montage(montage, config, out);
    if (assemble_cmd->parsed()) return run_assemble(assemble_args, config, out);
    if (rope_cmd->parsed()) return run_rope(rope, config, out);
    if (distill_cmd->parsed()) return run_distill(distill_args, config, out);
    if (dpo_cmd->parsed()) return run_dpo(dpo, config, out, err);
  } catch (const BudgetExceeded& e) {
    err << "vlprep: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& e) {
    err << "vlprep: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitUsage;
}

}  // namespace vlprep::cli

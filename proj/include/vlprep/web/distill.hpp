// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vlprep/web/css.hpp"
#include "vlprep/web/dom.hpp"
#include "vlprep/web/match.hpp"

namespace vlprep::web {

// Moves every <style> element's content, followed by `external` sheets, into
// a single <style> at the end of <head>, creating <head> when missing.
DomDocument merge(DomDocument doc, std::span<const Stylesheet> external);

// Parsed content of every <style> element in document order.
std::vector<Stylesheet> collect_style_sheets(const DomDocument& doc);

struct StripOptions {
  bool strip_anchor_links = false;  // also drop absolute <a href>
};

struct StripStats {
  std::size_t nodes_removed = 0;
  std::size_t attributes_removed = 0;
};

// Removes comments, scripts, external resources (<link>, <iframe>, <embed>,
// <object>), event-handler attributes, javascript: URLs and absolute http(s)
// src/href values. Adjacent text runs left behind are merged.
DomDocument strip(DomDocument doc, const StripOptions& options = {},
                  StripStats* stats = nullptr);

struct QualityThresholds {
  std::size_t min_elements = 10;
  std::size_t min_chars = 50;
};

struct QualityVerdict {
  bool pass = true;
  std::vector<std::string> reasons;  // subset of {"elements", "text", "styles"}
  std::size_t elements = 0;
  std::size_t text_chars = 0;
  std::size_t style_rules = 0;
};

// Visible text excludes <head>, <style>, <script>, <template> and
// <noscript>; whitespace runs count as one character.
std::size_t visible_text_chars(const DomDocument& doc);

QualityVerdict quality_gate(const DomDocument& doc, const QualityThresholds& thresholds = {});

struct DistillOptions {
  StripOptions strip;
  QualityThresholds quality;
};

struct DistillReport {
  std::size_t rules_in = 0;
  std::size_t rules_kept = 0;
  std::size_t selectors_dropped = 0;
  std::size_t nodes_removed = 0;
  std::size_t attributes_removed = 0;
  QualityVerdict quality;
  std::vector<std::string> diagnostics;
};

struct DistillOutput {
  std::string html;
  DomDocument doc;
  Stylesheet sheet;  // the pruned stylesheet embedded in the output
  DistillReport report;
};

// parse -> merge -> strip -> prune -> serialize.
DistillOutput distill(std::string_view html_text, std::span<const std::string> css_texts,
                      const DistillOptions& options = {});

}  // namespace vlprep::web

#pragma once

// Serialization for the CLI-facing file formats.
//
// Measure JSON: {"dim": K, "atoms": [[x11,...,x1K], ...], "weights": [w1,...]}
// with "weights" optional (uniform when absent). Measure CSV: header row then
// one row per atom with K coordinate columns; a trailing column named
// "weight" or "w" carries weights. Step-function JSON: {"breakpoints": [...],
// "values": [...]} or {"identity": true}. Rectangle mixtures serialize to
// {"dim": K, "components": [{"lower": [...], "upper": [...], "weight": w}]}.

#include <string>

#include "margdist/measure.hpp"
#include "margdist/stepfn.hpp"
#include "margdist/transform.hpp"

namespace margdist {

DiscreteMeasure measure_from_json(const std::string& text);
DiscreteMeasure measure_from_csv(const std::string& text);
// Dispatches on extension: ".csv" reads CSV, anything else reads JSON.
DiscreteMeasure measure_from_file(const std::string& path);
std::string measure_to_json(const DiscreteMeasure& p);

MonotoneStep stepfn_from_json(const std::string& text);
MonotoneStep stepfn_from_file(const std::string& path);
std::string stepfn_to_json(const MonotoneStep& g);

std::string rect_mixture_to_json(const RectMixture& c);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace margdist

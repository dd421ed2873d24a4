#pragma once

#include <json.hpp>

#include "jbt/cosplit.hpp"

namespace jbt {

using ordered_json = nlohmann::ordered_json;

// Wire formats. Field names are fixed:
//   Element: {"factor": {"kind": "type1", "rows": p, "cols": q}, "data": ...}
//            kinds "type2"/"type3" carry "n", "spin" carries "dim";
//            data is nested arrays of [re, im] pairs.
//   AtomicDecomposition:  {"lambdas": [...], "atoms": [Element...]}
//   SpectralDecomposition: {"sigmas": [...], "resolutions": [Element...],
//                           "multiplicities": [...]}
//   CheckResult: {"name", "inputs_digest", "measured", "bound", "margin",
//                 "pass", "samples"}

ordered_json factor_to_json(const FactorDescriptor& f);
FactorDescriptor factor_from_json(const ordered_json& j);

ordered_json element_to_json(const Element& x);
Element element_from_json(const ordered_json& j);

ordered_json atomic_to_json(const AtomicDecomposition& dec);
ordered_json spectral_to_json(const SpectralDecomposition& dec);

ordered_json check_to_json(const CheckResult& res);

ordered_json cosplit_to_json(const CoSplit& split);

}  // namespace jbt

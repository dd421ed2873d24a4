#include "jbt/json_io.hpp"

namespace jbt {

ordered_json factor_to_json(const FactorDescriptor& f) {
  ordered_json j;
  switch (f.kind) {
    case FactorKind::Type1:
      j["kind"] = "type1";
      j["rows"] = f.rows;
      j["cols"] = f.cols;
      break;
    case FactorKind::Type2:
      j["kind"] = "type2";
      j["n"] = f.n;
      break;
    case FactorKind::Type3:
      j["kind"] = "type3";
      j["n"] = f.n;
      break;
    case FactorKind::Spin:
      j["kind"] = "spin";
      j["dim"] = f.dim;
      break;
  }
  return j;
}

FactorDescriptor factor_from_json(const ordered_json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "type1")
    return FactorDescriptor::type1(j.at("rows").get<int>(),
                                   j.at("cols").get<int>());
  if (kind == "type2") return FactorDescriptor::type2(j.at("n").get<int>());
  if (kind == "type3") return FactorDescriptor::type3(j.at("n").get<int>());
  if (kind == "spin") return FactorDescriptor::spin(j.at("dim").get<int>());
  throw Error(Err::ConfigError, "unknown factor kind " + kind);
}

namespace {

ordered_json entry_to_json(const cplx& v) {
  return ordered_json::array({v.real(), v.imag()});
}

cplx entry_from_json(const ordered_json& j) {
  if (!j.is_array() || j.size() != 2)
    throw Error(Err::ConfigError, "entries must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

ordered_json element_to_json(const Element& x) {
  ordered_json data = ordered_json::array();
  if (x.factor.kind == FactorKind::Spin) {
    for (int i = 0; i < x.data.rows; ++i)
      data.push_back(entry_to_json(x.data(i, 0)));
  } else {
    for (int i = 0; i < x.data.rows; ++i) {
      ordered_json row = ordered_json::array();
      for (int j = 0; j < x.data.cols; ++j)
        row.push_back(entry_to_json(x.data(i, j)));
      data.push_back(std::move(row));
    }
  }
  ordered_json j;
  j["factor"] = factor_to_json(x.factor);
  j["data"] = std::move(data);
  return j;
}

Element element_from_json(const ordered_json& j) {
  const FactorDescriptor f = factor_from_json(j.at("factor"));
  const auto& data = j.at("data");
  const auto [rows, cols] = f.shape();
  CMat m(rows, cols);
  if (f.kind == FactorKind::Spin) {
    if (int(data.size()) != rows)
      throw Error(Err::ShapeMismatch, "spin data length");
    for (int i = 0; i < rows; ++i) m(i, 0) = entry_from_json(data[i]);
  } else {
    if (int(data.size()) != rows)
      throw Error(Err::ShapeMismatch, "row count");
    for (int i = 0; i < rows; ++i) {
      if (int(data[i].size()) != cols)
        throw Error(Err::ShapeMismatch, "column count");
      for (int c = 0; c < cols; ++c) m(i, c) = entry_from_json(data[i][c]);
    }
  }
  return validate_element(f, m);
}

ordered_json atomic_to_json(const AtomicDecomposition& dec) {
  ordered_json j;
  j["lambdas"] = dec.lambdas;
  ordered_json atoms = ordered_json::array();
  for (const Tripotent& t : dec.atoms) atoms.push_back(element_to_json(t.element));
  j["atoms"] = std::move(atoms);
  return j;
}

ordered_json spectral_to_json(const SpectralDecomposition& dec) {
  ordered_json j;
  j["sigmas"] = dec.sigmas;
  ordered_json res = ordered_json::array();
  for (const Tripotent& t : dec.resolutions)
    res.push_back(element_to_json(t.element));
  j["resolutions"] = std::move(res);
  j["multiplicities"] = dec.multiplicities;
  return j;
}

ordered_json check_to_json(const CheckResult& res) {
  ordered_json j;
  j["name"] = res.name;
  j["inputs_digest"] = res.inputs_digest;
  ordered_json measured;
  for (const auto& [k, v] : res.measured) measured[k] = v;
  j["measured"] = std::move(measured);
  j["bound"] = res.bound;
  j["margin"] = res.margin;
  j["pass"] = res.pass;
  j["samples"] = res.samples;
  return j;
}

ordered_json cosplit_to_json(const CoSplit& split) {
  ordered_json j;
  ordered_json ins = ordered_json::array();
  for (const Element& x : split.inputs) ins.push_back(element_to_json(x));
  j["inputs"] = std::move(ins);
  j["weights"] = split.weights;
  j["y"] = element_to_json(split.y);
  j["epsilon"] = split.epsilon;
  j["delta_used"] = split.delta_used;
  ordered_json outs = ordered_json::array();
  for (const Element& x : split.outputs) outs.push_back(element_to_json(x));
  j["outputs"] = std::move(outs);
  j["support"] = element_to_json(split.e.element);
  j["resolution"] = element_to_json(split.f.element);
  ordered_json audit;
  for (const auto& [k, v] : split.audit) audit[k] = v;
  j["audit"] = std::move(audit);
  return j;
}

}  // namespace jbt

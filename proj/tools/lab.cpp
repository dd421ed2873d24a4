#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "jbt/suite.hpp"

namespace {

using jbt::ordered_json;

ordered_json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw jbt::Error(jbt::Err::ConfigError, "cannot open " + path);
  ordered_json j;
  in >> j;
  return j;
}

jbt::Element load_element(const std::string& path,
                          const jbt::FactorDescriptor* expect) {
  const ordered_json j = load_json(path);
  jbt::Element x = jbt::element_from_json(j);
  if (expect != nullptr && !(x.factor == *expect))
    throw jbt::Error(jbt::Err::FactorMismatch,
                     path + " holds " + x.factor.str() + ", expected " +
                         expect->str());
  return x;
}

void emit(const ordered_json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out)
    throw jbt::Error(jbt::Err::ConfigError, "cannot write " + out_path);
  out << j.dump(2) << "\n";
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-dimensional JB*-triple calculus and theorem checks"};
  app.require_subcommand(1);

  // decompose
  auto* dec = app.add_subcommand("decompose", "atomic or spectral decomposition");
  std::string dec_factor, dec_input, dec_mode = "atomic", dec_out;
  dec->add_option("--factor", dec_factor, "factor spec, e.g. type1:3x4");
  dec->add_option("--input", dec_input, "element JSON file")->required();
  dec->add_option("--mode", dec_mode, "atomic|spectral")
      ->check(CLI::IsMember({"atomic", "spectral"}));
  dec->add_option("--out", dec_out, "output file (default stdout)");

  // verify
  auto* ver = app.add_subcommand("verify", "run randomized theorem suites");
  std::vector<std::string> ver_suites;
  std::vector<std::string> ver_factors;
  int ver_trials = 100;
  std::uint64_t ver_seed = 1;
  std::string ver_out, ver_config;
  ver->add_option("suites", ver_suites,
                  "suite names, comma separated (default: all)");
  ver->add_option("--trials", ver_trials, "trials per factor");
  ver->add_option("--seed", ver_seed, "master seed");
  ver->add_option("--factor", ver_factors, "factor spec (repeatable)");
  ver->add_option("--out", ver_out, "report path (default stdout)");
  ver->add_option("--config", ver_config, "JSON config mirroring TrialConfig");

  // co-split
  auto* co = app.add_subcommand("co-split", "convex perturbation splitter");
  std::string co_inputs, co_weights, co_y, co_out;
  double co_eps = 0.1;
  co->add_option("--inputs", co_inputs, "element files, comma separated")
      ->required();
  co->add_option("--weights", co_weights, "weights, comma separated")
      ->required();
  co->add_option("--y", co_y, "perturbed combination file")->required();
  co->add_option("--epsilon", co_eps, "proximity budget")->required();
  co->add_option("--out", co_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (dec->parsed()) {
      jbt::FactorDescriptor f;
      const bool have_factor = !dec_factor.empty();
      if (have_factor) f = jbt::parse_factor(dec_factor);
      const jbt::Element x =
          load_element(dec_input, have_factor ? &f : nullptr);
      ordered_json j;
      if (dec_mode == "atomic")
        j = jbt::atomic_to_json(jbt::atomic_decompose(x));
      else
        j = jbt::spectral_to_json(jbt::spectral_decompose(x));
      emit(j, dec_out);
      return 0;
    }

    if (ver->parsed()) {
      jbt::TrialConfig cfg;
      bool suites_pinned = false;
      if (!ver_config.empty()) {
        const ordered_json j = load_json(ver_config);
        cfg = jbt::config_from_json(j);
        suites_pinned = j.contains("suites");
      }
      if (!ver_factors.empty()) {
        cfg.factors.clear();
        for (const std::string& s : ver_factors)
          cfg.factors.push_back(jbt::parse_factor(s));
      }
      if (cfg.factors.empty())
        cfg.factors = {jbt::FactorDescriptor::type1(3, 4),
                       jbt::FactorDescriptor::type2(4),
                       jbt::FactorDescriptor::type3(3),
                       jbt::FactorDescriptor::spin(6)};
      std::vector<std::string> names;
      for (const std::string& arg : ver_suites)
        for (const std::string& s : split_csv(arg)) names.push_back(s);
      if (!names.empty()) {
        cfg.suites = names;
      } else if (!suites_pinned) {
        cfg.suites = jbt::registered_suites();  // default: everything
      }
      if (ver->count("--trials") > 0 || cfg.trials < 1) cfg.trials = ver_trials;
      if (ver->count("--seed") > 0) cfg.master_seed = ver_seed;
      if (!ver_out.empty()) cfg.output_path = ver_out;

      const jbt::SuiteRun run = jbt::run_suite(cfg);
      emit(run.report, cfg.output_path);
      return run.all_pass ? 0 : 1;
    }

    if (co->parsed()) {
      std::vector<jbt::Element> xs;
      for (const std::string& path : split_csv(co_inputs))
        xs.push_back(load_element(path, nullptr));
      std::vector<double> lams;
      for (const std::string& w : split_csv(co_weights))
        lams.push_back(std::stod(w));
      const jbt::Element y = load_element(co_y, nullptr);
      const jbt::CoSplit split = jbt::co_split(xs, lams, y, co_eps);
      emit(jbt::cosplit_to_json(split), co_out);
      return 0;
    }
  } catch (const jbt::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    switch (err.code) {
      case jbt::Err::ConfigError:
      case jbt::Err::ShapeMismatch:
      case jbt::Err::FactorMismatch:
        return 2;
      default:
        return 1;
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 2;
}

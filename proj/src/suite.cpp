#include "jbt/suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "jbt/cosplit.hpp"
#include "jbt/linalg.hpp"

namespace jbt {

namespace {

int pick(Rng& rng, int lo, int hi) {  // inclusive range
  if (hi <= lo) return lo;
  return lo + int(rng.next_u64() % std::uint64_t(hi - lo + 1));
}

Element unit_ball_gaussian(const FactorDescriptor& f, Rng& rng, double radius) {
  Element g = gaussian_element(f, rng);
  const double n = norm(g);
  return cplx(radius * rng.uniform(0.2, 1.0) / (n > 0 ? n : 1.0), 0) * g;
}

CheckResult run_weyl(const FactorDescriptor& f, Rng& rng) {
  const Element x = gaussian_element(f, rng);
  const Element y = gaussian_element(f, rng);
  return check_weyl(x, y);
}

CheckResult run_minimax(const FactorDescriptor& f, Rng& rng) {
  const Element x = random_element(f, RandomModel{}, rng);
  const int top = std::max(1, f.max_rank() - 1);
  const int n = pick(rng, 1, top);
  return check_minimax(x, n, 6, rng);
}

CheckResult run_interlacing(const FactorDescriptor& f, Rng& rng) {
  const Element x = gaussian_element(f, rng);
  const Tripotent e = random_tripotent(f, pick(rng, 0, f.max_rank()), rng);
  return check_interlacing(x, e);
}

CheckResult run_distance_rank(const FactorDescriptor& f, Rng& rng) {
  const Element x = random_element(f, RandomModel{}, rng);
  const int n = pick(rng, 1, f.max_rank());
  return check_distance_to_rank(x, n, 20, rng);
}

CheckResult run_kyfan(const FactorDescriptor& f, Rng& rng) {
  const Element x = random_element(f, RandomModel{}, rng);
  const int n = pick(rng, 1, f.max_rank());
  const double ps[4] = {1.0, 1.5, 2.0, 3.0};
  return check_kyfan(x, n, ps[rng.next_u64() % 4], 6, rng);
}

CheckResult run_stochastic(const FactorDescriptor& f, Rng& rng) {
  const int k = pick(rng, 1, f.max_rank());
  const Tripotent e = random_tripotent(f, k, rng);
  Frame vs{random_frame_in_peirce2(e, rng)};
  Frame us{random_frame_in_peirce2(e, rng)};
  const RMat a = stochastic_matrix(vs, us);
  CheckResult res;
  res.name = "stochastic";
  Digest dg;
  feed_element(dg, e.element);
  res.inputs_digest = dg.hex();
  res.samples = 1;
  double dev = 0, neg = 0;
  for (int i = 0; i < a.rows; ++i) {
    double rs = 0, cs = 0;
    for (int j = 0; j < a.cols; ++j) {
      rs += a(i, j);
      cs += a(j, i);
      neg = std::max(neg, -a(i, j));
    }
    dev = std::max({dev, std::abs(rs - 1.0), std::abs(cs - 1.0)});
  }
  res.record("sum_deviation", dev, 0.0);
  res.record("negativity", neg, 0.0);
  return res;
}

Tripotent nearby_tripotent(const Tripotent& e, double eps, Rng& rng) {
  const Element g = gaussian_element(e.factor(), rng);
  const Element moved =
      e.element + cplx(eps / std::max(norm(g), 1e-12), 0) * g;
  // atoms of the moved element with singular value near one form a tripotent
  // close to e
  return spectral_resolution(moved, 0.5, 2.0 + eps);
}

CheckResult run_tripotent_distance(const FactorDescriptor& f, Rng& rng) {
  const Tripotent e = random_tripotent(f, pick(rng, 1, f.max_rank()), rng);
  const Tripotent ft = (rng.next_u64() & 1)
                           ? random_tripotent(f, pick(rng, 1, f.max_rank()), rng)
                           : nearby_tripotent(e, rng.uniform(0.01, 0.2), rng);
  return check_tripotent_distance(e, ft);
}

CheckResult run_peirce_continuity(const FactorDescriptor& f, Rng& rng) {
  const Tripotent e = random_tripotent(f, pick(rng, 1, f.max_rank()), rng);
  if (rng.next_u64() & 1) {
    const Tripotent ft = nearby_tripotent(e, rng.uniform(0.005, 0.1), rng);
    // a norm-one element of the face e + U0(e)
    Element x = e.element;
    if (e.rank < f.max_rank()) {
      const Tripotent comp = random_tripotent(f, f.max_rank(), rng);
      // orthogonal tail built inside U0(e)
      const Element tail = apply_peirce0(e.element, comp.element);
      if (norm(tail) > 1e-6)
        x = e.element +
            cplx(rng.uniform(0.1, 0.9) / norm(tail), 0) * tail;
    }
    return check_peirce_continuity(e, ft, &x);
  }
  const Tripotent ft = random_tripotent(f, pick(rng, 1, f.max_rank()), rng);
  return check_peirce_continuity(e, ft, nullptr);
}

bool davis_supported(const FactorDescriptor& f) {
  return f.kind == FactorKind::Type3 ||
         (f.kind == FactorKind::Type1 && f.rows == f.cols);
}

CheckResult run_davis(const FactorDescriptor& f, Rng& rng) {
  const int n = f.shape().first;
  // selfadjoint element with controlled eigenvalue spacing
  std::vector<double> theta(n);
  theta[0] = rng.uniform(-1.0, 1.0);
  for (int i = 1; i < n; ++i) theta[i] = theta[i - 1] - rng.uniform(0.4, 0.9);
  Element a = zero_element(f);
  if (f.kind == FactorKind::Type3) {
    // real orthogonal basis
    RMat g(n, n);
    for (auto& v : g.a) v = rng.normal();
    const SymEig eig = sym_eig(g + transpose(g));
    CMat m(n, n);
    for (int r = 0; r < n; ++r)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          m(i, j) += theta[r] * eig.vectors(r, i) * eig.vectors(r, j);
    a = Element{f, std::move(m)};
  } else {
    const CMat q = haar_cols(n, n, rng);
    CMat m(n, n);
    for (int r = 0; r < n; ++r)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          m(i, j) += theta[r] * q(i, r) * std::conj(q(j, r));
    a = Element{f, std::move(m)};
  }
  const int count = pick(rng, 1, n);  // window captures the top eigenvalues
  const double nu = theta[count - 1] - 0.05;
  const double mu = theta[0] + 0.05;
  const double gamma = count < n ? (theta[count - 1] - theta[count]) - 0.1
                                 : 0.3;
  Element noise = gaussian_element(f, rng);
  if (f.kind == FactorKind::Type3) {
    // keep the perturbation selfadjoint
    CMat re(noise.data.rows, noise.data.cols);
    for (int i = 0; i < re.rows; ++i)
      for (int j = 0; j < re.cols; ++j)
        re(i, j) = 0.5 * (noise.data(i, j).real() + noise.data(j, i).real());
    noise = Element{f, std::move(re)};
  } else {
    noise = Element{f, cplx(0.5, 0) * (noise.data + adjoint(noise.data))};
  }
  const Element b =
      a + cplx(rng.uniform(0.1, 0.45) * gamma / norm(noise), 0) * noise;
  return davis_pair(a, b, nu, mu, gamma);
}

CheckResult run_spectral_continuity(const FactorDescriptor& f, Rng& rng) {
  RandomModel model;
  model.min_gap = 0.15;
  const Element x = random_element(f, model, rng);
  const int distinct = int(spectral_decompose(x).sigmas.size());
  const int n = pick(rng, 1, std::min(3, distinct));
  return check_spectral_continuity(x, n, 0.1, 5, rng);
}

CheckResult run_support_perturbation(const FactorDescriptor& f, Rng& rng) {
  RandomModel model;
  model.min_gap = 0.15;
  Element x = random_element(f, model, rng);
  const std::vector<double> lam = singular_values(x);
  x = cplx(1.0 / lam[0], 0) * x;
  const double gamma = 1.0 - lam[1] / lam[0];
  const Element g = gaussian_element(f, rng);
  const Element y =
      x + cplx(rng.uniform(0.05, 0.9) * (gamma / 4.0) / norm(g), 0) * g;
  return support_perturbation_bound(x, y);
}

CheckResult run_positivity(const FactorDescriptor& f, Rng& rng) {
  const Tripotent e = random_tripotent(f, pick(rng, 1, f.max_rank()), rng);
  const Element x = gaussian_element(f, rng);
  return check_peirce_positivity(e, x);
}

CheckResult run_cosplit(const FactorDescriptor& f, Rng& rng) {
  const int n = pick(rng, 2, 3);
  const double eps = rng.uniform(0.05, 0.3);
  std::vector<Element> xs;
  std::vector<double> lams(n);
  double wsum = 0;
  for (int i = 0; i < n; ++i) {
    lams[i] = rng.uniform(0.2, 1.0);
    wsum += lams[i];
  }
  for (double& l : lams) l /= wsum;
  lams[n - 1] = 1.0;
  for (int i = 0; i + 1 < n; ++i) lams[n - 1] -= lams[i];

  if (rng.next_u64() & 1) {
    for (int i = 0; i < n; ++i)
      xs.push_back(unit_ball_gaussian(f, rng, 0.85));
  } else {
    // shared support face: u plus orthogonal tails
    const Tripotent u =
        random_tripotent(f, pick(rng, 1, std::max(1, f.max_rank() - 1)), rng);
    for (int i = 0; i < n; ++i) {
      const Element tail =
          apply_peirce0(u.element, unit_ball_gaussian(f, rng, 1.0));
      const double tn = norm(tail);
      xs.push_back(u.element +
                   cplx(tn > 1e-9 ? rng.uniform(0.1, 0.8) / tn : 0.0, 0) *
                       tail);
    }
  }

  Element x0 = zero_element(f);
  for (int i = 0; i < n; ++i) x0 = x0 + cplx(lams[i], 0) * xs[i];
  const CoSplit probe = co_split(xs, lams, x0, eps);

  Element y = x0;
  const Element g = gaussian_element(f, rng);
  double step = 0.8 * probe.delta_used / std::max(norm(g), 1e-12);
  for (int attempt = 0; attempt < 60; ++attempt) {
    Element cand = x0 + cplx(step, 0) * g;
    const double cn = norm(cand);
    if (cn > 1.0) cand = cplx(1.0 / cn, 0) * cand;
    if (norm(cand - x0) <= probe.delta_used) {
      y = cand;
      break;
    }
    step *= 0.5;
  }
  const CoSplit split = co_split(xs, lams, y, eps);

  CheckResult res;
  res.name = "cosplit";
  Digest dg;
  for (const Element& x : xs) feed_element(dg, x);
  feed_element(dg, y);
  res.inputs_digest = dg.hex();
  res.samples = 1;
  Element recomb = zero_element(f);
  double ball = 0, prox = 0;
  for (int i = 0; i < n; ++i) {
    recomb = recomb + cplx(lams[i], 0) * split.outputs[i];
    ball = std::max(ball, norm(split.outputs[i]) - 1.0);
    prox = std::max(prox, norm(split.outputs[i] - xs[i]) - eps);
  }
  res.record("recombination", norm(recomb - y), 0.0);
  res.record("ball_excess", std::max(0.0, ball), 0.0);
  res.record("proximity_excess", std::max(0.0, prox), 0.0);
  res.measured["delta"] = split.delta_used;
  return res;
}

CheckResult run_oracle(const FactorDescriptor& f, Rng& rng) {
  const Element x = gaussian_element(f, rng);
  const std::vector<double> lam = singular_values(x);
  std::vector<double> squares;
  for (std::size_t i = 0; i < lam.size(); ++i) {
    const double s = lam[i] * lam[i];
    if (squares.empty() || squares.back() - s > tol::gap_rel * squares[0])
      squares.push_back(s);
  }
  const std::vector<double> oracle = subtriple_spectrum_oracle(x);
  CheckResult res;
  res.name = "oracle";
  Digest dg;
  feed_element(dg, x);
  res.inputs_digest = dg.hex();
  res.samples = 1;
  double dev = std::abs(double(squares.size()) - double(oracle.size()));
  if (squares.size() == oracle.size()) {
    const double scale = squares.empty() ? 1.0 : squares[0];
    for (std::size_t i = 0; i < squares.size(); ++i)
      dev = std::max(dev, std::abs(squares[i] - oracle[i]) / scale);
  }
  res.record("oracle_deviation", dev, 0.0);
  return res;
}

using Runner = std::function<CheckResult(const FactorDescriptor&, Rng&)>;

const std::vector<std::pair<std::string, Runner>>& runners() {
  static const std::vector<std::pair<std::string, Runner>> table = {
      {"weyl", run_weyl},
      {"minimax", run_minimax},
      {"interlacing", run_interlacing},
      {"distance_rank", run_distance_rank},
      {"kyfan", run_kyfan},
      {"stochastic", run_stochastic},
      {"tripotent_distance", run_tripotent_distance},
      {"peirce_continuity", run_peirce_continuity},
      {"davis", run_davis},
      {"spectral_continuity", run_spectral_continuity},
      {"support_perturbation", run_support_perturbation},
      {"positivity", run_positivity},
      {"cosplit", run_cosplit},
      {"oracle", run_oracle},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& registered_suites() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : runners()) out.push_back(name);
    return out;
  }();
  return names;
}

TrialConfig config_from_json(const ordered_json& j) {
  TrialConfig cfg;
  if (j.contains("factors")) {
    cfg.factors.clear();
    for (const auto& item : j.at("factors"))
      cfg.factors.push_back(parse_factor(item.get<std::string>()));
  }
  if (j.contains("trials")) cfg.trials = j.at("trials").get<int>();
  if (j.contains("master_seed"))
    cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
  if (j.contains("tol_ineq")) cfg.tol_ineq = j.at("tol_ineq").get<double>();
  if (j.contains("suites"))
    cfg.suites = j.at("suites").get<std::vector<std::string>>();
  if (j.contains("output_path"))
    cfg.output_path = j.at("output_path").get<std::string>();
  if (cfg.trials < 1) throw Error(Err::ConfigError, "trials >= 1 required");
  return cfg;
}

ordered_json config_to_json(const TrialConfig& cfg) {
  ordered_json j;
  std::vector<std::string> fs;
  for (const FactorDescriptor& f : cfg.factors) fs.push_back(f.str());
  j["factors"] = fs;
  j["trials"] = cfg.trials;
  j["master_seed"] = cfg.master_seed;
  if (cfg.tol_ineq) j["tol_ineq"] = *cfg.tol_ineq;
  j["suites"] = cfg.suites;
  return j;
}

SuiteRun run_suite(const TrialConfig& cfg) {
  const double saved_slack = runtime_ineq_slack();
  if (cfg.tol_ineq) set_runtime_ineq_slack(*cfg.tol_ineq);

  std::vector<const Runner*> chosen;
  for (const std::string& name : cfg.suites) {
    const Runner* found = nullptr;
    for (const auto& [rname, fn] : runners())
      if (rname == name) found = &fn;
    if (found == nullptr) {
      set_runtime_ineq_slack(saved_slack);
      throw Error(Err::ConfigError, "unknown suite " + name);
    }
    chosen.push_back(found);
  }

  SuiteRun run;
  run.report["config"] = config_to_json(cfg);
  run.report["kernel"] = kernels::impl_name();
  ordered_json suites;
  for (std::size_t s = 0; s < cfg.suites.size(); ++s) {
    const std::string& name = cfg.suites[s];
    ordered_json results = ordered_json::array();
    for (std::size_t fi = 0; fi < cfg.factors.size(); ++fi) {
      const FactorDescriptor& f = cfg.factors[fi];
      if (name == "davis" && !davis_supported(f)) continue;
      for (int t = 0; t < cfg.trials; ++t) {
        Rng rng = substream(cfg.master_seed, name,
                            fi * std::uint64_t(cfg.trials) + std::uint64_t(t));
        CheckResult res;
        try {
          res = (*chosen[s])(f, rng);
        } catch (const Error& err) {
          res.name = name;
          res.inputs_digest = "error";
          res.measured["error_code"] = double(int(err.code));
          res.record("exception", 1.0, 0.0);
        } catch (const std::exception&) {
          res.name = name;
          res.inputs_digest = "error";
          res.record("exception", 1.0, 0.0);
        }
        res.measured["factor_index"] = double(fi);
        run.all_pass = run.all_pass && res.pass;
        results.push_back(check_to_json(res));
      }
    }
    suites[name] = std::move(results);
  }
  run.report["suites"] = std::move(suites);
  run.report["all_pass"] = run.all_pass;
  set_runtime_ineq_slack(saved_slack);
  return run;
}

}  // namespace jbt

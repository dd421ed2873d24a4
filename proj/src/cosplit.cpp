#include "jbt/cosplit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace jbt {

namespace {

constexpr double kSqrt8 = 2.8284271247461900976;

void require_in_ball(const Element& x, const char* who) {
  if (norm(x) > 1.0 + 1e-9)
    throw Error(Err::OutOfBall, std::string(who) + " has norm " +
                                    std::to_string(norm(x)));
}

Element combine(const std::vector<Element>& xs, const std::vector<double>& w) {
  Element acc = zero_element(xs[0].factor);
  for (std::size_t i = 0; i < xs.size(); ++i)
    acc = acc + cplx(w[i], 0) * xs[i];
  return acc;
}

double eps1_of(double delta, double gamma, int m) {
  const double b = 2.0 * delta + 4.0 * std::sqrt(2.0) *
                                     std::sqrt(delta * delta + 4.0 * delta) /
                                     (std::sqrt(3.0) * gamma);
  return (m + 1) * b + kSqrt8 * std::sqrt(b);
}

}  // namespace

CheckResult convex_norm_bound(const Element& x, const Element& y, double lam) {
  require_same_factor(x, y);
  require_in_ball(x, "x");
  require_in_ball(y, "y");
  if (lam < 0.0 || lam > 0.5)
    throw Error(Err::ConfigError, "lambda must sit in [0, 1/2]");
  CheckResult res;
  res.name = "convex_norm_bound";
  Digest dg;
  feed_element(dg, x);
  feed_element(dg, y);
  dg.feed(lam);
  res.inputs_digest = dg.hex();
  res.samples = 1;

  const double d = norm(x + y);
  const double quad_arg = 1.0 - (4.0 - d * d) * (lam - lam * lam);
  const double quadratic = std::sqrt(std::max(quad_arg, 0.0));
  const double linear = 1.0 - (4.0 - d * d) * lam / 4.0;
  const double measured = norm(cplx(lam, 0) * x + cplx(1.0 - lam, 0) * y);
  res.measured["d"] = d;
  res.measured["bound_quadratic"] = quadratic;
  res.measured["bound_linear"] = linear;
  res.record("combination_norm", measured, std::min(quadratic, linear));
  return res;
}

Tripotent common_support(const std::vector<Element>& xs,
                         const std::vector<std::vector<double>>& probes) {
  if (xs.empty()) throw Error(Err::ConfigError, "empty family");
  for (const Element& x : xs) require_in_ball(x, "family member");
  const FactorDescriptor& f = xs[0].factor;

  const std::vector<double> equal(xs.size(), 1.0 / double(xs.size()));
  const Element base = combine(xs, equal);
  Tripotent e{zero_element(f), 0, false};
  if (norm(base) >= 1.0 - tol::eq_rel) e = support_tripotent(base, false);

  for (const std::vector<double>& w : probes) {
    if (w.size() != xs.size())
      throw Error(Err::ConfigError, "probe weight length");
    double sum = 0;
    for (const double v : w) {
      if (v <= 0) throw Error(Err::ConfigError, "probes must be strict");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw Error(Err::ConfigError, "probe weights must sum to 1");
    const Element comb = combine(xs, w);
    if (e.rank == 0) {
      if (norm(comb) > 1.0 - tol::eq_rel)
        throw Error(Err::Internal, "zero support but a probe touches the sphere");
      continue;
    }
    const Element tail = apply_peirce0(e.element, comb);
    if (norm(comb - (e.element + tail)) > 1e-7 * (1.0 + norm(comb)))
      throw Error(Err::Internal, "probe combination leaves the support face");
    if (norm(tail) >= 1.0 - 1e-12)
      throw Error(Err::Internal, "probe tail reaches the sphere");
  }
  return e;
}

CoSplit co_split(const std::vector<Element>& xs,
                 const std::vector<double>& lams, const Element& y,
                 double epsilon) {
  if (xs.empty() || xs.size() != lams.size())
    throw Error(Err::ConfigError, "inputs/weights mismatch");
  if (epsilon <= 0) throw Error(Err::ConfigError, "epsilon must be positive");
  double wsum = 0;
  for (const double l : lams) {
    if (l <= 0) throw Error(Err::ConfigError, "weights must be positive");
    wsum += l;
  }
  if (std::abs(wsum - 1.0) > 1e-9)
    throw Error(Err::ConfigError, "weights must sum to 1");
  for (const Element& x : xs) {
    require_same_factor(x, y);
    require_in_ball(x, "input");
  }
  require_in_ball(y, "y");

  const int n = int(xs.size());
  const FactorDescriptor& f = y.factor;
  CoSplit out;
  out.inputs = xs;
  out.weights = lams;
  out.y = y;
  out.epsilon = epsilon;
  out.e = Tripotent{zero_element(f), 0, false};
  out.f = out.e;

  const Element x0 = combine(xs, lams);

  if (n == 1) {
    // the identity split: admissibility radius is epsilon itself
    out.delta_used = epsilon;
    if (norm(y - x0) > epsilon + 1e-12)
      throw Error(Err::DeltaExceeded, "||y - x_1|| beyond epsilon");
    out.outputs.push_back(y);
    out.audit["delta"] = out.delta_used;
    return out;
  }

  out.e = common_support(xs, {lams, std::vector<double>(n, 1.0 / n)});

  // shared pieces
  for (int j = 0; j < n; ++j) {
    Element aj = zero_element(f);
    for (int i = 0; i < n; ++i)
      if (i != j) aj = aj + cplx(1.0 / double(n - 1), 0) * xs[i];
    out.mixtures.push_back(std::move(aj));
  }
  const double min_lam = *std::min_element(lams.begin(), lams.end());
  const double c = (epsilon / 4.0) * min_lam;
  std::vector<double> mu(n);
  for (int j = 0; j < n; ++j) mu[j] = c / lams[j];

  double d = 0;
  for (int j = 0; j < n; ++j) {
    const Element s = out.mixtures[j] + xs[j];
    d = std::max(d, out.e.rank > 0 ? norm(apply_peirce0(out.e.element, s))
                                   : norm(s));
  }
  out.audit["c"] = c;
  out.audit["d"] = d;
  for (int j = 0; j < n; ++j)
    out.audit["mu_" + std::to_string(j)] = mu[j];

  double delta_star = 0;
  double gamma = 0;
  if (out.e.rank > 0) {
    gamma = 1.0 - norm(apply_peirce0(out.e.element, x0));
    if (gamma <= tol::gap_rel) throw Error(Err::DegenerateGap, "gamma at zero");
    const int m = out.e.rank;
    const double cap = min_lam * (4.0 - d * d) / 4.0;
    const double half_eps = epsilon / 2.0;
    auto feasible = [&](double dl) {
      const double e1 = eps1_of(dl, gamma, m);
      return dl < gamma / 4.0 && 8.0 * e1 + dl < cap &&
             18.0 * e1 + 2.0 * dl < half_eps;
    };
    // eps1 decays like delta^(1/4), so hunt for a feasible seed by
    // geometric descent before maximising by bisection
    double seed = 0.0;
    for (double t = gamma / 8.0; t > 1e-300; t *= 0.25) {
      if (feasible(t)) {
        seed = t;
        break;
      }
    }
    if (seed == 0.0) throw Error(Err::DegenerateGap, "no admissible delta");
    double lo = seed, hi = gamma / 4.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (feasible(mid))
        lo = mid;
      else
        hi = mid;
    }
    delta_star = lo;
    out.audit["gamma"] = gamma;
    out.audit["eps1"] = eps1_of(delta_star, gamma, m);
  } else {
    gamma = 1.0 - norm(x0);
    if (gamma <= tol::gap_rel) throw Error(Err::DegenerateGap, "gamma at zero");
    double mu_cap = 1e300;
    for (int j = 0; j < n; ++j)
      mu_cap = std::min(mu_cap, (4.0 - d * d) / 4.0 * mu[j]);
    delta_star = std::min({gamma / 4.0, epsilon / 2.0, mu_cap});
    out.audit["gamma"] = gamma;
  }
  out.delta_used = 0.9 * delta_star;
  out.audit["delta_star"] = delta_star;
  out.audit["delta"] = out.delta_used;

  const double dist = norm(y - x0);
  if (dist > out.delta_used) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "||y - x0|| = %.6g > delta = %.6g", dist,
                  out.delta_used);
    throw Error(Err::DeltaExceeded, msg);
  }

  if (out.e.rank > 0) {
    out.f = spectral_resolution(
        y, 1.0 - out.delta_used - gamma / 8.0, std::max(norm(y), 1.0) + 1.0);
    if (out.f.rank != out.e.rank)
      throw Error(Err::Internal, "support rank moved under perturbation");
  }

  const Element drift = y - x0;
  for (int j = 0; j < n; ++j) {
    const Element core = xs[j] + cplx(mu[j], 0) * (out.mixtures[j] - xs[j]) +
                         drift;
    Element xt = out.f.rank > 0
                     ? apply_peirce2(out.f.element, y) +
                           apply_peirce0(out.f.element, core)
                     : core;
    out.outputs.push_back(std::move(xt));
  }

  // exact recombination is an algebraic identity of the construction
  const Element recomb = combine(out.outputs, lams);
  if (norm(recomb - y) > 1e-9 * (1.0 + norm(y)))
    throw Error(Err::Internal, "recombination drifted");
  return out;
}

}  // namespace jbt

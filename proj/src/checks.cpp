#include "jbt/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "jbt/linalg.hpp"

namespace jbt {

namespace {

constexpr double kSqrt8 = 2.8284271247461900976;  // 2 sqrt(2)

double padded(const std::vector<double>& v, std::size_t i) {
  return i < v.size() ? v[i] : 0.0;
}

Tripotent partial_sum(const AtomicDecomposition& dec,
                      const FactorDescriptor& f, int count) {
  Element sum = zero_element(f);
  for (int i = 0; i < count; ++i) sum = sum + dec.atoms[i].element;
  return trusted_tripotent(std::move(sum), count);
}

}  // namespace

CheckResult check_minimax(const Element& x, int n, int trials, Rng& rng) {
  const AtomicDecomposition dec = atomic_decompose(x);
  if (n < 1 || n > int(dec.lambdas.size()))
    throw Error(Err::RankMismatch,
                "n = " + std::to_string(n) + " vs " +
                    std::to_string(dec.lambdas.size()) + " atoms");
  const double lam_n = dec.lambdas[n - 1];
  const Tripotent e_star = partial_sum(dec, x.factor, n);
  const Tripotent f_star = partial_sum(dec, x.factor, n - 1);

  CheckResult res;
  res.name = "minimax";
  Digest dg;
  feed_element(dg, x);
  dg.feed(double(n));
  res.inputs_digest = dg.hex();
  res.samples = trials;

  double low_i = 1e300, high_ii = -1e300, high_iii = -1e300, low_iv = 1e300;
  int failures = 0;
  for (int t = 0; t < trials; ++t) {
    try {
      const Tripotent v1 = random_minimal_in_peirce2(e_star, rng);
      low_i = std::min(low_i, seminorm_v(x, v1));

      const Tripotent e = random_tripotent(x.factor, n, rng);
      const Tripotent w = minimax_witness(dec, e, n);
      high_ii = std::max(high_ii, seminorm_v(x, w));

      const Tripotent v3 = random_minimal_in_peirce0(f_star, rng);
      high_iii = std::max(high_iii, seminorm_v(x, v3));

      const Tripotent fr = random_tripotent(x.factor, n - 1, rng);
      const Tripotent v4 = complement_tripotent(e_star, fr);
      low_iv = std::min(low_iv, seminorm_v(x, v4));
    } catch (const Error&) {
      ++failures;
    }
  }
  res.measured["lambda_n"] = lam_n;
  res.record("cert_i_deficit", std::max(0.0, lam_n - low_i), 0.0);
  res.record("cert_ii_excess", std::max(0.0, high_ii - lam_n), 0.0);
  res.record("cert_iii_excess", std::max(0.0, high_iii - lam_n), 0.0);
  res.record("cert_iv_deficit", std::max(0.0, lam_n - low_iv), 0.0);
  res.record("construction_failures", double(failures), 0.0);
  return res;
}

CheckResult check_weyl(const Element& x, const Element& y) {
  require_same_factor(x, y);
  const std::vector<double> lx = singular_values(x);
  const std::vector<double> ly = singular_values(y);
  CheckResult res;
  res.name = "weyl";
  Digest dg;
  feed_element(dg, x);
  feed_element(dg, y);
  res.inputs_digest = dg.hex();
  res.samples = 1;
  double sup = 0;
  for (std::size_t i = 0; i < std::max(lx.size(), ly.size()); ++i)
    sup = std::max(sup, std::abs(padded(lx, i) - padded(ly, i)));
  res.record("sup_lambda_diff", sup, norm(x - y));
  return res;
}

CheckResult check_interlacing(const Element& x, const Tripotent& e) {
  require_same_factor(x, e.element);
  const std::vector<double> lx = singular_values(x);
  CheckResult res;
  res.name = "interlacing";
  Digest dg;
  feed_element(dg, x);
  feed_element(dg, e.element);
  res.inputs_digest = dg.hex();
  res.samples = 1;
  double excess = 0;
  for (const Element& part :
       {apply_peirce2(e.element, x), apply_peirce0(e.element, x)}) {
    const std::vector<double> lp = singular_values(part);
    for (std::size_t i = 0; i < lp.size(); ++i)
      excess = std::max(excess, lp[i] - padded(lx, i));
  }
  res.record("interlacing_excess", excess, 0.0);
  return res;
}

CheckResult check_distance_to_rank(const Element& x, int n, int trials,
                                   Rng& rng) {
  if (n < 1) throw Error(Err::RankMismatch, "n >= 1");
  const AtomicDecomposition dec = atomic_decompose(x);
  const double lam_n = padded(dec.lambdas, n - 1);
  Element trunc = zero_element(x.factor);
  for (int i = 0; i + 1 < n && i < int(dec.lambdas.size()); ++i)
    trunc = trunc + cplx(dec.lambdas[i], 0) * dec.atoms[i].element;

  CheckResult res;
  res.name = "distance_to_rank";
  Digest dg;
  feed_element(dg, x);
  dg.feed(double(n));
  res.inputs_digest = dg.hex();
  res.samples = trials;

  res.record("truncation_error", std::abs(norm(x - trunc) - lam_n), 0.0);

  const double lam_1 = padded(dec.lambdas, 0);
  double best_probe = 1e300;
  for (int t = 0; t < trials; ++t) {
    const int maxk = std::min(n - 1, x.factor.max_rank());
    const int k = maxk == 0 ? 0 : int(rng.next_u64() % std::uint64_t(maxk + 1));
    Element a = zero_element(x.factor);
    if (k > 0) {
      const std::vector<Tripotent> mins =
          random_orthogonal_minimals(x.factor, k, rng);
      for (const Tripotent& m : mins)
        a = a + cplx(rng.uniform(0.0, 1.5 * lam_1 + 0.1), 0) * m.element;
    }
    best_probe = std::min(best_probe, norm(x - a));
  }
  res.record("probe_deficit", std::max(0.0, lam_n - best_probe), 0.0);
  res.measured["best_probe_distance"] = best_probe;
  res.measured["lambda_n"] = lam_n;
  return res;
}

CheckResult check_kyfan(const Element& x, int n, double p, int trials,
                        Rng& rng) {
  if (p < 1.0) throw Error(Err::BadExponent, "p >= 1 required");
  const AtomicDecomposition dec = atomic_decompose(x);
  if (n < 1 || n > int(dec.lambdas.size()))
    throw Error(Err::RankMismatch, "n beyond atom count");

  double sum_p = 0, sum_2 = 0;
  for (int i = 0; i < n; ++i) {
    sum_p += std::pow(dec.lambdas[i], p);
    sum_2 += dec.lambdas[i] * dec.lambdas[i];
  }
  const double target = std::pow(sum_p, 1.0 / p);
  const double target2 = std::sqrt(sum_2);
  // Frame values in U2(v_1+..+v_n) carry a fixed 2-seminorm budget; the
  // p-value then ranges between the lambda configuration and the
  // equidistributed one. For p <= 2 that interval is
  // [(sum lambda^p)^(1/p), n^(1/p - 1/2) (sum lambda^2)^(1/2)]; the two
  // endpoints swap roles for p > 2.
  const double equi = std::pow(double(n), 1.0 / p) / std::sqrt(double(n)) *
                      target2;
  const double frame_lo = std::min(target, equi);
  const double frame_hi = std::max(target, equi);

  const Tripotent e_star = partial_sum(dec, x.factor, n);
  std::vector<Tripotent> canonical(dec.atoms.begin(), dec.atoms.begin() + n);

  CheckResult res;
  res.name = "kyfan";
  Digest dg;
  feed_element(dg, x);
  dg.feed(double(n));
  dg.feed(p);
  res.inputs_digest = dg.hex();
  res.samples = trials;

  res.record("canonical_error",
             std::abs(seminorm_p(x, canonical, p) - target), 0.0);

  double below = 0, above = 0, fam_excess = 0;
  double min2 = target2, max2 = target2;
  int failures = 0;
  for (int t = 0; t < trials; ++t) {
    try {
      const std::vector<Tripotent> fr = random_frame_in_peirce2(e_star, rng);
      const double val = seminorm_p(x, fr, p);
      below = std::max(below, frame_lo - val);
      above = std::max(above, val - frame_hi);
      const double val2 = seminorm_p(x, fr, 2.0);
      min2 = std::min(min2, val2);
      max2 = std::max(max2, val2);

      const Tripotent e = random_tripotent(x.factor, n, rng);
      const std::vector<Tripotent> fam = witness_family(dec, e, n);
      fam_excess =
          std::max(fam_excess, seminorm_p(x, fam, p) - target);
    } catch (const Error&) {
      ++failures;
    }
  }
  res.record("frame_below_lower", std::max(0.0, below), 0.0);
  res.record("frame_above_upper", std::max(0.0, above), 0.0);
  res.record("p2_spread", max2 - min2, 0.0);
  res.record("family_excess", std::max(0.0, fam_excess), 0.0);
  res.record("construction_failures", double(failures), 0.0);
  res.measured["target"] = target;
  res.measured["frame_lower"] = frame_lo;
  res.measured["frame_upper"] = frame_hi;
  return res;
}

RMat stochastic_matrix(const Frame& vs, const Frame& us) {
  if (vs.tripotents.size() != us.tripotents.size() || vs.tripotents.empty())
    throw Error(Err::FrameMismatch, "frames of different size");
  const int k = int(vs.tripotents.size());
  const FactorDescriptor& f = vs.tripotents[0].factor();
  Element ev = zero_element(f), eu = zero_element(f);
  for (const Tripotent& t : vs.tripotents) ev = ev + t.element;
  for (const Tripotent& t : us.tripotents) eu = eu + t.element;
  const double scale = 1.0 + norm(ev) + norm(eu);
  if (norm(apply_peirce2(ev, eu) - eu) > 1e-7 * scale ||
      norm(apply_peirce2(eu, ev) - ev) > 1e-7 * scale)
    throw Error(Err::FrameMismatch, "frames span different Peirce algebras");
  RMat a(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const double s = seminorm_v(vs.tripotents[i].element, us.tripotents[j]);
      a(i, j) = s * s;
    }
  return a;
}

CheckResult check_tripotent_distance(const Tripotent& e, const Tripotent& f) {
  require_same_factor(e.element, f.element);
  CheckResult res;
  res.name = "tripotent_distance";
  Digest dg;
  feed_element(dg, e.element);
  feed_element(dg, f.element);
  res.inputs_digest = dg.hex();
  res.samples = 1;

  const double delta = norm(e.element - apply_peirce2(e.element, f.element));
  const double tdelta = norm(f.element - apply_peirce2(f.element, e.element));
  res.measured["delta"] = delta;
  res.measured["delta_tilde"] = tdelta;
  res.record("p1_of_f", norm(apply_peirce1(e.element, f.element)),
             kSqrt8 * std::sqrt(delta));
  res.record("p0f_of_e", norm(apply_peirce0(f.element, e.element)),
             8.0 * delta + 8.0 * kSqrt8 * std::sqrt(delta));
  res.record("distance", norm(e.element - f.element),
             delta + kSqrt8 * std::sqrt(delta) + 8.0 * tdelta +
                 8.0 * kSqrt8 * std::sqrt(tdelta));
  if (e.rank == f.rank && e.rank > 0)
    res.record("same_rank_distance", norm(e.element - f.element),
               (e.rank + 1) * delta + kSqrt8 * std::sqrt(delta));
  return res;
}

CheckResult check_peirce_continuity(const Tripotent& e, const Tripotent& f,
                                    const Element* x) {
  require_same_factor(e.element, f.element);
  CheckResult res;
  res.name = "peirce_continuity";
  Digest dg;
  feed_element(dg, e.element);
  feed_element(dg, f.element);
  if (x != nullptr) feed_element(dg, *x);
  res.inputs_digest = dg.hex();
  res.samples = 1;

  const double delta = norm(e.element - f.element);
  res.measured["delta"] = delta;
  const PeirceSystem pe = peirce(e), pf = peirce(f);
  res.record("dP2", op_norm(pe.p2 - pf.p2), 4.0 * delta);
  res.record("dP1", op_norm(pe.p1 - pf.p1), 12.0 * delta);
  res.record("dP0", op_norm(pe.p0 - pf.p0), 8.0 * delta);

  const std::array<const RealLinearMap*, 3> me{&pe.p2, &pe.p1, &pe.p0};
  const std::array<const RealLinearMap*, 3> mf{&pf.p2, &pf.p1, &pf.p0};
  const char* tag[3] = {"2", "1", "0"};
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 3; ++j) {
      if (k == j) continue;
      res.record(std::string("cross_Pe") + tag[k] + "_Pf" + tag[j],
                 op_norm(RMat(me[k]->m * mf[j]->m)), 8.0 * delta);
      res.record(std::string("cross_Pf") + tag[k] + "_Pe" + tag[j],
                 op_norm(RMat(mf[k]->m * me[j]->m)), 8.0 * delta);
    }

  if (x != nullptr) {
    const double facecheck =
        norm(*x - (e.element + apply_peirce0(e.element, *x)));
    if (std::abs(norm(*x) - 1.0) > 1e-6 || facecheck > 1e-6)
      throw Error(Err::ConfigError, "x must be norm-one with x = e + P0(e)x");
    res.record("x_p1f", norm(apply_peirce1(f.element, *x)), 9.0 * delta);
    res.record("x_p2f", norm(apply_peirce2(f.element, *x) - f.element),
               9.0 * delta);
    res.record("x_face", norm(*x - (f.element + apply_peirce0(f.element, *x))),
               9.0 * delta);
  }
  return res;
}

namespace {

struct SelfAdjointEig {
  std::vector<double> evals;                 // descending
  std::vector<Element> projections;          // rank-one, aligned with evals
};

SelfAdjointEig selfadjoint_eig(const Element& a) {
  const FactorDescriptor& f = a.factor;
  SelfAdjointEig out;
  if (f.kind == FactorKind::Type3) {
    double imag = 0;
    for (const auto& v : a.data.a) imag = std::max(imag, std::abs(v.imag()));
    if (imag > 1e-8 * (1.0 + max_abs(a.data)))
      throw Error(Err::ConfigError, "type3 selfadjoint means real symmetric");
    RMat re(f.n, f.n);
    for (int i = 0; i < f.n; ++i)
      for (int j = 0; j < f.n; ++j) re(i, j) = a.data(i, j).real();
    const SymEig eig = sym_eig(re);
    for (int r = 0; r < f.n; ++r) {
      out.evals.push_back(eig.values[r]);
      CMat proj(f.n, f.n);
      for (int i = 0; i < f.n; ++i)
        for (int j = 0; j < f.n; ++j)
          proj(i, j) = eig.vectors(r, i) * eig.vectors(r, j);
      out.projections.push_back(Element{f, std::move(proj)});
    }
    return out;
  }
  if (f.kind == FactorKind::Type1 && f.rows == f.cols) {
    const double herm = op_norm(CMat(a.data - adjoint(a.data)));
    if (herm > 1e-8 * (1.0 + max_abs(a.data)))
      throw Error(Err::ConfigError, "type1 selfadjoint means hermitian");
    const HEig eig = heig(a.data);
    for (int r = 0; r < f.rows; ++r) {
      out.evals.push_back(eig.values[r]);
      CMat proj(f.rows, f.rows);
      for (int i = 0; i < f.rows; ++i)
        for (int j = 0; j < f.rows; ++j)
          proj(i, j) = eig.vectors(i, r) * std::conj(eig.vectors(j, r));
      out.projections.push_back(Element{f, std::move(proj)});
    }
    return out;
  }
  throw Error(Err::UnsupportedFactor,
              "selfadjoint calculus needs type3 or square type1");
}

Element spectral_window(const SelfAdjointEig& eig, const FactorDescriptor& f,
                        double lo, double hi, int* count) {
  Element p = zero_element(f);
  int m = 0;
  for (std::size_t i = 0; i < eig.evals.size(); ++i)
    if (eig.evals[i] >= lo && eig.evals[i] <= hi) {
      p = p + eig.projections[i];
      ++m;
    }
  if (count != nullptr) *count = m;
  return p;
}

}  // namespace

CheckResult davis_pair(const Element& a, const Element& b, double nu,
                       double mu, double gamma) {
  require_same_factor(a, b);
  if (gamma <= 0 || nu > mu) throw Error(Err::ConfigError, "bad window");
  const SelfAdjointEig ea = selfadjoint_eig(a);
  for (const double v : ea.evals) {
    const bool in_lower = v > nu - gamma + 1e-12 && v < nu - 1e-12;
    const bool in_upper = v > mu + 1e-12 && v < mu + gamma - 1e-12;
    if (in_lower || in_upper)
      throw Error(Err::MarginViolation,
                  "eigenvalue " + std::to_string(v) + " inside margin");
  }
  const double delta = norm(a - b);
  if (delta >= gamma / 2)
    throw Error(Err::DeltaTooLarge, "||a-b|| = " + std::to_string(delta));

  const SelfAdjointEig eb = selfadjoint_eig(b);
  int mp = 0, mq = 0;
  const Element p = spectral_window(ea, a.factor, nu, mu, &mp);
  const Element q = spectral_window(eb, a.factor, nu - delta, mu + delta, &mq);

  CheckResult res;
  res.name = "davis";
  Digest dg;
  feed_element(dg, a);
  feed_element(dg, b);
  dg.feed(nu);
  dg.feed(mu);
  dg.feed(gamma);
  res.inputs_digest = dg.hex();
  res.samples = 1;

  const double beta = 0.5 * (mu - nu);
  const double alpha = (beta + delta) * (beta + delta) /
                       ((beta + gamma - delta) * (beta + gamma - delta));
  res.measured["beta"] = beta;
  res.measured["delta"] = delta;
  res.measured["rank_p"] = mp;
  res.measured["alpha"] = alpha;
  const double defect = norm(p - apply_peirce2(p, q));
  res.record("p2_defect", defect, alpha);
  if (alpha > 0) res.measured["tightness"] = defect / alpha;  // documentation
  // identity ||p - P2(p)q|| = ||P2(p)(1 - q)||, 1 the unit of the algebra
  {
    Element unit = zero_element(a.factor);
    for (int i = 0; i < unit.data.rows; ++i) unit.data(i, i) = 1;
    res.record("unit_form_identity",
               std::abs(norm(apply_peirce2(p, unit - q)) -
                        norm(p - apply_peirce2(p, q))),
               0.0);
  }
  res.record("rank_diff", std::abs(double(mp - mq)), 0.0);
  if (mp == mq && mp > 0)
    res.record("distance", norm(p - q),
               (mp + 1) * alpha + kSqrt8 * std::sqrt(alpha));
  return res;
}

namespace {

// largest t with (m+1) h(t) + 2 sqrt(2) sqrt(h(t)) <= eps
double solve_budget(const std::function<double(double)>& h, int m, double eps,
                    double tmax) {
  auto g = [&](double t) {
    const double ht = h(t);
    return (m + 1) * ht + kSqrt8 * std::sqrt(ht) - eps;
  };
  double hi = tmax;
  if (g(hi) <= 0) return hi;
  double lo = 0.0;
  for (int it = 0; it < 500; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) <= 0)
      lo = mid;
    else
      hi = mid;
    if (lo > 0 && hi - lo <= 1e-12 * hi) break;
  }
  if (lo == 0.0) {
    // the budget root sits below the double range; any positive admissible
    // value still satisfies every schedule constraint
    constexpr double tiny = 2.2250738585072014e-308;
    if (g(tiny) <= 0) return tiny;
    throw Error(Err::DegenerateGap, "budget infeasible at the double floor");
  }
  return lo;
}

struct Schedule {
  double delta;
  std::vector<double> audit;  // flattened (level, t_k, h_k(t_k), delta_k)
};

Schedule schedule_recurse(const std::vector<double>& sigma,
                          const std::vector<int>& mult, int n, double eps) {
  const double s1 = sigma[0];
  const double s_n = sigma[n - 1];
  const double s_next = n < int(sigma.size()) ? sigma[n] : 0.0;
  double gap_n = 1e300;
  for (int i = 0; i < n; ++i) {
    const double next = i + 1 < int(sigma.size()) ? sigma[i + 1] : 0.0;
    gap_n = std::min(gap_n, sigma[i] - next);
  }
  if (gap_n <= tol::gap_rel * s1)
    throw Error(Err::DegenerateGap, "gap " + std::to_string(gap_n));

  if (n == 1) {
    const int m1 = mult[0];
    auto h = [&](double t) {
      return 2.0 * t / s1 +
             4.0 * std::sqrt(2.0) * std::sqrt(t * t + 4.0 * t * s1) /
                 (std::sqrt(3.0) * (s1 - s_next));
    };
    const double t1 = solve_budget(h, m1, eps, s1);
    Schedule out;
    out.delta = (1.0 - 1e-6) * std::min(gap_n / 4.0, t1);
    out.audit = {1.0, t1, h(t1), out.delta};
    return out;
  }

  auto hn = [&](double t) {
    const double u = 6.0 * t * s1;
    return 7.0 * t * s1 / s_n +
           4.0 * std::sqrt(2.0) * std::sqrt(u * u + 4.0 * u * s_n * s_n) /
               (s_n * std::sqrt(3.0) * (s_n - s_next));
  };
  const int mn = mult[n - 1];
  const double tn = solve_budget(hn, mn, eps, s1);
  if (tn <= 0) throw Error(Err::DegenerateGap, "schedule collapsed to zero");
  // induction budget: the previous resolutions must move by at most t_n in
  // total, so each of the n-1 gets an equal share
  Schedule prev = schedule_recurse(sigma, mult, n - 1, tn / double(n - 1));
  Schedule out;
  out.delta = (1.0 - 1e-6) *
              std::min({gap_n / 4.0, tn * s1, 6.0 * tn * s1 / s_n, prev.delta});
  out.audit = std::move(prev.audit);
  out.audit.insert(out.audit.end(), {double(n), tn, hn(tn), out.delta});
  return out;
}

}  // namespace

PerturbationTrial continuity_delta(const Element& x, int n, double epsilon) {
  if (n < 1 || epsilon <= 0) throw Error(Err::ConfigError, "bad n or epsilon");
  const SpectralDecomposition sd = spectral_decompose(x);
  if (n > int(sd.sigmas.size()))
    throw Error(Err::RankMismatch, "fewer than n distinct singular values");
  const Schedule sched =
      schedule_recurse(sd.sigmas, sd.multiplicities, n, epsilon);
  PerturbationTrial trial;
  trial.x = x;
  trial.y = x;
  trial.n = n;
  trial.delta = sched.delta;
  trial.epsilon_target = epsilon;
  for (int i = 0; i < n; ++i) {
    const double next = i + 1 < int(sd.sigmas.size()) ? sd.sigmas[i + 1] : 0.0;
    trial.gaps.push_back(sd.sigmas[i] - next);
  }
  trial.h_values = sched.audit;
  return trial;
}

CheckResult check_spectral_continuity(const Element& x, int n, double epsilon,
                                      int trials, Rng& rng) {
  const PerturbationTrial sched = continuity_delta(x, n, epsilon);
  const SpectralDecomposition sx = spectral_decompose(x);
  CheckResult res;
  res.name = "spectral_continuity";
  Digest dg;
  feed_element(dg, x);
  dg.feed(double(n));
  dg.feed(epsilon);
  res.inputs_digest = dg.hex();
  res.samples = trials;
  res.measured["delta"] = sched.delta;

  double worst = 0;
  int rank_failures = 0;
  for (int t = 0; t < trials; ++t) {
    const Element g = gaussian_element(x.factor, rng);
    const double scale = rng.uniform(0.1, 0.8) * sched.delta / norm(g);
    const Element y = x + cplx(scale, 0) * g;
    for (int i = 0; i < n; ++i) {
      const Tripotent fi = spectral_resolution(
          y, sx.sigmas[i] - sched.delta, sx.sigmas[i] + sched.delta);
      if (fi.rank != sx.multiplicities[i]) {
        ++rank_failures;
        continue;
      }
      worst = std::max(worst, norm(sx.resolutions[i].element - fi.element));
    }
  }
  res.record("resolution_distance", worst, epsilon);
  res.record("rank_failures", double(rank_failures), 0.0);
  return res;
}

CheckResult support_perturbation_bound(const Element& x, const Element& y) {
  require_same_factor(x, y);
  const Tripotent s = support_tripotent(x, true);
  const double gamma = 1.0 - norm(x - s.element);
  const double delta = norm(x - y);
  if (delta >= gamma / 4.0)
    throw Error(Err::DeltaTooLarge,
                "delta " + std::to_string(delta) + " vs gamma/4");

  CheckResult res;
  res.name = "support_perturbation";
  Digest dg;
  feed_element(dg, x);
  feed_element(dg, y);
  res.inputs_digest = dg.hex();
  res.samples = 1;
  res.measured["gamma"] = gamma;
  res.measured["delta"] = delta;

  const double hi = std::max(norm(y), 1.0) + std::max(delta, 1e-3) + 0.5;
  const Tripotent f =
      spectral_resolution(y, 1.0 - delta - gamma / 8.0, hi);
  const double big =
      2.0 * delta + 4.0 * std::sqrt(2.0) *
                        std::sqrt(delta * delta + 4.0 * delta) /
                        (std::sqrt(3.0) * gamma);
  const double bound = (s.rank + 1) * big + kSqrt8 * std::sqrt(big);
  const double dist = norm(s.element - f.element);
  res.record("support_distance", dist, bound);
  if (bound > 0) res.measured["tightness"] = dist / bound;  // documentation
  res.record("rank_diff", std::abs(double(s.rank - f.rank)), 0.0);
  return res;
}

}  // namespace jbt

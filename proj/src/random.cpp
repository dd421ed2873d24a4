#include "jbt/random.hpp"

#include <cmath>

namespace jbt {

namespace {

std::uint64_t splitmix64(std::uint64_t& s) {
  s += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (const char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

std::uint64_t Rng::next_u64() { return splitmix64(state); }

double Rng::uniform() {
  return double(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

double Rng::normal() {
  // Box-Muller, explicit so the stream is identical everywhere
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
}

cplx Rng::cnormal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

Rng make_rng(std::uint64_t seed) {
  Rng r;
  r.state = seed ^ 0xd1b54a32d192ed03ull;
  (void)r.next_u64();
  return r;
}

Rng substream(std::uint64_t master, std::string_view suite,
              std::uint64_t index) {
  std::uint64_t s = master;
  const std::uint64_t a = splitmix64(s);
  std::uint64_t mix = a ^ fnv1a(suite);
  const std::uint64_t b = splitmix64(mix);
  std::uint64_t c = b ^ (index * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull);
  (void)splitmix64(c);
  return make_rng(c);
}

Element gaussian_element(const FactorDescriptor& f, Rng& rng) {
  const auto [r, c] = f.shape();
  CMat m(r, c);
  for (auto& v : m.a) v = rng.cnormal();
  if (f.kind == FactorKind::Type2) m = cplx(0.5, 0) * (m - transpose(m));
  if (f.kind == FactorKind::Type3) m = cplx(0.5, 0) * (m + transpose(m));
  return Element{f, std::move(m)};
}

CMat haar_cols(int n, int k, Rng& rng) {
  if (k > n) throw Error(Err::Internal, "haar_cols k > n");
  CMat q(n, k);
  for (int j = 0; j < k; ++j) {
    std::vector<cplx> z(n);
    for (;;) {
      for (auto& v : z) v = rng.cnormal();
      for (int pass = 0; pass < 2; ++pass)
        for (int jj = 0; jj < j; ++jj) {
          cplx proj = 0;
          for (int i = 0; i < n; ++i) proj += z[i] * std::conj(q(i, jj));
          for (int i = 0; i < n; ++i) z[i] -= proj * q(i, jj);
        }
      double nrm = 0;
      for (const auto& v : z) nrm += std::norm(v);
      nrm = std::sqrt(nrm);
      if (nrm > 1e-6) {
        for (int i = 0; i < n; ++i) q(i, j) = z[i] / nrm;
        break;
      }
    }
  }
  return q;
}

namespace {

std::vector<double> haar_real_unit(int n, Rng& rng, const double* avoid) {
  for (;;) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.normal();
    if (avoid != nullptr) {
      double ip = 0;
      for (int i = 0; i < n; ++i) ip += v[i] * avoid[i];
      for (int i = 0; i < n; ++i) v[i] -= ip * avoid[i];
    }
    double nrm = 0;
    for (const double x : v) nrm += x * x;
    nrm = std::sqrt(nrm);
    if (nrm > 1e-6) {
      for (auto& x : v) x /= nrm;
      return v;
    }
  }
}

Tripotent spin_minimal_from(const std::vector<double>& a,
                            const std::vector<double>& b,
                            const FactorDescriptor& f) {
  CMat m(f.dim, 1);
  for (int i = 0; i < f.dim; ++i) m(i, 0) = 0.5 * cplx(a[i], b[i]);
  return trusted_tripotent(Element{f, std::move(m)}, 1);
}

}  // namespace

std::vector<Tripotent> random_orthogonal_minimals(const FactorDescriptor& f,
                                                  int k, Rng& rng) {
  if (k < 0 || k > f.max_rank())
    throw Error(Err::RankMismatch,
                "rank " + std::to_string(k) + " in " + f.str());
  std::vector<Tripotent> out;
  if (k == 0) return out;
  switch (f.kind) {
    case FactorKind::Type1: {
      const CMat a = haar_cols(f.rows, k, rng);
      const CMat b = haar_cols(f.cols, k, rng);
      for (int j = 0; j < k; ++j) {
        CMat m(f.rows, f.cols);
        for (int r = 0; r < f.rows; ++r)
          for (int c = 0; c < f.cols; ++c)
            m(r, c) = a(r, j) * std::conj(b(c, j));
        out.push_back(trusted_tripotent(Element{f, std::move(m)}, 1));
      }
      break;
    }
    case FactorKind::Type3: {
      const CMat a = haar_cols(f.n, k, rng);
      for (int j = 0; j < k; ++j) {
        CMat m(f.n, f.n);
        for (int r = 0; r < f.n; ++r)
          for (int c = 0; c < f.n; ++c) m(r, c) = a(r, j) * a(c, j);
        out.push_back(trusted_tripotent(Element{f, std::move(m)}, 1));
      }
      break;
    }
    case FactorKind::Type2: {
      const CMat cbasis = haar_cols(f.n, 2 * k, rng);
      for (int j = 0; j < k; ++j) {
        CMat m(f.n, f.n);
        for (int r = 0; r < f.n; ++r)
          for (int s = 0; s < f.n; ++s)
            m(r, s) = cbasis(r, 2 * j) * cbasis(s, 2 * j + 1) -
                      cbasis(r, 2 * j + 1) * cbasis(s, 2 * j);
        out.push_back(trusted_tripotent(Element{f, std::move(m)}, 1));
      }
      break;
    }
    case FactorKind::Spin: {
      const std::vector<double> a = haar_real_unit(f.dim, rng, nullptr);
      const std::vector<double> b = haar_real_unit(f.dim, rng, a.data());
      out.push_back(spin_minimal_from(a, b, f));
      if (k == 2) {
        // the orthogonal partner of u = (a+ib)/2 is a phase times conj(u)
        const double phi = rng.uniform(0.0, 6.283185307179586477);
        const Element u2 =
            cplx(std::cos(phi), std::sin(phi)) * conj_element(out[0].element);
        out.push_back(trusted_tripotent(u2, 1));
      }
      break;
    }
  }
  return out;
}

Tripotent random_minimal(const FactorDescriptor& f, Rng& rng) {
  return random_orthogonal_minimals(f, 1, rng)[0];
}

Tripotent random_tripotent(const FactorDescriptor& f, int rank, Rng& rng) {
  if (rank == 0) return Tripotent{zero_element(f), 0, false};
  const std::vector<Tripotent> mins = random_orthogonal_minimals(f, rank, rng);
  Element sum = mins[0].element;
  for (int i = 1; i < rank; ++i) sum = sum + mins[i].element;
  return trusted_tripotent(std::move(sum), rank);
}

Tripotent random_minimal_in_peirce2(const Tripotent& e, Rng& rng) {
  const FactorDescriptor& f = e.factor();
  if (e.rank == 0) throw Error(Err::RankMismatch, "U2(0) is trivial");
  if (f.kind == FactorKind::Spin) {
    if (e.rank == 2) return random_minimal(f, rng);
    const double phi = rng.uniform(0.0, 6.283185307179586477);
    return trusted_tripotent(
        cplx(std::cos(phi), std::sin(phi)) * e.element, 1);
  }
  const TripotentSpans sp = tripotent_spans(e);
  const int k = sp.col.cols;
  switch (f.kind) {
    case FactorKind::Type1: {
      const CMat wa = haar_cols(k, 1, rng);
      const CMat wb = haar_cols(k, 1, rng);
      CMat m(f.rows, f.cols);
      std::vector<cplx> a(f.rows, 0), b(f.cols, 0);
      for (int i = 0; i < f.rows; ++i)
        for (int j = 0; j < k; ++j) a[i] += sp.col(i, j) * wa(j, 0);
      for (int i = 0; i < f.cols; ++i)
        for (int j = 0; j < k; ++j) b[i] += sp.row(i, j) * wb(j, 0);
      for (int r = 0; r < f.rows; ++r)
        for (int c = 0; c < f.cols; ++c) m(r, c) = a[r] * std::conj(b[c]);
      return trusted_tripotent(Element{f, std::move(m)}, 1);
    }
    case FactorKind::Type3: {
      const CMat w = haar_cols(k, 1, rng);
      std::vector<cplx> a(f.n, 0);
      for (int i = 0; i < f.n; ++i)
        for (int j = 0; j < k; ++j) a[i] += sp.col(i, j) * w(j, 0);
      CMat m(f.n, f.n);
      for (int r = 0; r < f.n; ++r)
        for (int c = 0; c < f.n; ++c) m(r, c) = a[r] * a[c];
      return trusted_tripotent(Element{f, std::move(m)}, 1);
    }
    case FactorKind::Type2: {
      const CMat w = haar_cols(k, 2, rng);  // k = 2 * rank(e)
      std::vector<cplx> a(f.n, 0), b(f.n, 0);
      for (int i = 0; i < f.n; ++i)
        for (int j = 0; j < k; ++j) {
          a[i] += sp.col(i, j) * w(j, 0);
          b[i] += sp.col(i, j) * w(j, 1);
        }
      CMat m(f.n, f.n);
      for (int r = 0; r < f.n; ++r)
        for (int s = 0; s < f.n; ++s)
          m(r, s) = a[r] * b[s] - b[r] * a[s];
      return trusted_tripotent(Element{f, std::move(m)}, 1);
    }
    default:
      throw Error(Err::Internal, "unreachable");
  }
}

Tripotent random_minimal_in_peirce0(const Tripotent& e, Rng& rng) {
  const FactorDescriptor& f = e.factor();
  if (e.rank == 0) return random_minimal(f, rng);
  if (f.kind == FactorKind::Spin) {
    if (e.rank >= 2) throw Error(Err::RankMismatch, "U0 is trivial");
    const double phi = rng.uniform(0.0, 6.283185307179586477);
    return trusted_tripotent(
        cplx(std::cos(phi), std::sin(phi)) * conj_element(e.element), 1);
  }
  const TripotentSpans sp = tripotent_spans(e);
  const auto [rows, cols] = f.shape();
  const CMat ca = orthonormal_within(CMat::identity(rows), sp.col,
                                     rows - sp.col.cols);
  const CMat cb = orthonormal_within(CMat::identity(cols), sp.row,
                                     cols - sp.row.cols);
  // a haar minimal built inside the complement spans
  switch (f.kind) {
    case FactorKind::Type1: {
      const CMat wa = haar_cols(ca.cols, 1, rng);
      const CMat wb = haar_cols(cb.cols, 1, rng);
      CMat m(f.rows, f.cols);
      std::vector<cplx> a(f.rows, 0), b(f.cols, 0);
      for (int i = 0; i < f.rows; ++i)
        for (int j = 0; j < ca.cols; ++j) a[i] += ca(i, j) * wa(j, 0);
      for (int i = 0; i < f.cols; ++i)
        for (int j = 0; j < cb.cols; ++j) b[i] += cb(i, j) * wb(j, 0);
      for (int r = 0; r < f.rows; ++r)
        for (int c = 0; c < f.cols; ++c) m(r, c) = a[r] * std::conj(b[c]);
      return trusted_tripotent(Element{f, std::move(m)}, 1);
    }
    case FactorKind::Type3: {
      const CMat w = haar_cols(ca.cols, 1, rng);
      std::vector<cplx> a(f.n, 0);
      for (int i = 0; i < f.n; ++i)
        for (int j = 0; j < ca.cols; ++j) a[i] += ca(i, j) * w(j, 0);
      CMat m(f.n, f.n);
      for (int r = 0; r < f.n; ++r)
        for (int c = 0; c < f.n; ++c) m(r, c) = a[r] * a[c];
      return trusted_tripotent(Element{f, std::move(m)}, 1);
    }
    case FactorKind::Type2: {
      if (ca.cols < 2) throw Error(Err::RankMismatch, "U0 too small");
      const CMat w = haar_cols(ca.cols, 2, rng);
      std::vector<cplx> a(f.n, 0), b(f.n, 0);
      for (int i = 0; i < f.n; ++i)
        for (int j = 0; j < ca.cols; ++j) {
          a[i] += ca(i, j) * w(j, 0);
          b[i] += ca(i, j) * w(j, 1);
        }
      CMat m(f.n, f.n);
      for (int r = 0; r < f.n; ++r)
        for (int s = 0; s < f.n; ++s) m(r, s) = a[r] * b[s] - b[r] * a[s];
      return trusted_tripotent(Element{f, std::move(m)}, 1);
    }
    default:
      throw Error(Err::Internal, "unreachable");
  }
}

std::vector<Tripotent> random_frame_in_peirce2(const Tripotent& e, Rng& rng) {
  const FactorDescriptor& f = e.factor();
  const int k = e.rank;
  std::vector<Tripotent> frame;
  if (k == 0) return frame;
  if (f.kind == FactorKind::Spin) {
    if (k == 1) {
      const double phi = rng.uniform(0.0, 6.283185307179586477);
      frame.push_back(trusted_tripotent(
          cplx(std::cos(phi), std::sin(phi)) * e.element, 1));
      return frame;
    }
    return random_orthogonal_minimals(f, 2, rng);
  }
  const TripotentSpans sp = tripotent_spans(e);
  switch (f.kind) {
    case FactorKind::Type1: {
      const CMat wa = haar_cols(k, k, rng), wb = haar_cols(k, k, rng);
      for (int j = 0; j < k; ++j) {
        std::vector<cplx> a(f.rows, 0), b(f.cols, 0);
        for (int i = 0; i < f.rows; ++i)
          for (int t = 0; t < k; ++t) a[i] += sp.col(i, t) * wa(t, j);
        for (int i = 0; i < f.cols; ++i)
          for (int t = 0; t < k; ++t) b[i] += sp.row(i, t) * wb(t, j);
        CMat m(f.rows, f.cols);
        for (int r = 0; r < f.rows; ++r)
          for (int c = 0; c < f.cols; ++c) m(r, c) = a[r] * std::conj(b[c]);
        frame.push_back(trusted_tripotent(Element{f, std::move(m)}, 1));
      }
      return frame;
    }
    case FactorKind::Type3: {
      const CMat w = haar_cols(k, k, rng);
      for (int j = 0; j < k; ++j) {
        std::vector<cplx> a(f.n, 0);
        for (int i = 0; i < f.n; ++i)
          for (int t = 0; t < k; ++t) a[i] += sp.col(i, t) * w(t, j);
        CMat m(f.n, f.n);
        for (int r = 0; r < f.n; ++r)
          for (int c = 0; c < f.n; ++c) m(r, c) = a[r] * a[c];
        frame.push_back(trusted_tripotent(Element{f, std::move(m)}, 1));
      }
      return frame;
    }
    case FactorKind::Type2: {
      const int s2 = sp.col.cols;  // 2k
      const CMat w = haar_cols(s2, s2, rng);
      for (int j = 0; j < k; ++j) {
        std::vector<cplx> a(f.n, 0), b(f.n, 0);
        for (int i = 0; i < f.n; ++i)
          for (int t = 0; t < s2; ++t) {
            a[i] += sp.col(i, t) * w(t, 2 * j);
            b[i] += sp.col(i, t) * w(t, 2 * j + 1);
          }
        CMat m(f.n, f.n);
        for (int r = 0; r < f.n; ++r)
          for (int s = 0; s < f.n; ++s) m(r, s) = a[r] * b[s] - b[r] * a[s];
        frame.push_back(trusted_tripotent(Element{f, std::move(m)}, 1));
      }
      return frame;
    }
    default:
      throw Error(Err::Internal, "unreachable");
  }
}

Element random_element(const FactorDescriptor& f, const RandomModel& model,
                       Rng& rng) {
  const int r = f.max_rank();
  std::vector<double> lam(r);
  if (model.law == RandomModel::Law::UniformGap) {
    if (model.min_gap <= 0)
      throw Error(Err::UnsatisfiableModel, "min_gap must be positive");
    lam[r - 1] = rng.uniform(0.1, 0.5);
    for (int i = r - 2; i >= 0; --i)
      lam[i] = lam[i + 1] + model.min_gap + rng.uniform(0.0, 0.5);
  } else {
    if (model.k < 1 || model.k > r)
      throw Error(Err::UnsatisfiableModel,
                  "cluster multiplicity " + std::to_string(model.k) + " in " +
                      f.str() + " of rank " + std::to_string(r));
    if (model.gap <= 0)
      throw Error(Err::UnsatisfiableModel, "gap must be positive");
    const int below = r - model.k;
    const double drop = below * model.gap;
    if (drop >= 0.99)
      throw Error(Err::UnsatisfiableModel, "gaps exceed the unit scale");
    for (int i = 0; i < model.k; ++i) lam[i] = 1.0;
    const double slack = below > 0 ? (0.99 - drop) / below : 0.0;
    for (int i = model.k; i < r; ++i)
      lam[i] = lam[i - 1] - model.gap - rng.uniform(0.0, slack);
  }
  const std::vector<Tripotent> mins = random_orthogonal_minimals(f, r, rng);
  Element x = zero_element(f);
  for (int i = 0; i < r; ++i) x = x + cplx(lam[i], 0) * mins[i].element;
  return x;
}

}  // namespace jbt

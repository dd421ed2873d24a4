#include "jbt/factor.hpp"

#include <cmath>
#include <cstdio>

#include "jbt/linalg.hpp"

namespace jbt {

const char* err_name(Err e) {
  switch (e) {
    case Err::ShapeMismatch: return "ShapeMismatch";
    case Err::MembershipViolation: return "MembershipViolation";
    case Err::FactorMismatch: return "FactorMismatch";
    case Err::NotATripotent: return "NotATripotent";
    case Err::NotMinimal: return "NotMinimal";
    case Err::ZeroElement: return "ZeroElement";
    case Err::UnsupportedFactor: return "UnsupportedFactor";
    case Err::RankOrderViolation: return "RankOrderViolation";
    case Err::RankMismatch: return "RankMismatch";
    case Err::NotOrthogonal: return "NotOrthogonal";
    case Err::BadExponent: return "BadExponent";
    case Err::NotNormOne: return "NotNormOne";
    case Err::BoundaryCollision: return "BoundaryCollision";
    case Err::FrameMismatch: return "FrameMismatch";
    case Err::MarginViolation: return "MarginViolation";
    case Err::DeltaTooLarge: return "DeltaTooLarge";
    case Err::DegenerateGap: return "DegenerateGap";
    case Err::DeltaExceeded: return "DeltaExceeded";
    case Err::OutOfBall: return "OutOfBall";
    case Err::UnsatisfiableModel: return "UnsatisfiableModel";
    case Err::ConfigError: return "ConfigError";
    case Err::Internal: return "Internal";
  }
  return "Unknown";
}

FactorDescriptor FactorDescriptor::type1(int p, int q) {
  if (p < 1 || q < 1) throw Error(Err::ConfigError, "type1 needs positive dims");
  FactorDescriptor f;
  f.kind = FactorKind::Type1;
  f.rows = p;
  f.cols = q;
  return f;
}

FactorDescriptor FactorDescriptor::type2(int n) {
  if (n < 2) throw Error(Err::ConfigError, "type2 needs n >= 2");
  FactorDescriptor f;
  f.kind = FactorKind::Type2;
  f.n = n;
  return f;
}

FactorDescriptor FactorDescriptor::type3(int n) {
  if (n < 1) throw Error(Err::ConfigError, "type3 needs n >= 1");
  FactorDescriptor f;
  f.kind = FactorKind::Type3;
  f.n = n;
  return f;
}

FactorDescriptor FactorDescriptor::spin(int d) {
  if (d < 2) throw Error(Err::ConfigError, "spin needs dim >= 2");
  FactorDescriptor f;
  f.kind = FactorKind::Spin;
  f.dim = d;
  return f;
}

std::pair<int, int> FactorDescriptor::shape() const {
  switch (kind) {
    case FactorKind::Type1: return {rows, cols};
    case FactorKind::Type2:
    case FactorKind::Type3: return {n, n};
    case FactorKind::Spin: return {dim, 1};
  }
  return {0, 0};
}

int FactorDescriptor::complex_dim() const {
  switch (kind) {
    case FactorKind::Type1: return rows * cols;
    case FactorKind::Type2: return n * (n - 1) / 2;
    case FactorKind::Type3: return n * (n + 1) / 2;
    case FactorKind::Spin: return dim;
  }
  return 0;
}

int FactorDescriptor::max_rank() const {
  switch (kind) {
    case FactorKind::Type1: return std::min(rows, cols);
    case FactorKind::Type2: return n / 2;
    case FactorKind::Type3: return n;
    case FactorKind::Spin: return 2;
  }
  return 0;
}

std::string FactorDescriptor::str() const {
  char buf[32];
  switch (kind) {
    case FactorKind::Type1:
      std::snprintf(buf, sizeof buf, "type1:%dx%d", rows, cols);
      break;
    case FactorKind::Type2: std::snprintf(buf, sizeof buf, "type2:%d", n); break;
    case FactorKind::Type3: std::snprintf(buf, sizeof buf, "type3:%d", n); break;
    case FactorKind::Spin: std::snprintf(buf, sizeof buf, "spin:%d", dim); break;
  }
  return buf;
}

FactorDescriptor parse_factor(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw Error(Err::ConfigError, "factor spec needs kind:size, got " + spec);
  const std::string kind = spec.substr(0, colon);
  const std::string size = spec.substr(colon + 1);
  try {
    if (kind == "type1") {
      const auto x = size.find('x');
      if (x == std::string::npos)
        throw Error(Err::ConfigError, "type1 spec needs PxQ");
      return FactorDescriptor::type1(std::stoi(size.substr(0, x)),
                                     std::stoi(size.substr(x + 1)));
    }
    if (kind == "type2") return FactorDescriptor::type2(std::stoi(size));
    if (kind == "type3") return FactorDescriptor::type3(std::stoi(size));
    if (kind == "spin") return FactorDescriptor::spin(std::stoi(size));
  } catch (const std::invalid_argument&) {
    throw Error(Err::ConfigError, "bad factor size in " + spec);
  }
  throw Error(Err::ConfigError, "unknown factor kind in " + spec);
}

Element zero_element(const FactorDescriptor& f) {
  const auto [r, c] = f.shape();
  return Element{f, CMat(r, c)};
}

double membership_defect(const FactorDescriptor& f, const CMat& data) {
  if (f.kind == FactorKind::Type2 || f.kind == FactorKind::Type3) {
    const double sign = f.kind == FactorKind::Type2 ? 1.0 : -1.0;
    double defect = 0.0;
    for (int i = 0; i < data.rows; ++i)
      for (int j = 0; j < data.cols; ++j)
        defect = std::max(defect, std::abs(data(i, j) + sign * data(j, i)));
    return defect;
  }
  return 0.0;
}

Element validate_element(const FactorDescriptor& f, const CMat& data) {
  const auto [r, c] = f.shape();
  if (data.rows != r || data.cols != c)
    throw Error(Err::ShapeMismatch, "expected " + std::to_string(r) + "x" +
                                        std::to_string(c) + " for " + f.str());
  const double defect = membership_defect(f, data);
  if (defect > tol::mem_rel * (1.0 + max_abs(data)))
    throw Error(Err::MembershipViolation,
                "constraint defect " + std::to_string(defect) + " in " + f.str());
  return Element{f, data};
}

void require_same_factor(const Element& x, const Element& y) {
  if (!(x.factor == y.factor))
    throw Error(Err::FactorMismatch, x.factor.str() + " vs " + y.factor.str());
}

Element operator+(const Element& x, const Element& y) {
  require_same_factor(x, y);
  return Element{x.factor, x.data + y.data};
}

Element operator-(const Element& x, const Element& y) {
  require_same_factor(x, y);
  return Element{x.factor, x.data - y.data};
}

Element operator*(cplx s, const Element& x) { return Element{x.factor, s * x.data}; }

cplx inner(const Element& x, const Element& y) {
  require_same_factor(x, y);
  return dot(x.data, y.data);
}

Element conj_element(const Element& x) { return Element{x.factor, conj(x.data)}; }

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kSqrt2 = 1.41421356237309504880;
}  // namespace

std::vector<cplx> to_coords(const Element& x) {
  const FactorDescriptor& f = x.factor;
  std::vector<cplx> c;
  c.reserve(f.complex_dim());
  switch (f.kind) {
    case FactorKind::Type1:
    case FactorKind::Spin:
      c.assign(x.data.a.begin(), x.data.a.end());
      break;
    case FactorKind::Type2:
      for (int i = 0; i < f.n; ++i)
        for (int j = i + 1; j < f.n; ++j) c.push_back(kSqrt2 * x.data(i, j));
      break;
    case FactorKind::Type3:
      for (int i = 0; i < f.n; ++i)
        for (int j = i; j < f.n; ++j)
          c.push_back(i == j ? x.data(i, i) : kSqrt2 * x.data(i, j));
      break;
  }
  return c;
}

Element from_coords(const FactorDescriptor& f, const std::vector<cplx>& c) {
  if (int(c.size()) != f.complex_dim())
    throw Error(Err::ShapeMismatch, "coordinate length for " + f.str());
  Element x = zero_element(f);
  switch (f.kind) {
    case FactorKind::Type1:
    case FactorKind::Spin:
      x.data.a.assign(c.begin(), c.end());
      break;
    case FactorKind::Type2: {
      int k = 0;
      for (int i = 0; i < f.n; ++i)
        for (int j = i + 1; j < f.n; ++j) {
          x.data(i, j) = kInvSqrt2 * c[k];
          x.data(j, i) = -kInvSqrt2 * c[k];
          ++k;
        }
      break;
    }
    case FactorKind::Type3: {
      int k = 0;
      for (int i = 0; i < f.n; ++i)
        for (int j = i; j < f.n; ++j) {
          if (i == j) {
            x.data(i, i) = c[k];
          } else {
            x.data(i, j) = kInvSqrt2 * c[k];
            x.data(j, i) = kInvSqrt2 * c[k];
          }
          ++k;
        }
      break;
    }
  }
  return x;
}

std::vector<double> realify(const Element& x) {
  const std::vector<cplx> c = to_coords(x);
  std::vector<double> v(2 * c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    v[i] = c[i].real();
    v[c.size() + i] = c[i].imag();
  }
  return v;
}

Element unrealify(const FactorDescriptor& f, const std::vector<double>& v) {
  const int d = f.complex_dim();
  if (int(v.size()) != 2 * d)
    throw Error(Err::ShapeMismatch, "realification length for " + f.str());
  std::vector<cplx> c(d);
  for (int i = 0; i < d; ++i) c[i] = cplx(v[i], v[d + i]);
  return from_coords(f, c);
}

Element triple_product(const Element& x, const Element& y, const Element& z) {
  require_same_factor(x, y);
  require_same_factor(x, z);
  const FactorDescriptor& f = x.factor;
  if (f.kind == FactorKind::Spin) {
    const cplx xy = dot(x.data, y.data);
    const cplx zy = dot(z.data, y.data);
    cplx xz = 0;  // (x | conj(z)) = sum_i x_i z_i
    for (std::size_t i = 0; i < x.data.a.size(); ++i)
      xz += x.data.a[i] * z.data.a[i];
    CMat r(x.data.rows, 1);
    for (int i = 0; i < x.data.rows; ++i)
      r(i, 0) = xy * z.data(i, 0) + zy * x.data(i, 0) -
                xz * std::conj(y.data(i, 0));
    return Element{f, std::move(r)};
  }
  const CMat ystar = adjoint(y.data);
  CMat t = x.data * ystar * z.data + z.data * ystar * x.data;
  t = cplx(0.5, 0) * t;
  // keep skew/symmetric closure exact
  if (f.kind == FactorKind::Type2) t = cplx(0.5, 0) * (t - transpose(t));
  if (f.kind == FactorKind::Type3) t = cplx(0.5, 0) * (t + transpose(t));
  return Element{f, std::move(t)};
}

Element odd_power(const Element& x, int k) {
  Element p = x;
  for (int i = 0; i < k; ++i) p = triple_product(x, x, p);
  return p;
}

double norm(const Element& x) {
  if (x.factor.kind == FactorKind::Spin) {
    const double s = dot(x.data, x.data).real();
    cplx q = 0;
    for (const auto& v : x.data.a) q += v * v;
    const double disc = std::max(s * s - std::norm(q), 0.0);
    return std::sqrt(s + std::sqrt(disc));
  }
  return op_norm(x.data);
}

Element RealLinearMap::apply(const Element& x) const {
  if (!(x.factor == factor))
    throw Error(Err::FactorMismatch, "map on " + factor.str());
  const std::vector<double> v = realify(x);
  std::vector<double> w(v.size());
  kernels::dgemm(m.a.data(), v.data(), w.data(), m.rows, m.cols, 1);
  return unrealify(factor, w);
}

RealLinearMap RealLinearMap::identity(const FactorDescriptor& f) {
  return RealLinearMap{f, RMat::identity(2 * f.complex_dim())};
}

RealLinearMap operator*(const RealLinearMap& a, const RealLinearMap& b) {
  return RealLinearMap{a.factor, a.m * b.m};
}
RealLinearMap operator+(const RealLinearMap& a, const RealLinearMap& b) {
  return RealLinearMap{a.factor, a.m + b.m};
}
RealLinearMap operator-(const RealLinearMap& a, const RealLinearMap& b) {
  return RealLinearMap{a.factor, a.m - b.m};
}
RealLinearMap operator*(double s, const RealLinearMap& a) {
  return RealLinearMap{a.factor, s * a.m};
}
double op_norm(const RealLinearMap& a) { return op_norm(a.m); }

RealLinearMap operator_L(const Element& a, const Element& b) {
  require_same_factor(a, b);
  return build_map(a.factor,
                   [&](const Element& x) { return triple_product(a, b, x); });
}

RealLinearMap operator_Q(const Element& a) {
  return build_map(a.factor,
                   [&](const Element& x) { return triple_product(a, x, a); });
}

}  // namespace jbt

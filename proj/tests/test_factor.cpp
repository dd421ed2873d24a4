#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "helpers.hpp"
#include "jbt/linalg.hpp"
#include "jbt/random.hpp"

using namespace jbt;
using namespace jbt::testing;

namespace {

const FactorDescriptor t1_22 = FactorDescriptor::type1(2, 2);

double classical_top_sv(const Element& x) {
  Eigen::MatrixXcd e(x.data.rows, x.data.cols);
  for (int i = 0; i < x.data.rows; ++i)
    for (int j = 0; j < x.data.cols; ++j) e(i, j) = x.data(i, j);
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(e).singularValues()[0];
}

}  // namespace

TEST_CASE("factor descriptors") {
  CHECK(FactorDescriptor::type1(3, 4).complex_dim() == 12);
  CHECK(FactorDescriptor::type2(4).complex_dim() == 6);
  CHECK(FactorDescriptor::type3(3).complex_dim() == 6);
  CHECK(FactorDescriptor::spin(6).complex_dim() == 6);
  CHECK(FactorDescriptor::type2(4).max_rank() == 2);
  CHECK(parse_factor("type1:3x4") == FactorDescriptor::type1(3, 4));
  CHECK(parse_factor("spin:6").str() == "spin:6");
  CHECK_THROWS_AS(parse_factor("type5:2"), Error);
  CHECK_THROWS_AS(FactorDescriptor::type2(1), Error);
}

TEST_CASE("validate_element enforces shape and membership") {
  const FactorDescriptor t3 = FactorDescriptor::type3(2);
  const FactorDescriptor t2 = FactorDescriptor::type2(2);
  CHECK_NOTHROW(mat_element(t3, {{1, 2}, {2, 0}}));
  CHECK_NOTHROW(mat_element(t2, {{0, 1}, {-1, 0}}));
  CMat bad(2, 2);
  bad(0, 1) = 1;
  bad(1, 0) = 1;
  try {
    validate_element(t2, bad);
    FAIL("expected MembershipViolation");
  } catch (const Error& e) {
    CHECK(e.code == Err::MembershipViolation);
  }
  CHECK_THROWS_AS(validate_element(t3, CMat(3, 3)), Error);
}

TEST_CASE("triple product on matrix factors") {
  const Element e11 = unit_element(t1_22, 0, 0);
  const Element e12 = unit_element(t1_22, 0, 1);
  CHECK(norm(triple_product(e11, e11, e11) - e11) < 1e-15);
  CHECK(norm(triple_product(e11, e11, e12) - cplx(0.5, 0) * e12) < 1e-15);
}

TEST_CASE("triple product on the spin factor") {
  const Element u = spin_element(2, {0.5, cplx(0, 0.5)});
  CHECK(norm(triple_product(u, u, u) - u) < 1e-15);
  CHECK(norm(u) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("coordinates are an isometry onto the factor") {
  Rng rng = make_rng(11);
  for (const FactorDescriptor& f : desk_factors()) {
    const Element x = gaussian_element(f, rng);
    const Element back = from_coords(f, to_coords(x));
    CHECK(norm(back - x) < 1e-12 * (1 + norm(x)));
    const std::vector<cplx> cx = to_coords(x);
    cplx ip = 0;
    for (const auto& v : cx) ip += v * std::conj(v);
    CHECK(std::abs(ip - inner(x, x)) < 1e-10 * (1 + std::abs(ip)));
  }
}

TEST_CASE("operator L eigenvalues and Q conjugate-linearity") {
  const Element zero = zero_element(t1_22);
  CHECK(op_norm(operator_L(zero, zero)) < 1e-15);

  const Element e11 = unit_element(t1_22, 0, 0);
  const SymEig eig = sym_eig(operator_L(e11, e11).m);
  // complex dimension 4, eigenvalues {1, 1/2, 1/2, 0}, each doubled by the
  // realification
  const std::vector<double> expected = {1, 1, 0.5, 0.5, 0.5, 0.5, 0, 0};
  REQUIRE(eig.values.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i)
    CHECK(eig.values[i] == doctest::Approx(expected[i]).epsilon(1e-10));

  const Element ie11 = cplx(0, 1) * e11;
  const Element q_of = operator_Q(e11).apply(ie11);
  CHECK(norm(q_of - cplx(0, -1) * e11) < 1e-12);
}

TEST_CASE("odd powers") {
  const Element x = diag_element(t1_22, {2, 1});
  CHECK(norm(odd_power(x, 0) - x) < 1e-15);
  CHECK(norm(odd_power(x, 1) - diag_element(t1_22, {8, 1})) < 1e-12);
  const Element y = cplx(3, 0) * unit_element(t1_22, 0, 1);
  CHECK(norm(odd_power(y, 1) - cplx(27, 0) * unit_element(t1_22, 0, 1)) < 1e-11);
}

TEST_CASE("norms") {
  CHECK(norm(zero_element(t1_22)) == 0.0);
  CHECK(norm(diag_element(t1_22, {2, 1})) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(norm(spin_element(2, {1, 0})) == doctest::Approx(1.0).epsilon(1e-12));
  // (1, i)/sqrt(2) is sqrt(2) times a minimal tripotent
  const double isq = 1.0 / std::sqrt(2.0);
  CHECK(norm(spin_element(2, {isq, cplx(0, isq)})) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("triple product trilinearity and symmetry") {
  Rng rng = make_rng(12);
  for (const FactorDescriptor& f : desk_factors()) {
    for (int t = 0; t < 20; ++t) {
      const Element x = gaussian_element(f, rng);
      const Element xp = gaussian_element(f, rng);
      const Element y = gaussian_element(f, rng);
      const Element z = gaussian_element(f, rng);
      const cplx alpha = rng.cnormal(), beta = rng.cnormal();
      const double s = 1.0 + norm(x) + norm(xp) + norm(y) + norm(z);
      const double cube = s * s * s * (1.0 + std::abs(alpha) + std::abs(beta));

      const Element lhs = triple_product(alpha * x + xp, y, z);
      const Element rhs =
          alpha * triple_product(x, y, z) + triple_product(xp, y, z);
      CHECK(norm(lhs - rhs) < 1e-9 * cube);

      CHECK(norm(triple_product(x, y, z) - triple_product(z, y, x)) <
            1e-9 * cube);

      const Element conj_lhs = triple_product(x, beta * y, z);
      const Element conj_rhs = std::conj(beta) * triple_product(x, y, z);
      CHECK(norm(conj_lhs - conj_rhs) < 1e-9 * cube);
    }
  }
}

TEST_CASE("JB*-triple axioms hold numerically") {
  Rng rng = make_rng(13);
  for (const FactorDescriptor& f : desk_factors()) {
    for (int t = 0; t < 100; ++t) {
      const Element a = gaussian_element(f, rng);
      const RealLinearMap laa = operator_L(a, a);
      const double na = norm(a);
      // axiom (c): ||L(a,a)|| = ||a||^2
      CHECK(std::abs(op_norm(laa) - na * na) < 1e-8 * (1 + na * na));
      // axiom (b): nonnegative spectrum of the symmetrised operator
      const SymEig eig = sym_eig(laa.m);
      CHECK(eig.values.back() > -1e-8);
    }
    // axiom (a), the Jordan identity, as an operator identity
    for (int t = 0; t < 10; ++t) {
      const Element a = gaussian_element(f, rng);
      const Element b = gaussian_element(f, rng);
      const Element x = gaussian_element(f, rng);
      const Element y = gaussian_element(f, rng);
      const RealLinearMap lab = operator_L(a, b);
      const RealLinearMap lxy = operator_L(x, y);
      const RealLinearMap lhs = lab * lxy;
      const RealLinearMap rhs = lxy * lab + operator_L(lab.apply(x), y) -
                                operator_L(x, operator_L(b, a).apply(y));
      const double s = (1 + norm(a)) * (1 + norm(b)) * (1 + norm(x)) *
                       (1 + norm(y));
      CHECK(op_norm(lhs - rhs) < 1e-8 * s * s);
    }
  }
}

TEST_CASE("type 1 norm agrees with the classical SVD oracle") {
  Rng rng = make_rng(14);
  const FactorDescriptor f = FactorDescriptor::type1(3, 4);
  for (int t = 0; t < 50; ++t) {
    const Element x = gaussian_element(f, rng);
    CHECK(std::abs(norm(x) - classical_top_sv(x)) < 1e-9 * (1 + norm(x)));
  }
}

TEST_CASE("maps commute or anticommute with the complex structure") {
  Rng rng = make_rng(15);
  for (const FactorDescriptor& f : desk_factors()) {
    const Element a = gaussian_element(f, rng);
    const Element b = gaussian_element(f, rng);
    const int d = f.complex_dim();
    RMat j(2 * d, 2 * d);
    for (int i = 0; i < d; ++i) {
      j(i, d + i) = -1;
      j(d + i, i) = 1;
    }
    const RealLinearMap l = operator_L(a, b);
    CHECK(frobenius(l.m * j - j * l.m) < 1e-9 * (1 + frobenius(l.m)));
    const RealLinearMap q = operator_Q(a);
    CHECK(frobenius(q.m * j + j * q.m) < 1e-9 * (1 + frobenius(q.m)));
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "helpers.hpp"
#include "jbt/random.hpp"

using namespace jbt;
using namespace jbt::testing;

namespace {

const FactorDescriptor t1_22 = FactorDescriptor::type1(2, 2);
const FactorDescriptor t1_33 = FactorDescriptor::type1(3, 3);

std::vector<double> classical_svs(const Element& x) {
  Eigen::MatrixXcd e(x.data.rows, x.data.cols);
  for (int i = 0; i < x.data.rows; ++i)
    for (int j = 0; j < x.data.cols; ++j) e(i, j) = x.data(i, j);
  const auto sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(e).singularValues();
  return std::vector<double>(sv.data(), sv.data() + sv.size());
}

}  // namespace

TEST_CASE("atomic decomposition basics") {
  CHECK(atomic_decompose(zero_element(t1_22)).lambdas.empty());

  const Element x = cplx(3, 0) * unit_element(t1_22, 0, 1);
  const AtomicDecomposition dec = atomic_decompose(x);
  REQUIRE(dec.lambdas.size() == 1);
  CHECK(dec.lambdas[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(norm(dec.atoms[0].element - unit_element(t1_22, 0, 1)) < 1e-12);

  // spin (1, 0): two singular values, both 1
  const AtomicDecomposition sp = atomic_decompose(spin_element(2, {1, 0}));
  REQUIRE(sp.lambdas.size() == 2);
  CHECK(sp.lambdas[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sp.lambdas[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("atomic decomposition across factors agrees with the oracle") {
  Rng rng = make_rng(31);
  for (const FactorDescriptor& f : desk_factors()) {
    for (int t = 0; t < 40; ++t) {
      const Element x = gaussian_element(f, rng);
      const AtomicDecomposition dec = atomic_decompose(x);
      // nonincreasing
      for (std::size_t i = 1; i < dec.lambdas.size(); ++i)
        CHECK(dec.lambdas[i] <= dec.lambdas[i - 1] + 1e-12);
      // oracle: distinct lambda^2 against the subtriple spectrum
      const std::vector<double> oracle = subtriple_spectrum_oracle(x);
      std::vector<double> squares;
      for (const double l : dec.lambdas) {
        const double s = l * l;
        if (squares.empty() || squares.back() - s > 1e-6 * squares[0])
          squares.push_back(s);
      }
      REQUIRE(squares.size() == oracle.size());
      for (std::size_t i = 0; i < squares.size(); ++i)
        CHECK(std::abs(squares[i] - oracle[i]) <
              1e-8 * (1 + std::abs(oracle[i])));
    }
  }
}

TEST_CASE("type 1 lambdas equal classical singular values") {
  Rng rng = make_rng(32);
  const FactorDescriptor f = FactorDescriptor::type1(3, 4);
  for (int t = 0; t < 30; ++t) {
    const Element x = gaussian_element(f, rng);
    const AtomicDecomposition dec = atomic_decompose(x);
    const std::vector<double> ref = classical_svs(x);
    REQUIRE(dec.lambdas.size() <= ref.size());
    for (std::size_t i = 0; i < dec.lambdas.size(); ++i)
      CHECK(std::abs(dec.lambdas[i] - ref[i]) < 1e-9 * (1 + ref[0]));
  }
}

TEST_CASE("type 2 lambdas pair the classical singular values") {
  Rng rng = make_rng(33);
  const FactorDescriptor f = FactorDescriptor::type2(4);
  for (int t = 0; t < 30; ++t) {
    const Element x = gaussian_element(f, rng);
    const AtomicDecomposition dec = atomic_decompose(x);
    const std::vector<double> ref = classical_svs(x);
    for (std::size_t i = 0; i < dec.lambdas.size(); ++i) {
      CHECK(std::abs(dec.lambdas[i] - ref[2 * i]) < 1e-9 * (1 + ref[0]));
      CHECK(std::abs(dec.lambdas[i] - ref[2 * i + 1]) < 1e-9 * (1 + ref[0]));
    }
  }
}

TEST_CASE("spectral decomposition groups multiplicities") {
  const SpectralDecomposition a = spectral_decompose(diag_element(t1_22, {2, 1}));
  REQUIRE(a.sigmas.size() == 2);
  CHECK(a.sigmas[0] == doctest::Approx(2.0));
  CHECK(a.sigmas[1] == doctest::Approx(1.0));
  CHECK(norm(a.resolutions[0].element - unit_element(t1_22, 0, 0)) < 1e-10);

  const SpectralDecomposition b =
      spectral_decompose(diag_element(t1_33, {1, 1, 0.3}));
  REQUIRE(b.sigmas.size() == 2);
  CHECK(b.sigmas[0] == doctest::Approx(1.0));
  CHECK(b.sigmas[1] == doctest::Approx(0.3));
  CHECK(b.multiplicities[0] == 2);
  CHECK(b.multiplicities[1] == 1);
  CHECK(norm(b.resolutions[0].element -
             (unit_element(t1_33, 0, 0) + unit_element(t1_33, 1, 1))) < 1e-10);

  // a tripotent is its own spectral resolution at sigma = 1
  Rng rng = make_rng(34);
  const Tripotent e = random_tripotent(FactorDescriptor::type3(3), 2, rng);
  const SpectralDecomposition c = spectral_decompose(e.element);
  REQUIRE(c.sigmas.size() == 1);
  CHECK(c.sigmas[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(norm(c.resolutions[0].element - e.element) < 1e-9);
}

TEST_CASE("seminorms") {
  const Tripotent v = make_tripotent(unit_element(t1_22, 0, 0));
  CHECK(seminorm_v(v.element, v) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(seminorm_v(diag_element(t1_22, {2, 1}), v) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(seminorm_v(unit_element(t1_22, 1, 1), v) ==
        doctest::Approx(0.0).epsilon(1e-12));

  // seminorm_p reduces to seminorm_v at n = 1
  Rng rng = make_rng(35);
  const Element x = gaussian_element(t1_22, rng);
  CHECK(seminorm_p(x, {v}, 3.0) == doctest::Approx(seminorm_v(x, v)));

  // the half projection against the diagonal frame at p = 1
  const FactorDescriptor t3 = FactorDescriptor::type3(2);
  const Element a = half_projection(t3);
  const Tripotent u1 = make_tripotent(mat_element(t3, {{1, 0}, {0, 0}}));
  const Tripotent u2 = make_tripotent(mat_element(t3, {{0, 0}, {0, 1}}));
  CHECK(seminorm_p(a, {u1, u2}, 1.0) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  const FactorDescriptor f3 = t1_33;
  const Element d = diag_element(f3, {3, 2, 1});
  const Tripotent w1 = make_tripotent(unit_element(f3, 0, 0));
  const Tripotent w2 = make_tripotent(unit_element(f3, 1, 1));
  CHECK(seminorm_p(d, {w1, w2}, 1.0) == doctest::Approx(5.0).epsilon(1e-12));

  CHECK_THROWS_AS(seminorm_p(d, {w1, w2}, 0.5), Error);
  const Tripotent e12 = make_tripotent(unit_element(f3, 0, 1));
  CHECK_THROWS_AS(seminorm_p(d, {w1, e12}, 2.0), Error);  // not orthogonal
}

TEST_CASE("seminorm monotone under Peirce compression") {
  Rng rng = make_rng(36);
  for (const FactorDescriptor& f : desk_factors()) {
    for (int t = 0; t < 20; ++t) {
      const int k = 1 + int(rng.next_u64() % std::uint64_t(f.max_rank()));
      const Tripotent e = random_tripotent(f, k, rng);
      const Element x = gaussian_element(f, rng);
      const Tripotent v2 = random_minimal_in_peirce2(e, rng);
      CHECK(seminorm_v(apply_peirce2(e.element, x), v2) <=
            seminorm_v(x, v2) + 1e-8);
      CHECK(seminorm_v(apply_peirce0(e.element, x), v2) <=
            seminorm_v(x, v2) + 1e-8);
      if (e.rank < f.max_rank() &&
          !(f.kind == FactorKind::Type2 && f.n - 2 * e.rank < 2)) {
        const Tripotent v0 = random_minimal_in_peirce0(e, rng);
        CHECK(seminorm_v(apply_peirce2(e.element, x), v0) <=
              seminorm_v(x, v0) + 1e-8);
        CHECK(seminorm_v(apply_peirce0(e.element, x), v0) <=
              seminorm_v(x, v0) + 1e-8);
      }
    }
  }
}

TEST_CASE("frame membership characterised by the 2-seminorm") {
  Rng rng = make_rng(37);
  for (const FactorDescriptor& f : desk_factors()) {
    for (int t = 0; t < 15; ++t) {
      const int k = 1 + int(rng.next_u64() % std::uint64_t(f.max_rank()));
      const Tripotent e = random_tripotent(f, k, rng);
      const std::vector<Tripotent> us = random_frame_in_peirce2(e, rng);
      // inside: minimal v in U2(e) has unit 2-seminorm
      const Tripotent inside = random_minimal_in_peirce2(e, rng);
      CHECK(seminorm_p(inside.element, us, 2.0) ==
            doctest::Approx(1.0).epsilon(1e-9));
      // any minimal v has 2-seminorm at most 1
      const Tripotent anyv = random_minimal(f, rng);
      CHECK(seminorm_p(anyv.element, us, 2.0) <= 1.0 + 1e-8);
      // strictly outside when it lives in U0(e)
      if (e.rank < f.max_rank() &&
          !(f.kind == FactorKind::Type2 && f.n - 2 * e.rank < 2)) {
        const Tripotent outside = random_minimal_in_peirce0(e, rng);
        CHECK(seminorm_p(outside.element, us, 2.0) < 1e-7);
      }
    }
  }
}

TEST_CASE("support tripotent") {
  const Tripotent e = make_tripotent(unit_element(t1_22, 0, 0));
  CHECK(norm(support_tripotent(e.element).element - e.element) < 1e-12);

  const Element x = unit_element(t1_22, 0, 0) +
                    cplx(0.5, 0) * unit_element(t1_22, 1, 1);
  CHECK(norm(support_tripotent(x).element - unit_element(t1_22, 0, 0)) < 1e-10);

  const Element y = diag_element(t1_33, {1, 1, 0.3});
  CHECK(norm(support_tripotent(y).element -
             (unit_element(t1_33, 0, 0) + unit_element(t1_33, 1, 1))) < 1e-10);

  CHECK_THROWS_AS(support_tripotent(diag_element(t1_22, {2, 1})), Error);
}

TEST_CASE("interval spectral resolutions") {
  const Element x = diag_element(t1_33, {1, 1, 0.3});
  const Tripotent top = spectral_resolution(x, 0.9, 1.1);
  CHECK(top.rank == 2);
  CHECK(norm(top.element - (unit_element(t1_33, 0, 0) +
                            unit_element(t1_33, 1, 1))) < 1e-10);

  const Element y = diag_element(t1_22, {1, 0.3});
  const Tripotent low = spectral_resolution(y, 0.29, 0.31);
  CHECK(low.rank == 1);
  CHECK(norm(low.element - unit_element(t1_22, 1, 1)) < 1e-10);

  // full interval reproduces the range tripotent
  const Tripotent all = spectral_resolution(y, 0.1, 2.0);
  CHECK(all.rank == 2);

  CHECK_THROWS_AS(spectral_resolution(y, 0.3, 1.5), Error);  // boundary hit
}

TEST_CASE("weyl continuity of the singular values") {
  Rng rng = make_rng(38);
  for (const FactorDescriptor& f : desk_factors()) {
    for (int t = 0; t < 20; ++t) {
      const Element x = gaussian_element(f, rng);
      const Element h = gaussian_element(f, rng);
      const double d = 0.01 * rng.uniform(0.1, 1.0);
      const Element y = x + cplx(d, 0) * h;
      const std::vector<double> lx = singular_values(x);
      const std::vector<double> ly = singular_values(y);
      for (std::size_t i = 0; i < std::max(lx.size(), ly.size()); ++i) {
        const double a = i < lx.size() ? lx[i] : 0.0;
        const double b = i < ly.size() ? ly[i] : 0.0;
        CHECK(std::abs(a - b) <= d * norm(h) + 1e-8);
      }
    }
  }
}

TEST_CASE("clustered models keep their multiplicity through the backends") {
  Rng rng = make_rng(39);
  RandomModel model;
  model.law = RandomModel::Law::Clustered;
  model.k = 2;
  model.gap = 0.3;
  for (const FactorDescriptor& f : desk_factors()) {
    const Element x = random_element(f, model, rng);
    const SpectralDecomposition sd = spectral_decompose(x);
    REQUIRE(!sd.sigmas.empty());
    CHECK(sd.multiplicities[0] == 2);
    CHECK(sd.resolutions[0].rank == 2);
  }
}

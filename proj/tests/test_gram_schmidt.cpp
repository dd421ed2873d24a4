#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "jbt/linalg.hpp"
#include "jbt/random.hpp"

using namespace jbt;
using namespace jbt::testing;

namespace {
const FactorDescriptor t1_22 = FactorDescriptor::type1(2, 2);
const FactorDescriptor t1_33 = FactorDescriptor::type1(3, 3);
const FactorDescriptor t3_22 = FactorDescriptor::type3(2);

int rank_between(Rng& rng, int lo, int hi) {
  return lo + int(rng.next_u64() % std::uint64_t(hi - lo + 1));
}
}  // namespace

TEST_CASE("range tripotent") {
  Rng rng = make_rng(41);
  const Tripotent e = random_tripotent(t1_22, 1, rng);
  CHECK(norm(range_tripotent(e.element).element - e.element) < 1e-9);

  const Tripotent r = range_tripotent(diag_element(t1_22, {2, 1}));
  CHECK(norm(r.element - diag_element(t1_22, {1, 1})) < 1e-10);

  const Tripotent s = range_tripotent(cplx(3, 0) * unit_element(t1_22, 0, 1));
  CHECK(norm(s.element - unit_element(t1_22, 0, 1)) < 1e-10);

  CHECK_THROWS_AS(range_tripotent(zero_element(t1_22)), Error);

  // x sits in U2(r) with P2(r) x = x
  for (const FactorDescriptor& f : desk_factors()) {
    const Element x = gaussian_element(f, rng);
    const Tripotent rt = range_tripotent(x);
    CHECK(norm(apply_peirce2(rt.element, x) - x) < 1e-9 * (1 + norm(x)));
  }
}

TEST_CASE("enclose_minimals") {
  // already orthogonal inputs: the enclosure is their sum
  const Tripotent e11 = make_tripotent(unit_element(t1_22, 0, 0));
  const Tripotent e22 = make_tripotent(unit_element(t1_22, 1, 1));
  const Tripotent u = enclose_minimals(t1_22, {e11, e22});
  CHECK(u.rank == 2);
  for (const Tripotent& t : {e11, e22})
    CHECK(norm(apply_peirce2(u.element, t.element) - t.element) < 1e-9);

  // the half projection and a diagonal unit in the 2x2 symmetric algebra
  const Tripotent p11 = make_tripotent(mat_element(t3_22, {{1, 0}, {0, 0}}));
  const Tripotent a = make_tripotent(half_projection(t3_22));
  const Tripotent u3 = enclose_minimals(t3_22, {p11, a});
  CHECK(u3.rank == 2);
  CHECK(norm(apply_peirce2(u3.element, a.element) - a.element) < 1e-9);
  CHECK(norm(apply_peirce2(u3.element, p11.element) - p11.element) < 1e-9);

  // spin: two generic minimals need a rank-2 cover
  Rng rng = make_rng(42);
  const FactorDescriptor sp = FactorDescriptor::spin(3);
  const Tripotent v1 = random_minimal(sp, rng);
  const Tripotent v2 = random_minimal(sp, rng);
  const Tripotent us = enclose_minimals(sp, {v1, v2});
  CHECK(us.rank <= 2);
  CHECK(norm(apply_peirce2(us.element, v1.element) - v1.element) < 1e-9);
  CHECK(norm(apply_peirce2(us.element, v2.element) - v2.element) < 1e-9);

  CHECK_THROWS_AS(
      enclose_minimals(FactorDescriptor::type2(4),
                       {random_minimal(FactorDescriptor::type2(4), rng)}),
      Error);

  // rank bounded by the input count on random inputs
  for (const FactorDescriptor& f :
       {t1_33, FactorDescriptor::type3(3), FactorDescriptor::spin(6)}) {
    for (int t = 0; t < 10; ++t) {
      std::vector<Tripotent> mins;
      const int n = 1 + int(rng.next_u64() % 2);
      for (int i = 0; i < n; ++i) mins.push_back(random_minimal(f, rng));
      const Tripotent enc = enclose_minimals(f, mins);
      CHECK(enc.rank <= n);
      for (const Tripotent& m : mins)
        CHECK(norm(apply_peirce2(enc.element, m.element) - m.element) < 1e-8);
    }
  }
}

TEST_CASE("peirce2_witness") {
  Rng rng = make_rng(43);
  // all inputs orthogonal to e: the zero witness is admissible
  const Tripotent e = make_tripotent(unit_element(t1_33, 0, 0));
  const Tripotent far = make_tripotent(unit_element(t1_33, 1, 1));
  CHECK(peirce2_witness(e, {far}).rank == 0);

  // e = E11 + E22 in type 1 3x3 against the minimal E13: the witness with
  // vanishing direct projection comes from the bracket and equals E11
  const Tripotent ee = make_tripotent(unit_element(t1_33, 0, 0) +
                                      unit_element(t1_33, 1, 1));
  const Tripotent v13 = make_tripotent(unit_element(t1_33, 0, 2));
  const Tripotent w = peirce2_witness(ee, {v13});
  CHECK(w.rank == 1);
  CHECK(norm(w.element - unit_element(t1_33, 0, 0)) < 1e-9);

  // contract on random instances: everything in U2(e) & U0(u) is orthogonal
  // to the inputs, across all four factor kinds
  for (const FactorDescriptor& f : desk_factors()) {
    for (int t = 0; t < 12; ++t) {
      const int k = rank_between(rng, 1, f.max_rank());
      const Tripotent et = random_tripotent(f, k, rng);
      std::vector<Tripotent> mins;
      const int n = 1 + int(rng.next_u64() % 2);
      for (int i = 0; i < n; ++i) mins.push_back(random_minimal(f, rng));
      const Tripotent u = peirce2_witness(et, mins);
      CHECK(u.rank <= n);
      if (u.rank > 0)
        CHECK(norm(apply_peirce2(et.element, u.element) - u.element) < 1e-8);

      // sample the intersection U2(e) & U0(u) through the projections
      const PeirceSystem se = peirce(et);
      for (int s = 0; s < 8; ++s) {
        Element probe = se.p2.apply(gaussian_element(f, rng));
        if (u.rank > 0) probe = apply_peirce0(u.element, probe);
        const double pn = norm(probe);
        if (pn < 1e-9) continue;
        for (const Tripotent& m : mins)
          CHECK(norm(triple_product(probe, probe, m.element)) <
                1e-7 * (1 + pn) * (1 + pn));
      }
    }
  }
}

TEST_CASE("complement_tripotent") {
  Rng rng = make_rng(44);
  const Tripotent id2 = make_tripotent(unit_element(t1_22, 0, 0) +
                                       unit_element(t1_22, 1, 1));
  const Tripotent e11 = make_tripotent(unit_element(t1_22, 0, 0));
  const Tripotent zero = make_tripotent(zero_element(t1_22));

  CHECK(norm(complement_tripotent(id2, zero).element - id2.element) < 1e-12);
  CHECK(norm(complement_tripotent(id2, e11).element -
             unit_element(t1_22, 1, 1)) < 1e-10);
  CHECK_THROWS_AS(complement_tripotent(e11, id2), Error);

  const FactorDescriptor t3_33 = FactorDescriptor::type3(3);
  const Tripotent id3 = make_tripotent(diag_element(t3_33, {1, 1, 1}));
  const Tripotent vmin = random_minimal(t3_33, rng);
  const Tripotent comp = complement_tripotent(id3, vmin);
  CHECK(comp.rank == 2);
  CHECK(relation(comp, vmin).orthogonal);

  for (const FactorDescriptor& f : desk_factors()) {
    for (int t = 0; t < 12; ++t) {
      const int m = rank_between(rng, 1, f.max_rank());
      const int n = rank_between(rng, 0, m - 1);
      const Tripotent e = random_tripotent(f, m, rng);
      const Tripotent fr = random_tripotent(f, n, rng);
      const Tripotent u = complement_tripotent(e, fr);
      CHECK(u.rank == m - n);
      CHECK(norm(apply_peirce2(e.element, u.element) - u.element) < 1e-8);
      if (n > 0) CHECK(relation(u, fr).orthogonal);
    }
  }
}

TEST_CASE("minimax witness meets the lambda_n bound") {
  // frozen instances: x = diag(3,2,1), both suggested rank-2 tripotents
  const Element x = diag_element(t1_33, {3, 2, 1});
  const AtomicDecomposition dec = atomic_decompose(x);
  for (const Element& epick :
       {unit_element(t1_33, 0, 0) + unit_element(t1_33, 1, 1),
        unit_element(t1_33, 1, 1) + unit_element(t1_33, 2, 2)}) {
    const Tripotent e = make_tripotent(epick);
    const Tripotent v = minimax_witness(dec, e, 2);
    CHECK(v.minimal);
    CHECK(norm(apply_peirce2(e.element, v.element) - v.element) < 1e-9);
    CHECK(seminorm_v(x, v) <= 2.0 + 1e-8);
  }

  // randomized across factors, n up to the full rank
  Rng rng = make_rng(45);
  for (const FactorDescriptor& f : desk_factors()) {
    for (int t = 0; t < 25; ++t) {
      const Element xr = random_element(f, RandomModel{}, rng);
      const AtomicDecomposition dr = atomic_decompose(xr);
      const int n = rank_between(rng, 1, int(dr.lambdas.size()));
      const Tripotent e = random_tripotent(f, n, rng);
      const Tripotent v = minimax_witness(dr, e, n);
      CHECK(v.minimal);
      CHECK(seminorm_v(xr, v) <= dr.lambdas[n - 1] + 1e-8);
    }
  }
}

TEST_CASE("witness families control all leading seminorms") {
  Rng rng = make_rng(46);
  for (const FactorDescriptor& f : desk_factors()) {
    for (int t = 0; t < 10; ++t) {
      const Element x = random_element(f, RandomModel{}, rng);
      const AtomicDecomposition dec = atomic_decompose(x);
      const int n = rank_between(rng, 1, int(dec.lambdas.size()));
      const Tripotent e = random_tripotent(f, n, rng);
      const std::vector<Tripotent> fam = witness_family(dec, e, n);
      REQUIRE(int(fam.size()) == n);
      for (int k = 0; k < n; ++k) {
        CHECK(fam[k].minimal);
        CHECK(seminorm_v(x, fam[k]) <= dec.lambdas[k] + 1e-8);
        for (int j = k + 1; j < n; ++j)
          CHECK(relation(fam[k], fam[j]).orthogonal);
      }
    }
  }
}

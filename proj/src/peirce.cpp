#include "jbt/peirce.hpp"

#include <cmath>

#include "jbt/linalg.hpp"
#include "jbt/spectral.hpp"

namespace jbt {

Element apply_peirce2(const Element& e, const Element& x) {
  return triple_product(e, triple_product(e, x, e), e);
}

Element apply_peirce0(const Element& e, const Element& x) {
  return x - cplx(2, 0) * triple_product(e, e, x) + apply_peirce2(e, x);
}

Element apply_peirce1(const Element& e, const Element& x) {
  return cplx(2, 0) * (triple_product(e, e, x) - apply_peirce2(e, x));
}

void feed_element(Digest& d, const Element& x) {
  d.feed(x.factor.str());
  for (const auto& v : x.data.a) {
    d.feed(v.real());
    d.feed(v.imag());
  }
}

double tripotent_defect(const Element& x) {
  return norm(triple_product(x, x, x) - x);
}

bool is_tripotent(const Element& x) {
  return tripotent_defect(x) <= tol::eq_rel * (1.0 + norm(x));
}

Tripotent make_tripotent(const Element& x) {
  if (!is_tripotent(x))
    throw Error(Err::NotATripotent,
                "defect " + std::to_string(tripotent_defect(x)));
  const AtomicDecomposition dec = atomic_decompose(x);
  int r = 0;
  for (const double l : dec.lambdas) {
    if (std::abs(l - 1.0) <= tol::eig_bucket) {
      ++r;
    } else if (l > tol::eig_bucket) {
      throw Error(Err::NotATripotent,
                  "singular value " + std::to_string(l) + " off {0,1}");
    }
  }
  return Tripotent{x, r, r == 1};
}

Tripotent trusted_tripotent(Element x, int rank) {
  const double defect = tripotent_defect(x);
  if (defect > 1e-7 * (1.0 + norm(x)))
    throw Error(Err::Internal,
                "constructed tripotent has defect " + std::to_string(defect));
  return Tripotent{std::move(x), rank, rank == 1};
}

PeirceSystem peirce(const Tripotent& e) {
  const FactorDescriptor& f = e.factor();
  const RealLinearMap q = operator_Q(e.element);
  const RealLinearMap l = operator_L(e.element, e.element);
  PeirceSystem sys;
  sys.e = e;
  sys.p2 = q * q;
  sys.p1 = 2.0 * (l - sys.p2);
  sys.p0 = RealLinearMap::identity(f) - 2.0 * l + sys.p2;

  // Eigen-bucket the symmetrised L(e,e) at {0, 1/2, 1} and cross-check the
  // spectral projections against the formula versions.
  const int dreal = 2 * f.complex_dim();
  const SymEig eig = sym_eig(l.m);
  std::array<int, 3> real_dims{};  // order: U2, U1, U0
  RMat p2s(dreal, dreal), p1s(dreal, dreal), p0s(dreal, dreal);
  for (int r = 0; r < dreal; ++r) {
    const double lam = eig.values[r];
    RMat* target = nullptr;
    if (std::abs(lam - 1.0) <= tol::eig_bucket) {
      ++real_dims[0];
      target = &p2s;
    } else if (std::abs(lam - 0.5) <= tol::eig_bucket) {
      ++real_dims[1];
      target = &p1s;
    } else if (std::abs(lam) <= tol::eig_bucket) {
      ++real_dims[2];
      target = &p0s;
    } else {
      throw Error(Err::NotATripotent,
                  "L(e,e) eigenvalue " + std::to_string(lam) + " off buckets");
    }
    for (int i = 0; i < dreal; ++i)
      for (int j = 0; j < dreal; ++j)
        (*target)(i, j) += eig.vectors(r, i) * eig.vectors(r, j);
  }
  for (int k = 0; k < 3; ++k) {
    if (real_dims[k] % 2 != 0)
      throw Error(Err::Internal, "odd real Peirce eigenspace dimension");
    sys.dims[k] = real_dims[k] / 2;
  }
  const double mismatch =
      std::max({op_norm(sys.p2.m - p2s), op_norm(sys.p1.m - p1s),
                op_norm(sys.p0.m - p0s)});
  if (mismatch > 1e-6)
    throw Error(Err::Internal,
                "Peirce formula/spectral mismatch " + std::to_string(mismatch));
  return sys;
}

bool orthogonal_elements(const Element& x, const Element& y) {
  const double scale = (1.0 + norm(x)) * (1.0 + norm(x)) * (1.0 + norm(y));
  return norm(triple_product(x, x, y)) <= tol::eq_rel * scale;
}

TripotentRelation relation(const Tripotent& u, const Tripotent& v) {
  require_same_factor(u.element, v.element);
  TripotentRelation rel;
  const double su = 1.0 + norm(u.element);
  const double sv = 1.0 + norm(v.element);

  rel.orthogonal = orthogonal_elements(u.element, v.element);
  rel.leq = norm(apply_peirce2(u.element, v.element) - u.element) <=
            tol::eq_rel * su * sv;
  const bool u_in_v1 =
      norm(apply_peirce1(v.element, u.element) - u.element) <= tol::eq_rel * su;
  const bool v_in_u1 =
      norm(apply_peirce1(u.element, v.element) - v.element) <= tol::eq_rel * sv;
  const bool u_in_v2 =
      norm(apply_peirce2(v.element, u.element) - u.element) <= tol::eq_rel * su;
  const bool v_in_u2 =
      norm(apply_peirce2(u.element, v.element) - v.element) <= tol::eq_rel * sv;
  rel.collinear = u_in_v1 && v_in_u1;
  rel.governs_uv = v_in_u2 && u_in_v1;
  rel.governs_vu = u_in_v2 && v_in_u1;
  return rel;
}

ExtremeRayComponents extreme_ray_components(const Tripotent& e,
                                            const Tripotent& v) {
  require_same_factor(e.element, v.element);
  if (!v.minimal) throw Error(Err::NotMinimal, "extreme ray needs minimal v");
  ExtremeRayComponents out{0.0, 0.0, apply_peirce2(e.element, v.element),
                           apply_peirce0(e.element, v.element)};
  out.alpha = norm(out.p2part);
  out.delta = norm(out.p0part);
  // extreme ray property: the nonzero parts are multiples of minimal
  // tripotents
  for (const auto& [part, weight] :
       {std::pair<const Element*, double>{&out.p2part, out.alpha},
        {&out.p0part, out.delta}}) {
    if (weight > 1e-6) {
      const Tripotent t = make_tripotent(cplx(1.0 / weight, 0) * *part);
      if (!t.minimal)
        throw Error(Err::Internal, "extreme ray part not minimal");
    }
  }
  return out;
}

CheckResult check_peirce_positivity(const Tripotent& e, const Element& x) {
  require_same_factor(e.element, x);
  CheckResult res;
  res.name = "peirce_positivity";
  Digest dg;
  feed_element(dg, e.element);
  feed_element(dg, x);
  res.inputs_digest = dg.hex();
  res.samples = 1;

  const Element y = apply_peirce2(e.element, triple_product(x, x, e.element));
  const double ynorm = norm(y);

  // (i) positivity in U2(e): spectrum of L(y,e) restricted to U2(e)
  const RealLinearMap q = operator_Q(e.element);
  const RMat p2 = (q * q).m;
  const RMat basis = range_basis(p2);
  if (basis.cols > 0) {
    const RMat rest = transpose(basis) * (operator_L(y, e.element).m * basis);
    const SymEig eig = sym_eig(rest);
    const double min_eig = eig.values.back();
    res.record("min_spectrum_violation", std::max(0.0, -min_eig), 0.0);
    res.measured["min_spectrum"] = min_eig;
  } else {
    res.record("min_spectrum_violation", 0.0, 0.0);
  }

  // (ii) and (iii) for the Peirce 1 and 2 parts of x
  for (int j : {1, 2}) {
    const Element xj = j == 1 ? apply_peirce1(e.element, x)
                              : apply_peirce2(e.element, x);
    const double bracket = norm(triple_product(xj, xj, e.element));
    res.record("bracket_p" + std::to_string(j), bracket, ynorm);
    const double xn = norm(xj);
    res.record("sq_norm_p" + std::to_string(j), xn * xn, 4.0 * bracket);
  }
  return res;
}

}  // namespace jbt

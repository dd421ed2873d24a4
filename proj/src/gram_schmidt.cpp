#include "jbt/gram_schmidt.hpp"

#include <cmath>

#include "jbt/linalg.hpp"

namespace jbt {

namespace {

constexpr double kSpanCut = 1e-7;  // residual below this is "already spanned"

int gs_append(CMat& basis, int have, const cplx* cand, int n) {
  std::vector<cplx> z(cand, cand + n);
  for (int pass = 0; pass < 2; ++pass) {
    for (int k = 0; k < have; ++k) {
      cplx proj = 0;
      for (int i = 0; i < n; ++i) proj += z[i] * std::conj(basis(i, k));
      for (int i = 0; i < n; ++i) z[i] -= proj * basis(i, k);
    }
  }
  double nrm = 0;
  for (int i = 0; i < n; ++i) nrm += std::norm(z[i]);
  nrm = std::sqrt(nrm);
  if (nrm < kSpanCut) return have;
  for (int i = 0; i < n; ++i) basis(i, have) = z[i] / nrm;
  return have + 1;
}

CMat column(const CMat& m, int j) {
  CMat c(m.rows, 1);
  for (int i = 0; i < m.rows; ++i) c(i, 0) = m(i, j);
  return c;
}

CMat resize_cols(CMat m, int cols) {
  CMat out(m.rows, cols);
  for (int j = 0; j < cols && j < m.cols; ++j)
    for (int i = 0; i < m.rows; ++i) out(i, j) = m(i, j);
  return out;
}

}  // namespace

CMat orthonormal_within(const CMat& space, const CMat& avoid, int want) {
  const int n = space.rows;
  // obstructions: the projections of avoid's columns into span(space)
  CMat obstruction(n, avoid.cols + want + space.cols);
  int have = 0;
  for (int j = 0; j < avoid.cols; ++j) {
    std::vector<cplx> proj(n, cplx(0, 0));
    for (int k = 0; k < space.cols; ++k) {
      cplx coef = 0;
      for (int i = 0; i < n; ++i) coef += avoid(i, j) * std::conj(space(i, k));
      for (int i = 0; i < n; ++i) proj[i] += coef * space(i, k);
    }
    have = gs_append(obstruction, have, proj.data(), n);
  }
  const int blocked = have;
  // now extend past the obstructions with the space's own columns
  for (int j = 0; j < space.cols && have - blocked < want; ++j) {
    const CMat c = column(space, j);
    have = gs_append(obstruction, have, c.a.data(), n);
  }
  if (have - blocked < want)
    throw Error(Err::Internal, "requested " + std::to_string(want) +
                                   " directions, found " +
                                   std::to_string(have - blocked));
  CMat out(n, want);
  for (int j = 0; j < want; ++j)
    for (int i = 0; i < n; ++i) out(i, j) = obstruction(i, blocked + j);
  return out;
}

TripotentSpans tripotent_spans(const Tripotent& e) {
  if (!e.factor().is_matrix())
    throw Error(Err::UnsupportedFactor, "spans need a matrix factor");
  const Svd s = svd(e.element.data);
  int k = 0;
  while (k < int(s.sigma.size()) && s.sigma[k] > 0.5) ++k;
  return TripotentSpans{resize_cols(s.u, k), resize_cols(s.v, k)};
}

Tripotent range_tripotent(const Element& x) {
  const AtomicDecomposition dec = atomic_decompose(x);
  if (dec.lambdas.empty()) throw Error(Err::ZeroElement, "range of zero");
  Element sum = zero_element(x.factor);
  int count = 0;
  for (std::size_t i = 0; i < dec.lambdas.size(); ++i) {
    if (dec.lambdas[i] > tol::rank_rel * dec.lambdas[0]) {
      sum = sum + dec.atoms[i].element;
      ++count;
    }
  }
  return trusted_tripotent(std::move(sum), count);
}

namespace {

// Assemble factor tripotents from orthonormal column sets.
Element type1_pi(const FactorDescriptor& f, const CMat& a, const CMat& b) {
  CMat m(f.rows, f.cols);
  for (int j = 0; j < a.cols; ++j)
    for (int r = 0; r < f.rows; ++r)
      for (int c = 0; c < f.cols; ++c)
        m(r, c) += a(r, j) * std::conj(b(c, j));
  return Element{f, std::move(m)};
}

Element type3_pi(const FactorDescriptor& f, const CMat& a) {
  CMat m(f.n, f.n);
  for (int j = 0; j < a.cols; ++j)
    for (int r = 0; r < f.n; ++r)
      for (int c = 0; c < f.n; ++c) m(r, c) += a(r, j) * a(c, j);
  return Element{f, std::move(m)};
}

Element type2_pi(const FactorDescriptor& f, const CMat& c) {
  if (c.cols % 2 != 0) throw Error(Err::Internal, "type2 needs paired columns");
  CMat m(f.n, f.n);
  for (int j = 0; j < c.cols; j += 2)
    for (int r = 0; r < f.n; ++r)
      for (int s = 0; s < f.n; ++s)
        m(r, s) += c(r, j) * c(s, j + 1) - c(r, j + 1) * c(s, j);
  return Element{f, std::move(m)};
}

bool spin_parallel(const Element& a, const Element& b) {
  const cplx ip = inner(a, b);
  const double na = std::sqrt(inner(a, a).real());
  const double nb = std::sqrt(inner(b, b).real());
  return std::abs(std::abs(ip) - na * nb) <= 1e-9 * (1.0 + na * nb);
}

Tripotent spin_rank2_cover(const Tripotent& u) {
  // u + conj(u) is a rank-2 (unitary) spin tripotent; U2 of it is everything.
  return trusted_tripotent(u.element + conj_element(u.element), 2);
}

}  // namespace

Tripotent enclose_minimals(const FactorDescriptor& f,
                           const std::vector<Tripotent>& minimals) {
  for (const Tripotent& t : minimals)
    if (!t.minimal) throw Error(Err::NotMinimal, "enclose_minimals inputs");
  const bool algebra = f.kind == FactorKind::Type3 ||
                       f.kind == FactorKind::Spin ||
                       (f.kind == FactorKind::Type1 && f.rows == f.cols);
  if (!algebra)
    throw Error(Err::UnsupportedFactor,
                f.str() + " is not realised as a JB*-algebra here");
  if (minimals.empty()) return Tripotent{zero_element(f), 0, false};

  if (f.kind == FactorKind::Spin) {
    bool parallel = true;
    for (std::size_t i = 1; i < minimals.size(); ++i)
      parallel = parallel &&
                 spin_parallel(minimals[0].element, minimals[i].element);
    return parallel ? minimals[0] : spin_rank2_cover(minimals[0]);
  }

  // gather supports
  const int rows = f.shape().first;
  CMat acols(rows, 0), bcols(f.shape().second, 0);
  {
    std::vector<CMat> lefts, rights;
    int total = 0;
    for (const Tripotent& t : minimals) {
      const TripotentSpans sp = tripotent_spans(t);
      lefts.push_back(sp.col);
      rights.push_back(sp.row);
      total += sp.col.cols;
    }
    CMat la(rows, total), rb(f.shape().second, total);
    int at = 0;
    for (std::size_t i = 0; i < lefts.size(); ++i)
      for (int j = 0; j < lefts[i].cols; ++j, ++at) {
        for (int r = 0; r < la.rows; ++r) la(r, at) = lefts[i](r, j);
        for (int r = 0; r < rb.rows; ++r) rb(r, at) = rights[i](r, j);
      }
    acols = std::move(la);
    bcols = std::move(rb);
  }

  if (f.kind == FactorKind::Type3) {
    CMat basis(rows, acols.cols);
    int have = 0;
    for (int j = 0; j < acols.cols; ++j) {
      const CMat c = column(acols, j);
      have = gs_append(basis, have, c.a.data(), rows);
    }
    return make_tripotent(type3_pi(f, resize_cols(basis, have)));
  }

  // square type 1: pair the two span bases, padding the smaller side
  CMat abasis(rows, acols.cols), bbasis(rows, bcols.cols);
  int ahave = 0, bhave = 0;
  for (int j = 0; j < acols.cols; ++j) {
    const CMat c = column(acols, j);
    ahave = gs_append(abasis, ahave, c.a.data(), rows);
  }
  for (int j = 0; j < bcols.cols; ++j) {
    const CMat c = column(bcols, j);
    bhave = gs_append(bbasis, bhave, c.a.data(), rows);
  }
  const int k = std::max(ahave, bhave);
  CMat a = resize_cols(abasis, ahave);
  CMat b = resize_cols(bbasis, bhave);
  if (ahave < k) {
    const CMat pad = orthonormal_within(CMat::identity(rows), a, k - ahave);
    CMat widened(rows, k);
    for (int j = 0; j < ahave; ++j)
      for (int i = 0; i < rows; ++i) widened(i, j) = a(i, j);
    for (int j = 0; j < k - ahave; ++j)
      for (int i = 0; i < rows; ++i) widened(i, ahave + j) = pad(i, j);
    a = std::move(widened);
  }
  if (bhave < k) {
    const CMat pad = orthonormal_within(CMat::identity(rows), b, k - bhave);
    CMat widened(rows, k);
    for (int j = 0; j < bhave; ++j)
      for (int i = 0; i < rows; ++i) widened(i, j) = b(i, j);
    for (int j = 0; j < k - bhave; ++j)
      for (int i = 0; i < rows; ++i) widened(i, bhave + j) = pad(i, j);
    b = std::move(widened);
  }
  return make_tripotent(type1_pi(f, a, b));
}

Tripotent peirce2_witness(const Tripotent& e,
                          const std::vector<Tripotent>& minimals) {
  const FactorDescriptor& f = e.factor();
  for (const Tripotent& t : minimals)
    if (!t.minimal) throw Error(Err::NotMinimal, "peirce2_witness inputs");

  // project each input into U2(e): normalised P2(e)v, else the Peirce-2 part
  // of {v,v,e} when the direct projection vanishes
  std::vector<Tripotent> inside;
  for (const Tripotent& v : minimals) {
    Element p2 =
        triple_product(e.element, triple_product(e.element, v.element, e.element),
                       e.element);
    double w = norm(p2);
    if (w <= 1e-8) {
      const Element br = triple_product(v.element, v.element, e.element);
      p2 = triple_product(e.element, triple_product(e.element, br, e.element),
                          e.element);
      w = norm(p2);
    }
    if (w <= 1e-8) continue;  // orthogonal input: contributes nothing
    Tripotent t = make_tripotent(cplx(1.0 / w, 0) * p2);
    if (!t.minimal)
      throw Error(Err::Internal, "extreme-ray witness not minimal");
    inside.push_back(std::move(t));
  }
  if (inside.empty()) return Tripotent{zero_element(f), 0, false};

  if (f.kind == FactorKind::Spin) {
    if (e.rank == 1) return e;
    bool parallel = true;
    for (std::size_t i = 1; i < inside.size(); ++i)
      parallel =
          parallel && spin_parallel(inside[0].element, inside[i].element);
    return parallel ? inside[0] : spin_rank2_cover(inside[0]);
  }

  const TripotentSpans esp = tripotent_spans(e);
  // supports of the inside witnesses, expanded inside e's spans
  CMat wa(esp.col.rows, 0), wb(esp.row.rows, 0);
  {
    int total = 0;
    std::vector<TripotentSpans> sps;
    for (const Tripotent& t : inside) {
      sps.push_back(tripotent_spans(t));
      total += sps.back().col.cols;
    }
    CMat la(esp.col.rows, total), rb(esp.row.rows, total);
    int at = 0;
    for (const TripotentSpans& sp : sps)
      for (int j = 0; j < sp.col.cols; ++j, ++at) {
        for (int i = 0; i < la.rows; ++i) la(i, at) = sp.col(i, j);
        for (int i = 0; i < rb.rows; ++i) rb(i, at) = sp.row(i, j);
      }
    wa = std::move(la);
    wb = std::move(rb);
  }

  switch (f.kind) {
    case FactorKind::Type3: {
      CMat basis(wa.rows, wa.cols);
      int have = 0;
      for (int j = 0; j < wa.cols; ++j) {
        const CMat c = column(wa, j);
        have = gs_append(basis, have, c.a.data(), wa.rows);
      }
      return make_tripotent(type3_pi(f, resize_cols(basis, have)));
    }
    case FactorKind::Type2: {
      CMat basis(wa.rows, wa.cols + 1);
      int have = 0;
      for (int j = 0; j < wa.cols; ++j) {
        const CMat c = column(wa, j);
        have = gs_append(basis, have, c.a.data(), wa.rows);
      }
      if (have % 2 != 0) {
        // pad to an even pairing from within e's column space
        const CMat pad =
            orthonormal_within(esp.col, resize_cols(basis, have), 1);
        for (int i = 0; i < basis.rows; ++i) basis(i, have) = pad(i, 0);
        ++have;
      }
      return make_tripotent(type2_pi(f, resize_cols(basis, have)));
    }
    case FactorKind::Type1: {
      CMat abasis(wa.rows, wa.cols), bbasis(wb.rows, wb.cols);
      int ahave = 0, bhave = 0;
      for (int j = 0; j < wa.cols; ++j) {
        const CMat c = column(wa, j);
        ahave = gs_append(abasis, ahave, c.a.data(), wa.rows);
      }
      for (int j = 0; j < wb.cols; ++j) {
        const CMat c = column(wb, j);
        bhave = gs_append(bbasis, bhave, c.a.data(), wb.rows);
      }
      const int k = std::max(ahave, bhave);
      CMat a = resize_cols(abasis, ahave), b = resize_cols(bbasis, bhave);
      if (ahave < k) {
        const CMat pad = orthonormal_within(esp.col, a, k - ahave);
        CMat widened(a.rows, k);
        for (int j = 0; j < ahave; ++j)
          for (int i = 0; i < a.rows; ++i) widened(i, j) = a(i, j);
        for (int j = 0; j < k - ahave; ++j)
          for (int i = 0; i < a.rows; ++i) widened(i, ahave + j) = pad(i, j);
        a = std::move(widened);
      }
      if (bhave < k) {
        const CMat pad = orthonormal_within(esp.row, b, k - bhave);
        CMat widened(b.rows, k);
        for (int j = 0; j < bhave; ++j)
          for (int i = 0; i < b.rows; ++i) widened(i, j) = b(i, j);
        for (int j = 0; j < k - bhave; ++j)
          for (int i = 0; i < b.rows; ++i) widened(i, bhave + j) = pad(i, j);
        b = std::move(widened);
      }
      return make_tripotent(type1_pi(f, a, b));
    }
    default:
      throw Error(Err::Internal, "unreachable");
  }
}

Tripotent complement_tripotent(const Tripotent& e, const Tripotent& f) {
  require_same_factor(e.element, f.element);
  if (f.rank >= e.rank)
    throw Error(Err::RankOrderViolation,
                "rank(f)=" + std::to_string(f.rank) +
                    " >= rank(e)=" + std::to_string(e.rank));
  if (f.rank == 0) return e;
  const FactorDescriptor& fac = e.factor();
  const int want = e.rank - f.rank;

  Tripotent out{zero_element(fac), 0, false};
  if (fac.kind == FactorKind::Spin) {
    // only (rank 2, rank 1) reaches here; the conjugate of a minimal is the
    // minimal spanning U0 of it
    out = trusted_tripotent(conj_element(f.element), 1);
  } else {
    const TripotentSpans esp = tripotent_spans(e);
    const TripotentSpans fsp = tripotent_spans(f);
    switch (fac.kind) {
      case FactorKind::Type1: {
        const CMat a = orthonormal_within(esp.col, fsp.col, want);
        const CMat b = orthonormal_within(esp.row, fsp.row, want);
        out = make_tripotent(type1_pi(fac, a, b));
        break;
      }
      case FactorKind::Type3: {
        const CMat a = orthonormal_within(esp.col, fsp.col, want);
        out = make_tripotent(type3_pi(fac, a));
        break;
      }
      case FactorKind::Type2: {
        const CMat c = orthonormal_within(esp.col, fsp.col, 2 * want);
        out = make_tripotent(type2_pi(fac, c));
        break;
      }
      default:
        throw Error(Err::Internal, "unreachable");
    }
  }
  if (out.rank != want)
    throw Error(Err::Internal, "complement rank " + std::to_string(out.rank));
  if (!orthogonal_elements(out.element, f.element))
    throw Error(Err::Internal, "complement not orthogonal to f");
  return out;
}

Tripotent minimax_witness(const AtomicDecomposition& x_dec, const Tripotent& e,
                          int n) {
  if (e.rank != n)
    throw Error(Err::RankMismatch, "witness needs rank(e) = n");
  if (n < 1) throw Error(Err::RankMismatch, "n >= 1");
  std::vector<Tripotent> head;
  for (int i = 0; i + 1 < n && i < int(x_dec.atoms.size()); ++i)
    head.push_back(x_dec.atoms[i]);
  const Tripotent blocker = peirce2_witness(e, head);
  Tripotent v = e;
  if (blocker.rank > 0) {
    const Tripotent comp = complement_tripotent(e, blocker);
    v = atomic_decompose(comp.element).atoms[0];
  } else if (e.rank > 1) {
    v = atomic_decompose(e.element).atoms[0];
  }
  // contract: v is minimal, sits in U2(e), and kills the leading atoms
  if (!v.minimal) throw Error(Err::Internal, "witness not minimal");
  for (const Tripotent& h : head)
    if (!orthogonal_elements(v.element, h.element))
      throw Error(Err::Internal, "witness not orthogonal to a leading atom");
  return v;
}

std::vector<Tripotent> witness_family(const AtomicDecomposition& x_dec,
                                      const Tripotent& e, int n) {
  std::vector<Tripotent> family(n, Tripotent{zero_element(e.factor()), 0, false});
  Tripotent cur = e;
  for (int k = n; k >= 1; --k) {
    const Tripotent v = minimax_witness(x_dec, cur, k);
    family[k - 1] = v;
    if (k > 1) cur = complement_tripotent(cur, v);
  }
  return family;
}

}  // namespace jbt

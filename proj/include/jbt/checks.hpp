#pragma once

#include "jbt/random.hpp"

namespace jbt {

// Executable checkers. Each returns a CheckResult whose margin is the worst
// (bound - measured) across its certificates; pass <=> margin >= -tol slack.

// Minimax principle, four one-sided certificates:
//  (i)  minimal v sampled in U2(v_1+..+v_n) give ||x||_v >= lambda_n,
//  (ii) constructed witnesses at random rank-n e give ||x||_v <= lambda_n,
//  (iii) minimal v sampled in U0(v_1+..+v_{n-1}) give ||x||_v <= lambda_n,
//  (iv) complements inside U2(v_1+..+v_n) of random rank-(n-1) f give
//       ||x||_v >= lambda_n.
CheckResult check_minimax(const Element& x, int n, int trials, Rng& rng);

// sup_n |lambda_n(x) - lambda_n(y)| <= ||x - y||, index ranges zero-padded.
CheckResult check_weyl(const Element& x, const Element& y);

// lambda_n(P2(e)x), lambda_n(P0(e)x) <= lambda_n(x).
CheckResult check_interlacing(const Element& x, const Tripotent& e);

// lambda_n(x) = min distance to rank <= n-1: the truncation attains it and
// random low-rank probes never beat it.
CheckResult check_distance_to_rank(const Element& x, int n, int trials,
                                   Rng& rng);

// Ky Fan maximum principle for the p-seminorms, frame bounds included;
// p = 2 additionally certifies frame independence.
CheckResult check_kyfan(const Element& x, int n, double p, int trials,
                        Rng& rng);

// a_ij = ||v_i||_{u_j}^2 for two frames of one finite-rank algebra.
RMat stochastic_matrix(const Frame& vs, const Frame& us);

// Tripotent distance bounds in terms of delta = ||e - P2(e)f||.
CheckResult check_tripotent_distance(const Tripotent& e, const Tripotent& f);

// Peirce projection continuity: ||P2(e)-P2(f)|| <= 4 delta etc., cross
// products <= 8 delta, and the face estimates when x with x = e + P0(e)x is
// supplied.
CheckResult check_peirce_continuity(const Tripotent& e, const Tripotent& f,
                                    const Element* x);

// Davis-type bound for selfadjoint elements of a JB*-algebra factor
// (type 3, or a Hermitian pair in a square type 1).
CheckResult davis_pair(const Element& a, const Element& b, double nu,
                       double mu, double gamma);

struct PerturbationTrial {
  Element x, y;
  int n = 0;
  double delta = 0.0;
  double epsilon_target = 0.0;
  std::vector<double> gaps;      // sigma_i - sigma_{i+1}, i = 1..n
  std::vector<double> h_values;  // audit trail: t_k and h_k(t_k) per level
};

// The constructive delta-schedule from the spectral-resolution continuity
// proof: solves (m+1) h(t) + 2 sqrt(2) sqrt(h(t)) <= eps level by level and
// recurses on the induction budget.
PerturbationTrial continuity_delta(const Element& x, int n, double epsilon);

// Perturbs x within the schedule's delta and checks rank stability and
// ||e_i - f_i|| <= epsilon for the first n spectral resolutions.
CheckResult check_spectral_continuity(const Element& x, int n, double epsilon,
                                      int trials, Rng& rng);

// Support tripotent stability for norm-one x under a
// ||x - y|| < gamma/4 perturbation.
CheckResult support_perturbation_bound(const Element& x, const Element& y);

void feed_element(Digest& d, const Element& x);

}  // namespace jbt

#pragma once

#include <cstdint>
#include <string_view>

#include "jbt/gram_schmidt.hpp"

namespace jbt {

// Deterministic, platform-independent random streams. Substreams derive
// from (master seed, suite name, trial index) by counter-based mixing, so
// trial order never affects reproducibility.

struct Rng {
  std::uint64_t state = 0x9e3779b97f4a7c15ull;

  std::uint64_t next_u64();
  double uniform();            // [0,1)
  double uniform(double a, double b);
  double normal();
  cplx cnormal();
};

Rng make_rng(std::uint64_t seed);
Rng substream(std::uint64_t master, std::string_view suite, std::uint64_t index);

// Membership-projected Gaussian element.
Element gaussian_element(const FactorDescriptor& f, Rng& rng);

// n x k complex matrix with Haar-orthonormal columns.
CMat haar_cols(int n, int k, Rng& rng);

std::vector<Tripotent> random_orthogonal_minimals(const FactorDescriptor& f,
                                                  int k, Rng& rng);
Tripotent random_minimal(const FactorDescriptor& f, Rng& rng);
Tripotent random_tripotent(const FactorDescriptor& f, int rank, Rng& rng);

Tripotent random_minimal_in_peirce2(const Tripotent& e, Rng& rng);
Tripotent random_minimal_in_peirce0(const Tripotent& f, Rng& rng);
std::vector<Tripotent> random_frame_in_peirce2(const Tripotent& e, Rng& rng);

// Singular value laws for generated instances.
struct RandomModel {
  enum class Law { UniformGap, Clustered };
  Law law = Law::UniformGap;
  double min_gap = 0.1;  // UniformGap
  int k = 2;             // Clustered: multiplicity of the top value
  double gap = 0.2;      // Clustered: distance below the cluster
};

Element random_element(const FactorDescriptor& f, const RandomModel& model,
                       Rng& rng);

}  // namespace jbt

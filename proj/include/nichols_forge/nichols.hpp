#pragma once

// Nichols algebras by iterated primitive quotients, with an independent
// quantum-symmetrizer oracle.

#include <cstddef>
#include <memory>
#include <vector>

#include "nichols_forge/braided.hpp"
#include "nichols_forge/freehopf.hpp"

namespace nf {

enum class Termination { Finite, UndeterminedAtCutoff };

const char* to_string(Termination t);

struct RelationStep {
  std::size_t iteration = 0;
  std::size_t degree = 0;
  std::size_t dim = 0;
};

struct NicholsReport {
  DiagonalBraiding braiding;
  std::size_t cutoff = 0;
  std::vector<std::size_t> dims;
  std::vector<RelationStep> relations;
  Termination termination = Termination::UndeterminedAtCutoff;
  std::size_t total = 0;       // meaningful when finite
  std::size_t top_degree = 0;  // meaningful when finite
  std::shared_ptr<const GradedQuotient> quotient;
};

NicholsReport nichols_compute(const DiagonalBraiding& b, std::size_t cutoff);

// Rank of Ω_n = Σ_{w ∈ S_n} T_w on V^{⊗n}, by a direct sum over permutations.
std::size_t symmetrizer_rank(const DiagonalBraiding& b, std::size_t n);
// Work estimate d^n n! must stay below this, and n <= 9.
constexpr double kOracleBudget = 2e7;
bool oracle_within_cutoff(const DiagonalBraiding& b, std::size_t n);

// Finite: dims up to the top degree.  Otherwise all computed dims.
std::vector<std::size_t> hilbert_series(const NicholsReport& r);
// dims[n] == dims[top - n]; only meaningful for finite reports.
bool poincare_symmetric(const NicholsReport& r);

}  // namespace nf

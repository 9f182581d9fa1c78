#pragma once

// Hopf filtrations, associated graded structures and one-parameter degenerations.
//
// A filtration is a chain R_lo ⊆ ... ⊆ R_hi with R_lo = 0 and R_hi = B;
// indices below lo mean 0 and above hi mean B.  The radical filtration has
// R_i = J^{-i} on [-K, 0]; the coradical filtration runs over [-1, top].
// Graded output assigns degree sign * i to the level-i piece, so both end up
// non-negatively graded.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "nichols_forge/structconst.hpp"

namespace nf {

enum class FiltrationKind { Radical, Coradical, Degree };
const char* to_string(FiltrationKind k);

struct HopfFiltration {
  FiltrationKind kind = FiltrationKind::Degree;
  int lo = 0, hi = 0;
  int degree_sign = 1;
  std::size_t ambient = 0;
  std::vector<Subspace> chain;  // chain[i - lo]

  Subspace at(int i) const;
  std::vector<std::size_t> dims() const;
};

HopfFiltration radical_filtration(const HopfStructure& t);
HopfFiltration coradical_filtration(const HopfStructure& t);
// R_i = span of basis vectors of degree <= i; needs a grading.
HopfFiltration degree_filtration(const HopfStructure& t);

struct FiltrationChecks {
  bool exhaustive = false;     // R_i = B for large i
  bool separated = false;      // R_i = 0 for small i
  bool nested = false;         // R_i ⊆ R_{i+1}
  bool multiplicative = false; // m(R_i ⊗ R_j) ⊆ R_{i+j}
  bool comultiplicative = false;  // Δ(R_k) ⊆ Σ_{i+j=k} R_i ⊗ R_j
  bool counit = false;         // ε(R_{-1}) = 0
  bool unit = false;           // Im u ⊆ R_0
  bool antipode = false;       // S(R_i) ⊆ R_i
  bool all() const {
    return exhaustive && separated && nested && multiplicative && comultiplicative && counit && unit && antipode;
  }
};
FiltrationChecks check_filtration(const HopfStructure& t, const HopfFiltration& f);

struct GradingSplit {
  int lo = 0, hi = 0;
  int degree_sign = 1;
  // Adapted basis as columns, block diagonal over isotypes, sorted inside each
  // isotype by (degree, pivot column).
  Matrix basis;
  std::vector<int> level;      // filtration index of each column
  std::vector<std::size_t> pivot;
  std::vector<int> degree() const;
};
GradingSplit grading_split(const HopfStructure& t, const HopfFiltration& f);

// Quotient construction on ⊕ R_i / R_{i-1}, written in the adapted basis.
HopfStructure associated_graded(const HopfStructure& t, const HopfFiltration& f);

// λ-exponent of every nonzero structure constant in the adapted basis, per map.
struct ExponentTable {
  std::map<std::string, std::map<int, std::size_t>> counts;  // map name -> exponent -> entries
  int min_exponent = 0;
  bool non_negative() const { return min_exponent >= 0; }
};
ExponentTable exponent_table(const HopfStructure& t, const GradingSplit& s);

// Filtration of a diagonal one-parameter subgroup with integer weights:
// T_i = span of the split columns of level i, R_i = ⊕_{j <= i} T_j.
// Non-diagonalizable subgroups are not handled.
HopfFiltration weight_filtration(const HopfStructure& t, const GradingSplit& s);

// Keeps the exponent-zero constants.  Throws InvalidFiltration on negative exponents.
HopfStructure degenerate_limit(const HopfStructure& t, const GradingSplit& s);

// act(φ(λ), t) with φ(λ) = Σ λ^{-i} Id_{T_i}.  λ = 0 is rejected.
HopfStructure one_param_orbit(const HopfStructure& t, const GradingSplit& s, const Scalar& lambda);

struct PathReport {
  std::vector<std::size_t> dims;  // dim P along the λ list
  std::size_t limit_dim = 0;
  bool constant() const;
  bool semicontinuous() const;  // every path value <= limit value
};
PathReport primitive_dims_along_path(const HopfStructure& t, const GradingSplit& s, const std::vector<Scalar>& lambdas);

}  // namespace nf

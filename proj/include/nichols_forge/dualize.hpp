#pragma once

// Duals of Hopf structures and the Nichols-ness criteria.
//
// The dual of B has the basis dual to that of B with labels negated.  It is
// paired with B through the nested pairing <f ⊗ g, x ⊗ y> = <f, y><g, x>, so
// m* is the transpose of Δ composed with the flip and Δ* is the flip composed
// with the transpose of m.  With this convention the dual braiding is the same
// matrix and dualizing twice returns the original structure exactly.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nichols_forge/structconst.hpp"

namespace nf {

struct DualResult {
  HopfStructure structure;
  // position[a]: global index in the dual of the functional dual to e_a.
  std::vector<std::size_t> position;
};

DualResult dual_with_map(const HopfStructure& t);
HopfStructure dual_structure(const HopfStructure& t);
// Degreewise transpose; throws NotGraded.
HopfStructure graded_dual(const HopfStructure& t);

// P(t) = Ker(Δ - id⊗u - u⊗id).
Subspace primitives_of(const HopfStructure& t);

struct PairingReport {
  std::size_t dim_p = 0;
  std::size_t dim_p_dual = 0;
  Matrix pairing;  // rows: basis of P(t*), columns: basis of P(t)
  std::size_t rank = 0;
  bool nichols = false;
};
PairingReport pairing_report(const HopfStructure& t);

struct GenerationReport {
  bool generated = false;
  bool dual_generated = false;
  bool nichols() const { return generated && dual_generated; }
};
// Subalgebra generated by a subspace, by product closure.
Subspace generated_subalgebra(const HopfStructure& t, const Subspace& gens);
GenerationReport generation_check(const HopfStructure& t);

struct GragrcReport {
  bool nichols = false;  // false means inconclusive
  std::optional<BlockTransform> witness;
  std::string note;
};
GragrcReport gragrc_check(const HopfStructure& t);

// H_n(t) = Ann(J*^{n+1}) for the coradical filtration of t and the radical
// powers of t*, for every n.
bool coradical_is_dual_radical(const HopfStructure& t);

// Throws NotCcc unless t is connected and coconnected.
void require_ccc(const HopfStructure& t);

}  // namespace nf

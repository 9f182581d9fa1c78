#pragma once

// Braided fusion categories in coordinates.
//
// Simples are 0..s-1 with 0 the unit.  V_{ij}^k has dimension N(i,j,k) and the
// basis of V ⊗ W is indexed p * dim W + q.  Blocks:
//   alpha(i,j,k,a,b,c): V_{ij}^a ⊗ V_{ak}^b -> V_{ic}^b ⊗ V_{jk}^c
//   sigma(i,j,k):       V_{ij}^k -> V_{ji}^k
// Missing blocks are zero.  The unit, counit-like and duality data live on
// one-dimensional spaces and are stored as scalars:
//   l[i] ∈ V_{0i}^i, r[i] ∈ V_{i0}^i, ev[i]: V_{ī i}^0 -> K, coev[i] ∈ V_{i ī}^0.
//
// Hexagons, with L(x,y,z)_{a,b} = V_{xy}^a ⊗ V_{az}^b and R(x,y,z)_{c,b} = V_{xc}^b ⊗ V_{yz}^c:
//   H1  α_{y,z,x} σ_{x,yz} α_{x,y,z} = (1 ⊗ σ_{xz}) α_{y,x,z} (σ_{xy} ⊗ 1)
//       where σ_{x,yz}(v ⊗ w) = w ⊗ σ_{xc}^b(v)
//   H2  α⁻¹_{z,x,y} σ_{xy,z} α⁻¹_{x,y,z} = (σ_{xz} ⊗ 1) α⁻¹_{x,z,y} (1 ⊗ σ_{yz})
//       where σ_{xy,z}(v ⊗ w) = σ_{az}^b(w) ⊗ v
// Here 1 ⊗ σ and σ ⊗ 1 act on the multiplicity factor only.

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "nichols_forge/braided.hpp"
#include "nichols_forge/linalg.hpp"
#include "nichols_forge/structconst.hpp"

namespace nf {

struct FusionData {
  int s = 1;
  std::vector<int> fusion;  // N(i,j,k) at (i*s + j)*s + k
  std::map<std::array<int, 6>, Matrix> alpha;
  std::map<std::array<int, 3>, Matrix> sigma;
  std::vector<Scalar> l, r;
  std::vector<int> dual;
  std::vector<Scalar> ev, coev;
  // Optional names of the simples, e.g. (g, c) for pointed centers.
  std::vector<Label> labels;

  int N(int i, int j, int k) const { return fusion[static_cast<std::size_t>((i * s + j) * s + k)]; }
  Matrix alpha_block(int i, int j, int k, int a, int b, int c) const;
  Matrix sigma_block(int i, int j, int k) const;
};

struct FusionCheck {
  std::string name;
  bool ok = true;
  bool informational = false;  // not part of the verdict
  std::size_t checked = 0;
  std::vector<std::string> failures;  // located tuples, capped
};

struct FusionOptions {
  std::size_t max_failures = 16;
  bool stop_at_first = false;
};

// Shapes, unit and duality support, invertible σ and α. Never throws.
FusionCheck verify_fusion_structure(const FusionData& f, const FusionOptions& o = {});
FusionCheck verify_pentagon(const FusionData& f, const FusionOptions& o = {});
FusionCheck verify_units(const FusionData& f, const FusionOptions& o = {});
FusionCheck verify_duality(const FusionData& f, const FusionOptions& o = {});
// X_ī -> X_ī(X_i X_ī) -> (X_ī X_i)X_ī -> X_ī through α⁻¹; reported, not judged.
FusionCheck verify_duality_reverse(const FusionData& f, const FusionOptions& o = {});
FusionCheck verify_braiding(const FusionData& f, const FusionOptions& o = {});

struct FusionReport {
  std::vector<FusionCheck> checks;
  bool pass() const;
};
// Structure first; the equation verifiers only run on well-formed data.
FusionReport verify_fusion(const FusionData& f, const FusionOptions& o = {});

// Z(Vec_G) for G = Z/d_1 x ... : simples (g, c), χ_c(h) = Π ζ_{d_j}^{c_j h_j},
// trivial associator, σ((g,χ),(h,ψ)) = ψ(g).  Labels follow LineCategory::yetter_drinfeld.
FusionData pointed_center_data(const std::vector<int>& group);

// q_ij = σ_{ij}^k for the given multiplicity-free simples (k the unique product).
DiagonalBraiding fusion_braiding(const FusionData& f, const std::vector<int>& simples);

// A single stored scalar of the data.
struct FusionEntry {
  enum Kind { Alpha, Sigma, Left, Right, Ev, Coev } kind;
  std::array<int, 6> key{};
  std::size_t row = 0, col = 0;
  std::string describe() const;
};
std::vector<FusionEntry> fusion_entries(const FusionData& f);
FusionData perturbed(const FusionData& f, const FusionEntry& e, const Scalar& delta);

}  // namespace nf

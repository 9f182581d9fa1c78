#pragma once

// Points (m, u, Δ, ε, S) of the structure-constant variety on an object
// B = ⊕ B_i ⊗ X_i of a pointed braided category with trivial associator.
//
// Simples are lines labelled by integer vectors (component a taken mod
// moduli[a], or free when moduli[a] == 0).  X_λ ⊗ X_μ = X_{λ+μ} and the
// braiding on X_λ ⊗ X_μ is Π_{a,b} pairing[a][b]^{λ_a μ_b}.
//
// Blocks: mul[i][j]: B_i ⊗ B_j -> B_k, dim_k x dim_i dim_j, where λ_k = λ_i + λ_j;
// comul[i][j]: B_k -> B_i ⊗ B_j, dim_i dim_j x dim_k.  Blocks whose target
// label is not an isotype of B are empty (0 x 0).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nichols_forge/braided.hpp"
#include "nichols_forge/linalg.hpp"

namespace nf {

using Label = std::vector<long>;

class LineCategory {
 public:
  LineCategory() = default;
  LineCategory(std::vector<int> moduli, std::vector<std::vector<Scalar>> pairing);

  // Letter i has label e_i; pairing = q.
  static LineCategory free(const DiagonalBraiding& b);
  // Labels (g, c) with χ(gen_j) = ζ_{d_j}^{c_j}; letter labels from the points.
  static LineCategory yetter_drinfeld(const YDDatum& d);
  static std::vector<Label> yd_letter_labels(const YDDatum& d);

  std::size_t rank() const { return moduli_.size(); }
  const std::vector<int>& moduli() const { return moduli_; }
  const std::vector<std::vector<Scalar>>& pairing() const { return pairing_; }

  Label zero() const { return Label(rank(), 0); }
  Label normalize(Label l) const;
  Label add(const Label& a, const Label& b) const;
  Label negate(const Label& a) const;
  Scalar braid(const Label& a, const Label& b) const;
  std::vector<Label> unit_vectors() const;

  friend bool operator==(const LineCategory& a, const LineCategory& b) {
    return a.moduli_ == b.moduli_ && a.pairing_ == b.pairing_;
  }

 private:
  std::vector<int> moduli_;
  std::vector<std::vector<Scalar>> pairing_;
};

struct Isotype {
  Label label;
  std::size_t dim = 0;
  friend bool operator==(const Isotype& a, const Isotype& b) { return a.label == b.label && a.dim == b.dim; }
};

class DecomposedObject {
 public:
  DecomposedObject() = default;
  // Labels must be distinct; they are sorted, dims follow their labels.
  DecomposedObject(LineCategory cat, std::vector<Isotype> isotypes);

  const LineCategory& category() const { return cat_; }
  const std::vector<Isotype>& isotypes() const { return iso_; }
  std::size_t count() const { return iso_.size(); }
  std::size_t dim(std::size_t i) const { return iso_[i].dim; }
  std::size_t offset(std::size_t i) const { return offsets_[i]; }
  std::size_t total_dim() const { return total_; }
  // Isotype holding the global basis index.
  std::size_t isotype_of(std::size_t global) const;
  // Index of the isotype with this label, or -1.
  long find(const Label& l) const;
  long unit_index() const { return find(cat_.zero()); }
  // Target isotype of i ⊗ j, or -1.
  long product(std::size_t i, std::size_t j) const { return prod_[i][j]; }

  friend bool operator==(const DecomposedObject& a, const DecomposedObject& b) {
    return a.cat_ == b.cat_ && a.iso_ == b.iso_;
  }

 private:
  LineCategory cat_;
  std::vector<Isotype> iso_;
  std::vector<std::size_t> offsets_;
  std::size_t total_ = 0;
  std::vector<std::vector<long>> prod_;
};

struct FlatStructure {
  Matrix m;        // N x N^2
  Matrix comul;    // N^2 x N
  Matrix unit;     // N x 1
  Matrix counit;   // 1 x N
  Matrix antipode; // N x N
};

struct HopfStructure {
  DecomposedObject object;
  std::vector<std::vector<Matrix>> mul;
  std::vector<std::vector<Matrix>> comul;
  Matrix unit;    // dim_0 x 1
  Matrix counit;  // 1 x dim_0
  std::vector<Matrix> antipode;
  // Degree of every global basis vector, if graded.
  std::optional<std::vector<int>> grading;

  std::size_t total_dim() const { return object.total_dim(); }
  FlatStructure flat() const;
  // Checks that the flat maps respect the decomposition; throws MalformedBlock.
  static HopfStructure from_flat(const DecomposedObject& obj, const FlatStructure& f,
                                 std::optional<std::vector<int>> grading = std::nullopt);
  // Zero blocks of the right shapes.
  static HopfStructure zeros(const DecomposedObject& obj);
  // K with trivial structure.
  static HopfStructure trivial(const LineCategory& cat);

  friend bool operator==(const HopfStructure& a, const HopfStructure& b);
  friend bool operator!=(const HopfStructure& a, const HopfStructure& b) { return !(a == b); }
};

// Throws MalformedBlock when a block has the wrong shape.
void check_shapes(const HopfStructure& t);

enum Axiom { kAssoc, kUnit, kCoassoc, kCounit, kBialgebra, kAntipodeLeft, kAntipodeRight, kWellFormed, kAxiomCount };
const char* axiom_name(int a);

struct AxiomReport {
  bool ok[kAxiomCount] = {true, true, true, true, true, true, true, true};
  std::string first_failure[kAxiomCount];
  bool pass() const;
};

AxiomReport verify_axioms(const HopfStructure& t);

// J = Ker ε, J^k = m(J^{k-1} ⊗ J).  J^0 = B.
std::vector<Subspace> radical_powers(const HopfStructure& t);
bool check_connected(const HopfStructure& t);
bool check_coconnected(const HopfStructure& t);

// γ in Π GL(B_i), one square block per isotype.
using BlockTransform = std::vector<Matrix>;
BlockTransform identity_transform(const DecomposedObject& obj);
Matrix flat_transform(const DecomposedObject& obj, const BlockTransform& g);
// Splits a flat matrix into isotype blocks; throws MalformedBlock if it mixes isotypes.
BlockTransform split_transform(const DecomposedObject& obj, const Matrix& flat);
BlockTransform compose(const BlockTransform& a, const BlockTransform& b);  // a ∘ b

// m' = γ m (γ⁻¹ ⊗ γ⁻¹), Δ' = (γ ⊗ γ) Δ γ⁻¹, u' = γ u, ε' = ε γ⁻¹, S' = γ S γ⁻¹.
// Throws SingularTransform.  Grading survives when γ preserves every degree.
HopfStructure act(const BlockTransform& g, const HopfStructure& t);

// Every block maps degree d ⊗ e into degree d + e (and dually); needs a grading.
bool respects_grading(const HopfStructure& t);
// Degree-n part spanned by m(B_1 ⊗ B_{n-1}) for all n >= 2.
bool generated_in_degree_one(const HopfStructure& t);

struct IsoSearchStats {
  std::size_t candidates_tried = 0;
  bool truncated = false;
};

// Searches label-preserving permutations of degree-one bases, extended through
// degree-one generation.  Throws NotGraded when a precondition fails.
std::optional<BlockTransform> graded_iso_search(const HopfStructure& t1, const HopfStructure& t2,
                                                IsoSearchStats* stats = nullptr);

struct NicholsReport;
// Requires a finite report; letter labels default to the free category.
HopfStructure from_nichols(const NicholsReport& r);
HopfStructure from_nichols(const NicholsReport& r, const LineCategory& cat, const std::vector<Label>& letter_labels);

}  // namespace nf

#pragma once

#include "nichols_forge/braided.hpp"
#include "nichols_forge/scalar.hpp"

namespace fx {

inline nf::Scalar z(int n, long k = 1) { return nf::Scalar::root_of_unity(n, k); }

inline nf::DiagonalBraiding rank_one(int n, long k = 1) { return nf::DiagonalBraiding({{z(n, k)}}); }

inline nf::DiagonalBraiding quantum_plane() {
  return nf::DiagonalBraiding({{nf::Scalar(-1), nf::Scalar(1)}, {nf::Scalar(1), nf::Scalar(-1)}});
}

// Cartan type A2 at -1: dimension 8, Hilbert series 1,2,2,2,1.
inline nf::DiagonalBraiding a2_minus_one() {
  return nf::DiagonalBraiding({{nf::Scalar(-1), nf::Scalar(-1)}, {nf::Scalar(1), nf::Scalar(-1)}});
}

}  // namespace fx

#include "nichols_forge/nichols.hpp"
#include "nichols_forge/structconst.hpp"

namespace fx {

inline nf::HopfStructure nichols_hopf(const nf::DiagonalBraiding& b, std::size_t cutoff = 8) {
  return nf::from_nichols(nf::nichols_compute(b, cutoff));
}

// K[Z/2] in the trivial category: basis e, g with g^2 = e.
inline nf::HopfStructure group_algebra_z2() {
  nf::LineCategory cat({}, {});
  nf::DecomposedObject obj(cat, {{{}, 2}});
  nf::HopfStructure t = nf::HopfStructure::zeros(obj);
  auto& m = t.mul[0][0];
  m.set(0, 0, 1);  // e e
  m.set(1, 1, 1);  // e g
  m.set(1, 2, 1);  // g e
  m.set(0, 3, 1);  // g g
  auto& d = t.comul[0][0];
  d.set(0, 0, 1);
  d.set(3, 1, 1);
  t.unit.set(0, 0, 1);
  t.counit.set(0, 0, 1);
  t.counit.set(0, 1, 1);
  t.antipode[0] = nf::Matrix::identity(2);
  return t;
}

}  // namespace fx

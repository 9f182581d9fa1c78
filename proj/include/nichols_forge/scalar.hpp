#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_N).
//
// A Scalar at conductor N is stored as the coefficient vector of its unique
// representative of degree < phi(N) in Q[x]/(Phi_N).  Operands at different
// conductors are lifted to the lcm conductor.  Results that happen to be
// rational are demoted to conductor 1, so small constants stay cheap.

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace nf {

using Rational = mpq_class;
using Integer = mpz_class;

// Coefficients of Phi_n, lowest degree first.  Memoized, safe for concurrent use.
const std::vector<long>& cyclotomic_polynomial(int n);
int euler_phi(int n);

class Scalar {
 public:
  Scalar();
  Scalar(long value);  // NOLINT(google-explicit-constructor)
  explicit Scalar(const Rational& value);

  // Reduces an arbitrary polynomial in zeta_N modulo Phi_N.
  static Scalar make(int conductor, std::vector<Rational> raw_coeffs);
  // zeta_N^k, k may be negative.
  static Scalar root_of_unity(int n, long k);

  int conductor() const { return conductor_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const { return conductor_ == 1; }
  const Rational& rational_part() const { return coeffs_[0]; }

  Scalar inverse() const;
  Scalar pow(long e) const;
  // Same value expressed at conductor m; m must be a multiple of conductor().
  Scalar lifted(int m) const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // Human-readable, e.g. "1/2 - 3*z12^2".
  std::string to_string() const;

 private:
  Scalar(int conductor, std::vector<Rational> reduced, bool /*tag*/);
  void demote();

  int conductor_ = 1;
  std::vector<Rational> coeffs_;
};

}  // namespace nf

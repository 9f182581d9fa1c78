#include "nichols_forge/scalar.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <sstream>

#include "nichols_forge/errors.hpp"

namespace nf {

namespace {

std::shared_mutex g_cyclo_mutex;
std::map<int, std::vector<long>> g_cyclo_table;

// Exact division of integer polynomials by a monic divisor.
std::vector<long> divide_monic(std::vector<long> num, const std::vector<long>& den) {
  const std::size_t dn = den.size() - 1;
  if (num.size() < den.size()) return {0};
  std::vector<long> quot(num.size() - dn, 0);
  for (std::size_t d = num.size() - 1; d + 1 > dn + 0 && d >= dn; --d) {
    long c = num[d];
    quot[d - dn] = c;
    if (c != 0)
      for (std::size_t k = 0; k <= dn; ++k) num[d - dn + k] -= c * den[k];
    if (d == dn) break;
  }
  return quot;
}

std::vector<long> compute_cyclotomic(int n) {
  // x^n - 1 divided by Phi_d for all proper divisors d.
  std::vector<long> p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    p = divide_monic(p, cyclotomic_polynomial(d));
  }
  return p;
}

using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// Reduce modulo Phi_n in place; result has exactly phi(n) coefficients.
Poly reduce_mod(Poly p, int n) {
  const auto& phi = cyclotomic_polynomial(n);
  const std::size_t deg = phi.size() - 1;
  if (p.size() > deg) {
    for (std::size_t d = p.size() - 1; d >= deg; --d) {
      if (p[d] != 0) {
        Rational c = p[d];
        for (std::size_t k = 0; k < deg; ++k)
          if (phi[k] != 0) p[d - deg + k] -= c * phi[k];
        p[d] = 0;
      }
      if (d == deg) break;
    }
  }
  p.resize(deg, Rational(0));
  return p;
}

// Quotient and remainder of polynomials over Q.
std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 1, Rational(0));
  const Rational lead = b.back();
  while (a.size() >= b.size() && !(a.size() == 1 && a[0] == 0)) {
    std::size_t shift = a.size() - b.size();
    Rational c = a.back() / lead;
    q[shift] = c;
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= c * b[k];
    a.pop_back();
    trim(a);
    if (a.size() < b.size()) break;
  }
  trim(a);
  return {q, a};
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j] != 0) r[i + j] += a[i] * b[j];
  }
  return r;
}

Poly poly_sub(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

bool poly_is_zero(const Poly& p) {
  for (const auto& c : p)
    if (c != 0) return false;
  return true;
}

}  // namespace

const std::vector<long>& cyclotomic_polynomial(int n) {
  if (n < 1) throw InvalidParameter("cyclotomic polynomial of non-positive order");
  {
    std::shared_lock lock(g_cyclo_mutex);
    auto it = g_cyclo_table.find(n);
    if (it != g_cyclo_table.end()) return it->second;
  }
  std::vector<long> p;
  if (n == 1) {
    p = {-1, 1};
  } else {
    p = compute_cyclotomic(n);
  }
  std::unique_lock lock(g_cyclo_mutex);
  auto [it, inserted] = g_cyclo_table.emplace(n, std::move(p));
  return it->second;
}

int euler_phi(int n) { return static_cast<int>(cyclotomic_polynomial(n).size()) - 1; }

Scalar::Scalar() : conductor_(1), coeffs_{Rational(0)} {}

Scalar::Scalar(long value) : conductor_(1), coeffs_{Rational(value)} {}

Scalar::Scalar(const Rational& value) : conductor_(1), coeffs_{value} {
  coeffs_[0].canonicalize();
}

Scalar::Scalar(int conductor, std::vector<Rational> reduced, bool)
    : conductor_(conductor), coeffs_(std::move(reduced)) {
  demote();
}

void Scalar::demote() {
  if (conductor_ == 1) return;
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return;
  Rational c = coeffs_.empty() ? Rational(0) : coeffs_[0];
  conductor_ = 1;
  coeffs_.assign(1, c);
}

Scalar Scalar::make(int conductor, std::vector<Rational> raw) {
  if (conductor < 1) throw InvalidParameter("conductor must be positive");
  for (auto& c : raw) c.canonicalize();
  if (raw.empty()) raw.push_back(Rational(0));
  return Scalar(conductor, reduce_mod(std::move(raw), conductor), true);
}

Scalar Scalar::root_of_unity(int n, long k) {
  if (n < 1) throw InvalidParameter("root of unity of non-positive order");
  long e = ((k % n) + n) % n;
  Poly p(static_cast<std::size_t>(e) + 1, Rational(0));
  p[static_cast<std::size_t>(e)] = 1;
  return Scalar(n, reduce_mod(std::move(p), n), true);
}

bool Scalar::is_zero() const { return conductor_ == 1 && coeffs_[0] == 0; }

bool Scalar::is_one() const { return conductor_ == 1 && coeffs_[0] == 1; }

Scalar Scalar::lifted(int m) const {
  if (m == conductor_) return *this;
  if (m % conductor_ != 0) throw InvalidParameter("lift target is not a multiple of the conductor");
  const std::size_t step = static_cast<std::size_t>(m / conductor_);
  Poly p((coeffs_.size() - 1) * step + 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) p[i * step] = coeffs_[i];
  Scalar out;
  out.conductor_ = m;
  out.coeffs_ = reduce_mod(std::move(p), m);
  return out;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.conductor_ == 1) {
    coeffs_[0] += o.coeffs_[0];
    demote();
    return *this;
  }
  if (conductor_ != o.conductor_) {
    int m = std::lcm(conductor_, o.conductor_);
    Scalar a = lifted(m);
    Scalar b = o.lifted(m);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] += b.coeffs_[i];
    a.demote();
    return *this = std::move(a);
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  demote();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (o.conductor_ == 1) {
    if (o.coeffs_[0] == 0) return *this = Scalar();
    for (auto& c : coeffs_) c *= o.coeffs_[0];
    return *this;
  }
  if (conductor_ == 1) {
    Scalar r = o;
    r *= *this;
    return *this = std::move(r);
  }
  int m = std::lcm(conductor_, o.conductor_);
  const Scalar a = lifted(m);
  const Scalar b = o.lifted(m);
  Poly prod = poly_mul(a.coeffs_, b.coeffs_);
  return *this = Scalar(m, reduce_mod(std::move(prod), m), true);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (conductor_ == 1) return Scalar(Rational(1) / coeffs_[0]);
  // Extended Euclid: s*a + t*Phi = 1.
  const auto& phi_int = cyclotomic_polynomial(conductor_);
  Poly modulus(phi_int.begin(), phi_int.end());
  Poly r0 = modulus, r1 = coeffs_;
  trim(r1);
  Poly s0{Rational(0)}, s1{Rational(1)};
  while (!poly_is_zero(r1)) {
    auto [q, r] = divmod(r0, r1);
    Poly s2 = poly_sub(s0, poly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a nonzero constant since Phi is irreducible.
  Rational c = r0[0];
  for (auto& x : s0) x /= c;
  return Scalar(conductor_, reduce_mod(std::move(s0), conductor_), true);
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar base = *this, acc(1);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.conductor_ == b.conductor_) return a.coeffs_ == b.coeffs_;
  if (a.conductor_ == 1 || b.conductor_ == 1) return false;  // demoted rationals are never non-rational
  int m = std::lcm(a.conductor_, b.conductor_);
  return a.lifted(m).coeffs_ == b.lifted(m).coeffs_;
}

std::string Scalar::to_string() const {
  if (conductor_ == 1) return coeffs_[0].get_str();
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    if (i == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << "z" << conductor_;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

}  // namespace nf

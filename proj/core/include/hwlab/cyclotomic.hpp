#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "hwlab/errors.hpp"
#include "hwlab/ff.hpp"

namespace hwlab {

/// Exact element of Q(zeta_n) where n is a prime p or 4 (the latter is the
/// operator field needed to write Heisenberg matrices in characteristic 2).
/// Coordinates are rational, length phi(n), in the power basis
/// {zeta^0, ..., zeta^{phi(n)-1}}; canonical form reduces along the
/// cyclotomic polynomial, so equality is coordinatewise.
class Cyclotomic {
 public:
  Cyclotomic() : n_(2), c_(1, 0) {}
  explicit Cyclotomic(std::uint32_t n) : n_(n), c_(phi(n), 0) {}
  static Cyclotomic rational(std::uint32_t n, const mpq_class& r);
  static Cyclotomic integer(std::uint32_t n, long v);
  /// zeta_n^k
  static Cyclotomic root_power(std::uint32_t n, std::int64_t k);

  std::uint32_t modulus() const { return n_; }
  const std::vector<mpq_class>& coords() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  mpq_class rational_value() const;  // throws unless is_rational()

  Cyclotomic operator+(const Cyclotomic& o) const;
  Cyclotomic operator-(const Cyclotomic& o) const;
  Cyclotomic operator-() const;
  Cyclotomic operator*(const Cyclotomic& o) const;
  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
  bool operator==(const Cyclotomic& o) const;
  bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

  Cyclotomic scaled(const mpq_class& r) const;
  /// Galois conjugation zeta -> zeta^j, j coprime to n.
  Cyclotomic conjugate(std::uint32_t j) const;
  /// Complex conjugation zeta -> zeta^{-1}.
  Cyclotomic conj() const { return conjugate(n_ - 1); }
  /// Exact |a|^2 = a * conj(a).
  Cyclotomic abs_squared() const { return *this * conj(); }
  /// Product of all Galois conjugates (a rational number).
  mpq_class norm() const;
  Cyclotomic inverse() const;

  /// Value under zeta -> exp(2 pi i / n).
  std::complex<long double> embed() const;
  /// |a| under the complex embedding, accurate well below tol for the sizes
  /// that occur here; tol must be positive.
  double complex_abs(double tol = 1e-12) const;

  /// Reinterpret in Q(zeta_m) when the value actually lies there (m | n or
  /// the value is rational); throws MixedModuli otherwise.
  Cyclotomic to_modulus(std::uint32_t m) const;

  std::string to_string() const;

  static std::uint32_t phi(std::uint32_t n);

 private:
  void check_same(const Cyclotomic& o) const;
  void reduce(std::vector<mpq_class>& raw);  // raw has length n_

  std::uint32_t n_;
  std::vector<mpq_class> c_;
};

/// Additive character data: psi(x) = zeta_p^{Tr_{k_d/F_p}(c x)} with a
/// configurable multiplicative shift c (default 1). The default psi is the
/// canonical nontrivial character of k.
class Psi {
 public:
  Psi(ClosureModelPtr model, std::uint32_t out_modulus);
  Psi(ClosureModelPtr model, std::uint32_t out_modulus, FieldElement shift);

  /// psi_d(x) = psi(Tr_{k_d/k} x) = zeta_p^{Tr_{k_d/F_p}(shift * x)}.
  Cyclotomic eval(const FieldElement& x) const;
  /// Residue exponent in [0, p): psi(x) = zeta_p^{residue}.
  std::uint32_t residue(const FieldElement& x) const;

  const ClosureModel& model() const { return *model_; }
  std::uint32_t out_modulus() const { return n_; }
  const FieldElement& shift() const { return shift_; }

 private:
  ClosureModelPtr model_;
  std::uint32_t n_;      // p, or 4 when matrices over Q(i) are required
  std::uint32_t zexp_;   // zeta_n^{zexp_} is the order-p root used for values
  FieldElement shift_;
};

}  // namespace hwlab

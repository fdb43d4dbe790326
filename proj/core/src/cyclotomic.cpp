#include "hwlab/cyclotomic.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace hwlab {

std::uint32_t Cyclotomic::phi(std::uint32_t n) {
  if (n == 4) return 2;
  if (n >= 2) return n - 1;  // prime
  throw MixedModuli("unsupported cyclotomic modulus " + std::to_string(n));
}

Cyclotomic Cyclotomic::rational(std::uint32_t n, const mpq_class& r) {
  Cyclotomic x(n);
  x.c_[0] = r;
  return x;
}

Cyclotomic Cyclotomic::integer(std::uint32_t n, long v) {
  return rational(n, mpq_class(v));
}

Cyclotomic Cyclotomic::root_power(std::uint32_t n, std::int64_t k) {
  Cyclotomic x(n);
  std::vector<mpq_class> raw(n, 0);
  std::int64_t kk = ((k % n) + n) % n;
  raw[static_cast<std::size_t>(kk)] = 1;
  x.reduce(raw);
  return x;
}

void Cyclotomic::check_same(const Cyclotomic& o) const {
  if (n_ != o.n_)
    throw MixedModuli("mixed cyclotomic moduli " + std::to_string(n_) + " and " +
                      std::to_string(o.n_));
}

// raw has length n_ (coefficients of zeta^0..zeta^{n-1}); fold down along the
// cyclotomic polynomial: for prime p, zeta^{p-1} = -(1 + ... + zeta^{p-2});
// for n = 4, zeta^2 = -1.
void Cyclotomic::reduce(std::vector<mpq_class>& raw) {
  std::uint32_t ph = phi(n_);
  if (n_ == 4) {
    c_[0] = raw[0] - raw[2];
    c_[1] = raw[1] - raw[3];
    return;
  }
  for (std::uint32_t i = 0; i < ph; ++i) c_[i] = raw[i] - raw[n_ - 1];
}

bool Cyclotomic::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

mpq_class Cyclotomic::rational_value() const {
  if (!is_rational()) throw Error("cyclotomic value is not rational: " + to_string());
  return c_[0];
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
  check_same(o);
  Cyclotomic r(n_);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
  return r;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const {
  check_same(o);
  Cyclotomic r(n_);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
  return r;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r(n_);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = -c_[i];
  return r;
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
  check_same(o);
  std::vector<mpq_class> raw(n_, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j] == 0) continue;
      raw[(i + j) % n_] += c_[i] * o.c_[j];
    }
  }
  Cyclotomic r(n_);
  r.reduce(raw);
  return r;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
  if (n_ != o.n_) return false;
  return c_ == o.c_;
}

Cyclotomic Cyclotomic::scaled(const mpq_class& r) const {
  Cyclotomic x(n_);
  for (std::size_t i = 0; i < c_.size(); ++i) x.c_[i] = c_[i] * r;
  return x;
}

Cyclotomic Cyclotomic::conjugate(std::uint32_t j) const {
  if (std::gcd(j, n_) != 1)
    throw Error("conjugation exponent must be coprime to the modulus");
  std::vector<mpq_class> raw(n_, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    raw[(i * j) % n_] += c_[i];
  }
  Cyclotomic r(n_);
  r.reduce(raw);
  return r;
}

mpq_class Cyclotomic::norm() const {
  Cyclotomic prod = Cyclotomic::integer(n_, 1);
  for (std::uint32_t j = 1; j < n_; ++j) {
    if (std::gcd(j, n_) != 1) continue;
    prod *= conjugate(j);
  }
  return prod.rational_value();
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw Error("inverse of cyclotomic zero");
  Cyclotomic cof = Cyclotomic::integer(n_, 1);
  for (std::uint32_t j = 2; j < n_; ++j) {
    if (std::gcd(j, n_) != 1) continue;
    cof *= conjugate(j);
  }
  mpq_class nrm = (*this * cof).rational_value();
  return cof.scaled(mpq_class(1) / nrm);
}

namespace {
// double-double conversion: mpq -> long double with ~106-bit accuracy
long double mpq_to_ld(const mpq_class& q) {
  double hi = q.get_d();
  mpq_class rem = q - mpq_class(hi);
  double lo = rem.get_d();
  return static_cast<long double>(hi) + static_cast<long double>(lo);
}
}  // namespace

std::complex<long double> Cyclotomic::embed() const {
  std::complex<long double> r = 0;
  const long double tau = 2.0L * std::numbers::pi_v<long double>;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    long double v = mpq_to_ld(c_[i]);
    long double ang = tau * static_cast<long double>(i) / static_cast<long double>(n_);
    r += v * std::complex<long double>(std::cos(ang), std::sin(ang));
  }
  return r;
}

double Cyclotomic::complex_abs(double tol) const {
  if (!(tol > 0)) throw Error("tolerance must be positive");
  return static_cast<double>(std::abs(embed()));
}

Cyclotomic Cyclotomic::to_modulus(std::uint32_t m) const {
  if (m == n_) return *this;
  if (is_rational()) return Cyclotomic::rational(m, c_[0]);
  throw MixedModuli("cannot express value of modulus " + std::to_string(n_) +
                    " in modulus " + std::to_string(m));
}

std::string Cyclotomic::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ",";
    os << c_[i].get_str();
  }
  os << "]@" << n_;
  return os.str();
}

Psi::Psi(ClosureModelPtr model, std::uint32_t out_modulus)
    : Psi(std::move(model), out_modulus, FieldElement{}) {
  shift_ = model_->one(1);
}

Psi::Psi(ClosureModelPtr model, std::uint32_t out_modulus, FieldElement shift)
    : model_(std::move(model)), n_(out_modulus), shift_(std::move(shift)) {
  std::uint32_t p = model_->p();
  if (n_ % p != 0 && n_ != p)
    throw MixedModuli("output modulus must contain an order-p root of unity");
  zexp_ = n_ / p;
  if (shift_.coords.empty()) shift_ = model_->one(1);
  if (model_->is_zero(shift_)) throw Error("psi shift must be a unit");
}

std::uint32_t Psi::residue(const FieldElement& x) const {
  return model_->abs_trace_residue(model_->mul(shift_, x));
}

Cyclotomic Psi::eval(const FieldElement& x) const {
  return Cyclotomic::root_power(n_, static_cast<std::int64_t>(zexp_) *
                                        static_cast<std::int64_t>(residue(x)));
}

}  // namespace hwlab

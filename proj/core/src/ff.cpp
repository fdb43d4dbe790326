#include "hwlab/ff.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace hwlab {
namespace {

using Poly = std::vector<std::uint32_t>;  // little-endian coefficients over F_p

int poly_deg(const Poly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (f[i]) return i;
  return -1;
}

void poly_trim(Poly& f) { f.resize(static_cast<std::size_t>(poly_deg(f) + 1)); }

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p;
  }
  poly_trim(r);
  return r;
}

std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
  std::uint32_t r = 1, b = a % p, e = p - 2;  // p prime
  while (e) {
    if (e & 1) r = static_cast<std::uint64_t>(r) * b % p;
    b = static_cast<std::uint64_t>(b) * b % p;
    e >>= 1;
  }
  return r;
}

Poly poly_mod(Poly a, const Poly& f, std::uint32_t p) {
  int df = poly_deg(f);
  std::uint32_t lead_inv = inv_mod_p(f[static_cast<std::size_t>(df)], p);
  while (poly_deg(a) >= df) {
    int da = poly_deg(a);
    std::uint32_t c =
        static_cast<std::uint64_t>(a[static_cast<std::size_t>(da)]) * lead_inv % p;
    for (int i = 0; i <= df; ++i) {
      auto idx = static_cast<std::size_t>(da - df + i);
      a[idx] = (a[idx] + p - static_cast<std::uint64_t>(c) * f[static_cast<std::size_t>(i)] % p) % p;
    }
  }
  poly_trim(a);
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
  return poly_mod(poly_mul(a, b, p), f, p);
}

Poly poly_powmod(Poly a, std::uint64_t e, const Poly& f, std::uint32_t p) {
  Poly r = {1};
  a = poly_mod(std::move(a), f, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, a, f, p);
    a = poly_mulmod(a, a, f, p);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  while (poly_deg(b) >= 0) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (poly_deg(a) >= 0) {
    std::uint32_t c = inv_mod_p(a[static_cast<std::size_t>(poly_deg(a))], p);
    for (auto& x : a) x = static_cast<std::uint64_t>(x) * c % p;
  }
  return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> fs;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      fs.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) fs.push_back(n);
  return fs;
}

// Rabin test: x^{p^n} = x mod f, and gcd(x^{p^{n/r}} - x, f) = 1 for primes r|n.
bool is_irreducible(const Poly& f, std::uint32_t p) {
  int n = poly_deg(f);
  if (n < 1) return false;
  Poly x = {0, 1};
  std::uint64_t pn = 1;
  for (int i = 0; i < n; ++i) pn *= p;
  Poly xq = poly_powmod(x, pn, f, p);
  Poly diff = xq;
  diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
  diff[1] = (diff[1] + p - 1) % p;
  poly_trim(diff);
  if (poly_deg(diff) >= 0) return false;
  for (std::uint64_t r : prime_factors(static_cast<std::uint64_t>(n))) {
    std::uint64_t e = 1;
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(n) / r; ++i) e *= p;
    Poly xe = poly_powmod(x, e, f, p);
    xe.resize(std::max<std::size_t>(xe.size(), 2), 0);
    xe[1] = (xe[1] + p - 1) % p;
    poly_trim(xe);
    Poly g = poly_gcd(f, xe, p);
    if (poly_deg(g) != 0) return false;
  }
  return true;
}

// Lexicographically least monic irreducible of degree n: scan the non-leading
// coefficient vectors in base-p counter order.
Poly least_irreducible(int n, std::uint32_t p) {
  if (n == 1) return {0, 1};  // x
  Poly f(static_cast<std::size_t>(n) + 1, 0);
  f[static_cast<std::size_t>(n)] = 1;
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= p;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (int i = 0; i < n; ++i) {
      f[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    if (f[0] == 0) continue;  // divisible by x
    if (is_irreducible(f, p)) return f;
  }
  throw Error("no irreducible polynomial found (unreachable)");
}

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// Solve M*x = y over F_p; M given column-major (cols[j] = image of e_j), square
// or tall. Returns empty vector if inconsistent.
std::vector<std::uint32_t> solve_linear(
    const std::vector<std::vector<std::uint32_t>>& cols,
    std::vector<std::uint32_t> y, std::uint32_t p) {
  std::size_t rows = y.size(), ncols = cols.size();
  std::vector<std::vector<std::uint32_t>> a(rows, std::vector<std::uint32_t>(ncols + 1, 0));
  for (std::size_t j = 0; j < ncols; ++j)
    for (std::size_t i = 0; i < rows; ++i) a[i][j] = cols[j][i];
  for (std::size_t i = 0; i < rows; ++i) a[i][ncols] = y[i];

  std::vector<int> pivot_col(rows, -1);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < ncols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    std::uint32_t inv = inv_mod_p(a[rank][col], p);
    for (std::size_t j = col; j <= ncols; ++j)
      a[rank][j] = static_cast<std::uint64_t>(a[rank][j]) * inv % p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || a[i][col] == 0) continue;
      std::uint32_t c = a[i][col];
      for (std::size_t j = col; j <= ncols; ++j)
        a[i][j] = (a[i][j] + p - static_cast<std::uint64_t>(c) * a[rank][j] % p) % p;
    }
    pivot_col[rank] = static_cast<int>(col);
    ++rank;
  }
  for (std::size_t i = rank; i < rows; ++i)
    if (a[i][ncols] != 0) return {};
  std::vector<std::uint32_t> x(ncols, 0);
  for (std::size_t i = 0; i < rank; ++i)
    x[static_cast<std::size_t>(pivot_col[i])] = a[i][ncols];
  return x;
}

}  // namespace

ClosureModel::ClosureModel(std::uint32_t p, std::uint64_t q, int top_degree,
                           std::uint64_t cap)
    : p_(p), q_(q), D_(top_degree), cap_(cap) {
  if (p < 2) throw NonPrimeP("p must be a prime >= 2");
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= p; ++d)
    if (p % d == 0) throw NonPrimeP("p is not prime: " + std::to_string(p));
  m_ = 0;
  std::uint64_t t = 1;
  while (t < q) { t *= p; ++m_; }
  if (t != q || m_ == 0) throw Error("q is not a positive power of p");
  if (top_degree < 1) throw Error("top degree must be >= 1");
  // overflow-safe cap check on q^D
  std::uint64_t size = 1;
  for (int i = 0; i < D_; ++i) {
    if (size > cap_ / q_) throw BoundExceeded("q^D exceeds the enumeration cap");
    size *= q_;
  }
  if (size > cap_) throw BoundExceeded("q^D exceeds the enumeration cap");

  for (int d = 1; d <= D_; ++d)
    if (D_ % d == 0) degrees_.push_back(d);

  for (int d : degrees_) {
    Subfield s;
    s.deg = d;
    s.pdeg = m_ * d;
    s.poly = least_irreducible(s.pdeg, p_);
    subfields_[d] = std::move(s);
  }

  // Distinguished embeddings iota_d : k_d -> k_D, as the least root of the
  // degree-d defining polynomial inside the top field. Commutation of the
  // composite maps embed(d->d') = iota_{d'}^{-1} o iota_d is automatic.
  const Subfield& top = subfields_.at(D_);
  int N = top.pdeg;
  auto mul_top = [&](const Poly& a, const Poly& b) {
    return poly_mulmod(a, b, top.poly, p_);
  };
  std::map<int, std::vector<Poly>> iota;  // degree -> basis images in top
  for (int d : degrees_) {
    const Subfield& s = subfields_.at(d);
    Poly root;
    if (d == D_) {
      root = {0, 1};
    } else {
      // scan the p^{s.pdeg}-element subfield of the top field: kernel of
      // Frob_p^{pdeg} - id as an F_p-subspace, then pick the least root.
      std::vector<Poly> frob_cols(static_cast<std::size_t>(N));
      for (int j = 0; j < N; ++j) {
        Poly e(static_cast<std::size_t>(j) + 1, 0);
        e[static_cast<std::size_t>(j)] = 1;
        frob_cols[static_cast<std::size_t>(j)] = poly_powmod(e, ipow(p_, static_cast<std::uint64_t>(s.pdeg)), top.poly, p_);
      }
      // nullspace of (frob - id): collect a basis by row reduction
      std::vector<std::vector<std::uint32_t>> mat(static_cast<std::size_t>(N),
                                                  std::vector<std::uint32_t>(static_cast<std::size_t>(N), 0));
      for (int j = 0; j < N; ++j) {
        const Poly& c = frob_cols[static_cast<std::size_t>(j)];
        for (int i = 0; i < N; ++i) {
          std::uint32_t v = i < static_cast<int>(c.size()) ? c[static_cast<std::size_t>(i)] : 0;
          if (i == j) v = (v + p_ - 1) % p_;
          mat[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
        }
      }
      // row-reduce mat, find free columns -> nullspace basis
      std::size_t rank = 0;
      std::vector<int> pivot_of_col(static_cast<std::size_t>(N), -1);
      for (std::size_t col = 0; col < static_cast<std::size_t>(N) && rank < static_cast<std::size_t>(N); ++col) {
        std::size_t piv = rank;
        while (piv < static_cast<std::size_t>(N) && mat[piv][col] == 0) ++piv;
        if (piv == static_cast<std::size_t>(N)) continue;
        std::swap(mat[piv], mat[rank]);
        std::uint32_t inv = inv_mod_p(mat[rank][col], p_);
        for (std::size_t j2 = 0; j2 < static_cast<std::size_t>(N); ++j2)
          mat[rank][j2] = static_cast<std::uint64_t>(mat[rank][j2]) * inv % p_;
        for (std::size_t i2 = 0; i2 < static_cast<std::size_t>(N); ++i2) {
          if (i2 == rank || mat[i2][col] == 0) continue;
          std::uint32_t c = mat[i2][col];
          for (std::size_t j2 = 0; j2 < static_cast<std::size_t>(N); ++j2)
            mat[i2][j2] = (mat[i2][j2] + p_ - static_cast<std::uint64_t>(c) * mat[rank][j2] % p_) % p_;
        }
        pivot_of_col[col] = static_cast<int>(rank);
        ++rank;
      }
      std::vector<Poly> null_basis;
      for (std::size_t col = 0; col < static_cast<std::size_t>(N); ++col) {
        if (pivot_of_col[col] >= 0) continue;
        Poly v(static_cast<std::size_t>(N), 0);
        v[col] = 1;
        for (std::size_t c2 = 0; c2 < static_cast<std::size_t>(N); ++c2) {
          if (pivot_of_col[c2] < 0) continue;
          v[c2] = (p_ - mat[static_cast<std::size_t>(pivot_of_col[c2])][col]) % p_;
        }
        null_basis.push_back(std::move(v));
      }
      // enumerate the subspace, evaluate s.poly, keep the least root
      std::uint64_t count = ipow(p_, static_cast<std::uint64_t>(null_basis.size()));
      bool found = false;
      std::uint64_t best_packed = 0;
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        Poly cand(static_cast<std::size_t>(N), 0);
        std::uint64_t ii = idx;
        for (const Poly& b : null_basis) {
          std::uint32_t c = static_cast<std::uint32_t>(ii % p_);
          ii /= p_;
          if (c)
            for (std::size_t i2 = 0; i2 < static_cast<std::size_t>(N); ++i2)
              cand[i2] = (cand[i2] + static_cast<std::uint64_t>(c) * b[i2]) % p_;
        }
        // evaluate s.poly at cand (Horner in the top field)
        Poly acc = {s.poly[static_cast<std::size_t>(s.pdeg)]};
        for (int i2 = s.pdeg - 1; i2 >= 0; --i2) {
          acc = mul_top(acc, cand);
          if (s.poly[static_cast<std::size_t>(i2)]) {
            acc.resize(std::max<std::size_t>(acc.size(), 1), 0);
            acc[0] = (acc[0] + s.poly[static_cast<std::size_t>(i2)]) % p_;
          }
          poly_trim(acc);
        }
        if (poly_deg(acc) < 0) {
          std::uint64_t packed = 0;
          for (int i2 = N - 1; i2 >= 0; --i2) packed = packed * p_ + cand[static_cast<std::size_t>(i2)];
          if (!found || packed < best_packed) {
            found = true;
            best_packed = packed;
            root = cand;
          }
        }
      }
      if (!found) throw Error("no root of subfield polynomial in top field (unreachable)");
    }
    std::vector<Poly> basis(static_cast<std::size_t>(s.pdeg));
    Poly pw = {1};
    for (int j = 0; j < s.pdeg; ++j) {
      basis[static_cast<std::size_t>(j)] = pw;
      pw = mul_top(pw, root);
    }
    iota[d] = std::move(basis);
  }

  // embed matrices for all divisor pairs d | d'
  auto pad = [&](const Poly& v) {
    std::vector<std::uint32_t> r(static_cast<std::size_t>(N), 0);
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i];
    return r;
  };
  for (int d : degrees_) {
    for (int d2 : degrees_) {
      if (d2 % d != 0) continue;
      std::vector<std::vector<std::uint32_t>> cols_target;
      for (const Poly& b : iota.at(d2)) cols_target.push_back(pad(b));
      std::vector<std::vector<std::uint32_t>> emb;
      for (const Poly& b : iota.at(d)) {
        auto x = solve_linear(cols_target, pad(b), p_);
        if (x.empty() && !(N == 0)) {
          // inconsistent would mean the subfield lattice is broken
          bool all_zero = true;
          for (auto c : pad(b)) all_zero &= (c == 0);
          if (!all_zero) throw Error("embedding solve failed (unreachable)");
          x.assign(static_cast<std::size_t>(subfields_.at(d2).pdeg), 0);
        }
        x.resize(static_cast<std::size_t>(subfields_.at(d2).pdeg), 0);
        emb.push_back(std::move(x));
      }
      embeds_[{d, d2}] = std::move(emb);
    }
  }

  // Frobenius matrices and generators per subfield
  for (int d : degrees_) {
    Subfield& s = subfields_.at(d);
    s.frob_q.resize(static_cast<std::size_t>(s.pdeg));
    for (int j = 0; j < s.pdeg; ++j) {
      Poly e(static_cast<std::size_t>(j) + 1, 0);
      e[static_cast<std::size_t>(j)] = 1;
      Poly img = poly_powmod(e, q_, s.poly, p_);
      img.resize(static_cast<std::size_t>(s.pdeg), 0);
      s.frob_q[static_cast<std::size_t>(j)] = img;
    }
    // generator: least element of full multiplicative order
    std::uint64_t ord = ipow(p_, static_cast<std::uint64_t>(s.pdeg)) - 1;
    auto pf = prime_factors(ord);
    std::uint64_t sz = ord + 1;
    for (std::uint64_t idx = 1; idx < sz; ++idx) {
      Poly cand(static_cast<std::size_t>(s.pdeg), 0);
      std::uint64_t ii = idx;
      for (int i2 = 0; i2 < s.pdeg; ++i2) {
        cand[static_cast<std::size_t>(i2)] = static_cast<std::uint32_t>(ii % p_);
        ii /= p_;
      }
      bool ok = true;
      for (std::uint64_t r : pf) {
        Poly t2 = poly_powmod(cand, ord / r, s.poly, p_);
        if (poly_deg(t2) == 0 && t2[0] == 1) { ok = false; break; }
      }
      if (ok) {
        cand.resize(static_cast<std::size_t>(s.pdeg), 0);
        s.gen = cand;
        break;
      }
    }
    if (s.gen.empty()) throw Error("no multiplicative generator found (unreachable)");
  }
}

const ClosureModel::Subfield& ClosureModel::sf(int d) const {
  auto it = subfields_.find(d);
  if (it == subfields_.end())
    throw DegreeMismatch("degree " + std::to_string(d) + " not in the model (top " +
                         std::to_string(D_) + ")");
  return it->second;
}

bool ClosureModel::has_degree(int d) const { return subfields_.count(d) > 0; }

std::uint64_t ClosureModel::field_size(int d) const {
  const Subfield& s = sf(d);
  return ipow(p_, static_cast<std::uint64_t>(s.pdeg));
}

FieldElement ClosureModel::zero(int degree) const {
  const Subfield& s = sf(degree);
  return {degree, std::vector<std::uint32_t>(static_cast<std::size_t>(s.pdeg), 0)};
}

FieldElement ClosureModel::one(int degree) const { return from_base_residue(1, degree); }

FieldElement ClosureModel::from_base_residue(std::uint32_t c, int degree) const {
  FieldElement x = zero(degree);
  x.coords[0] = c % p_;
  return x;
}

FieldElement ClosureModel::from_coords(int degree, std::vector<std::uint32_t> coords) const {
  const Subfield& s = sf(degree);
  if (coords.size() != static_cast<std::size_t>(s.pdeg))
    throw DegreeMismatch("coordinate length does not match subfield F_p-degree");
  for (auto& c : coords) c %= p_;
  return {degree, std::move(coords)};
}

FieldElement ClosureModel::from_index(int degree, std::uint64_t index) const {
  const Subfield& s = sf(degree);
  FieldElement x = zero(degree);
  for (int i = 0; i < s.pdeg; ++i) {
    x.coords[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(index % p_);
    index /= p_;
  }
  return x;
}

std::uint64_t ClosureModel::to_index(const FieldElement& x) const {
  check_element(x);
  std::uint64_t idx = 0;
  for (int i = static_cast<int>(x.coords.size()) - 1; i >= 0; --i)
    idx = idx * p_ + x.coords[static_cast<std::size_t>(i)];
  return idx;
}

FieldElement ClosureModel::generator(int degree) const {
  const Subfield& s = sf(degree);
  return {degree, s.gen};
}

void ClosureModel::check_element(const FieldElement& x) const {
  const Subfield& s = sf(x.degree);
  if (x.coords.size() != static_cast<std::size_t>(s.pdeg))
    throw DegreeMismatch("malformed element coordinates");
}

FieldElement ClosureModel::coerce(const FieldElement& x, int d) const {
  if (x.degree == d) return x;
  return embed(x, d);
}

FieldElement ClosureModel::add(const FieldElement& a, const FieldElement& b) const {
  int d = std::lcm(a.degree, b.degree);
  FieldElement x = coerce(a, d), y = coerce(b, d);
  for (std::size_t i = 0; i < x.coords.size(); ++i)
    x.coords[i] = (x.coords[i] + y.coords[i]) % p_;
  return x;
}

FieldElement ClosureModel::sub(const FieldElement& a, const FieldElement& b) const {
  return add(a, neg(b));
}

FieldElement ClosureModel::neg(const FieldElement& a) const {
  check_element(a);
  FieldElement x = a;
  for (auto& c : x.coords) c = (p_ - c) % p_;
  return x;
}

FieldElement ClosureModel::mul(const FieldElement& a, const FieldElement& b) const {
  int d = std::lcm(a.degree, b.degree);
  FieldElement x = coerce(a, d), y = coerce(b, d);
  const Subfield& s = sf(d);
  Poly r = poly_mulmod(x.coords, y.coords, s.poly, p_);
  r.resize(static_cast<std::size_t>(s.pdeg), 0);
  return {d, std::move(r)};
}

FieldElement ClosureModel::inv(const FieldElement& a) const {
  check_element(a);
  if (is_zero(a)) throw Error("inverse of zero");
  const Subfield& s = sf(a.degree);
  std::uint64_t ord = ipow(p_, static_cast<std::uint64_t>(s.pdeg)) - 1;
  Poly r = raw_pow(s, a.coords, ord - 1);
  return {a.degree, std::move(r)};
}

FieldElement ClosureModel::pow(const FieldElement& a, std::int64_t e) const {
  check_element(a);
  const Subfield& s = sf(a.degree);
  if (e < 0) return pow(inv(a), -e);
  Poly r = raw_pow(s, a.coords, static_cast<std::uint64_t>(e));
  return {a.degree, std::move(r)};
}

std::vector<std::uint32_t> ClosureModel::raw_mul(const Subfield& s, const Poly& a,
                                                 const Poly& b) const {
  Poly r = poly_mulmod(a, b, s.poly, p_);
  r.resize(static_cast<std::size_t>(s.pdeg), 0);
  return r;
}

std::vector<std::uint32_t> ClosureModel::raw_pow(const Subfield& s, Poly a,
                                                 std::uint64_t e) const {
  Poly r = poly_powmod(std::move(a), e, s.poly, p_);
  r.resize(static_cast<std::size_t>(s.pdeg), 0);
  return r;
}

bool ClosureModel::is_zero(const FieldElement& a) const {
  check_element(a);
  for (auto c : a.coords)
    if (c) return false;
  return true;
}

bool ClosureModel::equal(const FieldElement& a, const FieldElement& b) const {
  int d = std::lcm(a.degree, b.degree);
  return coerce(a, d).coords == coerce(b, d).coords;
}

FieldElement ClosureModel::frobenius(const FieldElement& x, std::int64_t i) const {
  check_element(x);
  const Subfield& s = sf(x.degree);
  std::int64_t k = ((i % s.deg) + s.deg) % s.deg;
  Poly cur = x.coords;
  for (std::int64_t step = 0; step < k; ++step) {
    Poly next(static_cast<std::size_t>(s.pdeg), 0);
    for (int j = 0; j < s.pdeg; ++j) {
      std::uint32_t c = cur[static_cast<std::size_t>(j)];
      if (!c) continue;
      const Poly& col = s.frob_q[static_cast<std::size_t>(j)];
      for (int r = 0; r < s.pdeg; ++r)
        next[static_cast<std::size_t>(r)] =
            (next[static_cast<std::size_t>(r)] +
             static_cast<std::uint64_t>(c) * col[static_cast<std::size_t>(r)]) % p_;
    }
    cur = std::move(next);
  }
  return {x.degree, std::move(cur)};
}

FieldElement ClosureModel::relative_trace(const FieldElement& x, int d) const {
  FieldElement y = coerce(x, d);
  FieldElement acc = zero(d);
  FieldElement cur = y;
  for (int i = 0; i < d; ++i) {
    acc = add(acc, cur);
    cur = frobenius(cur, 1);
  }
  return project(acc, 1);
}

FieldElement ClosureModel::relative_norm(const FieldElement& x, int d) const {
  FieldElement y = coerce(x, d);
  FieldElement acc = one(d);
  FieldElement cur = y;
  for (int i = 0; i < d; ++i) {
    acc = mul(acc, cur);
    cur = frobenius(cur, 1);
  }
  return project(acc, 1);
}

std::uint32_t ClosureModel::abs_trace_residue(const FieldElement& x) const {
  check_element(x);
  const Subfield& s = sf(x.degree);
  // sum of p-power conjugates; compute x + x^p + ... via powering
  Poly acc(static_cast<std::size_t>(s.pdeg), 0);
  Poly cur = x.coords;
  for (int i = 0; i < s.pdeg; ++i) {
    for (int j = 0; j < s.pdeg; ++j)
      acc[static_cast<std::size_t>(j)] = (acc[static_cast<std::size_t>(j)] + cur[static_cast<std::size_t>(j)]) % p_;
    cur = raw_pow(s, cur, p_);
  }
  for (int j = 1; j < s.pdeg; ++j)
    if (acc[static_cast<std::size_t>(j)] != 0)
      throw Error("absolute trace not in F_p (model inconsistency)");
  return acc[0];
}

FieldElement ClosureModel::embed(const FieldElement& x, int d) const {
  check_element(x);
  if (x.degree == d) return x;
  auto it = embeds_.find({x.degree, d});
  if (it == embeds_.end())
    throw DegreeMismatch("no embedding from degree " + std::to_string(x.degree) +
                         " to " + std::to_string(d));
  const Subfield& s = sf(d);
  Poly r(static_cast<std::size_t>(s.pdeg), 0);
  for (std::size_t j = 0; j < x.coords.size(); ++j) {
    std::uint32_t c = x.coords[j];
    if (!c) continue;
    const auto& col = it->second[j];
    for (int i = 0; i < s.pdeg; ++i)
      r[static_cast<std::size_t>(i)] =
          (r[static_cast<std::size_t>(i)] + static_cast<std::uint64_t>(c) * col[static_cast<std::size_t>(i)]) % p_;
  }
  return {d, std::move(r)};
}

FieldElement ClosureModel::project(const FieldElement& x, int d) const {
  check_element(x);
  if (x.degree == d) return x;
  auto it = embeds_.find({d, x.degree});
  if (it == embeds_.end())
    throw DegreeMismatch("no projection from degree " + std::to_string(x.degree) +
                         " to " + std::to_string(d));
  auto sol = solve_linear(it->second, x.coords, p_);
  if (sol.empty() && !is_zero(x))
    throw DegreeMismatch("element does not lie in the degree-" + std::to_string(d) +
                         " subfield");
  sol.resize(static_cast<std::size_t>(sf(d).pdeg), 0);
  // verify (solve_linear returns some solution; embedding is injective)
  FieldElement cand{d, sol};
  if (!equal(embed(cand, x.degree), x))
    throw DegreeMismatch("element does not lie in the degree-" + std::to_string(d) +
                         " subfield");
  return cand;
}

int ClosureModel::minimal_degree(const FieldElement& x) const {
  check_element(x);
  for (int d : degrees_) {
    if (x.degree % d != 0) continue;
    // x in k_d iff x^{q^d} = x
    FieldElement fd = x;
    for (int i = 0; i < d; ++i) fd = frobenius(fd, 1);
    if (equal(fd, x)) return d;
  }
  return x.degree;
}

std::vector<FieldElement> ClosureModel::enumerate(int d) const {
  std::uint64_t n = field_size(d);
  std::vector<FieldElement> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(from_index(d, i));
  return out;
}

std::uint64_t ClosureModel::mult_order(const FieldElement& x) const {
  if (is_zero(x)) throw Error("order of zero");
  const Subfield& s = sf(x.degree);
  std::uint64_t ord = ipow(p_, static_cast<std::uint64_t>(s.pdeg)) - 1;
  for (std::uint64_t r : prime_factors(ord)) {
    while (ord % r == 0) {
      Poly t = raw_pow(s, x.coords, ord / r);
      if (poly_deg(t) == 0 && t[0] == 1)
        ord /= r;
      else
        break;
    }
  }
  return ord;
}

std::string ClosureModel::to_string(const FieldElement& x) const {
  std::ostringstream os;
  os << "k" << x.degree << "[";
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    if (i) os << ",";
    os << x.coords[i];
  }
  os << "]";
  return os.str();
}

ClosureModelPtr build_closure_model(std::uint32_t p, std::uint64_t q, int top_degree,
                                    std::uint64_t cap) {
  return std::make_shared<const ClosureModel>(p, q, top_degree, cap);
}

// ---------------------------------------------------------------------------
// WorkField

WorkField::WorkField(const ClosureModel& model, int degree_over_k, std::uint64_t cap)
    : model_(model), p_(model.p()), m_(model.base_pdeg()), n_(degree_over_k) {
  pdeg_ = m_ * n_;
  size_ = 1;
  for (int i = 0; i < pdeg_; ++i) {
    if (size_ > cap / p_) throw BoundExceeded("work field exceeds the enumeration cap");
    size_ *= p_;
  }
  poly_ = least_irreducible(pdeg_, p_);

  std::uint64_t ord = size_ - 1;
  log_.assign(size_, kZero);
  exp_.assign(ord, 0);

  // find a generator, then fill exp/log in one multiplicative sweep
  auto mulmod_packed = [&](std::uint64_t a, std::uint64_t b) {
    Poly pa(static_cast<std::size_t>(pdeg_)), pb(static_cast<std::size_t>(pdeg_));
    std::uint64_t t = a;
    for (int i = 0; i < pdeg_; ++i) { pa[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(t % p_); t /= p_; }
    t = b;
    for (int i = 0; i < pdeg_; ++i) { pb[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(t % p_); t /= p_; }
    Poly r = poly_mulmod(pa, pb, poly_, p_);
    r.resize(static_cast<std::size_t>(pdeg_), 0);
    std::uint64_t packed = 0;
    for (int i = pdeg_ - 1; i >= 0; --i) packed = packed * p_ + r[static_cast<std::size_t>(i)];
    return packed;
  };
  auto pf = prime_factors(ord);
  std::uint64_t gen = 0;
  for (std::uint64_t cand = 1; cand < size_; ++cand) {
    bool ok = true;
    for (std::uint64_t r : pf) {
      // cand^{ord/r} via square-and-multiply on packed values
      std::uint64_t res = 1, b = cand, e = ord / r;
      while (e) {
        if (e & 1) res = mulmod_packed(res, b);
        b = mulmod_packed(b, b);
        e >>= 1;
      }
      if (res == 1) { ok = false; break; }
    }
    if (ok) { gen = cand; break; }
  }
  if (!gen) throw Error("no generator in work field (unreachable)");

  std::uint64_t cur = 1;
  for (std::uint64_t j = 0; j < ord; ++j) {
    exp_[j] = cur;
    log_[cur] = j;
    cur = mulmod_packed(cur, gen);
  }

  // Zech logs: zech[j] = log(1 + g^j)
  zech_.assign(ord, kZero);
  for (std::uint64_t j = 0; j < ord; ++j) {
    std::uint64_t s = packed_add(1, exp_[j]);
    zech_[j] = (s == 0) ? kZero : log_[s];
  }

  // absolute trace residues per log index
  trace_res_.assign(ord, 0);
  for (std::uint64_t j = 0; j < ord; ++j) {
    Poly pa(static_cast<std::size_t>(pdeg_));
    std::uint64_t t = exp_[j];
    for (int i = 0; i < pdeg_; ++i) { pa[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(t % p_); t /= p_; }
    Poly acc(static_cast<std::size_t>(pdeg_), 0);
    Poly c2 = pa;
    for (int i = 0; i < pdeg_; ++i) {
      for (int j2 = 0; j2 < pdeg_; ++j2)
        acc[static_cast<std::size_t>(j2)] = (acc[static_cast<std::size_t>(j2)] + c2[static_cast<std::size_t>(j2)]) % p_;
      c2 = poly_powmod(std::move(c2), p_, poly_, p_);
      c2.resize(static_cast<std::size_t>(pdeg_), 0);
    }
    trace_res_[j] = acc[0];
  }
}

std::uint64_t WorkField::packed_add(std::uint64_t a, std::uint64_t b) const {
  std::uint64_t r = 0, mul = 1;
  for (int i = 0; i < pdeg_; ++i) {
    std::uint64_t da = a % p_, db = b % p_;
    a /= p_;
    b /= p_;
    r += ((da + db) % p_) * mul;
    mul *= p_;
  }
  return r;
}

std::uint64_t WorkField::add(std::uint64_t a, std::uint64_t b) const {
  if (a == kZero) return b;
  if (b == kZero) return a;
  // g^a + g^b = g^a (1 + g^{b-a})
  std::uint64_t ord = order();
  std::uint64_t diff = b >= a ? b - a : b + ord - a;
  std::uint64_t z = zech_[diff];
  if (z == kZero) return kZero;
  std::uint64_t s = a + z;
  if (s >= ord) s -= ord;
  return s;
}

std::uint64_t WorkField::neg(std::uint64_t a) const {
  if (a == kZero) return a;
  if (p_ == 2) return a;
  // -1 = g^{ord/2}
  std::uint64_t s = a + order() / 2;
  if (s >= order()) s -= order();
  return s;
}

std::uint64_t WorkField::frob_p(std::uint64_t a, std::uint64_t i) const {
  if (a == kZero) return a;
  std::uint64_t ord = order();
  std::uint64_t e = 1;
  for (std::uint64_t k = 0; k < i % static_cast<std::uint64_t>(pdeg_); ++k)
    e = e * p_ % ord;
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * e) % ord);
}

std::uint64_t WorkField::frob_q(std::uint64_t a, std::uint64_t i) const {
  return frob_p(a, (i % static_cast<std::uint64_t>(n_)) * static_cast<std::uint64_t>(m_));
}

std::uint64_t WorkField::pow_int(std::uint64_t a, std::uint64_t e) const {
  if (a == kZero) return e == 0 ? 0 : kZero;  // a^0 = 1 = g^0
  std::uint64_t ord = order();
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * (e % ord)) % ord);
}

std::uint64_t WorkField::import(const FieldElement& x) const {
  int e = x.degree;
  if (n_ % e != 0)
    throw DegreeMismatch("cannot import degree-" + std::to_string(e) +
                         " element into degree-" + std::to_string(n_) + " work field");
  auto it = import_basis_.find(e);
  if (it == import_basis_.end()) {
    // find the least root of the model's degree-e defining polynomial here,
    // then record packed images of its power basis
    const auto& s = model_.sf(e);
    std::vector<std::uint64_t> basis;
    std::uint64_t root_packed = 0;
    bool found = false;
    for (std::uint64_t cand = 0; cand < size_ && !found; ++cand) {
      // Horner evaluation of s.poly at cand on packed values
      std::uint64_t accp = s.poly[static_cast<std::size_t>(s.pdeg)] % p_;
      for (int i = s.pdeg - 1; i >= 0; --i) {
        // accp = accp * cand + poly[i]
        if (accp != 0 && cand != 0) {
          std::uint64_t l = log_[accp] + log_[cand];
          if (l >= order()) l -= order();
          accp = exp_[l];
        } else {
          accp = 0;
        }
        std::uint64_t ci = s.poly[static_cast<std::size_t>(i)] % p_;
        if (ci) accp = packed_add(accp, ci);
      }
      if (accp == 0) {
        root_packed = cand;
        found = true;
      }
    }
    if (!found) throw Error("no root for import embedding (unreachable)");
    std::uint64_t cur = 1;
    for (int j2 = 0; j2 < s.pdeg; ++j2) {
      basis.push_back(cur == 0 ? kZero : log_[cur]);
      if (cur != 0 && root_packed != 0) {
        std::uint64_t l = log_[cur] + log_[root_packed];
        if (l >= order()) l -= order();
        cur = exp_[l];
      } else {
        cur = 0;
      }
    }
    it = import_basis_.emplace(e, std::move(basis)).first;
  }
  // x = sum coords[j] * root^j
  std::uint64_t packed = 0;
  for (std::size_t j = 0; j < x.coords.size(); ++j) {
    std::uint32_t c = x.coords[j];
    if (!c) continue;
    std::uint64_t b = it->second[j];
    if (b == kZero) continue;
    // c * g^b: scalar multiples via repeated addition (c < p, tiny)
    std::uint64_t term = 0;
    for (std::uint32_t r2 = 0; r2 < c; ++r2) term = packed_add(term, exp_[b]);
    packed = packed_add(packed, term);
  }
  return packed == 0 ? kZero : log_[packed];
}

}  // namespace hwlab

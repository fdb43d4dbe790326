#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "hwlab/errors.hpp"

namespace hwlab {

/// Element of a subfield of the closure model. Coordinates are over F_p in
/// the polynomial basis of the owning subfield; `degree` is the degree over
/// the base field k (so the F_p-dimension is m*degree for q = p^m).
struct FieldElement {
  int degree = 1;
  std::vector<std::uint32_t> coords;

  bool operator==(const FieldElement&) const = default;
};

/// A fixed model of the tower k = F_q up to F_{q^D}: one subfield per divisor
/// of D, each with the lexicographically least irreducible defining polynomial
/// over F_p, plus compatible embeddings through a distinguished copy inside
/// the top field. Immutable after construction; all operations are pure.
class ClosureModel {
 public:
  static constexpr std::uint64_t kDefaultCap = std::uint64_t{1} << 20;

  ClosureModel(std::uint32_t p, std::uint64_t q, int top_degree,
               std::uint64_t cap = kDefaultCap);

  std::uint32_t p() const { return p_; }
  std::uint64_t q() const { return q_; }
  int base_pdeg() const { return m_; }  // m with q = p^m
  int top_degree() const { return D_; }
  std::uint64_t cap() const { return cap_; }

  /// Degrees (over k) of the subfields in the model: the divisors of D.
  const std::vector<int>& degrees() const { return degrees_; }
  bool has_degree(int d) const;

  /// Cardinality q^d of the degree-d subfield.
  std::uint64_t field_size(int d) const;

  // -- element construction --------------------------------------------------
  FieldElement zero(int degree = 1) const;
  FieldElement one(int degree = 1) const;
  /// Element of F_p c lifted into the degree-d subfield.
  FieldElement from_base_residue(std::uint32_t c, int degree = 1) const;
  FieldElement from_coords(int degree, std::vector<std::uint32_t> coords) const;
  /// Enumeration order: packed index in [0, q^d), base-p digits = coordinates.
  FieldElement from_index(int degree, std::uint64_t index) const;
  std::uint64_t to_index(const FieldElement& x) const;
  /// Multiplicative generator of the degree-d subfield.
  FieldElement generator(int degree) const;

  // -- arithmetic (mixed degrees are coerced to the lcm) ----------------------
  FieldElement add(const FieldElement& a, const FieldElement& b) const;
  FieldElement sub(const FieldElement& a, const FieldElement& b) const;
  FieldElement neg(const FieldElement& a) const;
  FieldElement mul(const FieldElement& a, const FieldElement& b) const;
  FieldElement inv(const FieldElement& a) const;
  FieldElement pow(const FieldElement& a, std::int64_t e) const;
  bool is_zero(const FieldElement& a) const;
  bool equal(const FieldElement& a, const FieldElement& b) const;

  /// x^{q^i}; i may be negative. Stays in the owning subfield.
  FieldElement frobenius(const FieldElement& x, std::int64_t i = 1) const;

  /// Tr_{k_d/k}(x) for x in the degree-d subfield; result lives in k.
  FieldElement relative_trace(const FieldElement& x, int d) const;
  /// Nm_{k_d/k}(x) for x in the degree-d subfield; result lives in k.
  FieldElement relative_norm(const FieldElement& x, int d) const;
  /// Absolute trace to F_p, returned as a residue in [0, p).
  std::uint32_t abs_trace_residue(const FieldElement& x) const;

  /// Embed x into the degree-d subfield (degree(x) must divide d).
  FieldElement embed(const FieldElement& x, int d) const;
  /// Inverse of embed: x must lie in the embedded copy of k_d, else throws.
  FieldElement project(const FieldElement& x, int d) const;
  /// Least degree e | degree(x) such that x lies in the embedded k_e.
  int minimal_degree(const FieldElement& x) const;

  /// All q^d elements of the degree-d subfield, in index order.
  std::vector<FieldElement> enumerate(int d) const;

  /// Multiplicative order of a nonzero element.
  std::uint64_t mult_order(const FieldElement& x) const;

  std::string to_string(const FieldElement& x) const;

 private:
  friend class WorkField;

  struct Subfield {
    int deg = 1;                           // degree over k
    int pdeg = 1;                          // degree over F_p
    std::vector<std::uint32_t> poly;       // defining polynomial, monic, length pdeg+1
    std::vector<std::vector<std::uint32_t>> frob_q;   // q-power Frobenius matrix (pdeg x pdeg)
    std::vector<std::uint32_t> gen;        // multiplicative generator coords
    std::vector<std::vector<std::uint32_t>> embed_up; // per divisor pair target: see embeds_
  };

  const Subfield& sf(int d) const;
  std::vector<std::uint32_t> raw_mul(const Subfield& s,
                                     const std::vector<std::uint32_t>& a,
                                     const std::vector<std::uint32_t>& b) const;
  std::vector<std::uint32_t> raw_pow(const Subfield& s,
                                     std::vector<std::uint32_t> a,
                                     std::uint64_t e) const;
  void check_element(const FieldElement& x) const;
  FieldElement coerce(const FieldElement& x, int d) const;

  std::uint32_t p_;
  std::uint64_t q_;
  int m_;
  int D_;
  std::uint64_t cap_;
  std::vector<int> degrees_;
  std::map<int, Subfield> subfields_;
  // embedding matrix for each divisor pair d -> d' (columns = images of the
  // degree-d basis, as coordinate vectors of the degree-d' subfield)
  std::map<std::pair<int, int>, std::vector<std::vector<std::uint32_t>>> embeds_;
};

using ClosureModelPtr = std::shared_ptr<const ClosureModel>;

ClosureModelPtr build_closure_model(std::uint32_t p, std::uint64_t q,
                                    int top_degree,
                                    std::uint64_t cap = ClosureModel::kDefaultCap);

/// Throwaway dense field F_{q^n} with Zech-logarithm tables, used for the
/// enumeration-heavy exponential sums. Elements are encoded as logs in
/// [0, q^n-1) with `kZero` for 0. Structure constants are imported from a
/// closure model subfield through a deterministic embedding.
class WorkField {
 public:
  static constexpr std::uint64_t kZero = ~std::uint64_t{0};

  WorkField(const ClosureModel& model, int degree_over_k, std::uint64_t cap);

  int degree() const { return n_; }
  std::uint64_t size() const { return size_; }
  std::uint64_t order() const { return size_ - 1; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    if (a == kZero || b == kZero) return kZero;
    std::uint64_t s = a + b;
    if (s >= order()) s -= order();
    return s;
  }
  std::uint64_t neg(std::uint64_t a) const;
  /// a^{p^i} in log form.
  std::uint64_t frob_p(std::uint64_t a, std::uint64_t i) const;
  /// a^{q^i} in log form.
  std::uint64_t frob_q(std::uint64_t a, std::uint64_t i) const;
  std::uint64_t pow_int(std::uint64_t a, std::uint64_t e) const;
  std::uint32_t trace_residue(std::uint64_t a) const {
    return a == kZero ? 0 : trace_res_[a];
  }

  /// Import an element of the model (its degree must divide this field's).
  std::uint64_t import(const FieldElement& x) const;

 private:
  const ClosureModel& model_;
  std::uint32_t p_;
  int m_;
  int n_;        // degree over k
  int pdeg_;     // degree over F_p
  std::uint64_t size_;
  std::vector<std::uint32_t> poly_;
  std::vector<std::uint64_t> log_;    // packed coord -> log
  std::vector<std::uint64_t> exp_;    // log -> packed coord
  std::vector<std::uint64_t> zech_;   // log(1 + g^j), kZero if 1 + g^j = 0
  std::vector<std::uint32_t> trace_res_;
  // images of the model subfield generators, keyed by subfield degree
  mutable std::map<int, std::vector<std::uint64_t>> import_basis_;
  std::uint64_t packed_add(std::uint64_t a, std::uint64_t b) const;
};

}  // namespace hwlab

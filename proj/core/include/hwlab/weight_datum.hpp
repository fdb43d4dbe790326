#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hwlab/ff.hpp"

namespace hwlab {

/// One Gal x {±1}-orbit of weights, as supplied by the user.
/// Asymmetric orbits contribute 2d weights (a Galois orbit and its negative),
/// symmetric orbits contribute d weights with -s = sigma^{d/2}(s).
struct OrbitSpec {
  enum class Kind { Asymmetric, Symmetric };

  std::string label;
  Kind kind = Kind::Asymmetric;
  int d = 1;
  int multiplicity = 1;
  /// Symmetric only: diagonal of the skew-Hermitian form per slot. Entries
  /// must be nonzero with Tr_{k_d/k_{d/2}} = 0; default is one deterministic
  /// xi repeated.
  std::vector<FieldElement> form_diag;
  /// Optional Frobenius twisting units: scalars[j][i] multiplies the default
  /// scalar of the sigma-step into position j on slot i (asymmetric: applied
  /// to the plus side, the minus side compensates; symmetric: applied
  /// directly). Empty means all 1.
  std::vector<std::vector<FieldElement>> scalars;
};

struct WeightDatum {
  std::uint32_t p = 2;
  std::uint64_t q = 2;
  std::vector<OrbitSpec> orbits;
  std::uint64_t cap = ClosureModel::kDefaultCap;
};

/// Classification data of one orbit per the rational-form description:
/// dual pairing for asymmetric orbits, skew-Hermitian form for symmetric
/// ones, both expressed in the slot bases of the rational lines.
struct OrbitClass {
  OrbitSpec::Kind kind;
  int orbit = 0;        // index into datum.orbits
  int rep_weight = 0;   // global weight index of the representative s
  int d = 1;            // d_s
  int m = 1;            // multiplicity
  /// basepoints of the rational solution lines, one per slot
  std::vector<FieldElement> line_plus;
  std::vector<FieldElement> line_minus;  // asymmetric only
  /// m x m matrix of B in the line bases, entries in k_{d}.
  /// asymmetric: B(v,w*) pairing; symmetric: B(v,w) = <v, sigma^{d/2} w>.
  std::vector<std::vector<FieldElement>> B;
};

/// Polarization request: the built-in preset or an explicit list of positive
/// weights (global weight indices or labels at the JSON layer).
struct Polarization {
  bool simple = true;
  std::vector<int> positive;  // used when !simple
};

struct PolarizationData {
  std::vector<bool> positive;   // per weight
  std::vector<int> I0, I1;      // weight indices
  std::vector<int> Lambda0, Lambda1;  // basis indices
  std::map<int, int> n_lambda;  // lambda in Lambda1 -> n_lambda
  std::map<int, int> beta;      // lambda in Lambda1 -> beta_lambda
};

/// The validated symplectic space: weights, adapted basis with sigma-action
/// scalars and Gram data, rational-form solution lines, and the orbit
/// classification. Immutable after construction.
class SymplecticSpace {
 public:
  const ClosureModel& model() const { return *model_; }
  ClosureModelPtr model_ptr() const { return model_; }
  const WeightDatum& datum() const { return datum_; }

  int num_weights() const { return static_cast<int>(sigma_w_.size()); }
  int num_basis() const { return static_cast<int>(sigma_b_.size()); }
  int dim() const { return num_basis(); }

  // weight tables
  int sigma_w(int w) const { return sigma_w_[static_cast<std::size_t>(w)]; }
  int sigma_w_pow(int w, int k) const;
  int neg_w(int w) const { return neg_w_[static_cast<std::size_t>(w)]; }
  int orbit_of_w(int w) const { return orbit_of_w_[static_cast<std::size_t>(w)]; }
  int multiplicity_of_w(int w) const;
  std::string weight_label(int w) const;
  std::optional<int> weight_by_label(const std::string& label) const;

  // basis tables
  int weight_of_b(int lam) const { return weight_of_b_[static_cast<std::size_t>(lam)]; }
  int slot_of_b(int lam) const { return slot_of_b_[static_cast<std::size_t>(lam)]; }
  int sigma_b(int lam) const { return sigma_b_[static_cast<std::size_t>(lam)]; }
  int sigma_b_pow(int lam, int k) const;
  int neg_b(int lam) const { return neg_b_[static_cast<std::size_t>(lam)]; }
  const FieldElement& scalar_c(int lam) const { return c_[static_cast<std::size_t>(lam)]; }
  const FieldElement& gram(int lam) const { return gram_[static_cast<std::size_t>(lam)]; }

  /// lcm of the sigma-orbit lengths on S, extended so that every structure
  /// constant and line basepoint is k_{d0}-rational.
  int d0() const { return d0_; }

  const std::vector<OrbitClass>& orbit_classes() const { return classes_; }

  /// sigma applied to a coordinate vector (length num_basis()).
  std::vector<FieldElement> frobenius_coords(const std::vector<FieldElement>& x) const;
  /// Exact symplectic form of two coordinate vectors.
  FieldElement pair_coords(const std::vector<FieldElement>& x,
                           const std::vector<FieldElement>& y) const;

  /// Per-orbit rational point: k_s coefficient vectors in the line bases.
  /// side 0 = plus / symmetric, side 1 = minus (asymmetric only).
  std::vector<FieldElement> coeffs_to_coords(
      int orbit_class, int side, const std::vector<FieldElement>& coeffs) const;

  /// Full coordinate vector from per-class coefficient data
  /// (coeffs[class][side][slot]).
  std::vector<FieldElement> point_coords(
      const std::vector<std::vector<std::vector<FieldElement>>>& coeffs) const;

  PolarizationData characteristic_index(const Polarization& pol) const;

  enum class PointSet { RationalForm, WeightSpace, NegI0 };
  /// Exact point lists. For RationalForm, t is the extension degree of k;
  /// for WeightSpace (weight w required), t extends k_s; NegI0 needs pol.
  std::vector<std::vector<FieldElement>> enumerate_points(
      PointSet set, int t = 1, int weight = -1,
      const PolarizationData* pol = nullptr) const;

  /// Restriction to a subset of orbits (graded sub-datum u^0); multiplicities
  /// may be overridden per kept orbit (used by fixed-locus restrictions).
  friend SymplecticSpace validate_datum(const WeightDatum& datum);

 private:
  SymplecticSpace() = default;
  void build(const WeightDatum& datum);
  void build_tables(const WeightDatum& datum);
  void seed_gram();
  void solve_lines();
  void classify();
  void check_invariants() const;

  ClosureModelPtr model_;
  WeightDatum datum_;
  int d0_ = 1;

  std::vector<int> sigma_w_, neg_w_, orbit_of_w_;
  std::vector<int> w_j_;     // position within the orbit
  std::vector<int> w_sign_;  // +1/-1 for asymmetric, 0 for symmetric
  std::vector<int> weight_of_b_, slot_of_b_, sigma_b_, neg_b_;
  std::vector<FieldElement> c_;     // sigma(v_{sigma^{-1}(lam)}) = c_[lam] v_lam
  std::vector<FieldElement> gram_;  // <v_lam, v_{-lam}>
  // rational line basepoint per basis sigma-orbit, keyed by the least index
  std::map<int, FieldElement> line_;
  std::vector<int> b_orbit_rep_;  // basis index -> least index of its sigma-orbit
  std::vector<OrbitClass> classes_;
};

/// Builds the closure model, the adapted basis, Gram data and rational lines,
/// establishing every invariant; throws NotGenuine / InconsistentMultiplicity /
/// DegenerateForm on invalid data.
SymplecticSpace validate_datum(const WeightDatum& datum);

}  // namespace hwlab

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dualbraid/catalog.hpp"
#include "dualbraid/linalg.hpp"

namespace dualbraid {

/// codim Fix(w) = rank(w - I).
int codim(const CycMatrix& w);

struct MatrixHash {
  std::size_t operator()(const CycMatrix& m) const noexcept;
};
struct MatrixEqual {
  bool operator()(const CycMatrix& a, const CycMatrix& b) const noexcept;
};

template <class Value>
using MatrixMap = std::unordered_map<CycMatrix, Value, MatrixHash, MatrixEqual>;

/// An element of W as an exact matrix, with its fixed-space codimension when known.
class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(CycMatrix matrix) : matrix_(std::move(matrix)) {}
  GroupElement(CycMatrix matrix, int codim) : matrix_(std::move(matrix)), codim_(codim) {}

  const CycMatrix& matrix() const noexcept { return matrix_; }
  Eigen::Index dimension() const noexcept { return matrix_.rows(); }
  /// Cached value if present, else computed.
  int codim() const { return codim_ ? *codim_ : dualbraid::codim(matrix_); }
  GroupElement with_codim() const { return GroupElement(matrix_, codim()); }

  GroupElement operator*(const GroupElement& other) const { return GroupElement(multiply(matrix_, other.matrix_)); }
  /// codim(w^-1) = codim(w), so a cached value carries over.
  GroupElement inverse() const;
  /// g^-1 * this * g
  GroupElement conjugate_by(const GroupElement& g) const;

  friend bool operator==(const GroupElement& a, const GroupElement& b) { return MatrixEqual{}(a.matrix_, b.matrix_); }

 private:
  CycMatrix matrix_;
  std::optional<int> codim_;
};

/// All reflections of W, indexed in discovery order of the conjugation closure.
///
/// Each reflection r is stored with a rank-one factorisation r = I + root * coroot,
/// which the interval builder uses to multiply by r in O(n^2).
class ReflectionSet {
 public:
  std::size_t size() const noexcept { return elements_.size(); }
  const GroupElement& operator[](std::size_t i) const { return elements_.at(i); }
  std::optional<std::size_t> find(const CycMatrix& m) const;
  const CycVector& root(std::size_t i) const { return roots_.at(i); }
  const Eigen::Matrix<Cyclotomic, 1, Eigen::Dynamic>& coroot(std::size_t i) const { return coroots_.at(i); }
  /// Index of r^-1.
  std::size_t inverse_of(std::size_t i) const { return inverses_.at(i); }

  /// r * x, using the rank-one form.
  CycMatrix left_multiply(std::size_t i, const CycMatrix& x) const;
  /// x * r, using the rank-one form.
  CycMatrix right_multiply(const CycMatrix& x, std::size_t i) const;

  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

 private:
  friend ReflectionSet reflection_closure(const GroupSpec& spec, std::size_t cap);
  void add(CycMatrix m);

  std::vector<GroupElement> elements_;
  std::vector<CycVector> roots_;
  std::vector<Eigen::Matrix<Cyclotomic, 1, Eigen::Dynamic>> coroots_;
  std::vector<std::size_t> inverses_;
  MatrixMap<std::size_t> index_;
};

class ClosureOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Conjugation closure of the generators under the generators (BFS order).
ReflectionSet reflection_closure(const GroupSpec& spec, std::size_t cap = 100000);

/// |{i : d | d_i}| == |{i : d | d_i^*}|.
bool is_regular_number(const GroupSpec& spec, int d);
/// All regular d with 1 <= d <= h.
std::vector<int> regular_numbers(const GroupSpec& spec);
/// h / gcd(d_1, ..., d_n).
int center_exponent(const GroupSpec& spec);

struct CoxeterElement {
  GroupElement element;
  CycVector regular_eigenvector;  // over Q(zeta_lcm(N, h))
  std::vector<std::size_t> word;  // factors: generator indices, or reflection indices for random candidates
  bool from_generators = true;    // false when the fallback search produced it
  std::size_t candidates_tried = 1;
};

/// A zeta_h-eigenvector of c lying off every reflecting hyperplane, if one exists.
std::optional<CycVector> coxeter_certificate(const GroupSpec& spec, const ReflectionSet& reflections, const CycMatrix& c);
/// Spectrum of c equals {zeta_h^(1 - d_i)} with multiplicities.
bool has_coxeter_spectrum(const GroupSpec& spec, const CycMatrix& c);

class CoxeterSearchFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Product of the generators in catalog order when certified; otherwise other
/// generator orders, then seeded random products of n reflections.
CoxeterElement find_coxeter_element(const GroupSpec& spec, const ReflectionSet& reflections, std::size_t budget = 10000);

}  // namespace dualbraid

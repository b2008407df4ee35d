#include "dualbraid/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <random>

namespace dualbraid {

namespace {

CycMatrix minus_identity(const CycMatrix& w) {
  CycMatrix m = w;
  for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, i) -= Cyclotomic(1L);
  return m;
}

bool is_identity(const CycMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!(i == j ? m(i, j).is_one() : m(i, j).is_zero())) return false;
  return true;
}

CycMatrix product_of(const GroupSpec& spec, const ReflectionSet& reflections, const std::vector<std::size_t>& word,
                     bool from_generators) {
  CycMatrix c = identity<Cyclotomic>(spec.rank);
  for (std::size_t k : word) c = multiply(c, from_generators ? spec.generators[k] : reflections[k].matrix());
  return c;
}

}  // namespace

int codim(const CycMatrix& w) { return rank(minus_identity(w)); }

std::size_t MatrixHash::operator()(const CycMatrix& m) const noexcept {
  std::size_t h = static_cast<std::size_t>(m.rows()) * 0x9e3779b97f4a7c15ULL;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) h = (h ^ m(i, j).hash()) * 0x100000001b3ULL + 0x7f4a7c15;
  return h;
}

bool MatrixEqual::operator()(const CycMatrix& a, const CycMatrix& b) const noexcept {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

GroupElement GroupElement::inverse() const {
  return codim_ ? GroupElement(dualbraid::inverse(matrix_), *codim_) : GroupElement(dualbraid::inverse(matrix_));
}

GroupElement GroupElement::conjugate_by(const GroupElement& g) const {
  GroupElement out(multiply(multiply(dualbraid::inverse(g.matrix_), matrix_), g.matrix_));
  if (codim_) out = GroupElement(out.matrix_, *codim_);
  return out;
}

std::optional<std::size_t> ReflectionSet::find(const CycMatrix& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void ReflectionSet::add(CycMatrix m) {
  const CycMatrix d = minus_identity(m);
  Eigen::Index col = 0, row = 0;
  while (col < d.cols()) {
    row = 0;
    while (row < d.rows() && d(row, col).is_zero()) ++row;
    if (row < d.rows()) break;
    ++col;
  }
  CycVector root = d.col(col);
  Eigen::Matrix<Cyclotomic, 1, Eigen::Dynamic> coroot = d.row(row);
  const Cyclotomic scale = root(row).inverse();
  for (Eigen::Index j = 0; j < coroot.cols(); ++j) coroot(j) = coroot(j) * scale;
  index_.emplace(m, elements_.size());
  elements_.emplace_back(std::move(m), 1);
  roots_.push_back(std::move(root));
  coroots_.push_back(std::move(coroot));
}

CycMatrix ReflectionSet::left_multiply(std::size_t i, const CycMatrix& x) const {
  const auto& a = roots_.at(i);
  const auto& f = coroots_.at(i);
  CycMatrix out = x;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    Cyclotomic s(0L);
    for (Eigen::Index k = 0; k < x.rows(); ++k)
      if (!f(k).is_zero() && !x(k, j).is_zero()) s += f(k) * x(k, j);
    if (s.is_zero()) continue;
    for (Eigen::Index r = 0; r < x.rows(); ++r)
      if (!a(r).is_zero()) out(r, j) += a(r) * s;
  }
  return out;
}

CycMatrix ReflectionSet::right_multiply(const CycMatrix& x, std::size_t i) const {
  const auto& a = roots_.at(i);
  const auto& f = coroots_.at(i);
  CycMatrix out = x;
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    Cyclotomic s(0L);
    for (Eigen::Index k = 0; k < x.cols(); ++k)
      if (!a(k).is_zero() && !x(r, k).is_zero()) s += x(r, k) * a(k);
    if (s.is_zero()) continue;
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      if (!f(j).is_zero()) out(r, j) += s * f(j);
  }
  return out;
}

ReflectionSet reflection_closure(const GroupSpec& spec, std::size_t cap) {
  ReflectionSet set;
  std::vector<CycMatrix> inverses;
  for (const auto& g : spec.generators) inverses.push_back(inverse(g));
  std::deque<std::size_t> queue;
  const auto offer = [&](CycMatrix m) {
    if (set.index_.count(m) != 0) return;
    if (set.size() >= cap) throw ClosureOverflow(spec.name + ": reflection closure exceeds " + std::to_string(cap));
    queue.push_back(set.size());
    set.add(std::move(m));
  };
  for (const auto& g : spec.generators) offer(g);
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    const CycMatrix r = set.elements_[i].matrix();
    CycMatrix power = multiply(r, r);
    while (!is_identity(power)) {
      offer(power);
      power = multiply(power, r);
    }
    for (std::size_t k = 0; k < spec.generators.size(); ++k) {
      offer(multiply(multiply(inverses[k], r), spec.generators[k]));
    }
  }
  set.inverses_.resize(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto j = set.find(inverse(set.elements_[i].matrix()));
    if (!j) throw ClosureOverflow(spec.name + ": reflection set not closed under inversion");
    set.inverses_[i] = *j;
  }
  return set;
}

bool is_regular_number(const GroupSpec& spec, int d) {
  if (d < 1) return false;
  const auto a = std::count_if(spec.degrees.begin(), spec.degrees.end(), [d](int x) { return x % d == 0; });
  const auto b = std::count_if(spec.codegrees.begin(), spec.codegrees.end(), [d](int x) { return x % d == 0; });
  return a == b;
}

std::vector<int> regular_numbers(const GroupSpec& spec) {
  std::vector<int> out;
  for (int d = 1; d <= spec.coxeter_number(); ++d)
    if (is_regular_number(spec, d)) out.push_back(d);
  return out;
}

int center_exponent(const GroupSpec& spec) {
  int g = 0;
  for (int d : spec.degrees) g = std::gcd(g, d);
  return spec.coxeter_number() / g;
}

std::optional<CycVector> coxeter_certificate(const GroupSpec& spec, const ReflectionSet& reflections, const CycMatrix& c) {
  const int h = spec.coxeter_number();
  const auto basis = eigenspace(c, Cyclotomic::zeta(h));
  if (basis.empty()) return std::nullopt;
  const auto regular = [&](const CycVector& v) {
    for (std::size_t i = 0; i < reflections.size(); ++i) {
      Cyclotomic s(0L);
      const auto& f = reflections.coroot(i);
      for (Eigen::Index k = 0; k < v.rows(); ++k) s += f(k) * v(k);
      if (s.is_zero()) return false;
    }
    return true;
  };
  // Points t -> sum t^k b_k of the moment curve meet each hyperplane not containing
  // the eigenspace at most dim - 1 times, so this search is exhaustive.
  const long tries = static_cast<long>(reflections.size() * basis.size()) + 1;
  for (long t = 0; t <= tries; ++t) {
    CycVector v = basis[0];
    Cyclotomic power(1L);
    for (std::size_t k = 1; k < basis.size(); ++k) {
      power *= Cyclotomic(t);
      v += basis[k] * power;
    }
    if (regular(v)) return v;
    if (basis.size() == 1) break;
  }
  return std::nullopt;
}

bool has_coxeter_spectrum(const GroupSpec& spec, const CycMatrix& c) {
  const int h = spec.coxeter_number();
  std::map<int, int> multiplicity;
  for (int d : spec.degrees) ++multiplicity[(((1 - d) % h) + h) % h];
  for (const auto& [e, m] : multiplicity) {
    if (static_cast<int>(eigenspace(c, Cyclotomic::zeta(h, e)).size()) != m) return false;
  }
  return true;
}

CoxeterElement find_coxeter_element(const GroupSpec& spec, const ReflectionSet& reflections, std::size_t budget) {
  CoxeterElement out;
  std::size_t tried = 0;
  const auto attempt = [&](const std::vector<std::size_t>& word, bool from_generators) {
    ++tried;
    CycMatrix c = product_of(spec, reflections, word, from_generators);
    auto v = coxeter_certificate(spec, reflections, c);
    if (!v) return false;
    out.element = GroupElement(std::move(c), spec.rank);
    out.regular_eigenvector = std::move(*v);
    out.word = word;
    out.from_generators = from_generators;
    out.candidates_tried = tried;
    return true;
  };
  std::vector<std::size_t> order(spec.generators.size());
  std::iota(order.begin(), order.end(), 0);
  do {
    if (attempt(order, true)) return out;
  } while (tried < budget && std::next_permutation(order.begin(), order.end()));
  std::mt19937_64 rng(0x5eedULL + static_cast<std::uint64_t>(spec.rank));
  std::uniform_int_distribution<std::size_t> pick(0, reflections.size() - 1);
  std::vector<std::size_t> word(static_cast<std::size_t>(spec.rank));
  while (tried < budget) {
    for (auto& k : word) k = pick(rng);
    if (attempt(word, false)) return out;
  }
  throw CoxeterSearchFailure(spec.name + ": no certified Coxeter element among " + std::to_string(tried) + " candidates");
}

}  // namespace dualbraid

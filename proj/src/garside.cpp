#include "dualbraid/garside.hpp"

#include <algorithm>
#include <sstream>

#include "dualbraid/divided.hpp"

namespace dualbraid {

namespace {

std::uint64_t key(Interval::Index a, Interval::Index b) { return (std::uint64_t{a} << 32) | b; }

long parse_long(const std::string& text, const std::string& token) {
  try {
    std::size_t used = 0;
    const long v = std::stol(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw WordError("bad token '" + token + "'");
}

}  // namespace

DualMonoid::DualMonoid(const Interval& interval, const ReflectionSet& reflections)
    : interval_(interval), reflections_(reflections) {}

MonoidElement DualMonoid::simple(Interval::Index s) const {
  if (s == interval_.bottom()) return {};
  if (s == interval_.top()) return delta(1);
  return {0, {s}};
}

MonoidElement DualMonoid::atom(std::size_t reflection) const {
  if (reflection >= reflections_.size()) throw WordError("no reflection r" + std::to_string(reflection));
  const auto s = interval_.reflection_atom(reflection);
  if (!s) throw WordError("reflection r" + std::to_string(reflection) + " does not divide c");
  return simple(*s);
}

Interval::Index DualMonoid::product(Interval::Index s, Interval::Index t) const {
  {
    std::lock_guard lock(memo_mutex_);
    if (auto it = products_.find(key(s, t)); it != products_.end()) return it->second;
  }
  const auto p = interval_.product(s, t);
  if (!p) throw ConsistencyError("product of simples left the interval");
  std::lock_guard lock(memo_mutex_);
  products_.emplace(key(s, t), *p);
  return *p;
}

Interval::Index DualMonoid::quotient(Interval::Index m, Interval::Index t) const {
  {
    std::lock_guard lock(memo_mutex_);
    if (auto it = quotients_.find(key(m, t)); it != quotients_.end()) return it->second;
  }
  const auto q = interval_.left_quotient(m, t);
  if (!q) throw ConsistencyError("left quotient of simples left the interval");
  std::lock_guard lock(memo_mutex_);
  quotients_.emplace(key(m, t), *q);
  return *q;
}

void DualMonoid::append(MonoidElement& a, Interval::Index t) const {
  const auto top = interval_.top();
  if (t == interval_.bottom()) return;
  if (t == top) {
    for (auto& f : a.factors) f = interval_.conjugate_by_c(f, 1);
    ++a.delta_power;
    return;
  }
  auto& fs = a.factors;
  fs.push_back(t);
  for (std::size_t j = fs.size() - 1; j-- > 0;) {
    const auto m = interval_.meet(interval_.kreweras(fs[j]), fs[j + 1]);
    if (m == interval_.bottom()) break;
    fs[j] = product(fs[j], m);
    fs[j + 1] = quotient(m, fs[j + 1]);
  }
  // A full delta can only surface at the front and a trivial factor only at the back.
  std::size_t lead = 0;
  while (lead < fs.size() && fs[lead] == top) ++lead;
  a.delta_power += static_cast<long>(lead);
  fs.erase(fs.begin(), fs.begin() + static_cast<std::ptrdiff_t>(lead));
  while (!fs.empty() && fs.back() == interval_.bottom()) fs.pop_back();
}

MonoidElement DualMonoid::multiply(const MonoidElement& a, const MonoidElement& b) const {
  MonoidElement out{a.delta_power + b.delta_power, a.factors};
  for (auto& f : out.factors) f = interval_.conjugate_by_c(f, b.delta_power);
  for (auto t : b.factors) append(out, t);
  return out;
}

MonoidElement DualMonoid::normalize(long delta_power, const std::vector<Interval::Index>& simples) const {
  MonoidElement out = delta(delta_power);
  for (auto s : simples) append(out, s);
  return out;
}

bool DualMonoid::is_normal(const MonoidElement& a) const {
  for (std::size_t i = 0; i < a.factors.size(); ++i) {
    const auto s = a.factors[i];
    if (s == interval_.bottom() || s == interval_.top()) return false;
    if (i + 1 < a.factors.size() && interval_.meet(interval_.kreweras(s), a.factors[i + 1]) != interval_.bottom()) {
      return false;
    }
  }
  return true;
}

MonoidElement DualMonoid::delta_conjugate(const MonoidElement& a, long power) const {
  MonoidElement out = a;
  for (auto& f : out.factors) f = interval_.conjugate_by_c(f, power);
  if (!is_normal(out)) throw ConsistencyError("conjugation by c broke a normal form");
  return out;
}

MonoidElement DualMonoid::strip_head(const MonoidElement& a, Interval::Index m) const {
  if (a.delta_power > 0) {
    MonoidElement rest = a;
    --rest.delta_power;
    return multiply(simple(interval_.kreweras(m)), rest);
  }
  MonoidElement rest{0, std::vector<Interval::Index>(a.factors.begin() + 1, a.factors.end())};
  return multiply(simple(quotient(m, a.factors.front())), rest);
}

MonoidElement DualMonoid::left_gcd(const MonoidElement& a, const MonoidElement& b) const {
  if (a.delta_power < 0 || b.delta_power < 0) throw WordError("left_gcd is defined for positive elements");
  const auto head = [&](const MonoidElement& x) {
    if (x.delta_power > 0) return interval_.top();
    return x.factors.empty() ? interval_.bottom() : x.factors.front();
  };
  MonoidElement g, x = a, y = b;
  for (;;) {
    const auto m = interval_.meet(head(x), head(y));
    if (m == interval_.bottom()) return g;
    append(g, m);
    x = strip_head(x, m);
    y = strip_head(y, m);
  }
}

bool DualMonoid::left_divides(const MonoidElement& a, const MonoidElement& b) const { return left_gcd(a, b) == a; }

long DualMonoid::length(const MonoidElement& a) const {
  long l = a.delta_power * interval_.rank();
  for (auto f : a.factors) l += interval_.rank_of(f);
  return l;
}

MonoidElement DualMonoid::parse_word(std::string_view word) const {
  std::string text(word);
  for (const std::string sep : {"\xC2\xB7", "[", "]"}) {
    for (auto pos = text.find(sep); pos != std::string::npos; pos = text.find(sep)) text.replace(pos, sep.size(), " ");
  }
  std::istringstream in(text);
  std::string tok;
  MonoidElement out;
  while (in >> tok) {
    if (tok == "D") {
      out = multiply(out, delta(1));
    } else if (tok.rfind("D^", 0) == 0) {
      out = multiply(out, delta(parse_long(tok.substr(2), tok)));
    } else if (tok.size() > 1 && tok[0] == 'r' && std::isdigit(static_cast<unsigned char>(tok[1]))) {
      const long r = parse_long(tok.substr(1), tok);
      out = multiply(out, atom(static_cast<std::size_t>(r)));
    } else {
      throw WordError("bad token '" + tok + "'");
    }
  }
  return out;
}

std::vector<std::size_t> DualMonoid::spell(Interval::Index s) const {
  std::vector<std::size_t> labels;
  while (s != interval_.bottom()) {
    const auto& cov = interval_.covers_below(s).front();
    labels.push_back(cov.reflection);
    s = cov.other;
  }
  std::reverse(labels.begin(), labels.end());
  return labels;
}

std::string DualMonoid::render(const MonoidElement& a) const {
  std::ostringstream out;
  out << "D^" << a.delta_power;
  for (auto f : a.factors) {
    out << " \xC2\xB7 [";
    const auto labels = spell(f);
    for (std::size_t i = 0; i < labels.size(); ++i) out << (i ? " r" : "r") << labels[i];
    out << ']';
  }
  return out.str();
}

MonoidElement center_generator(const GroupSpec& spec, const DualMonoid& monoid) {
  const CenterCheck check = check_center(spec, monoid.interval());
  if (!check.ok()) {
    throw ConsistencyError(spec.name + ": center check failed (h' = " + std::to_string(check.expected) +
                           ", least power of c fixing all simples = " + std::to_string(check.minimal_power) + ")");
  }
  return monoid.delta(check.expected);
}

bool has_dth_root_of_tau(const GroupSpec& spec, const Interval& interval, int d) {
  if (d < 1) throw std::invalid_argument("d must be positive");
  const bool roots = count_fixed_objects(spec, interval, d, 1) > 0;
  if (roots != is_regular_number(spec, d)) {
    throw ConsistencyError(spec.name + ": fixed objects for d = " + std::to_string(d) +
                           " disagree with the degree/codegree criterion");
  }
  return roots;
}

}  // namespace dualbraid

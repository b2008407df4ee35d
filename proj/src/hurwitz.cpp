#include "dualbraid/hurwitz.hpp"

#include <ostream>

namespace dualbraid {

namespace {

// Linear probing set of nonzero 64-bit keys.
class PackedSet {
 public:
  PackedSet() : slots_(1 << 16, 0), mask_((1 << 16) - 1) {}

  bool insert(std::uint64_t key) {
    if (2 * (count_ + 1) > slots_.size()) grow();
    if (!place(slots_, mask_, key)) return false;
    ++count_;
    return true;
  }
  std::uint64_t size() const noexcept { return count_; }

 private:
  static std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    return x ^ (x >> 33);
  }
  static bool place(std::vector<std::uint64_t>& slots, std::uint64_t mask, std::uint64_t key) {
    for (std::uint64_t i = mix(key) & mask;; i = (i + 1) & mask) {
      if (slots[i] == key) return false;
      if (slots[i] == 0) {
        slots[i] = key;
        return true;
      }
    }
  }
  void grow() {
    std::vector<std::uint64_t> bigger(slots_.size() * 2, 0);
    const std::uint64_t mask = bigger.size() - 1;
    for (auto key : slots_)
      if (key != 0) place(bigger, mask, key);
    slots_.swap(bigger);
    mask_ = mask;
  }

  std::vector<std::uint64_t> slots_;
  std::uint64_t mask_;
  std::uint64_t count_ = 0;
};

// Entries are stored plus one so that no tuple packs to zero.
std::uint64_t pack(const ReflectionTuple& t) {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < t.size(); ++i) key |= std::uint64_t(t[i] + 1) << (8 * i);
  return key;
}

void unpack(std::uint64_t key, ReflectionTuple& t) {
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<std::uint32_t>(((key >> (8 * i)) & 0xff) - 1);
}

}  // namespace

ConjugationTable::ConjugationTable(const ReflectionSet& reflections) : size_(reflections.size()) {
  table_.resize(size_ * size_);
  inverses_.resize(size_);
  for (std::size_t b = 0; b < size_; ++b) {
    inverses_[b] = static_cast<std::uint32_t>(reflections.inverse_of(b));
    const CycMatrix& binv = reflections[reflections.inverse_of(b)].matrix();
    const CycMatrix& bm = reflections[b].matrix();
    for (std::size_t a = 0; a < size_; ++a) {
      const auto k = reflections.find(multiply(multiply(binv, reflections[a].matrix()), bm));
      if (!k) throw HurwitzError("conjugate of a reflection is missing from the reflection set");
      table_[a * size_ + b] = static_cast<std::uint32_t>(*k);
    }
  }
}

ReflectionTuple hurwitz_move(const ConjugationTable& table, const ReflectionTuple& tuple, std::size_t i, int direction) {
  if (i < 1 || i >= tuple.size()) throw HurwitzError("Hurwitz move index out of range");
  if (direction != 1 && direction != -1) throw HurwitzError("Hurwitz move direction must be +1 or -1");
  ReflectionTuple out = tuple;
  const std::uint32_t a = tuple[i - 1], b = tuple[i];
  if (direction == 1) {
    out[i - 1] = b;
    out[i] = table.conjugate(a, b);
  } else {
    out[i - 1] = table.conjugate(b, table.inverse_of(a));
    out[i] = a;
  }
  return out;
}

ReflectionTuple reduced_decompositions_seed(const Interval& interval) {
  ReflectionTuple out;
  for (auto r : interval.maximal_chain_labels()) out.push_back(static_cast<std::uint32_t>(r));
  return out;
}

CycMatrix tuple_product(const ReflectionSet& reflections, const ReflectionTuple& tuple) {
  CycMatrix p = reflections[tuple.at(0)].matrix();
  for (std::size_t i = 1; i < tuple.size(); ++i) p = reflections.right_multiply(p, tuple[i]);
  return p;
}

OrbitStats hurwitz_orbit(const ConjugationTable& table, const ReflectionTuple& seed, std::uint64_t cap,
                         std::ostream* dump) {
  if (seed.size() < 1 || seed.size() > 8) throw HurwitzError("orbit enumeration needs 1 <= length <= 8");
  if (table.size() > 255) throw HurwitzError("orbit enumeration supports at most 255 reflections");
  OrbitStats stats;
  PackedSet seen;
  std::vector<std::uint64_t> order;  // visited tuples in discovery order; doubles as the queue
  const auto visit = [&](const ReflectionTuple& t) {
    if (!seen.insert(pack(t))) return true;
    if (order.size() >= cap) return false;
    order.push_back(pack(t));
    if (dump) {
      for (std::size_t i = 0; i < t.size(); ++i) *dump << (i ? " " : "") << t[i];
      *dump << '\n';
    }
    return true;
  };
  if (cap == 0) return stats;
  visit(seed);
  ReflectionTuple t(seed.size());
  for (std::size_t head = 0; head < order.size(); ++head) {
    unpack(order[head], t);
    for (std::size_t i = 1; i < t.size(); ++i) {
      const std::uint32_t a = t[i - 1], b = t[i];
      t[i - 1] = b;
      t[i] = table.conjugate(a, b);
      const bool ok_fwd = visit(t);
      t[i - 1] = table.conjugate(b, table.inverse_of(a));
      t[i] = a;
      const bool ok_back = visit(t);
      t[i - 1] = a;
      t[i] = b;
      if (!ok_fwd || !ok_back) {
        stats.size = order.size();
        return stats;
      }
    }
  }
  stats.size = order.size();
  stats.complete = true;
  return stats;
}

}  // namespace dualbraid

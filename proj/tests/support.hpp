#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "dualbraid/catalog.hpp"
#include "dualbraid/group.hpp"
#include "dualbraid/interval.hpp"

namespace dualbraid::testing {

struct Fixture {
  GroupSpec spec;
  ReflectionSet reflections;
  CoxeterElement coxeter;
  std::unique_ptr<Interval> interval;

  const GroupElement& c() const { return coxeter.element; }
};

inline std::filesystem::path test_cache_dir() { return DUALBRAID_TEST_CACHE_DIR; }

// Built once per process; intervals go through the on-disk cache.
inline const Fixture& fixture(const std::string& selector) {
  static std::mutex mutex;
  static std::map<std::string, std::unique_ptr<Fixture>> built;
  std::lock_guard lock(mutex);
  auto& slot = built[selector];
  if (!slot) {
    auto f = std::make_unique<Fixture>();
    f->spec = resolve_group(selector);
    f->reflections = reflection_closure(f->spec);
    f->coxeter = find_coxeter_element(f->spec, f->reflections);
    f->interval = std::make_unique<Interval>(
        load_or_build_interval(f->spec, f->reflections, f->coxeter.element, test_cache_dir()));
    slot = std::move(f);
  }
  return *slot;
}

// Every element of the group, by breadth-first closure over the generators.
inline std::vector<CycMatrix> group_elements(const GroupSpec& spec, std::size_t cap = 20000) {
  std::vector<CycMatrix> out{identity<Cyclotomic>(spec.rank)};
  MatrixMap<std::size_t> seen{{out.front(), 0}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& g : spec.generators) {
      CycMatrix x = multiply(out[i], g);
      if (seen.emplace(x, out.size()).second) out.push_back(std::move(x));
      if (out.size() > cap) throw std::runtime_error("group larger than the test cap");
    }
  }
  return out;
}

}  // namespace dualbraid::testing

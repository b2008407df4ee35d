#include <fstream>
#include <sstream>

#include "dualbraid/interval.hpp"

namespace dualbraid {

namespace {

constexpr std::string_view kCacheMagic = "dualbraid-interval";
constexpr int kCacheVersion = 1;

class Reader {
 public:
  explicit Reader(std::string_view text) : in_{std::string(text)} {}

  std::string word() {
    std::string w;
    if (!(in_ >> w)) throw LatticeError("interval cache: unexpected end of file");
    return w;
  }
  long integer() {
    const std::string w = word();
    try {
      std::size_t used = 0;
      const long v = std::stol(w, &used);
      if (used == w.size()) return v;
    } catch (const std::exception&) {
    }
    throw LatticeError("interval cache: expected an integer, got '" + w + "'");
  }
  void expect(std::string_view key) {
    const std::string w = word();
    if (w != key) throw LatticeError("interval cache: expected '" + std::string(key) + "', got '" + w + "'");
  }

 private:
  std::istringstream in_;
};

std::string file_stem(const std::string& name) {
  std::string out;
  for (char ch : name) out.push_back(std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_');
  return out;
}

}  // namespace

std::string Interval::serialize(const GroupSpec& spec) const {
  std::ostringstream out;
  out << kCacheMagic << ' ' << kCacheVersion << '\n';
  out << "group " << spec.name << '\n';
  out << "data-hash " << spec.data_hash << '\n';
  out << "rank " << rank_ << '\n';
  out << "size " << size() << '\n';
  for (std::size_t i = 0; i < size(); ++i) {
    out << "element " << i << ' ' << ranks_[i] << '\n';
    const auto& m = elements_[i].matrix();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) out << (c ? " " : "") << m(r, c).to_string();
      out << '\n';
    }
  }
  for (std::size_t i = 0; i < size(); ++i) {
    out << "covers " << i << ' ' << below_[i].size();
    for (const auto& cov : below_[i]) out << ' ' << cov.other << ' ' << cov.reflection;
    out << '\n';
  }
  out << "kreweras";
  for (Index k : kreweras_) out << ' ' << k;
  out << "\nend\n";
  return out.str();
}

Interval Interval::deserialize(std::string_view text, const GroupSpec& spec, const ReflectionSet& reflections,
                               const GroupElement& c) {
  Reader in(text);
  in.expect(kCacheMagic);
  if (in.integer() != kCacheVersion) throw LatticeError("interval cache: unsupported version");
  in.expect("group");
  if (in.word() != spec.name) throw LatticeError("interval cache: group mismatch");
  in.expect("data-hash");
  if (in.word() != spec.data_hash) throw LatticeError("interval cache: data hash mismatch");
  in.expect("rank");
  Interval I;
  I.rank_ = static_cast<int>(in.integer());
  if (I.rank_ != spec.rank) throw LatticeError("interval cache: rank mismatch");
  in.expect("size");
  const long size = in.integer();
  if (size < 2) throw LatticeError("interval cache: bad size");
  const auto N = static_cast<std::size_t>(size);
  const auto index = [&](long v) {
    if (v < 0 || static_cast<std::size_t>(v) >= N) throw LatticeError("interval cache: index out of range");
    return static_cast<Index>(v);
  };
  I.elements_.reserve(N);
  for (std::size_t i = 0; i < N; ++i) {
    in.expect("element");
    if (static_cast<std::size_t>(in.integer()) != i) throw LatticeError("interval cache: elements out of order");
    const int rank = static_cast<int>(in.integer());
    CycMatrix m(spec.rank, spec.rank);
    for (Eigen::Index r = 0; r < spec.rank; ++r) {
      for (Eigen::Index col = 0; col < spec.rank; ++col) {
        try {
          m(r, col) = Cyclotomic::parse(in.word(), spec.conductor);
        } catch (const CyclotomicError& err) {
          throw LatticeError(std::string("interval cache: ") + err.what());
        }
      }
    }
    if (!I.index_.emplace(m, static_cast<Index>(i)).second) throw LatticeError("interval cache: duplicate element");
    I.elements_.emplace_back(std::move(m), rank);
    I.ranks_.push_back(rank);
  }
  if (!(I.elements_.back() == c)) throw LatticeError("interval cache: top element differs from c");
  I.below_.assign(N, {});
  for (std::size_t i = 0; i < N; ++i) {
    in.expect("covers");
    if (static_cast<std::size_t>(in.integer()) != i) throw LatticeError("interval cache: covers out of order");
    const long count = in.integer();
    for (long k = 0; k < count; ++k) {
      const Index lower = index(in.integer());
      const long r = in.integer();
      if (r < 0 || static_cast<std::size_t>(r) >= reflections.size()) {
        throw LatticeError("interval cache: reflection index out of range");
      }
      if (lower >= i) throw LatticeError("interval cache: cover not in index order");
      I.below_[i].push_back({lower, static_cast<std::uint32_t>(r)});
    }
  }
  in.expect("kreweras");
  I.kreweras_.resize(N);
  std::vector<bool> hit(N, false);
  for (std::size_t i = 0; i < N; ++i) {
    I.kreweras_[i] = index(in.integer());
    if (hit[I.kreweras_[i]]) throw LatticeError("interval cache: Kreweras map is not a bijection");
    hit[I.kreweras_[i]] = true;
  }
  in.expect("end");
  I.finish(reflections);
  return I;
}

std::filesystem::path interval_cache_path(const GroupSpec& spec, const std::filesystem::path& cache_dir) {
  return cache_dir / (file_stem(spec.name) + "-" + spec.data_hash + ".interval");
}

Interval load_or_build_interval(const GroupSpec& spec, const ReflectionSet& reflections, const GroupElement& c,
                                const std::filesystem::path& cache_dir) {
  if (cache_dir.empty()) return Interval::build(spec, reflections, c);
  const auto path = interval_cache_path(spec, cache_dir);
  if (std::ifstream in{path, std::ios::binary}) {
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
      return Interval::deserialize(ss.str(), spec, reflections, c);
    } catch (const LatticeError&) {
      // stale or damaged cache: rebuild and overwrite
    }
  }
  Interval I = Interval::build(spec, reflections, c);
  std::error_code ec;
  std::filesystem::create_directories(cache_dir, ec);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << I.serialize(spec);
    if (!out) return I;
  }
  std::filesystem::rename(tmp, path, ec);
  return I;
}

}  // namespace dualbraid

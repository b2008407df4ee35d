#include "dualbraid/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <regex>
#include <sstream>

#include "dualbraid/group.hpp"

#ifndef DUALBRAID_DEFAULT_DATA_DIR
#define DUALBRAID_DEFAULT_DATA_DIR "data/groups"
#endif

namespace dualbraid {

namespace {

constexpr std::string_view kFileMagic = "dualbraid-generators";
constexpr int kFileVersion = 1;

std::vector<BigInt> poly(std::initializer_list<long> coeffs) {
  std::vector<BigInt> out;
  for (long c : coeffs) out.emplace_back(c);
  return out;
}

// Exceptional name -> (file stem, alias)
const std::map<std::string, std::pair<std::string, std::string>, std::less<>>& exceptional_index() {
  static const std::map<std::string, std::pair<std::string, std::string>, std::less<>> index = {
      {"G23", {"G23", "H3"}}, {"H3", {"G23", "H3"}},  {"G24", {"G24", ""}},   {"G27", {"G27", ""}},
      {"G28", {"G28", "F4"}}, {"F4", {"G28", "F4"}},  {"G29", {"G29", ""}},   {"G30", {"G30", "H4"}},
      {"H4", {"G30", "H4"}},  {"G33", {"G33", ""}},   {"G34", {"G34", ""}},   {"G35", {"G35", "E6"}},
      {"E6", {"G35", "E6"}},  {"G36", {"G36", "E7"}}, {"E7", {"G36", "E7"}},  {"G37", {"G37", "E8"}},
      {"E8", {"G37", "E8"}},
  };
  return index;
}

CycMatrix permutation_matrix(int n, int i, int j) {
  CycMatrix m = identity<Cyclotomic>(n);
  m(i, i) = Cyclotomic(0L);
  m(j, j) = Cyclotomic(0L);
  m(i, j) = Cyclotomic(1L);
  m(j, i) = Cyclotomic(1L);
  return m;
}

// Matrices of the generators on the span of their moved spaces.
std::vector<CycMatrix> restrict_to_moved_space(const std::vector<CycMatrix>& generators) {
  const Eigen::Index n = generators.front().rows();
  std::vector<CycVector> roots;
  for (const auto& g : generators) {
    const CycMatrix moved = g - identity<Cyclotomic>(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      bool all_zero = true;
      for (Eigen::Index i = 0; i < n; ++i) all_zero = all_zero && moved(i, j).is_zero();
      if (all_zero) continue;
      roots.push_back(moved.col(j));
      break;
    }
  }
  const auto r = static_cast<Eigen::Index>(roots.size());
  CycMatrix basis(n, r);
  for (Eigen::Index k = 0; k < r; ++k) basis.col(k) = roots[static_cast<std::size_t>(k)];
  std::vector<CycMatrix> restricted;
  for (const auto& g : generators) {
    CycMatrix augmented(n, 2 * r);
    augmented.leftCols(r) = basis;
    augmented.rightCols(r) = multiply(g, basis);
    const auto ech = row_echelon(augmented);
    restricted.push_back(ech.reduced.topRightCorner(r, r));
  }
  return restricted;
}

void finish_family(GroupSpec& spec) {
  const int h = spec.degrees.back();
  spec.codegrees.clear();
  for (auto it = spec.degrees.begin(); it != spec.degrees.end(); ++it) spec.codegrees.push_back(h - *it);
  spec.data_hash = fnv1a_hex(format_generator_file(spec));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CatalogError("cannot read generator file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::vector<int> parse_ints(const std::vector<std::string>& tokens, std::size_t from, const std::string& where) {
  std::vector<int> out;
  for (std::size_t i = from; i < tokens.size(); ++i) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tokens[i], &used));
      if (used != tokens[i].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw CatalogError(where + ": expected an integer, got '" + tokens[i] + "'");
    }
  }
  return out;
}

}  // namespace

BigInt GroupSpec::order() const {
  BigInt product = 1;
  for (int d : degrees) product *= d;
  return product;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream ss;
  ss << std::hex;
  ss.width(16);
  ss.fill('0');
  ss << h;
  return ss.str();
}

const std::vector<ReferenceRow>& reference_table() {
  static const std::vector<ReferenceRow> rows = {
      {"G23", {2, 6, 10}, 15, 32, poly({1, 15, 15, 1}), 50},
      {"G24", {4, 6, 14}, 21, 30, poly({1, 14, 14, 1}), 49},
      {"G27", {6, 12, 30}, 45, 42, poly({1, 20, 20, 1}), 75},
      {"G28", {2, 6, 8, 12}, 24, 105, poly({1, 24, 55, 24, 1}), 432},
      {"G29", {4, 8, 12, 20}, 40, 112, poly({1, 25, 60, 25, 1}), 500},
      {"G30", {2, 12, 20, 30}, 60, 280, poly({1, 60, 158, 60, 1}), 1350},
      {"G33", {4, 6, 10, 12, 18}, 45, 308, poly({1, 30, 123, 123, 30, 1}), 4374},
      {"G34", {6, 12, 18, 24, 30, 42}, 126, 1584, poly({1, 56, 385, 700, 385, 56, 1}), 100842},
      {"G35", {2, 5, 6, 8, 9, 12}, 36, 833, poly({1, 36, 204, 351, 204, 36, 1}), 41472},
      {"G36", {2, 6, 8, 10, 12, 14, 18}, 63, 4160, poly({1, 63, 546, 1470, 1470, 546, 63, 1}), 1062882},
      {"G37", {2, 8, 12, 14, 18, 20, 24, 30}, 120, 25080, poly({1, 120, 1540, 6120, 9518, 6120, 1540, 120, 1}),
       37968750},
  };
  return rows;
}

std::optional<ReferenceRow> reference_row(std::string_view name) {
  const auto& index = exceptional_index();
  auto it = index.find(name);
  const std::string stem = it == index.end() ? std::string(name) : it->second.first;
  for (const auto& row : reference_table())
    if (row.name == stem) return row;
  return std::nullopt;
}

GroupSpec build_monomial_group(MonomialKind kind, int parameter, int n) {
  if (n < 2) throw CatalogError("monomial groups need n >= 2");
  GroupSpec spec;
  if (kind == MonomialKind::Full) {
    const int d = parameter;
    if (d < 1) throw CatalogError("G(d,1,n) needs d >= 1");
    spec.name = "G(" + std::to_string(d) + ",1," + std::to_string(n) + ")";
    spec.conductor = d <= 2 ? 1 : d;
    std::vector<CycMatrix> gens;
    if (d > 1) {
      CycMatrix rho = identity<Cyclotomic>(n);
      rho(0, 0) = d == 2 ? Cyclotomic(-1L) : Cyclotomic::zeta(d);
      gens.push_back(rho);
    }
    for (int i = 0; i + 1 < n; ++i) gens.push_back(permutation_matrix(n, i, i + 1));
    if (d == 1) {
      spec.generators = restrict_to_moved_space(gens);
      spec.rank = n - 1;
      for (int k = 2; k <= n; ++k) spec.degrees.push_back(k);
      spec.alias = "A" + std::to_string(n - 1);
    } else {
      spec.generators = std::move(gens);
      spec.rank = n;
      for (int k = 1; k <= n; ++k) spec.degrees.push_back(k * d);
      if (d == 2) spec.alias = "B" + std::to_string(n);
    }
    spec.expected_reflections = d == 1 ? static_cast<std::size_t>(n * (n - 1) / 2)
                                       : static_cast<std::size_t>(d * n * (n - 1) / 2 + n * (d - 1));
  } else {
    const int e = parameter;
    if (e < 2) throw CatalogError("G(e,e,n) needs e >= 2 (use G(1,1,n) for the symmetric group)");
    if (e == 2 && n == 2) throw CatalogError("G(2,2,2) is reducible");
    spec.name = "G(" + std::to_string(e) + "," + std::to_string(e) + "," + std::to_string(n) + ")";
    spec.conductor = e <= 2 ? 1 : e;
    CycMatrix twisted = CycMatrix::Constant(n, n, Cyclotomic(0L));
    for (int i = 2; i < n; ++i) twisted(i, i) = Cyclotomic(1L);
    const Cyclotomic z = e == 2 ? Cyclotomic(-1L) : Cyclotomic::zeta(e);
    twisted(1, 0) = z;
    twisted(0, 1) = z.inverse();
    spec.generators.push_back(twisted);
    for (int i = 0; i + 1 < n; ++i) spec.generators.push_back(permutation_matrix(n, i, i + 1));
    spec.rank = n;
    for (int k = 1; k < n; ++k) spec.degrees.push_back(k * e);
    spec.degrees.push_back(n);
    std::sort(spec.degrees.begin(), spec.degrees.end());
    if (e == 2 && n >= 3) spec.alias = "D" + std::to_string(n);
    if (n == 2) spec.alias = "I2(" + std::to_string(e) + ")";
    spec.expected_reflections = static_cast<std::size_t>(e * n * (n - 1) / 2);
  }
  finish_family(spec);
  return spec;
}

const std::vector<std::string>& exceptional_names() {
  static const std::vector<std::string> names = {"G23", "G24", "G27", "G28", "G29", "G30",
                                                 "G33", "G34", "G35", "G36", "G37"};
  return names;
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("DUALBRAID_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return DUALBRAID_DEFAULT_DATA_DIR;
}

GroupSpec parse_generator_file(std::string_view contents, std::string_view source) {
  GroupSpec spec;
  std::istringstream in{std::string(contents)};
  std::string line;
  int line_no = 0;
  bool seen_magic = false;
  const auto where = [&] { return std::string(source) + ":" + std::to_string(line_no); };
  const auto next_content_line = [&](std::vector<std::string>& tokens) {
    while (std::getline(in, line)) {
      ++line_no;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      tokens = split_ws(line);
      if (!tokens.empty()) return true;
    }
    return false;
  };
  std::vector<std::string> tokens;
  while (next_content_line(tokens)) {
    const std::string& key = tokens[0];
    if (!seen_magic) {
      if (key != kFileMagic || tokens.size() != 2) throw CatalogError(where() + ": missing '" + std::string(kFileMagic) + " <version>' header");
      if (parse_ints(tokens, 1, where()).front() != kFileVersion) throw CatalogError(where() + ": unsupported format version " + tokens[1]);
      seen_magic = true;
    } else if (key == "name" && tokens.size() == 2) {
      spec.name = tokens[1];
    } else if (key == "alias" && tokens.size() == 2) {
      spec.alias = tokens[1];
    } else if (key == "conductor" && tokens.size() == 2) {
      spec.conductor = parse_ints(tokens, 1, where()).front();
      if (spec.conductor < 1) throw CatalogError(where() + ": conductor must be positive");
    } else if (key == "rank" && tokens.size() == 2) {
      spec.rank = parse_ints(tokens, 1, where()).front();
      if (spec.rank < 1) throw CatalogError(where() + ": rank must be positive");
    } else if (key == "degrees") {
      spec.degrees = parse_ints(tokens, 1, where());
    } else if (key == "codegrees") {
      spec.codegrees = parse_ints(tokens, 1, where());
    } else if (key == "reflections" && tokens.size() == 2) {
      spec.expected_reflections = static_cast<std::size_t>(parse_ints(tokens, 1, where()).front());
    } else if (key == "generator") {
      if (spec.rank < 1) throw CatalogError(where() + ": 'rank' must precede generators");
      CycMatrix g(spec.rank, spec.rank);
      for (int r = 0; r < spec.rank; ++r) {
        if (!next_content_line(tokens)) throw CatalogError(where() + ": truncated generator");
        if (static_cast<int>(tokens.size()) != spec.rank) {
          throw CatalogError(where() + ": expected " + std::to_string(spec.rank) + " entries, got " + std::to_string(tokens.size()));
        }
        for (int c = 0; c < spec.rank; ++c) {
          try {
            g(r, c) = Cyclotomic::parse(tokens[static_cast<std::size_t>(c)], spec.conductor);
          } catch (const CyclotomicError& err) {
            throw CatalogError(where() + ": " + err.what());
          }
        }
      }
      spec.generators.push_back(std::move(g));
    } else {
      throw CatalogError(where() + ": unrecognised record '" + key + "'");
    }
  }
  if (!seen_magic) throw CatalogError(std::string(source) + ": empty generator file");
  if (spec.name.empty()) throw CatalogError(std::string(source) + ": missing name");
  if (static_cast<int>(spec.degrees.size()) != spec.rank || static_cast<int>(spec.codegrees.size()) != spec.rank) {
    throw CatalogError(std::string(source) + ": need exactly rank degrees and codegrees");
  }
  if (static_cast<int>(spec.generators.size()) != spec.rank) {
    throw CatalogError(std::string(source) + ": need exactly rank generators");
  }
  return spec;
}

std::string format_generator_file(const GroupSpec& spec) {
  std::ostringstream out;
  out << kFileMagic << ' ' << kFileVersion << '\n';
  out << "name " << spec.name << '\n';
  if (!spec.alias.empty()) out << "alias " << spec.alias << '\n';
  out << "conductor " << spec.conductor << '\n';
  out << "rank " << spec.rank << '\n';
  out << "degrees";
  for (int d : spec.degrees) out << ' ' << d;
  out << "\ncodegrees";
  for (int d : spec.codegrees) out << ' ' << d;
  out << '\n';
  if (spec.expected_reflections != 0) out << "reflections " << spec.expected_reflections << '\n';
  for (std::size_t k = 0; k < spec.generators.size(); ++k) {
    out << "generator " << k + 1 << '\n';
    const auto& g = spec.generators[k];
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
      for (Eigen::Index c = 0; c < g.cols(); ++c) out << (c ? " " : "") << g(r, c).to_string();
      out << '\n';
    }
  }
  return out.str();
}

void validate(const GroupSpec& spec) {
  const auto fail = [&](const std::string& check) { throw CatalogError(spec.name + ": validation failed: " + check); };
  if (static_cast<int>(spec.generators.size()) != spec.rank) fail("number of generators differs from rank");
  for (std::size_t k = 0; k < spec.generators.size(); ++k) {
    const auto& g = spec.generators[k];
    if (g.rows() != spec.rank || g.cols() != spec.rank) fail("generator " + std::to_string(k + 1) + " has wrong shape");
    if (codim(g) != 1) fail("generator " + std::to_string(k + 1) + " is not a reflection");
  }
  if (!std::is_sorted(spec.degrees.begin(), spec.degrees.end())) fail("degrees not ascending");
  if (!std::is_sorted(spec.codegrees.rbegin(), spec.codegrees.rend())) fail("codegrees not descending");
  if (spec.codegrees.back() != 0) fail("last codegree is not 0");
  const int h = spec.coxeter_number();
  for (std::size_t i = 0; i < spec.degrees.size(); ++i) {
    if (spec.degrees[i] + spec.codegrees[i] != h) fail("degree/codegree duality d_i + d_i^* = h");
  }
  const ReflectionSet reflections = reflection_closure(spec);
  if (spec.expected_reflections != 0 && reflections.size() != spec.expected_reflections) {
    fail("reflection count " + std::to_string(reflections.size()) + " != " + std::to_string(spec.expected_reflections));
  }
  CoxeterElement c;
  try {
    c = find_coxeter_element(spec, reflections);
  } catch (const CoxeterSearchFailure& err) {
    fail(std::string("Coxeter element: ") + err.what());
  }
  if (!has_coxeter_spectrum(spec, c.element.matrix())) fail("Coxeter spectrum differs from {zeta_h^(1-d_i)}");
}

GroupSpec load_exceptional(std::string_view name, const std::filesystem::path& data_dir) {
  const auto& index = exceptional_index();
  auto it = index.find(name);
  if (it == index.end()) throw CatalogError("unknown exceptional group '" + std::string(name) + "'");
  const auto path = data_dir / (it->second.first + ".gens");
  const std::string bytes = read_file(path);
  GroupSpec spec = parse_generator_file(bytes, path.string());
  spec.data_hash = fnv1a_hex(bytes);
  if (spec.name != it->second.first) throw CatalogError(path.string() + ": file names group " + spec.name);
  if (spec.alias.empty()) spec.alias = it->second.second;
  const auto row = reference_row(spec.name);
  if (row) {
    if (row->degrees != spec.degrees) throw CatalogError(spec.name + ": validation failed: degrees differ from the reference table");
    if (row->reflections != spec.expected_reflections) {
      throw CatalogError(spec.name + ": validation failed: declared reflection count differs from the reference table");
    }
  }
  validate(spec);
  return spec;
}

GroupSpec resolve_group(std::string_view selector, const std::filesystem::path& data_dir) {
  const std::string s(selector);
  if (exceptional_index().count(s) != 0) return load_exceptional(s, data_dir);
  std::smatch m;
  static const std::regex family(R"(G\((\d+),(\d+),(\d+)\))");
  static const std::regex letter(R"(([SABD])(\d+))");
  static const std::regex dihedral(R"(I2\((\d+)\))");
  GroupSpec spec;
  if (std::regex_match(s, m, family)) {
    const int a = std::stoi(m[1]), b = std::stoi(m[2]), n = std::stoi(m[3]);
    if (b == 1) {
      spec = build_monomial_group(MonomialKind::Full, a, n);
    } else if (a == b) {
      spec = build_monomial_group(MonomialKind::Equal, a, n);
    } else {
      throw CatalogError("G(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(n) +
                         ") is not in the supported well-generated families");
    }
  } else if (std::regex_match(s, m, letter)) {
    const int n = std::stoi(m[2]);
    switch (m[1].str()[0]) {
      case 'S': spec = build_monomial_group(MonomialKind::Full, 1, n); break;
      case 'A': spec = build_monomial_group(MonomialKind::Full, 1, n + 1); break;
      case 'B': spec = build_monomial_group(MonomialKind::Full, 2, n); break;
      default:
        if (n < 3) throw CatalogError("D_n needs n >= 3");
        spec = build_monomial_group(MonomialKind::Equal, 2, n);
    }
  } else if (std::regex_match(s, m, dihedral)) {
    spec = build_monomial_group(MonomialKind::Equal, std::stoi(m[1]), 2);
  } else {
    throw CatalogError("unknown group '" + s + "'");
  }
  validate(spec);
  return spec;
}

std::vector<int> relative_degrees(const GroupSpec& spec, int d) {
  std::vector<int> out;
  for (int deg : spec.degrees)
    if (deg % d == 0) out.push_back(deg);
  return out;
}

}  // namespace dualbraid

// dualbraid: command-line front end. Exit status 0 on success or agreement,
// 1 on a mathematical mismatch, 2 on usage or data errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dualbraid/divided.hpp"
#include "dualbraid/garside.hpp"
#include "dualbraid/hurwitz.hpp"
#include "dualbraid/version.hpp"

using namespace dualbraid;
using Json = nlohmann::ordered_json;

namespace {

enum class Format { Json, Text, Csv };

struct Options {
  Format format = Format::Json;
  std::string cache_dir;
  bool no_cache = false;
  std::string data_dir;
  unsigned threads = 1;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::filesystem::path cache_directory(const Options& opt) {
  if (opt.no_cache) return {};
  if (!opt.cache_dir.empty()) return opt.cache_dir;
  if (const char* env = std::getenv("DUALBRAID_CACHE_DIR"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "dualbraid";
  if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "dualbraid";
  return {};
}

std::filesystem::path data_directory(const Options& opt) {
  return opt.data_dir.empty() ? default_data_dir() : std::filesystem::path(opt.data_dir);
}

struct Loaded {
  GroupSpec spec;
  ReflectionSet reflections;
  CoxeterElement coxeter;
  std::unique_ptr<Interval> interval;
};

Loaded load(const std::string& selector, const Options& opt, bool with_interval) {
  Loaded g;
  g.spec = resolve_group(selector, data_directory(opt));
  g.reflections = reflection_closure(g.spec);
  g.coxeter = find_coxeter_element(g.spec, g.reflections);
  if (!g.coxeter.from_generators) {
    std::cerr << "note: " << g.spec.name << ": product of the generators is not a Coxeter element; using a search result\n";
  }
  if (with_interval) {
    g.interval = std::make_unique<Interval>(
        load_or_build_interval(g.spec, g.reflections, g.coxeter.element, cache_directory(opt)));
  }
  return g;
}

Json header(const GroupSpec& spec, const char* command) {
  Json j;
  j["version"] = kVersion;
  j["command"] = command;
  j["group"] = spec.name;
  if (!spec.alias.empty()) j["alias"] = spec.alias;
  j["data_hash"] = spec.data_hash;
  return j;
}

Json big(const BigInt& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

Json big_list(const std::vector<BigInt>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(big(x));
  return out;
}

std::string poly_text(const std::vector<BigInt>& c) {
  std::string s;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    if (!s.empty()) s += " + ";
    const bool unit = c[k] == 1 && k > 0;
    s += unit ? "" : c[k].get_str();
    if (k >= 1) s += "t";
    if (k >= 2) s += "^" + std::to_string(k);
  }
  return s.empty() ? "0" : s;
}

void emit_text(const Json& j, std::ostream& out) {
  for (const auto& [key, value] : j.items()) {
    out << key << ": ";
    if (value.is_string()) {
      out << value.get<std::string>();
    } else {
      out << value.dump();
    }
    out << '\n';
  }
}

void emit(const Json& j, const Options& opt) {
  if (opt.format == Format::Text) {
    emit_text(j, std::cout);
  } else {
    std::cout << j.dump(2) << '\n';
  }
}

// group-info ---------------------------------------------------------------

int cmd_group_info(const std::string& selector, const Options& opt) {
  if (selector == "G31-rel") {
    // Centraliser of a 4-regular element of E8, described by its relative degrees.
    const GroupSpec e8 = resolve_group("E8", data_directory(opt));
    const int d = 4;
    if (!is_regular_number(e8, d)) throw std::logic_error("4 is not regular for E8");
    const auto degrees = relative_degrees(e8, d);
    BigInt order = 1;
    for (int x : degrees) order *= x;
    Json j;
    j["version"] = kVersion;
    j["command"] = "group-info";
    j["group"] = "G31-rel";
    j["derived_from"] = e8.name;
    j["data_hash"] = e8.data_hash;
    j["d"] = d;
    j["rank"] = degrees.size();
    j["degrees"] = degrees;
    j["order"] = big(order);
    if (opt.format == Format::Csv) throw UsageError("CSV output is only available for table2");
    emit(j, opt);
    return 0;
  }
  const Loaded g = load(selector, opt, false);
  const auto& s = g.spec;
  Json j = header(s, "group-info");
  j["rank"] = s.rank;
  j["conductor"] = s.conductor;
  j["degrees"] = s.degrees;
  j["codegrees"] = s.codegrees;
  j["h"] = s.coxeter_number();
  j["h_prime"] = center_exponent(s);
  j["order"] = big(s.order());
  j["reflections"] = g.reflections.size();
  j["regular_numbers"] = regular_numbers(s);
  j["coxeter_from_generators"] = g.coxeter.from_generators;
  if (opt.format == Format::Csv) throw UsageError("CSV output is only available for table2");
  emit(j, opt);
  return 0;
}

// table2 -------------------------------------------------------------------

struct Row {
  std::string group;
  std::string field;
  std::string computed;
  std::string expected;
  bool match;
};

int cmd_table2(std::vector<std::string> groups, bool all, const std::string& skip, bool orbits, std::uint64_t cap,
               const Options& opt) {
  std::set<std::string> skipped;
  {
    std::stringstream ss(skip);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (!tok.empty()) skipped.insert(tok);
    }
  }
  if (all) groups = exceptional_names();
  if (groups.empty()) throw UsageError("table2 needs a group or --all");
  const auto is_skipped = [&](const GroupSpec& s, const std::string& suffix) {
    return skipped.count(s.name + suffix) || (!s.alias.empty() && skipped.count(s.alias + suffix));
  };

  std::vector<Row> rows;
  Json reports = Json::array();
  bool mismatch = false;
  for (const auto& sel : groups) {
    GroupSpec probe = resolve_group(sel, data_directory(opt));
    if (is_skipped(probe, "")) continue;
    const auto ref = reference_row(probe.name);
    if (!ref) throw UsageError(probe.name + " has no reference row");
    const Loaded g = load(sel, opt, true);
    const Interval& I = *g.interval;
    Json r = header(g.spec, "table2");
    std::vector<Row> local;
    const auto add = [&](const std::string& field, const std::string& computed, const std::string& expected) {
      local.push_back({g.spec.name, field, computed, expected, computed == expected});
    };
    add("reflections", std::to_string(g.reflections.size()), std::to_string(ref->reflections));
    add("catalan", std::to_string(I.size()), ref->catalan.get_str());
    add("poincare", poly_text(I.rank_polynomial()), poly_text(ref->poincare));
    add("maximal_chains", maximal_chain_dp(I).get_str(), ref->maximal_chains.get_str());
    r["reflections"] = g.reflections.size();
    r["catalan"] = I.size();
    r["poincare"] = big_list(I.rank_polynomial());
    r["maximal_chains"] = big(maximal_chain_dp(I));
    if (orbits && ref->maximal_chains <= cap && !is_skipped(g.spec, "-orbit")) {
      const ConjugationTable table(g.reflections);
      const auto stats = hurwitz_orbit(table, reduced_decompositions_seed(I), cap);
      add("hurwitz_orbit", std::to_string(stats.size), ref->maximal_chains.get_str());
      r["hurwitz_orbit"] = stats.size;
    }
    Json diffs = Json::array();
    for (const auto& row : local) {
      if (!row.match) {
        diffs.push_back({{"field", row.field}, {"computed", row.computed}, {"expected", row.expected}});
        mismatch = true;
      }
    }
    r["match"] = diffs.empty();
    r["diffs"] = diffs;
    reports.push_back(r);
    rows.insert(rows.end(), local.begin(), local.end());
  }

  if (opt.format == Format::Csv) {
    std::cout << "group,field,computed,expected,match\n";
    for (const auto& row : rows) {
      std::cout << row.group << ',' << row.field << ",\"" << row.computed << "\",\"" << row.expected << "\","
                << (row.match ? "true" : "false") << '\n';
    }
  } else if (opt.format == Format::Text) {
    for (const auto& row : rows) {
      std::cout << row.group << ' ' << row.field << ": " << row.computed;
      if (!row.match) std::cout << "  (expected " << row.expected << ")";
      std::cout << '\n';
    }
    std::cout << (mismatch ? "MISMATCH\n" : "all values match\n");
  } else {
    Json j;
    j["version"] = kVersion;
    j["command"] = "table2";
    j["groups"] = reports;
    j["match"] = !mismatch;
    std::cout << j.dump(2) << '\n';
  }
  return mismatch ? 1 : 0;
}

// nf -----------------------------------------------------------------------

int cmd_nf(const std::string& selector, const std::string& word, const Options& opt) {
  if (opt.format == Format::Csv) throw UsageError("CSV output is only available for table2");
  const Loaded g = load(selector, opt, true);
  const DualMonoid monoid(*g.interval, g.reflections);
  const MonoidElement a = monoid.parse_word(word);
  const std::string rendered = monoid.render(a);
  if (opt.format == Format::Text) {
    std::cout << rendered << '\n';
    return 0;
  }
  Json j = header(g.spec, "nf");
  j["word"] = word;
  j["normal_form"] = rendered;
  j["delta_power"] = a.delta_power;
  Json factors = Json::array();
  for (auto f : a.factors) factors.push_back(monoid.spell(f));
  j["factors"] = factors;
  if (a.delta_power >= 0) j["length"] = monoid.length(a);
  std::cout << j.dump(2) << '\n';
  return 0;
}

// sieve / roots ------------------------------------------------------------

int cmd_sieve(const std::string& selector, int d, int N, const Options& opt) {
  if (opt.format == Format::Csv) throw UsageError("CSV output is only available for table2");
  if (d < 1 || N < 1) throw UsageError("--d and --N must be positive");
  const Loaded g = load(selector, opt, true);
  const auto tp = twist_parameters(g.spec, d, N);
  const BigInt fixed = count_fixed_objects(g.spec, *g.interval, d, N);
  const SievingEvaluation q = q_evaluate_sieving(g.spec, d, N);
  const bool agree = q.integer && *q.integer == fixed;
  const bool regular = is_regular_number(g.spec, d);
  Json j = header(g.spec, "sieve");
  j["d"] = d;
  j["N"] = N;
  j["regular"] = regular;
  j["d_prime"] = tp.d_prime;
  j["h_prime"] = tp.h_prime;
  j["parts"] = tp.parts;
  j["twist_power"] = tp.power;
  j["fixed"] = big(fixed);
  j["q_balanced"] = q.balanced;
  if (q.integer) {
    j["q_value"] = big(*q.integer);
  } else if (q.value) {
    j["q_value"] = q.value->to_string();
  } else {
    j["q_value"] = nullptr;
  }
  if (!q.failure.empty()) j["q_note"] = q.failure;
  j["agree"] = agree;
  // Agreement is only expected for regular d; a disagreement there is a finding, not an error.
  j["finding"] = regular && !agree;
  emit(j, opt);
  return 0;
}

int cmd_roots(const std::string& selector, int d, const Options& opt) {
  if (opt.format == Format::Csv) throw UsageError("CSV output is only available for table2");
  if (d < 1) throw UsageError("--d must be positive");
  const Loaded g = load(selector, opt, true);
  const bool regular = is_regular_number(g.spec, d);
  const bool roots = has_dth_root_of_tau(g.spec, *g.interval, d);
  Json j = header(g.spec, "roots");
  j["d"] = d;
  j["regular"] = regular;
  j["roots_exist"] = roots;
  j["fixed_objects"] = big(count_fixed_objects(g.spec, *g.interval, d, 1));
  j["agree"] = regular == roots;
  emit(j, opt);
  return 0;
}

// hurwitz ------------------------------------------------------------------

int cmd_hurwitz(const std::string& selector, std::uint64_t cap, const std::string& dump, const Options& opt) {
  if (opt.format == Format::Csv) throw UsageError("CSV output is only available for table2");
  const Loaded g = load(selector, opt, true);
  const ConjugationTable table(g.reflections);
  const auto seed = reduced_decompositions_seed(*g.interval);
  std::ofstream dump_file;
  if (!dump.empty()) {
    dump_file.open(dump);
    if (!dump_file) throw UsageError("cannot write " + dump);
  }
  const OrbitStats stats = hurwitz_orbit(table, seed, cap, dump.empty() ? nullptr : &dump_file);
  const BigInt formula = maximal_chain_formula(g.spec);
  const bool transitive = stats.complete && BigInt(static_cast<unsigned long>(stats.size)) == formula;
  Json j = header(g.spec, "hurwitz");
  Json seed_json = Json::array();
  for (auto r : seed) seed_json.push_back(r);
  j["seed"] = seed_json;
  j["orbit"] = stats.size;
  j["formula"] = big(formula);
  j["complete"] = stats.complete;
  j["partial"] = !stats.complete;
  j["transitive"] = transitive;
  emit(j, opt);
  return stats.complete && !transitive ? 1 : 0;
}

// verify -------------------------------------------------------------------

int cmd_verify(const std::string& selector, std::uint64_t samples, const Options& opt) {
  if (opt.format == Format::Csv) throw UsageError("CSV output is only available for table2");
  const Loaded g = load(selector, opt, true);
  const Interval& I = *g.interval;
  Json j = header(g.spec, "verify");
  bool ok = true;
  const bool exhaustive = I.size() <= 1600;
  const LatticeCheck lattice =
      exhaustive ? check_lattice_exhaustive(I, opt.threads) : check_lattice_sampled(I, samples, 1, opt.threads);
  j["lattice"] = {{"mode", exhaustive ? "exhaustive" : "sampled"},
                  {"pairs", lattice.pairs_checked},
                  {"failures", lattice.failures}};
  ok = ok && lattice.failures == 0;
  const CenterCheck center = check_center(g.spec, I);
  j["center"] = {{"h_prime", center.expected},
                 {"least_power_fixing_simples", center.minimal_power},
                 {"central_in_group", center.central_in_group}};
  ok = ok && center.ok();
  const auto powers = powers_of_c_in_interval(I);
  j["powers_of_c_in_interval"] = powers;
  ok = ok && powers == std::vector<int>{0, 1};
  Json chains = Json::array();
  for (int N = 1; N <= 4; ++N) {
    const BigInt dp = weak_chain_dp(I, N), formula = chapoton_number(g.spec, N);
    chains.push_back({{"N", N}, {"dp", big(dp)}, {"formula", big(formula)}});
    ok = ok && dp == formula;
  }
  j["weak_chains"] = chains;
  const BigInt maximal = maximal_chain_dp(I);
  j["maximal_chains"] = {{"dp", big(maximal)}, {"formula", big(maximal_chain_formula(g.spec))}};
  ok = ok && maximal == maximal_chain_formula(g.spec);
  auto poly = I.rank_polynomial();
  const bool palindromic = std::equal(poly.begin(), poly.end(), poly.rbegin());
  j["palindromic"] = palindromic;
  ok = ok && palindromic;
  j["ok"] = ok;
  emit(j, opt);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual braid monoids and noncrossing partition lattices of well-generated reflection groups"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  std::string format = "json";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text", "csv"}));
  app.add_option("--cache-dir", opt.cache_dir, "Interval cache directory (default $DUALBRAID_CACHE_DIR, then ~/.cache/dualbraid)");
  app.add_flag("--no-cache", opt.no_cache, "Do not read or write interval caches");
  app.add_option("--data-dir", opt.data_dir, "Directory of exceptional generator files");
  app.add_option("--threads", opt.threads, "Worker threads for lattice checks")->check(CLI::Range(1U, 256U));

  std::string group, word, skip, dump;
  std::vector<std::string> groups;
  bool all = false, orbits = false;
  int d = 1, N = 1;
  std::uint64_t cap = 1000000, samples = 1000000;

  auto* info = app.add_subcommand("group-info", "Degrees, codegrees, reflections and regular numbers");
  info->add_option("group", group)->required();
  auto* table2 = app.add_subcommand("table2", "Compare computed invariants with the reference table");
  table2->add_option("groups", groups);
  table2->add_flag("--all", all, "Every exceptional group");
  table2->add_option("--skip", skip, "Comma-separated groups to skip; <G>-orbit skips only the orbit");
  table2->add_flag("--orbits", orbits, "Also enumerate Hurwitz orbits up to --cap");
  table2->add_option("--cap", cap, "Largest orbit to enumerate");
  auto* nf = app.add_subcommand("nf", "Left greedy normal form of a word");
  nf->add_option("group", group)->required();
  nf->add_option("word", word)->required();
  auto* sieve = app.add_subcommand("sieve", "Fixed objects against the q-evaluation");
  sieve->add_option("group", group)->required();
  sieve->add_option("--d", d)->required();
  sieve->add_option("--N", N);
  auto* roots = app.add_subcommand("roots", "Existence of d-th roots of the full twist");
  roots->add_option("group", group)->required();
  roots->add_option("--d", d)->required();
  auto* hurwitz = app.add_subcommand("hurwitz", "Hurwitz orbit of a reduced decomposition of c");
  hurwitz->add_option("group", group)->required();
  hurwitz->add_option("--cap", cap, "Stop after this many tuples");
  hurwitz->add_option("--dump", dump, "Write every orbit tuple to this file");
  auto* verify = app.add_subcommand("verify", "Lattice, center and chain-count checks");
  verify->add_option("group", group)->required();
  verify->add_option("--samples", samples, "Random pairs when the interval is too large for all pairs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  opt.format = format == "text" ? Format::Text : format == "csv" ? Format::Csv : Format::Json;
  if (opt.format == Format::Csv && !table2->parsed()) {
    std::cerr << "error: CSV output is only available for table2\n";
    return 2;
  }

  try {
    if (info->parsed()) return cmd_group_info(group, opt);
    if (table2->parsed()) return cmd_table2(groups, all, skip, orbits, cap, opt);
    if (nf->parsed()) return cmd_nf(group, word, opt);
    if (sieve->parsed()) return cmd_sieve(group, d, N, opt);
    if (roots->parsed()) return cmd_roots(group, d, opt);
    if (hurwitz->parsed()) return cmd_hurwitz(group, cap, dump, opt);
    if (verify->parsed()) return cmd_verify(group, samples, opt);
  } catch (const CatalogError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const WordError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const FormulaMismatch& e) {
    std::cerr << "mismatch: " << e.what() << '\n';
    return 1;
  } catch (const LatticeError& e) {
    std::cerr << "mismatch: " << e.what() << '\n';
    return 1;
  } catch (const ConsistencyError& e) {
    std::cerr << "mismatch: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dualbraid/linalg.hpp"

namespace dualbraid {

/// Bad group names, malformed or self-inconsistent generator data.
class CatalogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A well-generated irreducible reflection group given by n generating reflections.
struct GroupSpec {
  std::string name;   // "G(3,1,4)", "G24", ...
  std::string alias;  // "H3", "E8", "A2", ... (may be empty)
  int rank = 0;
  int conductor = 1;
  std::vector<CycMatrix> generators;
  std::vector<int> degrees;    // ascending
  std::vector<int> codegrees;  // descending, last is 0
  /// Expected number of reflections when known independently (0 = unknown).
  std::size_t expected_reflections = 0;
  /// FNV-1a of the generator file bytes, or of the canonical generator text for families.
  std::string data_hash;

  int coxeter_number() const { return degrees.back(); }
  /// |W| = product of the degrees.
  BigInt order() const;
  std::string display_name() const { return alias.empty() ? name : name + " (" + alias + ")"; }
};

/// Golden values for the exceptional groups.
struct ReferenceRow {
  std::string name;
  std::vector<int> degrees;
  std::size_t reflections;
  BigInt catalan;
  std::vector<BigInt> poincare;
  BigInt maximal_chains;
};

const std::vector<ReferenceRow>& reference_table();
std::optional<ReferenceRow> reference_row(std::string_view name);

enum class MonomialKind { Full /* G(d,1,n) */, Equal /* G(e,e,n) */ };

/// G(d,1,n) or G(e,e,n) by monomial generators. G(1,1,n) is returned on its
/// (n-1)-dimensional reflection representation.
GroupSpec build_monomial_group(MonomialKind kind, int parameter, int n);

/// Names accepted by load_exceptional.
const std::vector<std::string>& exceptional_names();

/// Directory of generator files: $DUALBRAID_DATA_DIR, else the build-time default.
std::filesystem::path default_data_dir();

/// Load and validate G23, G24, G27, G28, G29, G30, G33..G37 (aliases H3, F4, H4, E6, E7, E8).
GroupSpec load_exceptional(std::string_view name, const std::filesystem::path& data_dir = default_data_dir());

/// Parse a generator file without validation; `source` names the input in messages.
GroupSpec parse_generator_file(std::string_view contents, std::string_view source = "<memory>");
/// Canonical text of a GroupSpec in the generator file format.
std::string format_generator_file(const GroupSpec& spec);

/// Checks the reflection property of every generator, degree/codegree
/// duality, reflection count and Coxeter spectrum. Throws CatalogError naming
/// the first violated check.
void validate(const GroupSpec& spec);

/// Any supported selector: exceptional names and aliases, "G(d,1,n)",
/// "G(e,e,n)", "S<n>", "A<n>", "B<n>", "D<n>", "I2(<e>)".
GroupSpec resolve_group(std::string_view selector, const std::filesystem::path& data_dir = default_data_dir());

/// Degrees of the centraliser of a d-regular element: the degrees divisible by d.
std::vector<int> relative_degrees(const GroupSpec& spec, int d);

std::string fnv1a_hex(std::string_view bytes);

}  // namespace dualbraid

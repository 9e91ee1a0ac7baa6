#ifndef RELHYP_PRESENTATION_HPP_
#define RELHYP_PRESENTATION_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "relhyp/oracle.hpp"
#include "relhyp/words.hpp"

namespace relhyp {

// One peripheral subgroup H_lambda: either a verified finite multiplication
// table or an external word-problem oracle over a finite generating set.
// Element ids: finite tables use the table index (identity included, but
// H-letters never carry it); oracles intern canonical generator-words.
class Peripheral {
 public:
  enum class Kind { FiniteTable, Oracle };

  // Finite table; verifies the group axioms, throws TableNotAGroup.
  Peripheral(std::string name, std::vector<std::string> element_names,
             size_t identity_index, std::vector<std::vector<uint32_t>> table);

  // Oracle over a subprocess command.
  Peripheral(std::string name, std::vector<std::string> generator_names,
             std::vector<std::string> command);

  const std::string& name() const { return name_; }
  Kind kind() const { return kind_; }
  bool is_finite_table() const { return kind_ == Kind::FiniteTable; }

  // Finite-table only.
  size_t size() const { return element_names_.size(); }
  uint32_t identity() const { return identity_; }
  const std::vector<std::string>& element_names() const { return element_names_; }
  const std::vector<std::vector<uint32_t>>& table() const { return table_; }
  // Order of a table element (cycle length).
  size_t element_order(uint32_t e) const;

  // Common algebra on element ids (oracle multiplication may query the
  // subprocess; requests are serialized by the channel).
  uint32_t multiply(uint32_t a, uint32_t b) const;
  uint32_t inverse(uint32_t a) const;
  bool is_identity(uint32_t a) const;

  std::string element_token(uint32_t e) const;     // printable element part
  uint32_t element_from_token(const std::string& tok,
                              const std::string& where) const;

  // Oracle only.
  const std::vector<std::string>& generator_names() const { return generators_; }
  const std::vector<std::string>& command() const { return command_; }
  bool has_normal_forms() const;

 private:
  struct OracleElem {
    std::vector<std::pair<uint32_t, int>> gens;  // (generator, sign) factors
    std::string key;                             // canonical token
  };

  uint32_t intern_oracle(std::vector<std::pair<uint32_t, int>> gens) const;
  std::string oracle_word_line(const std::vector<std::pair<uint32_t, int>>&) const;

  std::string name_;
  Kind kind_;

  // finite table
  std::vector<std::string> element_names_;
  uint32_t identity_ = 0;
  std::vector<std::vector<uint32_t>> table_;
  std::vector<uint32_t> inverse_;
  std::map<std::string, uint32_t> name_index_;

  // oracle
  std::vector<std::string> generators_;
  std::vector<std::string> command_;
  mutable std::unique_ptr<OracleChannel> channel_;
  mutable std::vector<OracleElem> oracle_elems_;        // id 0 = identity
  mutable std::map<std::string, uint32_t> oracle_index_;
};

struct CertifiedConstants {
  uint64_t C = 1;       // relative isoperimetric constant, >= 1
  uint64_t Cprime = 1;  // isoperimetric constant, >= C
  uint64_t delta = 1;   // hyperbolicity constant of the relative graph, >= 1
  std::string note;     // provenance
};

// A finite relative presentation <X u H | R u Q>. Values are immutable
// after parsing/validation and safe to share across threads.
class RelativePresentation {
 public:
  RelativePresentation() = default;

  std::string name;
  std::vector<std::string> x_generators;
  std::vector<std::shared_ptr<Peripheral>> peripherals;
  std::vector<Word> relators;  // stored verbatim, not freely reduced
  std::optional<CertifiedConstants> constants;
  std::string model_path;  // optional attached finite model document

  size_t num_peripherals() const { return peripherals.size(); }
  const Peripheral& peripheral(size_t lambda) const { return *peripherals[lambda]; }

  std::optional<uint32_t> x_index(const std::string& name) const;
  std::optional<uint32_t> peripheral_index(const std::string& name) const;
};

// Omega_lambda = the set of H_lambda-letters occurring in relators,
// canonicalized by element; M = max relator length.
struct OmegaReport {
  std::vector<std::set<uint32_t>> per_peripheral;  // element ids per lambda
  size_t omega_size = 0;                           // |Omega| (union)
  size_t M = 0;

  bool omega_empty() const { return omega_size == 0; }
};

// Parses and validates a presentation document (JSON text). Multiplication
// tables are fully verified. Throws SyntaxError, TableNotAGroup,
// UnknownLetter, DuplicateName.
RelativePresentation parse_presentation(const std::string& document);
RelativePresentation load_presentation_file(const std::string& path);

// Canonical JSON serialization; parse(serialize(p)) == p up to layout.
std::string serialize_presentation(const RelativePresentation& p);

OmegaReport extract_omega(const RelativePresentation& p);

// True iff no relator, read cyclically, has two adjacent letters from the
// same peripheral.
bool is_reduced_presentation(const RelativePresentation& p);

// Advisories for the generality assumptions: peripherals outside Lambda_0,
// the Lambda = empty (hyperbolic) branch and the M < 2 (free product) branch.
std::vector<std::string> validate_generality(const RelativePresentation& p);

}  // namespace relhyp

#endif  // RELHYP_PRESENTATION_HPP_

#ifndef RELHYP_ERRORS_HPP_
#define RELHYP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace relhyp {

// Base class for all domain errors raised by the library. CLI maps these
// to exit code 1; anything else is a bug.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct SyntaxError : Error {
  std::string location;
  SyntaxError(const std::string& loc, const std::string& what)
      : Error("syntax error at " + loc + ": " + what), location(loc) {}
};

struct TableNotAGroup : Error {
  std::string peripheral;
  TableNotAGroup(const std::string& peri, const std::string& witness)
      : Error("peripheral '" + peri + "' table is not a group: " + witness),
        peripheral(peri) {}
};

struct UnknownLetter : Error {
  UnknownLetter(const std::string& where, const std::string& token)
      : Error("unknown letter '" + token + "' in " + where) {}
};

struct DuplicateName : Error {
  explicit DuplicateName(const std::string& name)
      : Error("duplicate name '" + name + "'") {}
};

struct OracleFailure : Error {
  std::string peripheral;
  OracleFailure(const std::string& peri, const std::string& what)
      : Error("oracle peripheral '" + peri + "' failed: " + what),
        peripheral(peri) {}
};

struct RelatorsPresent : Error {
  RelatorsPresent()
      : Error("free-product backend requires an empty relator set") {}
};

struct RelatorNotSatisfied : Error {
  size_t relator_index;
  RelatorNotSatisfied(size_t idx, const std::string& value)
      : Error("relator #" + std::to_string(idx) +
              " does not evaluate to the identity (got " + value + ")"),
        relator_index(idx) {}
};

struct PeripheralNotEmbedded : Error {
  size_t lambda;
  PeripheralNotEmbedded(size_t lambda_, const std::string& what)
      : Error("peripheral #" + std::to_string(lambda_ + 1) +
              " does not embed: " + what),
        lambda(lambda_) {}
};

struct NotReduced : Error {
  NotReduced() : Error("word has adjacent letters from the same peripheral") {}
};

struct NotGeodesic : Error {
  NotGeodesic(size_t len, size_t dist)
      : Error("word of length " + std::to_string(len) +
              " is not geodesic (element has relative length " +
              std::to_string(dist) + ")") {}
};

struct AlreadyDoublyReduced : Error {
  AlreadyDoublyReduced() : Error("word is already doubly Lambda-reduced") {}
};

struct NotDoublyReduced : Error {
  NotDoublyReduced() : Error("word is not doubly Lambda-reduced") {}
};

struct InfiniteOrder : Error {
  InfiniteOrder() : Error("element has infinite order on this backend") {}
};

struct NotNullHomotopic : Error {
  NotNullHomotopic() : Error("word does not represent the identity") {}
};

struct BudgetExceeded : Error {
  // Best incomplete lower bound reached before the budget ran out.
  size_t best_rel_area;
  size_t best_area;
  BudgetExceeded(size_t rel, size_t area)
      : Error("search budget exceeded (explored up to rel_area " +
              std::to_string(rel) + ", area " + std::to_string(area) + ")"),
        best_rel_area(rel), best_area(area) {}
};

struct NotComputable : Error {
  explicit NotComputable(const std::string& what) : Error(what) {}
};

struct BallUnavailable : Error {
  explicit BallUnavailable(const std::string& what)
      : Error("ball enumeration unavailable: " + what) {}
};

struct NotFound : Error {
  bool search_exhausted;
  NotFound(const std::string& what, bool exhausted)
      : Error(what), search_exhausted(exhausted) {}
};

struct ParabolicInput : Error {
  size_t lambda;
  explicit ParabolicInput(size_t lambda_)
      : Error("element lies in peripheral #" + std::to_string(lambda_ + 1)),
        lambda(lambda_) {}
};

struct ParabolicSubgroup : Error {
  ParabolicSubgroup() : Error("subgroup is parabolic") {}
};

struct PreconditionViolated : Error {
  PreconditionViolated(const std::string& which, const std::string& property)
      : Error("precondition violated: " + which + " (" + property + ")") {}
};

struct EmptyAlphabet : Error {
  // X and Omega are both empty: G is the free product of the peripherals
  // and has no finite non-parabolic subgroups.
  EmptyAlphabet() : Error("X and Omega are empty (no finite non-parabolic subgroups)") {}
};

struct OmegaMembershipFails : Error {
  explicit OmegaMembershipFails(const std::string& what)
      : Error("isolated component label is not in <Omega>: " + what) {}
};

}  // namespace relhyp

#endif  // RELHYP_ERRORS_HPP_

#ifndef RELHYP_BACKEND_HPP_
#define RELHYP_BACKEND_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relhyp/presentation.hpp"
#include "relhyp/words.hpp"

namespace relhyp {

// Backend-specific element id. Equality of handles is equality in G; every
// backend interns canonical forms, so ids are stable, hashable and ordered
// by the backend's canonical order.
using Elem = uint32_t;

struct RelLength {
  size_t value;
  bool exact;
};

class GroupBackend;

// A finite subgroup as an explicit, closed element set, sorted by id.
struct SubgroupHandle {
  const GroupBackend* backend = nullptr;
  std::vector<Elem> elements;
  // When the handle arose by conjugation, the conjugator and the source set.
  std::optional<Elem> conjugated_by;

  size_t order() const { return elements.size(); }
  bool contains(Elem g) const;
};

// Exact oracle for one concrete group carrying a relative presentation.
// Immutable after construction; queries are safe to run concurrently except
// through oracle peripherals, which serialize their channel.
class GroupBackend {
 public:
  explicit GroupBackend(std::shared_ptr<const RelativePresentation> p)
      : pres_(std::move(p)) {}
  virtual ~GroupBackend() = default;

  const RelativePresentation& presentation() const { return *pres_; }
  std::shared_ptr<const RelativePresentation> presentation_ptr() const {
    return pres_;
  }

  virtual Elem evaluate(const Word& w) const = 0;
  virtual Elem identity() const = 0;
  virtual Elem mul(Elem a, Elem b) const = 0;
  virtual Elem inv(Elem a) const = 0;

  bool is_trivial(const Word& w) const { return evaluate(w) == identity(); }

  // Parabolicity oracle for single elements: g in H_lambda?
  virtual bool membership(Elem g, uint32_t lambda) const = 0;

  // |g| in the relative Cayley graph (X-edges plus peripheral coset moves).
  virtual RelLength relative_length(Elem g) const = 0;

  // Lexicographically least geodesic word for g (letter order as in Letter).
  // Throws NotComputable when exactness is unavailable at this element.
  virtual Word geodesic_word(Elem g) const = 0;

  // All elements with |g| <= radius, in canonical order, each with its
  // lexicographically least geodesic witness. Throws BallUnavailable when
  // enumeration is infeasible.
  virtual std::vector<std::pair<Elem, Word>> ball(size_t radius) const = 0;

  // Optional capabilities (finite backends).
  virtual std::optional<std::vector<Elem>> list_elements() const {
    return std::nullopt;
  }
  virtual std::vector<SubgroupHandle> list_subgroups() const;

  // Canonical printable form.
  virtual std::string elem_repr(Elem g) const = 0;

  // Canonical order on elements (deterministic tie-breaking). Finite
  // backends use the table order; the free-product backend uses shortlex
  // on normal forms.
  virtual bool elem_less(Elem a, Elem b) const { return a < b; }

  // Letters of the (finite part of the) alphabet, in canonical order, with
  // their images. Used by ball search and DOT export.
  virtual std::vector<std::pair<Letter, Elem>> alphabet() const = 0;

 private:
  std::shared_ptr<const RelativePresentation> pres_;
};

// Backend for G = F(X) * (free product of the peripherals); requires an
// empty relator set. Handles are interned normal forms (reduced words);
// relative length is the word length of the normal form, which is exact.
std::unique_ptr<GroupBackend> freeproduct_backend(
    std::shared_ptr<const RelativePresentation> p);

// Backend over an explicit finite group model. The model is verified against
// the presentation at construction: the table is a group, every relator
// evaluates to the identity and the peripherals embed as stated.
// `model_json` is the text of a model document.
std::unique_ptr<GroupBackend> finite_backend(
    std::shared_ptr<const RelativePresentation> p, const std::string& model_json);

// Loads the presentation's attached model document.
std::unique_ptr<GroupBackend> attached_backend(
    std::shared_ptr<const RelativePresentation> p);

// Element-wise conjugate g h g^-1 over h in the subgroup.
SubgroupHandle conjugate_subgroup(const SubgroupHandle& h, Elem g);

}  // namespace relhyp

#endif  // RELHYP_BACKEND_HPP_

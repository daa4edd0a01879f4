#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "causalst/graph.hpp"
#include "causalst/intervention.hpp"
#include "causalst/rational.hpp"

namespace causalst {

/// Event in (1+1)-Minkowski space-time, units with c = 1. Light-cone
/// coordinates u = t - x and v = t + x order the causal structure:
/// p lies at or before q iff u_p <= u_q and v_p <= v_q.
struct MinkowskiPoint {
  Rational t;
  Rational x;
  Rational u() const { return t - x; }
  Rational v() const { return t + x; }
  friend bool operator==(const MinkowskiPoint&, const MinkowskiPoint&) = default;
};

enum class Order { strictly_before, equal, strictly_after, spacelike };

/// Causal comparison of two events; light-like boundaries count as ordered.
Order precedes(const MinkowskiPoint& p, const MinkowskiPoint& q);

inline bool at_or_before(Order o) { return o == Order::strictly_before || o == Order::equal; }

/// Finite partially ordered set. Built from covering relations (transitive
/// closure is computed) or a full relation matrix; reflexivity,
/// antisymmetry and transitivity are validated either way.
class FinitePoset {
 public:
  FinitePoset(std::vector<std::string> elements,
              const std::vector<std::pair<std::string, std::string>>& covers);
  static FinitePoset from_order_matrix(std::vector<std::string> elements,
                                       std::vector<std::vector<bool>> leq);

  std::size_t size() const { return elements_.size(); }
  const std::vector<std::string>& elements() const { return elements_; }
  std::uint32_t index(std::string_view element) const;
  const std::string& element(std::uint32_t i) const { return elements_.at(i); }
  bool leq(std::uint32_t a, std::uint32_t b) const { return leq_.at(a).at(b); }
  Order compare(std::uint32_t a, std::uint32_t b) const;

  /// Pairs (a, b) with a covered by b (no strictly intermediate element).
  std::vector<std::pair<std::string, std::string>> covering_pairs() const;

  friend bool operator==(const FinitePoset&, const FinitePoset&) = default;

 private:
  FinitePoset() = default;
  void validate() const;
  std::vector<std::string> elements_;
  std::vector<std::vector<bool>> leq_;
};

enum class SpaceKind { minkowski11, poset };

/// Map from node names to space-time locations, all within one space.
/// Observed nodes of the subject model are expected to be located;
/// unobserved ones may be (check_nsc reports their edges as unchecked when
/// they are not).
class Embedding {
 public:
  static Embedding minkowski(std::map<std::string, MinkowskiPoint> locations);
  static Embedding in_poset(FinitePoset poset, std::map<std::string, std::string> locations);

  SpaceKind kind() const { return kind_; }
  bool located(std::string_view node) const;
  const MinkowskiPoint& point(std::string_view node) const;
  std::uint32_t element(std::string_view node) const;
  const FinitePoset& poset() const;

  Order compare(std::string_view node_a, std::string_view node_b) const;

  const std::map<std::string, MinkowskiPoint>& minkowski_locations() const;
  const std::map<std::string, std::uint32_t>& poset_locations() const;

 private:
  SpaceKind kind_ = SpaceKind::minkowski11;
  std::map<std::string, MinkowskiPoint> points_;
  std::shared_ptr<const FinitePoset> poset_;
  std::map<std::string, std::uint32_t> elements_;
};

/// Intersection of inclusive futures. In Minkowski space an intersection
/// of future cones is again a cone, represented by its apex in light-cone
/// coordinates; in a finite poset it is an explicit up-closed subset.
class ConeRegion {
 public:
  static ConeRegion minkowski_apex(Rational u0, Rational v0);
  static ConeRegion poset_upset(std::shared_ptr<const FinitePoset> poset,
                                std::vector<bool> members);

  SpaceKind kind() const { return kind_; }
  const Rational& apex_u() const { return u0_; }
  const Rational& apex_v() const { return v0_; }
  const std::vector<bool>& members() const { return members_; }

  bool contains_point(const MinkowskiPoint& q) const;
  bool contains_element(std::uint32_t element) const;

 private:
  SpaceKind kind_ = SpaceKind::minkowski11;
  Rational u0_, v0_;
  std::shared_ptr<const FinitePoset> poset_;
  std::vector<bool> members_;
};

/// Inclusive future of one located node.
ConeRegion future_of(const Embedding& e, std::string_view node);

/// Intersection of the inclusive futures of `nodes` (all located,
/// non-empty): the region where the nodes can be accessed jointly.
ConeRegion joint_future(const Embedding& e, std::span<const std::string> nodes);

/// True iff inner is a subset of outer (same space required).
bool region_contains(const ConeRegion& outer, const ConeRegion& inner);

struct EdgeReport {
  std::string from;
  std::string to;
};

struct NscVerdict {
  bool passed = true;
  std::vector<EdgeReport> violations;  ///< edges whose target escapes the source's future
  std::vector<EdgeReport> unchecked;   ///< edges with an unlocated endpoint
};

/// No-superluminal-causation check: every edge between located nodes must
/// point at or inside the future light cone of its source.
NscVerdict check_nsc(const CausalStructure& g, const Embedding& e);

struct NssViolation {
  std::vector<std::string> source, target, do_set;
  std::string reason;
};

struct NssVerdict {
  bool passed = true;
  std::uint64_t relations_checked = 0;
  std::vector<NssViolation> violations;
};

/// No-superluminal-signalling check: every holding relation not known to be
/// reducible must satisfy joint_future(target + do_set) inside
/// joint_future(source). Reducible relations impose nothing. Throws
/// QueryError if a relation mentions an unlocated node.
NssVerdict check_nss(std::span<const AffectsRelation> relations, const Embedding& e);

}  // namespace causalst

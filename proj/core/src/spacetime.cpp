#include "causalst/spacetime.hpp"

#include <algorithm>

namespace causalst {

Order precedes(const MinkowskiPoint& p, const MinkowskiPoint& q) {
  if (p == q) return Order::equal;
  if (p.u() <= q.u() && p.v() <= q.v()) return Order::strictly_before;
  if (q.u() <= p.u() && q.v() <= p.v()) return Order::strictly_after;
  return Order::spacelike;
}

FinitePoset::FinitePoset(std::vector<std::string> elements,
                         const std::vector<std::pair<std::string, std::string>>& covers) {
  elements_ = std::move(elements);
  const std::size_t n = elements_.size();
  leq_.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) leq_[i][i] = true;
  for (const auto& [a, b] : covers) leq_[index(a)][index(b)] = true;
  // Warshall closure.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (leq_[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (leq_[k][j]) leq_[i][j] = true;
  validate();
}

FinitePoset FinitePoset::from_order_matrix(std::vector<std::string> elements,
                                           std::vector<std::vector<bool>> leq) {
  FinitePoset p;
  p.elements_ = std::move(elements);
  p.leq_ = std::move(leq);
  if (p.leq_.size() != p.elements_.size())
    throw InvariantError("poset matrix size does not match element count");
  for (const auto& row : p.leq_)
    if (row.size() != p.elements_.size()) throw InvariantError("poset matrix is not square");
  p.validate();
  return p;
}

void FinitePoset::validate() const {
  const std::size_t n = elements_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (elements_[i].empty()) throw InvariantError("poset element with empty name");
    for (std::size_t j = i + 1; j < n; ++j)
      if (elements_[i] == elements_[j])
        throw InvariantError("duplicate poset element '" + elements_[i] + "'");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!leq_[i][i]) throw InvariantError("poset order is not reflexive");
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && leq_[i][j] && leq_[j][i])
        throw InvariantError("poset order is not antisymmetric ('" + elements_[i] + "', '" +
                             elements_[j] + "')");
      if (!leq_[i][j]) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (leq_[j][k] && !leq_[i][k]) throw InvariantError("poset order is not transitive");
    }
  }
}

std::uint32_t FinitePoset::index(std::string_view element) const {
  for (std::size_t i = 0; i < elements_.size(); ++i)
    if (elements_[i] == element) return static_cast<std::uint32_t>(i);
  throw UnknownNodeError("unknown poset element '" + std::string(element) + "'");
}

Order FinitePoset::compare(std::uint32_t a, std::uint32_t b) const {
  if (a == b) return Order::equal;
  const bool ab = leq(a, b);
  const bool ba = leq(b, a);
  if (ab) return Order::strictly_before;
  if (ba) return Order::strictly_after;
  return Order::spacelike;
}

std::vector<std::pair<std::string, std::string>> FinitePoset::covering_pairs() const {
  std::vector<std::pair<std::string, std::string>> out;
  const std::size_t n = elements_.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !leq_[a][b]) continue;
      bool covering = true;
      for (std::size_t mid = 0; mid < n && covering; ++mid) {
        if (mid == a || mid == b) continue;
        if (leq_[a][mid] && leq_[mid][b]) covering = false;
      }
      if (covering) out.emplace_back(elements_[a], elements_[b]);
    }
  }
  return out;
}

Embedding Embedding::minkowski(std::map<std::string, MinkowskiPoint> locations) {
  Embedding e;
  e.kind_ = SpaceKind::minkowski11;
  e.points_ = std::move(locations);
  return e;
}

Embedding Embedding::in_poset(FinitePoset poset, std::map<std::string, std::string> locations) {
  Embedding e;
  e.kind_ = SpaceKind::poset;
  e.poset_ = std::make_shared<const FinitePoset>(std::move(poset));
  for (const auto& [node, element] : locations) e.elements_[node] = e.poset_->index(element);
  return e;
}

bool Embedding::located(std::string_view node) const {
  if (kind_ == SpaceKind::minkowski11) return points_.find(std::string(node)) != points_.end();
  return elements_.find(std::string(node)) != elements_.end();
}

const MinkowskiPoint& Embedding::point(std::string_view node) const {
  if (kind_ != SpaceKind::minkowski11) throw QueryError("embedding is not Minkowski");
  const auto it = points_.find(std::string(node));
  if (it == points_.end()) throw QueryError("node '" + std::string(node) + "' is not located");
  return it->second;
}

std::uint32_t Embedding::element(std::string_view node) const {
  if (kind_ != SpaceKind::poset) throw QueryError("embedding is not a poset embedding");
  const auto it = elements_.find(std::string(node));
  if (it == elements_.end()) throw QueryError("node '" + std::string(node) + "' is not located");
  return it->second;
}

const FinitePoset& Embedding::poset() const {
  if (!poset_) throw QueryError("embedding has no poset");
  return *poset_;
}

Order Embedding::compare(std::string_view node_a, std::string_view node_b) const {
  if (kind_ == SpaceKind::minkowski11) return precedes(point(node_a), point(node_b));
  return poset_->compare(element(node_a), element(node_b));
}

const std::map<std::string, MinkowskiPoint>& Embedding::minkowski_locations() const {
  if (kind_ != SpaceKind::minkowski11) throw QueryError("embedding is not Minkowski");
  return points_;
}

const std::map<std::string, std::uint32_t>& Embedding::poset_locations() const {
  if (kind_ != SpaceKind::poset) throw QueryError("embedding is not a poset embedding");
  return elements_;
}

ConeRegion ConeRegion::minkowski_apex(Rational u0, Rational v0) {
  ConeRegion r;
  r.kind_ = SpaceKind::minkowski11;
  r.u0_ = std::move(u0);
  r.v0_ = std::move(v0);
  return r;
}

ConeRegion ConeRegion::poset_upset(std::shared_ptr<const FinitePoset> poset,
                                   std::vector<bool> members) {
  ConeRegion r;
  r.kind_ = SpaceKind::poset;
  r.poset_ = std::move(poset);
  r.members_ = std::move(members);
  if (!r.poset_ || r.members_.size() != r.poset_->size())
    throw InvariantError("up-set membership vector does not match poset");
  // Up-closure check.
  for (std::size_t a = 0; a < r.members_.size(); ++a)
    if (r.members_[a])
      for (std::size_t b = 0; b < r.members_.size(); ++b)
        if (r.poset_->leq(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)) &&
            !r.members_[b])
          throw InvariantError("poset region is not up-closed");
  return r;
}

bool ConeRegion::contains_point(const MinkowskiPoint& q) const {
  if (kind_ != SpaceKind::minkowski11) throw QueryError("region is not a Minkowski cone");
  return u0_ <= q.u() && v0_ <= q.v();
}

bool ConeRegion::contains_element(std::uint32_t element) const {
  if (kind_ != SpaceKind::poset) throw QueryError("region is not a poset up-set");
  if (element >= members_.size()) throw QueryError("poset element out of range");
  return members_[element];
}

ConeRegion future_of(const Embedding& e, std::string_view node) {
  const std::string name(node);
  return joint_future(e, std::span<const std::string>(&name, 1));
}

ConeRegion joint_future(const Embedding& e, std::span<const std::string> nodes) {
  if (nodes.empty()) throw QueryError("joint future of an empty node set");
  if (e.kind() == SpaceKind::minkowski11) {
    const MinkowskiPoint& first = e.point(nodes.front());
    Rational u = first.u();
    Rational v = first.v();
    for (const auto& n : nodes.subspan(1)) {
      const MinkowskiPoint& p = e.point(n);
      u = std::max(u, p.u());
      v = std::max(v, p.v());
    }
    return ConeRegion::minkowski_apex(std::move(u), std::move(v));
  }
  const FinitePoset& poset = e.poset();
  std::vector<bool> members(poset.size(), true);
  for (const auto& n : nodes) {
    const std::uint32_t base = e.element(n);
    for (std::size_t q = 0; q < poset.size(); ++q)
      if (!poset.leq(base, static_cast<std::uint32_t>(q))) members[q] = false;
  }
  return ConeRegion::poset_upset(std::make_shared<const FinitePoset>(poset), std::move(members));
}

bool region_contains(const ConeRegion& outer, const ConeRegion& inner) {
  if (outer.kind() != inner.kind()) throw QueryError("comparing regions of different spaces");
  if (outer.kind() == SpaceKind::minkowski11)
    return outer.apex_u() <= inner.apex_u() && outer.apex_v() <= inner.apex_v();
  if (outer.members().size() != inner.members().size())
    throw QueryError("comparing regions over different posets");
  for (std::size_t i = 0; i < inner.members().size(); ++i)
    if (inner.members()[i] && !outer.members()[i]) return false;
  return true;
}

NscVerdict check_nsc(const CausalStructure& g, const Embedding& e) {
  NscVerdict verdict;
  for (const Edge& edge : g.edges()) {
    const std::string& from = g.name(edge.from);
    const std::string& to = g.name(edge.to);
    if (!e.located(from) || !e.located(to)) {
      verdict.unchecked.push_back({from, to});
      continue;
    }
    if (!at_or_before(e.compare(from, to))) verdict.violations.push_back({from, to});
  }
  verdict.passed = verdict.violations.empty();
  return verdict;
}

NssVerdict check_nss(std::span<const AffectsRelation> relations, const Embedding& e) {
  NssVerdict verdict;
  for (const AffectsRelation& r : relations) {
    if (!r.holds) continue;
    if (r.irreducible.has_value() && !*r.irreducible) continue;  // reducible: no constraint
    for (const auto& group : {r.source, r.target, r.do_set})
      for (const auto& node : group)
        if (!e.located(node))
          throw QueryError("relation mentions unlocated node '" + node + "'");
    ++verdict.relations_checked;

    std::vector<std::string> accessed = r.target;
    accessed.insert(accessed.end(), r.do_set.begin(), r.do_set.end());
    const ConeRegion inner = joint_future(e, accessed);
    const ConeRegion outer = joint_future(e, r.source);
    if (!region_contains(outer, inner)) {
      verdict.violations.push_back(
          {r.source, r.target, r.do_set,
           "joint future of target and do-set escapes the source's joint future"});
    }
  }
  verdict.passed = verdict.violations.empty();
  return verdict;
}

}  // namespace causalst

#pragma once

#include <string>
#include <vector>

#include "ctree/tree.hpp"

namespace ctree {

// A member of the generated sigma-algebra. Atoms are leaves, so an event is a
// set of leaves, stored as sorted depth-first leaf positions.
struct Event {
  std::vector<int> positions;

  bool empty() const { return positions.empty(); }
  int size() const { return static_cast<int>(positions.size()); }
  friend bool operator==(const Event&, const Event&) = default;
};

// Builds an event from outcome labels. Duplicates collapse; unknown labels
// throw UnknownOutcome.
Event make_event(const CausalSpace& s, const std::vector<std::string>& labels);

// The outcome set carried by a node, as an event.
Event event_of_node(const CausalSpace& s, int node);

Event full_event(const CausalSpace& s);
Event complement_event(const CausalSpace& s, const Event& a);
Event intersect_event(const Event& a, const Event& b);
Event union_event(const Event& a, const Event& b);
bool is_full(const CausalSpace& s, const Event& a);

// Labels of the members, in sample-space declaration order.
std::vector<std::string> event_labels(const CausalSpace& s, const Event& a);

// Number of members of `a` inside the node's leaf range.
int members_in_node(const Event& a, const Node& n);
bool node_intersects(const Event& a, const Node& n);
// True when the node's whole outcome set lies inside `a`.
bool node_inside(const Event& a, const Node& n);

// A set of pairwise-disjoint realisations whose outcome sets union to an
// event, stored as node indices sorted by depth-first position.
using Representation = std::vector<int>;

// The coarsest representation: nodes inside the event whose parent is not.
// Unique for every representable union of atoms; empty event gives no parts.
Representation canonical_representation(const CausalSpace& s, const Event& a);

// Every representation of the event. Each part of the canonical
// representation may be refined independently into any full cut of its
// subtree, so the count is the product of per-part cut counts.
std::vector<Representation> all_representations(const CausalSpace& s, const Event& a);

// All unions of atoms, in mask order (position 0 is the lowest bit).
// Guarded: more than 20 leaves throws TooManyLeaves.
std::vector<Event> sigma_algebra(const CausalSpace& s);

// P(A | U) under the unique measure extension. `given` is a node index.
Rational prob(const CausalSpace& s, const CausalMeasure& m, const Event& a, int given);
Rational prob(const CausalSpace& s, const Event& a, int given);

// Evidential update: leaf masses restricted to B and renormalised, indexed by
// leaf position. P(B | root) = 0 throws ConditionOnNullEvent.
std::vector<Rational> condition(const CausalSpace& s, const CausalMeasure& m, const Event& b);
std::vector<Rational> condition(const CausalSpace& s, const Event& b);

}  // namespace ctree

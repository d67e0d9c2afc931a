#pragma once

#include <map>
#include <vector>

#include "ctree/events.hpp"
#include "ctree/tree.hpp"

namespace ctree {

enum class Closedness {
  Closed,       // [U,V]
  LeftClosed,   // [U,V)
  RightClosed,  // (U,V]
  Open,         // (U,V)
};

// The chain of realisations between two comparable nodes. `members` runs in
// path order from the lower (ancestor) end; empty when U does not precede V
// or the closedness excludes everything.
struct Interval {
  int lower = -1;
  int upper = -1;
  Closedness closedness = Closedness::Closed;
  std::vector<int> members;

  bool empty() const { return members.empty(); }
};

Interval interval(const CausalSpace& s, int u, int v, Closedness c = Closedness::Closed);

// Deepest node shared by two closed intervals that start at the same lower
// endpoint and end at incomparable uppers. PreconditionViolated otherwise.
int bifurcation(const CausalSpace& s, const Interval& i1, const Interval& i2);

// The child of the bifurcation lying on the path towards i1's upper endpoint.
int discriminant(const CausalSpace& s, const Interval& i1, const Interval& i2);

// Nodes with two distinct children, one meeting A and one meeting the
// complement of A. Trivial events (empty or full) have none by convention;
// `trivial` records that the convention applied.
struct ABifurcations {
  std::vector<int> nodes;  // depth-first order
  bool trivial = false;
};

ABifurcations a_bifurcations(const CausalSpace& s, const Event& a);

// True when `node` bifurcates the event.
bool is_a_bifurcation(const CausalSpace& s, const Event& a, int node);

// Children of the bifurcation that meet A, in child order.
// NotABifurcation when the node does not bifurcate A.
std::vector<int> a_discriminants(const CausalSpace& s, const Event& a, int node);

// Sum of the edge probabilities into the discriminants of `node`.
Rational discriminant_mass(const CausalSpace& s, const CausalMeasure& m, const Event& a, int node);

// Bifurcations whose discriminant mass is strictly below one. Only these
// change anything under intervention.
std::vector<int> critical_bifurcations(const CausalSpace& s, const CausalMeasure& m,
                                       const Event& a);
std::vector<int> critical_bifurcations(const CausalSpace& s, const Event& a);

// Product of discriminant masses over the bifurcations of A inside the
// interval from u to v. The closedness picks which endpoints count.
Rational gain(const CausalSpace& s, const CausalMeasure& m, const Event& a, int u, int v,
              Closedness c = Closedness::Closed);
Rational gain(const CausalSpace& s, const Event& a, int u, int v,
              Closedness c = Closedness::Closed);

struct InterventionResult {
  CausalMeasure measure;
  std::vector<int> bifurcations;                 // depth-first order
  std::map<int, std::vector<int>> discriminants;  // bifurcation -> children meeting A
  std::vector<int> critical;                     // depth-first order
};

// Minimal measure change making A certain: at every critical bifurcation,
// edges into discriminants are renormalised and the remaining edges zeroed.
// Empty A throws TrivialEvent; zero discriminant mass throws
// NullDiscriminants; full A returns the measure unchanged.
InterventionResult intervene(const CausalSpace& s, const CausalMeasure& m, const Event& a);
InterventionResult intervene(const CausalSpace& s, const Event& a);

// Independent route: each edge probability is solved from the defining
// equation of the intervened measure rather than rewritten in place. Used to
// cross-check intervene; the two must agree everywhere.
InterventionResult oracle_intervene(const CausalSpace& s, const CausalMeasure& m, const Event& a);
InterventionResult oracle_intervene(const CausalSpace& s, const Event& a);

}  // namespace ctree

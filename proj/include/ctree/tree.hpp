#pragma once

#include "ctree/errors.hpp"
#include "ctree/rational.hpp"

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace ctree {

struct EdgeSpec {
  std::string parent;
  std::string child;
  Rational p;
};

struct LeafSpec {
  std::string id;
  std::string outcome;
};

// Mirrors the .ctree surface: declared outcomes, a root marker, internal
// node ids, leaves carrying their atom outcome, probability-carrying edges.
// Declaration order is preserved; edge order fixes child order.
struct SpaceSpec {
  std::vector<std::string> outcomes;
  std::string root;
  std::vector<std::string> nodes;
  std::vector<LeafSpec> leaves;
  std::vector<EdgeSpec> edges;
};

struct Node {
  std::string id;
  int parent = -1;  // node index; -1 on the root
  std::vector<int> children;
  int depth = 0;
  int leaf_begin = 0;  // leaves below this node occupy positions
  int leaf_end = 0;    //   [leaf_begin, leaf_end) in depth-first order
  int outcome = -1;    // outcome index; leaves only
  bool is_leaf() const { return children.empty(); }
};

// Edge probabilities indexed by child node; edge[root] is fixed at 1.
struct CausalMeasure {
  std::vector<Rational> edge;
};

// Immutable after build_space; all queries are read-only.
class CausalSpace {
 public:
  int root() const { return root_; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  const Node& node(int i) const {
    if (i < 0 || i >= node_count()) {
      throw Error(Errc::UnknownNode, "node index " + std::to_string(i) + " out of range");
    }
    return nodes_[i];
  }
  int leaf_count() const { return static_cast<int>(leaf_order_.size()); }
  int leaf_at(int pos) const { return leaf_order_[pos]; }
  const std::vector<std::string>& outcomes() const { return outcomes_; }
  const std::string& outcome_label(int oi) const { return outcomes_[oi]; }
  const CausalMeasure& measure() const { return measure_; }

  int index_of(const std::string& id) const;          // UnknownNode
  std::optional<int> find(const std::string& id) const;
  int outcome_index(const std::string& label) const;  // UnknownOutcome
  int position_of_outcome(int oi) const { return outcome_pos_[oi]; }

  // Labels carried by a node, in leaf order.
  std::vector<std::string> outcome_set(int node) const;

  friend CausalSpace build_space(const SpaceSpec& spec);

 private:
  std::vector<Node> nodes_;
  int root_ = -1;
  std::vector<std::string> outcomes_;
  std::unordered_map<std::string, int> node_index_;
  std::unordered_map<std::string, int> outcome_index_;
  std::vector<int> leaf_order_;   // leaf position -> node index
  std::vector<int> outcome_pos_;  // outcome index -> leaf position
  CausalMeasure measure_;
};

// Validates structure (connected tree, atom leaves, no duplicate ids or
// outcomes, no unary chains), derives outcome sets bottom-up, checks edge
// sums exactly. Throws Error on the first violation.
CausalSpace build_space(const SpaceSpec& spec);

// Strict order induced by outcome-set inclusion: u precedes v iff u is a
// proper ancestor of v. Exactly one of precedes/follows/equal/incomparable
// holds for any node pair.
bool precedes(const CausalSpace& s, int u, int v);
bool precedes_or_equal(const CausalSpace& s, int u, int v);
bool incomparable(const CausalSpace& s, int u, int v);

/// P(V|U): 1 when V precedes-or-equals U, 0 when incomparable, product of
// edge probabilities down the path when V follows U.
Rational transition_prob(const CausalSpace& s, const CausalMeasure& m, int u, int v);
Rational transition_prob(const CausalSpace& s, int u, int v);

struct LeafMass {
  int node;
  std::string outcome;
  Rational mass;
};

// Root-to-leaf products in leaf order; masses sum to exactly 1.
std::vector<LeafMass> leaf_masses(const CausalSpace& s, const CausalMeasure& m);
std::vector<LeafMass> leaf_masses(const CausalSpace& s);

struct AxiomCheck {
  std::string axiom;
  bool pass = true;
  std::string note;  // witness on failure, coverage note otherwise
};

struct ValidationReport {
  std::vector<AxiomCheck> checks;
  bool all_pass() const;
  const AxiomCheck* find(const std::string& axiom) const;
};

ValidationReport validate_axioms(const CausalSpace& s, const CausalMeasure& m);
ValidationReport validate_axioms(const CausalSpace& s);

// Validator-only surface with explicit outcome sets, so R1/R2/R3 violations
// are expressible; build_space derives sets bottom-up and cannot emit them.
struct RawNode {
  std::string id;
  std::string parent;  // empty on the root
  std::vector<std::string> outcome_set;
};

struct RawSpace {
  std::vector<std::string> outcomes;
  std::vector<RawNode> nodes;
  std::vector<EdgeSpec> edges;
};

ValidationReport validate_axioms(const RawSpace& raw);

}  // namespace ctree

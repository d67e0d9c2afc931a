#include "ctree/tree.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ctree {

int CausalSpace::index_of(const std::string& id) const {
  auto it = node_index_.find(id);
  if (it == node_index_.end()) throw Error(Errc::UnknownNode, "no node '" + id + "'");
  return it->second;
}

std::optional<int> CausalSpace::find(const std::string& id) const {
  auto it = node_index_.find(id);
  if (it == node_index_.end()) return std::nullopt;
  return it->second;
}

int CausalSpace::outcome_index(const std::string& label) const {
  auto it = outcome_index_.find(label);
  if (it == outcome_index_.end()) throw Error(Errc::UnknownOutcome, "no outcome '" + label + "'");
  return it->second;
}

std::vector<std::string> CausalSpace::outcome_set(int n) const {
  const Node& nd = nodes_[n];
  std::vector<std::string> out;
  out.reserve(nd.leaf_end - nd.leaf_begin);
  for (int pos = nd.leaf_begin; pos < nd.leaf_end; ++pos) {
    out.push_back(outcomes_[nodes_[leaf_order_[pos]].outcome]);
  }
  return out;
}

CausalSpace build_space(const SpaceSpec& spec) {
  CausalSpace s;

  if (spec.outcomes.empty()) throw Error(Errc::SemanticError, "no outcomes declared");
  for (const auto& label : spec.outcomes) {
    if (label.empty()) throw Error(Errc::SemanticError, "empty outcome label");
    if (!s.outcome_index_.emplace(label, static_cast<int>(s.outcomes_.size())).second) {
      throw Error(Errc::DuplicateId, "outcome '" + label + "' declared twice");
    }
    s.outcomes_.push_back(label);
  }

  auto declare = [&s](const std::string& id) {
    if (id.empty()) throw Error(Errc::SemanticError, "empty node id");
    Node node;
    node.id = id;
    if (!s.node_index_.emplace(id, static_cast<int>(s.nodes_.size())).second) {
      throw Error(Errc::DuplicateId, "node '" + id + "' declared twice");
    }
    s.nodes_.push_back(std::move(node));
  };
  for (const auto& id : spec.nodes) declare(id);
  std::set<std::string> used_outcomes;
  for (const auto& leaf : spec.leaves) {
    declare(leaf.id);
    auto it = s.outcome_index_.find(leaf.outcome);
    if (it == s.outcome_index_.end()) {
      throw Error(Errc::UnknownOutcome, "leaf '" + leaf.id + "' names undeclared outcome '" + leaf.outcome + "'");
    }
    if (!used_outcomes.insert(leaf.outcome).second) {
      throw Error(Errc::DuplicateId, "outcome '" + leaf.outcome + "' carried by two leaves");
    }
    s.nodes_.back().outcome = it->second;
  }

  if (spec.root.empty()) throw Error(Errc::SemanticError, "no root declared");
  auto root_it = s.node_index_.find(spec.root);
  if (root_it == s.node_index_.end()) {
    throw Error(Errc::UnknownNode, "root '" + spec.root + "' is not a declared node");
  }
  s.root_ = root_it->second;

  s.measure_.edge.assign(s.nodes_.size(), Rational(0));
  s.measure_.edge[s.root_] = 1;
  for (const auto& e : spec.edges) {
    auto pit = s.node_index_.find(e.parent);
    if (pit == s.node_index_.end()) throw Error(Errc::UnknownNode, "edge from undeclared node '" + e.parent + "'");
    auto cit = s.node_index_.find(e.child);
    if (cit == s.node_index_.end()) throw Error(Errc::UnknownNode, "edge to undeclared node '" + e.child + "'");
    int pi = pit->second;
    int ci = cit->second;
    if (pi == ci) throw Error(Errc::SemanticError, "edge from '" + e.parent + "' to itself");
    if (ci == s.root_) throw Error(Errc::SemanticError, "edge into the root '" + e.child + "'");
    if (s.nodes_[ci].parent != -1) {
      throw Error(Errc::DuplicateId, "node '" + e.child + "' has more than one incoming edge");
    }
    if (e.p < 0 || e.p > 1) {
      throw Error(Errc::ProbOutOfRange,
                  "edge " + e.parent + " -> " + e.child + " has probability " + format_fraction(e.p));
    }
    s.nodes_[ci].parent = pi;
    s.nodes_[pi].children.push_back(ci);
    s.measure_.edge[ci] = e.p;
  }

  for (int i = 0; i < s.node_count(); ++i) {
    const Node& n = s.nodes_[i];
    if (i != s.root_ && n.parent == -1) {
      throw Error(Errc::OrphanNode, "node '" + n.id + "' is not reachable from the root");
    }
    if (n.outcome >= 0 && !n.children.empty()) {
      throw Error(Errc::SemanticError, "leaf '" + n.id + "' has outgoing edges");
    }
    if (n.outcome < 0 && n.children.empty()) {
      throw Error(Errc::LeafWithoutOutcome, "node '" + n.id + "' has no children and no outcome");
    }
    if (n.children.size() == 1) {
      throw Error(Errc::DuplicateRealisation,
                  "node '" + n.id + "' has a single child carrying the same outcome set");
    }
  }
  for (const auto& label : s.outcomes_) {
    if (!used_outcomes.count(label)) {
      throw Error(Errc::SemanticError, "outcome '" + label + "' is not carried by any leaf");
    }
  }

  for (int i = 0; i < s.node_count(); ++i) {
    const Node& n = s.nodes_[i];
    if (n.children.empty()) continue;
    Rational sum(0);
    for (int c : n.children) sum += s.measure_.edge[c];
    if (sum != 1) {
      throw Error(Errc::EdgeSumNotOne,
                  "edges leaving '" + n.id + "' sum to " + format_fraction(sum));
    }
  }

  // Depth-first pass: depths, leaf order, contiguous leaf ranges.
  std::vector<int> stack;
  std::vector<size_t> child_cursor(s.nodes_.size(), 0);
  std::vector<char> seen(s.nodes_.size(), 0);
  stack.push_back(s.root_);
  seen[s.root_] = 1;
  s.nodes_[s.root_].depth = 0;
  while (!stack.empty()) {
    int cur = stack.back();
    Node& n = s.nodes_[cur];
    if (child_cursor[cur] == 0) {
      n.leaf_begin = static_cast<int>(s.leaf_order_.size());
      if (n.is_leaf()) s.leaf_order_.push_back(cur);
    }
    if (child_cursor[cur] < n.children.size()) {
      int c = n.children[child_cursor[cur]++];
      if (seen[c]) throw Error(Errc::SemanticError, "node '" + s.nodes_[c].id + "' reached twice");
      seen[c] = 1;
      s.nodes_[c].depth = n.depth + 1;
      stack.push_back(c);
    } else {
      n.leaf_end = static_cast<int>(s.leaf_order_.size());
      stack.pop_back();
    }
  }
  for (int i = 0; i < s.node_count(); ++i) {
    if (!seen[i]) throw Error(Errc::OrphanNode, "node '" + s.nodes_[i].id + "' is not reachable from the root");
  }

  s.outcome_pos_.assign(s.outcomes_.size(), -1);
  for (int pos = 0; pos < s.leaf_count(); ++pos) {
    s.outcome_pos_[s.nodes_[s.leaf_order_[pos]].outcome] = pos;
  }
  return s;
}

namespace {

void check_node(const CausalSpace& s, int n) {
  if (n < 0 || n >= s.node_count()) throw Error(Errc::UnknownNode, "node index out of range");
}

// u is an ancestor of v or equal to it. Leaf ranges nest strictly for
// distinct comparable nodes because unary chains are rejected at build.
bool contains(const CausalSpace& s, int u, int v) {
  const Node& a = s.node(u);
  const Node& b = s.node(v);
  return a.leaf_begin <= b.leaf_begin && b.leaf_end <= a.leaf_end;
}

}  // namespace

bool precedes(const CausalSpace& s, int u, int v) {
  check_node(s, u);
  check_node(s, v);
  return u != v && contains(s, u, v);
}

bool precedes_or_equal(const CausalSpace& s, int u, int v) {
  check_node(s, u);
  check_node(s, v);
  return contains(s, u, v);
}

bool incomparable(const CausalSpace& s, int u, int v) {
  check_node(s, u);
  check_node(s, v);
  return !contains(s, u, v) && !contains(s, v, u);
}

Rational transition_prob(const CausalSpace& s, const CausalMeasure& m, int u, int v) {
  check_node(s, u);
  check_node(s, v);
  if (contains(s, v, u)) return Rational(1);  // the past is certain
  if (!contains(s, u, v)) return Rational(0);  // incomparable
  Rational r(1);
  for (int w = v; w != u; w = s.node(w).parent) r *= m.edge[w];
  return r;
}

Rational transition_prob(const CausalSpace& s, int u, int v) {
  return transition_prob(s, s.measure(), u, v);
}

std::vector<LeafMass> leaf_masses(const CausalSpace& s, const CausalMeasure& m) {
  std::vector<LeafMass> out;
  out.reserve(s.leaf_count());
  for (int pos = 0; pos < s.leaf_count(); ++pos) {
    int leaf = s.leaf_at(pos);
    out.push_back({leaf, s.outcome_label(s.node(leaf).outcome), transition_prob(s, m, s.root(), leaf)});
  }
  return out;
}

std::vector<LeafMass> leaf_masses(const CausalSpace& s) { return leaf_masses(s, s.measure()); }

bool ValidationReport::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

const AxiomCheck* ValidationReport::find(const std::string& axiom) const {
  for (const auto& c : checks) {
    if (c.axiom == axiom) return &c;
  }
  return nullptr;
}

ValidationReport validate_axioms(const CausalSpace& s, const CausalMeasure& m) {
  ValidationReport rep;
  auto add = [&rep](const std::string& axiom, bool pass, const std::string& note) {
    rep.checks.push_back({axiom, pass, note});
  };

  const Node& root = s.node(s.root());
  bool r1 = root.leaf_begin == 0 && root.leaf_end == s.leaf_count() &&
            s.leaf_count() == static_cast<int>(s.outcomes().size());
  add("R1", r1, r1 ? "root carries the full outcome set" : "root outcome set differs from the sample space");

  bool r2 = true, r3 = true;
  std::string w2, w3;
  for (int i = 0; i < s.node_count() && r2 && r3; ++i) {
    const Node& n = s.node(i);
    if (n.is_leaf()) continue;
    int cursor = n.leaf_begin;
    for (int c : n.children) {
      const Node& ch = s.node(c);
      if (ch.leaf_begin < cursor) {
        r2 = false;
        w2 = "children of '" + n.id + "' overlap";
        break;
      }
      if (ch.leaf_begin > cursor) {
        r3 = false;
        w3 = "children of '" + n.id + "' omit outcome '" +
             s.outcome_label(s.node(s.leaf_at(cursor)).outcome) + "'";
        break;
      }
      cursor = ch.leaf_end;
    }
    if (r2 && r3 && cursor != n.leaf_end) {
      r3 = false;
      w3 = "children of '" + n.id + "' omit outcome '" +
           s.outcome_label(s.node(s.leaf_at(cursor)).outcome) + "'";
    }
  }
  add("R2", r2, r2 ? "sibling outcome sets pairwise disjoint" : w2);
  add("R3", r3, r3 ? "children partition each parent exactly" : w3);
  add("R4", true, "vacuous for finite trees");

  bool crange = m.edge.size() == static_cast<size_t>(s.node_count());
  std::string wrange = crange ? "every edge probability lies in [0,1]" : "measure does not cover the tree";
  if (crange) {
    for (int i = 0; i < s.node_count(); ++i) {
      if (m.edge[i] < 0 || m.edge[i] > 1) {
        crange = false;
        wrange = "edge into '" + s.node(i).id + "' carries " + format_fraction(m.edge[i]);
        break;
      }
    }
  }
  add("C-range", crange, wrange);

  bool c1 = true;
  std::string w1;
  for (int v = 0; v < s.node_count() && c1; ++v) {
    for (int u = v; u != -1; u = s.node(u).parent) {
      if (transition_prob(s, m, v, u) != 1) {
        c1 = false;
        w1 = "P(" + s.node(u).id + "|" + s.node(v).id + ") != 1";
        break;
      }
    }
  }
  add("C1", c1, c1 ? "past certain on every ancestor pair" : w1);

  bool c2 = true;
  std::string wc2;
  for (int i = 0; i < s.node_count() && c2; ++i) {
    const Node& n = s.node(i);
    for (size_t a = 0; a < n.children.size() && c2; ++a) {
      for (size_t b = 0; b < n.children.size() && c2; ++b) {
        if (a == b) continue;
        int ca = n.children[a], cb = n.children[b];
        int la = s.leaf_at(s.node(ca).leaf_begin);
        int lb = s.leaf_at(s.node(cb).leaf_end - 1);
        if (transition_prob(s, m, ca, cb) != 0 || transition_prob(s, m, la, lb) != 0) {
          c2 = false;
          wc2 = "incomparable pair under '" + n.id + "' has nonzero probability";
        }
      }
    }
  }
  add("C2", c2, c2 ? "incomparable pairs impossible (checked on sibling subtrees)" : wc2);

  bool c3 = crange;
  std::string wc3 = crange ? "outgoing probabilities sum to 1 at every internal node"
                           : "skipped: measure does not cover the tree";
  if (crange) {
    for (int i = 0; i < s.node_count(); ++i) {
      const Node& n = s.node(i);
      if (n.is_leaf()) continue;
      Rational sum(0);
      for (int c : n.children) sum += m.edge[c];
      if (sum != 1) {
        c3 = false;
        wc3 = "edges leaving '" + n.id + "' sum to " + format_fraction(sum);
        break;
      }
    }
    if (c3 && m.edge[s.root()] != 1) {
      c3 = false;
      wc3 = "root mass is " + format_fraction(m.edge[s.root()]);
    }
  }
  add("C3", c3, wc3);

  bool c4 = true;
  std::string wc4;
  for (int w = 0; w < s.node_count() && c4; ++w) {
    for (int v = s.node(w).parent; v != -1 && c4; v = s.node(v).parent) {
      for (int u = s.node(v).parent; u != -1 && c4; u = s.node(u).parent) {
        if (transition_prob(s, m, u, w) != transition_prob(s, m, v, w) * transition_prob(s, m, u, v)) {
          c4 = false;
          wc4 = "product rule fails on " + s.node(u).id + " > " + s.node(v).id + " > " + s.node(w).id;
        }
      }
    }
  }
  add("C4", c4, c4 ? "product rule holds on every comparable triple" : wc4);

  return rep;
}

ValidationReport validate_axioms(const CausalSpace& s) { return validate_axioms(s, s.measure()); }

namespace {

std::set<std::string> as_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

}  // namespace

ValidationReport validate_axioms(const RawSpace& raw) {
  ValidationReport rep;
  auto add = [&rep](const std::string& axiom, bool pass, const std::string& note) {
    rep.checks.push_back({axiom, pass, note});
  };

  // Structural sanity first; the axiom checks need a coherent tree.
  std::unordered_map<std::string, int> index;
  bool structure = true;
  std::string ws;
  int root = -1;
  for (int i = 0; i < static_cast<int>(raw.nodes.size()) && structure; ++i) {
    if (!index.emplace(raw.nodes[i].id, i).second) {
      structure = false;
      ws = "node '" + raw.nodes[i].id + "' declared twice";
    }
  }
  std::vector<std::vector<int>> children(raw.nodes.size());
  if (structure) {
    for (int i = 0; i < static_cast<int>(raw.nodes.size()); ++i) {
      const RawNode& n = raw.nodes[i];
      if (n.parent.empty()) {
        if (root != -1) {
          structure = false;
          ws = "two roots: '" + raw.nodes[root].id + "' and '" + n.id + "'";
          break;
        }
        root = i;
      } else {
        auto it = index.find(n.parent);
        if (it == index.end()) {
          structure = false;
          ws = "node '" + n.id + "' has unknown parent '" + n.parent + "'";
          break;
        }
        children[it->second].push_back(i);
      }
    }
    if (structure && root == -1) {
      structure = false;
      ws = "no root";
    }
  }
  if (structure) {
    // Parent pointers reach the root without repeating: no cycles.
    for (int i = 0; i < static_cast<int>(raw.nodes.size()) && structure; ++i) {
      int steps = 0;
      for (int w = i; w != root && structure; ++steps) {
        w = index[raw.nodes[w].parent];
        if (steps > static_cast<int>(raw.nodes.size())) {
          structure = false;
          ws = "cycle through '" + raw.nodes[i].id + "'";
        }
      }
    }
  }
  add("tree", structure, structure ? "connected single-rooted tree" : ws);
  if (!structure) {
    for (const char* a : {"R1", "R2", "R3", "R4", "atom-leaves", "C-range", "C1", "C2", "C3", "C4"}) {
      add(a, false, "skipped: tree structure invalid");
    }
    return rep;
  }

  std::set<std::string> omega = as_set(raw.outcomes);
  std::set<std::string> root_set = as_set(raw.nodes[root].outcome_set);
  bool r1 = root_set == omega;
  std::string w1 = "root carries the full outcome set";
  if (!r1) {
    for (const auto& o : omega) {
      if (!root_set.count(o)) w1 = "root lacks outcome '" + o + "'";
    }
    for (const auto& o : root_set) {
      if (!omega.count(o)) w1 = "root carries undeclared outcome '" + o + "'";
    }
  }
  add("R1", r1, w1);

  bool r2 = true;
  std::string w2 = "sibling outcome sets pairwise disjoint";
  for (size_t p = 0; p < raw.nodes.size() && r2; ++p) {
    const auto& kids = children[p];
    for (size_t a = 0; a + 1 < kids.size() && r2; ++a) {
      std::set<std::string> sa = as_set(raw.nodes[kids[a]].outcome_set);
      for (size_t b = a + 1; b < kids.size() && r2; ++b) {
        for (const auto& o : raw.nodes[kids[b]].outcome_set) {
          if (sa.count(o)) {
            r2 = false;
            w2 = "'" + raw.nodes[kids[a]].id + "' and '" + raw.nodes[kids[b]].id +
                 "' share outcome '" + o + "'";
            break;
          }
        }
      }
    }
  }
  add("R2", r2, w2);

  bool r3 = true;
  std::string w3 = "children partition each parent exactly";
  for (size_t p = 0; p < raw.nodes.size() && r3; ++p) {
    if (children[p].empty()) continue;
    std::set<std::string> uni;
    for (int c : children[p]) {
      for (const auto& o : raw.nodes[c].outcome_set) uni.insert(o);
    }
    std::set<std::string> parent_set = as_set(raw.nodes[p].outcome_set);
    for (const auto& o : parent_set) {
      if (!uni.count(o)) {
        r3 = false;
        w3 = "children of '" + raw.nodes[p].id + "' omit outcome '" + o + "'";
        break;
      }
    }
    if (r3) {
      for (const auto& o : uni) {
        if (!parent_set.count(o)) {
          r3 = false;
          w3 = "children of '" + raw.nodes[p].id + "' add outcome '" + o + "'";
          break;
        }
      }
    }
  }
  add("R3", r3, w3);
  add("R4", true, "vacuous for finite trees");

  bool atoms = true;
  std::string wa = "childless nodes carry exactly one outcome";
  for (size_t i = 0; i < raw.nodes.size(); ++i) {
    if (children[i].empty() && raw.nodes[i].outcome_set.size() != 1) {
      atoms = false;
      wa = "leaf '" + raw.nodes[i].id + "' carries " +
           std::to_string(raw.nodes[i].outcome_set.size()) + " outcomes";
      break;
    }
  }
  add("atom-leaves", atoms, wa);

  // Edge probabilities, keyed by (parent, child).
  std::map<std::pair<int, int>, Rational> prob;
  bool crange = true;
  std::string wrange = "every edge probability lies in [0,1]";
  for (const auto& e : raw.edges) {
    auto pit = index.find(e.parent);
    auto cit = index.find(e.child);
    if (pit == index.end() || cit == index.end()) {
      crange = false;
      wrange = "edge " + e.parent + " -> " + e.child + " references unknown nodes";
      break;
    }
    if (e.p < 0 || e.p > 1) {
      crange = false;
      wrange = "edge " + e.parent + " -> " + e.child + " carries " + format_fraction(e.p);
      break;
    }
    prob[{pit->second, cit->second}] = e.p;
  }
  add("C-range", crange, wrange);

  bool c3 = crange;
  std::string wc3 = crange ? "outgoing probabilities sum to 1 at every internal node"
                           : "skipped: bad edges";
  if (crange) {
    for (size_t p = 0; p < raw.nodes.size() && c3; ++p) {
      if (children[p].empty()) continue;
      Rational sum(0);
      for (int c : children[p]) {
        auto it = prob.find({static_cast<int>(p), c});
        if (it == prob.end()) {
          c3 = false;
          wc3 = "edge " + raw.nodes[p].id + " -> " + raw.nodes[c].id + " has no probability";
          break;
        }
        sum += it->second;
      }
      if (c3 && sum != 1) {
        c3 = false;
        wc3 = "edges leaving '" + raw.nodes[p].id + "' sum to " + format_fraction(sum);
      }
    }
  }
  add("C3", c3, wc3);

  bool sane = r1 && r2 && r3 && atoms && crange && c3;
  if (!sane) {
    add("C1", false, "skipped: earlier failures");
    add("C2", false, "skipped: earlier failures");
    add("C4", false, "skipped: earlier failures");
    return rep;
  }

  // Transition function by parent walks, independent of CausalSpace.
  auto is_anc = [&](int u, int v) {  // u ancestor-or-self of v
    for (int w = v;; w = index[raw.nodes[w].parent]) {
      if (w == u) return true;
      if (w == root) return false;
    }
  };
  auto trans = [&](int u, int v) -> Rational {
    if (is_anc(v, u)) return Rational(1);
    if (!is_anc(u, v)) return Rational(0);
    Rational r(1);
    for (int w = v; w != u; w = index[raw.nodes[w].parent]) {
      r *= prob[{index[raw.nodes[w].parent], w}];
    }
    return r;
  };

  bool c1 = true, c2 = true, c4 = true;
  std::string wc1, wc2, wc4;
  int n = static_cast<int>(raw.nodes.size());
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (is_anc(v, u)) {
        if (c1 && trans(u, v) != 1) {
          c1 = false;
          wc1 = "P(" + raw.nodes[v].id + "|" + raw.nodes[u].id + ") != 1";
        }
      } else if (!is_anc(u, v)) {
        if (c2 && trans(u, v) != 0) {
          c2 = false;
          wc2 = "incomparable P(" + raw.nodes[v].id + "|" + raw.nodes[u].id + ") != 0";
        }
      }
    }
  }
  for (int w = 0; w < n && c4; ++w) {
    for (int v = w; v != root && c4; ) {
      v = index[raw.nodes[v].parent];
      for (int u = v; u != root && c4; ) {
        u = index[raw.nodes[u].parent];
        if (trans(u, w) != trans(v, w) * trans(u, v)) {
          c4 = false;
          wc4 = "product rule fails on " + raw.nodes[u].id + " > " + raw.nodes[v].id + " > " +
                raw.nodes[w].id;
        }
      }
    }
  }
  add("C1", c1, c1 ? "past certain on every ancestor pair" : wc1);
  add("C2", c2, c2 ? "incomparable pairs impossible" : wc2);
  add("C4", c4, c4 ? "product rule holds on every comparable triple" : wc4);
  return rep;
}

}  // namespace ctree

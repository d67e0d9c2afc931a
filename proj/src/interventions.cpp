#include "ctree/interventions.hpp"

#include <algorithm>

#include "ctree/errors.hpp"

namespace ctree {

namespace {

// Depth-first order for reported node sets: by leaf range start, parents
// before their descendants.
void sort_dfs(const CausalSpace& s, std::vector<int>& nodes) {
  std::sort(nodes.begin(), nodes.end(), [&](int x, int y) {
    const Node& a = s.node(x);
    const Node& b = s.node(y);
    if (a.leaf_begin != b.leaf_begin) return a.leaf_begin < b.leaf_begin;
    return a.leaf_end > b.leaf_end;
  });
}

}  // namespace

Interval interval(const CausalSpace& s, int u, int v, Closedness c) {
  Interval iv;
  iv.lower = u;
  iv.upper = v;
  iv.closedness = c;
  s.node(u);
  s.node(v);
  if (!precedes_or_equal(s, u, v)) return iv;
  std::vector<int> path;
  for (int w = v;; w = s.node(w).parent) {
    path.push_back(w);
    if (w == u) break;
  }
  std::reverse(path.begin(), path.end());
  bool keep_lower = c == Closedness::Closed || c == Closedness::LeftClosed;
  bool keep_upper = c == Closedness::Closed || c == Closedness::RightClosed;
  size_t from = keep_lower ? 0 : 1;
  size_t to = path.size() - (keep_upper ? 0 : 1);
  if (from < to) iv.members.assign(path.begin() + from, path.begin() + to);
  return iv;
}

int bifurcation(const CausalSpace& s, const Interval& i1, const Interval& i2) {
  if (i1.closedness != Closedness::Closed || i2.closedness != Closedness::Closed) {
    throw Error(Errc::PreconditionViolated, "bifurcation requires closed intervals");
  }
  if (i1.empty() || i2.empty()) {
    throw Error(Errc::PreconditionViolated, "bifurcation requires nonempty intervals");
  }
  if (i1.lower != i2.lower) {
    throw Error(Errc::PreconditionViolated, "bifurcation requires a common lower endpoint");
  }
  if (!incomparable(s, i1.upper, i2.upper)) {
    throw Error(Errc::PreconditionViolated, "bifurcation requires incomparable upper endpoints");
  }
  // Deepest common node: walk the deeper endpoint up to equal depth, then
  // both together. The common lower endpoint guarantees a meeting point.
  int x = i1.upper;
  int y = i2.upper;
  while (s.node(x).depth > s.node(y).depth) x = s.node(x).parent;
  while (s.node(y).depth > s.node(x).depth) y = s.node(y).parent;
  while (x != y) {
    x = s.node(x).parent;
    y = s.node(y).parent;
  }
  return x;
}

int discriminant(const CausalSpace& s, const Interval& i1, const Interval& i2) {
  int lambda = bifurcation(s, i1, i2);
  int w = i1.upper;
  while (s.node(w).parent != lambda) w = s.node(w).parent;
  return w;
}

bool is_a_bifurcation(const CausalSpace& s, const Event& a, int node) {
  const Node& n = s.node(node);
  if (n.is_leaf()) return false;
  for (int c1 : n.children) {
    if (!node_intersects(a, s.node(c1))) continue;
    for (int c2 : n.children) {
      if (c2 == c1) continue;
      const Node& m2 = s.node(c2);
      if (members_in_node(a, m2) < m2.leaf_end - m2.leaf_begin) return true;
    }
  }
  return false;
}

ABifurcations a_bifurcations(const CausalSpace& s, const Event& a) {
  ABifurcations out;
  if (a.empty() || is_full(s, a)) {
    out.trivial = true;
    return out;
  }
  for (int v = 0; v < s.node_count(); ++v) {
    if (is_a_bifurcation(s, a, v)) out.nodes.push_back(v);
  }
  sort_dfs(s, out.nodes);
  return out;
}

std::vector<int> a_discriminants(const CausalSpace& s, const Event& a, int node) {
  if (!is_a_bifurcation(s, a, node)) {
    throw Error(Errc::NotABifurcation,
                "node '" + s.node(node).id + "' does not bifurcate the event");
  }
  std::vector<int> out;
  for (int c : s.node(node).children) {
    if (node_intersects(a, s.node(c))) out.push_back(c);
  }
  return out;
}

Rational discriminant_mass(const CausalSpace& s, const CausalMeasure& m, const Event& a,
                           int node) {
  Rational total = 0;
  for (int c : a_discriminants(s, a, node)) total += m.edge[c];
  return total;
}

std::vector<int> critical_bifurcations(const CausalSpace& s, const CausalMeasure& m,
                                       const Event& a) {
  std::vector<int> out;
  for (int v : a_bifurcations(s, a).nodes) {
    if (discriminant_mass(s, m, a, v) < 1) out.push_back(v);
  }
  return out;
}

std::vector<int> critical_bifurcations(const CausalSpace& s, const Event& a) {
  return critical_bifurcations(s, s.measure(), a);
}

Rational gain(const CausalSpace& s, const CausalMeasure& m, const Event& a, int u, int v,
              Closedness c) {
  if (!precedes_or_equal(s, u, v)) {
    throw Error(Errc::PreconditionViolated, "gain requires the lower node to precede the upper");
  }
  Rational g = 1;
  for (int w : interval(s, u, v, c).members) {
    if (is_a_bifurcation(s, a, w)) g *= discriminant_mass(s, m, a, w);
  }
  return g;
}

Rational gain(const CausalSpace& s, const Event& a, int u, int v, Closedness c) {
  return gain(s, s.measure(), a, u, v, c);
}

namespace {

InterventionResult describe(const CausalSpace& s, const CausalMeasure& m, const Event& a) {
  if (a.empty()) {
    throw Error(Errc::TrivialEvent, "cannot intervene on the empty event");
  }
  InterventionResult r;
  r.measure = m;
  ABifurcations bifs = a_bifurcations(s, a);
  r.bifurcations = bifs.nodes;
  for (int lambda : bifs.nodes) {
    std::vector<int> xs = a_discriminants(s, a, lambda);
    Rational mass = 0;
    for (int x : xs) mass += m.edge[x];
    if (mass == 0) {
      throw Error(Errc::NullDiscriminants, "discriminants of '" + s.node(lambda).id +
                                               "' carry zero probability");
    }
    if (mass < 1) r.critical.push_back(lambda);
    r.discriminants.emplace(lambda, std::move(xs));
  }
  sort_dfs(s, r.critical);
  return r;
}

}  // namespace

InterventionResult intervene(const CausalSpace& s, const CausalMeasure& m, const Event& a) {
  InterventionResult r = describe(s, m, a);
  for (int lambda : r.critical) {
    Rational mass = 0;
    for (int x : r.discriminants.at(lambda)) mass += m.edge[x];
    for (int c : s.node(lambda).children) {
      if (node_intersects(a, s.node(c))) {
        r.measure.edge[c] = m.edge[c] / mass;
      } else {
        r.measure.edge[c] = 0;
      }
    }
  }
  return r;
}

InterventionResult intervene(const CausalSpace& s, const Event& a) {
  return intervene(s, s.measure(), a);
}

InterventionResult oracle_intervene(const CausalSpace& s, const CausalMeasure& m,
                                    const Event& a) {
  InterventionResult r = describe(s, m, a);
  // Defining property of the intervened measure: for V meeting A,
  // P'(V|U) scaled by the gain over [U,V) recovers P(V|U); for V missing A,
  // P'(V|U) vanishes as soon as [U,V] holds a bifurcation. Solving the
  // equation edge by edge (U the parent, V the child) fixes the measure.
  for (int v = 0; v < s.node_count(); ++v) {
    if (v == s.root()) continue;
    int u = s.node(v).parent;
    if (node_intersects(a, s.node(v))) {
      r.measure.edge[v] = m.edge[v] / gain(s, m, a, u, v, Closedness::LeftClosed);
    } else {
      if (is_a_bifurcation(s, a, u) || is_a_bifurcation(s, a, v)) {
        r.measure.edge[v] = 0;
      }
    }
  }
  return r;
}

InterventionResult oracle_intervene(const CausalSpace& s, const Event& a) {
  return oracle_intervene(s, s.measure(), a);
}

}  // namespace ctree

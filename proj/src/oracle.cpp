#include "ctree/oracle.hpp"

#include <algorithm>
#include <set>

#include "ctree/errors.hpp"
#include "ctree/interventions.hpp"
#include "ctree/random_vars.hpp"

namespace ctree {

namespace {

// Independent primitives: parent walks and explicit leaf-node sets only.

bool o_anc(const CausalSpace& s, int u, int v) {
  for (int w = v;; w = s.node(w).parent) {
    if (w == u) return true;
    if (w == s.root()) return false;
  }
}

std::vector<int> o_subtree_leaves(const CausalSpace& s, int v) {
  std::vector<int> leaves;
  std::vector<int> stack{v};
  while (!stack.empty()) {
    int w = stack.back();
    stack.pop_back();
    const Node& n = s.node(w);
    if (n.is_leaf()) {
      leaves.push_back(w);
    } else {
      for (int c : n.children) stack.push_back(c);
    }
  }
  std::sort(leaves.begin(), leaves.end());
  return leaves;
}

Rational o_trans(const CausalSpace& s, const CausalMeasure& m, int u, int v) {
  if (o_anc(s, v, u)) return 1;
  if (!o_anc(s, u, v)) return 0;
  Rational p = 1;
  for (int w = v; w != u; w = s.node(w).parent) p *= m.edge[w];
  return p;
}

int count_common(const std::vector<int>& a, const std::vector<int>& b) {
  int n = 0;
  auto it = b.begin();
  for (int x : a) {
    it = std::lower_bound(it, b.end(), x);
    if (it == b.end()) break;
    if (*it == x) ++n;
  }
  return n;
}

std::string ids(const CausalSpace& s, const std::vector<int>& nodes) {
  std::string out = "{";
  for (size_t i = 0; i < nodes.size(); ++i) {
    out += (i ? ", " : "") + s.node(nodes[i]).id;
  }
  return out + "}";
}

// Event positions as sorted leaf-node indices.
std::vector<int> event_leaf_nodes(const CausalSpace& s, const Event& a) {
  std::vector<int> nodes;
  nodes.reserve(a.positions.size());
  for (int p : a.positions) nodes.push_back(s.leaf_at(p));
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

struct AContext {
  std::vector<int> a_nodes;                  // leaf nodes in A
  std::vector<std::vector<int>> leaves_of;   // per node, own subtree leaf set
  std::vector<char> bifurcates;              // own straddle verdict per node
  std::vector<std::vector<int>> xs;          // own discriminants per node
  std::vector<Rational> mass;                // own discriminant mass per node
};

AContext a_context(const CausalSpace& s, const CausalMeasure& m, const Event& a) {
  AContext ctx;
  ctx.a_nodes = event_leaf_nodes(s, a);
  ctx.leaves_of.resize(s.node_count());
  ctx.bifurcates.assign(s.node_count(), 0);
  ctx.xs.resize(s.node_count());
  ctx.mass.assign(s.node_count(), Rational(0));
  for (int v = 0; v < s.node_count(); ++v) ctx.leaves_of[v] = o_subtree_leaves(s, v);
  for (int v = 0; v < s.node_count(); ++v) {
    const Node& n = s.node(v);
    if (n.is_leaf()) continue;
    bool any_in = false;
    bool any_out = false;
    for (int c : n.children) {
      int k = count_common(ctx.leaves_of[c], ctx.a_nodes);
      bool in = k > 0;
      bool out = k < static_cast<int>(ctx.leaves_of[c].size());
      if (in) {
        ctx.xs[v].push_back(c);
        ctx.mass[v] += m.edge[c];
      }
      any_in = any_in || in;
      any_out = any_out || out;
    }
    if (!(any_in && any_out)) continue;
    // Need two distinct children witnessing each side.
    for (int c1 : n.children) {
      int k1 = count_common(ctx.leaves_of[c1], ctx.a_nodes);
      if (k1 == 0) continue;
      for (int c2 : n.children) {
        if (c1 == c2) continue;
        int k2 = count_common(ctx.leaves_of[c2], ctx.a_nodes);
        if (k2 < static_cast<int>(ctx.leaves_of[c2].size())) ctx.bifurcates[v] = 1;
      }
    }
  }
  return ctx;
}

bool in_a(const AContext& ctx, int leaf_node) {
  return std::binary_search(ctx.a_nodes.begin(), ctx.a_nodes.end(), leaf_node);
}

uint64_t draw(Rng& rng, uint64_t bound) { return rng() % bound; }

}  // namespace

CheckReport check_representation_theorem(const CausalSpace& s) {
  CheckReport report{"representation", true, ""};
  int L = s.leaf_count();
  if (L > 20) {
    throw Error(Errc::TooManyLeaves,
                "representation check on " + std::to_string(L) + " leaves");
  }
  std::vector<std::vector<int>> leaves_of(s.node_count());
  for (int v = 0; v < s.node_count(); ++v) leaves_of[v] = o_subtree_leaves(s, v);

  // Independent count of representations: ways to cover the part of A below
  // v using disjoint realisations from v's subtree.
  std::vector<int> a_nodes;
  auto count_covers = [&](auto&& self, int v) -> long long {
    int k = count_common(leaves_of[v], a_nodes);
    if (k == 0) return 1;
    const Node& n = s.node(v);
    long long ways = k == static_cast<int>(leaves_of[v].size()) ? 1 : 0;  // take v whole
    if (!n.is_leaf()) {
      long long prod = 1;
      for (int c : n.children) prod *= self(self, c);
      ways += prod;
    }
    return ways;
  };

  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << L) && report.pass; ++mask) {
    a_nodes.clear();
    Event ev;
    for (int p = 0; p < L; ++p) {
      if (mask & (std::uint32_t{1} << p)) {
        ev.positions.push_back(p);
        a_nodes.push_back(s.leaf_at(p));
      }
    }
    std::sort(a_nodes.begin(), a_nodes.end());
    Representation rep = canonical_representation(s, ev);
    std::vector<int> covered;
    for (int part : rep) {
      const auto& pl = leaves_of[part];
      if (count_common(pl, a_nodes) != static_cast<int>(pl.size())) {
        report.pass = false;
        report.counterexample = "mask " + std::to_string(mask) + ": part '" + s.node(part).id +
                                "' is not inside the event";
        break;
      }
      if (part != s.root()) {
        const auto& parent_leaves = leaves_of[s.node(part).parent];
        if (count_common(parent_leaves, a_nodes) == static_cast<int>(parent_leaves.size())) {
          report.pass = false;
          report.counterexample = "mask " + std::to_string(mask) + ": part '" + s.node(part).id +
                                  "' is not maximal";
          break;
        }
      }
      covered.insert(covered.end(), pl.begin(), pl.end());
    }
    if (!report.pass) break;
    std::sort(covered.begin(), covered.end());
    if (std::adjacent_find(covered.begin(), covered.end()) != covered.end()) {
      report.pass = false;
      report.counterexample = "mask " + std::to_string(mask) + ": parts overlap in " + ids(s, rep);
      break;
    }
    if (covered != a_nodes) {
      report.pass = false;
      report.counterexample =
          "mask " + std::to_string(mask) + ": parts " + ids(s, rep) + " do not union to the event";
      break;
    }
    if (L <= 10) {
      std::vector<Representation> reps = all_representations(s, ev);
      long long expected = count_covers(count_covers, s.root());
      if (static_cast<long long>(reps.size()) != expected) {
        report.pass = false;
        report.counterexample = "mask " + std::to_string(mask) + ": enumeration finds " +
                                std::to_string(reps.size()) + " representations, expected " +
                                std::to_string(expected);
        break;
      }
      bool has_canon = false;
      std::set<Representation> seen;
      for (const Representation& r : reps) {
        seen.insert(r);
        has_canon = has_canon || r == rep;
        std::vector<int> cov;
        for (int part : r) {
          cov.insert(cov.end(), leaves_of[part].begin(), leaves_of[part].end());
        }
        std::sort(cov.begin(), cov.end());
        if (std::adjacent_find(cov.begin(), cov.end()) != cov.end() || cov != a_nodes) {
          report.pass = false;
          report.counterexample = "mask " + std::to_string(mask) + ": representation " +
                                  ids(s, r) + " is not a disjoint cover";
          break;
        }
      }
      if (report.pass && seen.size() != reps.size()) {
        report.pass = false;
        report.counterexample = "mask " + std::to_string(mask) + ": duplicate representations";
      }
      if (report.pass && !has_canon && mask != 0) {
        report.pass = false;
        report.counterexample =
            "mask " + std::to_string(mask) + ": canonical representation missing from enumeration";
      }
    }
  }
  return report;
}

std::vector<int> oracle_a_bifurcations(const CausalSpace& s, const Event& a) {
  std::vector<int> a_leaves = event_leaf_nodes(s, a);
  std::vector<int> c_leaves;
  for (int p = 0; p < s.leaf_count(); ++p) {
    int v = s.leaf_at(p);
    if (!std::binary_search(a_leaves.begin(), a_leaves.end(), v)) c_leaves.push_back(v);
  }
  if (a_leaves.empty() || c_leaves.empty()) return {};
  std::set<int> found;
  for (int x : a_leaves) {
    for (int y : c_leaves) {
      int u = x;
      int v = y;
      while (s.node(u).depth > s.node(v).depth) u = s.node(u).parent;
      while (s.node(v).depth > s.node(u).depth) v = s.node(v).parent;
      while (u != v) {
        u = s.node(u).parent;
        v = s.node(v).parent;
      }
      found.insert(u);
    }
  }
  return {found.begin(), found.end()};
}

CheckReport check_intervention_equivalence(const CausalSpace& s, const Event& a) {
  CheckReport report{"intervention-equivalence", true, ""};
  const CausalMeasure& base = s.measure();

  bool threw1 = false;
  bool threw2 = false;
  Errc code1{};
  Errc code2{};
  InterventionResult r1;
  InterventionResult r2;
  try {
    r1 = intervene(s, a);
  } catch (const Error& e) {
    threw1 = true;
    code1 = e.code;
  }
  try {
    r2 = oracle_intervene(s, a);
  } catch (const Error& e) {
    threw2 = true;
    code2 = e.code;
  }
  if (threw1 || threw2) {
    if (!(threw1 && threw2 && code1 == code2)) {
      report.pass = false;
      report.counterexample = std::string("routes disagree on rejection: ") +
                              (threw1 ? errc_name(code1) : "accepted") + " vs " +
                              (threw2 ? errc_name(code2) : "accepted");
    }
    return report;
  }

  AContext ctx = a_context(s, base, a);
  bool trivial = ctx.a_nodes.empty() || ctx.a_nodes.size() == static_cast<size_t>(s.leaf_count());

  std::vector<int> own_bifs;
  std::vector<int> own_crit;
  for (int v = 0; v < s.node_count(); ++v) {
    if (!trivial && ctx.bifurcates[v]) {
      own_bifs.push_back(v);
      if (ctx.mass[v] < 1) own_crit.push_back(v);
    }
  }
  auto same_set = [](std::vector<int> x, std::vector<int> y) {
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    return x == y;
  };
  for (const InterventionResult* r : {&r1, &r2}) {
    if (!same_set(r->bifurcations, own_bifs)) {
      report.pass = false;
      report.counterexample =
          "bifurcation set " + ids(s, r->bifurcations) + " differs from " + ids(s, own_bifs);
      return report;
    }
    if (!same_set(r->critical, own_crit)) {
      report.pass = false;
      report.counterexample =
          "critical set " + ids(s, r->critical) + " differs from " + ids(s, own_crit);
      return report;
    }
    for (const auto& [lambda, xs] : r->discriminants) {
      if (!same_set(xs, ctx.xs[lambda])) {
        report.pass = false;
        report.counterexample = "discriminants of '" + s.node(lambda).id + "' differ: " +
                                ids(s, xs) + " vs " + ids(s, ctx.xs[lambda]);
        return report;
      }
    }
  }

  auto definitional = [&](int u, int v) -> Rational {
    if (o_anc(s, v, u)) return 1;
    if (!o_anc(s, u, v)) return 0;
    bool v_meets_a = count_common(ctx.leaves_of[v], ctx.a_nodes) > 0;
    if (v_meets_a) {
      Rational g = 1;
      for (int w = s.node(v).parent;; w = s.node(w).parent) {
        if (ctx.bifurcates[w]) g *= ctx.mass[w];
        if (w == u) break;
      }
      return o_trans(s, base, u, v) / g;
    }
    for (int w = v;; w = s.node(w).parent) {
      if (ctx.bifurcates[w]) return 0;
      if (w == u) break;
    }
    return o_trans(s, base, u, v);
  };

  auto compare_pair = [&](int u, int v) {
    Rational t1 = o_trans(s, r1.measure, u, v);
    Rational t2 = o_trans(s, r2.measure, u, v);
    Rational td = definitional(u, v);
    if (t1 == t2 && t2 == td) return true;
    report.pass = false;
    report.counterexample = "transition '" + s.node(u).id + "' -> '" + s.node(v).id +
                            "': rewrite " + format_rational(t1) + ", equation route " +
                            format_rational(t2) + ", definition " + format_rational(td);
    return false;
  };

  int n = s.node_count();
  if (n <= 200) {
    for (int u = 0; u < n && report.pass; ++u) {
      for (int v = 0; v < n && report.pass; ++v) compare_pair(u, v);
    }
  } else {
    for (int v = 0; v < n && report.pass; ++v) {
      for (int w = v;; w = s.node(w).parent) {
        if (!compare_pair(w, v) || !compare_pair(v, w)) break;
        if (w == s.root()) break;
      }
    }
    for (std::uint64_t i = 0, step = 0; step < 500 && report.pass; ++step) {
      i = (i * 6364136223846793005ULL + 1442695040888963407ULL);
      int u = static_cast<int>(i % n);
      int v = static_cast<int>((i >> 32) % n);
      compare_pair(u, v);
    }
  }
  if (!report.pass) return report;

  Rational certainty = 0;
  for (int leaf : ctx.a_nodes) certainty += o_trans(s, r1.measure, s.root(), leaf);
  if (!trivial && certainty != 1) {
    report.pass = false;
    report.counterexample = "intervened mass of the event is " + format_rational(certainty);
    return report;
  }

  std::vector<char> crit(s.node_count(), 0);
  for (int v : own_crit) crit[v] = 1;
  for (int v = 0; v < s.node_count(); ++v) {
    if (v == s.root()) continue;
    if (!crit[s.node(v).parent] && r1.measure.edge[v] != base.edge[v]) {
      report.pass = false;
      report.counterexample =
          "edge into '" + s.node(v).id + "' changed below a non-critical node";
      return report;
    }
  }
  return report;
}

CheckReport check_axiom_preservation(const CausalSpace& s, const Event& a) {
  CheckReport report{"axiom-preservation", true, ""};
  InterventionResult r;
  try {
    r = intervene(s, a);
  } catch (const Error& e) {
    try {
      oracle_intervene(s, a);
      report.pass = false;
      report.counterexample =
          std::string("rewrite route rejected (") + errc_name(e.code) + ") but equation route accepted";
    } catch (const Error& e2) {
      if (e2.code != e.code) {
        report.pass = false;
        report.counterexample = std::string("routes reject differently: ") + errc_name(e.code) +
                                " vs " + errc_name(e2.code);
      }
    }
    return report;
  }

  if (r.measure.edge[s.root()] != 1) {
    report.pass = false;
    report.counterexample = "root mass is " + format_rational(r.measure.edge[s.root()]);
    return report;
  }
  for (int v = 0; v < s.node_count(); ++v) {
    if (r.measure.edge[v] < 0 || r.measure.edge[v] > 1) {
      report.pass = false;
      report.counterexample = "edge into '" + s.node(v).id + "' carries " +
                              format_rational(r.measure.edge[v]);
      return report;
    }
  }
  for (int v = 0; v < s.node_count(); ++v) {
    const Node& n = s.node(v);
    if (n.is_leaf()) continue;
    Rational sum = 0;
    for (int c : n.children) sum += r.measure.edge[c];
    if (sum != 1) {
      report.pass = false;
      report.counterexample =
          "children of '" + n.id + "' sum to " + format_rational(sum);
      return report;
    }
  }
  // Product rule along every ancestor chain.
  for (int v = 0; v < s.node_count() && report.pass; ++v) {
    std::vector<int> chain;
    for (int w = v;; w = s.node(w).parent) {
      chain.push_back(w);
      if (w == s.root()) break;
    }
    // chain runs upward from v; pick u above m_ above v.
    for (size_t i = 0; i + 1 < chain.size() && report.pass; ++i) {
      for (size_t j = i + 1; j < chain.size(); ++j) {
        Rational lhs = o_trans(s, r.measure, chain[j], chain[0]);
        Rational rhs =
            o_trans(s, r.measure, chain[j], chain[i]) * o_trans(s, r.measure, chain[i], chain[0]);
        if (lhs != rhs) {
          report.pass = false;
          report.counterexample = "product rule fails through '" + s.node(chain[i]).id + "'";
          break;
        }
      }
    }
  }
  if (!report.pass) return report;

  ValidationReport vr = validate_axioms(s, r.measure);
  if (!vr.all_pass()) {
    for (const AxiomCheck& c : vr.checks) {
      if (!c.pass) {
        report.pass = false;
        report.counterexample = "axiom " + c.axiom + " fails: " + c.note;
        break;
      }
    }
  }
  return report;
}

SpaceSpec random_space_spec(Rng& rng, const RandomSpaceParams& params) {
  SpaceSpec spec;
  int next_id = 0;
  int leaf_count = 0;
  int internal_count = 0;
  struct Pending {
    std::string id;
    int depth;
  };
  std::vector<Pending> queue{{"S0", 0}};
  spec.root = "S0";
  while (!queue.empty()) {
    Pending cur = queue.front();
    queue.erase(queue.begin());
    bool must_leaf = cur.depth >= params.max_depth || internal_count >= 40;
    bool internal;
    if (cur.depth == 0) {
      internal = true;
    } else if (must_leaf) {
      internal = false;
    } else {
      internal = draw(rng, 100) < static_cast<uint64_t>(std::max(0, 55 - 8 * cur.depth));
    }
    if (!internal) {
      ++leaf_count;
      std::string label = "o" + std::to_string(leaf_count);
      spec.outcomes.push_back(label);
      spec.leaves.push_back({cur.id, label});
      continue;
    }
    ++internal_count;
    spec.nodes.push_back(cur.id);
    int k = 2 + static_cast<int>(draw(rng, static_cast<uint64_t>(params.max_branch - 1)));
    int den = 2 + static_cast<int>(draw(rng, static_cast<uint64_t>(params.max_denominator - 1)));
    std::vector<int> cuts{0, den};
    for (int i = 0; i < k - 1; ++i) cuts.push_back(static_cast<int>(draw(rng, den + 1)));
    std::sort(cuts.begin(), cuts.end());
    for (int i = 0; i < k; ++i) {
      std::string child = "S" + std::to_string(++next_id);
      spec.edges.push_back({cur.id, child, Rational(cuts[i + 1] - cuts[i], den)});
      queue.push_back({child, cur.depth + 1});
    }
  }
  return spec;
}

CausalSpace random_space(Rng& rng, const RandomSpaceParams& params) {
  return build_space(random_space_spec(rng, params));
}

Event random_event(Rng& rng, const CausalSpace& s) {
  int L = s.leaf_count();
  Event e;
  for (int p = 0; p < L; ++p) {
    if (draw(rng, 2) == 1) e.positions.push_back(p);
  }
  if (e.positions.empty()) {
    e.positions.push_back(static_cast<int>(draw(rng, L)));
  } else if (static_cast<int>(e.positions.size()) == L) {
    e.positions.erase(e.positions.begin() + static_cast<size_t>(draw(rng, L)));
  }
  return e;
}

VarSpec random_cut_variable(Rng& rng, const CausalSpace& s, const std::string& name) {
  VarSpec vs;
  vs.name = name;
  std::vector<int> stack{s.root()};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    const Node& n = s.node(v);
    if (n.is_leaf() || draw(rng, 100) < 35) {
      vs.assignments.emplace_back(n.id, "v" + std::to_string(draw(rng, 3)));
      continue;
    }
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(*it);
  }
  return vs;
}

CtreeDocument random_document(Rng& rng, const RandomSpaceParams& params) {
  CtreeDocument doc;
  doc.space = random_space_spec(rng, params);
  CausalSpace space = build_space(doc.space);
  uint64_t nvars = draw(rng, 3);
  for (uint64_t i = 0; i < nvars; ++i) {
    doc.vars.push_back(random_cut_variable(rng, space, "V" + std::to_string(i)));
  }
  uint64_t nevents = draw(rng, 3);
  for (uint64_t i = 0; i < nevents; ++i) {
    Event e = random_event(rng, space);
    doc.events.push_back({"E" + std::to_string(i), event_labels(space, e)});
  }
  return doc;
}

std::vector<CheckReport> run_all_checks(
    const CausalSpace& s, const std::vector<std::pair<std::string, Event>>& events) {
  std::vector<CheckReport> reports;
  if (s.leaf_count() <= 12) {
    reports.push_back(check_representation_theorem(s));
  } else {
    reports.push_back({"representation", true,
                       "skipped: " + std::to_string(s.leaf_count()) +
                           " leaves exceeds the exhaustive bound"});
  }
  for (const auto& [name, event] : events) {
    CheckReport eq = check_intervention_equivalence(s, event);
    eq.name += " (" + name + ")";
    reports.push_back(std::move(eq));
    CheckReport ax = check_axiom_preservation(s, event);
    ax.name += " (" + name + ")";
    reports.push_back(std::move(ax));
  }
  return reports;
}

}  // namespace ctree

#include "ctree/events.hpp"

#include <algorithm>

#include "ctree/errors.hpp"

namespace ctree {

Event make_event(const CausalSpace& s, const std::vector<std::string>& labels) {
  Event e;
  e.positions.reserve(labels.size());
  for (const auto& label : labels) {
    e.positions.push_back(s.position_of_outcome(s.outcome_index(label)));
  }
  std::sort(e.positions.begin(), e.positions.end());
  e.positions.erase(std::unique(e.positions.begin(), e.positions.end()), e.positions.end());
  return e;
}

Event event_of_node(const CausalSpace& s, int node) {
  const Node& n = s.node(node);
  Event e;
  e.positions.reserve(n.leaf_end - n.leaf_begin);
  for (int p = n.leaf_begin; p < n.leaf_end; ++p) e.positions.push_back(p);
  return e;
}

Event full_event(const CausalSpace& s) { return event_of_node(s, s.root()); }

Event complement_event(const CausalSpace& s, const Event& a) {
  Event e;
  e.positions.reserve(s.leaf_count() - a.positions.size());
  auto it = a.positions.begin();
  for (int p = 0; p < s.leaf_count(); ++p) {
    if (it != a.positions.end() && *it == p) {
      ++it;
    } else {
      e.positions.push_back(p);
    }
  }
  return e;
}

Event intersect_event(const Event& a, const Event& b) {
  Event e;
  std::set_intersection(a.positions.begin(), a.positions.end(), b.positions.begin(),
                        b.positions.end(), std::back_inserter(e.positions));
  return e;
}

Event union_event(const Event& a, const Event& b) {
  Event e;
  std::set_union(a.positions.begin(), a.positions.end(), b.positions.begin(), b.positions.end(),
                 std::back_inserter(e.positions));
  return e;
}

bool is_full(const CausalSpace& s, const Event& a) {
  return static_cast<int>(a.positions.size()) == s.leaf_count();
}

std::vector<std::string> event_labels(const CausalSpace& s, const Event& a) {
  // Positions are depth-first; report in declaration order instead.
  std::vector<int> indices;
  indices.reserve(a.positions.size());
  for (int p : a.positions) indices.push_back(s.leaf_at(p));
  std::vector<std::string> out;
  out.reserve(indices.size());
  std::vector<char> member(s.outcomes().size(), 0);
  for (int i : indices) member[s.node(i).outcome] = 1;
  for (size_t oi = 0; oi < s.outcomes().size(); ++oi) {
    if (member[oi]) out.push_back(s.outcomes()[oi]);
  }
  return out;
}

int members_in_node(const Event& a, const Node& n) {
  auto lo = std::lower_bound(a.positions.begin(), a.positions.end(), n.leaf_begin);
  auto hi = std::lower_bound(lo, a.positions.end(), n.leaf_end);
  return static_cast<int>(hi - lo);
}

bool node_intersects(const Event& a, const Node& n) { return members_in_node(a, n) > 0; }

bool node_inside(const Event& a, const Node& n) {
  return members_in_node(a, n) == n.leaf_end - n.leaf_begin;
}

Representation canonical_representation(const CausalSpace& s, const Event& a) {
  Representation parts;
  std::vector<int> stack{s.root()};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    const Node& n = s.node(v);
    int k = members_in_node(a, n);
    if (k == 0) continue;
    if (k == n.leaf_end - n.leaf_begin) {
      parts.push_back(v);
      continue;
    }
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(*it);
  }
  std::sort(parts.begin(), parts.end(),
            [&](int x, int y) { return s.node(x).leaf_begin < s.node(y).leaf_begin; });
  return parts;
}

namespace {

// Every full cut of the subtree rooted at v: {v} itself, or any combination
// of cuts of its children.
void subtree_cuts(const CausalSpace& s, int v, std::vector<Representation>& out) {
  out.push_back({v});
  const Node& n = s.node(v);
  if (n.is_leaf()) return;
  std::vector<std::vector<Representation>> child_cuts;
  child_cuts.reserve(n.children.size());
  for (int c : n.children) {
    std::vector<Representation> cuts;
    subtree_cuts(s, c, cuts);
    child_cuts.push_back(std::move(cuts));
  }
  std::vector<Representation> combos{{}};
  for (const auto& cuts : child_cuts) {
    std::vector<Representation> next;
    next.reserve(combos.size() * cuts.size());
    for (const auto& base : combos) {
      for (const auto& cut : cuts) {
        Representation merged = base;
        merged.insert(merged.end(), cut.begin(), cut.end());
        next.push_back(std::move(merged));
      }
    }
    combos = std::move(next);
  }
  for (auto& c : combos) out.push_back(std::move(c));
}

}  // namespace

std::vector<Representation> all_representations(const CausalSpace& s, const Event& a) {
  Representation canon = canonical_representation(s, a);
  std::vector<std::vector<Representation>> per_part;
  per_part.reserve(canon.size());
  for (int v : canon) {
    std::vector<Representation> cuts;
    subtree_cuts(s, v, cuts);
    per_part.push_back(std::move(cuts));
  }
  std::vector<Representation> result{{}};
  for (const auto& cuts : per_part) {
    std::vector<Representation> next;
    next.reserve(result.size() * cuts.size());
    for (const auto& base : result) {
      for (const auto& cut : cuts) {
        Representation merged = base;
        merged.insert(merged.end(), cut.begin(), cut.end());
        next.push_back(std::move(merged));
      }
    }
    result = std::move(next);
  }
  for (auto& rep : result) {
    std::sort(rep.begin(), rep.end(),
              [&](int x, int y) { return s.node(x).leaf_begin < s.node(y).leaf_begin; });
  }
  return result;
}

std::vector<Event> sigma_algebra(const CausalSpace& s) {
  int L = s.leaf_count();
  if (L > 20) {
    throw Error(Errc::TooManyLeaves,
                "sigma algebra on " + std::to_string(L) + " leaves exceeds the 20-leaf guard");
  }
  std::vector<Event> events;
  events.reserve(std::size_t{1} << L);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << L); ++mask) {
    Event e;
    for (int p = 0; p < L; ++p) {
      if (mask & (std::uint32_t{1} << p)) e.positions.push_back(p);
    }
    events.push_back(std::move(e));
  }
  return events;
}

Rational prob(const CausalSpace& s, const CausalMeasure& m, const Event& a, int given) {
  const Node& g = s.node(given);
  auto lo = std::lower_bound(a.positions.begin(), a.positions.end(), g.leaf_begin);
  auto hi = std::lower_bound(lo, a.positions.end(), g.leaf_end);
  Rational total = 0;
  for (auto it = lo; it != hi; ++it) {
    total += transition_prob(s, m, given, s.leaf_at(*it));
  }
  return total;
}

Rational prob(const CausalSpace& s, const Event& a, int given) {
  return prob(s, s.measure(), a, given);
}

std::vector<Rational> condition(const CausalSpace& s, const CausalMeasure& m, const Event& b) {
  Rational total = prob(s, m, b, s.root());
  if (total == 0) {
    throw Error(Errc::ConditionOnNullEvent, "conditioning event has probability zero");
  }
  std::vector<Rational> masses(s.leaf_count(), Rational(0));
  for (int p : b.positions) {
    masses[p] = transition_prob(s, m, s.root(), s.leaf_at(p)) / total;
  }
  return masses;
}

std::vector<Rational> condition(const CausalSpace& s, const Event& b) {
  return condition(s, s.measure(), b);
}

}  // namespace ctree

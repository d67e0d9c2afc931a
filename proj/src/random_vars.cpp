#include "ctree/random_vars.hpp"

#include <algorithm>

#include "ctree/errors.hpp"

namespace ctree {

int RandomVariable::value_index(const std::string& value) const {
  auto it = std::find(codomain.begin(), codomain.end(), value);
  if (it == codomain.end()) {
    throw Error(Errc::ValueOutsideCodomain,
                "variable '" + name + "' has no value '" + value + "'");
  }
  return static_cast<int>(it - codomain.begin());
}

RandomVariable define_variable(
    const CausalSpace& s, const std::string& name, const std::vector<std::string>& codomain,
    const std::vector<std::pair<std::string, std::string>>& assignments) {
  if (name.empty()) {
    throw Error(Errc::SemanticError, "variable name must be nonempty");
  }
  if (codomain.empty()) {
    throw Error(Errc::SemanticError, "variable '" + name + "' has an empty codomain");
  }
  for (size_t i = 0; i < codomain.size(); ++i) {
    for (size_t j = i + 1; j < codomain.size(); ++j) {
      if (codomain[i] == codomain[j]) {
        throw Error(Errc::SemanticError,
                    "variable '" + name + "' repeats codomain value '" + codomain[i] + "'");
      }
    }
  }
  RandomVariable rv;
  rv.name = name;
  rv.codomain = codomain;
  std::vector<int> value_at(s.node_count(), -1);
  for (const auto& [node_id, value] : assignments) {
    int v = s.index_of(node_id);
    int vi = rv.value_index(value);
    if (value_at[v] != -1) {
      throw Error(Errc::DuplicateAssignmentOnPath,
                  "variable '" + name + "' assigns node '" + node_id + "' twice");
    }
    value_at[v] = vi;
    rv.assignments.push_back({v, vi});
  }
  // Cut property: exactly one assigned node on every root-to-leaf path.
  std::vector<std::pair<int, int>> stack{{s.root(), value_at[s.root()] != -1 ? 1 : 0}};
  while (!stack.empty()) {
    auto [v, count] = stack.back();
    stack.pop_back();
    const Node& n = s.node(v);
    if (count > 1) {
      throw Error(Errc::DuplicateAssignmentOnPath, "variable '" + name +
                                                       "' assigns twice on the path to '" +
                                                       n.id + "'");
    }
    if (n.is_leaf()) {
      if (count == 0) {
        throw Error(Errc::NotACut, "variable '" + name + "' is unassigned on the path to leaf '" +
                                       n.id + "'");
      }
      continue;
    }
    for (int c : n.children) {
      stack.push_back({c, count + (value_at[c] != -1 ? 1 : 0)});
    }
  }
  std::sort(rv.assignments.begin(), rv.assignments.end(), [&](Assignment a, Assignment b) {
    return s.node(a.node).leaf_begin < s.node(b.node).leaf_begin;
  });
  return rv;
}

Event preimage_by_index(const CausalSpace& s, const RandomVariable& rv, int value) {
  Event e;
  for (const Assignment& a : rv.assignments) {
    if (a.value != value) continue;
    const Node& n = s.node(a.node);
    for (int p = n.leaf_begin; p < n.leaf_end; ++p) e.positions.push_back(p);
  }
  std::sort(e.positions.begin(), e.positions.end());
  return e;
}

Event preimage(const CausalSpace& s, const RandomVariable& rv, const std::string& value) {
  return preimage_by_index(s, rv, rv.value_index(value));
}

bool check_realisable_strict(const CausalSpace& s, const RandomVariable& rv,
                             const std::vector<std::vector<std::string>>& members) {
  for (const auto& member : members) {
    Event u;
    for (const auto& value : member) {
      u = union_event(u, preimage(s, rv, value));
    }
    if (u.empty()) continue;
    // A realisation has a contiguous leaf range matched by some node.
    int lb = u.positions.front();
    int le = u.positions.back() + 1;
    if (le - lb != u.size()) return false;
    bool found = false;
    for (int v = 0; v < s.node_count() && !found; ++v) {
      found = s.node(v).leaf_begin == lb && s.node(v).leaf_end == le;
    }
    if (!found) return false;
  }
  return true;
}

BeliefState::BeliefState(const CausalSpace& s, std::vector<RandomVariable> vars)
    : space_(&s), vars_(std::move(vars)), measure_(s.measure()), evidence_(full_event(s)) {}

const RandomVariable& BeliefState::variable(const std::string& name) const {
  for (const auto& rv : vars_) {
    if (rv.name == name) return rv;
  }
  throw Error(Errc::UnknownVariable, "no variable named '" + name + "'");
}

void BeliefState::observe(const std::string& var, const std::string& value) {
  const RandomVariable& rv = variable(var);
  Event next = intersect_event(evidence_, preimage(*space_, rv, value));
  if (prob(*space_, measure_, next, space_->root()) == 0) {
    throw Error(Errc::ObserveNullEvent,
                "observing " + var + "=" + value + " contradicts the current belief");
  }
  evidence_ = next;
  log_.push_back({UpdateStep::Kind::Observe, var, value});
}

void BeliefState::act(const std::string& var, const std::string& value) {
  const RandomVariable& rv = variable(var);
  Event a = preimage(*space_, rv, value);
  InterventionResult r = intervene(*space_, measure_, a);
  Event next = intersect_event(evidence_, a);
  if (prob(*space_, r.measure, next, space_->root()) == 0) {
    throw Error(Errc::ObserveNullEvent,
                "acting " + var + "=" + value + " contradicts the accumulated evidence");
  }
  measure_ = std::move(r.measure);
  evidence_ = std::move(next);
  log_.push_back({UpdateStep::Kind::Act, var, value});
}

std::vector<std::pair<std::string, Rational>> BeliefState::posterior(
    const std::string& var) const {
  const RandomVariable& rv = variable(var);
  Rational total = prob(*space_, measure_, evidence_, space_->root());
  std::vector<std::pair<std::string, Rational>> out;
  out.reserve(rv.codomain.size());
  for (size_t vi = 0; vi < rv.codomain.size(); ++vi) {
    Event e = intersect_event(evidence_, preimage_by_index(*space_, rv, static_cast<int>(vi)));
    out.emplace_back(rv.codomain[vi], prob(*space_, measure_, e, space_->root()) / total);
  }
  return out;
}

std::vector<std::pair<std::string, Rational>> BeliefState::marginal(
    const std::string& var) const {
  return posterior(var);
}

std::vector<Rational> BeliefState::leaf_masses() const {
  return condition(*space_, measure_, evidence_);
}

BeliefState BeliefState::replay(const CausalSpace& s, std::vector<RandomVariable> vars,
                                const std::vector<UpdateStep>& log) {
  BeliefState b(s, std::move(vars));
  for (const UpdateStep& step : log) {
    if (step.kind == UpdateStep::Kind::Observe) {
      b.observe(step.var, step.value);
    } else {
      b.act(step.var, step.value);
    }
  }
  return b;
}

}  // namespace ctree

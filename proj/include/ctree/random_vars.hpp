#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ctree/events.hpp"
#include "ctree/interventions.hpp"
#include "ctree/tree.hpp"

namespace ctree {

struct Assignment {
  int node;
  int value;  // index into the codomain
};

// A variable is a labelled cut: every root-to-leaf path carries exactly one
// assignment, so the variable resolves in every realisation chain.
struct RandomVariable {
  std::string name;
  std::vector<std::string> codomain;
  std::vector<Assignment> assignments;  // depth-first order

  // Index of a codomain value; ValueOutsideCodomain when absent.
  int value_index(const std::string& value) const;
};

// Validates the cut property. Errors: UnknownNode, ValueOutsideCodomain,
// DuplicateAssignmentOnPath (also for a node assigned twice), NotACut with a
// witness leaf whose path carries no assignment.
RandomVariable define_variable(const CausalSpace& s, const std::string& name,
                               const std::vector<std::string>& codomain,
                               const std::vector<std::pair<std::string, std::string>>& assignments);

// Union of the leaves below nodes assigned the value.
Event preimage(const CausalSpace& s, const RandomVariable& rv, const std::string& value);
Event preimage_by_index(const CausalSpace& s, const RandomVariable& rv, int value);

// Strict realisability: every preimage union named by a member of the given
// collection must be a realisation of the tree. Members are value subsets;
// the empty subset and the full codomain are trivially fine.
bool check_realisable_strict(const CausalSpace& s, const RandomVariable& rv,
                             const std::vector<std::vector<std::string>>& members);

struct UpdateStep {
  enum class Kind { Observe, Act };
  Kind kind;
  std::string var;
  std::string value;
};

// Belief about the space: a working measure plus accumulated evidence.
// observe conditions on evidence only; act first makes the preimage certain
// by intervention, then records it as evidence. The space must outlive the
// belief state.
class BeliefState {
 public:
  BeliefState(const CausalSpace& s, std::vector<RandomVariable> vars);

  const CausalSpace& space() const { return *space_; }
  const CausalMeasure& current_measure() const { return measure_; }
  const Event& evidence() const { return evidence_; }
  const std::vector<UpdateStep>& log() const { return log_; }
  const RandomVariable& variable(const std::string& name) const;  // UnknownVariable

  // ObserveNullEvent when the new evidence has probability zero.
  void observe(const std::string& var, const std::string& value);

  // TrivialEvent / NullDiscriminants as intervene; ObserveNullEvent when the
  // prior evidence is impossible after the act.
  void act(const std::string& var, const std::string& value);

  // Distribution of a variable given current measure and evidence, in
  // codomain order.
  std::vector<std::pair<std::string, Rational>> posterior(const std::string& var) const;
  std::vector<std::pair<std::string, Rational>> marginal(const std::string& var) const;

  // Leaf masses conditioned on the evidence, by leaf position.
  std::vector<Rational> leaf_masses() const;

  static BeliefState replay(const CausalSpace& s, std::vector<RandomVariable> vars,
                            const std::vector<UpdateStep>& log);

 private:
  const CausalSpace* space_;
  std::vector<RandomVariable> vars_;
  CausalMeasure measure_;
  Event evidence_;
  std::vector<UpdateStep> log_;
};

}  // namespace ctree

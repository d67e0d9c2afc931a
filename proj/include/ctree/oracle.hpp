#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ctree/events.hpp"
#include "ctree/parser.hpp"
#include "ctree/tree.hpp"

namespace ctree {

// Verification routines deliberately re-derive everything they check through
// plain parent walks and explicit leaf sets, sharing no traversal helpers
// with the code under test.

struct CheckReport {
  std::string name;
  bool pass = true;
  std::string counterexample;  // empty when pass
};

// Exhaustively checks, for every union of atoms, that the canonical
// representation is a valid, maximal, disjoint cover, and (on small spaces)
// that the enumeration of all representations is sound and complete.
// TooManyLeaves beyond 20 leaves.
CheckReport check_representation_theorem(const CausalSpace& s);

// Recomputes bifurcations, discriminants and critical sets from first
// principles, runs both intervention routes, and compares every node-pair
// transition against the defining equation. Also checks certainty of A and
// that only edges at critical bifurcations changed. When the intervention is
// rejected, both routes must reject it identically.
CheckReport check_intervention_equivalence(const CausalSpace& s, const Event& a);

// Validates the intervened measure against the measure axioms with
// independent sums and transition products.
CheckReport check_axiom_preservation(const CausalSpace& s, const Event& a);

// Independent straddle scan used by property tests against a_bifurcations.
std::vector<int> oracle_a_bifurcations(const CausalSpace& s, const Event& a);

struct RandomSpaceParams {
  int max_depth = 6;
  int max_branch = 3;  // at least 2 children per internal node
  int max_denominator = 12;
};

using Rng = std::mt19937_64;

SpaceSpec random_space_spec(Rng& rng, const RandomSpaceParams& params = {});
CausalSpace random_space(Rng& rng, const RandomSpaceParams& params = {});

// Nonempty proper subset of the atoms.
Event random_event(Rng& rng, const CausalSpace& s);

// A random labelled cut.
VarSpec random_cut_variable(Rng& rng, const CausalSpace& s, const std::string& name);

// A document with a random space, up to two variables and up to two events.
CtreeDocument random_document(Rng& rng, const RandomSpaceParams& params = {});

// The standard battery for one space and a set of named events.
std::vector<CheckReport> run_all_checks(const CausalSpace& s,
                                        const std::vector<std::pair<std::string, Event>>& events);

}  // namespace ctree

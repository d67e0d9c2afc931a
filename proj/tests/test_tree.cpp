#include <doctest.h>

#include <functional>

#include "ctree/errors.hpp"
#include "ctree/tree.hpp"
#include "helpers.hpp"

using namespace ctree;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code;
  }
  FAIL("expected a ctree::Error");
  return Errc::SemanticError;  // unreachable
}

}  // namespace

TEST_CASE("urn base law matches the frozen table") {
  CausalSpace s = th::urn();
  CHECK(s.leaf_count() == 8);
  CHECK(th::masses(s) ==
        th::table({"9/32", "3/32", "1/32", "3/32", "1/32", "3/32", "9/32", "3/32"}));
  std::vector<LeafMass> lm = leaf_masses(s);
  Rational total = 0;
  for (const auto& x : lm) total += x.mass;
  CHECK(total == 1);
  CHECK(lm[0].outcome == "no_left_black");
  CHECK(lm[0].mass == Rational(9, 32));
}

TEST_CASE("single-node space is valid and certain") {
  CausalSpace s = build_space(th::single_spec());
  CHECK(s.leaf_count() == 1);
  CHECK(s.node_count() == 1);
  CHECK(transition_prob(s, s.root(), s.root()) == 1);
  CHECK(validate_axioms(s).all_pass());
}

TEST_CASE("transition probabilities follow paths") {
  CausalSpace s = th::fixture();
  int s0 = s.index_of("S0");
  CHECK(transition_prob(s, s0, s.index_of("S12")) == Rational(3, 32));
  CHECK(transition_prob(s, s.index_of("S2"), s.index_of("S12")) == Rational(3, 16));
  // Past is certain, incomparables are impossible.
  CHECK(transition_prob(s, s.index_of("S12"), s0) == 1);
  CHECK(transition_prob(s, s.index_of("S12"), s.index_of("S12")) == 1);
  CHECK(transition_prob(s, s.index_of("S1"), s.index_of("S2")) == 0);
  CHECK(transition_prob(s, s.index_of("S7"), s.index_of("S16")) == 0);
}

TEST_CASE("exactly one causal relation holds per node pair") {
  CausalSpace s = th::urn();
  for (int u = 0; u < s.node_count(); ++u) {
    for (int v = 0; v < s.node_count(); ++v) {
      int rels = 0;
      if (u == v) ++rels;
      if (precedes(s, u, v)) ++rels;
      if (precedes(s, v, u)) ++rels;
      if (incomparable(s, u, v)) ++rels;
      CHECK(rels == 1);
    }
  }
}

TEST_CASE("product rule holds along every chain") {
  CausalSpace s = th::fixture();
  for (int v = 0; v < s.node_count(); ++v) {
    for (int m = 0; m < s.node_count(); ++m) {
      for (int u = 0; u < s.node_count(); ++u) {
        if (!(precedes_or_equal(s, u, m) && precedes_or_equal(s, m, v))) continue;
        CHECK(transition_prob(s, u, v) == transition_prob(s, u, m) * transition_prob(s, m, v));
      }
    }
  }
}

TEST_CASE("validation report covers every axiom on a sound space") {
  ValidationReport r = validate_axioms(th::barometer());
  CHECK(r.all_pass());
  for (const char* axiom : {"R1", "R2", "R3", "R4", "C1", "C2", "C3", "C4"}) {
    const AxiomCheck* c = r.find(axiom);
    REQUIRE(c != nullptr);
    CHECK(c->pass);
  }
  CHECK(r.find("R4")->note.find("finite") != std::string::npos);
}

TEST_CASE("build rejects malformed specs with specific codes") {
  SpaceSpec s = th::urn_spec();
  SUBCASE("edge sums must be exactly one") {
    s.edges[2].p = Rational(1, 3);
    CHECK(code_of([&] { build_space(s); }) == Errc::EdgeSumNotOne);
  }
  SUBCASE("probabilities stay in range") {
    s.edges[0].p = Rational(3, 2);
    s.edges[1].p = Rational(-1, 2);
    CHECK(code_of([&] { build_space(s); }) == Errc::ProbOutOfRange);
  }
  SUBCASE("duplicate node id") {
    s.nodes.push_back("S3");
    CHECK(code_of([&] { build_space(s); }) == Errc::DuplicateId);
  }
  SUBCASE("duplicate outcome") {
    s.outcomes.push_back("no_left_black");
    CHECK(code_of([&] { build_space(s); }) == Errc::DuplicateId);
  }
  SUBCASE("two parents for one node") {
    s.edges.push_back({"S2", "S3", Rational(0)});
    CHECK(code_of([&] { build_space(s); }) == Errc::DuplicateId);
  }
  SUBCASE("unreachable node") {
    s.nodes.push_back("S99");
    CHECK(code_of([&] { build_space(s); }) == Errc::OrphanNode);
  }
  SUBCASE("internal node without children") {
    // Remove the leaves under S6 and S6's edges; S6 stays declared internal.
    SpaceSpec t = th::urn_spec();
    t.edges.pop_back();
    t.edges.pop_back();
    t.leaves.pop_back();
    t.leaves.pop_back();
    t.outcomes.pop_back();
    t.outcomes.pop_back();
    CHECK(code_of([&] { build_space(t); }) == Errc::LeafWithoutOutcome);
  }
  SUBCASE("unknown outcome on a leaf") {
    s.leaves[0].outcome = "nope";
    CHECK(code_of([&] { build_space(s); }) == Errc::UnknownOutcome);
  }
  SUBCASE("outcome declared but never carried") {
    s.outcomes.push_back("ghost");
    CHECK(code_of([&] { build_space(s); }) == Errc::SemanticError);
  }
  SUBCASE("edge into the root") {
    s.edges.push_back({"S3", "S0", Rational(0)});
    CHECK(code_of([&] { build_space(s); }) == Errc::SemanticError);
  }
  SUBCASE("self edge") {
    s.edges.push_back({"S3", "S3", Rational(0)});
    CHECK(code_of([&] { build_space(s); }) == Errc::SemanticError);
  }
  SUBCASE("unknown edge endpoint") {
    s.edges.push_back({"S3", "S77", Rational(0)});
    CHECK(code_of([&] { build_space(s); }) == Errc::UnknownNode);
  }
}

TEST_CASE("a single child duplicates its parent's realisation") {
  SpaceSpec s;
  s.outcomes = {"a", "b"};
  s.root = "r";
  s.nodes = {"r", "m"};
  s.leaves = {{"x", "a"}, {"y", "b"}};
  s.edges = {{"r", "m", Rational(1)}, {"m", "x", Rational(1, 2)}, {"m", "y", Rational(1, 2)}};
  // r and m would both be {a, b}: realisations are distinct sets.
  try {
    build_space(s);
    FAIL("expected DuplicateRealisation");
  } catch (const Error& e) {
    CHECK(e.code == Errc::DuplicateRealisation);
  }
}

TEST_CASE("raw-space validation pinpoints axiom failures") {
  RawSpace raw;
  raw.outcomes = {"a", "b", "c"};
  raw.nodes = {{"r", "", {"a", "b", "c"}},
               {"u", "r", {"a", "b"}},
               {"v", "r", {"c"}},
               {"x", "u", {"a"}},
               {"y", "u", {"b"}}};
  raw.edges = {{"r", "u", Rational(1, 2)},
               {"r", "v", Rational(1, 2)},
               {"u", "x", Rational(1, 3)},
               {"u", "y", Rational(2, 3)}};

  SUBCASE("sound raw space passes") {
    ValidationReport r = validate_axioms(raw);
    CHECK(r.all_pass());
  }
  SUBCASE("R1: root must carry the whole sample space") {
    raw.nodes[0].outcome_set = {"a", "b"};
    ValidationReport r = validate_axioms(raw);
    CHECK_FALSE(r.find("R1")->pass);
    CHECK(r.find("R1")->note.find("c") != std::string::npos);
  }
  SUBCASE("R2: siblings may not overlap") {
    raw.nodes[2].outcome_set = {"b", "c"};
    ValidationReport r = validate_axioms(raw);
    CHECK_FALSE(r.find("R2")->pass);
  }
  SUBCASE("R3: children must partition the parent") {
    raw.nodes[1].outcome_set = {"a"};
    ValidationReport r = validate_axioms(raw);
    CHECK_FALSE(r.find("R3")->pass);
  }
  SUBCASE("C3: edge probabilities must sum to one") {
    raw.edges[2].p = Rational(1, 2);
    raw.edges[3].p = Rational(1, 4);
    ValidationReport r = validate_axioms(raw);
    CHECK_FALSE(r.find("C3")->pass);
    CHECK(r.find("C3")->note.find("u") != std::string::npos);
  }
  SUBCASE("atoms: childless nodes carry single outcomes") {
    raw.nodes[2].outcome_set = {"c", "b"};
    raw.nodes[1].outcome_set = {"a"};
    raw.nodes.erase(raw.nodes.begin() + 3, raw.nodes.end());
    raw.edges.erase(raw.edges.begin() + 2, raw.edges.end());
    ValidationReport r = validate_axioms(raw);
    CHECK_FALSE(r.find("atom-leaves")->pass);
  }
  SUBCASE("structure: parent cycles are reported, axiom checks skipped") {
    raw.nodes[1].parent = "x";
    ValidationReport r = validate_axioms(raw);
    CHECK_FALSE(r.find("tree")->pass);
    CHECK_FALSE(r.all_pass());
  }
}

TEST_CASE("leaf masses on the barometer sum to one and match paths") {
  CausalSpace s = th::barometer();
  CHECK(th::masses(s) ==
        th::table({"3/16", "1/16", "1/16", "3/16", "3/16", "1/16", "1/16", "3/16"}));
}

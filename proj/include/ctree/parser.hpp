#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ctree/events.hpp"
#include "ctree/interventions.hpp"
#include "ctree/random_vars.hpp"
#include "ctree/tree.hpp"

namespace ctree {

struct VarSpec {
  std::string name;
  std::vector<std::pair<std::string, std::string>> assignments;  // node id -> value
};

struct EventSpec {
  std::string name;
  std::vector<std::string> labels;
};

// Syntactic content of a document, before semantic construction.
struct CtreeDocument {
  SpaceSpec space;
  std::vector<VarSpec> vars;
  std::vector<EventSpec> events;
};

// Grammar pass only. Throws ParseError with a 1-based line and column;
// column 0 refers to the whole line.
CtreeDocument parse_document(const std::string& text);

struct ParsedSpace {
  CausalSpace space;
  std::vector<RandomVariable> vars;
  std::vector<std::pair<std::string, Event>> events;

  const RandomVariable* find_var(const std::string& name) const;
  const Event* find_event(const std::string& name) const;
};

// Grammar pass plus semantic construction. Semantic failures rethrow as
// ParseError keeping their code, located at the declaration line of the
// offending entity.
ParsedSpace parse(const std::string& text);
ParsedSpace load_file(const std::string& path);  // IoError on unreadable file

// Canonical text: header, outcomes in declaration order, root marker,
// internal nodes in depth-first preorder, leaves in depth-first order, edges
// in depth-first preorder of the child, then variables and events.
// serialize(parse(serialize(x))) is byte-identical to serialize(x).
std::string serialize(const ParsedSpace& ps);
std::string serialize(const CausalSpace& s, const std::vector<RandomVariable>& vars,
                      const std::vector<std::pair<std::string, Event>>& events);

// Writer preserving document declaration order; used for generated documents.
std::string write_document(const CtreeDocument& doc);

// Structural equality through canonical form.
bool equivalent(const ParsedSpace& a, const ParsedSpace& b);

struct DotOptions {
  const InterventionResult* intervention = nullptr;  // style an intervened measure
  const Event* highlight = nullptr;                  // fill member leaves
};

// Graphviz rendering with deterministic node and edge order. Edge labels
// show the intervened probabilities when an intervention is given; edges
// forced from positive to zero are dashed and critical bifurcations get a
// heavy outline.
std::string to_dot(const CausalSpace& s, const DotOptions& opts = {});

}  // namespace ctree

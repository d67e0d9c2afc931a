#include <algorithm>
#include <sstream>

#include "ctree/parser.hpp"
#include "ctree/rational.hpp"

namespace ctree {

std::string to_dot(const CausalSpace& s, const DotOptions& opts) {
  const CausalMeasure& base = s.measure();
  const CausalMeasure& shown = opts.intervention ? opts.intervention->measure : base;
  std::vector<char> critical(s.node_count(), 0);
  if (opts.intervention) {
    for (int v : opts.intervention->critical) critical[v] = 1;
  }
  std::vector<char> filled(s.node_count(), 0);
  if (opts.highlight) {
    for (int p : opts.highlight->positions) filled[s.leaf_at(p)] = 1;
  }

  std::ostringstream out;
  out << "digraph ctree {\n";
  out << "  rankdir=TB;\n";
  std::vector<int> stack{s.root()};
  std::vector<int> order;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    const Node& n = s.node(v);
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(*it);
  }
  for (int v : order) {
    const Node& n = s.node(v);
    out << "  \"" << n.id << "\" [";
    if (n.is_leaf()) {
      out << "shape=box, label=\"" << n.id << "\\n" << s.outcome_label(n.outcome) << "\"";
      if (filled[v]) out << ", style=filled, fillcolor=lightgrey";
    } else {
      out << "shape=ellipse, label=\"" << n.id << "\"";
      if (critical[v]) out << ", penwidth=2.5";
    }
    out << "];\n";
  }
  for (int v : order) {
    if (v == s.root()) continue;
    const Node& n = s.node(v);
    out << "  \"" << s.node(n.parent).id << "\" -> \"" << n.id << "\" [label=\""
        << format_fraction(shown.edge[v]) << "\"";
    if (base.edge[v] > 0 && shown.edge[v] == 0) out << ", style=dashed";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace ctree

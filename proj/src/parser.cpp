#include "ctree/parser.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "ctree/errors.hpp"
#include "ctree/rational.hpp"

namespace ctree {

namespace {

struct Tok {
  std::string text;
  int col;  // 1-based
};

std::vector<Tok> tokenize(const std::string& line) {
  std::vector<Tok> toks;
  size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t') {
      ++i;
      continue;
    }
    size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    toks.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return toks;
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
              c == '_' || c == '.' || c == '-';
    if (!ok) return false;
  }
  return true;
}

[[noreturn]] void fail(int line, int col, const std::string& msg) {
  throw ParseError(Errc::SyntaxError, line, col, msg);
}

// Declaration lines per entity, for locating semantic errors.
struct DeclLines {
  std::map<std::string, int> by_name;  // node/leaf ids, outcome labels, var/event names
  int header = 1;

  int locate(const std::string& raw_message) const {
    // Semantic messages quote the offending id; find the first quoted name
    // with a known declaration line.
    size_t pos = 0;
    while ((pos = raw_message.find('\'', pos)) != std::string::npos) {
      size_t end = raw_message.find('\'', pos + 1);
      if (end == std::string::npos) break;
      auto it = by_name.find(raw_message.substr(pos + 1, end - pos - 1));
      if (it != by_name.end()) return it->second;
      pos = end + 1;
    }
    return header;
  }
};

CtreeDocument parse_lines(const std::string& text, DeclLines& decls) {
  CtreeDocument doc;
  std::map<std::string, int> outcome_line;
  std::map<std::string, int> id_line;
  std::map<std::string, int> outcome_used;  // by a leaf
  std::map<std::string, int> edge_into;
  std::map<std::string, int> var_line;
  std::map<std::string, int> event_line;
  bool saw_header = false;
  bool saw_root = false;
  int root_line = 0;

  int lineno = 0;
  std::istringstream in(text);
  std::string rawline;
  while (std::getline(in, rawline)) {
    ++lineno;
    std::string line = rawline;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r')) {
      line.pop_back();
    }
    std::vector<Tok> toks = tokenize(line);
    if (toks.empty()) continue;

    if (!saw_header) {
      if (toks.size() != 2 || toks[0].text != "ctree" || toks[1].text != "v1") {
        fail(lineno, toks[0].col, "expected header 'ctree v1'");
      }
      saw_header = true;
      decls.header = lineno;
      continue;
    }

    const std::string& kw = toks[0].text;
    auto expect_name = [&](const Tok& t, const char* what) {
      if (!valid_name(t.text)) {
        fail(lineno, t.col, std::string("invalid ") + what + " '" + t.text + "'");
      }
    };

    if (kw == "outcome") {
      if (toks.size() != 2) fail(lineno, 0, "expected: outcome <label>");
      expect_name(toks[1], "outcome label");
      if (auto it = outcome_line.find(toks[1].text); it != outcome_line.end()) {
        throw ParseError(Errc::DuplicateId, lineno, toks[1].col,
                         "outcome '" + toks[1].text + "' already declared at line " +
                             std::to_string(it->second));
      }
      outcome_line[toks[1].text] = lineno;
      decls.by_name.emplace(toks[1].text, lineno);
      doc.space.outcomes.push_back(toks[1].text);
    } else if (kw == "root") {
      if (toks.size() != 2) fail(lineno, 0, "expected: root <id>");
      expect_name(toks[1], "node id");
      if (saw_root) fail(lineno, toks[0].col, "duplicate root line");
      saw_root = true;
      root_line = lineno;
      doc.space.root = toks[1].text;
    } else if (kw == "node" || kw == "leaf") {
      bool is_leaf = kw == "leaf";
      if (!is_leaf && toks.size() != 2) fail(lineno, 0, "expected: node <id>");
      if (is_leaf && toks.size() != 3) fail(lineno, 0, "expected: leaf <id> outcome=<label>");
      expect_name(toks[1], "node id");
      if (auto it = id_line.find(toks[1].text); it != id_line.end()) {
        throw ParseError(Errc::DuplicateId, lineno, toks[1].col,
                         "id '" + toks[1].text + "' already declared at line " +
                             std::to_string(it->second));
      }
      id_line[toks[1].text] = lineno;
      decls.by_name.emplace(toks[1].text, lineno);
      if (is_leaf) {
        const std::string& t = toks[2].text;
        if (t.rfind("outcome=", 0) != 0) {
          fail(lineno, toks[2].col, "expected outcome=<label>");
        }
        std::string label = t.substr(8);
        if (!valid_name(label)) fail(lineno, toks[2].col, "invalid outcome label '" + label + "'");
        if (!outcome_line.count(label)) {
          throw ParseError(Errc::UnknownOutcome, lineno, toks[2].col,
                           "outcome '" + label + "' is not declared");
        }
        if (auto it = outcome_used.find(label); it != outcome_used.end()) {
          throw ParseError(Errc::DuplicateId, lineno, toks[2].col,
                           "outcome '" + label + "' already carried by the leaf at line " +
                               std::to_string(it->second));
        }
        outcome_used[label] = lineno;
        doc.space.leaves.push_back({toks[1].text, label});
      } else {
        doc.space.nodes.push_back(toks[1].text);
      }
    } else if (kw == "edge") {
      if (toks.size() != 5 || toks[2].text != "->") {
        fail(lineno, 0, "expected: edge <parent> -> <child> p=<int>/<int>");
      }
      expect_name(toks[1], "node id");
      expect_name(toks[3], "node id");
      for (const Tok* t : {&toks[1], &toks[3]}) {
        if (!id_line.count(t->text)) {
          throw ParseError(Errc::UnknownNode, lineno, t->col,
                           "node '" + t->text + "' is not declared");
        }
      }
      if (auto it = edge_into.find(toks[3].text); it != edge_into.end()) {
        throw ParseError(Errc::DuplicateId, lineno, toks[3].col,
                         "node '" + toks[3].text + "' already has an incoming edge at line " +
                             std::to_string(it->second));
      }
      edge_into[toks[3].text] = lineno;
      if (toks[4].text.rfind("p=", 0) != 0) fail(lineno, toks[4].col, "expected p=<int>/<int>");
      Rational p;
      if (!parse_fraction(toks[4].text.substr(2), p)) {
        fail(lineno, toks[4].col, "expected an exact fraction <int>/<int>, got '" +
                                      toks[4].text.substr(2) + "'");
      }
      if (p < 0 || p > 1) {
        throw ParseError(Errc::ProbOutOfRange, lineno, toks[4].col,
                         "probability " + format_fraction(p) + " outside [0, 1]");
      }
      doc.space.edges.push_back({toks[1].text, toks[3].text, p});
    } else if (kw == "var") {
      if (toks.size() < 3) fail(lineno, 0, "expected: var <name> <node>=<value> ...");
      expect_name(toks[1], "variable name");
      if (auto it = var_line.find(toks[1].text); it != var_line.end()) {
        throw ParseError(Errc::DuplicateId, lineno, toks[1].col,
                         "variable '" + toks[1].text + "' already declared at line " +
                             std::to_string(it->second));
      }
      var_line[toks[1].text] = lineno;
      decls.by_name.emplace(toks[1].text, lineno);
      VarSpec vs;
      vs.name = toks[1].text;
      for (size_t i = 2; i < toks.size(); ++i) {
        const std::string& t = toks[i].text;
        size_t eq = t.find('=');
        if (eq == std::string::npos || t.find('=', eq + 1) != std::string::npos) {
          fail(lineno, toks[i].col, "expected <node>=<value>");
        }
        std::string node = t.substr(0, eq);
        std::string value = t.substr(eq + 1);
        if (!valid_name(node)) fail(lineno, toks[i].col, "invalid node id '" + node + "'");
        if (!valid_name(value)) fail(lineno, toks[i].col, "invalid value '" + value + "'");
        if (!id_line.count(node)) {
          throw ParseError(Errc::UnknownNode, lineno, toks[i].col,
                           "node '" + node + "' is not declared");
        }
        vs.assignments.emplace_back(node, value);
      }
      doc.vars.push_back(std::move(vs));
    } else if (kw == "event") {
      // event <name> = {a, b, c}
      if (toks.size() < 3 || toks[2].text != "=") {
        fail(lineno, 0, "expected: event <name> = {<label>, ...}");
      }
      expect_name(toks[1], "event name");
      if (auto it = event_line.find(toks[1].text); it != event_line.end()) {
        throw ParseError(Errc::DuplicateId, lineno, toks[1].col,
                         "event '" + toks[1].text + "' already declared at line " +
                             std::to_string(it->second));
      }
      event_line[toks[1].text] = lineno;
      decls.by_name.emplace(toks[1].text, lineno);
      size_t eq_end = static_cast<size_t>(toks[2].col);  // index just past '='
      size_t open = line.find('{', eq_end);
      if (open == std::string::npos) fail(lineno, 0, "expected '{' after '='");
      for (size_t i = eq_end; i < open; ++i) {
        if (line[i] != ' ' && line[i] != '\t') {
          fail(lineno, static_cast<int>(i) + 1, "unexpected text before '{'");
        }
      }
      size_t close = line.find('}', open);
      if (close == std::string::npos) fail(lineno, static_cast<int>(open) + 1, "missing '}'");
      for (size_t i = close + 1; i < line.size(); ++i) {
        if (line[i] != ' ' && line[i] != '\t') {
          fail(lineno, static_cast<int>(i) + 1, "unexpected text after '}'");
        }
      }
      EventSpec es;
      es.name = toks[1].text;
      std::string inside = line.substr(open + 1, close - open - 1);
      bool any_content = inside.find_first_not_of(" \t") != std::string::npos ||
                         inside.find(',') != std::string::npos;
      if (any_content) {
        size_t start = 0;
        while (true) {
          size_t comma = inside.find(',', start);
          std::string piece = inside.substr(start, comma - start);
          size_t a = piece.find_first_not_of(" \t");
          size_t b = piece.find_last_not_of(" \t");
          std::string label = a == std::string::npos ? "" : piece.substr(a, b - a + 1);
          int col = static_cast<int>(open + 1 + start + (a == std::string::npos ? 0 : a)) + 1;
          if (!valid_name(label)) fail(lineno, col, "invalid outcome label '" + label + "'");
          if (!outcome_line.count(label)) {
            throw ParseError(Errc::UnknownOutcome, lineno, col,
                             "outcome '" + label + "' is not declared");
          }
          es.labels.push_back(label);
          if (comma == std::string::npos) break;
          start = comma + 1;
        }
      }
      doc.events.push_back(std::move(es));
    } else {
      fail(lineno, toks[0].col, "unknown directive '" + kw + "'");
    }
  }

  if (!saw_header) fail(std::max(lineno, 1), 0, "missing header 'ctree v1'");
  if (!saw_root) fail(std::max(lineno, 1), 0, "missing root line");
  if (!id_line.count(doc.space.root)) {
    throw ParseError(Errc::UnknownNode, root_line, 0,
                     "root '" + doc.space.root + "' is never declared");
  }
  return doc;
}

}  // namespace

CtreeDocument parse_document(const std::string& text) {
  DeclLines decls;
  return parse_lines(text, decls);
}

const RandomVariable* ParsedSpace::find_var(const std::string& name) const {
  for (const auto& rv : vars) {
    if (rv.name == name) return &rv;
  }
  return nullptr;
}

const Event* ParsedSpace::find_event(const std::string& name) const {
  for (const auto& [n, e] : events) {
    if (n == name) return &e;
  }
  return nullptr;
}

ParsedSpace parse(const std::string& text) {
  DeclLines decls;
  CtreeDocument doc = parse_lines(text, decls);
  ParsedSpace ps;
  try {
    ps.space = build_space(doc.space);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.code, decls.locate(e.raw), 0, e.raw);
  }
  for (const VarSpec& vs : doc.vars) {
    // The codomain is the ordered set of values by first carrier in tree
    // order, so it does not depend on how the line lists the assignments.
    try {
      auto assignments = vs.assignments;
      std::stable_sort(assignments.begin(), assignments.end(),
                       [&](const auto& a, const auto& b) {
                         return ps.space.node(ps.space.index_of(a.first)).leaf_begin <
                                ps.space.node(ps.space.index_of(b.first)).leaf_begin;
                       });
      std::vector<std::string> codomain;
      for (const auto& [node, value] : assignments) {
        if (std::find(codomain.begin(), codomain.end(), value) == codomain.end()) {
          codomain.push_back(value);
        }
      }
      ps.vars.push_back(define_variable(ps.space, vs.name, codomain, assignments));
    } catch (const Error& e) {
      throw ParseError(e.code, decls.by_name.at(vs.name), 0, e.raw);
    }
  }
  for (const EventSpec& es : doc.events) {
    try {
      ps.events.emplace_back(es.name, make_event(ps.space, es.labels));
    } catch (const Error& e) {
      throw ParseError(e.code, decls.by_name.at(es.name), 0, e.raw);
    }
  }
  return ps;
}

ParsedSpace load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::IoError, "cannot read '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

namespace {

std::vector<int> preorder(const CausalSpace& s) {
  std::vector<int> order;
  std::vector<int> stack{s.root()};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    const Node& n = s.node(v);
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(*it);
  }
  return order;
}

}  // namespace

std::string serialize(const CausalSpace& s, const std::vector<RandomVariable>& vars,
                      const std::vector<std::pair<std::string, Event>>& events) {
  std::ostringstream out;
  out << "ctree v1\n";
  for (const auto& label : s.outcomes()) out << "outcome " << label << "\n";
  out << "root " << s.node(s.root()).id << "\n";
  std::vector<int> order = preorder(s);
  for (int v : order) {
    if (!s.node(v).is_leaf()) out << "node " << s.node(v).id << "\n";
  }
  for (int v : order) {
    const Node& n = s.node(v);
    if (n.is_leaf()) out << "leaf " << n.id << " outcome=" << s.outcome_label(n.outcome) << "\n";
  }
  for (int v : order) {
    if (v == s.root()) continue;
    const Node& n = s.node(v);
    out << "edge " << s.node(n.parent).id << " -> " << n.id << " p="
        << format_fraction(s.measure().edge[v]) << "\n";
  }
  for (const RandomVariable& rv : vars) {
    out << "var " << rv.name;
    for (const Assignment& a : rv.assignments) {
      out << " " << s.node(a.node).id << "=" << rv.codomain[a.value];
    }
    out << "\n";
  }
  for (const auto& [name, event] : events) {
    out << "event " << name << " = {";
    std::vector<std::string> labels = event_labels(s, event);
    for (size_t i = 0; i < labels.size(); ++i) {
      out << (i ? ", " : "") << labels[i];
    }
    out << "}\n";
  }
  return out.str();
}

std::string serialize(const ParsedSpace& ps) { return serialize(ps.space, ps.vars, ps.events); }

std::string write_document(const CtreeDocument& doc) {
  std::ostringstream out;
  out << "ctree v1\n";
  for (const auto& label : doc.space.outcomes) out << "outcome " << label << "\n";
  out << "root " << doc.space.root << "\n";
  for (const auto& id : doc.space.nodes) out << "node " << id << "\n";
  for (const auto& leaf : doc.space.leaves) {
    out << "leaf " << leaf.id << " outcome=" << leaf.outcome << "\n";
  }
  for (const auto& e : doc.space.edges) {
    out << "edge " << e.parent << " -> " << e.child << " p=" << format_fraction(e.p) << "\n";
  }
  for (const auto& vs : doc.vars) {
    out << "var " << vs.name;
    for (const auto& [node, value] : vs.assignments) out << " " << node << "=" << value;
    out << "\n";
  }
  for (const auto& es : doc.events) {
    out << "event " << es.name << " = {";
    for (size_t i = 0; i < es.labels.size(); ++i) out << (i ? ", " : "") << es.labels[i];
    out << "}\n";
  }
  return out.str();
}

bool equivalent(const ParsedSpace& a, const ParsedSpace& b) {
  return serialize(a) == serialize(b);
}

}  // namespace ctree

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ctree/errors.hpp"
#include "ctree/events.hpp"
#include "ctree/interventions.hpp"
#include "ctree/oracle.hpp"
#include "ctree/parser.hpp"
#include "ctree/random_vars.hpp"
#include "ctree/tree.hpp"

namespace {

using namespace ctree;

// Parse failures: grammar problems exit 1, semantic ones exit 2.
template <typename Fn>
int with_parsed(const std::string& path, Fn&& fn) {
  ParsedSpace ps;
  try {
    ps = load_file(path);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.code == Errc::SyntaxError || e.code == Errc::IoError ? 1 : 2;
  }
  return fn(ps);
}

int run_validate(const std::string& path) {
  return with_parsed(path, [&](const ParsedSpace& ps) {
    ValidationReport r = validate_axioms(ps.space);
    for (const AxiomCheck& c : r.checks) {
      std::cout << c.axiom << (c.pass ? " pass" : " FAIL");
      if (!c.note.empty()) std::cout << " " << c.note;
      std::cout << "\n";
    }
    if (!r.all_pass()) return 2;
    std::cout << "ok\n";
    return 0;
  });
}

struct ScriptStep {
  std::string verb;
  std::string var;
  std::string value;
};

std::vector<std::string> split_ws(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

// Steps are separated by ';'. Throws Error(SemanticError) on malformed steps.
std::vector<ScriptStep> parse_script(const std::string& script) {
  std::vector<ScriptStep> steps;
  size_t start = 0;
  while (start <= script.size()) {
    size_t semi = script.find(';', start);
    std::string piece =
        semi == std::string::npos ? script.substr(start) : script.substr(start, semi - start);
    start = semi == std::string::npos ? script.size() + 1 : semi + 1;
    std::vector<std::string> toks = split_ws(piece);
    if (toks.empty()) continue;
    ScriptStep step;
    step.verb = toks[0];
    int n = static_cast<int>(steps.size()) + 1;
    if (step.verb == "observe" || step.verb == "act") {
      if (toks.size() != 2) {
        throw Error(Errc::SemanticError, "step " + std::to_string(n) + ": expected " + step.verb +
                                             " <var>=<value>");
      }
      size_t eq = toks[1].find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 >= toks[1].size() ||
          toks[1].find('=', eq + 1) != std::string::npos) {
        throw Error(Errc::SemanticError,
                    "step " + std::to_string(n) + ": expected <var>=<value>, got '" + toks[1] +
                        "'");
      }
      step.var = toks[1].substr(0, eq);
      step.value = toks[1].substr(eq + 1);
    } else if (step.verb == "posterior" || step.verb == "marginal") {
      if (toks.size() != 2) {
        throw Error(Errc::SemanticError,
                    "step " + std::to_string(n) + ": expected " + step.verb + " <var>");
      }
      step.var = toks[1];
    } else if (step.verb == "leafmass") {
      if (toks.size() != 1) {
        throw Error(Errc::SemanticError, "step " + std::to_string(n) + ": leafmass takes no arguments");
      }
    } else {
      throw Error(Errc::SemanticError,
                  "step " + std::to_string(n) + ": unknown step '" + step.verb + "'");
    }
    steps.push_back(std::move(step));
  }
  return steps;
}

int run_query(const std::string& path, const std::string& script) {
  return with_parsed(path, [&](const ParsedSpace& ps) {
    std::vector<ScriptStep> steps;
    try {
      steps = parse_script(script);
    } catch (const Error& e) {
      std::cerr << e.what() << "\n";
      return 3;
    }
    BeliefState belief(ps.space, ps.vars);
    for (size_t i = 0; i < steps.size(); ++i) {
      const ScriptStep& step = steps[i];
      try {
        if (step.verb == "observe") {
          belief.observe(step.var, step.value);
        } else if (step.verb == "act") {
          belief.act(step.var, step.value);
        } else if (step.verb == "posterior" || step.verb == "marginal") {
          for (const auto& [value, p] : belief.posterior(step.var)) {
            std::cout << step.var << " " << value << " " << format_rational(p) << "\n";
          }
        } else {
          std::vector<Rational> masses = belief.leaf_masses();
          for (int pos = 0; pos < ps.space.leaf_count(); ++pos) {
            const Node& n = ps.space.node(ps.space.leaf_at(pos));
            std::cout << "leafmass " << n.id << " " << ps.space.outcome_label(n.outcome) << " "
                      << format_rational(masses[pos]) << "\n";
          }
        }
      } catch (const Error& e) {
        std::cerr << "step " << i + 1 << ": " << e.what() << "\n";
        return 3;
      }
    }
    return 0;
  });
}

int run_dot(const std::string& path, const std::string& intervene_flag,
            const std::string& event_flag) {
  return with_parsed(path, [&](const ParsedSpace& ps) {
    DotOptions opts;
    InterventionResult result;
    Event highlight;
    if (!intervene_flag.empty()) {
      size_t eq = intervene_flag.find('=');
      if (eq == std::string::npos) {
        std::cerr << "expected --intervene <var>=<value>\n";
        return 1;
      }
      const RandomVariable* rv = ps.find_var(intervene_flag.substr(0, eq));
      if (!rv) {
        std::cerr << "unknown variable '" << intervene_flag.substr(0, eq) << "'\n";
        return 1;
      }
      Event a;
      try {
        a = preimage(ps.space, *rv, intervene_flag.substr(eq + 1));
      } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
      }
      try {
        result = intervene(ps.space, a);
      } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 3;
      }
      opts.intervention = &result;
    } else if (!event_flag.empty()) {
      const Event* ev = ps.find_event(event_flag);
      if (!ev) {
        std::cerr << "unknown event '" << event_flag << "'\n";
        return 1;
      }
      highlight = *ev;
      opts.highlight = &highlight;
    }
    std::cout << to_dot(ps.space, opts);
    return 0;
  });
}

void print_report(const CheckReport& r, bool& any_fail) {
  if (r.pass) {
    std::cout << r.name << ": ok";
    if (!r.counterexample.empty()) std::cout << " (" << r.counterexample << ")";
    std::cout << "\n";
  } else {
    any_fail = true;
    std::cout << r.name << ": FAIL " << r.counterexample << "\n";
  }
}

int run_check_file(const std::string& path) {
  return with_parsed(path, [&](const ParsedSpace& ps) {
    std::vector<std::pair<std::string, Event>> events = ps.events;
    for (const RandomVariable& rv : ps.vars) {
      for (size_t vi = 0; vi < rv.codomain.size(); ++vi) {
        events.emplace_back(rv.name + "=" + rv.codomain[vi],
                            preimage_by_index(ps.space, rv, static_cast<int>(vi)));
      }
    }
    bool any_fail = false;
    for (const CheckReport& r : run_all_checks(ps.space, events)) {
      print_report(r, any_fail);
    }
    return any_fail ? 4 : 0;
  });
}

int run_check_random(int count, std::uint64_t seed) {
  bool any_fail = false;
  for (int i = 0; i < count; ++i) {
    std::uint64_t instance_seed = seed + static_cast<std::uint64_t>(i);
    Rng rng(instance_seed);
    CausalSpace space = random_space(rng);
    Event a = random_event(rng, space);
    std::cout << "instance seed=" << instance_seed << " nodes=" << space.node_count() << "\n";
    for (const CheckReport& r : run_all_checks(space, {{"A", a}})) {
      print_report(r, any_fail);
    }
  }
  std::cout << (any_fail ? "FAIL" : "ok") << "\n";
  return any_fail ? 4 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact probability trees with causal interventions"};
  app.require_subcommand(1);

  std::string path;
  std::string script;
  std::string script_file;
  std::string intervene_flag;
  std::string event_flag;
  int random_count = 0;
  std::uint64_t seed = 42;

  CLI::App* validate = app.add_subcommand("validate", "parse a file and check the axioms");
  validate->add_option("file", path, "input .ctree file")->required();

  CLI::App* query = app.add_subcommand("query", "run an observe/act script");
  query->add_option("file", path, "input .ctree file")->required();
  CLI::Option* opt_script = query->add_option("--script", script, "inline script");
  query->add_option("--script-file", script_file, "script read from a file")->excludes(opt_script);

  CLI::App* dot = app.add_subcommand("dot", "render the tree as graphviz");
  dot->add_option("file", path, "input .ctree file")->required();
  CLI::Option* opt_iv = dot->add_option("--intervene", intervene_flag, "apply <var>=<value>");
  dot->add_option("--event", event_flag, "highlight a named event")->excludes(opt_iv);

  CLI::App* check = app.add_subcommand("check", "run the self-verification battery");
  check->add_option("file", path, "input .ctree file");
  check->add_option("--random", random_count, "number of random instances");
  check->add_option("--seed", seed, "base seed for random instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;  // usage problems are exit 1, like parse failures
  }

  try {
    if (validate->parsed()) return run_validate(path);
    if (query->parsed()) {
      if (!script_file.empty()) {
        std::ifstream in(script_file, std::ios::binary);
        if (!in) {
          std::cerr << "cannot read script file '" << script_file << "'\n";
          return 3;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        script = buf.str();
      }
      return run_query(path, script);
    }
    if (dot->parsed()) return run_dot(path, intervene_flag, event_flag);
    if (check->parsed()) {
      if (random_count > 0) return run_check_random(random_count, seed);
      if (path.empty()) {
        std::cerr << "check needs a file or --random N\n";
        return 1;
      }
      return run_check_file(path);
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 4;
  }
  return 0;
}

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "helpers.hpp"

namespace {

struct Run {
  int code;
  std::string text;
};

// Runs the installed binary through the shell. `merge` folds stderr into the
// captured text; otherwise stderr is dropped so stdout can be compared
// byte-for-byte.
Run run_cli(const std::string& args, bool merge = true) {
  const char* cli = std::getenv("CTREE_CLI");
  REQUIRE_MESSAGE(cli != nullptr, "CTREE_CLI must point at the ctree binary");
  std::string cmd = std::string(cli) + " " + args + (merge ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string text;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) text.append(buf, got);
  int status = pclose(pipe);
  REQUIRE(WIFEXITED(status));
  return {WEXITSTATUS(status), text};
}

std::string write_tmp(const std::string& name, const std::string& content) {
  std::string path = "/tmp/ctree_cli_" + std::to_string(getpid()) + "_" + name;
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out);
  out << content;
  out.close();
  return path;
}

bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

const std::string urn = th::corpus_path("urn.ctree");
const std::string barometer = th::corpus_path("barometer.ctree");

}  // namespace

TEST_CASE("cli validate") {
  SUBCASE("a sound file prints the axiom report and ok") {
    Run r = run_cli("validate " + urn, false);
    CHECK(r.code == 0);
    CHECK(contains(r.text, "R1 pass"));
    CHECK(contains(r.text, "R4 pass"));
    CHECK(contains(r.text, "C4 pass"));
    CHECK(r.text.size() >= 3);
    CHECK(r.text.substr(r.text.size() - 3) == "ok\n");
  }

  SUBCASE("grammar problems exit 1 with a location") {
    std::string bad = write_tmp("decimal.ctree",
                                "ctree v1\noutcome a\noutcome b\nroot S0\nnode S0\n"
                                "leaf S1 outcome=a\nleaf S2 outcome=b\n"
                                "edge S0 -> S1 p=0.5\nedge S0 -> S2 p=1/2\n");
    Run r = run_cli("validate " + bad);
    CHECK(r.code == 1);
    CHECK(contains(r.text, "line 8"));
  }

  SUBCASE("semantic problems exit 2 naming the entity") {
    std::string bad = write_tmp("sum.ctree",
                                "ctree v1\noutcome a\noutcome b\nroot S0\nnode S0\n"
                                "leaf S1 outcome=a\nleaf S2 outcome=b\n"
                                "edge S0 -> S1 p=1/3\nedge S0 -> S2 p=1/3\n");
    Run r = run_cli("validate " + bad);
    CHECK(r.code == 2);
    CHECK(contains(r.text, "EdgeSumNotOne"));
    CHECK(contains(r.text, "'S0'"));
  }

  SUBCASE("missing file exits 1") {
    Run r = run_cli("validate /nonexistent/space.ctree");
    CHECK(r.code == 1);
    CHECK(contains(r.text, "cannot read"));
  }
}

TEST_CASE("cli query") {
  SUBCASE("barometer act then observe") {
    Run r = run_cli("query " + barometer + " --script 'act B=low; observe W=rainy; posterior H'",
                    false);
    CHECK(r.code == 0);
    CHECK(r.text == "H 1 2/3\nH 2 1/3\n");
  }

  SUBCASE("urn observation") {
    Run r = run_cli("query " + urn + " --script 'observe Pick=left; posterior Swap'", false);
    CHECK(r.code == 0);
    CHECK(r.text == "Swap no 3/4\nSwap yes 1/4\n");
  }

  SUBCASE("empty script prints nothing") {
    Run r = run_cli("query " + urn + " --script ''", false);
    CHECK(r.code == 0);
    CHECK(r.text.empty());
    Run s = run_cli("query " + urn, false);
    CHECK(s.code == 0);
    CHECK(s.text.empty());
  }

  SUBCASE("leafmass reports renormalised masses in leaf order") {
    Run r = run_cli("query " + urn + " --script 'observe Pick=left; leafmass'", false);
    CHECK(r.code == 0);
    CHECK(r.text ==
          "leafmass S7 no_left_black 9/16\n"
          "leafmass S8 no_left_white 3/16\n"
          "leafmass S9 no_right_black 0\n"
          "leafmass S10 no_right_white 0\n"
          "leafmass S11 yes_left_black 1/16\n"
          "leafmass S12 yes_left_white 3/16\n"
          "leafmass S13 yes_right_black 0\n"
          "leafmass S14 yes_right_white 0\n");
  }

  SUBCASE("contradictions exit 3 with the step index") {
    Run r = run_cli("query " + urn + " --script 'observe Swap=no; observe Swap=yes'");
    CHECK(r.code == 3);
    CHECK(contains(r.text, "step 2"));
    CHECK(contains(r.text, "ObserveNullEvent"));
  }

  SUBCASE("malformed scripts exit 3 with the step index") {
    CHECK(run_cli("query " + urn + " --script 'observe Swap'").code == 3);
    CHECK(run_cli("query " + urn + " --script 'frob X'").code == 3);
    Run r = run_cli("query " + urn + " --script 'posterior Swap; posterior'");
    CHECK(r.code == 3);
    CHECK(contains(r.text, "step 2"));
  }

  SUBCASE("scripts can come from a file") {
    std::string sf = write_tmp("script.txt", "act B=low; observe W=rainy; posterior H");
    Run r = run_cli("query " + barometer + " --script-file " + sf, false);
    CHECK(r.code == 0);
    CHECK(r.text == "H 1 2/3\nH 2 1/3\n");
    CHECK(run_cli("query " + barometer + " --script-file /nonexistent/script").code == 3);
    CHECK(run_cli("query " + barometer + " --script 'posterior H' --script-file " + sf).code == 1);
  }
}

TEST_CASE("cli dot") {
  SUBCASE("plain rendering") {
    Run r = run_cli("dot " + urn, false);
    CHECK(r.code == 0);
    CHECK(r.text.rfind("digraph ctree {", 0) == 0);
    size_t nodes = 0, pos = 0;
    while ((pos = r.text.find("shape=", pos)) != std::string::npos) ++nodes, ++pos;
    CHECK(nodes == 15);
  }

  SUBCASE("intervention styling") {
    Run r = run_cli("dot " + barometer + " --intervene B=low", false);
    CHECK(r.code == 0);
    CHECK(contains(r.text, "penwidth=2.5"));
    CHECK(contains(r.text, "style=dashed"));
  }

  SUBCASE("event highlighting") {
    Run r = run_cli("dot " + barometer + " --event BLow", false);
    CHECK(r.code == 0);
    CHECK(contains(r.text, "fillcolor=lightgrey"));
  }

  SUBCASE("unknown names exit 1") {
    Run r = run_cli("dot " + urn + " --event Nope");
    CHECK(r.code == 1);
    CHECK(contains(r.text, "unknown event"));
    CHECK(run_cli("dot " + urn + " --intervene Nope=x").code == 1);
    CHECK(run_cli("dot " + urn + " --intervene Pick=sideways").code == 1);
    CHECK(run_cli("dot " + urn + " --intervene Pick").code == 1);
  }

  SUBCASE("impossible interventions exit 3") {
    std::string zero = write_tmp("zero.ctree",
                                 "ctree v1\noutcome a\noutcome b\noutcome c\nroot S0\n"
                                 "node S0\nnode S1\n"
                                 "leaf S2 outcome=a\nleaf S3 outcome=b\nleaf S4 outcome=c\n"
                                 "edge S0 -> S1 p=1/2\nedge S0 -> S4 p=1/2\n"
                                 "edge S1 -> S2 p=0/1\nedge S1 -> S3 p=1/1\n"
                                 "var V S2=va S3=vb S4=vc\n");
    Run r = run_cli("dot " + zero + " --intervene V=va");
    CHECK(r.code == 3);
    CHECK(contains(r.text, "NullDiscriminants"));
    CHECK(run_cli("query " + zero + " --script 'act V=va'").code == 3);
  }

  SUBCASE("the two stylings exclude each other") {
    CHECK(run_cli("dot " + urn + " --intervene Pick=left --event Black").code == 1);
  }
}

TEST_CASE("cli check") {
  SUBCASE("bundled corpus passes") {
    Run r = run_cli("check " + urn, false);
    CHECK(r.code == 0);
    CHECK(contains(r.text, "representation: ok"));
    CHECK(contains(r.text, "intervention-equivalence (PickLeft): ok"));
    CHECK(contains(r.text, "axiom-preservation (Colour=white): ok"));
    CHECK_FALSE(contains(r.text, "FAIL"));
  }

  SUBCASE("random instances are deterministic per seed") {
    Run a = run_cli("check --random 3 --seed 42", false);
    Run b = run_cli("check --random 3 --seed 42", false);
    CHECK(a.code == 0);
    CHECK(a.text == b.text);
    CHECK(contains(a.text, "instance seed=42"));
    CHECK(contains(a.text, "instance seed=44"));
    CHECK(a.text.substr(a.text.size() - 3) == "ok\n");
    Run c = run_cli("check --random 3 --seed 43", false);
    CHECK(c.text != a.text);
  }

  SUBCASE("check needs an input") {
    CHECK(run_cli("check").code == 1);
  }
}

TEST_CASE("cli usage errors exit 1") {
  CHECK(run_cli("").code == 1);
  CHECK(run_cli("frob").code == 1);
  CHECK(run_cli("validate").code == 1);
  CHECK(run_cli("validate " + urn + " --bogus").code == 1);
  CHECK(run_cli("--help").code == 0);
}

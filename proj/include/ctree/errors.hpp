#pragma once

#include <stdexcept>
#include <string>

namespace ctree {

enum class Errc {
  DuplicateId,
  OrphanNode,
  LeafWithoutOutcome,
  EdgeSumNotOne,
  ProbOutOfRange,
  DuplicateRealisation,
  UnknownNode,
  UnknownOutcome,
  TooManyLeaves,
  ConditionOnNullEvent,
  PreconditionViolated,
  TrivialEvent,
  NotABifurcation,
  NullDiscriminants,
  NotACut,
  DuplicateAssignmentOnPath,
  ValueOutsideCodomain,
  ObserveNullEvent,
  UnknownVariable,
  SyntaxError,
  SemanticError,
  IoError,
};

const char* errc_name(Errc code);

struct Error : std::runtime_error {
  Errc code;
  std::string raw;  // message without the code prefix, for rewrapping
  Error(Errc c, const std::string& msg)
      : std::runtime_error(std::string(errc_name(c)) + ": " + msg), code(c), raw(msg) {}
};

// Carries a 1-based source location; col 0 means "whole line".
struct ParseError : Error {
  int line;
  int col;
  ParseError(Errc c, int line_, int col_, const std::string& msg)
      : Error(c, "line " + std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
        line(line_),
        col(col_) {}
};

}  // namespace ctree

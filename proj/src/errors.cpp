#include "ctree/errors.hpp"

namespace ctree {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::OrphanNode: return "OrphanNode";
    case Errc::LeafWithoutOutcome: return "LeafWithoutOutcome";
    case Errc::EdgeSumNotOne: return "EdgeSumNotOne";
    case Errc::ProbOutOfRange: return "ProbOutOfRange";
    case Errc::DuplicateRealisation: return "DuplicateRealisation";
    case Errc::UnknownNode: return "UnknownNode";
    case Errc::UnknownOutcome: return "UnknownOutcome";
    case Errc::TooManyLeaves: return "TooManyLeaves";
    case Errc::ConditionOnNullEvent: return "ConditionOnNullEvent";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::TrivialEvent: return "TrivialEvent";
    case Errc::NotABifurcation: return "NotABifurcation";
    case Errc::NullDiscriminants: return "NullDiscriminants";
    case Errc::NotACut: return "NotACut";
    case Errc::DuplicateAssignmentOnPath: return "DuplicateAssignmentOnPath";
    case Errc::ValueOutsideCodomain: return "ValueOutsideCodomain";
    case Errc::ObserveNullEvent: return "ObserveNullEvent";
    case Errc::UnknownVariable: return "UnknownVariable";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::SemanticError: return "SemanticError";
    case Errc::IoError: return "IoError";
  }
  return "Error";
}

}  // namespace ctree

#ifndef OCGR_ERRORS_HPP
#define OCGR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ocgr {

/*
  Every error the library raises carries a kind so callers (the CLI in
  particular) can map failures to exit codes without string matching.
  InputError covers everything caused by bad user input; ResourceLimit is
  kept distinct from "no solution exists" (cost infinity) by contract.
*/
enum class ErrorKind {
    SyntaxError,
    UnsupportedFeature,
    NotApplicable,
    UnknownLabel,
    GoalAlreadySet,
    EmptyPlan,
    NoNoiseCandidates,
    MissingObservationColumn,
    ResourceLimit,
    Unsolvable,
    NumericalFailure,
    IterationLimit,
    DatasetFormatError,
    AllInfeasible,
    InvalidArgument,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string &message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const {
        return kind_;
    }

    bool is_input_error() const {
        switch (kind_) {
        case ErrorKind::SyntaxError:
        case ErrorKind::UnsupportedFeature:
        case ErrorKind::UnknownLabel:
        case ErrorKind::GoalAlreadySet:
        case ErrorKind::EmptyPlan:
        case ErrorKind::DatasetFormatError:
        case ErrorKind::InvalidArgument:
            return true;
        default:
            return false;
        }
    }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string &message) {
    throw Error(kind, message);
}

} // namespace ocgr

#endif

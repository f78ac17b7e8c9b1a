#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace symplab {

// Two failure families, chosen so callers (and the CLI exit codes) can tell
// them apart: hypothesis failures mean the input violates the standing
// assumptions of the theory (not strongly convex, not symmetric, conjugate
// pairing broken, degenerate phase point); numerical failures mean an
// algorithm did not reach its tolerance.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }
    virtual bool is_hypothesis_failure() const { return false; }

private:
    std::string kind_;
};

class HypothesisError : public Error {
public:
    using Error::Error;
    bool is_hypothesis_failure() const override { return true; }
};

class NumericalError : public Error {
public:
    using Error::Error;
};

struct ValidationFailure : HypothesisError {
    explicit ValidationFailure(const std::string& m) : HypothesisError("ValidationFailure", m) {}
};
struct SymmetryRequired : HypothesisError {
    explicit SymmetryRequired(const std::string& m) : HypothesisError("SymmetryRequired", m) {}
};
struct DegeneratePhasePoint : HypothesisError {
    explicit DegeneratePhasePoint(const std::string& m) : HypothesisError("DegeneratePhasePoint", m) {}
};
struct RadonHypothesisFailed : HypothesisError {
    explicit RadonHypothesisFailed(const std::string& m) : HypothesisError("RadonHypothesisFailed", m) {}
};

struct BracketFailure : NumericalError {
    explicit BracketFailure(const std::string& m) : NumericalError("BracketFailure", m) {}
};
struct NoConvergence : NumericalError {
    explicit NoConvergence(const std::string& m) : NumericalError("NoConvergence", m) {}
};
struct MonotonicityViolation : NumericalError {
    explicit MonotonicityViolation(const std::string& m) : NumericalError("MonotonicityViolation", m) {}
};
struct QuadratureNotConverged : NumericalError {
    explicit QuadratureNotConverged(const std::string& m) : NumericalError("QuadratureNotConverged", m) {}
};
struct ProjectionFailure : NumericalError {
    explicit ProjectionFailure(const std::string& m) : NumericalError("ProjectionFailure", m) {}
};
struct ConfigError : NumericalError {
    explicit ConfigError(const std::string& m) : NumericalError("ConfigError", m) {}
};

}  // namespace symplab

#pragma once

#include <stdexcept>
#include <string>

namespace msx {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero scalar") {}
};

struct PoleAtPoint : Error {
    explicit PoleAtPoint(const std::string& where = "")
        : Error("denominator vanishes at point" + (where.empty() ? "" : ": " + where)) {}
};

struct PoleAtSubstitution : Error {
    PoleAtSubstitution() : Error("substituted denominator is identically zero") {}
};

struct ChartMismatch : Error {
    ChartMismatch() : Error("operands live on different charts") {}
};

struct DegreeZero : Error {
    DegreeZero() : Error("interior product requires form degree >= 1") {}
};

struct DegreeMismatch : Error {
    DegreeMismatch() : Error("value degrees do not match") {}
};

struct BadDimensions : Error {
    explicit BadDimensions(const std::string& msg) : Error("bad dimensions: " + msg) {}
};

struct BadDegree : Error {
    explicit BadDegree(const std::string& msg) : Error("bad degree: " + msg) {}
};

struct NotProjectable : Error {
    NotProjectable() : Error("vector field is not projectable (v^i depends on fiber coordinates)") {}
};

struct NotAllowable : Error {
    NotAllowable() : Error("structure equation is inconsistent: observable is not allowable") {}
};

struct SingularStructure : Error {
    SingularStructure() : Error("structure form is degenerate") {}
};

struct SingularFrame : Error {
    SingularFrame() : Error("frame matrix is singular") {}
};

struct SolveFailed : Error {
    explicit SolveFailed(const std::string& msg) : Error("linear solve failed: " + msg) {}
};

struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& msg) : Error("shape mismatch: " + msg) {}
};

struct OutOfCharacterizedRegime : Error {
    OutOfCharacterizedRegime()
        : Error("classification requires n >= 2 and k >= 2") {}
};

struct UnboundName : Error {
    explicit UnboundName(const std::string& name) : Error("unbound name: " + name) {}
};

struct SyntaxError : Error {
    int line, col;
    SyntaxError(int line_, int col_, const std::string& msg)
        : Error("syntax error at " + std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
          line(line_), col(col_) {}
};

}  // namespace msx

#pragma once

#include <stdexcept>
#include <string>

namespace bivfactor {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define BIVFACTOR_ERROR(Name)                          \
    class Name : public Error {                        \
    public:                                            \
        explicit Name(const std::string& what)         \
            : Error(std::string(#Name ": ") + what) {} \
    }

BIVFACTOR_ERROR(ZeroPolynomial);
BIVFACTOR_ERROR(ModulusNotPrime);
BIVFACTOR_ERROR(NotAUnit);
BIVFACTOR_ERROR(DegeneratePolygon);
BIVFACTOR_ERROR(EdgeNotOnPolygon);
BIVFACTOR_ERROR(SingleYStratum);
BIVFACTOR_ERROR(NotInApl);
BIVFACTOR_ERROR(BadLeadingValuation);
BIVFACTOR_ERROR(NotCoprime);
BIVFACTOR_ERROR(InitMismatch);
BIVFACTOR_ERROR(NotLambdaMonic);
BIVFACTOR_ERROR(PrecisionTooLow);
BIVFACTOR_ERROR(NotSeparable);
BIVFACTOR_ERROR(NotPrimitive);
BIVFACTOR_ERROR(MinimallyDegenerate);
BIVFACTOR_ERROR(NotInImageSpace);
BIVFACTOR_ERROR(NotAPartition);
BIVFACTOR_ERROR(InternalError);

#undef BIVFACTOR_ERROR

// Raised when some lower edge polynomial is not squarefree.
class DegenerateInput : public Error {
public:
    explicit DegenerateInput(const std::string& what)
        : Error("DegenerateInput: " + what) {}
};

// A repeated irreducible block in the initial factorization of one slope.
class DegenerateEdge : public DegenerateInput {
public:
    explicit DegenerateEdge(const std::string& what) : DegenerateInput(what) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int column)
        : Error("ParseError at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace bivfactor

#pragma once
#include <stdexcept>
#include <string>

namespace l2alex {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define L2ALEX_ERROR(Name)                                                     \
    struct Name : Error {                                                      \
        explicit Name(const std::string& msg) : Error(#Name ": " + msg) {}     \
    }

L2ALEX_ERROR(UnknownGenerator);
L2ALEX_ERROR(UnsupportedGroupClass);
L2ALEX_ERROR(ModelMismatch);
L2ALEX_ERROR(ZeroParameter);
L2ALEX_ERROR(NotUnitModulus);
L2ALEX_ERROR(IndexOutOfRange);
L2ALEX_ERROR(NotCoprime);
L2ALEX_ERROR(MalformedDiagram);
L2ALEX_ERROR(NotHomologyCircle);
L2ALEX_ERROR(ZeroCoefficient);
L2ALEX_ERROR(FiniteOrderElement);
L2ALEX_ERROR(ZeroPolynomial);
L2ALEX_ERROR(NoDominantFactoring);
L2ALEX_ERROR(ModelUnsupported);
L2ALEX_ERROR(BallTooLarge);
L2ALEX_ERROR(NotDetAcyclic);
L2ALEX_ERROR(CircleZero);
L2ALEX_ERROR(NonpositiveValue);
L2ALEX_ERROR(EngineUnsupported);
L2ALEX_ERROR(ParseError);
L2ALEX_ERROR(NotDivisible);

#undef L2ALEX_ERROR

} // namespace l2alex

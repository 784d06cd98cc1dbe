#pragma once

#include "liftlab/int.hpp"

#include <stdexcept>
#include <string>

namespace liftlab {

/// Base class of every failure the library reports.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---- arithmetic ----

class InvalidModulus : public Error {
public:
    using Error::Error;
};

/// Residue operands with different moduli were combined.
class ModulusMismatch : public Error {
public:
    using Error::Error;
};

class NotInvertible : public Error {
public:
    NotInvertible(Int g, const std::string& what) : Error(what), gcd(std::move(g)) {}
    Int gcd;
};

/// CRT pair with gcd(m1, m2) not dividing r1 - r2.
class IncompatibleCongruence : public Error {
public:
    using Error::Error;
};

class ExponentInvalid : public Error {
public:
    using Error::Error;
};

class TooLarge : public Error {
public:
    using Error::Error;
};

class NotCoprime : public Error {
public:
    NotCoprime(Int g, const std::string& what) : Error(what), gcd(std::move(g)) {}
    Int gcd;
};

// ---- instances ----

class NotPrime : public Error {
public:
    NotPrime(Int v, const std::string& what) : Error(what), value(std::move(v)) {}
    Int value;
};

class NotSafePrime : public Error {
public:
    using Error::Error;
};

class QTooSmall : public Error {
public:
    using Error::Error;
};

class ExhaustedAttempts : public Error {
public:
    using Error::Error;
};

class ParityMismatch : public Error {
public:
    using Error::Error;
};

class SearchCapExceeded : public Error {
public:
    using Error::Error;
};

class NoCandidate : public Error {
public:
    using Error::Error;
};

class BothCandidates : public Error {
public:
    using Error::Error;
};

// ---- lifts ----

class NotCongruent : public Error {
public:
    using Error::Error;
};

class OrderMismatch : public Error {
public:
    using Error::Error;
};

// ---- non-canonical lifts ----

class MissingKnownN : public Error {
public:
    using Error::Error;
};

class InconsistentPair : public Error {
public:
    using Error::Error;
};

class ZeroOffset : public Error {
public:
    using Error::Error;
};

class Unsolvable : public Error {
public:
    using Error::Error;
};

class DegenerateCoefficient : public Error {
public:
    using Error::Error;
};

// ---- oracle ----

class BoundExceeded : public Error {
public:
    using Error::Error;
};

class NotClosed : public Error {
public:
    using Error::Error;
};

} // namespace liftlab

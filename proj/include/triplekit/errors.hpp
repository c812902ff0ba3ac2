#pragma once

#include <stdexcept>
#include <string>

namespace triplekit {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Operand shapes are incompatible for the requested operation.
class ShapeMismatch : public Error {
public:
  explicit ShapeMismatch(const std::string& what) : Error("shape mismatch: " + what) {}
};

// Exact and float data met at a dynamic boundary (JSON / CLI).
// Inside the typed core, mixing backends does not compile.
class BackendMismatch : public Error {
public:
  explicit BackendMismatch(const std::string& what) : Error("backend mismatch: " + what) {}
};

class Singular : public Error {
public:
  explicit Singular(const std::string& what) : Error("singular: " + what) {}
};

// Bounded rejection sampling ran out of attempts.
class GenerationFailed : public Error {
public:
  explicit GenerationFailed(const std::string& what) : Error("generation failed: " + what) {}
};

class NotIdempotent : public Error {
public:
  explicit NotIdempotent(const std::string& what) : Error("not idempotent: " + what) {}
};

class NotTripotent : public Error {
public:
  explicit NotTripotent(const std::string& what) : Error("not tripotent: " + what) {}
};

class NotTripleMorphism : public Error {
public:
  explicit NotTripleMorphism(const std::string& what) : Error("not a triple morphism: " + what) {}
};

// classify step 1: the image of the identity is not +I or -I.
class NotUnitalSign : public Error {
public:
  explicit NotUnitalSign(const std::string& what) : Error("unital sign: " + what) {}
};

// classify step 2: the scalar action at i is neither i nor -i.
class UnsupportedScalarAuto : public Error {
public:
  explicit UnsupportedScalarAuto(const std::string& what)
      : Error("unsupported scalar automorphism: " + what) {}
};

// classify step 3: neither multiplicative nor anti-multiplicative on the basis.
class DichotomyViolation : public Error {
public:
  explicit DichotomyViolation(const std::string& what) : Error("dichotomy violation: " + what) {}
};

// classify step 4: the similarity witness could not be verified.
class RecoveryFailure : public Error {
public:
  explicit RecoveryFailure(const std::string& what) : Error("recovery failure: " + what) {}
};

// extract_h: the scalar function depends on the probe tripotent.
class InconsistentH : public Error {
public:
  explicit InconsistentH(const std::string& what) : Error("inconsistent scalar function: " + what) {}
};

class ParseError : public Error {
public:
  explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

}  // namespace triplekit

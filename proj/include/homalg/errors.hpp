#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace homalg {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// gen_matrix does not respect the source relations
struct IllDefinedMorphism : Error {
  using Error::Error;
};

struct NotComposableOrNonzeroComposite : Error {
  using Error::Error;
};

// small-object construction did not certify within the stage bound
struct StageBoundExceeded : Error {
  using Error::Error;
};

// RLP test and direct surjectivity/quasi-iso test disagree: internal bug
struct CharacterizationMismatch : Error {
  using Error::Error;
};

// pure-class operation over Z asked about a module whose torsion exponent
// does not divide the declared bound
struct TorsionBoundError : Error {
  using Error::Error;
};

struct ParseError : Error {
  std::size_t position;
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

struct WrongRing : Error {
  using Error::Error;
};

}  // namespace homalg

#pragma once

#include <stdexcept>
#include <string>

namespace sturmlab {

enum class Errc {
  ZeroObject,
  BadSequence,
  Unbounded,
  BadRoyTriple,
  EqualLetters,
  NoAdmissibleN,
  DegenerateSeed,
  SingularN,
  Capacity,
  DegenerateGrowth,
  BadIndex,
  FibonacciOnly,
  NoConvergence,
  TooLarge,
  NoCandidates,
  ImproperDelta,
  OutOfRange,
  BadWindow,
  Parse,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc c, const std::string& what)
      : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace sturmlab

#include "sturmlab/error.hpp"

namespace sturmlab {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::ZeroObject: return "ZeroObject";
    case Errc::BadSequence: return "BadSequence";
    case Errc::Unbounded: return "Unbounded";
    case Errc::BadRoyTriple: return "BadRoyTriple";
    case Errc::EqualLetters: return "EqualLetters";
    case Errc::NoAdmissibleN: return "NoAdmissibleN";
    case Errc::DegenerateSeed: return "DegenerateSeed";
    case Errc::SingularN: return "SingularN";
    case Errc::Capacity: return "Capacity";
    case Errc::DegenerateGrowth: return "DegenerateGrowth";
    case Errc::BadIndex: return "BadIndex";
    case Errc::FibonacciOnly: return "FibonacciOnly";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NoCandidates: return "NoCandidates";
    case Errc::ImproperDelta: return "ImproperDelta";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::BadWindow: return "BadWindow";
    case Errc::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace sturmlab

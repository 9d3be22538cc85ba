#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace freedyn {

enum class Errc {
  UnknownLetter,
  BasisMismatch,
  Parse,
  InvalidGraph,
  InvalidMarking,
  InvalidTree,
  NotCore,
  Forest,
  NotInjectiveWitness,
  TrivialImage,
  DegenerateEdge,
  NotPrimitive,
  SurjectiveInput,
  FoldBudgetExceeded,
  NoConvergence,
  TrivialPullback,
  UnsupportedSplitting,
  ZeroLength,
  Precondition,
};

std::string_view to_string(Errc code);

// All library failures are reported through this type; `code()` identifies
// the contract that was violated.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace freedyn

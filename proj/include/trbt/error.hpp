#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace trbt {

enum class Errc {
  EmptyInput,
  OutOfArea,
  NonPositiveDistance,
  NegativeSinr,
  EmptyRing,
  ZeroTotalThroughput,
  ZeroPopulation,
  NoCandidates,
  EmptyTrials,
  EmptyResults,
  ParseError,
  ValidationError,
  IoError,
};

std::string_view to_string(Errc code) noexcept;

// Every library failure is reported through this type; code() identifies the
// failure class, what() carries the human readable context.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace trbt

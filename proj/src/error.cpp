#include "trbt/error.hpp"

namespace trbt {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::OutOfArea: return "OutOfArea";
    case Errc::NonPositiveDistance: return "NonPositiveDistance";
    case Errc::NegativeSinr: return "NegativeSinr";
    case Errc::EmptyRing: return "EmptyRing";
    case Errc::ZeroTotalThroughput: return "ZeroTotalThroughput";
    case Errc::ZeroPopulation: return "ZeroPopulation";
    case Errc::NoCandidates: return "NoCandidates";
    case Errc::EmptyTrials: return "EmptyTrials";
    case Errc::EmptyResults: return "EmptyResults";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace trbt

#pragma once

// Text front end: polynomial parsing, JSON and plain-text reports, and the
// driver shared by the nkinf executable and the tests.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "nkinf/detector.hpp"

namespace nkinf {

inline constexpr int kJsonSchemaVersion = 1;

enum ExitCode : int {
  kExitOk = 0,
  kExitParseError = 2,
  kExitGuardExhausted = 3,
  kExitInternalError = 4,
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : std::runtime_error(message + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Sums of terms `c*x^a*y^b`, where c is an integer or int/int. No parentheses.
QPolynomial parse_polynomial(std::string_view text, const QRingPtr& ring);

/// "x, y,z" -> {x, y, z}; rejects empty, malformed and repeated names.
std::vector<std::string> parse_variable_list(std::string_view text);

struct RunConfig {
  /// super_polar, iterated_polar or both.
  std::string method = "super_polar";
  DetectorConfig detector;
  bool json = false;
  /// Adds wall-clock timings to the JSON, which then stops being reproducible.
  bool timings = false;
};

nlohmann::ordered_json report_to_json(const DetectionReport& report, bool timings = false);

/// The exact fields of a report (input, config, per-run seeds and rho,
/// rational roots, flags, bounds, warnings), read back from JSON.
DetectionReport report_from_json(const nlohmann::ordered_json& j);

/// Top-level document; a single report, or a wrapper for method=both.
nlohmann::ordered_json document_to_json(const RunConfig& config, const std::vector<DetectionReport>& reports);

void write_text_report(std::ostream& out, const DetectionReport& report);

/// Parses, detects and prints; returns one of the ExitCode values.
int run_cli(const RunConfig& config, const std::vector<std::string>& variables, const std::string& polynomial,
            std::ostream& out, std::ostream& err);

}  // namespace nkinf

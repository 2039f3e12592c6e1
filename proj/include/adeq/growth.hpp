#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adeq/expression.hpp"

namespace adeq {

enum class GrowthKind { LogMaxModulus, Characteristic, Margin };

const char* to_string(GrowthKind k);

/// One numeric measurement on the circle |z| = r.
struct GrowthSample {
  double r = 0;
  double value = 0;  // log M(r, f) or T(r, f)
  GrowthKind kind = GrowthKind::LogMaxModulus;
  unsigned samples = 0;
  bool overflow = false;
};

/// log M(r, f), the maximum of log|f| over `samples` equally spaced points.
GrowthSample max_modulus(const Expression& f, double r, unsigned samples, const DefinitionEnvironment& env = {});

/// T(r, f) = (1/2 pi) * integral of log+|f(r e^{it})| dt by the trapezoid rule.
GrowthSample characteristic(const Expression& f, double r, unsigned samples, const DefinitionEnvironment& env = {});

/// True when f (with definitions resolved) contains exp/sin/cos of a
/// nonconstant argument; polynomials return false.
bool is_transcendental(const Expression& f, const DefinitionEnvironment& env);

struct BakerScanResult {
  unsigned p = 0;
  std::vector<double> radii;
  std::vector<double> margins;  // log M(r, f^p) - log M(r, g)
  double threshold_radius_estimate = 0;
  std::vector<std::string> rejected;  // why smaller p failed
};

/// Smallest p <= p_max with log M(r, f^p) > log M(r, g) + tolerance at every
/// radius. Throws DomainError for polynomial f.
std::optional<BakerScanResult> baker_scan(const Expression& f, const Expression& g, unsigned p_max,
                                          const std::vector<double>& radii, const DefinitionEnvironment& env,
                                          unsigned samples = 256, double tolerance = 1e-9);

struct InequalityRow {
  std::string check;    // polya, sandwich, convexity, r4, t_r4, U
  std::string subject;  // f, g or f(g)
  double r = 0;
  double lhs = 0;
  double rhs = 0;
  bool pass = false;
  bool overflow = false;
};

struct InequalityReport {
  std::vector<InequalityRow> rows;
  /// Smallest sampled radius from which T(r^4, g) >= 3 T(r, g) holds at every
  /// larger sampled radius.
  std::optional<double> t_r4_threshold;
};

InequalityReport inequality_suite(const Expression& f, const Expression& g, const std::vector<double>& radii,
                                  double c, const DefinitionEnvironment& env, unsigned samples = 1024);

std::string samples_csv(const std::vector<GrowthSample>& samples);
std::string report_json(const InequalityReport& report, int indent = 2);
std::string baker_json(const std::optional<BakerScanResult>& result, int indent = 2);

}  // namespace adeq

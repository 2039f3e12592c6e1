#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "adeq/exact_scalar.hpp"

namespace adeq {

using Complex = std::complex<double>;

enum class SeriesMode { Exact, Numeric };

enum class BinaryOp { Add, Sub, Mul, Div };
enum class Elementary { Exp, Sin, Cos };

/// Comparison and division thresholds for numeric-mode series.
struct NumericTolerance {
  double relative = 1e-9;
  double absolute = 1e-12;
  /// Leading coefficients at or below this magnitude count as zero.
  double epsilon = 1e-12;
};

/// Truncated Taylor expansion c_0 + c_1 h + ... + c_N h^N about some center.
///
/// The order N is the index of the last known coefficient; nothing beyond it
/// is claimed. Binary operations truncate to the smaller order.
class PowerSeries {
 public:
  PowerSeries() : coeffs_(std::vector<ExactScalar>{ExactScalar()}) {}
  explicit PowerSeries(std::vector<ExactScalar> c);
  explicit PowerSeries(std::vector<Complex> c);

  static PowerSeries constant(const ExactScalar& c, std::size_t order);
  static PowerSeries constant(Complex c, std::size_t order);
  /// The series of h itself (0 + 1 h).
  static PowerSeries variable(SeriesMode mode, std::size_t order);
  static PowerSeries zero(SeriesMode mode, std::size_t order);

  SeriesMode mode() const {
    return std::holds_alternative<std::vector<ExactScalar>>(coeffs_) ? SeriesMode::Exact
                                                                     : SeriesMode::Numeric;
  }
  std::size_t order() const;
  const std::vector<ExactScalar>& exact() const;
  const std::vector<Complex>& numeric() const;

  PowerSeries truncated(std::size_t order) const;
  /// The same series with its constant term replaced by zero.
  PowerSeries without_constant() const;
  /// Exact series converted coefficientwise to complex doubles via `convert`.
  template <class F>
  PowerSeries to_numeric(F&& convert) const {
    std::vector<Complex> out;
    for (const auto& c : exact()) out.push_back(convert(c));
    return PowerSeries(std::move(out));
  }

  /// Exact mode: every coefficient is zero. Numeric: every coefficient is at
  /// most tol.absolute in magnitude.
  bool is_zero(const NumericTolerance& tol = {}) const;

  std::string to_string() const;

 private:
  std::variant<std::vector<ExactScalar>, std::vector<Complex>> coeffs_;
};

PowerSeries ps_arithmetic(const PowerSeries& a, const PowerSeries& b, BinaryOp op,
                          const NumericTolerance& tol = {});
PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
PowerSeries operator/(const PowerSeries& a, const PowerSeries& b);
PowerSeries operator-(const PowerSeries& a);

PowerSeries scale(const PowerSeries& a, const ExactScalar& c);
PowerSeries scale(const PowerSeries& a, Complex c);
PowerSeries ps_pow(const PowerSeries& a, unsigned e);

PowerSeries ps_derive(const PowerSeries& a);
/// outer(inner(h)); inner must have a zero constant term.
PowerSeries ps_compose(const PowerSeries& outer, const PowerSeries& inner,
                       const NumericTolerance& tol = {});
/// exp/sin/cos of a series with zero constant term.
PowerSeries ps_elementary(Elementary kind, const PowerSeries& a, const NumericTolerance& tol = {});

/// Coefficientwise agreement up to the smaller order. Numeric mode uses
/// |a_k - b_k| <= max(absolute, relative * max(|a_k|, |b_k|)).
bool series_equal(const PowerSeries& a, const PowerSeries& b, const NumericTolerance& tol = {});

}  // namespace adeq

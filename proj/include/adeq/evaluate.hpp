#pragma once

#include <complex>

#include "adeq/exact_scalar.hpp"
#include "adeq/expression.hpp"

namespace adeq {

/// Value of an expression at a point. `overflow` is set (and `value` is an
/// infinity) when the result is not representable in double precision.
struct NumericValue {
  std::complex<double> value;
  bool overflow = false;
};

/// A nonzero complex number stored as its logarithm; |x| = exp(log.real()).
/// Survives magnitudes like exp(exp(exp(4))) that overflow doubles.
struct LogComplex {
  bool zero = false;
  std::complex<double> log;

  double log_abs() const;
};

NumericValue eval_numeric(const Expression& e, std::complex<double> point,
                          const DefinitionEnvironment& env = {});

/// log f(point) on the principal sheet up to multiples of 2*pi*i. `overflow`
/// is set when even the logarithm is out of range.
struct LogValue {
  LogComplex value;
  bool overflow = false;
};
LogValue eval_log(const Expression& e, std::complex<double> point, const DefinitionEnvironment& env = {});

/// Numeric value of an adjoined constant (pi, exp(1), sin(2), ...).
std::complex<double> constant_value(const Symbol* s);

/// Numeric value of an exact scalar; the variable z (if present) takes
/// the value `z`. Throws DomainError for jet symbols.
std::complex<double> to_complex(const ExactScalar& x, std::complex<double> z = 0);

}  // namespace adeq

#include "adeq/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "adeq/errors.hpp"

namespace adeq {
namespace {

template <class T>
struct Ops;

template <>
struct Ops<ExactScalar> {
  static ExactScalar from(long v) { return ExactScalar(v); }
  static ExactScalar inv(long v) { return ExactScalar::rational(1, v); }
  static bool negligible(const ExactScalar& v, const NumericTolerance&) { return v.is_zero(); }
};

template <>
struct Ops<Complex> {
  static Complex from(long v) { return {static_cast<double>(v), 0.0}; }
  static Complex inv(long v) { return {1.0 / static_cast<double>(v), 0.0}; }
  static bool negligible(const Complex& v, const NumericTolerance& tol) {
    return std::abs(v) <= tol.epsilon;
  }
};

template <class T>
using Coeffs = std::vector<T>;

template <class T>
Coeffs<T> add(const Coeffs<T>& a, const Coeffs<T>& b, bool subtract) {
  const std::size_t n = std::min(a.size(), b.size());
  Coeffs<T> r(n);
  for (std::size_t k = 0; k < n; ++k) r[k] = subtract ? a[k] - b[k] : a[k] + b[k];
  return r;
}

template <class T>
Coeffs<T> mul(const Coeffs<T>& a, const Coeffs<T>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  Coeffs<T> r(n, Ops<T>::from(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == T{}) continue;
    for (std::size_t j = 0; i + j < n; ++j) {
      if (b[j] == T{}) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  return r;
}

template <class T>
Coeffs<T> div(const Coeffs<T>& a, const Coeffs<T>& b, const NumericTolerance& tol) {
  if (Ops<T>::negligible(b[0], tol))
    throw DomainError("series division by a series with vanishing constant term");
  const std::size_t n = std::min(a.size(), b.size());
  const T inv0 = Ops<T>::from(1) / b[0];
  Coeffs<T> q(n);
  for (std::size_t k = 0; k < n; ++k) {
    T acc = a[k];
    for (std::size_t j = 1; j <= k; ++j)
      if (!(b[j] == T{})) acc -= b[j] * q[k - j];
    q[k] = acc * inv0;
  }
  return q;
}

template <class T>
Coeffs<T> derive(const Coeffs<T>& a) {
  if (a.size() < 2) throw DomainError("cannot differentiate a series of order 0");
  Coeffs<T> r(a.size() - 1);
  for (std::size_t k = 0; k + 1 < a.size(); ++k) r[k] = a[k + 1] * Ops<T>::from(static_cast<long>(k + 1));
  return r;
}

template <class T>
Coeffs<T> compose(const Coeffs<T>& outer, const Coeffs<T>& inner, const NumericTolerance& tol) {
  if (!Ops<T>::negligible(inner[0], tol))
    throw DomainError("series composition needs an inner series with zero constant term");
  Coeffs<T> in = inner;
  in[0] = Ops<T>::from(0);
  const std::size_t n = std::min(outer.size(), in.size());
  in.resize(n);
  // Horner in the truncated ring.
  Coeffs<T> r(n, Ops<T>::from(0));
  r[0] = outer[n - 1];
  for (std::size_t k = n - 1; k-- > 0;) {
    r = mul(r, in);
    r[0] += outer[k];
  }
  return r;
}

template <class T>
Coeffs<T> elementary(Elementary kind, const Coeffs<T>& a, const NumericTolerance& tol) {
  if (!Ops<T>::negligible(a[0], tol))
    throw DomainError("elementary series function needs a zero constant term");
  const std::size_t n = a.size();
  // k * a_k, the coefficients of h * a'(h).
  Coeffs<T> ka(n);
  for (std::size_t k = 0; k < n; ++k) ka[k] = a[k] * Ops<T>::from(static_cast<long>(k));
  ka[0] = Ops<T>::from(0);
  if (kind == Elementary::Exp) {
    Coeffs<T> e(n, Ops<T>::from(0));
    e[0] = Ops<T>::from(1);
    for (std::size_t m = 1; m < n; ++m) {
      T acc = Ops<T>::from(0);
      for (std::size_t k = 1; k <= m; ++k)
        if (!(ka[k] == T{})) acc += ka[k] * e[m - k];
      e[m] = acc * Ops<T>::inv(static_cast<long>(m));
    }
    return e;
  }
  Coeffs<T> s(n, Ops<T>::from(0));
  Coeffs<T> c(n, Ops<T>::from(0));
  c[0] = Ops<T>::from(1);
  for (std::size_t m = 1; m < n; ++m) {
    T as = Ops<T>::from(0);
    T ac = Ops<T>::from(0);
    for (std::size_t k = 1; k <= m; ++k) {
      if (ka[k] == T{}) continue;
      as += ka[k] * c[m - k];
      ac += ka[k] * s[m - k];
    }
    s[m] = as * Ops<T>::inv(static_cast<long>(m));
    c[m] = -(ac * Ops<T>::inv(static_cast<long>(m)));
  }
  return kind == Elementary::Sin ? s : c;
}

void require_same_mode(const PowerSeries& a, const PowerSeries& b) {
  if (a.mode() != b.mode()) throw ModeMismatch();
}

}  // namespace

PowerSeries::PowerSeries(std::vector<ExactScalar> c) : coeffs_(std::move(c)) {
  if (exact().empty()) throw DomainError("power series needs at least one coefficient");
}

PowerSeries::PowerSeries(std::vector<Complex> c) : coeffs_(std::move(c)) {
  if (numeric().empty()) throw DomainError("power series needs at least one coefficient");
  for (const Complex& v : numeric())
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw ExpansionError("numeric series coefficient is not finite");
}

PowerSeries PowerSeries::constant(const ExactScalar& c, std::size_t order) {
  std::vector<ExactScalar> v(order + 1);
  v[0] = c;
  return PowerSeries(std::move(v));
}

PowerSeries PowerSeries::constant(Complex c, std::size_t order) {
  std::vector<Complex> v(order + 1);
  v[0] = c;
  return PowerSeries(std::move(v));
}

PowerSeries PowerSeries::variable(SeriesMode mode, std::size_t order) {
  if (mode == SeriesMode::Exact) {
    std::vector<ExactScalar> v(order + 1);
    if (order >= 1) v[1] = ExactScalar(1);
    return PowerSeries(std::move(v));
  }
  std::vector<Complex> v(order + 1);
  if (order >= 1) v[1] = 1.0;
  return PowerSeries(std::move(v));
}

PowerSeries PowerSeries::zero(SeriesMode mode, std::size_t order) {
  if (mode == SeriesMode::Exact) return PowerSeries(std::vector<ExactScalar>(order + 1));
  return PowerSeries(std::vector<Complex>(order + 1));
}

std::size_t PowerSeries::order() const {
  return std::visit([](const auto& v) { return v.size() - 1; }, coeffs_);
}

const std::vector<ExactScalar>& PowerSeries::exact() const {
  if (mode() != SeriesMode::Exact) throw ModeMismatch();
  return std::get<std::vector<ExactScalar>>(coeffs_);
}

const std::vector<Complex>& PowerSeries::numeric() const {
  if (mode() != SeriesMode::Numeric) throw ModeMismatch();
  return std::get<std::vector<Complex>>(coeffs_);
}

PowerSeries PowerSeries::truncated(std::size_t order) const {
  return std::visit(
      [order](auto v) {
        if (order + 1 < v.size()) v.resize(order + 1);
        return PowerSeries(std::move(v));
      },
      coeffs_);
}

PowerSeries PowerSeries::without_constant() const {
  return std::visit(
      [](auto v) {
        v[0] = {};
        return PowerSeries(std::move(v));
      },
      coeffs_);
}

bool PowerSeries::is_zero(const NumericTolerance& tol) const {
  if (mode() == SeriesMode::Exact)
    return std::all_of(exact().begin(), exact().end(), [](const ExactScalar& c) { return c.is_zero(); });
  return std::all_of(numeric().begin(), numeric().end(),
                     [&](const Complex& c) { return std::abs(c) <= tol.absolute; });
}

std::string PowerSeries::to_string() const {
  std::ostringstream os;
  if (mode() == SeriesMode::Exact) {
    const auto& c = exact();
    for (std::size_t k = 0; k < c.size(); ++k) os << k << ": " << c[k].to_string() << '\n';
  } else {
    const auto& c = numeric();
    os.precision(17);
    for (std::size_t k = 0; k < c.size(); ++k) os << k << ": " << c[k].real() << ' ' << c[k].imag() << '\n';
  }
  return os.str();
}

PowerSeries ps_arithmetic(const PowerSeries& a, const PowerSeries& b, BinaryOp op,
                          const NumericTolerance& tol) {
  require_same_mode(a, b);
  auto run = [&](const auto& x, const auto& y) {
    switch (op) {
      case BinaryOp::Add: return PowerSeries(add(x, y, false));
      case BinaryOp::Sub: return PowerSeries(add(x, y, true));
      case BinaryOp::Mul: return PowerSeries(mul(x, y));
      case BinaryOp::Div: return PowerSeries(div(x, y, tol));
    }
    throw std::logic_error("unknown series operation");
  };
  if (a.mode() == SeriesMode::Exact) return run(a.exact(), b.exact());
  return run(a.numeric(), b.numeric());
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) { return ps_arithmetic(a, b, BinaryOp::Add); }
PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) { return ps_arithmetic(a, b, BinaryOp::Sub); }
PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) { return ps_arithmetic(a, b, BinaryOp::Mul); }
PowerSeries operator/(const PowerSeries& a, const PowerSeries& b) { return ps_arithmetic(a, b, BinaryOp::Div); }

PowerSeries operator-(const PowerSeries& a) {
  if (a.mode() == SeriesMode::Exact) {
    auto c = a.exact();
    for (auto& v : c) v = -v;
    return PowerSeries(std::move(c));
  }
  auto c = a.numeric();
  for (auto& v : c) v = -v;
  return PowerSeries(std::move(c));
}

PowerSeries scale(const PowerSeries& a, const ExactScalar& c) {
  auto v = a.exact();
  for (auto& x : v) x *= c;
  return PowerSeries(std::move(v));
}

PowerSeries scale(const PowerSeries& a, Complex c) {
  auto v = a.numeric();
  for (auto& x : v) x *= c;
  return PowerSeries(std::move(v));
}

PowerSeries ps_pow(const PowerSeries& a, unsigned e) {
  PowerSeries result = a.mode() == SeriesMode::Exact ? PowerSeries::constant(ExactScalar(1), a.order())
                                                     : PowerSeries::constant(Complex(1.0), a.order());
  PowerSeries base = a;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

PowerSeries ps_derive(const PowerSeries& a) {
  if (a.mode() == SeriesMode::Exact) return PowerSeries(derive(a.exact()));
  return PowerSeries(derive(a.numeric()));
}

PowerSeries ps_compose(const PowerSeries& outer, const PowerSeries& inner, const NumericTolerance& tol) {
  require_same_mode(outer, inner);
  if (outer.mode() == SeriesMode::Exact) return PowerSeries(compose(outer.exact(), inner.exact(), tol));
  return PowerSeries(compose(outer.numeric(), inner.numeric(), tol));
}

PowerSeries ps_elementary(Elementary kind, const PowerSeries& a, const NumericTolerance& tol) {
  if (a.mode() == SeriesMode::Exact) return PowerSeries(elementary(kind, a.exact(), tol));
  return PowerSeries(elementary(kind, a.numeric(), tol));
}

bool series_equal(const PowerSeries& a, const PowerSeries& b, const NumericTolerance& tol) {
  require_same_mode(a, b);
  const std::size_t n = std::min(a.order(), b.order()) + 1;
  if (a.mode() == SeriesMode::Exact) {
    for (std::size_t k = 0; k < n; ++k)
      if (a.exact()[k] != b.exact()[k]) return false;
    return true;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex x = a.numeric()[k];
    const Complex y = b.numeric()[k];
    const double scale_k = std::max(std::abs(x), std::abs(y));
    if (std::abs(x - y) > std::max(tol.absolute, tol.relative * scale_k)) return false;
  }
  return true;
}

}  // namespace adeq

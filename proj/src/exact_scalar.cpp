#include "adeq/exact_scalar.hpp"

#include <algorithm>
#include <stdexcept>

namespace adeq {

ExactScalar::ExactScalar(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("exact scalar with zero denominator");
  normalize();
}

void ExactScalar::normalize() {
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (den_.is_constant()) {
    if (!den_.is_one()) {
      num_ *= GaussRational(1) / den_.constant_value();
      den_ = Poly(1);
    }
    return;
  }
  const Poly g = gcd(num_, den_);
  if (!g.is_one()) {
    num_ = *divide_exact(num_, g);
    den_ = *divide_exact(den_, g);
  }
  if (den_.is_constant()) {
    num_ *= GaussRational(1) / den_.constant_value();
    den_ = Poly(1);
    return;
  }
  if (!den_.leading_coefficient().is_one()) {
    const GaussRational inv = GaussRational(1) / den_.leading_coefficient();
    num_ *= inv;
    den_ *= inv;
  }
}

std::vector<const Symbol*> ExactScalar::symbols() const {
  std::vector<const Symbol*> out = num_.symbols();
  for (const Symbol* s : den_.symbols())
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  std::sort(out.begin(), out.end(), symbol_less);
  return out;
}

ExactScalar ExactScalar::operator-() const {
  ExactScalar r = *this;
  r.num_ = -r.num_;
  return r;
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
  if (o.is_zero()) return *this;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (!den_.is_one()) normalize();
    else if (num_.is_zero()) den_ = Poly(1);
    return *this;
  }
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) { return *this += -o; }

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = ExactScalar();
  if (den_.is_one() && o.den_.is_one()) {
    num_ = num_ * o.num_;
    return *this;
  }
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

ExactScalar ExactScalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero exact scalar");
  return {den_, num_};
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& o) {
  if (o.is_zero()) throw std::domain_error("division by zero exact scalar");
  if (o.is_gauss_rational()) {
    num_ *= GaussRational(1) / o.gauss_value();
    return *this;
  }
  return *this *= o.inverse();
}

ExactScalar ExactScalar::pow(unsigned e) const {
  ExactScalar r;
  r.num_ = num_.pow(e);
  r.den_ = den_.pow(e);
  return r;
}

ExactScalar ExactScalar::derivative(const Symbol* s) const {
  if (den_.is_one()) return ExactScalar(num_.derivative(s));
  return {num_.derivative(s) * den_ - num_ * den_.derivative(s), den_ * den_};
}

ExactScalar ExactScalar::substitute(const Symbol* s, const ExactScalar& value) const {
  if (!contains(s)) return *this;
  auto apply = [&](const Poly& p) {
    const auto coeffs = p.coefficients_in(s);
    ExactScalar r(coeffs.back());
    for (std::size_t k = coeffs.size() - 1; k-- > 0;) r = r * value + ExactScalar(coeffs[k]);
    return r;
  };
  return apply(num_) / apply(den_);
}

GaussRational ExactScalar::evaluate(const std::map<const Symbol*, GaussRational>& values) const {
  const GaussRational d = den_.evaluate(values);
  if (d.is_zero()) throw std::domain_error("denominator vanishes at evaluation point");
  return num_.evaluate(values) / d;
}

std::string ExactScalar::to_string() const {
  if (den_.is_one()) return num_.to_string();
  auto wrap = [](const Poly& p) {
    const std::string s = p.to_string();
    const bool atomic = p.size() == 1 && (p.leading_monomial().is_one()
                                              ? p.leading_coefficient().prints_atomic()
                                              : p.leading_coefficient().is_one());
    return atomic ? s : "(" + s + ")";
  };
  return wrap(num_) + "/" + wrap(den_);
}

}  // namespace adeq

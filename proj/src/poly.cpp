#include "adeq/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace adeq {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(const Symbol* s, unsigned e) {
  Monomial m;
  if (e > 0) m.factors_.emplace_back(s, e);
  return m;
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (const auto& [s, e] : factors_) d += e;
  return d;
}

unsigned Monomial::exponent(const Symbol* s) const {
  for (const auto& [t, e] : factors_)
    if (t == s) return e;
  return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.factors_.reserve(factors_.size() + o.factors_.size());
  auto a = factors_.begin();
  auto b = o.factors_.begin();
  while (a != factors_.end() || b != o.factors_.end()) {
    if (b == o.factors_.end() || (a != factors_.end() && symbol_less(a->first, b->first))) {
      r.factors_.push_back(*a++);
    } else if (a == factors_.end() || symbol_less(b->first, a->first)) {
      r.factors_.push_back(*b++);
    } else {
      r.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  for (const auto& [s, e] : factors_)
    if (o.exponent(s) < e) return false;
  return true;
}

Monomial Monomial::quotient(const Monomial& o) const {
  Monomial r;
  for (const auto& [s, e] : factors_) {
    const unsigned k = o.exponent(s);
    if (k > e) throw std::logic_error("monomial quotient is not exact");
    if (e > k) r.factors_.emplace_back(s, e - k);
  }
  return r;
}

Monomial Monomial::without(const Symbol* s) const {
  Monomial r;
  for (const auto& f : factors_)
    if (f.first != s) r.factors_.push_back(f);
  return r;
}

std::string Monomial::to_string() const {
  std::string out;
  for (const auto& [s, e] : factors_) {
    if (!out.empty()) out += '*';
    out += s->key;
    if (e > 1) out += '^' + std::to_string(e);
  }
  return out;
}

int grlex_compare(const Monomial& a, const Monomial& b) {
  const unsigned da = a.degree();
  const unsigned db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < fa.size() && j < fb.size()) {
    if (fa[i].first == fb[j].first) {
      if (fa[i].second != fb[j].second) return fa[i].second < fb[j].second ? -1 : 1;
      ++i;
      ++j;
    } else if (symbol_less(fa[i].first, fb[j].first)) {
      return 1;  // a has an earlier symbol that b lacks
    } else {
      return -1;
    }
  }
  if (i < fa.size()) return 1;
  if (j < fb.size()) return -1;
  return 0;
}

// -------------------------------------------------------------------- Poly

Poly::Poly(GaussRational c) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, std::move(c));
}

Poly Poly::symbol(const Symbol* s) { return term(GaussRational(1), Monomial::of(s)); }

Poly Poly::term(GaussRational c, Monomial m) {
  Poly p;
  if (!c.is_zero()) p.terms_.emplace(std::move(m), std::move(c));
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

bool Poly::is_one() const { return is_constant() && !terms_.empty() && terms_.begin()->second.is_one(); }

GaussRational Poly::constant_value() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? GaussRational(0) : it->second;
}

unsigned Poly::total_degree() const { return terms_.empty() ? 0 : terms_.begin()->first.degree(); }

std::vector<const Symbol*> Poly::symbols() const {
  std::vector<const Symbol*> out;
  for (const auto& [m, c] : terms_)
    for (const auto& [s, e] : m.factors())
      if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  std::sort(out.begin(), out.end(), symbol_less);
  return out;
}

bool Poly::contains(const Symbol* s) const {
  for (const auto& [m, c] : terms_)
    if (m.exponent(s) > 0) return true;
  return false;
}

unsigned Poly::degree_in(const Symbol* s) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(s));
  return d;
}

std::vector<Poly> Poly::coefficients_in(const Symbol* s) const {
  std::vector<Poly> out(degree_in(s) + 1);
  for (const auto& [m, c] : terms_) out[m.exponent(s)].add_term(m.without(s), c);
  return out;
}

Poly Poly::from_coefficients(const std::vector<Poly>& coeffs, const Symbol* s) {
  Poly out;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const Monomial xk = Monomial::of(s, static_cast<unsigned>(k));
    for (const auto& [m, c] : coeffs[k].terms_) out.add_term(m * xk, c);
  }
  return out;
}

void Poly::add_term(const Monomial& m, const GaussRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const GaussRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  if (a.is_zero() || b.is_zero()) return r;
  if (b.is_constant()) return Poly(a) *= b.constant_value();
  if (a.is_constant()) return Poly(b) *= a.constant_value();
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly result(1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

Poly Poly::monic() const {
  if (is_zero()) return {};
  return *this * (GaussRational(1) / leading_coefficient());
}

Poly Poly::derivative(const Symbol* s) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    const unsigned e = m.exponent(s);
    if (e == 0) continue;
    Monomial rest = m.without(s) * Monomial::of(s, e - 1);
    r.add_term(rest, c * GaussRational(static_cast<long>(e)));
  }
  return r;
}

GaussRational Poly::evaluate(const std::map<const Symbol*, GaussRational>& values) const {
  GaussRational sum;
  for (const auto& [m, c] : terms_) {
    GaussRational t = c;
    for (const auto& [s, e] : m.factors()) {
      auto it = values.find(s);
      if (it == values.end()) throw std::invalid_argument("no value for symbol " + s->key);
      for (unsigned k = 0; k < e; ++k) t *= it->second;
    }
    sum += t;
  }
  return sum;
}

Poly Poly::substitute(const Symbol* s, const Poly& replacement) const {
  if (!contains(s)) return *this;
  const auto coeffs = coefficients_in(s);
  Poly r = coeffs.back();
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) r = r * replacement + coeffs[k];
  return r;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    std::string t;
    if (m.is_one()) {
      t = c.to_string();
    } else if (c.is_one()) {
      t = m.to_string();
    } else if (c.is_minus_one()) {
      t = "-" + m.to_string();
    } else if (c.prints_atomic()) {
      t = c.to_string() + "*" + m.to_string();
    } else {
      t = "(" + c.to_string() + ")*" + m.to_string();
    }
    if (!out.empty() && t.front() != '-') out += '+';
    out += t;
  }
  return out;
}

// --------------------------------------------------------- division / gcd

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (b.is_constant()) return a * (GaussRational(1) / b.constant_value());
  Poly q;
  Poly r = a;
  const Monomial& lb = b.leading_monomial();
  const GaussRational inv = GaussRational(1) / b.leading_coefficient();
  while (!r.is_zero()) {
    const Monomial& lr = r.leading_monomial();
    if (!lb.divides(lr)) return std::nullopt;
    Poly t = Poly::term(r.leading_coefficient() * inv, lr.quotient(lb));
    q += t;
    r -= t * b;
  }
  return q;
}

namespace {

const Symbol* main_symbol(const Poly& a, const Poly& b) {
  const Symbol* best = nullptr;
  for (const Poly* p : {&a, &b})
    for (const Symbol* s : p->symbols())
      if (best == nullptr || symbol_less(s, best)) best = s;
  return best;
}

Poly content_in(const Poly& p, const Symbol* x) {
  Poly g;
  for (const Poly& c : p.coefficients_in(x)) {
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

Poly primitive_part(const Poly& p, const Symbol* x) {
  const Poly c = content_in(p, x);
  return *divide_exact(p, c);
}

Poly leading_coefficient_in(const Poly& p, const Symbol* x) { return p.coefficients_in(x).back(); }

Poly pseudo_remainder(Poly a, const Poly& b, const Symbol* x) {
  const unsigned db = b.degree_in(x);
  const Poly lb = leading_coefficient_in(b, x);
  while (!a.is_zero() && a.degree_in(x) >= db) {
    const unsigned d = a.degree_in(x) - db;
    const Poly la = leading_coefficient_in(a, x);
    a = lb * a - la * Poly::term(GaussRational(1), Monomial::of(x, d)) * b;
  }
  return a;
}

// gcd when one argument is a single term: the largest monomial dividing
// every term of both.
Poly monomial_gcd(const Poly& mono, const Poly& other) {
  Monomial g = mono.leading_monomial();
  for (const auto& [m, c] : other.terms()) {
    Monomial next;
    for (const auto& [s, e] : g.factors()) {
      const unsigned k = std::min(e, m.exponent(s));
      if (k > 0) next = next * Monomial::of(s, k);
    }
    g = std::move(next);
    if (g.is_one()) break;
  }
  return Poly::term(GaussRational(1), g);
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly(1);
  if (a.size() == 1) return monomial_gcd(a, b);
  if (b.size() == 1) return monomial_gcd(b, a);
  if (a == b) return a.monic();

  const Symbol* x = main_symbol(a, b);
  if (!a.contains(x)) return gcd(a, content_in(b, x));
  if (!b.contains(x)) return gcd(content_in(a, x), b);

  const Poly ca = content_in(a, x);
  const Poly cb = content_in(b, x);
  const Poly c = gcd(ca, cb);
  Poly pa = *divide_exact(a, ca);
  Poly pb = *divide_exact(b, cb);
  if (pa.degree_in(x) < pb.degree_in(x)) std::swap(pa, pb);
  while (!pb.is_zero()) {
    if (pb.degree_in(x) == 0) {
      pa = Poly(1);
      break;
    }
    Poly r = pseudo_remainder(pa, pb, x);
    pa = std::move(pb);
    pb = r.is_zero() ? Poly{} : primitive_part(r, x);
  }
  return (c * primitive_part(pa, x)).monic();
}

}  // namespace adeq

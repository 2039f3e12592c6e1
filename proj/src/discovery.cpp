#include "adeq/discovery.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

#include "adeq/chain_rewrite.hpp"
#include "adeq/errors.hpp"

namespace adeq {

const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found:
      return "found";
    case SearchStatus::NoRelation:
      return "none";
    case SearchStatus::VerificationFailed:
      return "verification_failed";
  }
  return "none";
}

namespace {

template <class T>
struct Echelon {
  std::vector<std::vector<T>> rows;  // reduced rows, pivot entries equal to 1
  std::vector<std::size_t> pivots;
};

bool zero(const GaussRational& x) { return x.is_zero(); }
bool zero(const ExactScalar& x) { return x.is_zero(); }

std::size_t cost(const GaussRational&) { return 0; }
std::size_t cost(const ExactScalar& x) { return x.numerator().size() + x.denominator().size(); }

// Gauss-Jordan elimination; among candidate pivots the cheapest entry wins
// to limit coefficient growth over symbolic fields.
template <class T>
Echelon<T> reduce(std::vector<std::vector<T>> m, std::size_t cols) {
  std::size_t r = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t best = m.size();
    for (std::size_t i = r; i < m.size(); ++i) {
      if (zero(m[i][c])) continue;
      if (best == m.size() || cost(m[i][c]) < cost(m[best][c])) best = i;
      if (cost(m[i][c]) <= 1) break;
    }
    if (best == m.size()) continue;
    std::swap(m[r], m[best]);
    const T inv = T(1) / m[r][c];
    for (std::size_t j = c; j < cols; ++j)
      if (!zero(m[r][j])) m[r][j] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || zero(m[i][c])) continue;
      const T factor = m[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (!zero(m[r][j])) m[i][j] -= factor * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return {std::move(m), std::move(pivots)};
}

template <class T>
std::vector<std::vector<T>> kernel_basis(const Echelon<T>& e, std::size_t cols) {
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<T> v(cols);
    v[f] = T(1);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Fixed rational stand-ins for adjoined constants, used to find the rank
// and the candidate support cheaply before exact elimination.
std::optional<std::vector<std::vector<GaussRational>>> specialize(const std::vector<std::vector<ExactScalar>>& m) {
  static const long values[][2] = {{37, 11}, {53, 17}, {71, 23}, {89, 29}, {107, 31}, {131, 37}, {151, 41}, {173, 43}};
  std::map<const Symbol*, GaussRational> at;
  std::vector<const Symbol*> symbols;
  for (const auto& row : m)
    for (const auto& x : row)
      for (const Symbol* s : x.symbols())
        if (std::find(symbols.begin(), symbols.end(), s) == symbols.end()) symbols.push_back(s);
  std::sort(symbols.begin(), symbols.end(), symbol_less);
  for (std::size_t k = 0; k < symbols.size(); ++k) {
    const auto& v = values[k % 8];
    at.emplace(symbols[k], GaussRational(mpq_class(v[0] + 2 * static_cast<long>(k / 8), v[1])));
  }
  std::vector<std::vector<GaussRational>> out;
  try {
    for (const auto& row : m) {
      std::vector<GaussRational> r;
      r.reserve(row.size());
      for (const auto& x : row) r.push_back(x.is_gauss_rational() ? x.gauss_value() : x.evaluate(at));
      out.push_back(std::move(r));
    }
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return out;
}

// Rows split by monomials in the adjoined constants. Because the constants
// are algebraically independent, a vector over Q(i) lies in the kernel of
// sum_mu mu*A_mu iff it lies in the kernel of every A_mu.
std::vector<std::vector<GaussRational>> split_by_constants(const std::vector<std::vector<ExactScalar>>& m,
                                                           std::size_t cols) {
  std::vector<std::vector<GaussRational>> out;
  for (const auto& row : m) {
    Poly lcm = 1;
    for (const auto& x : row)
      if (!x.denominator().is_one()) lcm = *divide_exact(lcm * x.denominator(), gcd(lcm, x.denominator()));
    std::map<Monomial, std::vector<GaussRational>, GrlexDescending> parts;
    for (std::size_t j = 0; j < cols; ++j) {
      if (row[j].is_zero()) continue;
      const Poly scaled = row[j].numerator() * *divide_exact(lcm, row[j].denominator());
      for (const auto& [mono, c] : scaled.terms()) {
        auto& r = parts[mono];
        if (r.empty()) r.resize(cols);
        r[j] = c;
      }
    }
    for (auto& kv : parts) out.push_back(std::move(kv.second));
  }
  return out;
}

std::vector<std::vector<ExactScalar>> lift(const std::vector<std::vector<GaussRational>>& basis) {
  std::vector<std::vector<ExactScalar>> out;
  for (const auto& v : basis) {
    std::vector<ExactScalar> w;
    w.reserve(v.size());
    for (const auto& x : v) w.emplace_back(x);
    out.push_back(std::move(w));
  }
  return out;
}

struct Candidate {
  std::vector<ExactScalar> v;
  std::size_t support = 0;
  std::size_t degree = 0;
  std::size_t index = 0;
};

std::vector<RationalCoefficient> certificate_coefficients(const std::vector<ExactScalar>& v, std::size_t count,
                                                          unsigned c) {
  const ExactScalar z = z_scalar();
  std::vector<RationalCoefficient> p(count);
  for (unsigned d = 0; d <= c; ++d)
    for (std::size_t j = 0; j < count; ++j)
      if (!v[d * count + j].is_zero()) p[j] += v[d * count + j] * z.pow(d);
  return p;
}

// Clear denominators, remove content, make the first nonzero entry monic.
std::vector<RationalCoefficient> normalize_vector(const std::vector<RationalCoefficient>& p) {
  Poly lcm = 1;
  for (const auto& x : p)
    if (!x.is_zero() && !x.denominator().is_one()) lcm = *divide_exact(lcm * x.denominator(), gcd(lcm, x.denominator()));
  std::vector<Poly> nums;
  Poly content;
  for (const auto& x : p) {
    Poly n = x.is_zero() ? Poly() : x.numerator() * *divide_exact(lcm, x.denominator());
    if (!n.is_zero()) content = content.is_zero() ? n.monic() : gcd(content, n);
    nums.push_back(std::move(n));
  }
  std::vector<RationalCoefficient> out;
  GaussRational lead;
  for (auto& n : nums) {
    if (n.is_zero()) {
      out.emplace_back();
      continue;
    }
    Poly q = *divide_exact(n, content);
    if (lead.is_zero()) lead = q.leading_coefficient();
    q *= GaussRational(1) / lead;
    out.emplace_back(std::move(q));
  }
  return out;
}

}  // namespace

RelationResult find_polynomial_relation(const std::vector<PowerSeries>& series, unsigned coeff_degree,
                                        std::optional<std::size_t> solve_order,
                                        std::optional<std::size_t> verify_order, const ExactScalar& center,
                                        std::size_t verify_margin) {
  if (series.empty()) throw DomainError("relation search needs at least one series");
  for (const auto& s : series)
    if (s.mode() != SeriesMode::Exact) throw ModeMismatch();
  const std::size_t count = series.size();
  const std::size_t unknowns = count * (coeff_degree + 1);
  RelationResult result;
  result.solve_order = solve_order.value_or(unknowns + 10);
  result.verify_order = verify_order.value_or(result.solve_order + verify_margin);
  if (result.verify_order < result.solve_order) throw DomainError("verify order must not be below the solve order");
  const std::size_t n = result.verify_order;
  for (const auto& s : series)
    if (s.order() < n)
      throw DomainError("series of order " + std::to_string(s.order()) + " is too short; order " + std::to_string(n) +
                        " is needed");

  // Columns z^d * F_j, degree-major.
  const PowerSeries zvar = PowerSeries::variable(SeriesMode::Exact, n) + PowerSeries::constant(center, n);
  std::vector<PowerSeries> columns;
  PowerSeries zpow = PowerSeries::constant(ExactScalar(1), n);
  for (unsigned d = 0; d <= coeff_degree; ++d) {
    for (const auto& s : series) columns.push_back(d == 0 ? s.truncated(n) : zpow * s.truncated(n));
    zpow = zpow * zvar;
  }

  const std::size_t rows = result.solve_order + 1;
  std::vector<std::vector<ExactScalar>> m(rows, std::vector<ExactScalar>(unknowns));
  for (std::size_t k = 0; k < rows; ++k)
    for (std::size_t j = 0; j < unknowns; ++j) m[k][j] = columns[j].exact()[k];
  result.rank = {unknowns, rows, 0};

  // Returns the first kernel vector (in tie-break order) that survives
  // verification to the verify order.
  auto select = [&](const std::vector<std::vector<ExactScalar>>& basis) -> bool {
    std::vector<Candidate> candidates;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      Candidate c{basis[b], 0, 0, b};
      for (std::size_t j = 0; j < unknowns; ++j) {
        if (c.v[j].is_zero()) continue;
        ++c.support;
        c.degree += j / count;
      }
      candidates.push_back(std::move(c));
    }
    std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
      return std::tie(a.support, a.degree, a.index) < std::tie(b.support, b.degree, b.index);
    });
    for (const Candidate& c : candidates) {
      PowerSeries residual = PowerSeries::zero(SeriesMode::Exact, n);
      for (std::size_t j = 0; j < unknowns; ++j)
        if (!c.v[j].is_zero()) residual = residual + scale(columns[j], c.v[j]);
      if (!residual.is_zero()) continue;
      result.status = SearchStatus::Found;
      result.certificate =
          RelationCertificate{normalize_vector(certificate_coefficients(c.v, count, coeff_degree)), n};
      return true;
    }
    return false;
  };

  bool symbolic = false;
  for (const auto& row : m)
    for (const auto& x : row)
      if (!x.is_gauss_rational()) symbolic = true;

  if (!symbolic) {
    std::vector<std::vector<GaussRational>> q(rows);
    for (std::size_t k = 0; k < rows; ++k)
      for (const auto& x : m[k]) q[k].push_back(x.gauss_value());
    const auto e = reduce(std::move(q), unknowns);
    result.rank.rank = e.pivots.size();
    if (e.pivots.size() == unknowns) return result;
    if (!select(lift(kernel_basis(e, unknowns)))) result.status = SearchStatus::VerificationFailed;
    return result;
  }

  std::vector<std::size_t> restrict_to(unknowns);
  std::iota(restrict_to.begin(), restrict_to.end(), 0);
  if (auto special = specialize(m)) {
    const auto e = reduce(std::move(*special), unknowns);
    result.rank.rank = e.pivots.size();
    if (e.pivots.size() == unknowns) return result;
    std::vector<bool> used(unknowns, false);
    for (const auto& v : kernel_basis(e, unknowns))
      for (std::size_t j = 0; j < unknowns; ++j)
        if (!v[j].is_zero()) used[j] = true;
    restrict_to.clear();
    for (std::size_t j = 0; j < unknowns; ++j)
      if (used[j]) restrict_to.push_back(j);
  }

  // Relations with Q(i) coefficients first; they need no symbolic elimination.
  {
    const auto e = reduce(split_by_constants(m, unknowns), unknowns);
    if (e.pivots.size() < unknowns && select(lift(kernel_basis(e, unknowns)))) return result;
  }

  auto exact_kernel = [&](const std::vector<std::size_t>& cols) {
    std::vector<std::vector<ExactScalar>> sub(rows);
    for (std::size_t k = 0; k < rows; ++k)
      for (std::size_t j : cols) sub[k].push_back(m[k][j]);
    const auto e = reduce(std::move(sub), cols.size());
    std::vector<std::vector<ExactScalar>> out;
    for (auto& v : kernel_basis(e, cols.size())) {
      std::vector<ExactScalar> full(unknowns);
      for (std::size_t j = 0; j < cols.size(); ++j) full[cols[j]] = std::move(v[j]);
      out.push_back(std::move(full));
    }
    return out;
  };
  auto basis = exact_kernel(restrict_to);
  if (basis.empty() && restrict_to.size() < unknowns) {
    std::vector<std::size_t> all(unknowns);
    std::iota(all.begin(), all.end(), 0);
    basis = exact_kernel(all);
  }
  result.rank.rank = unknowns - basis.size();
  if (basis.empty()) return result;
  if (!select(basis)) result.status = SearchStatus::VerificationFailed;
  return result;
}

  std::vector<DiffMonomial> enumerate_monomials(const AnsatzBounds& bounds) {
  std::vector<DiffMonomial> out;
  std::vector<unsigned> m(bounds.max_order + 1, 0);
  const unsigned wmax = bounds.max_weight.value_or(~0u);
  auto rec = [&](auto&& self, unsigned k, unsigned degree, unsigned weight) -> void {
    if (k > bounds.max_order) {
      out.emplace_back(m);
      return;
    }
    for (unsigned e = 0; degree + e <= bounds.max_degree && weight + k * e <= wmax; ++e) {
      m[k] = e;
      self(self, k + 1, degree + e, weight + k * e);
    }
    m[k] = 0;
  };
  rec(rec, 0, 0, 0);
  std::sort(out.begin(), out.end(), DiffMonomialAscending());
  return out;
}

namespace {

AdeResult search(const PowerSeries& f, const ExactScalar& center, const AnsatzBounds& bounds,
                 const std::vector<DiffMonomial>& monomials) {
  AdeResult result;
  result.support_size = monomials.size();
  if (monomials.empty()) return result;
  unsigned n = 0;
  for (const auto& m : monomials) n = std::max(n, m.order());
  const std::size_t unknowns = monomials.size() * (bounds.max_coeff_degree + 1);
  const std::size_t solve = bounds.solve_order.value_or(unknowns + 10);
  const std::size_t verify = bounds.verify_order.value_or(solve + bounds.verify_margin);
  if (f.order() < verify + n)
    throw DomainError("series of order " + std::to_string(f.order()) + " is too short; order " +
                      std::to_string(verify + n) + " is needed");

  std::vector<PowerSeries> derivs;
  PowerSeries d = f.truncated(verify + n);
  for (unsigned k = 0; k <= n; ++k) {
    derivs.push_back(d.truncated(verify));
    if (k < n) d = ps_derive(d);
  }
  std::map<std::vector<unsigned>, PowerSeries> cache;
  cache.emplace(std::vector<unsigned>{}, PowerSeries::constant(ExactScalar(1), verify));
  auto monomial_series = [&](auto&& self, const DiffMonomial& m) -> PowerSeries {
    if (auto it = cache.find(m.exponents()); it != cache.end()) return it->second;
    std::vector<unsigned> e = m.exponents();
    const std::size_t k = e.size() - 1;
    e[k] -= 1;
    PowerSeries s = self(self, DiffMonomial(e)) * derivs[k];
    cache.emplace(m.exponents(), s);
    return s;
  };
  std::vector<PowerSeries> columns;
  for (const auto& m : monomials) columns.push_back(monomial_series(monomial_series, m));

  RelationResult r = find_polynomial_relation(columns, bounds.max_coeff_degree, solve, verify, center);
  result.status = r.status;
  result.rank = r.rank;
  result.solve_order = r.solve_order;
  result.verify_order = r.verify_order;
  if (r.certificate) {
    DiffPolynomial p;
    for (std::size_t j = 0; j < monomials.size(); ++j)
      p += DiffPolynomial::term(r.certificate->coefficients[j], monomials[j]);
    result.ade = normalize(p);
  }
  return result;
}

std::size_t required_order(const AnsatzBounds& bounds, const std::vector<DiffMonomial>& monomials) {
  unsigned n = 0;
  for (const auto& m : monomials) n = std::max(n, m.order());
  const std::size_t unknowns = monomials.size() * (bounds.max_coeff_degree + 1);
  const std::size_t solve = bounds.solve_order.value_or(unknowns + 10);
  return bounds.verify_order.value_or(solve + bounds.verify_margin) + n;
}

}  // namespace

AdeResult find_ade(const Expression& f, const AnsatzBounds& bounds, const DefinitionEnvironment& env,
                   const std::optional<std::vector<DiffMonomial>>& support, const ExactScalar& center) {
  const std::vector<DiffMonomial> monomials = support ? *support : enumerate_monomials(bounds);
  SeriesExpander expander(env);
  const PowerSeries s = expander.expand(f, center, required_order(bounds, monomials));
  return search(s, center, bounds, monomials);
}

AdeResult find_ade(const RawSeries& f, const AnsatzBounds& bounds,
                   const std::optional<std::vector<DiffMonomial>>& support) {
  const std::vector<DiffMonomial> monomials = support ? *support : enumerate_monomials(bounds);
  return search(f.series, f.center, bounds, monomials);
}

bool verify_annihilator(const DiffPolynomial& p, const Expression& f, std::size_t order,
                        const DefinitionEnvironment& env, const ExactScalar& center) {
  return apply(p, f, center, order, env).is_zero();
}

// ------------------------------------------------------------- raw series

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

ExactScalar parse_constant(std::string_view text) {
  const Expression e = parse_expression(text);
  if (!e.is_constant()) throw DomainError("'" + std::string(text) + "' is not a constant");
  return to_rational(e);
}

RawSeries parse_raw_series(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<std::size_t> order;
  ExactScalar center;
  std::map<std::size_t, ExactScalar> coeffs;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("order", 0) == 0) {
      order = std::stoul(line.substr(5));
    } else if (line.rfind("center", 0) == 0) {
      center = parse_constant(trim(line.substr(6)));
    } else {
      const auto colon = line.find(':');
      if (colon == std::string::npos) throw DomainError("malformed series line '" + line + "'");
      coeffs[std::stoul(line.substr(0, colon))] = parse_constant(trim(line.substr(colon + 1)));
    }
  }
  if (!order) throw DomainError("raw series is missing its 'order N' header");
  std::vector<ExactScalar> c(*order + 1);
  for (std::size_t k = 0; k <= *order; ++k) {
    auto it = coeffs.find(k);
    if (it == coeffs.end()) throw DomainError("raw series is missing coefficient " + std::to_string(k));
    c[k] = it->second;
  }
  return {PowerSeries(std::move(c)), center};
}

std::string format_raw_series(const RawSeries& raw) {
  return "order " + std::to_string(raw.series.order()) + "\ncenter " + raw.center.to_string() + "\n" +
         raw.series.to_string();
}

}  // namespace adeq

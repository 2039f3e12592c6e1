#include "adeq/pipeline.hpp"

#include <algorithm>
#include <chrono>

#include <json.hpp>

#include "adeq/errors.hpp"

namespace adeq {

namespace {

PowerSeries compose_series(SeriesExpander& ex, const Expression& outer, const Expression& inner,
                           const ExactScalar& center, std::size_t order) {
  const PowerSeries in = ex.expand(inner, center, order);
  if (in.mode() == SeriesMode::Exact)
    return ps_compose(ex.expand(outer, in.exact().front(), order), in.without_constant());
  return ps_compose(ex.expand_numeric(outer, in.numeric().front(), order), in.without_constant(), ex.options().tolerance);
}

std::string bounds_text(unsigned n, unsigned d, unsigned w, unsigned c) {
  return "n=" + std::to_string(n) + " d=" + std::to_string(d) + " w=" + std::to_string(w) + " c=" + std::to_string(c);
}

std::string search_text(const AdeResult& r) {
  std::string s = to_string(r.status);
  s += " (support " + std::to_string(r.support_size) + ", rank " + std::to_string(r.rank.rank) + "/" +
       std::to_string(r.rank.unknowns) + ")";
  return s;
}

// Expands `e` once and reuses the series for every search that fits.
class SeriesSupply {
 public:
  SeriesSupply(const Expression& e, const DefinitionEnvironment& env) : e_(e), expander_(env) {}

  RawSeries at_least(std::size_t order) {
    if (!series_ || series_->order() < order) series_ = expander_.expand(e_, ExactScalar(), order + order / 2);
    return {*series_, ExactScalar()};
  }

 private:
  Expression e_;
  SeriesExpander expander_;
  std::optional<PowerSeries> series_;
};

std::size_t verify_order_for(const std::vector<DiffMonomial>& monomials, unsigned c, std::size_t floor_order) {
  const std::size_t unknowns = monomials.size() * (c + 1);
  return std::max(floor_order, unknowns + 20);
}

}  // namespace

bool check_permutable(const Expression& f, const Expression& g, std::size_t order, const DefinitionEnvironment& env,
                      const ExpansionOptions& options, const ExactScalar& center) {
  SeriesExpander ex(env, options);
  const PowerSeries fg = compose_series(ex, f, g, center, order);
  const PowerSeries gf = compose_series(ex, g, f, center, order);
  return series_equal(fg, gf, options.tolerance);
}

Expression iterate_expression(const Expression& f, unsigned n) {
  if (n == 0) return Expression::var();
  if (f.kind() == NodeKind::Ref && f.count() == 0) return n == 1 ? f : Expression::iterate(f.name(), n);
  Expression r = f;
  for (unsigned k = 1; k < n; ++k) r = substitute(f, r);
  return r;
}

ComposeResult compose_ade(const DiffPolynomial& p_f, const DiffPolynomial& q_g, const Expression& f,
                          const Expression& g, const ComposeBounds& bounds, const DefinitionEnvironment& env) {
  if (!verify_annihilator(p_f, f, bounds.check_order, env))
    throw DomainError(p_f.to_string() + " does not annihilate " + f.to_string());
  if (!verify_annihilator(q_g, g, bounds.check_order, env))
    throw DomainError(q_g.to_string() + " does not annihilate " + g.to_string());
  const Expression h = substitute(f, g);
  const unsigned w0 = p_f.weight() + q_g.weight();
  const unsigned w_max = std::max(w0, bounds.max_weight.value_or(w0 + 2));
  SeriesSupply supply(h, env);
  ComposeResult result;
  for (unsigned d = 1; d <= bounds.max_degree; ++d) {
    for (unsigned w = w0; w <= w_max; ++w) {
      for (unsigned c = 0; c <= bounds.max_coeff_degree; ++c) {
        AnsatzBounds b;
        b.max_order = w;
        b.max_degree = d;
        b.max_weight = w;
        b.max_coeff_degree = c;
        const auto monomials = enumerate_monomials(b);
        b.verify_order = verify_order_for(monomials, c, bounds.verify_order.value_or(40));
        const AdeResult r = find_ade(supply.at_least(*b.verify_order + w), b, monomials);
        result.trace.push_back(bounds_text(w, d, w, c) + ": " + search_text(r));
        result.last_support_size = r.support_size;
        result.verify_order = r.verify_order;
        if (r.status == SearchStatus::Found) {
          result.status = SearchStatus::Found;
          result.ade = r.ade;
          return result;
        }
        if (r.status == SearchStatus::VerificationFailed) result.status = SearchStatus::VerificationFailed;
      }
    }
  }
  return result;
}

ComposeResult iterate_ade(const Expression& f, const DiffPolynomial& p, unsigned n, const ComposeBounds& bounds,
                          const DefinitionEnvironment& env) {
  if (n == 0) throw DomainError("iterate count must be positive");
  ComposeResult result;
  if (!verify_annihilator(p, f, bounds.check_order, env))
    throw DomainError(p.to_string() + " does not annihilate " + f.to_string());
  result.status = SearchStatus::Found;
  result.ade = normalize(p);
  result.verify_order = bounds.check_order;
  Expression current = f;
  for (unsigned k = 2; k <= n; ++k) {
    ComposeResult step = compose_ade(p, *result.ade, f, current, bounds, env);
    for (auto& t : step.trace) result.trace.push_back("iterate " + std::to_string(k) + ": " + t);
    result.last_support_size = step.last_support_size;
    result.verify_order = step.verify_order;
    if (step.status != SearchStatus::Found) {
      result.status = step.status;
      result.ade.reset();
      return result;
    }
    result.ade = step.ade;
    current = substitute(f, current);
  }
  return result;
}

TransferReport transfer_ade(const Expression& f, const DiffPolynomial& p, const Expression& g,
                            const DefinitionEnvironment& env, const TransferOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  TransferReport report;
  report.input_ade = p;
  report.q = options.q;
  auto finish = [&](std::string status) {
    report.status = std::move(status);
    if (options.timing)
      report.wall_time_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
  };

  if (!check_permutable(f, g, options.permutability_order, env)) return finish("not_permutable");
  if (!verify_annihilator(p, f, options.verify_order, env)) return finish("invalid_ade");

  const unsigned q_last = options.auto_escalate ? std::max(options.q, options.q_max) : options.q;
  for (unsigned q = options.q; q <= q_last; ++q) {
    report.q = q;
    const std::string qtag = "q=" + std::to_string(q);
    const Expression F = iterate_expression(f, q);
    DiffPolynomial p_F = normalize(p);
    if (q > 1) {
      const ComposeResult it = iterate_ade(f, p, q, options.iterate_bounds, env);
      if (it.status != SearchStatus::Found) {
        report.escalations.push_back(qtag + ": no ADE for the iterate within bounds");
        continue;
      }
      p_F = *it.ade;
    }
    report.intermediate_ade = p_F;

    const TransferExpression t = transfer_diffpoly(p_F, q == 1 ? "f" : "F", "g");
    const ExactScalar center = transfer_center(g, env);
    const TransferCheck check = check_transfer(t, p_F, F, g, options.chain_order, env, center);
    report.transfer = t;
    report.support_J = t.support();
    std::sort(report.support_J.begin(), report.support_J.end(), DiffMonomialAscending());
    report.syntactic_weight = max_weight(t);
    report.nonvanishing_weight = check.nonvanishing_weight;
    if (!check.holds) {
      report.escalations.push_back(qtag + ": chain rewrite failed verification");
      return finish("chain_failed");
    }

    for (unsigned c = 0; c <= options.max_coeff_degree; ++c) {
      AnsatzBounds b;
      b.max_coeff_degree = c;
      b.verify_order = verify_order_for(report.support_J, c, options.verify_order);
      const AdeResult r = find_ade(g, b, env, report.support_J);
      report.escalations.push_back(qtag + " c=" + std::to_string(c) + ": " + search_text(r));
      if (r.status == SearchStatus::Found) {
        report.output_ade = r.ade;
        report.verified_order = r.verify_order;
        return finish("ok");
      }
    }
  }
  return finish("exhausted");
}

std::string to_json(const TransferReport& r, int indent) {
  using json = nlohmann::ordered_json;
  json j;
  j["status"] = r.status;
  j["q"] = r.q;
  j["intermediate_ade"] = r.intermediate_ade ? json(r.intermediate_ade->to_string()) : json(nullptr);
  json support = json::array();
  for (const auto& m : r.support_J) support.push_back(m.exponents());
  j["support_J"] = support;
  j["output_ade"] = r.output_ade ? json(r.output_ade->to_string()) : json(nullptr);
  j["verified_order"] = r.verified_order;
  j["escalations"] = r.escalations;
  j["wall_time_ms"] = static_cast<long long>(r.wall_time_ms + 0.5);
  return j.dump(indent);
}

}  // namespace adeq

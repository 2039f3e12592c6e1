#include "adeq/growth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include <json.hpp>

#include "adeq/errors.hpp"
#include "adeq/evaluate.hpp"
#include "adeq/pipeline.hpp"

namespace adeq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Absolute slack for the non-strict inequalities, in log scale.
constexpr double kLooseTol = 1e-6;

void check_args(double r, unsigned samples) {
  if (!(r > 0) || !std::isfinite(r)) throw DomainError("radius must be positive and finite");
  if (samples < 64 || (samples & (samples - 1)) != 0)
    throw DomainError("samples must be a power of two >= 64, got " + std::to_string(samples));
}

std::complex<double> circle_point(double r, unsigned k, unsigned n) {
  const double t = 2 * std::numbers::pi * k / n;
  return {r * std::cos(t), r * std::sin(t)};
}

// log M at radius exp(log_r); avoids forming r when it overflows.
GrowthSample log_max_modulus_at(const Expression& f, double log_r, unsigned samples,
                                const DefinitionEnvironment& env) {
  GrowthSample s;
  s.kind = GrowthKind::LogMaxModulus;
  s.samples = samples;
  s.r = std::exp(log_r);
  if (!std::isfinite(s.r)) {
    s.overflow = true;
    s.value = kInf;
    return s;
  }
  check_args(s.r, samples);
  double best = -kInf;
  for (unsigned k = 0; k < samples; ++k) {
    const LogValue v = eval_log(f, circle_point(s.r, k, samples), env);
    if (v.overflow) {
      s.overflow = true;
      best = kInf;
      break;
    }
    best = std::max(best, v.value.log_abs());
  }
  s.value = best;
  return s;
}

bool walk_transcendental(const Expression& e, const DefinitionEnvironment& env) {
  switch (e.kind()) {
    case NodeKind::Exp:
    case NodeKind::Sin:
    case NodeKind::Cos:
      if (!e.arg(0).is_constant()) return true;
      break;
    case NodeKind::Ref:
    case NodeKind::Iterate:
      return walk_transcendental(env.lookup(e.name()), env);
    case NodeKind::Compose:
      if (walk_transcendental(env.lookup(e.name()), env)) return true;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < e.arity(); ++i)
    if (walk_transcendental(e.arg(i), env)) return true;
  return false;
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

nlohmann::ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

const char* to_string(GrowthKind k) {
  switch (k) {
    case GrowthKind::LogMaxModulus: return "log_max_modulus";
    case GrowthKind::Characteristic: return "characteristic";
    case GrowthKind::Margin: return "margin";
  }
  return "?";
}

GrowthSample max_modulus(const Expression& f, double r, unsigned samples, const DefinitionEnvironment& env) {
  check_args(r, samples);
  GrowthSample s = log_max_modulus_at(f, std::log(r), samples, env);
  s.r = r;
  return s;
}

GrowthSample characteristic(const Expression& f, double r, unsigned samples, const DefinitionEnvironment& env) {
  check_args(r, samples);
  GrowthSample s;
  s.kind = GrowthKind::Characteristic;
  s.r = r;
  s.samples = samples;
  double sum = 0;
  for (unsigned k = 0; k < samples; ++k) {
    const LogValue v = eval_log(f, circle_point(r, k, samples), env);
    if (v.overflow) {
      s.overflow = true;
      s.value = kInf;
      return s;
    }
    if (!v.value.zero) sum += std::max(0.0, v.value.log_abs());
  }
  s.value = sum / samples;
  if (!std::isfinite(s.value)) s.overflow = true;
  return s;
}

bool is_transcendental(const Expression& f, const DefinitionEnvironment& env) {
  return walk_transcendental(f, env);
}

std::optional<BakerScanResult> baker_scan(const Expression& f, const Expression& g, unsigned p_max,
                                          const std::vector<double>& radii, const DefinitionEnvironment& env,
                                          unsigned samples, double tolerance) {
  if (radii.empty()) throw DomainError("baker_scan needs at least one radius");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0)) throw DomainError("radii must be positive");
    if (i && !(radii[i] > radii[i - 1])) throw DomainError("radii must be increasing");
  }
  if (!is_transcendental(f, env)) throw DomainError("baker_scan requires a transcendental f, got " + f.to_string());

  std::vector<double> log_g;
  for (double r : radii) log_g.push_back(max_modulus(g, r, samples, env).value);

  BakerScanResult out;
  for (unsigned p = 1; p <= p_max; ++p) {
    const Expression fp = iterate_expression(f, p);
    std::vector<double> margins;
    std::string why;
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const GrowthSample m = max_modulus(fp, radii[i], samples, env);
      double d = m.value - log_g[i];
      if (std::isnan(d)) d = m.overflow ? kInf : -kInf;  // inf - inf: trust the side that overflowed
      margins.push_back(d);
      if (why.empty() && !(d > tolerance))
        why = "p=" + std::to_string(p) + ": margin " + fmt(d) + " at r=" + fmt(radii[i]);
    }
    if (!why.empty()) {
      out.rejected.push_back(why);
      continue;
    }
    out.p = p;
    out.radii = radii;
    out.margins = margins;

    // Walk a geometric grid below the first radius; report the smallest grid
    // point from which the margin stays positive up to radii.front().
    constexpr int kSteps = 8;
    out.threshold_radius_estimate = radii.front();
    for (int s = 1; s <= kSteps; ++s) {
      const double r = radii.front() * std::pow(2.0, -0.5 * s);
      const double d = max_modulus(fp, r, samples, env).value - max_modulus(g, r, samples, env).value;
      if (!(d > tolerance)) break;
      out.threshold_radius_estimate = r;
    }
    return out;
  }
  return std::nullopt;
}

InequalityReport inequality_suite(const Expression& f, const Expression& g, const std::vector<double>& radii,
                                  double c, const DefinitionEnvironment& env, unsigned samples) {
  if (!(c > 0)) throw DomainError("Polya constant c must be positive");
  if (radii.empty()) throw DomainError("inequality_suite needs at least one radius");
  for (std::size_t i = 0; i < radii.size(); ++i)
    if (!(radii[i] > 0) || (i && !(radii[i] > radii[i - 1])))
      throw DomainError("radii must be positive and increasing");

  InequalityReport rep;
  auto row = [&](std::string check, std::string subject, double r, const GrowthSample& a, const GrowthSample& b,
                 bool pass) {
    rep.rows.push_back({std::move(check), std::move(subject), r, a.value, b.value, pass, a.overflow || b.overflow});
  };
  auto leq = [](const GrowthSample& a, const GrowthSample& b) {
    return !a.overflow && !b.overflow ? a.value <= b.value + kLooseTol : false;
  };

  const Expression fg = substitute(f, g);
  const std::pair<const char*, const Expression*> subjects[] = {{"f", &f}, {"g", &g}};

  for (double r : radii) {
    // M(r, f(g)) >= M(c M(r/2, g), f)
    const GrowthSample lhs = max_modulus(fg, r, samples, env);
    const GrowthSample inner = max_modulus(g, r / 2, samples, env);
    GrowthSample rhs;
    if (inner.overflow) {
      rhs.overflow = true;
      rhs.value = kInf;
    } else {
      rhs = log_max_modulus_at(f, std::log(c) + inner.value, samples, env);
    }
    const bool ok = !rhs.overflow && (lhs.overflow || lhs.value >= rhs.value - kLooseTol);
    row("polya", "f(g)", r, lhs, rhs, ok);
  }

  for (const auto& [name, e] : subjects) {
    for (double r : radii) {
      const GrowthSample t = characteristic(*e, r, samples, env);
      const GrowthSample m = max_modulus(*e, r, samples, env);
      GrowthSample t2 = characteristic(*e, 2 * r, samples, env);
      t2.value *= 3;
      row("sandwich_lower", name, r, t, m, leq(t, m));
      row("sandwich_upper", name, r, m, t2, leq(m, t2));
    }
  }

  // Discrete convexity of T in s = log r: slopes must not decrease.
  for (const auto& [name, e] : subjects) {
    std::vector<GrowthSample> t;
    for (double r : radii) t.push_back(characteristic(*e, r, samples, env));
    for (std::size_t i = 1; i + 1 < radii.size(); ++i) {
      GrowthSample left = t[i], right = t[i];
      left.value = (t[i].value - t[i - 1].value) / (std::log(radii[i]) - std::log(radii[i - 1]));
      right.value = (t[i + 1].value - t[i].value) / (std::log(radii[i + 1]) - std::log(radii[i]));
      left.overflow = t[i - 1].overflow || t[i].overflow;
      right.overflow = t[i].overflow || t[i + 1].overflow;
      const bool ok = !left.overflow && !right.overflow && right.value >= left.value - kLooseTol;
      row("convexity", name, radii[i], right, left, ok);
    }
  }

  for (double r : radii) {
    GrowthSample lhs = max_modulus(f, r / 4, samples, env);
    lhs.value += std::log(c);
    GrowthSample rhs;
    rhs.value = 4 * std::log(r);
    row("r4", "f", r, lhs, rhs, lhs.overflow || lhs.value > rhs.value);
  }

  std::vector<bool> t_r4_pass;
  for (double r : radii) {
    const double r4 = std::pow(r, 4);
    GrowthSample lhs;
    if (std::isfinite(r4)) {
      lhs = characteristic(g, r4, samples, env);
    } else {
      lhs.overflow = true;
      lhs.value = kInf;
    }
    GrowthSample rhs = characteristic(g, r, samples, env);
    rhs.value *= 3;
    const bool ok = !rhs.overflow && (lhs.overflow || lhs.value >= rhs.value - kLooseTol);
    t_r4_pass.push_back(ok);
    row("t_r4", "g", r, lhs, rhs, ok);
  }
  for (std::size_t i = radii.size(); i-- > 0 && t_r4_pass[i];) rep.t_r4_threshold = radii[i];

  for (double r : radii) {
    const GrowthSample tf = characteristic(f, r, samples, env);
    const GrowthSample tg = characteristic(g, r, samples, env);
    GrowthSample u = tf.value >= tg.value ? tf : tg;
    u.overflow = tf.overflow || tg.overflow;
    row("U", "f,g", r, u, u, !u.overflow);
  }
  return rep;
}

std::string samples_csv(const std::vector<GrowthSample>& samples) {
  std::string out = "kind,r,value,samples\n";
  for (const GrowthSample& s : samples)
    out += std::string(to_string(s.kind)) + "," + fmt(s.r) + "," + (s.overflow ? "overflow" : fmt(s.value)) + "," +
           std::to_string(s.samples) + "\n";
  return out;
}

std::string report_json(const InequalityReport& report, int indent) {
  using json = nlohmann::ordered_json;
  json rows = json::array();
  for (const InequalityRow& r : report.rows) {
    json j;
    j["check"] = r.check;
    j["subject"] = r.subject;
    j["r"] = r.r;
    j["lhs"] = number(r.lhs);
    j["rhs"] = number(r.rhs);
    j["pass"] = r.pass;
    j["overflow"] = r.overflow;
    rows.push_back(std::move(j));
  }
  json j;
  j["rows"] = std::move(rows);
  j["t_r4_threshold"] = report.t_r4_threshold ? json(*report.t_r4_threshold) : json(nullptr);
  return j.dump(indent);
}

std::string baker_json(const std::optional<BakerScanResult>& result, int indent) {
  using json = nlohmann::ordered_json;
  json j;
  if (!result) {
    j["status"] = "none";
    j["p"] = nullptr;
    return j.dump(indent);
  }
  j["status"] = "found";
  j["p"] = result->p;
  json rows = json::array();
  for (std::size_t i = 0; i < result->radii.size(); ++i)
    rows.push_back({{"r", result->radii[i]}, {"margin", number(result->margins[i])}});
  j["margins"] = std::move(rows);
  j["threshold_radius_estimate"] = result->threshold_radius_estimate;
  j["rejected"] = result->rejected;
  return j.dump(indent);
}

}  // namespace adeq

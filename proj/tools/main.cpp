// Command-line front end: one subcommand per pipeline.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "adeq/chain_rewrite.hpp"
#include "adeq/diffpoly.hpp"
#include "adeq/discovery.hpp"
#include "adeq/errors.hpp"
#include "adeq/evaluate.hpp"
#include "adeq/expand.hpp"
#include "adeq/growth.hpp"
#include "adeq/pipeline.hpp"

using namespace adeq;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kFalse = 1, kUsage = 2, kVerification = 3 };

struct Common {
  std::vector<std::string> defs;
  std::string subject;
  std::string format = "text";
  std::string mode = "exact";
};

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_common(CLI::App* cmd, Common& c, bool with_mode = false) {
  cmd->add_option("--def", c.defs, "definition name=expr (repeatable, in order)");
  cmd->add_option("--subject", c.subject, "expression, or comma-separated pair")->required();
  cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json"}));
  if (with_mode) cmd->add_option("--mode", c.mode, "series arithmetic")->check(CLI::IsMember({"exact", "numeric"}));
}

DefinitionEnvironment environment(const Common& c) {
  DefinitionEnvironment env;
  for (const std::string& d : c.defs) env.define_from_flag(d);
  return env;
}

// Splits at top-level commas so that "iter(f,2),g" gives two subjects.
std::vector<std::string> split_subjects(const std::string& s) {
  std::vector<std::string> out(1);
  int depth = 0;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      out.emplace_back();
      continue;
    }
    out.back() += ch;
  }
  return out;
}

std::vector<Expression> subjects(const Common& c, const DefinitionEnvironment& env, std::size_t n) {
  const std::vector<std::string> parts = split_subjects(c.subject);
  if (parts.size() != n)
    throw Usage("--subject expects " + std::to_string(n) + " expression" + (n == 1 ? "" : "s") + ", got " +
                std::to_string(parts.size()));
  std::vector<Expression> out;
  for (const std::string& p : parts) out.push_back(parse_expression(p, env));
  return out;
}

ExpansionOptions expansion(const Common& c) {
  ExpansionOptions o;
  o.mode = c.mode == "numeric" ? SeriesMode::Numeric : SeriesMode::Exact;
  return o;
}

void emit(const Common& c, const json& j, const std::string& text) {
  if (c.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream in(path);
  if (!in) throw Usage("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json rank_json(const RankReport& r) {
  return {{"unknowns", r.unknowns}, {"equations", r.equations}, {"rank", r.rank}};
}

int search_exit(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return kOk;
    case SearchStatus::NoRelation: return kFalse;
    case SearchStatus::VerificationFailed: return kVerification;
  }
  return kFalse;
}

std::string ade_text(const std::optional<DiffPolynomial>& p, SearchStatus s) {
  return (p ? p->to_string() : std::string(to_string(s))) + "\n";
}

struct BoundsFlags {
  unsigned max_order = 2;
  unsigned max_degree = 2;
  unsigned max_weight = 0;
  unsigned max_coeff_degree = 0;
  std::size_t solve_order = 0;
  std::size_t verify_order = 0;
  std::size_t verify_margin = 10;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Algebraic differential equations for entire functions and their compositions"};
  app.require_subcommand(1);
  Common c;

  // series
  auto* series = app.add_subcommand("series", "Taylor coefficients about a center");
  add_common(series, c, true);
  std::size_t order = 10;
  std::string center = "0";
  series->add_option("--order", order, "truncation order")->capture_default_str();
  series->add_option("--center", center, "expansion center (a constant)")->capture_default_str();

  // diff
  auto* diff = app.add_subcommand("diff", "symbolic derivative");
  add_common(diff, c);
  unsigned times = 1;
  diff->add_option("--times", times, "number of derivatives")->capture_default_str();

  // find-ade
  auto* find = app.add_subcommand("find-ade", "search for an ADE satisfied by a function");
  find->add_option("--def", c.defs, "definition name=expr (repeatable, in order)");
  auto* find_subject = find->add_option("--subject", c.subject, "expression");
  std::string series_file;
  find->add_option("--series-file", series_file, "raw series file ('-' for stdin)")->excludes(find_subject);
  find->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json"}));
  find->add_option("--center", center, "expansion center")->capture_default_str();
  BoundsFlags bf;
  find->add_option("--max-order", bf.max_order, "highest derivative")->capture_default_str();
  find->add_option("--max-degree", bf.max_degree, "monomial degree")->capture_default_str();
  find->add_option("--max-weight", bf.max_weight, "monomial weight (0: unbounded)");
  find->add_option("--max-coeff-degree", bf.max_coeff_degree, "degree of coefficients in z")->capture_default_str();
  find->add_option("--solve-order", bf.solve_order, "equations used (0: unknowns + 10)");
  find->add_option("--verify-order", bf.verify_order, "verification order (0: solve order + margin)");
  find->add_option("--verify-margin", bf.verify_margin, "extra verification terms")->capture_default_str();

  // compose-ade / iterate-ade
  ComposeBounds cb;
  unsigned cb_max_weight = 0;
  std::size_t cb_verify = 0;
  std::string ade, ade_g;
  auto add_compose_bounds = [&](CLI::App* cmd) {
    cmd->add_option("--max-degree", cb.max_degree, "monomial degree")->capture_default_str();
    cmd->add_option("--max-weight", cb_max_weight, "weight ceiling (0: starting weight + 2)");
    cmd->add_option("--max-coeff-degree", cb.max_coeff_degree, "degree of coefficients in z")->capture_default_str();
    cmd->add_option("--verify-order", cb_verify, "verification order (0: automatic)");
  };
  auto* compose = app.add_subcommand("compose-ade", "ADE for f(g) from ADEs of f and g");
  add_common(compose, c);
  compose->add_option("--ade", ade, "ADE of f")->required();
  compose->add_option("--ade-g", ade_g, "ADE of g")->required();
  add_compose_bounds(compose);

  auto* iterate = app.add_subcommand("iterate-ade", "ADE for the n-th iterate of f");
  add_common(iterate, c);
  iterate->add_option("--ade", ade, "ADE of f")->required();
  iterate->add_option("--times", times, "number of iterations")->capture_default_str();
  add_compose_bounds(iterate);

  // rewrite-chain
  auto* rewrite = app.add_subcommand("rewrite-chain", "rewrite P[f](g) in derivatives of g at f");
  rewrite->add_option("--def", c.defs, "definition name=expr (repeatable, in order)");
  rewrite->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json"}));
  unsigned k = 0;
  auto* k_opt = rewrite->add_option("--k", k, "transfer of the k-th derivative f^(k)(g)");
  rewrite->add_option("--ade", ade, "transfer of a differential polynomial")->excludes(k_opt);
  std::string names = "f,g";
  rewrite->add_option("--names", names, "jet names")->capture_default_str();
  rewrite->add_option("--subject", c.subject, "f,g to verify the rewrite against");
  std::size_t check_order = 20;
  rewrite->add_option("--order", check_order, "verification order")->capture_default_str();

  // check-permutable
  auto* permutable = app.add_subcommand("check-permutable", "test f(g) = g(f) as series");
  add_common(permutable, c, true);
  std::size_t perm_order = 16;
  permutable->add_option("--order", perm_order, "truncation order")->capture_default_str();
  permutable->add_option("--center", center, "expansion center")->capture_default_str();

  // transfer-ade
  auto* transfer = app.add_subcommand("transfer-ade", "ADE for g from an ADE for f and f(g) = g(f)");
  add_common(transfer, c);
  transfer->add_option("--ade", ade, "ADE of f")->required();
  TransferOptions to;
  bool no_escalate = false, no_timing = false;
  transfer->add_option("--q", to.q, "starting iterate exponent")->capture_default_str();
  transfer->add_option("--q-max", to.q_max, "largest exponent tried")->capture_default_str();
  transfer->add_flag("--no-escalate", no_escalate, "stop after the starting q");
  transfer->add_option("--max-coeff-degree", to.max_coeff_degree, "coefficient degree ceiling")->capture_default_str();
  transfer->add_option("--verify-order", to.verify_order, "verification order")->capture_default_str();
  transfer->add_flag("--no-timing", no_timing, "report wall_time_ms as 0");

  // growth
  auto* growth = app.add_subcommand("growth", "numeric growth of entire functions");
  growth->require_subcommand(1);
  std::vector<double> radii;
  unsigned samples = 0;  // 0: per-action default
  unsigned p_max = 5;
  double polya_c = 0.25;
  auto add_growth = [&](CLI::App* cmd, unsigned default_samples) {
    add_common(cmd, c);
    cmd->add_option("--radii", radii, "radii, comma-separated")->delimiter(',')->required();
    cmd->add_option("--samples", samples,
                    "circle samples, a power of two >= 64 (default " + std::to_string(default_samples) + ")");
  };
  auto* g_max = growth->add_subcommand("max-modulus", "log M(r, f)");
  add_growth(g_max, 1024);
  auto* g_char = growth->add_subcommand("characteristic", "T(r, f)");
  add_growth(g_char, 4096);
  auto* g_baker = growth->add_subcommand("baker-scan", "smallest p with M(r, g) < M(r, f^p)");
  add_growth(g_baker, 256);
  g_baker->add_option("--p-max", p_max, "largest p tried")->capture_default_str();
  auto* g_ineq = growth->add_subcommand("inequalities", "inequality table for f, g");
  add_growth(g_ineq, 1024);
  g_ineq->add_option("--c", polya_c, "Polya constant")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (samples == 0) samples = *g_char ? 4096 : *g_baker ? 256 : 1024;

  try {
    const DefinitionEnvironment env = environment(c);

    if (*series) {
      const Expression f = subjects(c, env, 1)[0];
      const ExactScalar x0 = parse_constant(center);
      const ExpansionOptions opts = expansion(c);
      SeriesExpander ex(env, opts);
      const PowerSeries s = opts.mode == SeriesMode::Exact ? ex.expand(f, x0, order)
                                                          : ex.expand_numeric(f, to_complex(x0), order);
      json j{{"subject", f.to_string()}, {"center", x0.to_string()}, {"order", order}, {"mode", c.mode}};
      json coeffs = json::array();
      if (s.mode() == SeriesMode::Exact) {
        for (const ExactScalar& a : s.exact()) coeffs.push_back(a.to_string());
      } else {
        for (const auto& a : s.numeric()) coeffs.push_back(json::array({a.real(), a.imag()}));
      }
      j["coefficients"] = coeffs;
      const std::string text =
          s.mode() == SeriesMode::Exact ? format_raw_series({s, x0}) : s.to_string();
      emit(c, j, text);
      return kOk;
    }

    if (*diff) {
      Expression d = subjects(c, env, 1)[0];
      for (unsigned i = 0; i < times; ++i) d = differentiate(d);
      emit(c, {{"derivative", d.to_string()}}, d.to_string() + "\n");
      return kOk;
    }

    if (*find) {
      AnsatzBounds b;
      b.max_order = bf.max_order;
      b.max_degree = bf.max_degree;
      if (bf.max_weight) b.max_weight = bf.max_weight;
      b.max_coeff_degree = bf.max_coeff_degree;
      if (bf.solve_order) b.solve_order = bf.solve_order;
      if (bf.verify_order) b.verify_order = bf.verify_order;
      b.verify_margin = bf.verify_margin;
      AdeResult r;
      if (!series_file.empty()) {
        r = find_ade(parse_raw_series(read_file(series_file)), b);
      } else {
        if (c.subject.empty()) throw Usage("find-ade needs --subject or --series-file");
        r = find_ade(subjects(c, env, 1)[0], b, env, {}, parse_constant(center));
      }
      json j{{"status", to_string(r.status)},
             {"ade", r.ade ? json(r.ade->to_string()) : json(nullptr)},
             {"support_size", r.support_size},
             {"rank", rank_json(r.rank)},
             {"solve_order", r.solve_order},
             {"verify_order", r.verify_order}};
      emit(c, j, ade_text(r.ade, r.status));
      return search_exit(r.status);
    }

    if (*compose || *iterate) {
      if (cb_max_weight) cb.max_weight = cb_max_weight;
      if (cb_verify) cb.verify_order = cb_verify;
      ComposeResult r;
      if (*compose) {
        const auto fg = subjects(c, env, 2);
        r = compose_ade(parse_diffpoly(ade), parse_diffpoly(ade_g), fg[0], fg[1], cb, env);
      } else {
        r = iterate_ade(subjects(c, env, 1)[0], parse_diffpoly(ade), times, cb, env);
      }
      json j{{"status", to_string(r.status)},
             {"ade", r.ade ? json(r.ade->to_string()) : json(nullptr)},
             {"verify_order", r.verify_order},
             {"trace", r.trace}};
      emit(c, j, ade_text(r.ade, r.status));
      return search_exit(r.status);
    }

    if (*rewrite) {
      const auto nm = split_subjects(names);
      if (nm.size() != 2) throw Usage("--names expects two names");
      if (rewrite->count("--k") == 0 && ade.empty()) throw Usage("rewrite-chain needs --k or --ade");
      const TransferExpression t =
          ade.empty() ? derivative_transfer(k, nm[0], nm[1]) : transfer_diffpoly(parse_diffpoly(ade), nm[0], nm[1]);
      json support = json::array();
      for (const DiffMonomial& m : t.support()) support.push_back(m.to_string());
      json j{{"transfer", t.to_string()}, {"support", support}};
      std::string text = t.to_string() + "\n";
      int code = kOk;
      if (!t.is_zero()) j["max_weight"] = max_weight(t);
      if (!c.subject.empty()) {
        if (ade.empty()) throw Usage("verification needs --ade");
        const auto fg = subjects(c, env, 2);
        const ExactScalar x0 = transfer_center(fg[1], env);
        const TransferCheck chk = check_transfer(t, parse_diffpoly(ade), fg[0], fg[1], check_order, env, x0);
        j["verified"] = chk.holds;
        j["center"] = chk.center.to_string();
        j["order"] = check_order;
        text += std::string("verified: ") + (chk.holds ? "true" : "false") + " (order " +
                std::to_string(check_order) + ", center " + chk.center.to_string() + ")\n";
        if (!chk.holds) code = kVerification;
      }
      emit(c, j, text);
      return code;
    }

    if (*permutable) {
      const auto fg = subjects(c, env, 2);
      const bool ok = check_permutable(fg[0], fg[1], perm_order, env, expansion(c), parse_constant(center));
      emit(c, {{"permutable", ok}, {"order", perm_order}, {"mode", c.mode}}, ok ? "true\n" : "false\n");
      return ok ? kOk : kFalse;
    }

    if (*transfer) {
      const auto fg = subjects(c, env, 2);
      to.auto_escalate = !no_escalate;
      to.timing = !no_timing;
      const TransferReport r = transfer_ade(fg[0], parse_diffpoly(ade), fg[1], env, to);
      std::ostringstream text;
      text << "status: " << r.status << "\nq: " << r.q << "\n";
      if (r.intermediate_ade) text << "intermediate_ade: " << r.intermediate_ade->to_string() << "\n";
      if (r.transfer) text << "transfer: " << r.transfer->to_string() << "\n";
      if (r.transfer)
        text << "weight: syntactic " << r.syntactic_weight << ", nonvanishing " << r.nonvanishing_weight << "\n";
      if (r.output_ade) text << "output_ade: " << r.output_ade->to_string() << "\nverified_order: " << r.verified_order << "\n";
      for (const std::string& e : r.escalations) text << "escalation: " << e << "\n";
      if (c.format == "json")
        std::cout << to_json(r, 2) << "\n";
      else
        std::cout << text.str();
      if (r.ok()) return kOk;
      if (r.status == "invalid_ade" || r.status == "chain_failed") return kVerification;
      return kFalse;
    }

    if (*g_max || *g_char) {
      const Expression f = subjects(c, env, 1)[0];
      std::vector<GrowthSample> rows;
      for (double r : radii) rows.push_back(*g_max ? max_modulus(f, r, samples, env) : characteristic(f, r, samples, env));
      json arr = json::array();
      for (const GrowthSample& s : rows)
        arr.push_back({{"kind", to_string(s.kind)},
                       {"r", s.r},
                       {"value", s.overflow ? json(nullptr) : json(s.value)},
                       {"samples", s.samples},
                       {"overflow", s.overflow}});
      if (c.format == "json")
        std::cout << arr.dump(2) << "\n";
      else
        std::cout << samples_csv(rows);
      return kOk;
    }

    if (*g_baker) {
      const auto fg = subjects(c, env, 2);
      const auto r = baker_scan(fg[0], fg[1], p_max, radii, env, samples);
      if (c.format == "json") {
        std::cout << baker_json(r, 2) << "\n";
      } else if (r) {
        std::cout << "p: " << r->p << "\n";
        std::cout << samples_csv([&] {
          std::vector<GrowthSample> v;
          for (std::size_t i = 0; i < r->radii.size(); ++i)
            v.push_back({r->radii[i], r->margins[i], GrowthKind::Margin, samples, false});
          return v;
        }());
        std::cout << "threshold_radius_estimate: " << r->threshold_radius_estimate << "\n";
      } else {
        std::cout << "none\n";
      }
      return r ? kOk : kFalse;
    }

    if (*g_ineq) {
      const auto fg = subjects(c, env, 2);
      const InequalityReport rep = inequality_suite(fg[0], fg[1], radii, polya_c, env, samples);
      if (c.format == "json") {
        std::cout << report_json(rep, 2) << "\n";
      } else {
        std::cout << "check,subject,r,lhs,rhs,pass\n";
        for (const InequalityRow& row : rep.rows) {
          std::ostringstream line;
          line.precision(12);
          line << row.check << "," << row.subject << "," << row.r << "," << row.lhs << "," << row.rhs << ","
               << (row.pass ? "pass" : "fail") << (row.overflow ? " (overflow)" : "");
          std::cout << line.str() << "\n";
        }
        if (rep.t_r4_threshold) std::cout << "t_r4_threshold: " << *rep.t_r4_threshold << "\n";
      }
      return kOk;
    }
  } catch (const Usage& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

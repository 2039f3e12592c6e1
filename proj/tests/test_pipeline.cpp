#include <doctest.h>

#include "adeq/errors.hpp"
#include "adeq/pipeline.hpp"

using namespace adeq;

namespace {

DefinitionEnvironment env_of(std::initializer_list<const char*> defs) {
  DefinitionEnvironment env;
  for (const char* d : defs) env.define_from_flag(d);
  return env;
}

Expression E(const char* s, const DefinitionEnvironment& env) { return parse_expression(s, env); }

}  // namespace

TEST_CASE("permutability") {
  const auto env = env_of({"f=z+exp(z)", "g=z+exp(z)+2*pi*i", "h=sin(z)"});
  CHECK(check_permutable(E("f", env), E("g", env), 16, env));
  CHECK(check_permutable(E("g", env), E("f", env), 16, env));
  CHECK(check_permutable(E("f", env), E("iter(f,2)", env), 12, env));
  CHECK_FALSE(check_permutable(E("f", env), E("h", env), 16, env));

  ExpansionOptions numeric;
  numeric.mode = SeriesMode::Numeric;
  CHECK(check_permutable(E("f", env), E("g", env), 16, env, numeric));
}

TEST_CASE("transfer on the translation pair") {
  const auto env = env_of({"f=z+exp(z)", "g=z+exp(z)+2*pi*i"});
  const DiffPolynomial P = parse_diffpoly("y2 - y1 + 1");
  TransferOptions opt;
  opt.timing = false;
  const TransferReport fwd = transfer_ade(E("f", env), P, E("g", env), env, opt);
  REQUIRE(fwd.ok());
  CHECK(fwd.q == 1);
  CHECK(fwd.output_ade->to_string() == "y2 - y1 + 1");
  CHECK(fwd.verified_order >= 30);
  CHECK(fwd.syntactic_weight == P.weight());
  CHECK(fwd.wall_time_ms == 0);

  const TransferReport back = transfer_ade(E("g", env), P, E("f", env), env, opt);
  REQUIRE(back.ok());
  CHECK(back.output_ade == fwd.output_ade);
}

TEST_CASE("transfer rejects bad input") {
  const auto env = env_of({"f=exp(z)", "g=sin(z)"});
  CHECK(transfer_ade(E("f", env), parse_diffpoly("y1 - y0"), E("g", env), env).status == "not_permutable");
  CHECK(transfer_ade(E("f", env), parse_diffpoly("y1 + y0"), E("f", env), env).status == "invalid_ade");
}

TEST_CASE("transfer to the second iterate of exp") {
  const auto env = env_of({"f=exp(z)", "g=iter(f,2)"});
  TransferOptions opt;
  opt.timing = false;
  const TransferReport r = transfer_ade(E("f", env), parse_diffpoly("y1 - y0"), E("g", env), env, opt);
  REQUIRE(r.ok());
  CHECK(normalize(*r.output_ade) == parse_diffpoly("y0*y2 - y1^2 - y0*y1"));
  CHECK(r.verified_order >= 30);
  CHECK(verify_annihilator(*r.output_ade, E("g", env), 50, env));

  opt.auto_escalate = false;
  const TransferReport fixed = transfer_ade(E("f", env), parse_diffpoly("y1 - y0"), E("g", env), env, opt);
  CHECK(fixed.status == "exhausted");
}

TEST_CASE("transfer report JSON fields") {
  const auto env = env_of({"f=z+exp(z)", "g=z+exp(z)+2*pi*i"});
  TransferOptions opt;
  opt.timing = false;
  const std::string j = to_json(transfer_ade(E("f", env), parse_diffpoly("y2-y1+1"), E("g", env), env, opt), -1);
  CHECK(j.rfind("{\"status\":\"ok\",\"q\":1,\"intermediate_ade\":", 0) == 0);
  for (const char* key : {"support_J", "output_ade", "verified_order", "escalations", "wall_time_ms\":0"})
    CHECK(j.find(key) != std::string::npos);
}

TEST_CASE("ADEs of compositions") {
  const auto env = env_of({});
  ComposeBounds b;
  const ComposeResult ee = compose_ade(parse_diffpoly("y1 - y0"), parse_diffpoly("y1 - y0"), E("exp(z)", env),
                                       E("exp(z)", env), b, env);
  REQUIRE(ee.status == SearchStatus::Found);
  CHECK(ee.ade->to_string() == "y0*y2 - y1^2 - y0*y1");
  CHECK(ee.verify_order >= 30);

  const ComposeResult sq = compose_ade(parse_diffpoly("y1 - y0"), parse_diffpoly("y2 - 2"), E("exp(z)", env),
                                       E("z^2", env), b, env);
  REQUIRE(sq.status == SearchStatus::Found);
  CHECK(sq.ade->to_string() == "y1 - 2*z*y0");
  CHECK(verify_annihilator(*sq.ade, E("exp(z^2)", env), 60, env));

  CHECK_THROWS_AS(compose_ade(parse_diffpoly("y1 + y0"), parse_diffpoly("y1 - y0"), E("exp(z)", env),
                              E("exp(z)", env), b, env),
                  DomainError);
}

TEST_CASE("ADE of the second iterate of z + exp(z)") {
  const auto env = env_of({"f=z+exp(z)"});
  const ComposeResult r = iterate_ade(E("f", env), parse_diffpoly("y2 - y1 + 1"), 2, {}, env);
  REQUIRE(r.status == SearchStatus::Found);
  CHECK(r.ade->to_string() ==
        "y1*y3 - y2^2 - y0*y3 + (z+1)*y3 + 4*y1^2 - 12*y2 - 3*y0*y1 + (3*z+14)*y1 - 9*y0 + (9*z-18)");
  CHECK(verify_annihilator(*r.ade, E("iter(f,2)", env), 60, env));
}

#include <doctest.h>

#include <cmath>
#include <fstream>

#include "deltaideal/registry.hpp"
#include "deltaideal/serialization.hpp"
#include "deltaideal/verdict.hpp"

using namespace deltaideal;

namespace {
OptimizerOptions fast_opts() {
  OptimizerOptions o;
  o.restarts = 8;  // constant-curvature models converge on the first step
  return o;
}
}  // namespace

TEST_CASE("unit spheres pass the eigenvalue criterion") {
  const SpaceRegistry& reg = SpaceRegistry::builtin();
  for (int n = 2; n <= 8; ++n) {
    const SpaceDescriptor& s = reg.at("sphere:" + std::to_string(n));
    const double delta0 = space_delta0(s, fast_opts());
    CHECK(std::abs(delta0 - 1.0) < 1e-9);
    const Verdict v = ideality_criterion(s, delta0);
    CHECK(v.outcome == Outcome::IdealCapable);
    CHECK(v.evidence.lambda1 == n);
    CHECK(std::abs(v.evidence.n_delta0 - n) < 1e-9 * n);
  }
}

TEST_CASE("projective spaces fail the eigenvalue criterion") {
  const SpaceRegistry& reg = SpaceRegistry::builtin();
  for (int n = 2; n <= 8; ++n) {
    const SpaceDescriptor& s = reg.at("rp:" + std::to_string(n));
    const Verdict v = ideality_criterion(s, space_delta0(s, fast_opts()));
    CHECK(v.outcome == Outcome::NoIdealEmbedding);
    CHECK(v.evidence.lambda1 == 2.0 * (n + 1));
  }
}

TEST_CASE("reducible spaces get no verdict") {
  const SpaceRegistry& reg = SpaceRegistry::builtin();
  const SpaceDescriptor& torus = reg.at("flat-torus:2pi");
  const Verdict v = ideality_criterion(torus, space_delta0(torus, fast_opts()));
  CHECK(v.outcome == Outcome::Inconclusive);
  CHECK(v.evidence.reason.find("NotIrreducible") != std::string::npos);
}

TEST_CASE("criterion sanity guards") {
  SUBCASE("unknown eigenvalue") {
    SpaceDescriptor s;
    s.name = "mystery";
    s.dimension = 4;
    s.model_c0 = 1.0;
    s.irreducible = true;
    CHECK_THROWS_AS(ideality_criterion(s, 1.0), UnknownSpectrum);
  }
  SUBCASE("data below the eigenvalue lower bound is inconsistent") {
    SpaceDescriptor s;
    s.name = "impossible";
    s.dimension = 4;
    s.model_c0 = 1.0;
    s.lambda1 = 2.0;  // below n * delta0 = 4
    s.irreducible = true;
    CHECK_THROWS_AS(ideality_criterion(s, 1.0), ConsistencyViolation);
  }
}

TEST_CASE("mesh-estimated eigenvalues cannot manufacture a verdict") {
  // Discrete estimate near the true value: inside the error bar the
  // criterion refuses to decide; far outside it, it decides as usual.
  SpaceDescriptor s;
  s.name = "sphere-mesh:2";
  s.dimension = 2;
  s.model_c0 = 1.0;
  s.irreducible = true;
  s.lambda1 = 1.99999935;  // a discrete estimate of 2

  const Verdict inside = ideality_criterion(s, 1.0, 0.04);
  CHECK(inside.outcome == Outcome::Inconclusive);
  CHECK(inside.evidence.reason.find("error bar") != std::string::npos);

  s.lambda1 = 5.99;  // projective-plane estimate, far above n * delta0 = 2
  const Verdict outside = ideality_criterion(s, 1.0, 0.3);
  CHECK(outside.outcome == Outcome::NoIdealEmbedding);
}

TEST_CASE("covering obstruction on the standard pair") {
  const SpaceRegistry& reg = SpaceRegistry::builtin();
  for (int n = 2; n <= 8; ++n) {
    const Verdict v = covering_obstruction(reg.at("sphere:" + std::to_string(n)),
                                           reg.at("rp:" + std::to_string(n)), fast_opts());
    CHECK(v.outcome == Outcome::NoIdealEmbedding);
    REQUIRE(v.evidence.partner_lambda1.has_value());
    CHECK(*v.evidence.partner_lambda1 == n);
    CHECK(v.evidence.lambda1 == 2.0 * (n + 1));
    REQUIRE(v.evidence.chain.size() == 3);
    CHECK(v.evidence.chain[0] == "lambda1-pullback");
    CHECK(v.evidence.chain[1] == "strict-spectral-gap");
    CHECK(v.evidence.chain[2] == "ideality-threshold-exceeded");
  }
}

TEST_CASE("obstruction edge cases") {
  const SpaceRegistry& reg = SpaceRegistry::builtin();
  SpaceDescriptor cover = reg.at("sphere:3");
  SpaceDescriptor base = reg.at("rp:3");

  SUBCASE("no registered relation") {
    CHECK_THROWS_AS(covering_obstruction(reg.at("sphere:3"), reg.at("rp:4"), fast_opts()),
                    MismatchedPair);
  }
  SUBCASE("equal eigenvalues leave the question open") {
    base.lambda1 = cover.lambda1;
    const Verdict v = covering_obstruction(cover, base, fast_opts());
    CHECK(v.outcome == Outcome::Inconclusive);
  }
  SUBCASE("eigenvalue data violating the pullback bound") {
    cover.lambda1 = 2.0;
    base.lambda1 = 1.0;
    CHECK_THROWS_AS(covering_obstruction(cover, base, fast_opts()), PullbackViolation);
  }
  SUBCASE("curvature models must agree across the covering") {
    base.model_c0 = 0.5;  // a covering is a local isometry, so this is bogus data
    CHECK_THROWS_AS(covering_obstruction(cover, base, fast_opts()), ConsistencyViolation);
  }
  SUBCASE("reducible pair is inconclusive") {
    base.irreducible = false;
    const Verdict v = covering_obstruction(cover, base, fast_opts());
    CHECK(v.outcome == Outcome::Inconclusive);
  }
}

TEST_CASE("the obstruction never certifies ideality") {
  const SpaceRegistry& reg = SpaceRegistry::builtin();
  OptimizerOptions opts;
  opts.restarts = 2;  // constant models land on the first step
  for (const SpaceDescriptor& s : reg.spaces()) {
    if (!s.covers) continue;
    const SpaceDescriptor* base = reg.find(s.covers->base);
    REQUIRE(base != nullptr);
    // covering_obstruction recomputes delta0 on both sides and throws if the
    // covering pair disagreed, so every pair also checks the local-isometry
    // invariant.
    const Verdict v = covering_obstruction(s, *base, opts);
    CHECK(v.outcome != Outcome::IdealCapable);
  }
  // Explicit delta0 agreement on the small pairs.
  for (int n = 2; n <= 6; ++n) {
    const SpaceDescriptor& s = reg.at("sphere:" + std::to_string(n));
    const SpaceDescriptor& b = reg.at("rp:" + std::to_string(n));
    CHECK(std::abs(space_delta0(s, fast_opts()) - space_delta0(b, fast_opts())) < 1e-9);
  }
}

TEST_CASE("verdict serialization shape") {
  const SpaceRegistry& reg = SpaceRegistry::builtin();
  const Verdict v =
      covering_obstruction(reg.at("sphere:4"), reg.at("rp:4"), fast_opts());
  const Json j = verdict_to_json(v);
  CHECK(j.at("subject") == "rp:4");
  CHECK(j.at("outcome") == "NO_IDEAL_EMBEDDING");
  CHECK(j.at("evidence").at("lambda1") == 10.0);
  CHECK(j.at("evidence").at("partner_lambda1") == 4.0);
  CHECK(j.at("evidence").at("chain").size() == 3);
}

TEST_CASE("registry files round trip") {
  const std::string path = "/tmp/deltaideal_registry_test.json";
  {
    std::ofstream out(path);
    out << R"([{"name":"demo:2","dimension":2,
               "curvature":{"model":"constant","c0":1.0},
               "lambda1":2.0,"irreducible":true,
               "covers":{"base":"demo-base:2","sheets":2}}])";
  }
  const SpaceRegistry reg = SpaceRegistry::from_file(path);
  const SpaceDescriptor& s = reg.at("demo:2");
  CHECK(s.dimension == 2);
  CHECK(s.covers->base == "demo-base:2");
  CHECK(s.covers->sheets == 2);
  CHECK_THROWS_AS(SpaceRegistry::from_file("/nonexistent/registry.json"), ParseError);
  CHECK_THROWS_AS(SpaceRegistry::from_json_text("{not json"), ParseError);
}

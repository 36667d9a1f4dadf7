#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "deltaideal/mesh.hpp"
#include "deltaideal/registry.hpp"
#include "deltaideal/spectral.hpp"

using namespace deltaideal;

TEST_CASE("stiffness rows sum to zero and mass conserves area") {
  for (const TriMesh& m : {make_tetrahedron(), make_icosphere(2)}) {
    const MeshOperators ops = build_mesh_laplacian(m);
    const Eigen::VectorXd row_sums = ops.stiffness * Eigen::VectorXd::Ones(ops.mass.size());
    CHECK(row_sums.cwiseAbs().maxCoeff() < 1e-12);
    CHECK(ops.mass.minCoeff() > 0.0);
    CHECK(ops.mass.sum() == doctest::Approx(total_area(m)).epsilon(1e-12));
  }
}

TEST_CASE("stiffness is symmetric and positive semidefinite") {
  const MeshOperators ops = build_mesh_laplacian(make_icosphere(2));
  const Eigen::MatrixXd S = Eigen::MatrixXd(ops.stiffness);
  CHECK((S - S.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd v(S.rows());
    for (int i = 0; i < v.size(); ++i) v[i] = gauss(rng);
    CHECK(v.dot(S * v) >= -1e-10);
  }
}

TEST_CASE("identified meshes merge operator rows") {
  const TriMesh m = make_icosphere(2);
  const TriMesh q = antipodal_quotient(m);
  const MeshOperators cover = build_mesh_laplacian(m);
  const MeshOperators quotient = build_mesh_laplacian(q);
  CHECK(cover.stiffness.rows() == 162);
  CHECK(quotient.stiffness.rows() == 81);  // half the vertex count
  // Total quotient mass counts both sheets; the factor cancels in the pencil.
  CHECK(quotient.mass.sum() == doctest::Approx(cover.mass.sum()).epsilon(1e-12));
}

TEST_CASE("sphere eigenvalue converges through refinement") {
  double previous_error = std::numeric_limits<double>::infinity();
  for (int level = 2; level <= 4; ++level) {
    const SpectralResult r = lambda1_mesh(make_icosphere(level));
    const double error = std::abs(r.lambda1 - 2.0);
    CHECK(error < previous_error);
    previous_error = error;
  }
}

TEST_CASE("icosphere level 4 reproduces the closed-form eigenvalue within 2%") {
  const SpectralResult r = lambda1_mesh(make_icosphere(4));
  CHECK(std::abs(r.lambda1 - 2.0) / 2.0 < 0.02);
  CHECK(r.mesh_size.first == 2562);
}

TEST_CASE("antipodal quotient eigenvalue lands near the projective-space value") {
  const SpectralResult r = lambda1_mesh(antipodal_quotient(make_icosphere(3)));
  CHECK(std::abs(r.lambda1 - 6.0) / 6.0 < 0.05);
}

TEST_CASE("flat torus grid eigenvalue") {
  const SpectralResult r = lambda1_mesh(make_flat_torus_grid(64, 64));
  CHECK(std::abs(r.lambda1 - 1.0) < 0.02);
  CHECK(r.mesh_size.first == 4096);
}

TEST_CASE("eigenvector is mass-orthogonal to constants") {
  const TriMesh m = make_icosphere(2);
  const SpectralResult r = lambda1_mesh(m);
  const MeshOperators ops = build_mesh_laplacian(m);
  CHECK(std::abs(ops.mass.dot(r.eigenvector)) < 1e-8);
}

TEST_CASE("pullback verification on a mesh pair") {
  const TriMesh cover = make_icosphere(3);
  const TriMesh quotient = antipodal_quotient(cover);
  const SpectralResult cover_result = lambda1_mesh(cover);
  const SpectralResult base_result = lambda1_mesh(quotient);

  PullbackDetail detail;
  CHECK(verify_pullback(cover, cover_result, quotient, base_result, 1e-6, &detail));
  CHECK(detail.eigenvalue_order);
  CHECK(detail.rayleigh_deviation < 1e-8);

  SUBCASE("the lift is constant on identification fibers") {
    const Eigen::VectorXd lifted =
        lift_through_identification(quotient, base_result.eigenvector);
    for (int v = 0; v < quotient.geometric_vertex_count(); ++v) {
      CHECK(lifted[v] == base_result.eigenvector[quotient.identification[v]]);
    }
  }
  SUBCASE("mismatched inputs are rejected") {
    CHECK_THROWS_AS(
        verify_pullback(cover, cover_result, cover, base_result, 1e-6),
        MismatchedPair);
    CHECK_THROWS_AS(
        verify_pullback(make_icosphere(2), cover_result, quotient, base_result, 1e-6),
        MismatchedPair);
  }
}

TEST_CASE("pullback inequality holds on every centrally symmetric test mesh") {
  for (const TriMesh& cover : {make_octahedron(), make_icosphere(1), make_icosphere(2)}) {
    const TriMesh quotient = antipodal_quotient(cover);
    const SpectralResult cover_result = lambda1_mesh(cover);
    const SpectralResult base_result = lambda1_mesh(quotient);
    CHECK(base_result.lambda1 >= cover_result.lambda1 - 1e-9);
    CHECK(verify_pullback(cover, cover_result, quotient, base_result, 1e-6));
  }
}

TEST_CASE("registry entries may declare the spectrum unknown") {
  const SpaceRegistry reg = SpaceRegistry::from_json_text(R"([
    {"name":"opaque:3","dimension":3,
     "curvature":{"model":"constant","c0":1.0},
     "lambda1":"unknown","irreducible":true}
  ])");
  CHECK_THROWS_AS(lambda1_closed_form(reg.at("opaque:3")), UnknownSpectrum);
}

TEST_CASE("solver failure surfaces as an error with the iteration count") {
  SpectralOptions opts;
  opts.budget_factor = 0;
  CHECK_THROWS_AS(lambda1_mesh(make_icosphere(2), opts), SolverFailure);
}

TEST_CASE("registry closed forms") {
  const SpaceRegistry& reg = SpaceRegistry::builtin();
  CHECK(lambda1_closed_form(reg.at("sphere:4")) == 4.0);
  CHECK(lambda1_closed_form(reg.at("rp:4")) == 10.0);
  CHECK(lambda1_closed_form(reg.at("flat-torus:2pi")) == 1.0);
  for (int n = 2; n <= 16; ++n) {
    CHECK(lambda1_closed_form(reg.at("sphere:" + std::to_string(n))) == n);
    CHECK(lambda1_closed_form(reg.at("rp:" + std::to_string(n))) == 2.0 * (n + 1));
  }
  SUBCASE("unknown spectrum") {
    SpaceDescriptor s;
    s.name = "mystery";
    s.dimension = 3;
    CHECK_THROWS_AS(lambda1_closed_form(s), UnknownSpectrum);
  }
  SUBCASE("missing spaces throw") {
    CHECK_THROWS_AS(reg.at("sphere:99"), Error);
    CHECK(reg.find("sphere:99") == nullptr);
  }
}

TEST_CASE("registry pullback on the standard covering pair") {
  const SpaceRegistry& reg = SpaceRegistry::builtin();
  CHECK(verify_pullback(reg.at("sphere:2"), reg.at("rp:2"), 1e-6));
  CHECK_THROWS_AS(verify_pullback(reg.at("rp:2"), reg.at("sphere:2"), 1e-6),
                  MismatchedPair);
  SUBCASE("synthetic violation reports false") {
    SpaceDescriptor cover = reg.at("sphere:2");
    SpaceDescriptor base = reg.at("rp:2");
    cover.lambda1 = 2.0;
    base.lambda1 = 1.0;  // below the cover: pullback impossible
    CHECK_FALSE(verify_pullback(cover, base, 1e-6));
  }
}

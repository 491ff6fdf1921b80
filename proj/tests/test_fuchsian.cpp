#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "sageev/error.hpp"
#include "sageev/fuchsian.hpp"

using namespace sageev;
using hypgeo::Complex;

namespace {

constexpr double kPi = std::numbers::pi;

// Area of a convex polygon by fanning from an interior point, with the
// triangle angles from the hyperbolic law of cosines.
double fan_area(const std::vector<Complex>& v, Complex o) {
  auto angle = [](double a, double b, double c) {  // angle opposite c
    return std::acos((std::cosh(a) * std::cosh(b) - std::cosh(c)) / (std::sinh(a) * std::sinh(b)));
  };
  double area = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    Complex p = v[k], q = v[(k + 1) % v.size()];
    double a = hypgeo::dist_h2(o, p), b = hypgeo::dist_h2(o, q), c = hypgeo::dist_h2(p, q);
    area += kPi - angle(a, b, c) - angle(b, c, a) - angle(c, a, b);
  }
  return area;
}

}  // namespace

TEST_CASE("standard representation, genus 2") {
  FuchsianRep rep = standard_rep(2);
  CHECK(standard_trace(2) == doctest::Approx(2.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-15));
  for (const auto& m : rep.images()) {
    CHECK(std::abs(m.trace() - 2.0 / std::tan(kPi / 8)) <= 1e-9);
    CHECK(std::abs(m.det() - 1.0) < 1e-12);
  }
  CHECK(std::abs(rep.images()[0].trace() - 4.82843) < 1e-5);
  CHECK(relator_residual(2, rep.images()) <= 1e-8);
  CHECK(evaluate(rep, GroupWord{2, relator(2)}).distance_to_identity() <= 1e-8);
  CHECK(evaluate(rep, GroupWord{2, {}}).distance_to_identity() == 0.0);
}

TEST_CASE("standard representation, genus 3") {
  FuchsianRep rep = standard_rep(3);
  for (const auto& m : rep.images()) CHECK(std::abs(m.trace() - 2.0 / std::tan(kPi / 12)) <= 1e-9);
  CHECK(hypgeo::translation_length(rep.images()[0]) ==
        doctest::Approx(2.0 * std::acosh(1.0 / std::tan(kPi / 12))).epsilon(1e-12));
  CHECK(std::abs(hypgeo::translation_length(rep.images()[0]) - 3.983) < 1e-3);
  CHECK(relator_residual(3, rep.images()) <= 1e-8);
}

TEST_CASE("fundamental polygon") {
  for (int g : {2, 3}) {
    FuchsianRep rep = standard_rep(g);
    const Polygon& P = rep.polygon();
    REQUIRE(P.vertices.size() == static_cast<std::size_t>(4 * g));
    CHECK(P.convex);
    double target = 4.0 * kPi * (g - 1);
    CHECK(std::abs(P.area - target) <= 1e-6);
    CHECK(std::abs(fan_area(P.vertices, P.center) - target) <= 1e-6);
    // All vertices are one point on the surface, so the angles fill a full turn.
    CHECK(std::abs(P.angle_sum - 2.0 * kPi) <= 1e-6);
    for (std::size_t k = 0; k < P.vertices.size(); ++k) {
      Complex moved = evaluate(rep, P.vertex_words[k]).apply(P.vertices[0]);
      CHECK(std::abs(moved - P.vertices[k]) < 1e-9);
      CHECK(hypgeo::dist_h2(P.center, P.vertices[k]) <= P.radius + 1e-12);
    }
  }
}

TEST_CASE("generators are side pairings") {
  // Each generator image of the polygon shares exactly two vertices with it.
  FuchsianRep rep = standard_rep(2);
  const auto& V = rep.polygon().vertices;
  for (int x = -4; x <= 4; ++x) {
    if (x == 0) continue;
    int shared = 0;
    for (Complex v : V)
      for (Complex w : V)
        if (std::abs(rep.letter(x).apply(v) - w) < 1e-9) ++shared;
    CHECK(shared == 2);
  }
}

TEST_CASE("evaluation is a homomorphism") {
  FuchsianRep rep = standard_rep(2);
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    GroupWord u = oracle::random_reduced_word(2, 6, rng);
    GroupWord v = oracle::random_reduced_word(2, 6, rng);
    hypgeo::Isometry lhs = evaluate(rep, u) * evaluate(rep, v);
    hypgeo::Isometry rhs = evaluate(rep, concat(u, v));
    double scale = std::max({1.0, std::abs(rhs.a()), std::abs(rhs.b()), std::abs(rhs.c()), std::abs(rhs.d())});
    CHECK((lhs * rhs.inverse()).distance_to_identity() <= 1e-8 * scale * scale);
  }
}

TEST_CASE("user matrices") {
  FuchsianRep rep = standard_rep(2);
  FuchsianRep again = from_matrices(2, rep.images());
  CHECK(again.genus() == 2);
  CHECK(std::abs(again.polygon().area - rep.polygon().area) < 1e-9);

  auto bent = rep.images();
  bent[0] = bent[0] * hypgeo::Isometry::diagonal(1.01);
  try {
    from_matrices(2, bent);
    FAIL("expected RelatorCheckFailed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RelatorCheckFailed);
  }
  CHECK_THROWS_AS(from_matrices(2, {rep.images()[0]}), Error);
  CHECK_THROWS_AS(standard_rep(1), Error);
}

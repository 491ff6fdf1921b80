#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sageev/error.hpp"
#include "sageev/fuchsian.hpp"
#include "sageev/hypgeo.hpp"

using namespace sageev;
using namespace sageev::hypgeo;

namespace {

double entry_gap(const Isometry& x, const Isometry& y) {
  auto gap = [&](double s) {
    return std::max({std::abs(x.a() - s * y.a()), std::abs(x.b() - s * y.b()),
                     std::abs(x.c() - s * y.c()), std::abs(x.d() - s * y.d())});
  };
  return std::min(gap(1.0), gap(-1.0));
}

Isometry random_isometry(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (;;) {
    double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    if (a * d - b * c > 0.1) return {a, b, c, d};
  }
}

AxisPair pair(double x, double y) { return {BoundaryPoint::finite(x), BoundaryPoint::finite(y)}; }
AxisPair vertical() { return {BoundaryPoint::infinity(), BoundaryPoint::finite(0.0)}; }

}  // namespace

TEST_CASE("isometries are stored with unit determinant") {
  Isometry m(2.0, 0.0, 0.0, 2.0);
  CHECK(m.det() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(Isometry(1.0, 2.0, 2.0, 1.0), Error);
}

TEST_CASE("compose") {
  std::mt19937_64 rng(7);
  Isometry A = random_isometry(rng);
  CHECK(entry_gap(compose(Isometry::identity(), A), A) < 1e-15);
  CHECK(compose(A, A.inverse()).distance_to_identity() < 1e-9);

  FuchsianRep rep = standard_rep(2);
  for (int trial = 0; trial < 20; ++trial) {
    GroupWord w = oracle::random_reduced_word(2, 20, rng);
    Isometry left;
    for (int x : w.letters) left = left * rep.letter(x);
    Isometry right = oracle::fold_right(rep, w);
    double scale = std::max(1.0, std::abs(right.a()) + std::abs(right.b()) +
                                     std::abs(right.c()) + std::abs(right.d()));
    CHECK(entry_gap(left, right) / scale < 1e-8);
  }
}

TEST_CASE("translation length") {
  CHECK(translation_length(Isometry::identity()) == 0.0);
  CHECK(translation_length(Isometry::diagonal(std::exp(1.0))) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(translation_length(Isometry(1.0, 1.0, 0.0, 1.0)) == 0.0);  // parabolic
  CHECK(translation_length(Isometry(0.0, -1.0, 1.0, 0.0)) == 0.0);  // elliptic

  FuchsianRep rep = standard_rep(2);
  double l = translation_length(rep.letter(1));
  CHECK(l == doctest::Approx(2.0 * std::acosh(1.0 + std::sqrt(2.0))).epsilon(1e-12));
  CHECK(l == doctest::Approx(3.05714).epsilon(1e-5));

  // The minimum displacement along the axis equals the translation length.
  AxisPair ax = fixed_points(rep.letter(1));
  Complex foot = project_to_axis(ax, rep.basepoint());
  CHECK(dist_h2(foot, rep.letter(1).apply(foot)) == doctest::Approx(l).epsilon(1e-9));
  CHECK(dist_h2(rep.basepoint(), rep.letter(1).apply(rep.basepoint())) > l);
}

TEST_CASE("translation length is a conjugacy invariant and multiplicative in powers") {
  std::mt19937_64 rng(11);
  Isometry A(2.0, 1.0, 1.0, 1.0);
  double l = translation_length(A);
  for (int trial = 0; trial < 50; ++trial) {
    Isometry U = random_isometry(rng);
    CHECK(std::abs(translation_length(U * A * U.inverse()) - l) < 1e-9);
  }
  CHECK(std::abs(translation_length(A.inverse()) - l) < 1e-12);
  Isometry P;
  for (int k = 1; k <= 6; ++k) {
    P = P * A;
    CHECK(std::abs(translation_length(P) - k * l) < 1e-8 * k);
  }
}

TEST_CASE("fixed points") {
  AxisPair d = fixed_points(Isometry::diagonal(std::exp(1.0)));
  CHECK(d.attracting.is_infinite());
  CHECK(d.repelling.value() == doctest::Approx(0.0));

  Isometry A(2.0, 1.0, 1.0, 1.0);
  AxisPair p = fixed_points(A);
  CHECK(p.attracting.value() == doctest::Approx((1.0 + std::sqrt(5.0)) / 2).epsilon(1e-14));
  CHECK(p.repelling.value() == doctest::Approx((1.0 - std::sqrt(5.0)) / 2).epsilon(1e-14));
  CHECK(chordal(A.apply(p.attracting), p.attracting) < 1e-9);
  CHECK(chordal(A.apply(p.repelling), p.repelling) < 1e-9);

  AxisPair q = fixed_points(A.inverse());
  CHECK(chordal(q.attracting, p.repelling) < 1e-12);
  CHECK(chordal(q.repelling, p.attracting) < 1e-12);

  // Iterating A pushes points toward the attracting end.
  Complex z(0.3, 0.7);
  for (int k = 0; k < 40; ++k) z = A.apply(z);
  CHECK(std::abs(z.real() - p.attracting.value()) < 1e-9);

  CHECK_THROWS_AS(fixed_points(Isometry(1.0, 1.0, 0.0, 1.0)), Error);
  CHECK_THROWS_AS(fixed_points(Isometry::identity()), Error);
}

TEST_CASE("link") {
  AxisPair P = vertical();
  CHECK(link(P, pair(-1.0, 1.0)) == LinkingState::Linked);
  CHECK(link(P, pair(1.0, 2.0)) == LinkingState::Unlinked);
  CHECK(link(P, pair(0.0, 5.0)) == LinkingState::SharedEndpoint);
  CHECK(link(pair(0.0, 2.0), pair(1.0, 3.0)) == LinkingState::Linked);
  CHECK(link(pair(0.0, 3.0), pair(1.0, 2.0)) == LinkingState::Unlinked);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    AxisPair X = pair(u(rng), u(rng)), Y = pair(u(rng), u(rng));
    LinkingState s = link(X, Y);
    CHECK(link(Y, X) == s);
    CHECK(link(X.reversed(), Y) == s);
    Isometry U = random_isometry(rng);
    CHECK(link(U.apply(X), U.apply(Y)) == s);
  }
}

TEST_CASE("dist_h2") {
  Complex i(0.0, 1.0);
  CHECK(dist_h2(i, i) == 0.0);
  CHECK(dist_h2(i, std::exp(1.0) * i) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(dist_h2(i, Complex(1.0, 1.0)) == doctest::Approx(std::acosh(1.5)).epsilon(1e-14));
  CHECK(dist_h2(i, Complex(1.0, 1.0)) == doctest::Approx(0.9624).epsilon(1e-4));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> re(-3.0, 3.0), im(0.05, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    Complex a(re(rng), im(rng)), b(re(rng), im(rng)), c(re(rng), im(rng));
    CHECK(dist_h2(a, b) == doctest::Approx(dist_h2(b, a)).epsilon(1e-12));
    CHECK(dist_h2(a, c) <= dist_h2(a, b) + dist_h2(b, c) + 1e-9);
    Isometry U = random_isometry(rng);
    CHECK(dist_h2(U.apply(a), U.apply(b)) == doctest::Approx(dist_h2(a, b)).epsilon(1e-9));
  }
}

TEST_CASE("axis frames and segments") {
  Isometry A(2.0, 1.0, 1.0, 1.0);
  AxisPair ax = fixed_points(A);
  Complex anchor(0.2, 0.4);
  Isometry F = axis_frame(ax, anchor);
  CHECK(chordal(F.apply(ax.attracting), BoundaryPoint::infinity()) < 1e-12);
  CHECK(std::abs(F.apply(ax.repelling).value()) < 1e-12);
  Complex foot = F.apply(project_to_axis(ax, anchor));
  CHECK(std::abs(foot - Complex(0.0, 1.0)) < 1e-12);
  CHECK(dist_to_axis(ax, anchor) == doctest::Approx(dist_h2(anchor, project_to_axis(ax, anchor))));

  Complex p(0.3, 0.5), q(-1.0, 2.0);
  Isometry S = segment_frame(p, q);
  CHECK(std::abs(S.apply(p) - Complex(0.0, 1.0)) < 1e-12);
  CHECK(std::abs(S.apply(q) - Complex(0.0, std::exp(dist_h2(p, q)))) < 1e-12);
  CHECK(dist_to_segment(p, p, q) < 1e-12);
  CHECK(dist_to_segment(q, p, q) < 1e-7);
  Complex beyond = S.inverse().apply(Complex(0.0, std::exp(dist_h2(p, q) + 1.0)));
  CHECK(dist_to_segment(beyond, p, q) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("crossing_param") {
  Complex i(0.0, 1.0);
  CHECK(std::abs(crossing_param(vertical(), i, pair(-1.0, 1.0))) < 1e-15);
  double e2 = std::exp(2.0);
  CHECK(crossing_param(vertical(), i, pair(-e2, e2)) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(crossing_param(vertical(), i, pair(1.0, 2.0)), Error);

  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-4.0, 4.0), len(0.1, 3.0);
  int tested = 0;
  while (tested < 50) {
    AxisPair base = pair(u(rng), u(rng)), other = pair(u(rng), u(rng));
    if (link(base, other) != LinkingState::Linked) continue;
    ++tested;
    double t = len(rng);
    Complex anchor(u(rng), 0.5 + std::abs(u(rng)));
    Isometry F = axis_frame(base, anchor);
    Isometry T = F.inverse() * Isometry::diagonal(std::exp(t / 2)) * F;
    CHECK(translation_length(T) == doctest::Approx(t).epsilon(1e-9));
    double s0 = crossing_param(base, anchor, other);
    double s1 = crossing_param(base, anchor, T.apply(other));
    CHECK(std::abs(s1 - s0 - t) < 1e-8);
  }
}

TEST_CASE("boundary points") {
  CHECK(BoundaryPoint::from_homogeneous(1.0, 0.0).is_infinite());
  CHECK(BoundaryPoint::from_homogeneous(3.0, 2.0).value() == 1.5);
  CHECK_THROWS_AS(BoundaryPoint::finite(INFINITY), Error);
  CHECK(chordal(BoundaryPoint::infinity(), BoundaryPoint::infinity()) == 0.0);
  CHECK(chordal(BoundaryPoint::finite(1e12), BoundaryPoint::infinity()) < 1e-11);
  CHECK_THROWS_AS(make_axis(BoundaryPoint::finite(1.0), BoundaryPoint::finite(1.0)), Error);
}

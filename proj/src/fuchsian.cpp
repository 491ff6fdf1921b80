#include "sageev/fuchsian.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <mutex>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <fmt/format.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "sageev/error.hpp"

namespace sageev {

using hypgeo::Complex;
using hypgeo::Isometry;

namespace {

constexpr double kPi = std::numbers::pi;

// Complex 2×2 matrices for the disk-model construction.
using CMat = std::array<Complex, 4>;

CMat cmul(const CMat& x, const CMat& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

CMat cinv(const CMat& x) {
  Complex det = x[0] * x[3] - x[1] * x[2];
  return {x[3] / det, -x[1] / det, -x[2] / det, x[0] / det};
}

CMat disk_rotation(double theta) {
  return {std::polar(1.0, theta / 2), 0.0, 0.0, std::polar(1.0, -theta / 2)};
}

CMat disk_translation(double dist) {
  return {std::cosh(dist / 2), std::sinh(dist / 2), std::sinh(dist / 2), std::cosh(dist / 2)};
}

// Regular 4g-gon with angle 2π/4g and commutator side pairing, taken to the
// upper half-plane by the Cayley map.
std::vector<Isometry> regular_commutator_group(int genus) {
  int n = 4 * genus;
  double apothem = std::acosh(1.0 / std::tan(kPi / n));
  auto theta = [n](int k) { return 2.0 * kPi * k / n; };
  auto pairing = [&](int s, int t) {
    CMat T = cmul(cmul(disk_rotation(theta(t)), disk_translation(2 * apothem)),
                  disk_rotation(-theta(t)));
    return cmul(T, disk_rotation(theta(t) + kPi - theta(s)));
  };
  const Complex I(0.0, 1.0);
  CMat K{I, I, -1.0, 1.0};
  CMat Ki = cinv(K);
  std::vector<Isometry> out;
  for (int i = 0; i < genus; ++i) {
    int s = 4 * i;
    for (CMat X : {pairing(s + 2, s), cinv(pairing(s + 3, s + 1))}) {
      CMat Y = cmul(cmul(K, X), Ki);
      Complex sq = std::sqrt(Y[0] * Y[3] - Y[1] * Y[2]);
      for (auto& y : Y) y /= sq;
      double im = 0.0;
      for (auto& y : Y) im = std::max(im, std::abs(y.imag()));
      if (im > 1e-9)
        for (auto& y : Y) y *= I;
      double sign = Y[0].real() + Y[3].real() < 0 ? -1.0 : 1.0;
      out.emplace_back(sign * Y[0].real(), sign * Y[1].real(), sign * Y[2].real(),
                       sign * Y[3].real());
    }
  }
  return out;
}

struct Mat2 {
  double a, b, c, d;
};

Mat2 mmul(const Mat2& x, const Mat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
          x.c * y.b + x.d * y.d};
}

// Adjugate, which is the inverse on the determinant-one locus.
Mat2 adj(const Mat2& x) { return {x.d, -x.b, -x.c, x.a}; }

Eigen::VectorXd residual(const Eigen::VectorXd& x, int genus, double target) {
  int m = 2 * genus;
  Eigen::VectorXd f(2 * m + 4);
  Mat2 R{1, 0, 0, 1};
  std::vector<Mat2> ms(m);
  for (int k = 0; k < m; ++k) {
    ms[k] = {x[4 * k], x[4 * k + 1], x[4 * k + 2], x[4 * k + 3]};
    f[k] = ms[k].a * ms[k].d - ms[k].b * ms[k].c - 1.0;
    f[m + k] = ms[k].a + ms[k].d - target;
  }
  for (int i = 0; i < genus; ++i) {
    const Mat2 &A = ms[2 * i], &B = ms[2 * i + 1];
    R = mmul(mmul(mmul(mmul(R, A), B), adj(A)), adj(B));
  }
  f[2 * m] = R.a - 1.0;
  f[2 * m + 1] = R.b;
  f[2 * m + 2] = R.c;
  f[2 * m + 3] = R.d - 1.0;
  return f;
}

// Gauss–Newton continuation along the representation variety from the
// regular commutator-paired group to equal generator traces `target`.
std::vector<Isometry> continue_to_trace(const std::vector<Isometry>& start, int genus,
                                        double target) {
  int m = 2 * genus;
  Eigen::VectorXd x(4 * m);
  for (int k = 0; k < m; ++k) {
    x[4 * k] = start[k].a();
    x[4 * k + 1] = start[k].b();
    x[4 * k + 2] = start[k].c();
    x[4 * k + 3] = start[k].d();
  }
  const double t0 = start[0].signed_trace();
  const int steps = 40;
  const double h = 1e-7;
  auto newton = [&](double t, int iters) {
    for (int it = 0; it < iters; ++it) {
      Eigen::VectorXd f = residual(x, genus, t);
      if (f.cwiseAbs().maxCoeff() < 1e-14) return;
      Eigen::MatrixXd J(f.size(), x.size());
      for (int j = 0; j < x.size(); ++j) {
        Eigen::VectorXd xp = x, xm = x;
        xp[j] += h;
        xm[j] -= h;
        J.col(j) = (residual(xp, genus, t) - residual(xm, genus, t)) / (2 * h);
      }
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
      svd.setThreshold(1e-7);
      x -= svd.solve(f);
    }
  };
  for (int step = 1; step <= steps; ++step) newton(t0 + (target - t0) * step / steps, 20);
  newton(target, 50);
  std::vector<Isometry> out;
  for (int k = 0; k < m; ++k) out.emplace_back(x[4 * k], x[4 * k + 1], x[4 * k + 2], x[4 * k + 3]);
  return out;
}

Isometry eval_images(const std::vector<Isometry>& images, const std::vector<int>& letters) {
  Isometry M;
  for (int x : letters) M = M * (x > 0 ? images[x - 1] : images[-x - 1].inverse());
  return M;
}

// Unit tangent at z of the geodesic toward w.
Complex tangent(Complex z, Complex w) {
  Complex t;
  if (std::abs(z.real() - w.real()) < 1e-14 * std::max(1.0, std::abs(z))) {
    t = Complex(0.0, w.imag() > z.imag() ? 1.0 : -1.0);
  } else {
    double c = (std::norm(w) - std::norm(z)) / (2.0 * (w.real() - z.real()));
    t = Complex(0.0, 1.0) * (z - c);
    if (((w - z) * std::conj(t)).real() < 0) t = -t;
  }
  return t / std::abs(t);
}

double interior_angle(Complex prev, Complex z, Complex next) {
  Complex u = tangent(z, prev), v = tangent(z, next);
  return std::acos(std::clamp((u * std::conj(v)).real(), -1.0, 1.0));
}

struct PerimeterData {
  std::vector<Isometry> Ms;
};

double perimeter_at(const gsl_vector* p, void* params) {
  auto* data = static_cast<PerimeterData*>(params);
  Complex z(gsl_vector_get(p, 0), std::exp(gsl_vector_get(p, 1)));
  std::size_t n = data->Ms.size();
  std::vector<Complex> P(n);
  for (std::size_t k = 0; k < n; ++k) P[k] = data->Ms[k].apply(z);
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += hypgeo::dist_h2(P[k], P[(k + 1) % n]);
  return s;
}

Complex minimise_perimeter(PerimeterData& data, Complex start) {
  gsl_set_error_handler_off();
  gsl_multimin_function fn{&perimeter_at, 2, &data};
  gsl_vector* x = gsl_vector_alloc(2);
  gsl_vector* step = gsl_vector_alloc(2);
  gsl_vector_set(x, 0, start.real());
  gsl_vector_set(x, 1, std::log(start.imag()));
  gsl_vector_set_all(step, 0.05);
  gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 2);
  gsl_multimin_fminimizer_set(s, &fn, x, step);
  for (int it = 0; it < 5000; ++it) {
    if (gsl_multimin_fminimizer_iterate(s)) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), 1e-12) == GSL_SUCCESS) break;
  }
  Complex z(gsl_vector_get(s->x, 0), std::exp(gsl_vector_get(s->x, 1)));
  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(step);
  gsl_vector_free(x);
  return z;
}

Complex hyperboloid_centroid(const std::vector<Complex>& pts) {
  double X0 = 0, X1 = 0, X2 = 0;
  for (Complex z : pts) {
    double x = z.real(), y = z.imag(), r2 = std::norm(z);
    X0 += (1 + r2) / (2 * y);
    X1 += x / y;
    X2 += (r2 - 1) / (2 * y);
  }
  double q = std::sqrt(X0 * X0 - X1 * X1 - X2 * X2);
  X0 /= q;
  X1 /= q;
  X2 /= q;
  double y = 1.0 / (X0 - X2);
  return {X1 * y, y};
}

// Vertex of the regular polygon, as a starting guess.
Complex regular_vertex(int genus) {
  int n = 4 * genus;
  double cot = 1.0 / std::tan(kPi / n);
  double R = std::acosh(cot * cot);
  Complex w = std::polar(std::tanh(R / 2), -kPi / n);
  return Complex(0.0, 1.0) * (1.0 + w) / (1.0 - w);
}

}  // namespace

FuchsianRep::FuchsianRep(int genus, std::vector<Isometry> images, Polygon polygon)
    : genus_(genus), images_(std::move(images)), polygon_(std::move(polygon)) {
  if (static_cast<int>(images_.size()) != 2 * genus_)
    throw Error(ErrorKind::InvalidArgument,
                fmt::format("expected {} generator images, got {}", 2 * genus_, images_.size()));
  for (const auto& m : images_) inverses_.push_back(m.inverse());
}

Isometry evaluate(const FuchsianRep& rep, const GroupWord& w) {
  Isometry M;
  for (int x : w.letters) M = M * rep.letter(x);
  return M;
}

double relator_residual(int genus, const std::vector<Isometry>& images) {
  return eval_images(images, relator(genus)).distance_to_identity();
}

double standard_trace(int genus) { return 2.0 / std::tan(kPi / (4 * genus)); }

std::vector<GroupWord> polygon_vertex_words(int genus) {
  std::vector<int> R = relator(genus);
  auto prefix_inverse = [&](int k) {
    GroupWord p{genus, std::vector<int>(R.begin(), R.begin() + k)};
    return dehn_reduce(inverse(p));
  };
  std::vector<GroupWord> words;
  for (int i = 0; i < genus; ++i) {
    words.push_back(prefix_inverse(4 * i));
    for (int j = 1; j <= 3; ++j) words.push_back(prefix_inverse(4 * i + 4 - j));
  }
  return words;
}

Polygon build_polygon(int genus, const std::vector<Isometry>& images, Complex start) {
  Polygon poly;
  poly.vertex_words = polygon_vertex_words(genus);
  PerimeterData data;
  for (const auto& w : poly.vertex_words) data.Ms.push_back(eval_images(images, w.letters));
  Complex v = minimise_perimeter(data, start);
  int n = 4 * genus;
  for (const auto& M : data.Ms) poly.vertices.push_back(M.apply(v));
  const auto& P = poly.vertices;
  poly.convex = true;
  for (int k = 0; k < n; ++k) {
    double ang = interior_angle(P[(k + n - 1) % n], P[k], P[(k + 1) % n]);
    poly.angles.push_back(ang);
    poly.angle_sum += ang;
    if (!(ang > 1e-9 && ang < kPi - 1e-9)) poly.convex = false;
    // All other vertices strictly on one side of each edge.
    Isometry F = hypgeo::segment_frame(P[k], P[(k + 1) % n]);
    int side = 0;
    for (int j = 0; j < n; ++j) {
      if (j == k || j == (k + 1) % n) continue;
      Complex w = F.apply(P[j]);
      double t = w.real() / w.imag();
      if (std::abs(t) < 1e-9) {
        poly.convex = false;
        continue;
      }
      int s = t > 0 ? 1 : -1;
      if (side == 0) side = s;
      if (s != side) poly.convex = false;
    }
  }
  poly.area = (n - 2) * kPi - poly.angle_sum;
  poly.center = hyperboloid_centroid(P);
  for (Complex z : P) poly.radius = std::max(poly.radius, hypgeo::dist_h2(poly.center, z));
  return poly;
}

namespace {

FuchsianRep checked_rep(int genus, std::vector<Isometry> images) {
  double res = relator_residual(genus, images);
  if (!(res <= 1e-8))
    throw Error(ErrorKind::RelatorCheckFailed,
                fmt::format("relator residual {:.3e} exceeds 1e-8", res));
  Polygon poly = build_polygon(genus, images, regular_vertex(genus));
  double expected = 4.0 * kPi * (genus - 1);
  if (!poly.convex || std::abs(poly.area - expected) > 1e-6)
    throw Error(ErrorKind::PolygonCheckFailed,
                fmt::format("fundamental polygon check failed (convex={}, area={:.12g}, "
                            "expected {:.12g})", poly.convex, poly.area, expected));
  return FuchsianRep(genus, std::move(images), std::move(poly));
}

}  // namespace

FuchsianRep standard_rep(int genus) {
  if (genus < 2) throw Error(ErrorKind::InvalidArgument, "genus must be >= 2");
  static std::mutex mu;
  static std::vector<std::unique_ptr<FuchsianRep>> cache;
  std::lock_guard lock(mu);
  if (static_cast<int>(cache.size()) <= genus) cache.resize(genus + 1);
  if (!cache[genus]) {
    double target = standard_trace(genus);
    auto images = continue_to_trace(regular_commutator_group(genus), genus, target);
    for (const auto& m : images)
      if (std::abs(m.trace() - target) > 1e-9)
        throw Error(ErrorKind::RelatorCheckFailed,
                    fmt::format("generator trace {:.17g} differs from {:.17g}", m.trace(), target));
    cache[genus] = std::make_unique<FuchsianRep>(checked_rep(genus, std::move(images)));
  }
  return *cache[genus];
}

FuchsianRep from_matrices(int genus, std::vector<Isometry> images) {
  if (genus < 2) throw Error(ErrorKind::InvalidArgument, "genus must be >= 2");
  if (static_cast<int>(images.size()) != 2 * genus)
    throw Error(ErrorKind::InvalidArgument,
                fmt::format("expected {} generator matrices, got {}", 2 * genus, images.size()));
  return checked_rep(genus, std::move(images));
}

}  // namespace sageev

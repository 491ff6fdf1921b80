#include "sageev/hypgeo.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "sageev/error.hpp"

namespace sageev::hypgeo {

BoundaryPoint BoundaryPoint::finite(double x) {
  if (!std::isfinite(x))
    throw Error(ErrorKind::InvalidArgument, "boundary point must be a finite double");
  return BoundaryPoint(x);
}

BoundaryPoint BoundaryPoint::from_homogeneous(double x, double y) {
  if (y == 0.0) return infinity();
  double v = x / y;
  if (!std::isfinite(v)) return infinity();
  return BoundaryPoint(v);
}

std::ostream& operator<<(std::ostream& os, const BoundaryPoint& p) {
  if (p.is_infinite()) return os << "inf";
  return os << fmt::format("{:.17g}", p.value());
}

double chordal(const BoundaryPoint& p, const BoundaryPoint& q) {
  if (p.is_infinite() && q.is_infinite()) return 0.0;
  if (p.is_infinite()) return 2.0 / std::hypot(1.0, q.value());
  if (q.is_infinite()) return 2.0 / std::hypot(1.0, p.value());
  double x = p.value(), y = q.value();
  return 2.0 * std::abs(x - y) / (std::hypot(1.0, x) * std::hypot(1.0, y));
}

AxisPair make_axis(BoundaryPoint attracting, BoundaryPoint repelling) {
  if (chordal(attracting, repelling) <= 1e-10)
    throw Error(ErrorKind::InvalidArgument, "axis endpoints coincide");
  return {attracting, repelling};
}

Isometry::Isometry(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {
  double det = a * d - b * c;
  if (!(det > 0.0) || !std::isfinite(det))
    throw Error(ErrorKind::InvalidArgument,
                fmt::format("matrix determinant {} is not positive", det));
  if (std::abs(det - 1.0) > kRenormTol) {
    double s = 1.0 / std::sqrt(det);
    a_ *= s;
    b_ *= s;
    c_ *= s;
    d_ *= s;
  }
}

double Isometry::trace() const { return std::abs(a_ + d_); }

// Products of unimodular factors are unimodular; recomputing the determinant
// of a long product only measures cancellation error.
Isometry Isometry::operator*(const Isometry& r) const {
  return {a_ * r.a_ + b_ * r.c_, a_ * r.b_ + b_ * r.d_, c_ * r.a_ + d_ * r.c_,
          c_ * r.b_ + d_ * r.d_, Raw{}};
}

Complex Isometry::apply(Complex z) const { return (a_ * z + b_) / (c_ * z + d_); }

BoundaryPoint Isometry::apply(const BoundaryPoint& p) const {
  if (p.is_infinite()) return BoundaryPoint::from_homogeneous(a_, c_);
  double x = p.value();
  return BoundaryPoint::from_homogeneous(a_ * x + b_, c_ * x + d_);
}

double Isometry::distance_to_identity() const {
  auto dev = [&](double s) {
    return std::max({std::abs(a_ - s), std::abs(b_), std::abs(c_), std::abs(d_ - s)});
  };
  return std::min(dev(1.0), dev(-1.0));
}

Isometry compose(const Isometry& lhs, const Isometry& rhs) { return lhs * rhs; }

double translation_length(const Isometry& A) {
  double t = A.trace();
  if (t <= 2.0) return 0.0;
  return 2.0 * std::acosh(t / 2.0);
}

AxisPair fixed_points(const Isometry& A) {
  double t = A.signed_trace();
  if (std::abs(t) <= 2.0 + 1e-9)
    throw Error(ErrorKind::NotHyperbolic,
                fmt::format("isometry with |trace| {} is not hyperbolic", std::abs(t)));
  double root = std::sqrt((t - 2.0) * (t + 2.0));
  double big = 0.5 * (t + std::copysign(root, t));
  double small = 1.0 / big;
  auto eigvec = [&](double lambda) {
    // Two candidate eigenvectors (b, λ−a) and (λ−d, c); take the larger one.
    double x1 = A.b(), y1 = lambda - A.a();
    double x2 = lambda - A.d(), y2 = A.c();
    if (std::hypot(x1, y1) >= std::hypot(x2, y2)) return BoundaryPoint::from_homogeneous(x1, y1);
    return BoundaryPoint::from_homogeneous(x2, y2);
  };
  return {eigvec(big), eigvec(small)};
}

LinkingState link(const AxisPair& P, const AxisPair& Q) {
  const BoundaryPoint* ps[2] = {&P.attracting, &P.repelling};
  const BoundaryPoint* qs[2] = {&Q.attracting, &Q.repelling};
  for (auto* p : ps)
    for (auto* q : qs)
      if (chordal(*p, *q) < kCompareTol) return LinkingState::SharedEndpoint;

  // Sign of (q1−p1)(q2−p2) / ((q1−p2)(q2−p1)); factors involving ∞ drop out.
  auto diff_sign = [](const BoundaryPoint& x, const BoundaryPoint& y) -> int {
    if (x.is_infinite() || y.is_infinite()) return 1;
    return x.value() > y.value() ? 1 : -1;
  };
  const auto &p1 = P.attracting, &p2 = P.repelling;
  const auto &q1 = Q.attracting, &q2 = Q.repelling;
  int s = diff_sign(q1, p1) * diff_sign(q2, p2) * diff_sign(q1, p2) * diff_sign(q2, p1);
  return s < 0 ? LinkingState::Linked : LinkingState::Unlinked;
}

double dist_h2(Complex z, Complex w) {
  double num = std::norm(z - w);
  double den = 2.0 * z.imag() * w.imag();
  // acosh(1+x) = log1p(x + sqrt(x(x+2))), accurate for small x.
  double x = num / den;
  return std::log1p(x + std::sqrt(x * (x + 2.0)));
}

namespace {

// Sends repelling ↦ 0 and attracting ↦ ∞, orientation preserving.
Isometry endpoint_frame(const AxisPair& axis) {
  const auto& r = axis.repelling;
  const auto& a = axis.attracting;
  if (r.is_infinite()) return {0.0, -1.0, 1.0, -a.value()};
  if (a.is_infinite()) return {1.0, -r.value(), 0.0, 1.0};
  double rv = r.value(), av = a.value();
  double k = rv > av ? 1.0 : -1.0;
  return {k, -k * rv, 1.0, -av};
}

}  // namespace

Isometry axis_frame(const AxisPair& axis, Complex anchor) {
  Isometry M = endpoint_frame(axis);
  double s = std::sqrt(std::abs(M.apply(anchor)));
  return Isometry(1.0 / s, 0.0, 0.0, s) * M;
}

Complex project_to_axis(const AxisPair& axis, Complex z) {
  Isometry F = axis_frame(axis, z);
  return F.inverse().apply(Complex(0.0, 1.0));
}

double dist_to_axis(const AxisPair& axis, Complex z) {
  Complex w = endpoint_frame(axis).apply(z);
  return std::asinh(std::abs(w.real()) / w.imag());
}

Isometry segment_frame(Complex from, Complex to) {
  // Move `from` to i, then read off the geodesic through i and the image of `to`.
  Isometry U(1.0 / std::sqrt(from.imag()), -from.real() / std::sqrt(from.imag()), 0.0,
             std::sqrt(from.imag()));
  Complex w = U.apply(to);
  double u = w.real(), v = w.imag();
  AxisPair axis{BoundaryPoint::infinity(), BoundaryPoint::finite(0.0)};
  if (std::abs(u) <= 1e-15 * std::max(1.0, std::abs(w))) {
    if (v < 1.0) axis = axis.reversed();
  } else {
    double c = (u * u + v * v - 1.0) / (2.0 * u);
    double rho = std::hypot(1.0, c);
    auto lo = BoundaryPoint::finite(c - rho), hi = BoundaryPoint::finite(c + rho);
    axis = u > 0 ? AxisPair{hi, lo} : AxisPair{lo, hi};
  }
  return axis_frame(axis, Complex(0.0, 1.0)) * U;
}

double dist_to_segment(Complex z, Complex from, Complex to) {
  double len = dist_h2(from, to);
  if (len < 1e-14) return dist_h2(z, from);
  Isometry F = segment_frame(from, to);
  Complex w = F.apply(z);
  double t = std::log(std::abs(w));
  if (t < 0.0) return dist_h2(w, Complex(0.0, 1.0));
  if (t > len) return dist_h2(w, Complex(0.0, std::exp(len)));
  return std::asinh(std::abs(w.real()) / w.imag());
}

double crossing_param(const AxisPair& base, Complex anchor, const AxisPair& other) {
  if (link(base, other) != LinkingState::Linked)
    throw Error(ErrorKind::NotLinked, "crossing_param: axes are not linked");
  Isometry F = axis_frame(base, anchor);
  BoundaryPoint X = F.apply(other.attracting), Y = F.apply(other.repelling);
  if (X.is_infinite() || Y.is_infinite() || X.value() * Y.value() >= 0.0)
    throw Error(ErrorKind::NotLinked, "crossing_param: axes are not linked in frame");
  return 0.5 * std::log(-X.value() * Y.value());
}

}  // namespace sageev::hypgeo

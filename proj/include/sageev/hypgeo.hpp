#pragma once

// Upper half-plane geometry of PSL(2,R): isometries, boundary points, axes,
// and the linking predicate used by every intersection count.

#include <complex>
#include <iosfwd>
#include <optional>

namespace sageev::hypgeo {

using Complex = std::complex<double>;

inline constexpr double kCompareTol = 1e-9;
inline constexpr double kRenormTol = 1e-12;

// A point of R ∪ {∞}. Infinity is its own state, never a sentinel double.
class BoundaryPoint {
 public:
  static BoundaryPoint infinity() { return BoundaryPoint(); }
  static BoundaryPoint finite(double x);
  // Projective coordinates (x : y); y == 0 is infinity.
  static BoundaryPoint from_homogeneous(double x, double y);

  bool is_infinite() const { return !value_; }
  // Precondition: !is_infinite().
  double value() const { return *value_; }

  bool operator==(const BoundaryPoint&) const = default;

 private:
  BoundaryPoint() = default;
  explicit BoundaryPoint(double x) : value_(x) {}
  std::optional<double> value_;
};

std::ostream& operator<<(std::ostream& os, const BoundaryPoint& p);

// Chordal distance on the boundary circle after the Cayley transform i ↦ 0.
double chordal(const BoundaryPoint& p, const BoundaryPoint& q);

struct AxisPair {
  BoundaryPoint attracting;
  BoundaryPoint repelling;

  AxisPair reversed() const { return {repelling, attracting}; }
};

// Validates the separation invariant (chordal > 1e-10).
AxisPair make_axis(BoundaryPoint attracting, BoundaryPoint repelling);

// z ↦ (az+b)/(cz+d), stored as a unit-determinant representative of its ±
// class.
class Isometry {
 public:
  Isometry() = default;  // identity
  // Renormalises by sqrt(det) if det drifts; throws InvalidArgument if det <= 0.
  Isometry(double a, double b, double c, double d);

  static Isometry identity() { return {}; }
  static Isometry diagonal(double lambda) { return {lambda, 0.0, 0.0, 1.0 / lambda}; }

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double d() const { return d_; }
  double det() const { return a_ * d_ - b_ * c_; }

  // |a + d|.
  double trace() const;
  double signed_trace() const { return a_ + d_; }

  Isometry inverse() const { return {d_, -b_, -c_, a_, Raw{}}; }
  Isometry operator*(const Isometry& rhs) const;

  Complex apply(Complex z) const;
  BoundaryPoint apply(const BoundaryPoint& p) const;
  AxisPair apply(const AxisPair& p) const {
    return {apply(p.attracting), apply(p.repelling)};
  }

  // Entrywise distance to +I or -I, whichever is smaller.
  double distance_to_identity() const;

 private:
  struct Raw {};
  Isometry(double a, double b, double c, double d, Raw)
      : a_(a), b_(b), c_(c), d_(d) {}

  double a_ = 1.0, b_ = 0.0, c_ = 0.0, d_ = 1.0;
};

Isometry compose(const Isometry& lhs, const Isometry& rhs);

double translation_length(const Isometry& A);

// Throws NotHyperbolic when |tr| <= 2 + 1e-9.
AxisPair fixed_points(const Isometry& A);

enum class LinkingState { Linked, Unlinked, SharedEndpoint };

LinkingState link(const AxisPair& P, const AxisPair& Q);

double dist_h2(Complex z, Complex w);

// Orientation-preserving map taking axis.repelling ↦ 0, axis.attracting ↦ ∞
// and the foot of `anchor` on the axis to i. Along the axis, the point at
// signed arclength s from the anchor is sent to i·e^s.
Isometry axis_frame(const AxisPair& axis, Complex anchor);

// Closest point of the geodesic to z.
Complex project_to_axis(const AxisPair& axis, Complex z);
double dist_to_axis(const AxisPair& axis, Complex z);

// Geodesic segment [from, to] mapped so that `from` ↦ i and `to` ↦ i·e^len.
Isometry segment_frame(Complex from, Complex to);
double dist_to_segment(Complex z, Complex from, Complex to);

// Signed arclength, from the anchor's foot toward base.attracting, of the
// point where `other` crosses base. Throws NotLinked.
double crossing_param(const AxisPair& base, Complex anchor, const AxisPair& other);

}  // namespace sageev::hypgeo

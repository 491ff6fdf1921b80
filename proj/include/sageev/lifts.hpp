#pragma once

// Enumeration of lifts of closed geodesics crossing one period of an axis.
//
// A lift L of axis(h) crossing axis(c) at q lies in some tile t·P with
// d(t·x0, q) <= D, and t⁻¹·L meets the base polygon P. So every crossing
// orbit is t·s⁻¹·axis(h) with t a tile near one period of axis(c) and
// s⁻¹·axis(h) one of the finitely many lifts through P. Any search radius
// R >= D is complete; larger radii only add duplicates.
//
// A period of a long axis is far from x0, and matrices reaching it lose all
// precision. The period is therefore cut into charts, one per cyclic
// rotation w_j = p_j⁻¹·w·p_j: axis(w) = p_j·axis(w_j), and axis(w_j) passes
// near x0. All geometry is done near x0 in the chart and carried back by the
// offset of the chart along axis(w).

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "sageev/fuchsian.hpp"
#include "sageev/hypgeo.hpp"
#include "sageev/words.hpp"

namespace sageev {

struct Tile {
  GroupWord word;
  hypgeo::Isometry matrix;
  hypgeo::Complex centre;  // matrix · x0
};

struct ClassAxis {
  GroupWord word;
  hypgeo::Isometry matrix;
  hypgeo::AxisPair axis{hypgeo::BoundaryPoint::infinity(), hypgeo::BoundaryPoint::finite(0.0)};
  double length = 0.0;
  hypgeo::Complex foot;    // projection of x0 onto the axis
  hypgeo::Isometry frame;  // axis_frame(axis, foot)
};

ClassAxis class_axis(const FuchsianRep& rep, const GroupWord& w);

struct AxisChart {
  GroupWord prefix;  // p_j = first j letters of w
  ClassAxis axis;    // axis of the rotation w_j
  // p_j maps the foot on axis(w_j) to parameter `offset` on axis(w); the
  // chart covers local parameters between 0 and `step` (step may be negative).
  double offset = 0.0;
  double step = 0.0;
};

// One chart per letter; the steps sum to ℓ(w).
std::vector<AxisChart> axis_charts(const FuchsianRep& rep, const GroupWord& w);

struct Lift {
  GroupWord conjugator;
  hypgeo::AxisPair pair;
};

// One ⟨c⟩-orbit of lifts of axis(h) crossing axis(c).
struct Crossing {
  GroupWord conjugator;    // pair = evaluate(conjugator) · axis(h)
  hypgeo::AxisPair pair;   // representative crossing in [0, ℓ(c)) from the foot of x0
  double param = 0.0;      // crossing parameter in [0, ℓ(c))
  // Endpoints of `pair` in the frame of axis(c) (foot of x0 at i).
  double frame_attracting = 0.0;
  double frame_repelling = 0.0;
};

// Largest chordal distance between corresponding endpoints of two crossings,
// measured in the frame centred at the crossing point of `a`; `b` is first
// moved by c^{±1} if it sits across the parameter seam. Crossing parameters
// of shallow crossings are ill-conditioned, endpoints are not.
double crossing_separation(const Crossing& a, const Crossing& b, double ell);

struct TileStats {
  std::size_t tiles = 0;
  std::size_t lifts = 0;
  std::size_t candidates = 0;
};

class LiftEngine {
 public:
  explicit LiftEngine(const FuchsianRep& rep, double margin0 = 0.25);

  const FuchsianRep& rep() const { return rep_; }
  double radius(int k) const;
  double margin0() const { return margin0_; }

  const ClassAxis& axis(const GroupWord& w);
  const std::vector<AxisChart>& charts(const GroupWord& w);
  // Tiles with centre within radius(k) of the segment covered by chart j, in
  // the coordinates of that chart.
  const std::vector<Tile>& chart_tiles(const GroupWord& w, std::size_t j, int k);
  // Lifts of axis(w) passing within D + margin0 of x0.
  const std::vector<Lift>& base_lifts(const GroupWord& w);

  // ⟨c⟩-orbits of lifts of axis(h) crossing axis(c), sorted by parameter.
  // Lifts sharing the axis of c are skipped.
  std::vector<Crossing> crossings(const GroupWord& h, const GroupWord& c, int k,
                                  TileStats* stats = nullptr);

  // True if b is a c-translate of a lift in the same ⟨h⟩-coset as a, i.e. both
  // name the same crossing orbit. Endpoints only pre-filter; the decision is
  // the word problem for a.conjugator⁻¹ · c^e · b.conjugator ∈ ⟨h⟩, h primitive.
  bool same_orbit(const GroupWord& h, const GroupWord& c, const Crossing& a, const Crossing& b);

 private:
  std::vector<Tile> search_tiles(const ClassAxis& ax, double lo, double hi, double R);

  const FuchsianRep rep_;
  double margin0_;
  std::mutex mu_;
  std::map<std::vector<int>, ClassAxis> axes_;
  std::map<std::vector<int>, std::vector<AxisChart>> charts_;
  std::map<std::tuple<std::vector<int>, std::size_t, int>, std::vector<Tile>> tiles_;
  std::map<std::vector<int>, std::vector<Lift>> lifts_;
};

}  // namespace sageev

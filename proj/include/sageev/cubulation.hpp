#pragma once

// Walls dual to a discrete current along a window of an axis, orientations
// over those walls, and the finite Sageev fragment they generate.

#include <cstdint>
#include <string>
#include <vector>

#include "sageev/currents.hpp"

namespace sageev {

enum class Side : std::uint8_t { Minus = 0, Plus = 1 };

struct Wall {
  std::string id;
  std::size_t atom = 0;
  GroupWord conjugator;  // pair = evaluate(conjugator) · axis(atom)
  hypgeo::AxisPair pair{hypgeo::BoundaryPoint::infinity(), hypgeo::BoundaryPoint::finite(0.0)};
  // Endpoints in the frame of the window axis (axis(c) = imaginary axis,
  // window start = i); both finite with opposite signs.
  double frame_attracting = 0.0;
  double frame_repelling = 0.0;
  double param = 0.0;  // crossing parameter from the window start, in [0, N·ℓ(c))
};

struct WallSet {
  WeightedCurrent alpha;
  ConjugacyClass c;
  int periods = 1;
  double period = 0.0;  // ℓ(c)
  // Window start, as a parameter from the foot of x0 on axis(c). Placed at
  // the middle of the widest gap between crossings.
  double anchor = 0.0;
  hypgeo::Isometry frame;  // axis(c) frame with the window start at i
  std::vector<Wall> walls;
  bool stabilized = false;
  double radius_used = 0.0;
};

// Throws NotDiscrete unless every weight is 1, NotStabilized if the count
// never settles.
WallSet build_wall_set(const WeightedCurrent& alpha, const ConjugacyClass& c, int N,
                       LiftEngine& engine, const IntersectionOptions& opts = {});

// Side of each wall containing the frame point z (frame coordinates). Points
// within 1e-9 of a wall are nudged toward the attracting end of axis(c).
Side side_of(const Wall& w, hypgeo::Complex z);

using Orientation = std::vector<Side>;

Orientation orient_at(const std::vector<Wall>& walls, hypgeo::Complex z);

enum class WallRelation { Crossing, Nested };

struct WallPairInfo {
  WallRelation relation = WallRelation::Crossing;
  // For nested walls: the combination (side i, side j) that no vertex may take.
  Side forbidden_i = Side::Minus, forbidden_j = Side::Minus;
};

// Pairwise relations decided from the cyclic order of the four endpoints.
// Throws InconsistentWalls when the order is numerically ambiguous.
std::vector<std::vector<WallPairInfo>> wall_relations(const std::vector<Wall>& walls);

bool is_consistent(const Orientation& v, const std::vector<std::vector<WallPairInfo>>& rel);

struct CubeFragment {
  std::vector<Wall> walls;
  std::vector<Orientation> vertices;  // vertices[0] is the base
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::vector<WallPairInfo>> relations;
  std::string region;

  const Orientation& base() const { return vertices.front(); }
  std::size_t index_of(const Orientation& v) const;  // throws VertexNotInFragment
};

inline constexpr std::size_t kDefaultVertexCap = 1u << 16;

// Base orientation at the frame point `base_point`; throws FragmentTooLarge
// beyond `vertex_cap` vertices.
CubeFragment sageev_fragment(const std::vector<Wall>& walls, hypgeo::Complex base_point,
                             std::size_t vertex_cap = kDefaultVertexCap);
// Base orientation toward x0.
CubeFragment sageev_fragment(const WallSet& ws, const FuchsianRep& rep,
                             std::size_t vertex_cap = kDefaultVertexCap);

std::size_t hamming(const Orientation& v, const Orientation& w);
std::vector<std::size_t> bfs_distances(const CubeFragment& f, std::size_t from);

// Walls on which v and w differ; checked against the BFS distance.
std::size_t fragment_distance(const CubeFragment& f, const Orientation& v, const Orientation& w);

// True if every pair of vertices has BFS distance equal to its Hamming distance.
bool is_partial_cube(const CubeFragment& f);

struct CubeDimension {
  int dimension = 0;
  bool exact = true;
};

// Largest family of pairwise crossing walls; exact up to 20 walls.
CubeDimension max_cube_dimension(const CubeFragment& f);

Rational cubical_length(const WeightedCurrent& alpha, const ConjugacyClass& c, LiftEngine& engine,
                        const IntersectionOptions& opts = {});

struct DualityReport {
  std::size_t separation = 0;  // walls separating v0 from c^N·v0
  Rational expected{0};        // N · cubical_length
  std::size_t walls = 0;
  bool stabilized = false;
  bool pass = false;
};

DualityReport verify_duality(const WeightedCurrent& alpha, const ConjugacyClass& c, int N,
                             LiftEngine& engine, const IntersectionOptions& opts = {});

}  // namespace sageev

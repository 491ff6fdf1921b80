#include "sageev/cubulation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>

#include <fmt/format.h>

#include "sageev/error.hpp"

namespace sageev {

using hypgeo::AxisPair;
using hypgeo::BoundaryPoint;
using hypgeo::Complex;
using hypgeo::Isometry;

namespace {

constexpr double kOnWall = 1e-9;

Side flip(Side s) { return s == Side::Plus ? Side::Minus : Side::Plus; }

double frame_slope(double x, double y) { return x / std::sqrt(-x * y); }

// Midpoint of the widest gap between crossing parameters on a circle of
// length ell; ties go to the earliest gap.
double widest_gap_midpoint(std::vector<double> params, double ell) {
  if (params.empty()) return 0.0;
  std::sort(params.begin(), params.end());
  double best = -1.0, mid = 0.0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    double lo = params[i];
    double hi = i + 1 < params.size() ? params[i + 1] : params.front() + ell;
    if (hi - lo > best + 1e-12) {
      best = hi - lo;
      mid = 0.5 * (lo + hi);
    }
  }
  return std::fmod(mid, ell);
}

}  // namespace

WallSet build_wall_set(const WeightedCurrent& alpha, const ConjugacyClass& c, int N,
                       LiftEngine& engine, const IntersectionOptions& opts) {
  if (!alpha.is_discrete())
    throw Error(ErrorKind::NotDiscrete, "walls need a current with all weights equal to 1");
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "window must span at least one period");
  LinkingCount n = intersection_number(alpha, c, engine, opts);
  if (!n.stabilized)
    throw Error(ErrorKind::NotStabilized,
                fmt::format("crossings of '{}' did not stabilize by radius {:.6g}",
                            format_word(c.canonical), n.radius_used));
  const ClassAxis& C = engine.axis(c.canonical);
  WallSet ws;
  ws.alpha = alpha;
  ws.c = c;
  ws.periods = N;
  ws.period = C.length;
  ws.stabilized = true;
  ws.radius_used = n.radius_used;
  const double ell = C.length;

  std::vector<double> params;
  for (const auto& w : n.witnesses) params.push_back(w.crossing);
  ws.anchor = widest_gap_midpoint(params, ell);
  ws.frame = Isometry(std::exp(-ws.anchor / 2), 0.0, 0.0, std::exp(ws.anchor / 2)) * C.frame;

  for (const auto& w : n.witnesses) {
    double rel = w.crossing - ws.anchor;
    int j0 = rel < 0.0 ? 1 : 0;
    rel += j0 * ell;
    const double X = w.frame_attracting * std::exp(-ws.anchor);
    const double Y = w.frame_repelling * std::exp(-ws.anchor);
    if (X * Y >= 0.0)
      throw Error(ErrorKind::InconsistentWalls, "witness axis does not cross the window axis");
    for (int k = 0; k < N; ++k) {
      int j = j0 + k;
      double scale = std::exp(j * ell);
      Wall wall;
      wall.atom = w.atom;
      wall.frame_attracting = X * scale;
      wall.frame_repelling = Y * scale;
      wall.param = rel + k * ell;
      wall.conjugator = dehn_reduce(concat(power(c.canonical, j), w.conjugator));
      Isometry Finv = ws.frame.inverse();
      wall.pair = {Finv.apply(BoundaryPoint::finite(wall.frame_attracting)),
                   Finv.apply(BoundaryPoint::finite(wall.frame_repelling))};
      wall.id = fmt::format("{}:{:.6f}:{:.6f}", wall.atom, wall.param,
                            frame_slope(wall.frame_attracting, wall.frame_repelling));
      ws.walls.push_back(std::move(wall));
    }
  }
  std::sort(ws.walls.begin(), ws.walls.end(), [](const Wall& p, const Wall& q) {
    if (p.param != q.param) return p.param < q.param;
    return p.atom < q.atom;
  });
  // Distinct atoms never share an axis in a discrete group; coincidence means
  // the current repeats a geodesic.
  for (std::size_t i = 0; i + 1 < ws.walls.size(); ++i) {
    const Wall &p = ws.walls[i], &q = ws.walls[i + 1];
    if (q.param - p.param > 1e-3) continue;
    double s = std::exp(-p.param);
    auto ch = [](double u, double v) {
      return hypgeo::chordal(BoundaryPoint::finite(u), BoundaryPoint::finite(v));
    };
    if (std::max(ch(p.frame_attracting * s, q.frame_attracting * s),
                 ch(p.frame_repelling * s, q.frame_repelling * s)) < 1e-8)
      throw Error(ErrorKind::NotDiscrete, fmt::format("walls {} and {} coincide", p.id, q.id));
  }
  return ws;
}

Side side_of(const Wall& w, Complex z) {
  const double p = w.frame_attracting, q = w.frame_repelling;
  const double m = 0.5 * (p + q), r = 0.5 * std::abs(p - q);
  double d = std::abs(z - m) - r;
  if (std::abs(d) < kOnWall * r) {
    z *= std::exp(1e-6);
    d = std::abs(z - m) - r;
  }
  bool inside = d < 0.0;
  // Left of the direction repelling → attracting.
  bool left = q < p ? !inside : inside;
  return left ? Side::Plus : Side::Minus;
}

Orientation orient_at(const std::vector<Wall>& walls, Complex z) {
  Orientation v;
  v.reserve(walls.size());
  for (const auto& w : walls) v.push_back(side_of(w, z));
  return v;
}

std::vector<std::vector<WallPairInfo>> wall_relations(const std::vector<Wall>& walls) {
  std::size_t n = walls.size();
  std::vector<std::vector<WallPairInfo>> rel(n, std::vector<WallPairInfo>(n));
  auto top = [](const Wall& w) {
    double p = w.frame_attracting, q = w.frame_repelling;
    return Complex(0.5 * (p + q), 0.5 * std::abs(p - q));
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Wall &a = walls[i], &b = walls[j];
      double lo = std::min(a.frame_attracting, a.frame_repelling);
      double hi = std::max(a.frame_attracting, a.frame_repelling);
      int inside = 0;
      for (double x : {b.frame_attracting, b.frame_repelling}) {
        for (double e : {lo, hi})
          // Relative, so the test does not degrade along the window where
          // the frame scales endpoints by e^param.
          if (std::abs(x - e) < kOnWall * std::max(std::abs(x), std::abs(e)))
            throw Error(ErrorKind::InconsistentWalls,
                        fmt::format("walls {} and {} share an endpoint", a.id, b.id));
        if (x > lo && x < hi) ++inside;
      }
      WallPairInfo info;
      if (inside == 1) {
        info.relation = WallRelation::Crossing;
      } else {
        info.relation = WallRelation::Nested;
        // Each wall lies in one halfspace of the other; the two halfspaces
        // facing away from each other are disjoint.
        info.forbidden_i = flip(side_of(a, top(b)));
        info.forbidden_j = flip(side_of(b, top(a)));
      }
      rel[i][j] = info;
      WallPairInfo sym = info;
      std::swap(sym.forbidden_i, sym.forbidden_j);
      rel[j][i] = sym;
    }
  }
  return rel;
}

bool is_consistent(const Orientation& v, const std::vector<std::vector<WallPairInfo>>& rel) {
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      const auto& r = rel[i][j];
      if (r.relation == WallRelation::Nested && v[i] == r.forbidden_i && v[j] == r.forbidden_j)
        return false;
    }
  return true;
}

std::size_t CubeFragment::index_of(const Orientation& v) const {
  auto it = std::find(vertices.begin(), vertices.end(), v);
  if (it == vertices.end()) throw Error(ErrorKind::VertexNotInFragment, "orientation is not a vertex");
  return static_cast<std::size_t>(it - vertices.begin());
}

CubeFragment sageev_fragment(const std::vector<Wall>& walls, Complex base_point,
                             std::size_t vertex_cap) {
  if (walls.empty()) throw Error(ErrorKind::InvalidArgument, "fragment needs at least one wall");
  std::set<std::string> ids;
  for (const auto& w : walls)
    if (!ids.insert(w.id).second)
      throw Error(ErrorKind::InvalidArgument, fmt::format("duplicate wall id {}", w.id));

  CubeFragment f;
  f.walls = walls;
  f.relations = wall_relations(walls);
  Orientation base = orient_at(walls, base_point);
  if (!is_consistent(base, f.relations))
    throw Error(ErrorKind::InconsistentWalls, "base orientation is inconsistent");

  std::map<Orientation, std::size_t> index;
  std::set<std::pair<std::size_t, std::size_t>> edges;
  f.vertices.push_back(base);
  index.emplace(base, 0);
  std::deque<std::size_t> queue{0};
  const std::size_t n = walls.size();
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < n; ++i) {
      Orientation v = f.vertices[u];
      v[i] = flip(v[i]);
      bool ok = true;
      for (std::size_t j = 0; j < n && ok; ++j) {
        if (j == i) continue;
        const auto& r = f.relations[i][j];
        if (r.relation == WallRelation::Nested && v[i] == r.forbidden_i && v[j] == r.forbidden_j)
          ok = false;
      }
      if (!ok) continue;
      auto it = index.find(v);
      std::size_t w;
      if (it == index.end()) {
        if (f.vertices.size() >= vertex_cap)
          throw Error(ErrorKind::FragmentTooLarge,
                      fmt::format("fragment exceeds {} vertices", vertex_cap));
        w = f.vertices.size();
        index.emplace(v, w);
        f.vertices.push_back(std::move(v));
        queue.push_back(w);
      } else {
        w = it->second;
      }
      edges.emplace(std::min(u, w), std::max(u, w));
    }
  }
  f.edges.assign(edges.begin(), edges.end());
  return f;
}

CubeFragment sageev_fragment(const WallSet& ws, const FuchsianRep& rep, std::size_t vertex_cap) {
  CubeFragment f = sageev_fragment(ws.walls, ws.frame.apply(rep.basepoint()), vertex_cap);
  f.region = fmt::format("{} periods of the axis of {} from parameter {:.17g}", ws.periods,
                         format_word(ws.c.canonical), ws.anchor);
  return f;
}

std::size_t hamming(const Orientation& v, const Orientation& w) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < v.size(); ++i) d += v[i] != w[i];
  return d;
}

std::vector<std::size_t> bfs_distances(const CubeFragment& f, std::size_t from) {
  std::vector<std::vector<std::size_t>> adj(f.vertices.size());
  for (auto [u, v] : f.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  const std::size_t inf = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(f.vertices.size(), inf);
  std::deque<std::size_t> q{from};
  dist[from] = 0;
  while (!q.empty()) {
    std::size_t u = q.front();
    q.pop_front();
    for (std::size_t v : adj[u])
      if (dist[v] == inf) {
        dist[v] = dist[u] + 1;
        q.push_back(v);
      }
  }
  return dist;
}

std::size_t fragment_distance(const CubeFragment& f, const Orientation& v, const Orientation& w) {
  std::size_t iv = f.index_of(v), iw = f.index_of(w);
  std::size_t d = hamming(v, w);
  std::size_t b = bfs_distances(f, iv)[iw];
  if (b != d)
    throw Error(ErrorKind::InconsistentWalls,
                fmt::format("edge distance {} differs from wall count {}", b, d));
  return d;
}

bool is_partial_cube(const CubeFragment& f) {
  for (std::size_t u = 0; u < f.vertices.size(); ++u) {
    auto dist = bfs_distances(f, u);
    for (std::size_t v = 0; v < f.vertices.size(); ++v)
      if (dist[v] != hamming(f.vertices[u], f.vertices[v])) return false;
  }
  return true;
}

CubeDimension max_cube_dimension(const CubeFragment& f) {
  const std::size_t n = f.walls.size();
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "empty fragment");
  auto crosses = [&](std::size_t i, std::size_t j) {
    return i != j && f.relations[i][j].relation == WallRelation::Crossing;
  };
  if (n <= 20) {
    std::vector<std::uint32_t> nbr(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (crosses(i, j)) nbr[i] |= 1u << j;
    int best = 0;
    // Bron–Kerbosch with pivoting over bitmasks.
    auto bk = [&](auto&& self, std::uint32_t R, std::uint32_t P, std::uint32_t X) -> void {
      if (!P && !X) {
        best = std::max(best, __builtin_popcount(R));
        return;
      }
      if (__builtin_popcount(R) + __builtin_popcount(P) <= best) return;
      int pivot = __builtin_ctz(P | X);
      std::uint32_t cand = P & ~nbr[pivot];
      while (cand) {
        int v = __builtin_ctz(cand);
        cand &= cand - 1;
        self(self, R | (1u << v), P & nbr[v], X & nbr[v]);
        P &= ~(1u << v);
        X |= 1u << v;
      }
    };
    bk(bk, 0, n == 32 ? ~0u : (1u << n) - 1, 0);
    return {best, true};
  }
  std::vector<std::size_t> order(n);
  std::vector<int> degree(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    order[i] = i;
    for (std::size_t j = 0; j < n; ++j) degree[i] += crosses(i, j);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return degree[a] > degree[b]; });
  int best = 0;
  for (std::size_t s : order) {
    std::vector<std::size_t> clique{s};
    for (std::size_t v : order)
      if (std::all_of(clique.begin(), clique.end(), [&](std::size_t u) { return crosses(u, v); }))
        clique.push_back(v);
    best = std::max(best, static_cast<int>(clique.size()));
  }
  return {best, false};
}

Rational cubical_length(const WeightedCurrent& alpha, const ConjugacyClass& c, LiftEngine& engine,
                        const IntersectionOptions& opts) {
  if (!alpha.is_discrete())
    throw Error(ErrorKind::NotDiscrete, "cubical length needs a current with unit weights");
  LinkingCount n = intersection_number(alpha, c, engine, opts);
  if (!n.stabilized)
    throw Error(ErrorKind::NotStabilized,
                fmt::format("count for '{}' did not stabilize", format_word(c.canonical)));
  return n.value;
}

DualityReport verify_duality(const WeightedCurrent& alpha, const ConjugacyClass& c, int N,
                             LiftEngine& engine, const IntersectionOptions& opts) {
  if (N < 2) throw Error(ErrorKind::InvalidArgument, "duality check needs N >= 2");
  if (c.power != 1) throw Error(ErrorKind::InvalidArgument, "duality check needs a primitive class");
  WallSet ws = build_wall_set(alpha, c, N, engine, opts);
  // v0 sits at the window start on axis(c); c^N moves it to the window end.
  Complex v0(0.0, 1.0);
  Complex vN(0.0, std::exp(N * ws.period));
  DualityReport rep;
  rep.walls = ws.walls.size();
  rep.separation = hamming(orient_at(ws.walls, v0), orient_at(ws.walls, vN));
  rep.expected = Rational(N) * cubical_length(alpha, c, engine, opts);
  rep.stabilized = ws.stabilized;
  rep.pass = Rational(static_cast<std::int64_t>(rep.separation)) == rep.expected;
  return rep;
}

}  // namespace sageev

#include "sageev/lifts.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <unordered_map>

#include <fmt/format.h>

#include "sageev/error.hpp"

namespace sageev {

using hypgeo::AxisPair;
using hypgeo::BoundaryPoint;
using hypgeo::Complex;
using hypgeo::Isometry;

namespace {

constexpr double kCell = 0.25;
constexpr double kSameTile = 1e-3;
// Endpoint separation below which crossings are compared combinatorially.
constexpr double kOrbitFilter = 1e-4;
// Crossings closer than this in parameter are compared by endpoints.
constexpr double kParamWindow = 1e-3;

// Spatial hash over Fermi coordinates (arclength along the axis, signed
// distance from it) in a fixed axis frame.
class TileIndex {
 public:
  explicit TileIndex(const Isometry& frame) : frame_(frame) {}

  // Returns true if a centre within kSameTile was already present.
  bool find_or_insert(Complex z, std::vector<Complex>& centres) {
    auto [i, j] = cell(z);
    for (int di = -1; di <= 1; ++di)
      for (int dj = -1; dj <= 1; ++dj) {
        auto it = cells_.find(key(i + di, j + dj));
        if (it == cells_.end()) continue;
        for (int idx : it->second)
          if (hypgeo::dist_h2(centres[idx], z) < kSameTile) return true;
      }
    cells_[key(i, j)].push_back(static_cast<int>(centres.size()));
    centres.push_back(z);
    return false;
  }

 private:
  std::pair<long, long> cell(Complex z) const {
    Complex w = frame_.apply(z);
    double t = std::log(std::abs(w));
    double rho = std::asinh(w.real() / w.imag());
    return {static_cast<long>(std::floor(t / kCell)), static_cast<long>(std::floor(rho / kCell))};
  }
  static long long key(long i, long j) { return (static_cast<long long>(i) << 32) ^ (j & 0xffffffffLL); }

  Isometry frame_;
  std::unordered_map<long long, std::vector<int>> cells_;
};

// Distance from w (axis frame) to the segment [i·e^lo, i·e^hi] of the
// imaginary axis.
double dist_to_range(Complex w, double lo, double hi) {
  double t = std::log(std::abs(w));
  if (t < lo) return hypgeo::dist_h2(w, Complex(0.0, std::exp(lo)));
  if (t > hi) return hypgeo::dist_h2(w, Complex(0.0, std::exp(hi)));
  return std::asinh(std::abs(w.real()) / w.imag());
}

// x ∈ ⟨h⟩, decided by Dehn's algorithm. The exponent candidate comes from the
// translation length of the reduced word; evaluating x itself can cancel
// catastrophically.
bool in_power_group(const FuchsianRep& rep, const GroupWord& x, const GroupWord& h, double ell_h) {
  GroupWord r = dehn_reduce(x);
  if (r.empty()) return true;
  double t = std::abs(evaluate(rep, r).trace());
  int m = static_cast<int>(std::lround(2.0 * std::acosh(std::max(1.0, 0.5 * t)) / ell_h));
  for (int s = std::max(1, m - 1); s <= m + 1; ++s)
    for (int sign : {1, -1})
      if (dehn_reduce(concat(r, power(h, -sign * s))).empty()) return true;
  return false;
}

}  // namespace

ClassAxis class_axis(const FuchsianRep& rep, const GroupWord& w) {
  ClassAxis ax;
  ax.word = w;
  ax.matrix = evaluate(rep, w);
  ax.axis = hypgeo::fixed_points(ax.matrix);
  ax.length = hypgeo::translation_length(ax.matrix);
  ax.foot = hypgeo::project_to_axis(ax.axis, rep.basepoint());
  ax.frame = hypgeo::axis_frame(ax.axis, ax.foot);
  return ax;
}

std::vector<AxisChart> axis_charts(const FuchsianRep& rep, const GroupWord& w) {
  if (w.empty()) throw Error(ErrorKind::IdentityClass, "axis of the empty word");
  const std::size_t n = w.size();
  const Complex x0 = rep.basepoint();
  std::vector<AxisChart> out;
  double offset = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    AxisChart ch;
    ch.prefix = {w.genus, std::vector<int>(w.letters.begin(), w.letters.begin() + j)};
    std::vector<int> rot(w.letters.begin() + j, w.letters.end());
    rot.insert(rot.end(), w.letters.begin(), w.letters.begin() + j);
    ch.axis = class_axis(rep, {w.genus, rot});
    // axis(w_{j+1}) = x_j⁻¹·axis(w_j), so the next foot sits where x_j·x0
    // projects.
    ch.step = std::log(std::abs(ch.axis.frame.apply(rep.letter(w.letters[j]).apply(x0))));
    ch.offset = offset;
    offset += ch.step;
    out.push_back(std::move(ch));
  }
  return out;
}

LiftEngine::LiftEngine(const FuchsianRep& rep, double margin0) : rep_(rep), margin0_(margin0) {
  if (!(margin0 > 0.0)) throw Error(ErrorKind::InvalidArgument, "radius margin must be positive");
}

double LiftEngine::radius(int k) const { return rep_.diameter() + margin0_ * std::ldexp(1.0, k); }

const ClassAxis& LiftEngine::axis(const GroupWord& w) {
  std::lock_guard lock(mu_);
  auto it = axes_.find(w.letters);
  if (it == axes_.end()) it = axes_.emplace(w.letters, class_axis(rep_, w)).first;
  return it->second;
}

const std::vector<AxisChart>& LiftEngine::charts(const GroupWord& w) {
  std::lock_guard lock(mu_);
  auto it = charts_.find(w.letters);
  if (it == charts_.end()) it = charts_.emplace(w.letters, axis_charts(rep_, w)).first;
  return it->second;
}

std::vector<Tile> LiftEngine::search_tiles(const ClassAxis& ax, double lo, double hi, double R) {
  const Complex x0 = rep_.basepoint();
  const double len0 = hypgeo::dist_h2(x0, ax.foot);
  const bool has_connector = len0 > 1e-12;
  const Isometry connector = has_connector ? hypgeo::segment_frame(x0, ax.foot) : Isometry();
  auto dist_connector = [&](Complex z) {
    if (!has_connector) return hypgeo::dist_h2(z, x0);
    return dist_to_range(connector.apply(z), 0.0, len0);
  };

  std::vector<Tile> out;
  std::vector<Complex> centres;
  TileIndex index(ax.frame);
  std::deque<Tile> queue;
  index.find_or_insert(x0, centres);
  queue.push_back(Tile{GroupWord{rep_.genus(), {}}, Isometry(), x0});
  const int ng = 2 * rep_.genus();
  while (!queue.empty()) {
    Tile t = std::move(queue.front());
    queue.pop_front();
    if (dist_to_range(ax.frame.apply(t.centre), lo, hi) <= R) out.push_back(t);
    for (int g = 1; g <= ng; ++g) {
      for (int x : {g, -g}) {
        Isometry M = t.matrix * rep_.letter(x);
        Complex z = M.apply(x0);
        double d = std::min(dist_to_range(ax.frame.apply(z), lo, hi), dist_connector(z));
        if (d > R) continue;
        if (index.find_or_insert(z, centres)) continue;
        GroupWord w = t.word;
        w.letters.push_back(x);
        queue.push_back(Tile{free_reduce(rep_.genus(), w.letters), M, z});
      }
    }
  }
  return out;
}

const std::vector<Tile>& LiftEngine::chart_tiles(const GroupWord& w, std::size_t j, int k) {
  const std::vector<AxisChart>& cs = charts(w);
  if (j >= cs.size()) throw Error(ErrorKind::InvalidArgument, "chart index out of range");
  std::lock_guard lock(mu_);
  auto key = std::make_tuple(w.letters, j, k);
  auto it = tiles_.find(key);
  if (it == tiles_.end()) {
    const AxisChart& ch = cs[j];
    it = tiles_.emplace(key, search_tiles(ch.axis, std::min(0.0, ch.step),
                                          std::max(0.0, ch.step), radius(k)))
             .first;
  }
  return it->second;
}

const std::vector<Lift>& LiftEngine::base_lifts(const GroupWord& w) {
  const std::vector<AxisChart>& cs = charts(w);
  const double ell = axis(w).length;
  std::vector<std::vector<Tile>> per_chart;
  for (std::size_t j = 0; j < cs.size(); ++j) per_chart.push_back(chart_tiles(w, j, 0));
  std::lock_guard lock(mu_);
  auto it = lifts_.find(w.letters);
  if (it != lifts_.end()) return it->second;

  const Complex x0 = rep_.basepoint();
  // Frame centred at x0 for endpoint comparison.
  Isometry centre(1.0 / std::sqrt(x0.imag()), -x0.real() / std::sqrt(x0.imag()), 0.0,
                  std::sqrt(x0.imag()));
  std::vector<Lift> lifts;
  std::vector<AxisPair> local;
  // A tile u of chart j gives the lift u⁻¹·axis(w_j) = (u⁻¹·p_j⁻¹)·axis(w).
  for (std::size_t j = 0; j < cs.size(); ++j) {
    const GroupWord pinv = inverse(cs[j].prefix);
    for (const Tile& u : per_chart[j]) {
      AxisPair pair = u.matrix.inverse().apply(cs[j].axis.axis);
      AxisPair loc = centre.apply(pair);
      GroupWord g = dehn_reduce(concat(inverse(u.word), pinv));
      bool dup = false;
      for (std::size_t i = 0; i < local.size() && !dup; ++i)
        dup = hypgeo::chordal(local[i].attracting, loc.attracting) < kOrbitFilter &&
              hypgeo::chordal(local[i].repelling, loc.repelling) < kOrbitFilter &&
              in_power_group(rep_, concat(inverse(lifts[i].conjugator), g), w, ell);
      if (dup) continue;
      local.push_back(loc);
      lifts.push_back(Lift{std::move(g), pair});
    }
  }
  return lifts_.emplace(w.letters, std::move(lifts)).first->second;
}

double crossing_separation(const Crossing& a, const Crossing& b, double ell) {
  double d = b.param - a.param;
  double align = d > 0.5 * ell ? -ell : (d < -0.5 * ell ? ell : 0.0);
  double sa = std::exp(-a.param), sb = std::exp(align - a.param);
  auto ch = [](double x, double y) {
    return hypgeo::chordal(BoundaryPoint::finite(x), BoundaryPoint::finite(y));
  };
  return std::max(ch(a.frame_attracting * sa, b.frame_attracting * sb),
                  ch(a.frame_repelling * sa, b.frame_repelling * sb));
}

bool LiftEngine::same_orbit(const GroupWord& h, const GroupWord& c, const Crossing& a,
                            const Crossing& b) {
  const double ell = axis(c).length;
  if (crossing_separation(a, b, ell) > kOrbitFilter) return false;
  double d = b.param - a.param;
  int e = d > 0.5 * ell ? -1 : (d < -0.5 * ell ? 1 : 0);
  GroupWord x = concat(inverse(a.conjugator), concat(power(c, e), b.conjugator));
  return in_power_group(rep_, x, h, axis(h).length);
}

std::vector<Crossing> LiftEngine::crossings(const GroupWord& h, const GroupWord& c, int k,
                                            TileStats* stats) {
  const ClassAxis& C = axis(c);
  const std::vector<AxisChart>& cs = charts(c);
  const std::vector<Lift>& lifts = base_lifts(h);
  const double ell = C.length;

  struct Cand {
    Crossing cr;  // conjugator filled in for survivors only
    int shift;
    std::size_t chart;
    int tile, lift;
  };
  std::vector<Cand> cands;
  // Endpoints as homogeneous pairs so ∞ needs no special case.
  std::vector<std::array<double, 4>> ends;
  for (const auto& L : lifts) {
    auto hom = [](const BoundaryPoint& p) {
      return p.is_infinite() ? std::array<double, 2>{1.0, 0.0} : std::array<double, 2>{p.value(), 1.0};
    };
    auto a = hom(L.pair.attracting), r = hom(L.pair.repelling);
    ends.push_back({a[0], a[1], r[0], r[1]});
  }
  std::vector<const std::vector<Tile>*> tiles;
  std::size_t ntiles = 0;
  for (std::size_t j = 0; j < cs.size(); ++j) {
    tiles.push_back(&chart_tiles(c, j, k));
    ntiles += tiles.back()->size();
  }
  for (std::size_t j = 0; j < cs.size(); ++j) {
    const double sig = cs[j].offset;
    for (std::size_t ti = 0; ti < tiles[j]->size(); ++ti) {
      Isometry G = cs[j].axis.frame * (*tiles[j])[ti].matrix;
      for (std::size_t li = 0; li < lifts.size(); ++li) {
        const auto& e = ends[li];
        double xn = G.a() * e[0] + G.b() * e[1], xd = G.c() * e[0] + G.d() * e[1];
        double yn = G.a() * e[2] + G.b() * e[3], yd = G.c() * e[2] + G.d() * e[3];
        // Linked with the imaginary axis iff the frame endpoints have opposite signs.
        double sx = xn * xd, sy = yn * yd;
        if (sx * sy >= 0.0) continue;
        double x = xn / xd, y = yn / yd;
        double ratio = std::min(std::abs(x), std::abs(y)) / std::max(std::abs(x), std::abs(y));
        if (!(ratio > 1e-9)) continue;  // shares the axis of c
        double s = sig + 0.5 * std::log(-x * y);
        int shift = static_cast<int>(std::floor(s / ell));
        double sm = s - shift * ell;
        if (sm >= ell - 1e-9) {
          sm -= ell;
          ++shift;
        }
        if (sm < 0.0) sm = 0.0;
        double scale = std::exp(sig - shift * ell);
        cands.push_back(Cand{Crossing{GroupWord{}, hypgeo::AxisPair{BoundaryPoint::infinity(),
                                                                   BoundaryPoint::finite(0.0)},
                                      sm, x * scale, y * scale},
                             shift, j, static_cast<int>(ti), static_cast<int>(li)});
      }
    }
  }
  if (stats) {
    stats->tiles = ntiles;
    stats->lifts = lifts.size();
    stats->candidates = cands.size();
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& p, const Cand& q) {
    if (p.cr.param != q.cr.param) return p.cr.param < q.cr.param;
    if (p.chart != q.chart) return p.chart < q.chart;
    if (p.tile != q.tile) return p.tile < q.tile;
    return p.lift < q.lift;
  });
  auto conjugator_of = [&](const Cand& p) {
    return dehn_reduce(concat(
        power(c, -p.shift),
        concat(cs[p.chart].prefix,
               concat((*tiles[p.chart])[p.tile].word, lifts[p.lift].conjugator))));
  };
  auto same = [&](const Cand& p, const Cand& q) {
    Crossing a = p.cr, b = q.cr;
    a.conjugator = conjugator_of(p);
    b.conjugator = conjugator_of(q);
    return same_orbit(h, c, a, b);
  };

  std::vector<const Cand*> kept;
  for (const Cand& cand : cands) {
    bool dup = false;
    for (auto it = kept.rbegin(); it != kept.rend(); ++it) {
      if (cand.cr.param - (*it)->cr.param >= kParamWindow) break;
      if (same(cand, **it)) {
        dup = true;
        break;
      }
    }
    if (!dup) kept.push_back(&cand);
  }
  // Orbits straddling parameter 0 appear at both ends of the sorted list.
  std::vector<bool> drop(kept.size(), false);
  for (std::size_t i = kept.size(); i-- > 0;) {
    if (ell - kept[i]->cr.param >= kParamWindow) break;
    for (std::size_t j = 0; j < i && kept[j]->cr.param < kParamWindow; ++j)
      if (!drop[j] && same(*kept[i], *kept[j])) {
        drop[i] = true;
        break;
      }
  }

  std::vector<Crossing> out;
  const Isometry Finv = C.frame.inverse();
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (drop[i]) continue;
    const Cand& p = *kept[i];
    Crossing cr = p.cr;
    cr.pair = {Finv.apply(BoundaryPoint::finite(cr.frame_attracting)),
               Finv.apply(BoundaryPoint::finite(cr.frame_repelling))};
    cr.conjugator = conjugator_of(p);
    out.push_back(std::move(cr));
  }
  return out;
}

}  // namespace sageev

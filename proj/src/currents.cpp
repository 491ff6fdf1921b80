#include "sageev/currents.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "sageev/error.hpp"
#include "parallel.hpp"

namespace sageev {

bool WeightedCurrent::is_discrete() const {
  return std::all_of(atoms.begin(), atoms.end(), [](const Atom& a) { return a.weight == Rational(1); });
}

WeightedCurrent make_current(int genus, const std::vector<std::pair<GroupWord, Rational>>& terms) {
  WeightedCurrent cur;
  cur.genus = genus;
  for (const auto& [w, weight] : terms) {
    if (w.genus != genus)
      throw Error(ErrorKind::InvalidArgument, "current atoms must share the current's genus");
    if (weight <= Rational(0))
      throw Error(ErrorKind::InvalidArgument,
                  fmt::format("weight of '{}' must be positive", format_word(w)));
    ConjugacyClass c = cyclic_canonical(w);
    ConjugacyClass root = cyclic_canonical(c.root);
    Rational scaled = weight * Rational(c.power);
    auto it = std::find_if(cur.atoms.begin(), cur.atoms.end(),
                           [&](const Atom& a) { return a.cls == root; });
    if (it == cur.atoms.end()) {
      cur.atoms.push_back({root, scaled});
    } else {
      it->weight += scaled;
    }
  }
  std::sort(cur.atoms.begin(), cur.atoms.end(),
            [](const Atom& x, const Atom& y) { return class_less(x.cls, y.cls); });
  return cur;
}

WeightedCurrent rational_current(const ConjugacyClass& c) {
  return make_current(c.genus(), {{c.canonical, Rational(1)}});
}

LinkingCount count_at_level(const WeightedCurrent& alpha, const GroupWord& c, LiftEngine& engine,
                            int k) {
  if (c.empty()) throw Error(ErrorKind::IdentityClass, "intersection with the trivial class");
  LinkingCount out;
  out.level = k;
  out.radius_used = engine.radius(k);
  for (std::size_t i = 0; i < alpha.atoms.size(); ++i) {
    auto cr = engine.crossings(alpha.atoms[i].cls.canonical, c, k);
    out.value += alpha.atoms[i].weight * Rational(static_cast<std::int64_t>(cr.size()));
    for (auto& x : cr)
      out.witnesses.push_back(
          {i, std::move(x.conjugator), x.pair, x.param, x.frame_attracting, x.frame_repelling});
  }
  out.period = engine.axis(c).length;
  return out;
}

bool same_witnesses(const WeightedCurrent& alpha, const GroupWord& c, LiftEngine& engine,
                    const LinkingCount& x, const LinkingCount& y) {
  if (x.value != y.value || x.witnesses.size() != y.witnesses.size()) return false;
  auto as_crossing = [](const Witness& w) {
    return Crossing{w.conjugator, w.pair, w.crossing, w.frame_attracting, w.frame_repelling};
  };
  // Crossings with nearly equal parameters may come out in either order, so
  // match each witness against any unused one of the same atom.
  std::vector<bool> used(y.witnesses.size(), false);
  for (const auto& p : x.witnesses) {
    bool found = false;
    for (std::size_t j = 0; j < y.witnesses.size() && !found; ++j) {
      const auto& q = y.witnesses[j];
      if (used[j] || p.atom != q.atom) continue;
      if (engine.same_orbit(alpha.atoms[p.atom].cls.canonical, c, as_crossing(p),
                            as_crossing(q))) {
        used[j] = true;
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

LinkingCount intersection_number_word(const WeightedCurrent& alpha, const GroupWord& c,
                                      LiftEngine& engine, const IntersectionOptions& opts) {
  LinkingCount prev = count_at_level(alpha, c, engine, 0);
  for (int k = 1; k <= opts.doublings_cap; ++k) {
    LinkingCount cur = count_at_level(alpha, c, engine, k);
    if (same_witnesses(alpha, c, engine, prev, cur)) {
      cur.stabilized = true;
      return cur;
    }
    prev = std::move(cur);
  }
  prev.stabilized = false;
  return prev;
}

LinkingCount intersection_number(const WeightedCurrent& alpha, const ConjugacyClass& c,
                                 LiftEngine& engine, const IntersectionOptions& opts) {
  return intersection_number_word(alpha, c.canonical, engine, opts);
}

double pair_with_hyperbolic(const ConjugacyClass& c, const FuchsianRep& rep) {
  return hypgeo::translation_length(evaluate(rep, c.canonical));
}

FillingReport weakly_filling_up_to(const WeightedCurrent& alpha, int L, LiftEngine& engine,
                                   const IntersectionOptions& opts) {
  if (L < 1) throw Error(ErrorKind::InvalidArgument, "filling check needs L >= 1");
  FillingReport rep;
  const auto classes = enumerate_classes(alpha.genus, L, opts.class_budget);
  std::vector<LinkingCount> counts(classes.size());
  detail::parallel_for(classes.size(), opts.threads, [&](std::size_t i) {
    counts[i] = intersection_number(alpha, classes[i], engine, opts);
  });
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& c = classes[i];
    const LinkingCount& n = counts[i];
    if (!n.stabilized) {
      rep.unstabilized.push_back(c);
      rep.ok = false;
    } else if (n.value <= Rational(0)) {
      rep.failures.push_back(c);
      rep.ok = false;
    }
  }
  return rep;
}

std::int64_t self_intersection(const ConjugacyClass& c, LiftEngine& engine,
                               const IntersectionOptions& opts) {
  ConjugacyClass root = cyclic_canonical(c.root);
  LinkingCount n = intersection_number(rational_current(root), root, engine, opts);
  if (!n.stabilized)
    throw Error(ErrorKind::NotStabilized,
                fmt::format("self-intersection of '{}' did not stabilize", format_word(c.canonical)));
  return boost::rational_cast<std::int64_t>(n.value) * c.power * c.power;
}

}  // namespace sageev

#pragma once

#include <cstdint>
#include <vector>

#include <boost/rational.hpp>

#include "sageev/fuchsian.hpp"
#include "sageev/lifts.hpp"
#include "sageev/words.hpp"

namespace sageev {

// Compare Rationals only with Rationals: under C++20 rewritten comparisons the
// mixed rational/integer operators of boost 1.74 recurse forever.
using Rational = boost::rational<std::int64_t>;

struct Atom {
  ConjugacyClass cls;  // primitive
  Rational weight;     // > 0
};

// Finite positive combination of rational currents η_[h] over distinct
// primitive classes.
struct WeightedCurrent {
  int genus = 2;
  std::vector<Atom> atoms;  // sorted by class_less

  bool is_discrete() const;
};

// Canonicalises each word; an imprimitive h = r^k contributes k·η_[r].
// Repeated classes have their weights added.
WeightedCurrent make_current(int genus, const std::vector<std::pair<GroupWord, Rational>>& terms);
WeightedCurrent rational_current(const ConjugacyClass& c);

struct Witness {
  std::size_t atom = 0;
  GroupWord conjugator;
  hypgeo::AxisPair pair{hypgeo::BoundaryPoint::infinity(), hypgeo::BoundaryPoint::finite(0.0)};
  double crossing = 0.0;
  double frame_attracting = 0.0;  // endpoints in the frame of axis(c)
  double frame_repelling = 0.0;
};

struct LinkingCount {
  Rational value{0};
  bool stabilized = false;
  double radius_used = 0.0;
  int level = 0;  // index k of the radius schedule D + m0·2^k
  double period = 0.0;  // ℓ(c)
  std::vector<Witness> witnesses;
};

struct IntersectionOptions {
  int doublings_cap = 4;
  std::size_t class_budget = kDefaultClassBudget;  // for loops over enumerate_classes
  int threads = 1;                                 // workers for those loops
};

// Witnesses at one radius level, for an arbitrary word representing c.
LinkingCount count_at_level(const WeightedCurrent& alpha, const GroupWord& c, LiftEngine& engine,
                            int k);

// Same value and the same crossing orbits, matched per atom.
bool same_witnesses(const WeightedCurrent& alpha, const GroupWord& c, LiftEngine& engine,
                    const LinkingCount& x, const LinkingCount& y);

// Grows the radius until two consecutive levels agree. On hitting the cap the
// last count is returned with stabilized = false.
LinkingCount intersection_number(const WeightedCurrent& alpha, const ConjugacyClass& c,
                                 LiftEngine& engine, const IntersectionOptions& opts = {});
LinkingCount intersection_number_word(const WeightedCurrent& alpha, const GroupWord& c,
                                      LiftEngine& engine, const IntersectionOptions& opts = {});

double pair_with_hyperbolic(const ConjugacyClass& c, const FuchsianRep& rep);

struct FillingReport {
  bool ok = true;
  std::vector<ConjugacyClass> failures;      // stabilized zero counts
  std::vector<ConjugacyClass> unstabilized;  // counts that never settled
};

FillingReport weakly_filling_up_to(const WeightedCurrent& alpha, int L, LiftEngine& engine,
                                   const IntersectionOptions& opts = {});

// intersection_number(η_[root], root) · power². Throws NotStabilized.
std::int64_t self_intersection(const ConjugacyClass& c, LiftEngine& engine,
                               const IntersectionOptions& opts = {});

}  // namespace sageev

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sageev/currents.hpp"

namespace sageev {

struct LengthSpectrum {
  std::string label;  // "hyperbolic" or "cubical:<hash>"
  int L = 0;
  std::vector<ConjugacyClass> classes;  // enumerate_classes order
  std::vector<double> values;
  std::vector<ConjugacyClass> unstabilized;  // cubical only
};

LengthSpectrum hyperbolic_spectrum(const FuchsianRep& rep, int L,
                                   std::size_t budget = kDefaultClassBudget);
// Throws NotStabilized listing the offending classes.
LengthSpectrum cubical_spectrum(const WeightedCurrent& alpha, LiftEngine& engine, int L,
                                const IntersectionOptions& opts = {});

LengthSpectrum scaled(const LengthSpectrum& s, double t);

// Stable text form of a current and its FNV-1a hash.
std::string current_key(const WeightedCurrent& alpha);
std::string current_hash(const WeightedCurrent& alpha);

struct RatioWitness {
  double value = 0.0;
  std::optional<ConjugacyClass> cls;
};

struct MetricComparison {
  int L = 0;
  bool infinite = false;
  double exp_delta = 1.0;      // sup(s1/s2) · sup(s2/s1); +inf when infinite
  RatioWitness forward;        // sup s1/s2
  RatioWitness backward;       // sup s2/s1
  std::vector<ConjugacyClass> infinite_witnesses;  // classes with exactly one zero entry
};

// Throws MismatchedClassSets unless both spectra cover the same classes in the
// same order.
MetricComparison delta_estimate(const LengthSpectrum& s1, const LengthSpectrum& s2);

struct ExperimentRow {
  std::size_t index = 0;
  WeightedCurrent current;
  FillingReport filling;
  std::optional<MetricComparison> comparison;
  bool stabilized_all = false;
  std::string error;  // non-empty if the row failed
};

std::vector<ExperimentRow> approximation_experiment(const FuchsianRep& rep, LiftEngine& engine,
                                                    const std::vector<WeightedCurrent>& sequence,
                                                    int L, const IntersectionOptions& opts = {});

struct BuiltinSequenceOptions {
  int count = 5;
  int length_step = 4;  // row m uses words of length length_step·m
  int filling_level = 4;
  std::uint64_t seed = 20240611;
  int max_attempts = 400;
};

// Seeded single-atom currents η_[g_m]: g_m is a random cyclically reduced,
// Dehn-reduced primitive word accepted once weakly filling up to the level.
std::vector<WeightedCurrent> builtin_sequence(const FuchsianRep& rep, LiftEngine& engine,
                                              const BuiltinSequenceOptions& opts = {},
                                              const IntersectionOptions& iopts = {});

struct DiscretenessReport {
  std::size_t pairs_tested = 0;
  // Entry pairs (i, j) whose ratio has no p/q within 1e-6 with q <= 20.
  std::vector<std::pair<std::size_t, std::size_t>> witnesses;
};

// Needs at least three positive entries.
DiscretenessReport nondiscreteness_check(const LengthSpectrum& s);

}  // namespace sageev

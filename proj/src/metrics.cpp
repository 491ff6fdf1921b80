#include "sageev/metrics.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <fmt/format.h>

#include "sageev/error.hpp"
#include "parallel.hpp"

namespace sageev {

LengthSpectrum hyperbolic_spectrum(const FuchsianRep& rep, int L, std::size_t budget) {
  LengthSpectrum s;
  s.label = "hyperbolic";
  s.L = L;
  s.classes = enumerate_classes(rep.genus(), L, budget);
  for (const auto& c : s.classes) s.values.push_back(pair_with_hyperbolic(c, rep));
  return s;
}

LengthSpectrum cubical_spectrum(const WeightedCurrent& alpha, LiftEngine& engine, int L,
                                const IntersectionOptions& opts) {
  LengthSpectrum s;
  s.label = "cubical:" + current_hash(alpha);
  s.L = L;
  s.classes = enumerate_classes(alpha.genus, L, opts.class_budget);
  std::vector<LinkingCount> counts(s.classes.size());
  detail::parallel_for(s.classes.size(), opts.threads, [&](std::size_t i) {
    counts[i] = intersection_number(alpha, s.classes[i], engine, opts);
  });
  for (std::size_t i = 0; i < s.classes.size(); ++i) {
    if (!counts[i].stabilized) s.unstabilized.push_back(s.classes[i]);
    s.values.push_back(boost::rational_cast<double>(counts[i].value));
  }
  if (!s.unstabilized.empty()) {
    std::string list;
    for (const auto& c : s.unstabilized) list += (list.empty() ? "" : ", ") + format_word(c.canonical);
    throw Error(ErrorKind::NotStabilized, "counts did not stabilize for: " + list);
  }
  return s;
}

LengthSpectrum scaled(const LengthSpectrum& s, double t) {
  LengthSpectrum out = s;
  for (double& v : out.values) v *= t;
  return out;
}

std::string current_key(const WeightedCurrent& alpha) {
  std::string key = fmt::format("g{}", alpha.genus);
  for (const auto& a : alpha.atoms)
    key += fmt::format(";{}*{}/{}", format_word(a.cls.canonical), a.weight.numerator(),
                       a.weight.denominator());
  return key;
}

std::string current_hash(const WeightedCurrent& alpha) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : current_key(alpha)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

MetricComparison delta_estimate(const LengthSpectrum& s1, const LengthSpectrum& s2) {
  if (s1.classes.size() != s2.classes.size() || s1.L != s2.L)
    throw Error(ErrorKind::MismatchedClassSets, "spectra cover different class sets");
  for (std::size_t i = 0; i < s1.classes.size(); ++i)
    if (!(s1.classes[i] == s2.classes[i]))
      throw Error(ErrorKind::MismatchedClassSets,
                  fmt::format("class {} differs between spectra", i));
  MetricComparison m;
  m.L = s1.L;
  for (std::size_t i = 0; i < s1.classes.size(); ++i) {
    double a = s1.values[i], b = s2.values[i];
    if (a == 0.0 && b == 0.0) continue;
    if (a == 0.0 || b == 0.0) {
      m.infinite = true;
      m.infinite_witnesses.push_back(s1.classes[i]);
      continue;
    }
    if (!m.forward.cls || a / b > m.forward.value) m.forward = {a / b, s1.classes[i]};
    if (!m.backward.cls || b / a > m.backward.value) m.backward = {b / a, s1.classes[i]};
  }
  m.exp_delta = m.infinite ? std::numeric_limits<double>::infinity()
                           : m.forward.value * m.backward.value;
  return m;
}

std::vector<ExperimentRow> approximation_experiment(const FuchsianRep& rep, LiftEngine& engine,
                                                    const std::vector<WeightedCurrent>& sequence,
                                                    int L, const IntersectionOptions& opts) {
  if (L < 2) throw Error(ErrorKind::InvalidArgument, "experiment needs L >= 2");
  std::vector<ExperimentRow> rows;
  if (sequence.empty()) return rows;
  LengthSpectrum hyp = hyperbolic_spectrum(rep, L, opts.class_budget);
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    ExperimentRow row;
    row.index = i;
    row.current = sequence[i];
    try {
      if (!row.current.is_discrete())
        throw Error(ErrorKind::NotDiscrete, "experiment rows need unit weights");
      row.filling = weakly_filling_up_to(row.current, L, engine, opts);
      row.stabilized_all = row.filling.unstabilized.empty();
      LengthSpectrum cub = cubical_spectrum(row.current, engine, L, opts);
      row.comparison = delta_estimate(cub, hyp);
    } catch (const Error& e) {
      row.error = fmt::format("{}: {}", to_string(e.kind()), e.what());
      if (e.kind() == ErrorKind::NotStabilized) row.stabilized_all = false;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<WeightedCurrent> builtin_sequence(const FuchsianRep& rep, LiftEngine& engine,
                                              const BuiltinSequenceOptions& opts,
                                              const IntersectionOptions& iopts) {
  const int genus = rep.genus();
  const int nletters = 4 * genus;
  std::mt19937_64 rng(opts.seed);
  auto draw = [&] {
    int idx = static_cast<int>(rng() % static_cast<std::uint64_t>(nletters));
    int gen = idx / 2 + 1;
    return idx % 2 ? -gen : gen;
  };
  std::vector<WeightedCurrent> out;
  for (int m = 1; m <= opts.count; ++m) {
    const int n = opts.length_step * m;
    bool found = false;
    for (int attempt = 0; attempt < opts.max_attempts && !found; ++attempt) {
      std::vector<int> w;
      while (static_cast<int>(w.size()) < n) {
        int x = draw();
        if (!w.empty() && x == -w.back()) continue;
        if (static_cast<int>(w.size()) == n - 1 && n > 1 && x == -w.front()) continue;
        w.push_back(x);
      }
      GroupWord word{genus, w};
      if (!(dehn_reduce(word) == word)) continue;
      if (static_cast<int>(cyclic_dehn_reduce(word).size()) != n) continue;
      ConjugacyClass c = cyclic_canonical(word);
      if (c.power != 1) continue;
      WeightedCurrent cur = rational_current(c);
      if (!weakly_filling_up_to(cur, opts.filling_level, engine, iopts).ok) continue;
      out.push_back(std::move(cur));
      found = true;
    }
    if (!found)
      throw Error(ErrorKind::BudgetExceeded,
                  fmt::format("no filling word of length {} within {} attempts", n,
                              opts.max_attempts));
  }
  return out;
}

DiscretenessReport nondiscreteness_check(const LengthSpectrum& s) {
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < s.values.size(); ++i)
    if (s.values[i] > 0.0) pos.push_back(i);
  if (pos.size() < 3)
    throw Error(ErrorKind::InvalidArgument, "discreteness check needs three positive entries");
  DiscretenessReport rep;
  for (std::size_t a = 0; a < pos.size(); ++a)
    for (std::size_t b = a + 1; b < pos.size(); ++b) {
      double r = s.values[pos[a]] / s.values[pos[b]];
      bool rational = false;
      for (int q = 1; q <= 20 && !rational; ++q)
        rational = std::abs(r - std::round(r * q) / q) <= 1e-6;
      ++rep.pairs_tested;
      if (!rational) rep.witnesses.emplace_back(pos[a], pos[b]);
    }
  return rep;
}

}  // namespace sageev

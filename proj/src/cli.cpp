#include "sageev/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "sageev/io.hpp"

namespace sageev::cli {

namespace {

using io::Json;

struct Session {
  RunConfig cfg;
  FuchsianRep rep;
  LiftEngine engine;
  IntersectionOptions opts;

  explicit Session(const RunConfig& c)
      : cfg(c), rep(make_rep(c)), engine(rep, margin(c)), opts{c.doublings_cap, c.class_budget, c.threads} {}

  static FuchsianRep make_rep(const RunConfig& c) {
    if (c.matrices.empty()) return standard_rep(c.genus);
    auto images = io::parse_matrices(io::read_file(c.matrices));
    if (static_cast<int>(images.size()) != 2 * c.genus)
      throw Error(ErrorKind::InvalidArgument,
                  fmt::format("matrix file has {} generators, genus {} needs {}", images.size(),
                              c.genus, 2 * c.genus));
    return from_matrices(c.genus, std::move(images));
  }

  static double margin(const RunConfig& c) {
    auto it = c.tolerances.find("radius_margin");
    return it == c.tolerances.end() ? 0.25 : it->second;
  }

  WeightedCurrent current(const std::string& path) const {
    WeightedCurrent a = io::parse_current(io::read_file(path), cfg.genus);
    if (a.genus != cfg.genus)
      throw Error(ErrorKind::InvalidArgument,
                  fmt::format("current has genus {}, run uses genus {}", a.genus, cfg.genus));
    return a;
  }
};

std::string resolve_output(const std::string& path) {
  const char* dir = std::getenv("SAGEEV_OUTPUT_DIR");
  std::filesystem::path p(path);
  if (dir && *dir && p.is_relative()) return (std::filesystem::path(dir) / p).string();
  return path;
}

void validate(const RunConfig& c) {
  if (c.genus < 2) throw Error(ErrorKind::InvalidArgument, "genus must be at least 2");
  if (c.doublings_cap < 1) throw Error(ErrorKind::InvalidArgument, "doublings cap must be positive");
  if (c.class_budget < 1) throw Error(ErrorKind::InvalidArgument, "class budget must be positive");
  if (c.threads < 1) throw Error(ErrorKind::InvalidArgument, "threads must be positive");
  for (const auto& [k, v] : c.tolerances) {
    if (k != "radius_margin") throw Error(ErrorKind::InvalidArgument, "unknown tolerance '" + k + "'");
    if (!(v > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance '" + k + "' must be positive");
  }
}

}  // namespace

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return 3;
    case ErrorKind::IoError: return 4;
    case ErrorKind::BadLetter: return 5;
    case ErrorKind::InvalidArgument: return 6;
    case ErrorKind::IdentityClass: return 7;
    case ErrorKind::NotHyperbolic: return 8;
    case ErrorKind::RelatorCheckFailed: return 9;
    case ErrorKind::PolygonCheckFailed: return 10;
    case ErrorKind::NotStabilized: return 11;
    case ErrorKind::NotDiscrete: return 12;
    case ErrorKind::AmbiguousAxes: return 13;
    case ErrorKind::InconsistentWalls: return 14;
    case ErrorKind::BudgetExceeded: return 15;
    case ErrorKind::FragmentTooLarge: return 16;
    case ErrorKind::MismatchedClassSets: return 17;
    case ErrorKind::VertexNotInFragment: return 18;
    case ErrorKind::NotLinked: return 19;
  }
  return kInternal;
}

void load_config(const std::string& path, RunConfig& cfg) {
  std::string text = io::read_file(path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, fmt::format("{}: malformed JSON at byte {}", path, e.byte));
  }
  if (!j.is_object()) throw Error(ErrorKind::ParseError, path + ": config must be an object");
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& k = it.key();
      if (k == "genus") cfg.genus = it->get<int>();
      else if (k == "doublings_cap") cfg.doublings_cap = it->get<int>();
      else if (k == "class_budget") cfg.class_budget = it->get<std::size_t>();
      else if (k == "seed") cfg.seed = it->get<std::uint64_t>();
      else if (k == "matrices") cfg.matrices = it->get<std::string>();
      else if (k == "threads") cfg.threads = it->get<int>();
      else if (k == "tolerances") {
        for (auto t = it->begin(); t != it->end(); ++t) cfg.tolerances[t.key()] = t->get<double>();
      } else {
        throw Error(ErrorKind::ParseError, fmt::format("{}: unknown key '{}'", path, k));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, fmt::format("{}: {}", path, e.what()));
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cubulations of closed surface groups dual to geodesic currents", "sageev"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_path;
  int genus = 0, doublings = 0, threads = 0;
  std::size_t budget = 0;
  std::uint64_t seed = 0;
  std::string matrices;
  std::vector<std::string> tols;
  auto* o_genus = app.add_option("--genus,-g", genus, "Surface genus (default 2)");
  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  auto* o_mat = app.add_option("--matrices", matrices, "Generator images a1 b1 a2 b2 ... as 2x2 blocks");
  auto* o_dbl = app.add_option("--doublings-cap", doublings, "Radius doublings before giving up");
  auto* o_bud = app.add_option("--class-budget", budget, "Max classes enumerated");
  auto* o_seed = app.add_option("--seed", seed, "Seed for the built-in sequence");
  auto* o_thr = app.add_option("--threads", threads, "Worker threads");
  app.add_option("--tol", tols, "Tolerance override name=value (radius_margin)");
  app.add_option("--out,-o", out_path, "Write output here instead of stdout");

  std::string word, current, sequence, csv_path, format = "json";
  int length = 0, periods = 2, L = 4;
  std::size_t vertex_cap = kDefaultVertexCap;
  bool builtin = false;

  auto* rep_cmd = app.add_subcommand("rep", "Print the representation and its fundamental polygon");
  auto* classes_cmd = app.add_subcommand("classes", "List primitive and imprimitive classes up to a length");
  classes_cmd->add_option("--length,-L", length, "Maximal word length")->required();
  auto* length_cmd = app.add_subcommand("length", "Translation length, and cubical length for a current");
  length_cmd->add_option("--word,-w", word, "Word such as \"a1 b1\"")->required();
  length_cmd->add_option("--current,-c", current, "Current spec JSON");
  auto* inter_cmd = app.add_subcommand("intersect", "Intersection number of a current with a class");
  inter_cmd->add_option("--current,-c", current, "Current spec JSON")->required();
  inter_cmd->add_option("--word,-w", word, "Class representative")->required();
  auto* cub_cmd = app.add_subcommand("cubulate", "Export the cube-complex fragment along a window");
  cub_cmd->add_option("--current,-c", current, "Current spec JSON (unit weights)")->required();
  cub_cmd->add_option("--word,-w", word, "Window axis class")->required();
  cub_cmd->add_option("--periods,-N", periods, "Window length in periods")->capture_default_str();
  cub_cmd->add_option("--vertex-cap", vertex_cap, "Fragment vertex limit")->capture_default_str();
  auto* dual_cmd = app.add_subcommand("duality", "Compare wall separation with N times the intersection number");
  dual_cmd->add_option("--current,-c", current, "Current spec JSON (unit weights)")->required();
  dual_cmd->add_option("--word,-w", word, "Primitive class")->required();
  dual_cmd->add_option("--periods,-N", periods, "Translation power N >= 2")->capture_default_str();
  auto* approx_cmd = app.add_subcommand("approx", "Approximation experiment against the hyperbolic spectrum");
  auto* o_seq = approx_cmd->add_option("--sequence,-s", sequence, "Sequence file (JSON array of currents)");
  auto* o_bi = approx_cmd->add_flag("--builtin", builtin, "Use the seeded built-in sequence");
  o_seq->excludes(o_bi);
  approx_cmd->add_option("-L", L, "Class length cutoff")->capture_default_str();
  approx_cmd->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  approx_cmd->add_option("--csv", csv_path, "Also write the CSV table here");
  auto* spec_cmd = app.add_subcommand("spectrum", "Length spectrum up to a word length");
  spec_cmd->add_option("-L", L, "Class length cutoff")->required();
  spec_cmd->add_option("--current,-c", current, "Cubical spectrum of this current");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) load_config(config_path, cfg);
    if (o_genus->count()) cfg.genus = genus;
    if (o_mat->count()) cfg.matrices = matrices;
    if (o_dbl->count()) cfg.doublings_cap = doublings;
    if (o_bud->count()) cfg.class_budget = budget;
    if (o_seed->count()) cfg.seed = seed;
    if (o_thr->count()) cfg.threads = threads;
    for (const auto& t : tols) {
      auto eq = t.find('=');
      if (eq == std::string::npos)
        throw Error(ErrorKind::InvalidArgument, "--tol expects name=value, got '" + t + "'");
      try {
        cfg.tolerances[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
      } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidArgument, "bad tolerance value in '" + t + "'");
      }
    }
    validate(cfg);

    Session s(cfg);
    std::string result;
    int code = kOk;

    if (*rep_cmd) {
      result = io::dump(io::to_json(s.rep));
    } else if (*classes_cmd) {
      auto cls = enumerate_classes(cfg.genus, length, cfg.class_budget);
      result = io::dump(Json{{"genus", cfg.genus},
                             {"max_length", length},
                             {"count", cls.size()},
                             {"classes", io::to_json(cls)}});
    } else if (*length_cmd) {
      ConjugacyClass c = cyclic_canonical(parse_word(cfg.genus, word));
      hypgeo::Isometry M = evaluate(s.rep, c.canonical);
      Json j{{"class", format_word(c.canonical)},
             {"trace", M.trace()},
             {"translation_length", hypgeo::translation_length(M)}};
      if (!current.empty()) {
        WeightedCurrent a = s.current(current);
        j["current"] = io::to_json(a);
        j["cubical_length"] = io::format_rational(cubical_length(a, c, s.engine, s.opts));
      }
      result = io::dump(j);
    } else if (*inter_cmd) {
      WeightedCurrent a = s.current(current);
      GroupWord c = cyclic_canonical(parse_word(cfg.genus, word)).canonical;
      LinkingCount n = intersection_number_word(a, c, s.engine, s.opts);
      result = io::dump(io::to_json(n, a, c));
      if (!n.stabilized) code = exit_code(ErrorKind::NotStabilized);
    } else if (*cub_cmd) {
      WeightedCurrent a = s.current(current);
      ConjugacyClass c = cyclic_canonical(parse_word(cfg.genus, word));
      WallSet ws = build_wall_set(a, c, periods, s.engine, s.opts);
      CubeFragment f = sageev_fragment(ws, s.rep, vertex_cap);
      Json j = io::to_json(f, ws);
      CubeDimension dim = max_cube_dimension(f);
      j["partial_cube"] = is_partial_cube(f);
      j["max_cube_dimension"] = {{"dimension", dim.dimension}, {"exact", dim.exact}};
      result = io::dump(j);
    } else if (*dual_cmd) {
      WeightedCurrent a = s.current(current);
      ConjugacyClass c = cyclic_canonical(parse_word(cfg.genus, word));
      DualityReport r = verify_duality(a, c, periods, s.engine, s.opts);
      Json j{{"current", io::to_json(a)}, {"class", format_word(c.canonical)}, {"periods", periods}};
      Json report = io::to_json(r);
      for (auto it = report.begin(); it != report.end(); ++it) j[it.key()] = *it;
      result = io::dump(j);
      if (!r.stabilized) code = exit_code(ErrorKind::NotStabilized);
      else if (!r.pass) code = kDualityFailed;
    } else if (*approx_cmd) {
      if (!builtin && sequence.empty())
        throw Error(ErrorKind::InvalidArgument, "approx needs --sequence FILE or --builtin");
      std::vector<WeightedCurrent> seq;
      if (builtin) {
        BuiltinSequenceOptions b;
        b.seed = cfg.seed;
        b.filling_level = L;
        seq = builtin_sequence(s.rep, s.engine, b, s.opts);
      } else {
        seq = io::parse_sequence(io::read_file(sequence), cfg.genus);
      }
      auto rows = approximation_experiment(s.rep, s.engine, seq, L, s.opts);
      std::string csv = io::experiment_csv(rows);
      if (!csv_path.empty()) io::write_file(resolve_output(csv_path), csv);
      result = format == "csv" ? csv : io::dump(io::to_json(rows, L));
    } else if (*spec_cmd) {
      LengthSpectrum hyp = hyperbolic_spectrum(s.rep, L, cfg.class_budget);
      LengthSpectrum shown = hyp;
      Json comparison;
      if (!current.empty()) {
        shown = cubical_spectrum(s.current(current), s.engine, L, s.opts);
        comparison = io::to_json(delta_estimate(shown, hyp));
      }
      Json j = io::to_json(shown);
      if (!comparison.is_null()) j["comparison"] = comparison;
      if (std::count_if(shown.values.begin(), shown.values.end(), [](double v) { return v > 0.0; }) >= 3) {
        DiscretenessReport d = nondiscreteness_check(shown);
        Json w = Json::array();
        for (auto [p, q] : d.witnesses) w.push_back(Json::array({p, q}));
        j["nondiscreteness"] = {{"pairs_tested", d.pairs_tested}, {"witnesses", w}};
      }
      result = io::dump(j);
    }

    if (!result.empty() && result.back() != '\n') result += '\n';
    if (out_path.empty())
      out << result;
    else
      io::write_file(resolve_output(out_path), result);
    return code;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace sageev::cli

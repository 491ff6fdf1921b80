#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <sstream>

#include "sageev/cli.hpp"
#include "sageev/error.hpp"
#include "sageev/io.hpp"

using namespace sageev;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "sageev");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  std::filesystem::path path;
  TempDir() : path(std::filesystem::temp_directory_path() / "sageev_cli_test") {
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name, const std::string& contents) const {
    auto p = (path / name).string();
    io::write_file(p, contents);
    return p;
  }
};

}  // namespace

TEST_CASE("exit codes are distinct") {
  std::set<int> codes{cli::kOk, cli::kInternal, cli::kUsage, cli::kDualityFailed};
  const ErrorKind all[] = {
      ErrorKind::NotHyperbolic,   ErrorKind::NotLinked,          ErrorKind::BadLetter,
      ErrorKind::IdentityClass,   ErrorKind::BudgetExceeded,     ErrorKind::RelatorCheckFailed,
      ErrorKind::PolygonCheckFailed, ErrorKind::NotStabilized,   ErrorKind::NotDiscrete,
      ErrorKind::AmbiguousAxes,   ErrorKind::InconsistentWalls,  ErrorKind::VertexNotInFragment,
      ErrorKind::FragmentTooLarge, ErrorKind::MismatchedClassSets, ErrorKind::ParseError,
      ErrorKind::IoError,         ErrorKind::InvalidArgument};
  for (ErrorKind k : all) CHECK(codes.insert(cli::exit_code(k)).second);
}

TEST_CASE("rep, classes and length") {
  Result r = run({"rep"});
  CHECK(r.code == 0);
  auto j = io::Json::parse(r.out);
  CHECK(j["genus"] == 2);

  Result c = run({"classes", "-L", "2"});
  CHECK(c.code == 0);
  CHECK(io::Json::parse(c.out)["count"] == 20);

  Result l = run({"length", "-w", "A1"});
  CHECK(l.code == 0);
  auto lj = io::Json::parse(l.out);
  CHECK(lj["class"] == "a1");
  CHECK(lj["translation_length"].get<double>() == doctest::Approx(2.0 * std::acosh(1.0 + std::sqrt(2.0))).epsilon(1e-14));

  CHECK(run({"--genus", "3", "length", "-w", "a3"}).code == 0);
}

TEST_CASE("usage and input errors") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({"classes"}).code == cli::kUsage);
  CHECK(run({"--help"}).code == cli::kOk);
  CHECK(run({"length", "-w", "q1"}).code == cli::exit_code(ErrorKind::ParseError));
  CHECK(run({"length", "-w", "a3"}).code == cli::exit_code(ErrorKind::BadLetter));
  CHECK(run({"length", "-w", "a1 A1"}).code == cli::exit_code(ErrorKind::IdentityClass));
  CHECK(run({"intersect", "-c", "/nonexistent.json", "-w", "a1"}).code == cli::exit_code(ErrorKind::IoError));
  CHECK(run({"--threads", "0", "rep"}).code == cli::exit_code(ErrorKind::InvalidArgument));
  CHECK(run({"--tol", "bogus=1", "rep"}).code == cli::exit_code(ErrorKind::InvalidArgument));
  CHECK(run({"classes", "-L", "6", "--class-budget", "10"}).code == cli::exit_code(ErrorKind::BudgetExceeded));
  Result e = run({"length", "-w", "a3"});
  CHECK(e.err.find("BadLetter") != std::string::npos);
}

TEST_CASE("currents on the command line") {
  TempDir tmp;
  std::string a1 = tmp.file("a1.json", R"({"genus": 2, "atoms": [{"word": "a1"}]})");
  std::string heavy = tmp.file("h.json", R"({"atoms": [{"word": "a1", "weight": "2"}]})");
  std::string broken = tmp.file("b.json", R"({"atoms": [)");

  Result n = run({"intersect", "-c", a1, "-w", "b1"});
  CHECK(n.code == 0);
  CHECK(io::Json::parse(n.out)["value"] == "1");

  Result d = run({"duality", "-c", a1, "-w", "b1", "-N", "4"});
  CHECK(d.code == 0);
  auto dj = io::Json::parse(d.out);
  CHECK(dj["separation"] == 4);
  CHECK(dj["pass"] == true);

  Result cub = run({"cubulate", "-c", a1, "-w", "b1", "-N", "3"});
  CHECK(cub.code == 0);
  auto cj = io::Json::parse(cub.out);
  CHECK(cj["partial_cube"] == true);
  CHECK(cj["walls"].size() == 3);

  CHECK(run({"cubulate", "-c", a1, "-w", "b1", "-N", "12", "--vertex-cap", "4"}).code ==
        cli::exit_code(ErrorKind::FragmentTooLarge));
  CHECK(run({"duality", "-c", heavy, "-w", "b1"}).code == cli::exit_code(ErrorKind::NotDiscrete));
  CHECK(run({"intersect", "-c", broken, "-w", "b1"}).code == cli::exit_code(ErrorKind::ParseError));
  CHECK(run({"--genus", "3", "intersect", "-c", a1, "-w", "b1"}).code ==
        cli::exit_code(ErrorKind::InvalidArgument));

  Result sp = run({"spectrum", "-L", "1", "-c", a1});
  CHECK(sp.code == 0);
  auto sj = io::Json::parse(sp.out);
  CHECK(sj["comparison"]["infinite"] == true);
}

TEST_CASE("approximation experiment output") {
  TempDir tmp;
  std::string empty = tmp.file("empty.json", "[]");
  Result e = run({"approx", "--sequence", empty, "-L", "2", "--format", "csv"});
  CHECK(e.code == 0);
  CHECK(e.out == "index,atom_words,filling_ok,exp_delta_L,witness_forward,witness_backward,stabilized_all\n");

  std::string seq = tmp.file("seq.json", R"([{"atoms": [{"word": "a1"}]}, {"atoms": [{"word": "a1 b1 a2 b2"}]}])");
  Result j1 = run({"approx", "--sequence", seq, "-L", "2"});
  Result j2 = run({"approx", "--sequence", seq, "-L", "2"});
  CHECK(j1.code == 0);
  CHECK(j1.out == j2.out);
  CHECK(io::Json::parse(j1.out)["rows"].size() == 2);

  std::string bad = tmp.file("bad.json", "[{\"atoms\": 3}]");
  CHECK(run({"approx", "--sequence", bad}).code == cli::exit_code(ErrorKind::ParseError));
  CHECK(run({"approx"}).code == cli::exit_code(ErrorKind::InvalidArgument));
}

TEST_CASE("config file and output directory") {
  TempDir tmp;
  std::string cfg = tmp.file("cfg.json", R"({"genus": 3, "threads": 2, "tolerances": {"radius_margin": 0.5}})");
  Result r = run({"--config", cfg, "rep"});
  CHECK(r.code == 0);
  CHECK(io::Json::parse(r.out)["genus"] == 3);
  // Flags override the file.
  CHECK(io::Json::parse(run({"--config", cfg, "--genus", "2", "rep"}).out)["genus"] == 2);

  std::string badcfg = tmp.file("bad.json", R"({"colour": 1})");
  CHECK(run({"--config", badcfg, "rep"}).code == cli::exit_code(ErrorKind::ParseError));

  cli::RunConfig loaded;
  cli::load_config(cfg, loaded);
  CHECK(loaded.genus == 3);
  CHECK(loaded.threads == 2);
  CHECK(loaded.tolerances.at("radius_margin") == 0.5);

  setenv("SAGEEV_OUTPUT_DIR", tmp.path.c_str(), 1);
  Result o = run({"classes", "-L", "1", "--out", "classes.json"});
  unsetenv("SAGEEV_OUTPUT_DIR");
  CHECK(o.code == 0);
  CHECK(o.out.empty());
  CHECK(io::Json::parse(io::read_file((tmp.path / "classes.json").string()))["count"] == 4);
}

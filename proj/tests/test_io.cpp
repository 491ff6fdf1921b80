#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>

#include "sageev/error.hpp"
#include "sageev/io.hpp"

using namespace sageev;
using io::Json;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("rationals") {
  CHECK(io::parse_rational("7") == Rational(7));
  CHECK(io::parse_rational("-3/4") == Rational(-3, 4));
  CHECK(io::parse_rational("6/8") == Rational(3, 4));
  CHECK(io::parse_rational("0.125") == Rational(1, 8));
  CHECK(io::parse_rational("2.5") == Rational(5, 2));
  for (const char* bad : {"", "1/0", "x", "1.2.3", "3/"})
    CHECK(kind_of([&] { io::parse_rational(bad); }) == ErrorKind::ParseError);
  CHECK(io::format_rational(Rational(3, 2)) == "3/2");
  CHECK(io::format_rational(Rational(4)) == "4");
}

TEST_CASE("current specs") {
  WeightedCurrent a = io::parse_current(
      R"({"genus": 2, "atoms": [{"word": "b1 a1", "weight": "3/2"}, {"word": "A2", "weight": 2}, {"word": "b2"}]})",
      2);
  REQUIRE(a.atoms.size() == 3);
  CHECK(a.genus == 2);
  CHECK(!a.is_discrete());
  Json back = io::to_json(a);
  WeightedCurrent again = io::current_from_json(back, 2);
  REQUIRE(again.atoms.size() == a.atoms.size());
  for (std::size_t i = 0; i < a.atoms.size(); ++i) {
    CHECK(again.atoms[i].cls == a.atoms[i].cls);
    CHECK(again.atoms[i].weight == a.atoms[i].weight);
  }

  CHECK(io::parse_current(R"({"atoms": [{"word": "a3"}]})", 3).genus == 3);
  CHECK(kind_of([] { io::parse_current("{\"atoms\": [", 2); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { io::parse_current(R"({"atoms": [{"weight": 1}]})", 2); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { io::parse_current(R"({"atoms": [{"word": "a1", "weight": "-1"}]})", 2); }) ==
        ErrorKind::InvalidArgument);
  CHECK(kind_of([] { io::parse_current(R"({"atoms": [{"word": "a5"}]})", 2); }) == ErrorKind::BadLetter);

  try {
    io::parse_current("{\n  \"atoms\": [\n    {\"word\": \"a1\"},,\n  ]\n}", 2);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("sequences") {
  CHECK(io::parse_sequence("[]", 2).empty());
  auto s = io::parse_sequence(R"([{"atoms": [{"word": "a1"}]}, {"atoms": [{"word": "b1"}]}])", 2);
  CHECK(s.size() == 2);
  auto t = io::parse_sequence(R"({"currents": [{"atoms": [{"word": "a1"}]}]})", 2);
  CHECK(t.size() == 1);
  CHECK(kind_of([] { io::parse_sequence("{\"x\": 1}", 2); }) == ErrorKind::ParseError);
}

TEST_CASE("matrix files") {
  FuchsianRep rep = standard_rep(2);
  std::string text = "# standard images\n";
  for (const auto& m : rep.images())
    text += io::format_double(m.a()) + " " + io::format_double(m.b()) + " " +
            io::format_double(m.c()) + " " + io::format_double(m.d()) + "\n";
  auto images = io::parse_matrices(text);
  REQUIRE(images.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) CHECK((images[k] * rep.images()[k].inverse()).distance_to_identity() < 1e-14);
  CHECK(kind_of([] { io::parse_matrices("1 0 0"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { io::parse_matrices("1 0 0 x"); }) == ErrorKind::ParseError);
}

TEST_CASE("files") {
  auto dir = std::filesystem::temp_directory_path() / "sageev_io_test";
  std::filesystem::create_directories(dir);
  auto path = (dir / "x.txt").string();
  io::write_file(path, "hello\n");
  CHECK(io::read_file(path) == "hello\n");
  CHECK(kind_of([&] { io::read_file((dir / "missing").string()); }) == ErrorKind::IoError);
  CHECK(kind_of([&] { io::write_file((dir / "no" / "such" / "f").string(), ""); }) == ErrorKind::IoError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("dump") {
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(io::format_double(3.0) == "3");
  CHECK(io::format_double(std::numeric_limits<double>::infinity()) == "\"inf\"");
  Json j{{"b", 1}, {"a", 0.5}, {"s", "x"}, {"l", Json::array({true, nullptr})}};
  CHECK(io::dump(j, -1) == R"({"b":1,"a":0.5,"s":"x","l":[true,null]})");
  CHECK(io::dump(Json{{"x", 2.0 / 3.0}}, -1) == R"({"x":0.66666666666666663})");
  CHECK(io::dump(j) == io::dump(j));
}

TEST_CASE("serialisation of results") {
  FuchsianRep rep = standard_rep(2);
  Json r = io::to_json(rep);
  CHECK(r["genus"] == 2);
  CHECK(io::to_json(hypgeo::BoundaryPoint::infinity()) == "inf");
  CHECK(io::to_json(hypgeo::BoundaryPoint::finite(0.5)) == 0.5);

  auto classes = enumerate_classes(2, 1);
  Json c = io::to_json(classes);
  REQUIRE(c.size() == 4);

  LengthSpectrum s = hyperbolic_spectrum(rep, 1);
  Json sj = io::to_json(s);
  CHECK(sj["label"] == "hyperbolic");

  ExperimentRow row;
  row.current = rational_current(classes[0]);
  row.error = "NotDiscrete: x";
  std::string csv = io::experiment_csv({row});
  CHECK(csv.rfind("index,atom_words,filling_ok,exp_delta_L,witness_forward,witness_backward,stabilized_all\n", 0) == 0);
  CHECK(csv.find("a1") != std::string::npos);
}

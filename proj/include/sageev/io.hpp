#pragma once

// File formats and JSON/CSV serialization.
//
// Current spec:  {"genus": 2, "atoms": [{"word": "a1 b1", "weight": "3/2"}, ...]}
//   weight is an integer, a fraction string "p/q" or a decimal string "0.25";
//   it defaults to 1.
// Sequence file: a JSON array of current specs, or {"currents": [...]}.
// Matrix file:   2g blocks of four reals "a b c d" (a1, b1, a2, b2, ...);
//   '#' starts a comment.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "sageev/cubulation.hpp"
#include "sageev/metrics.hpp"

namespace sageev::io {

using Json = nlohmann::ordered_json;

// Exact value of "7", "-3/4" or "0.125". Throws ParseError.
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& r);

// Throws ParseError on malformed specs, with line and column for text input.
WeightedCurrent current_from_json(const Json& j, int default_genus);
WeightedCurrent parse_current(const std::string& text, int default_genus);
std::vector<WeightedCurrent> parse_sequence(const std::string& text, int default_genus);
std::vector<hypgeo::Isometry> parse_matrices(const std::string& text);

// Reads the whole file; throws IoError.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

// Floats printed with 17 significant digits, fields in insertion order.
std::string dump(const Json& j, int indent = 2);
std::string format_double(double x);

Json to_json(const hypgeo::BoundaryPoint& p);
Json to_json(const WeightedCurrent& alpha);
Json to_json(const FuchsianRep& rep);
Json to_json(const std::vector<ConjugacyClass>& classes);
Json to_json(const LinkingCount& n, const WeightedCurrent& alpha, const GroupWord& c);
Json to_json(const CubeFragment& f, const WallSet& ws);
Json to_json(const DualityReport& r);
Json to_json(const LengthSpectrum& s);
Json to_json(const MetricComparison& m);
Json to_json(const std::vector<ExperimentRow>& rows, int L);

std::string experiment_csv(const std::vector<ExperimentRow>& rows);

}  // namespace sageev::io

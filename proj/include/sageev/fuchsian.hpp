#pragma once

#include <vector>

#include "sageev/hypgeo.hpp"
#include "sageev/words.hpp"

namespace sageev {

// Fundamental 4g-gon of the vertex orbit, with the centre used as basepoint.
struct Polygon {
  std::vector<hypgeo::Complex> vertices;  // cyclic order
  std::vector<GroupWord> vertex_words;    // vertices[k] = evaluate(vertex_words[k]) · vertices[0]
  std::vector<double> angles;
  double angle_sum = 0.0;
  double area = 0.0;       // (n−2)π − Σ angles
  bool convex = false;
  hypgeo::Complex center;  // x0
  double radius = 0.0;     // D = max distance from x0 to a vertex
};

class FuchsianRep {
 public:
  FuchsianRep(int genus, std::vector<hypgeo::Isometry> images, Polygon polygon);

  int genus() const { return genus_; }
  const std::vector<hypgeo::Isometry>& images() const { return images_; }
  const hypgeo::Isometry& letter(int x) const {
    return x > 0 ? images_[x - 1] : inverses_[-x - 1];
  }
  const Polygon& polygon() const { return polygon_; }
  hypgeo::Complex basepoint() const { return polygon_.center; }
  double diameter() const { return polygon_.radius; }

 private:
  int genus_;
  std::vector<hypgeo::Isometry> images_;
  std::vector<hypgeo::Isometry> inverses_;
  Polygon polygon_;
};

hypgeo::Isometry evaluate(const FuchsianRep& rep, const GroupWord& w);

// Max entrywise distance of the relator image from ±I.
double relator_residual(int genus, const std::vector<hypgeo::Isometry>& images);

// Target generator trace 2·cot(π/4g).
double standard_trace(int genus);

FuchsianRep standard_rep(int genus);

// User-supplied generator images; relator and polygon checks enforced.
FuchsianRep from_matrices(int genus, std::vector<hypgeo::Isometry> images);

// Polygon vertex words: conjugators taking the base vertex around the 4g-gon.
std::vector<GroupWord> polygon_vertex_words(int genus);

Polygon build_polygon(int genus, const std::vector<hypgeo::Isometry>& images,
                      hypgeo::Complex start);

}  // namespace sageev

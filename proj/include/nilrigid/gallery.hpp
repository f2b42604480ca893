#pragma once

#include <memory>
#include <string>
#include <vector>

#include "nilrigid/rigidity.hpp"

namespace nilrigid {

// A named worked example: the graph algebra (nilmanifold entries), a
// generator set ready for the rigidity engine, and prose for reports.
struct GalleryEntry {
    std::string name;
    std::string description;
    GeneratorSet generators;
};

// Resolves "heisenberg", "complete:n" / "star:n" (2 <= n <= 6), and
// "torus-f2". Unknown names raise UnknownExample; supported families with a
// parameter outside the range raise OutOfRange.
GalleryEntry gallery_example(const std::string& name);

// Canonical names suitable for enumeration in reports.
std::vector<std::string> gallery_names();

// The affine generators behind a nilmanifold gallery entry, in order:
// within each coherent class of size m, the adjacent elementary pairs
// E_{i,i+1}(1), E_{i+1,i}(1); then one integral shear per (edge, vertex)
// matrix unit.
std::vector<AffineGenerator> gallery_affine_generators(const GraphAlgebra& algebra);

// A richer fixture on the Heisenberg example for exact equivariance tests:
// the four standard generators, three pure lattice translations, and three
// mixed affine elements (ten in total).
std::vector<AffineGenerator> heisenberg_affine_test_generators(const GraphAlgebra& algebra);

} // namespace nilrigid

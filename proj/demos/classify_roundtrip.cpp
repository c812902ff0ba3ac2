// Generate a random canonical map, serialize it, verify the triple identity,
// then recover the canonical form from the raw (L, K) data alone.

#include <iostream>

#include "triplekit/triplekit.hpp"

using namespace triplekit;
using G = GaussianRational;

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 42;
  const std::size_t n = 3;

  CanonicalSpec<G> spec = random_canonical<G>(n, seed);
  std::cout << "generated spec:\n" << spec_to_json(spec).dump(2) << "\n\n";

  SuperMap<G> phi = from_canonical(spec);
  std::cout << "triple identity holds: " << std::boolalpha << is_triple_morphism(phi) << "\n";
  std::cout << "symmetrized variant agrees: " << is_sym_triple_morphism(phi) << "\n\n";

  // Round trip through JSON, as the CLI would.
  SuperMap<G> parsed = supermap_from_json<G>(supermap_to_json(phi));
  ClassifyReport<G> rep = classify(parsed);
  std::cout << "recovered report:\n" << report_to_json(rep).dump(2) << "\n\n";

  std::cout << "residual: " << rep.residual << "\n";
  std::cout << "specs equivalent: " << specs_equivalent(rep.spec, spec) << "\n";
  return specs_equivalent(rep.spec, spec) && rep.residual == 0.0 ? 0 : 1;
}

// Tour of the structural checks: the five-tripotent configuration in M_3,
// the failed search for four in M_2, and the dimension-1 counterexample.

#include <iostream>

#include "triplekit/triplekit.hpp"

using namespace triplekit;
using G = GaussianRational;

int main() {
  std::cout << "five mutually annihilating rank-one tripotents in M_3:\n";
  auto qs = five_tripotents<G>();
  for (std::size_t i = 0; i < qs.size(); ++i)
    std::cout << "  Q" << i + 1 << " tripotent=" << std::boolalpha << is_tripotent(qs[i])
              << " rank=" << rank(qs[i]) << "\n";
  std::cout << "  family score (0 means every identity holds exactly): "
            << check_family(five_tripotent_operators<G>()).value << "\n\n";

  std::cout << "searching M_2 for a comparable quadruple (10000 trials):\n";
  auto res = m2_quadruple_search(10000, 1);
  std::cout << "  best score " << res.score.value << " (floor " << kM2ViolationFloor
            << "), so no candidate came close\n";
  std::cout << "  three-member relaxation score: "
            << check_family(m2_relaxation_witness<G>()).value << "\n\n";

  std::cout << "dimension 1, z -> z|z|:\n";
  auto rep = dim1_laws(10000, 7);
  std::cout << "  multiplicative residual over " << rep.samples
            << " samples: " << rep.max_mult_residual << "\n";
  std::cout << "  additivity violation at z=1: " << rep.additivity_violation << "\n";
  return 0;
}

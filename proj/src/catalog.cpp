#include "graphesa/catalog.hpp"

#include <cmath>
#include <string>

namespace graphesa::catalog {

double dyadic_upper_threshold() { return 5.0 * std::sqrt(2.0) / 4.0 - 1.5; }

double dyadic_lower_threshold() { return -5.0 * std::sqrt(2.0) / 4.0 - 1.5; }

EndFamily cubic_conductance_end(Index horizon) {
  return EndFamily::raw(Sequence::power(1.0, 3.0), Sequence::power(1.0, -1.0, 1.0), std::nullopt, horizon,
                        "example1");
}

EndFamily power_end(double gamma, double beta, Index horizon) {
  return EndFamily::raw(Sequence::power(1.0, gamma), Sequence::power(1.0, -beta, 1.0), std::nullopt, horizon,
                        "example3");
}

EndFamily dyadic_end(double A, Index horizon) {
  // Edge {n-1, n} carries c = 2^{n-1}.
  return EndFamily::raw(Sequence::geometric(0.5, 2.0, 1.0), Sequence::geometric(1.0, 2.0, -0.5),
                        Sequence::geometric(A, 4.0, 1.0), horizon, "example2");
}

TreeSpec dyadic_tree(int branching, Index depth) { return TreeSpec::dyadic(branching, depth); }

EndFamily unit_end(Index horizon) {
  return EndFamily::raw(Sequence::constant(1.0), Sequence::constant(1.0), std::nullopt, horizon, "unit");
}

}  // namespace graphesa::catalog

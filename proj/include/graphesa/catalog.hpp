#pragma once

#include "graphesa/graph.hpp"

namespace graphesa::catalog {

/// 5 sqrt(2) / 4 - 3 / 2: upper edge of the non-self-adjoint window of the
/// dyadic discretisation of -f'' + A f / x^2.
double dyadic_upper_threshold();
/// -5 sqrt(2) / 4 - 3 / 2.
double dyadic_lower_threshold();

/// c_{n-1,n} = n^3, omega_n = 1 / (n + 1).
EndFamily cubic_conductance_end(Index horizon = 1000);
/// c_{n-1,n} = n^gamma, omega_n = (n + 1)^{-beta}.
EndFamily power_end(double gamma, double beta, Index horizon = 1000);
/// Dyadic discretisation: c_{n,n+1} = 2^n, omega_n = 2^{-n/2}, W_n = A 4^n.
EndFamily dyadic_end(double A, Index horizon = 400);
/// Spherically homogeneous tree with omega = 2^{-depth}, c = 2^{depth}.
TreeSpec dyadic_tree(int branching, Index depth = 12);
/// c == 1, omega == 1.
EndFamily unit_end(Index horizon = 1000);

}  // namespace graphesa::catalog

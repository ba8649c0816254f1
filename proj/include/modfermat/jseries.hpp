/// Exact q-expansion of the elliptic modular function j = E4^3 / Delta,
/// with E4 from the divisor-sum formula and Delta from the 24th power of
/// the Euler product.
#pragma once

#include "modfermat/qseries.hpp"

namespace modfermat {

/// Coefficients c_{-1}, c_0, c_1, ... of j, `count` of them (count >= 1).
std::vector<Integer> j_coefficients(std::size_t count);

/// j as a QSeries with leading exponent -1, exact through q^(order-1).
/// Requires order >= 1, i.e. at least the q^0 term is reported.
QSeries j_q_expansion(long order);

/// E4 = 1 + 240 sum sigma_3(n) q^n through q^(n-1) (n coefficients).
std::vector<Integer> eisenstein_e4(std::size_t count);

/// Delta / q = prod (1-q^n)^24 through q^(n-1).
std::vector<Integer> delta_over_q(std::size_t count);

}  // namespace modfermat

#include "modfermat/jseries.hpp"

#include <stdexcept>

namespace modfermat {

std::vector<Integer> eisenstein_e4(std::size_t count) {
  std::vector<Integer> s3(count, Integer(0));  // sigma_3 sieve
  for (std::size_t d = 1; d < count; ++d) {
    Integer d3 = Integer(static_cast<unsigned long>(d));
    d3 = d3 * d3 * d3;
    for (std::size_t n = d; n < count; n += d) s3[n] += d3;
  }
  std::vector<Integer> e4(count, Integer(0));
  e4[0] = 1;
  for (std::size_t n = 1; n < count; ++n) e4[n] = 240 * s3[n];
  return e4;
}

std::vector<Integer> delta_over_q(std::size_t count) {
  // Euler product by the pentagonal number theorem, then ^24.
  std::vector<Integer> eta(count, Integer(0));
  for (long k = 0;; ++k) {
    long e1 = k * (3 * k - 1) / 2;
    long e2 = k * (3 * k + 1) / 2;
    if (e1 >= static_cast<long>(count) && e2 >= static_cast<long>(count)) break;
    Integer sign = (k % 2 == 0) ? 1 : -1;
    if (e1 < static_cast<long>(count)) eta[e1] += sign;
    if (k > 0 && e2 < static_cast<long>(count)) eta[e2] += sign;
  }
  auto sq = [&](const std::vector<Integer>& v) {
    auto r = convolve_window(v, v, 0, count);
    r.resize(count);
    return r;
  };
  std::vector<Integer> p2 = sq(eta);
  std::vector<Integer> p4 = sq(p2);
  std::vector<Integer> p8 = sq(p4);
  std::vector<Integer> p16 = sq(p8);
  auto p24 = convolve_window(p16, p8, 0, count);
  p24.resize(count);
  return p24;
}

std::vector<Integer> j_coefficients(std::size_t count) {
  if (count == 0) throw std::invalid_argument("j_coefficients: count >= 1");
  std::size_t n = count;  // c_{-1}..c_{count-2}: need tail of that length
  std::vector<Integer> e4 = eisenstein_e4(n);
  auto e4sq = convolve_window(e4, e4, 0, n);
  e4sq.resize(n);
  auto e4cu = convolve_window(e4sq, e4, 0, n);
  e4cu.resize(n);
  std::vector<Integer> dq = delta_over_q(n);
  std::vector<Integer> inv = series_invert(dq, n);
  auto j = convolve_window(e4cu, inv, 0, n);
  j.resize(n);
  return j;  // j[i] is the coefficient of q^(i-1)
}

QSeries j_q_expansion(long order) {
  if (order < 1) throw std::invalid_argument("j_q_expansion: order >= 1");
  std::vector<Integer> c = j_coefficients(static_cast<std::size_t>(order) + 1);
  return QSeries(-1, std::move(c), order);
}

}  // namespace modfermat

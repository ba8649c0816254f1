/// Truncated integer Laurent series in q. A series knows its coefficients on
/// the window [leading_exponent, truncation_order); everything at or above the
/// truncation order is unknown, everything below the leading exponent is zero.
#pragma once

#include <vector>

#include "modfermat/numbers.hpp"

namespace modfermat {

/// Convolution of integer coefficient vectors, c[k] = sum a[i] b[k-i].
/// Switches between schoolbook and Kronecker substitution (single big
/// mpz product) based on operand size.
std::vector<Integer> convolve(const std::vector<Integer>& a,
                              const std::vector<Integer>& b);

/// As convolve() but only materializes output indices [out_lo, out_hi).
std::vector<Integer> convolve_window(const std::vector<Integer>& a,
                                     const std::vector<Integer>& b,
                                     std::size_t out_lo, std::size_t out_hi);

/// Multiplicative inverse of a power series given by coefficient vector f
/// with f[0] = +-1, to `n` terms (Newton iteration).
std::vector<Integer> series_invert(const std::vector<Integer>& f, std::size_t n);

class QSeries {
 public:
  /// Window [lead, trunc); coeffs.size() must equal trunc - lead > 0.
  QSeries(long lead, std::vector<Integer> coeffs, long trunc);

  /// The zero series known through exponent trunc (exclusive).
  static QSeries zero(long lead, long trunc);

  long leading_exponent() const { return lead_; }
  long truncation_order() const { return trunc_; }

  /// Exponent of the first nonzero known coefficient; trunc if all known
  /// coefficients vanish.
  long order() const;

  /// Coefficient of q^e. Throws if e >= truncation_order.
  const Integer& coeff(long e) const;

  const std::vector<Integer>& coefficients() const { return coeff_; }

  bool known_zero() const { return order() == trunc_; }

  QSeries truncated(long new_trunc) const;
  QSeries shifted(long delta) const;  // multiply by q^delta

  friend QSeries add(const QSeries& a, const QSeries& b);
  friend QSeries sub(const QSeries& a, const QSeries& b);
  friend QSeries mul(const QSeries& a, const QSeries& b);

  /// Inverse of a unit series (order() finite, leading coefficient +-1).
  QSeries invert_unit() const;

  /// Substitute q -> q^k, k >= 1.
  QSeries power_substitute(unsigned long k) const;

  bool operator==(const QSeries& o) const;

 private:
  long lead_;
  long trunc_;
  std::vector<Integer> coeff_;
};

}  // namespace modfermat

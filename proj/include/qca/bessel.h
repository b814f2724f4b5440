#ifndef QCA_BESSEL_H
#define QCA_BESSEL_H

namespace qca {

/// Bessel functions of the first kind, orders 0 and 1, real argument.
/// Ascending power series for |z| <= 8; beyond that the series loses too many
/// digits to cancellation and Miller's downward recurrence is used instead.
/// Absolute error is below 1e-13 for |z| <= 30.
double bessel_j0(double z);
double bessel_j1(double z);

}  // namespace qca

#endif

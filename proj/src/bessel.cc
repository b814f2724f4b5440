#include "qca/bessel.h"

#include <cmath>
#include <utility>

namespace qca {

namespace {

constexpr double kSeriesLimit = 8.0;

// sum_k (-z^2/4)^k / (k! (k+order)!) * (z/2)^order
double ascending_series(int order, double z) {
    double half = z / 2;
    double q = -half * half;
    double term = order == 0 ? 1.0 : half;
    double sum = term;
    for (int k = 1; k < 200; k++) {
        term *= q / (static_cast<double>(k) * (k + order));
        sum += term;
        if (std::abs(term) < 1e-18) {
            break;
        }
    }
    return sum;
}

// Miller: recur J_{k-1} = (2k/z) J_k - J_{k+1} downward from an arbitrary seed
// well above the argument, then normalize with J_0 + 2 sum_{k>=1} J_{2k} = 1.
std::pair<double, double> miller_j0_j1(double z) {
    int start = 2 * (static_cast<int>(std::abs(z)) + 30);
    double above = 0;
    double here = 1e-300;
    double j0 = 0;
    double j1 = 0;
    double norm = 0;
    for (int k = start; k >= 1; k--) {
        double below = (2.0 * k / z) * here - above;
        above = here;
        here = below;
        // here == J_{k-1}, above == J_k (unnormalized)
        if (k - 1 == 1) {
            j1 = here;
        }
        if ((k - 1) % 2 == 0 && k - 1 > 0) {
            norm += 2 * here;
        }
        if (std::abs(here) > 1e250) {
            here *= 1e-250;
            above *= 1e-250;
            j1 *= 1e-250;
            norm *= 1e-250;
        }
    }
    j0 = here;
    norm += j0;
    return {j0 / norm, j1 / norm};
}

}  // namespace

double bessel_j0(double z) {
    z = std::abs(z);
    if (z <= kSeriesLimit) {
        return ascending_series(0, z);
    }
    return miller_j0_j1(z).first;
}

double bessel_j1(double z) {
    double sign = z < 0 ? -1.0 : 1.0;
    z = std::abs(z);
    if (z <= kSeriesLimit) {
        return sign * ascending_series(1, z);
    }
    return sign * miller_j0_j1(z).second;
}

}  // namespace qca

#ifndef QCA_UNITARITY_H
#define QCA_UNITARITY_H

#include <array>
#include <cstdint>
#include <variant>
#include <vector>

#include "qca/field.h"
#include "qca/matrix.h"

namespace qca {

/// Weights w_{-r}..w_{+r} of a translation-invariant band matrix acting as
/// phi_{t+1}(x) = sum_e w_e phi_t(x + e).
class ScalarBandWeights {
   public:
    /// Length must be odd; the radius is (size - 1) / 2.
    explicit ScalarBandWeights(std::vector<Amplitude> weights);

    int radius() const { return radius_; }
    /// Weight at band offset e, -radius <= e <= radius.
    Amplitude at(int e) const;
    const std::vector<Amplitude> &weights() const { return weights_; }

   private:
    int radius_;
    std::vector<Amplitude> weights_;
};

/// Residuals of the unitarity system for a band matrix. Entry m (0 <= m <= 2r)
/// is sum_e w_{e+m} conj(w_e), minus 1 when m = 0. All vanish iff the band
/// matrix is unitary.
std::vector<Amplitude> scalar_band_residuals(const ScalarBandWeights &w);

struct TrivialVerdict {
    /// U = phase * T^shift, T the shift with ones on the subdiagonal.
    int shift;
    Amplitude phase;
};

struct NonUnitaryVerdict {
    double max_residual;
};

using NoGoVerdict = std::variant<TrivialVerdict, NonUnitaryVerdict>;

/// Every band unitary commuting with the lattice translation is a pure shift
/// times a phase. Classifies `w` accordingly; residuals within `tol` count as
/// unitary. A unitary verdict without a single unit-modulus weight contradicts
/// that statement and raises std::logic_error.
NoGoVerdict classify_no_go(const ScalarBandWeights &w, double tol = 1e-12);

/// Rows of a two-step translation-invariant, radius-1 matrix:
/// (a b c) on even rows, (d e f) on odd rows, each shifted by one column.
struct TwoStepWeights {
    Amplitude a, b, c, d, e, f;
};

/// Six residuals of the unitarity system, in this order:
///   |a|^2+|b|^2+|c|^2-1,  b conj(d) + c conj(e),  c conj(a),
///   |d|^2+|e|^2+|f|^2-1,  e conj(a) + f conj(b),  f conj(d).
std::array<Amplitude, 6> two_step_residuals(const TwoStepWeights &w);

using PairMatrix = Mat2;

/// [[i sin(theta), cos(theta)], [cos(theta), i sin(theta)]]
PairMatrix build_pair_matrix(double theta);

/// Radius-1 block band of 2x2 weights for the two-component automaton.
struct BlockBandWeights {
    Mat2 minus;
    Mat2 zero;
    Mat2 plus;
    double theta = 0;
    double rho = 0;
};

/// Parity-invariant family:
///   w_{-1} = cos(rho) [[0, i sin], [0, cos]]
///   w_{+1} = cos(rho) [[cos, 0], [i sin, 0]]
///   w_0    = sin(rho) [[sin, -i cos], [-i cos, sin]]
BlockBandWeights build_two_component_weights(double theta, double rho);

/// Component swap [[0, 1], [1, 0]].
Mat2 parity_matrix();

/// w_{-1} w_{-1}^+ + w_0 w_0^+ + w_{+1} w_{+1}^+ - I,
/// w_0 w_{-1}^+ + w_{+1} w_0^+,
/// w_{+1} w_{-1}^+.
std::array<Mat2, 3> block_band_residuals(const BlockBandWeights &w);

/// w_{-1} - P w_{+1} P^-1 and w_0 - P w_0 P^-1.
std::array<Mat2, 2> parity_residuals(const BlockBandWeights &w);

/// Largest entry modulus over a set of matrix residuals.
template <std::size_t K, std::size_t M>
double max_residual(const std::array<SquareMatrix<K>, M> &rs) {
    double best = 0;
    for (const auto &r : rs) {
        best = std::max(best, r.max_abs());
    }
    return best;
}

/// Pairwise scattering for the lattice gas. Rows and columns are indexed by
/// the occupation of a cell pair: bit 0 = first cell, bit 1 = second cell,
/// so the order is 00, 10, 01, 11 read as (first, second). Empty pairs pass
/// unchanged, a doubly occupied pair picks up exp(i beta), a single particle
/// is mixed by exp(i alpha) * build_pair_matrix(theta).
struct QlgaScatteringMatrix {
    Mat4 s;
    double theta = 0;
    double alpha = 0;
    double beta = 0;

    /// The singly occupied 2x2 block, rows/cols (first cell, second cell).
    Mat2 middle_block() const;
};

QlgaScatteringMatrix build_qlga_matrix(double theta, double alpha, double beta);

}  // namespace qca

#endif

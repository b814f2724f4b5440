#ifndef QCA_QCA1_H
#define QCA_QCA1_H

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qca/field.h"
#include "qca/unitarity.h"

namespace qca::qca1 {

/// One partitioned update: for every x = t+1 (mod 2) the cell pair
/// (x-1, x) is multiplied by S(theta). Advances t by one.
OneComponentField step(const OneComponentField &field, double theta);

/// Same update with an arbitrary pair matrix. The off-diagonal (hopping)
/// entries of the pair that straddles the seam (N-1, 0) are multiplied by
/// `seam_phase`; 1 is the periodic ring, -1 the antiperiodic one.
OneComponentField step(const OneComponentField &field, const PairMatrix &s, Amplitude seam_phase = 1.0);

/// `steps + 1` fields starting with `init`.
std::vector<OneComponentField> evolve(const OneComponentField &init, std::size_t steps, double theta);

/// Unit amplitude for a particle moving right from position x: cell x at a
/// timestep t = x (mod 2).
OneComponentField right_mover(std::size_t ring_size, std::int64_t x);

/// Unit amplitude for a particle moving left from position x: cell x-1 at a
/// timestep t = x (mod 2).
OneComponentField left_mover(std::size_t ring_size, std::int64_t x);

enum class Mover { Left, Right };

/// Amplitudes at lightcone point (u, v) for a particle emitted at the origin.
/// `left` is phi_t(x-1), the particle leaving x to the left; `right` is
/// phi_t(x), leaving to the right; t = u + v and x = u - v.
struct PropagatorResult {
    Amplitude left;
    Amplitude right;
    std::int64_t u;
    std::int64_t v;
};

/// Largest u + v accepted by propagator_paths.
inline constexpr std::int64_t kMaxPathLength = 28;

/// Brute-force sum over every lattice path with u right steps and v left
/// steps. Exponential in u + v.
PropagatorResult propagator_paths(std::int64_t u, std::int64_t v, double theta, Mover start = Mover::Right);

/// Terminating binomial sums for a right-moving source:
///   left  = sum_k C(u-1,k-1) C(v,k-1)   (i sin)^(2k-1) cos^(u+v-2k+1)
///   right = [v=0] cos^u + sum_k C(u,k) C(v-1,k-1) (i sin)^(2k) cos^(u+v-2k)
/// Terms are accumulated in log-magnitude form, so large u + v neither
/// overflows nor underflows and theta = pi/2 needs no special case.
PropagatorResult propagator_closed(std::int64_t u, std::int64_t v, double theta);

/// Left-moving source: the parity mirror of propagator_closed(v, u, theta),
/// with the two channels exchanged.
PropagatorResult propagator_left_start(std::int64_t u, std::int64_t v, double theta);

struct ContinuumLimit {
    Amplitude left;
    Amplitude right;
    double tau;
};

/// Continuum targets for the rescaled lattice propagator
/// propagator_closed(u/eps, v/eps, eps*theta) at event (t, x), u, v > 0:
///   left  ~ i eps theta J0(tau theta)
///   right ~ -(2 u eps theta / tau) J1(tau theta),   tau = sqrt(t^2 - x^2).
ContinuumLimit bessel_limit(double t, double x, double theta, double eps);

/// Least-squares slope (cells per step) of the position of the rightmost
/// peak, argmax of p(t, .) over positions strictly right of x0 on the ring,
/// against t. Ties go to the larger displacement. Rows whose right half holds
/// no probability above 1e-9 are skipped.
double measure_speed(const PositionDistribution &dist, std::int64_t x0, std::size_t ring_size);

}  // namespace qca::qca1

#endif

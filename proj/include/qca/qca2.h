#ifndef QCA_QCA2_H
#define QCA_QCA2_H

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qca/field.h"
#include "qca/unitarity.h"

namespace qca::qca2 {

/// Synchronous homogeneous update
///   psi_{t+1}(x) = w_{-1} psi_t(x-1) + w_0 psi_t(x) + w_{+1} psi_t(x+1)
/// on the periodic ring. Advances t by one.
TwoComponentField step(const TwoComponentField &psi, const BlockBandWeights &w);

/// step with build_two_component_weights(theta, rho).
TwoComponentField step(const TwoComponentField &psi, double theta, double rho);

std::vector<TwoComponentField> evolve(const TwoComponentField &init, std::size_t steps, double theta, double rho);

/// p(x) = |psi_left(x)|^2 + |psi_right(x)|^2, tagged with psi.t.
PositionDistribution probability(const TwoComponentField &psi);

PositionDistribution probability(const std::vector<TwoComponentField> &history);

/// Unit amplitude in the right channel at x, t = x (mod 2).
TwoComponentField right_mover(std::size_t ring_size, std::int64_t x);

/// Unit amplitude in the left channel at x, t = x (mod 2).
TwoComponentField left_mover(std::size_t ring_size, std::int64_t x);

/// psi(x) = (phi(x-1), phi(x)) on cells x = t (mod 2), zero elsewhere.
TwoComponentField embed(const OneComponentField &phi);

/// Inverse of embed. psi must vanish on every cell x != t (mod 2).
OneComponentField restrict_to_qca1(const TwoComponentField &psi);

/// Total probability on cells x != t (mod 2), the sublattice that embed
/// leaves empty.
double off_sublattice_weight(const TwoComponentField &psi);

/// psi'(x) = P psi(-x): swap the channels and reflect about cell 0.
TwoComponentField reflect(const TwoComponentField &psi);

}  // namespace qca::qca2

#endif

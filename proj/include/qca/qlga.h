#ifndef QCA_QLGA_H
#define QCA_QLGA_H

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "qca/field.h"
#include "qca/unitarity.h"

namespace qca::qlga {

/// Largest ring that fits one machine word of occupation bits.
inline constexpr int kMaxCells = 63;
/// Largest sector dimension C(N, n) accepted.
inline constexpr std::uint64_t kMaxSectorSize = 10'000'000;
/// Largest ring for the dense 2^N oracle.
inline constexpr int kMaxDenseCells = 12;

/// All configurations of `particles` particles on `cells` cells, one particle
/// per cell at most. Bit x of a state is set when cell x is occupied. States
/// are in increasing numeric order.
class FockBasis {
   public:
    FockBasis(int cells, int particles);

    int cells() const { return cells_; }
    int particles() const { return particles_; }
    std::size_t size() const { return states_.size(); }
    std::uint64_t state(std::size_t index) const { return states_[index]; }
    const std::vector<std::uint64_t> &states() const { return states_; }

    /// Position of `mask` in the basis, via its combinatorial rank. Throws if
    /// the mask does not belong to the sector.
    std::size_t index_of(std::uint64_t mask) const;

   private:
    int cells_;
    int particles_;
    std::vector<std::uint64_t> states_;
    // binomial_[a][b] = C(a, b) for a <= cells, b <= particles
    std::vector<std::vector<std::uint64_t>> binomial_;
};

/// C(N, n) configurations; n > N throws.
std::shared_ptr<const FockBasis> enumerate_basis(int cells, int particles);

struct FockVector {
    std::shared_ptr<const FockBasis> basis;
    std::vector<Amplitude> amps;
    std::int64_t t = 0;
};

struct QlgaParams {
    double theta = 0;
    double alpha = 0;
    double beta = 0;
};

double norm_sq(const FockVector &state);

/// Basis state with particles in the listed cells (any order, no repeats).
FockVector configuration(int cells, std::span<const std::int64_t> positions, std::int64_t t = 0);

/// One-particle state with amplitude 1/sqrt(k) in each of k listed cells.
FockVector single_particle_superposition(int cells, std::span<const std::int64_t> positions, std::int64_t t = 0);

/// One update: each cell pair (x-1, x) with x = t+1 (mod 2) is scattered by
/// build_qlga_matrix(theta, alpha, beta). Output amplitudes are gathered from
/// their sources in a fixed order.
FockVector step(const FockVector &state, const QlgaParams &params);

std::vector<FockVector> evolve(const FockVector &init, std::size_t steps, const QlgaParams &params);

/// Same update on the full 2^N occupation space, index bit x = cell x
/// occupied. Used as an oracle for `step`; cells <= 12.
std::vector<Amplitude> full_space_step(
    std::span<const Amplitude> dense, int cells, std::int64_t t, const QlgaParams &params);

/// Scatters a sector state into the 2^N space.
std::vector<Amplitude> to_dense(const FockVector &state);

/// Reads the sector amplitudes out of a dense vector.
FockVector from_dense(std::span<const Amplitude> dense, std::shared_ptr<const FockBasis> basis, std::int64_t t);

/// Probability outside the n-particle sector.
double weight_outside_sector(std::span<const Amplitude> dense, int particles);

/// p(x) = sum of |amp|^2 over configurations occupying x.
std::vector<double> occupation(const FockVector &state);

/// Occupation rows for a history, as (t, x, p) entries.
PositionDistribution occupation_distribution(std::span<const FockVector> history);

/// One-particle propagation with the lattice-gas single-particle matrix
/// exp(i alpha) S(theta), from a unit amplitude at `source` at timestep t0.
/// `seam_phase` multiplies hops across the (N-1, 0) seam.
std::vector<OneComponentField> one_particle_history(
    int cells, std::int64_t source, std::int64_t t0, std::size_t steps, const QlgaParams &params,
    Amplitude seam_phase);

/// Determinant amplitudes for two particles started at cells a < b:
///   A(y1 < y2) = K(y1,a) K(y2,b) - K(y1,b) K(y2,a)
/// where K(., a) and K(., b) are the given one-particle fields. Returns
/// |A|^2 on the two-particle basis of the same ring.
std::vector<double> slater_joint(
    const OneComponentField &from_a, const OneComponentField &from_b, const FockBasis &pair_basis);

/// Parameter point at which the brute-force scan found two-particle dynamics
/// matching determinant factorization.
struct FreeFermionCondition {
    double alpha = 0;
    double beta = 0;
    /// Largest L1 distance between the two joint distributions at the chosen beta.
    double mismatch = 0;
    /// Smallest L1 distance over the other scanned values.
    double runner_up = 0;
};

struct ScanSetup {
    double theta = 0;
    double alpha = 0;
    int cells = 8;
    std::array<std::int64_t, 2> sources{1, 4};
    std::size_t steps = 16;
};

/// L1 distance, maximized over timesteps, between the two-particle joint
/// distribution evolved on the dense 2^N space and the determinant prediction
/// built from antiperiodic one-particle fields (two hard-core particles on a
/// periodic ring pick up a sign whenever one crosses the seam past the other).
double slater_mismatch(const ScanSetup &setup, double beta);

/// Evaluates slater_mismatch at every beta in `betas` and returns the best.
FreeFermionCondition scan_free_fermion_beta(const ScanSetup &setup, std::span<const double> betas);

/// Joint two-particle distribution after `steps` steps from cells a < b at
/// t = 0, predicted by determinants. Requires params to match the validated
/// condition (same alpha, exp(i beta) within 1e-9); throws otherwise.
std::vector<double> slater_two_particle(
    const FreeFermionCondition &validated, const QlgaParams &params, int cells,
    std::array<std::int64_t, 2> sources, std::size_t steps);

/// Occupation p(x) implied by a joint two-particle distribution.
std::vector<double> pair_occupation(std::span<const double> joint, const FockBasis &pair_basis);

}  // namespace qca::qlga

#endif

#ifndef QCA_FIELD_H
#define QCA_FIELD_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qca {

using Amplitude = std::complex<double>;

/// Scalar field on a periodic ring of N cells, tagged with the timestep it
/// belongs to. The pairing used by the partitioned update depends on the
/// parity of `t`, so the tag is part of the state.
struct OneComponentField {
    std::vector<Amplitude> cells;
    std::int64_t t = 0;

    std::size_t size() const { return cells.size(); }
};

/// Two amplitudes per cell. `left` is the amplitude of the cell to the left
/// (the left-exiting channel), `right` the amplitude of the cell itself.
struct Spinor {
    Amplitude left;
    Amplitude right;

    bool operator==(const Spinor &) const = default;
};

struct TwoComponentField {
    std::vector<Spinor> cells;
    std::int64_t t = 0;

    std::size_t size() const { return cells.size(); }
};

struct ProbabilityEntry {
    std::int64_t t;
    std::int64_t x;
    double p;

    bool operator==(const ProbabilityEntry &) const = default;
};

/// Sparse (t, x, p) samples. Entries absent from the list have probability 0.
struct PositionDistribution {
    std::vector<ProbabilityEntry> entries;
};

struct LightconeEntry {
    std::int64_t u;
    std::int64_t v;
    double p;
};

/// Square window 0 <= u, v <= extent of a position distribution.
struct LightconeDistribution {
    std::int64_t extent = 0;
    std::int64_t x0 = 0;
    std::vector<LightconeEntry> entries;
};

/// u = (t + (x - x0)) / 2, v = (t - (x - x0)) / 2.
struct LightconeCoords {
    std::int64_t u;
    std::int64_t v;
    std::int64_t x0;

    bool operator==(const LightconeCoords &) const = default;
};

/// Cell index wrapped onto a ring of `n` cells.
inline std::size_t wrap(std::int64_t x, std::size_t n) {
    auto m = static_cast<std::int64_t>(n);
    auto r = x % m;
    return static_cast<std::size_t>(r < 0 ? r + m : r);
}

/// Throws unless `n` is even and at least 2.
void require_even_ring(std::size_t n);

double norm_sq(std::span<const Amplitude> amps);
double norm_sq(const OneComponentField &field);
double norm_sq(const TwoComponentField &field);

/// |phi_t(x)|^2 for every cell of every field in the history.
PositionDistribution cell_probabilities(std::span<const OneComponentField> history);

/// Incoherent sum of the two mover channels at each position x = t (mod 2):
/// p(t, x) = |phi_t(x-1)|^2 + |phi_t(x)|^2.
PositionDistribution project_position(std::span<const OneComponentField> history);

LightconeCoords to_lightcone(std::int64_t t, std::int64_t x, std::int64_t x0);

struct Event {
    std::int64_t t;
    std::int64_t x;

    bool operator==(const Event &) const = default;
};

Event from_lightcone(const LightconeCoords &c);

/// Resamples a position distribution on the ring of `ring_size` cells into
/// lightcone coordinates about origin x0, covering 0 <= u, v <= extent. Every
/// (u, v) in the window must land on an event t = x (mod 2) that the
/// distribution can carry; events beyond its last timestep are rejected.
LightconeDistribution lightcone_window(
    const PositionDistribution &dist, std::size_t ring_size, std::int64_t x0, std::int64_t extent);

}  // namespace qca

#endif

#include "qca/field.h"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace qca {

void require_even_ring(std::size_t n) {
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument("ring size must be even and >= 2, got " + std::to_string(n));
    }
}

double norm_sq(std::span<const Amplitude> amps) {
    if (amps.empty()) {
        throw std::invalid_argument("empty state");
    }
    double total = 0;
    for (const auto &a : amps) {
        total += std::norm(a);
    }
    return total;
}

double norm_sq(const OneComponentField &field) {
    return norm_sq(std::span<const Amplitude>(field.cells));
}

double norm_sq(const TwoComponentField &field) {
    if (field.cells.empty()) {
        throw std::invalid_argument("empty state");
    }
    double total = 0;
    for (const auto &s : field.cells) {
        total += std::norm(s.left) + std::norm(s.right);
    }
    return total;
}

namespace {

void check_history(std::span<const OneComponentField> history) {
    for (std::size_t k = 1; k < history.size(); k++) {
        if (history[k].t != history[k - 1].t + 1) {
            throw std::invalid_argument("history timesteps are not consecutive");
        }
        if (history[k].size() != history[0].size()) {
            throw std::invalid_argument("history fields differ in size");
        }
    }
    if (!history.empty()) {
        require_even_ring(history[0].size());
        if (history[0].t < 0) {
            throw std::invalid_argument("negative timestep");
        }
    }
}

}  // namespace

PositionDistribution cell_probabilities(std::span<const OneComponentField> history) {
    check_history(history);
    PositionDistribution out;
    for (const auto &f : history) {
        for (std::size_t x = 0; x < f.size(); x++) {
            out.entries.push_back({f.t, static_cast<std::int64_t>(x), std::norm(f.cells[x])});
        }
    }
    return out;
}

PositionDistribution project_position(std::span<const OneComponentField> history) {
    check_history(history);
    PositionDistribution out;
    for (const auto &f : history) {
        auto n = f.size();
        for (auto x = static_cast<std::size_t>(f.t % 2); x < n; x += 2) {
            double p = std::norm(f.cells[wrap(static_cast<std::int64_t>(x) - 1, n)]) + std::norm(f.cells[x]);
            out.entries.push_back({f.t, static_cast<std::int64_t>(x), p});
        }
    }
    return out;
}

LightconeCoords to_lightcone(std::int64_t t, std::int64_t x, std::int64_t x0) {
    auto d = x - x0;
    if ((t + d) % 2 != 0) {
        throw std::invalid_argument(
            "off-sublattice event (t=" + std::to_string(t) + ", x=" + std::to_string(x) +
            ", x0=" + std::to_string(x0) + ")");
    }
    return {(t + d) / 2, (t - d) / 2, x0};
}

Event from_lightcone(const LightconeCoords &c) {
    return {c.u + c.v, c.x0 + c.u - c.v};
}

LightconeDistribution lightcone_window(
    const PositionDistribution &dist, std::size_t ring_size, std::int64_t x0, std::int64_t extent) {
    require_even_ring(ring_size);
    if (extent < 0) {
        throw std::invalid_argument("negative lightcone extent");
    }
    std::map<std::pair<std::int64_t, std::int64_t>, double> lookup;
    for (const auto &e : dist.entries) {
        lookup[{e.t, e.x}] = e.p;
    }
    LightconeDistribution out;
    out.extent = extent;
    out.x0 = x0;
    for (std::int64_t v = 0; v <= extent; v++) {
        for (std::int64_t u = 0; u <= extent; u++) {
            auto ev = from_lightcone({u, v, x0});
            auto x = static_cast<std::int64_t>(wrap(ev.x, ring_size));
            auto it = lookup.find({ev.t, x});
            if (it == lookup.end()) {
                throw std::invalid_argument(
                    "lightcone window needs event (t=" + std::to_string(ev.t) + ", x=" + std::to_string(x) +
                    ") which the distribution does not carry (off-sublattice origin or too few steps)");
            }
            out.entries.push_back({u, v, it->second});
        }
    }
    return out;
}

}  // namespace qca

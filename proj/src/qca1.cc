#include "qca/qca1.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

#include "qca/bessel.h"

namespace qca::qca1 {

namespace {
constexpr Amplitude kI{0, 1};
constexpr double kPeakFloor = 1e-9;
}  // namespace

OneComponentField step(const OneComponentField &field, const PairMatrix &s, Amplitude seam_phase) {
    auto n = field.size();
    require_even_ring(n);
    OneComponentField out;
    out.cells.resize(n);
    out.t = field.t + 1;
    for (std::size_t x = wrap(field.t + 1, 2); x < n; x += 2) {
        std::size_t left = x == 0 ? n - 1 : x - 1;
        Amplitude hop_lr = s(0, 1);
        Amplitude hop_rl = s(1, 0);
        if (x == 0) {
            hop_lr *= seam_phase;
            hop_rl *= seam_phase;
        }
        Amplitude a = field.cells[left];
        Amplitude b = field.cells[x];
        out.cells[left] = s(0, 0) * a + hop_lr * b;
        out.cells[x] = hop_rl * a + s(1, 1) * b;
    }
    return out;
}

OneComponentField step(const OneComponentField &field, double theta) {
    return step(field, build_pair_matrix(theta));
}

std::vector<OneComponentField> evolve(const OneComponentField &init, std::size_t steps, double theta) {
    require_even_ring(init.size());
    PairMatrix s = build_pair_matrix(theta);
    std::vector<OneComponentField> history;
    history.reserve(steps + 1);
    history.push_back(init);
    for (std::size_t k = 0; k < steps; k++) {
        history.push_back(step(history.back(), s));
    }
    return history;
}

OneComponentField right_mover(std::size_t ring_size, std::int64_t x) {
    require_even_ring(ring_size);
    OneComponentField f;
    f.cells.assign(ring_size, Amplitude{0, 0});
    auto cell = wrap(x, ring_size);
    f.cells[cell] = 1;
    f.t = static_cast<std::int64_t>(cell % 2);
    return f;
}

OneComponentField left_mover(std::size_t ring_size, std::int64_t x) {
    require_even_ring(ring_size);
    OneComponentField f;
    f.cells.assign(ring_size, Amplitude{0, 0});
    f.cells[wrap(x - 1, ring_size)] = 1;
    f.t = static_cast<std::int64_t>(wrap(x, ring_size) % 2);
    return f;
}

namespace {

void check_lightcone_point(std::int64_t u, std::int64_t v) {
    if (u < 0 || v < 0) {
        throw std::invalid_argument(
            "lightcone indices must be non-negative, got u=" + std::to_string(u) + " v=" + std::to_string(v));
    }
}

// Counts paths by number of direction reversals, split by final direction.
struct PathCounter {
    std::int64_t length;
    std::vector<std::uint64_t> ending_left;
    std::vector<std::uint64_t> ending_right;

    void walk(std::int64_t done, Mover dir, std::int64_t rights_left, std::int64_t lefts_left, std::int64_t flips) {
        if (done == length) {
            auto &bucket = dir == Mover::Left ? ending_left : ending_right;
            bucket[static_cast<std::size_t>(flips)]++;
            return;
        }
        if (dir == Mover::Right) {
            if (rights_left == 0) {
                return;
            }
            rights_left--;
        } else {
            if (lefts_left == 0) {
                return;
            }
            lefts_left--;
        }
        Mover other = dir == Mover::Right ? Mover::Left : Mover::Right;
        walk(done + 1, dir, rights_left, lefts_left, flips);
        walk(done + 1, other, rights_left, lefts_left, flips + 1);
    }
};

}  // namespace

PropagatorResult propagator_paths(std::int64_t u, std::int64_t v, double theta, Mover start) {
    check_lightcone_point(u, v);
    if (u + v > kMaxPathLength) {
        throw std::invalid_argument(
            "path enumeration limited to u+v <= " + std::to_string(kMaxPathLength) + "; use closed form");
    }
    std::int64_t length = u + v;
    PathCounter counter{
        length,
        std::vector<std::uint64_t>(static_cast<std::size_t>(length + 2), 0),
        std::vector<std::uint64_t>(static_cast<std::size_t>(length + 2), 0)};
    counter.walk(0, start, u, v, 0);

    // Each reversal contributes i sin(theta), each continuation cos(theta).
    Amplitude turn = kI * std::sin(theta);
    double straight = std::cos(theta);
    PropagatorResult out{0, 0, u, v};
    for (std::int64_t f = 0; f <= length; f++) {
        Amplitude weight = 1;
        for (std::int64_t k = 0; k < f; k++) {
            weight *= turn;
        }
        for (std::int64_t k = f; k < length; k++) {
            weight *= straight;
        }
        out.left += static_cast<double>(counter.ending_left[static_cast<std::size_t>(f)]) * weight;
        out.right += static_cast<double>(counter.ending_right[static_cast<std::size_t>(f)]) * weight;
    }
    return out;
}

namespace {

// Sum of terms B (i s)^m c^p where log B is supplied by the caller.
class LogTermSum {
   public:
    LogTermSum(double s, double c) : log_s_(std::log(std::abs(s))), log_c_(std::log(std::abs(c))) {
        sign_s_ = s < 0 ? -1 : 1;
        sign_c_ = c < 0 ? -1 : 1;
    }

    void add(double log_binomials, std::int64_t power_s, std::int64_t power_c) {
        double log_mag = log_binomials + scaled(power_s, log_s_) + scaled(power_c, log_c_);
        if (std::isinf(log_mag) && log_mag < 0) {
            return;
        }
        // i^m
        static constexpr Amplitude kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        Amplitude unit = kIPowers[power_s % 4];
        if (sign_s_ < 0 && power_s % 2 == 1) {
            unit = -unit;
        }
        if (sign_c_ < 0 && power_c % 2 == 1) {
            unit = -unit;
        }
        terms_.push_back({log_mag, unit});
    }

    Amplitude total() const {
        if (terms_.empty()) {
            return 0;
        }
        double peak = -std::numeric_limits<double>::infinity();
        for (const auto &t : terms_) {
            peak = std::max(peak, t.log_mag);
        }
        Amplitude acc = 0;
        for (const auto &t : terms_) {
            acc += std::exp(t.log_mag - peak) * t.unit;
        }
        return acc * std::exp(peak);
    }

   private:
    struct Term {
        double log_mag;
        Amplitude unit;
    };

    static double scaled(std::int64_t power, double log_base) {
        return power == 0 ? 0.0 : static_cast<double>(power) * log_base;
    }

    double log_s_;
    double log_c_;
    int sign_s_;
    int sign_c_;
    std::vector<Term> terms_;
};

// log C(a, j+1) - log C(a, j)
double log_binomial_ratio(std::int64_t a, std::int64_t j) {
    return std::log(static_cast<double>(a - j) / static_cast<double>(j + 1));
}

}  // namespace

PropagatorResult propagator_closed(std::int64_t u, std::int64_t v, double theta) {
    check_lightcone_point(u, v);
    double s = std::sin(theta);
    double c = std::cos(theta);
    std::int64_t n = u + v;
    PropagatorResult out{0, 0, u, v};

    // left: k = 1..min(u, v+1), binomials C(u-1, k-1) C(v, k-1), m = 2k-1.
    if (u >= 1) {
        LogTermSum sum(s, c);
        double log_binomials = 0;
        std::int64_t k_max = std::min(u, v + 1);
        for (std::int64_t k = 1; k <= k_max; k++) {
            if (k > 1) {
                log_binomials += log_binomial_ratio(u - 1, k - 2) + log_binomial_ratio(v, k - 2);
            }
            sum.add(log_binomials, 2 * k - 1, n - (2 * k - 1));
        }
        out.left = sum.total();
    }

    // right: straight path when v = 0, else k = 1..min(u, v) with
    // binomials C(u, k) C(v-1, k-1), m = 2k.
    if (v == 0) {
        LogTermSum sum(s, c);
        sum.add(0, 0, n);
        out.right = sum.total();
    } else {
        LogTermSum sum(s, c);
        double log_binomials = std::log(static_cast<double>(u));
        std::int64_t k_max = std::min(u, v);
        for (std::int64_t k = 1; k <= k_max; k++) {
            if (k > 1) {
                log_binomials += log_binomial_ratio(u, k - 1) + log_binomial_ratio(v - 1, k - 2);
            }
            sum.add(log_binomials, 2 * k, n - 2 * k);
        }
        out.right = sum.total();
    }
    return out;
}

PropagatorResult propagator_left_start(std::int64_t u, std::int64_t v, double theta) {
    auto mirrored = propagator_closed(v, u, theta);
    return {mirrored.right, mirrored.left, u, v};
}

ContinuumLimit bessel_limit(double t, double x, double theta, double eps) {
    double u = (t + x) / 2;
    double v = (t - x) / 2;
    if (!(u > 0 && v > 0)) {
        throw std::invalid_argument("limit form inapplicable on or outside the lightcone (need u, v > 0)");
    }
    if (!(eps > 0)) {
        throw std::invalid_argument("lattice spacing must be positive");
    }
    double tau = 2 * std::sqrt(u * v);
    double z = tau * theta;
    ContinuumLimit out;
    out.tau = tau;
    out.left = kI * (eps * theta * bessel_j0(z));
    out.right = -(2 * u * eps * theta / tau) * bessel_j1(z);
    return out;
}

double measure_speed(const PositionDistribution &dist, std::int64_t x0, std::size_t ring_size) {
    require_even_ring(ring_size);
    auto half = static_cast<std::int64_t>(ring_size / 2);
    // t -> (best p, displacement)
    std::map<std::int64_t, std::pair<double, std::int64_t>> peaks;
    for (const auto &e : dist.entries) {
        auto d = static_cast<std::int64_t>(wrap(e.x - x0, ring_size));
        if (d > half) {
            d -= static_cast<std::int64_t>(ring_size);
        }
        if (d <= 0) {
            continue;
        }
        auto [it, inserted] = peaks.try_emplace(e.t, e.p, d);
        if (!inserted && (e.p > it->second.first || (e.p == it->second.first && d > it->second.second))) {
            it->second = {e.p, d};
        }
    }

    double n = 0, sum_t = 0, sum_d = 0, sum_tt = 0, sum_td = 0;
    for (const auto &[t, peak] : peaks) {
        if (peak.first < kPeakFloor) {
            continue;
        }
        auto tt = static_cast<double>(t);
        auto dd = static_cast<double>(peak.second);
        n += 1;
        sum_t += tt;
        sum_d += dd;
        sum_tt += tt * tt;
        sum_td += tt * dd;
    }
    if (n < 2) {
        throw std::invalid_argument("speed needs at least 2 timesteps with a peak right of the origin");
    }
    return (n * sum_td - sum_t * sum_d) / (n * sum_tt - sum_t * sum_t);
}

}  // namespace qca::qca1

#include "qca/qlga.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qca/qca1.h"

namespace qca::qlga {

FockBasis::FockBasis(int cells, int particles) : cells_(cells), particles_(particles) {
    if (cells < 0 || cells > kMaxCells) {
        throw std::invalid_argument("cell count must be in [0, " + std::to_string(kMaxCells) + "]");
    }
    if (particles < 0 || particles > cells) {
        throw std::invalid_argument(
            "particle count " + std::to_string(particles) + " does not fit on " + std::to_string(cells) + " cells");
    }
    auto n = static_cast<std::size_t>(cells);
    auto k = static_cast<std::size_t>(particles);
    binomial_.assign(n + 1, std::vector<std::uint64_t>(k + 2, 0));
    for (std::size_t a = 0; a <= n; a++) {
        binomial_[a][0] = 1;
        for (std::size_t b = 1; b <= std::min(a, k + 1); b++) {
            auto sum = binomial_[a - 1][b - 1] + (b <= a - 1 ? binomial_[a - 1][b] : 0);
            // Saturate; anything above the cap is rejected below.
            binomial_[a][b] = std::min<std::uint64_t>(sum, kMaxSectorSize + 1);
        }
    }
    auto dimension = binomial_[n][k];
    if (dimension > kMaxSectorSize) {
        throw std::invalid_argument("sector dimension C(N, n) exceeds " + std::to_string(kMaxSectorSize));
    }

    states_.reserve(dimension);
    if (particles == 0) {
        states_.push_back(0);
        return;
    }
    // Gosper's hack: next larger integer with the same popcount.
    std::uint64_t limit = cells == 64 ? 0 : (std::uint64_t{1} << cells);
    std::uint64_t x = (std::uint64_t{1} << particles) - 1;
    while (states_.size() < dimension) {
        states_.push_back(x);
        std::uint64_t lowest = x & (~x + 1);
        std::uint64_t ripple = x + lowest;
        x = (((ripple ^ x) >> 2) / lowest) | ripple;
    }
    if (!states_.empty() && states_.back() >= limit) {
        throw std::logic_error("basis enumeration ran past the ring");
    }
}

std::size_t FockBasis::index_of(std::uint64_t mask) const {
    if (std::popcount(mask) != particles_ || (cells_ < 64 && (mask >> cells_) != 0)) {
        throw std::invalid_argument("configuration is not in the sector");
    }
    // Rank of a set in colex order: sum over the i-th set bit p_i of C(p_i, i+1).
    std::uint64_t rank = 0;
    std::size_t i = 0;
    while (mask != 0) {
        auto p = static_cast<std::size_t>(std::countr_zero(mask));
        rank += binomial_[p][i + 1];
        mask &= mask - 1;
        i++;
    }
    return static_cast<std::size_t>(rank);
}

std::shared_ptr<const FockBasis> enumerate_basis(int cells, int particles) {
    return std::make_shared<const FockBasis>(cells, particles);
}

double norm_sq(const FockVector &state) {
    return qca::norm_sq(std::span<const Amplitude>(state.amps));
}

namespace {

std::uint64_t mask_of(int cells, std::span<const std::int64_t> positions) {
    std::uint64_t mask = 0;
    for (auto x : positions) {
        if (x < 0 || x >= cells) {
            throw std::invalid_argument("particle position " + std::to_string(x) + " outside the ring");
        }
        auto bit = std::uint64_t{1} << x;
        if (mask & bit) {
            throw std::invalid_argument("two particles in cell " + std::to_string(x));
        }
        mask |= bit;
    }
    return mask;
}

void require_even_cells(int cells) {
    if (cells < 2 || cells % 2 != 0) {
        throw std::invalid_argument("ring size must be even and >= 2, got " + std::to_string(cells));
    }
}

}  // namespace

FockVector configuration(int cells, std::span<const std::int64_t> positions, std::int64_t t) {
    auto mask = mask_of(cells, positions);
    FockVector out;
    out.basis = enumerate_basis(cells, static_cast<int>(positions.size()));
    out.amps.assign(out.basis->size(), Amplitude{0, 0});
    out.amps[out.basis->index_of(mask)] = 1;
    out.t = t;
    return out;
}

FockVector single_particle_superposition(int cells, std::span<const std::int64_t> positions, std::int64_t t) {
    if (positions.empty()) {
        throw std::invalid_argument("superposition needs at least one position");
    }
    mask_of(cells, positions);
    FockVector out;
    out.basis = enumerate_basis(cells, 1);
    out.amps.assign(out.basis->size(), Amplitude{0, 0});
    double a = 1 / std::sqrt(static_cast<double>(positions.size()));
    for (auto x : positions) {
        out.amps[out.basis->index_of(std::uint64_t{1} << x)] = a;
    }
    out.t = t;
    return out;
}

FockVector step(const FockVector &state, const QlgaParams &params) {
    const auto &basis = *state.basis;
    int n = basis.cells();
    require_even_cells(n);
    auto s = build_qlga_matrix(params.theta, params.alpha, params.beta).s;

    // Pair (x-1, x) for x = t+1 (mod 2); first = x-1.
    struct Pair {
        int first;
        int second;
    };
    std::vector<Pair> pairs;
    for (int x = static_cast<int>(wrap(state.t + 1, 2)); x < n; x += 2) {
        pairs.push_back({x == 0 ? n - 1 : x - 1, x});
    }

    FockVector out;
    out.basis = state.basis;
    out.amps.assign(basis.size(), Amplitude{0, 0});
    out.t = state.t + 1;

    std::vector<Pair> singles;
    for (std::size_t j = 0; j < basis.size(); j++) {
        auto target = basis.state(j);
        Amplitude prefactor = 1;
        singles.clear();
        for (const auto &p : pairs) {
            bool a = (target >> p.first) & 1;
            bool b = (target >> p.second) & 1;
            if (a && b) {
                prefactor *= s(3, 3);
            } else if (a || b) {
                singles.push_back(p);
            }
        }
        // The scattering matrix is symmetric, so the amplitude from source to
        // target equals the one from target to source: enumerate sources by
        // choosing, per singly occupied pair, whether the particle hopped.
        Amplitude acc = 0;
        auto combos = std::uint64_t{1} << singles.size();
        for (std::uint64_t choice = 0; choice < combos; choice++) {
            auto source = target;
            Amplitude coef = prefactor;
            for (std::size_t k = 0; k < singles.size(); k++) {
                const auto &p = singles[k];
                int target_occ = ((target >> p.first) & 1) ? 1 : 2;
                if ((choice >> k) & 1) {
                    source ^= (std::uint64_t{1} << p.first) | (std::uint64_t{1} << p.second);
                    coef *= s(static_cast<std::size_t>(target_occ), static_cast<std::size_t>(3 - target_occ));
                } else {
                    coef *= s(static_cast<std::size_t>(target_occ), static_cast<std::size_t>(target_occ));
                }
            }
            acc += coef * state.amps[basis.index_of(source)];
        }
        out.amps[j] = acc;
    }
    return out;
}

std::vector<FockVector> evolve(const FockVector &init, std::size_t steps, const QlgaParams &params) {
    std::vector<FockVector> history;
    history.reserve(steps + 1);
    history.push_back(init);
    for (std::size_t k = 0; k < steps; k++) {
        history.push_back(step(history.back(), params));
    }
    return history;
}

std::vector<Amplitude> full_space_step(
    std::span<const Amplitude> dense, int cells, std::int64_t t, const QlgaParams &params) {
    if (cells > kMaxDenseCells) {
        throw std::invalid_argument("dense oracle limited to " + std::to_string(kMaxDenseCells) + " cells");
    }
    require_even_cells(cells);
    auto dim = std::size_t{1} << cells;
    if (dense.size() != dim) {
        throw std::invalid_argument("dense vector must have 2^N entries");
    }
    auto s = build_qlga_matrix(params.theta, params.alpha, params.beta).s;
    std::vector<Amplitude> out(dense.begin(), dense.end());
    for (int x = static_cast<int>(wrap(t + 1, 2)); x < cells; x += 2) {
        auto first = std::size_t{1} << (x == 0 ? cells - 1 : x - 1);
        auto second = std::size_t{1} << x;
        for (std::size_t base = 0; base < dim; base++) {
            if (base & (first | second)) {
                continue;
            }
            std::array<std::size_t, 4> idx{base, base | first, base | second, base | first | second};
            std::array<Amplitude, 4> in{out[idx[0]], out[idx[1]], out[idx[2]], out[idx[3]]};
            for (std::size_t r = 0; r < 4; r++) {
                Amplitude acc = 0;
                for (std::size_t c = 0; c < 4; c++) {
                    acc += s(r, c) * in[c];
                }
                out[idx[r]] = acc;
            }
        }
    }
    return out;
}

std::vector<Amplitude> to_dense(const FockVector &state) {
    int n = state.basis->cells();
    if (n > kMaxDenseCells) {
        throw std::invalid_argument("dense oracle limited to " + std::to_string(kMaxDenseCells) + " cells");
    }
    std::vector<Amplitude> dense(std::size_t{1} << n, Amplitude{0, 0});
    for (std::size_t j = 0; j < state.amps.size(); j++) {
        dense[state.basis->state(j)] = state.amps[j];
    }
    return dense;
}

FockVector from_dense(std::span<const Amplitude> dense, std::shared_ptr<const FockBasis> basis, std::int64_t t) {
    if (dense.size() != (std::size_t{1} << basis->cells())) {
        throw std::invalid_argument("dense vector must have 2^N entries");
    }
    FockVector out;
    out.amps.reserve(basis->size());
    for (auto mask : basis->states()) {
        out.amps.push_back(dense[mask]);
    }
    out.basis = std::move(basis);
    out.t = t;
    return out;
}

double weight_outside_sector(std::span<const Amplitude> dense, int particles) {
    double total = 0;
    for (std::size_t i = 0; i < dense.size(); i++) {
        if (std::popcount(i) != particles) {
            total += std::norm(dense[i]);
        }
    }
    return total;
}

std::vector<double> occupation(const FockVector &state) {
    std::vector<double> p(static_cast<std::size_t>(state.basis->cells()), 0.0);
    for (std::size_t j = 0; j < state.amps.size(); j++) {
        double w = std::norm(state.amps[j]);
        for (auto mask = state.basis->state(j); mask != 0; mask &= mask - 1) {
            p[static_cast<std::size_t>(std::countr_zero(mask))] += w;
        }
    }
    return p;
}

PositionDistribution occupation_distribution(std::span<const FockVector> history) {
    PositionDistribution out;
    for (const auto &state : history) {
        auto p = occupation(state);
        for (std::size_t x = 0; x < p.size(); x++) {
            out.entries.push_back({state.t, static_cast<std::int64_t>(x), p[x]});
        }
    }
    return out;
}

std::vector<OneComponentField> one_particle_history(
    int cells, std::int64_t source, std::int64_t t0, std::size_t steps, const QlgaParams &params,
    Amplitude seam_phase) {
    require_even_cells(cells);
    if (source < 0 || source >= cells) {
        throw std::invalid_argument("source cell outside the ring");
    }
    PairMatrix m = std::polar(1.0, params.alpha) * build_pair_matrix(params.theta);
    OneComponentField f;
    f.cells.assign(static_cast<std::size_t>(cells), Amplitude{0, 0});
    f.cells[static_cast<std::size_t>(source)] = 1;
    f.t = t0;
    std::vector<OneComponentField> history{f};
    history.reserve(steps + 1);
    for (std::size_t k = 0; k < steps; k++) {
        history.push_back(qca1::step(history.back(), m, seam_phase));
    }
    return history;
}

std::vector<double> slater_joint(
    const OneComponentField &from_a, const OneComponentField &from_b, const FockBasis &pair_basis) {
    if (pair_basis.particles() != 2 || static_cast<std::size_t>(pair_basis.cells()) != from_a.size() ||
        from_a.size() != from_b.size()) {
        throw std::invalid_argument("determinant needs a two-particle basis matching the one-particle fields");
    }
    std::vector<double> joint;
    joint.reserve(pair_basis.size());
    for (auto mask : pair_basis.states()) {
        auto y1 = static_cast<std::size_t>(std::countr_zero(mask));
        auto y2 = static_cast<std::size_t>(63 - std::countl_zero(mask));
        Amplitude det = from_a.cells[y1] * from_b.cells[y2] - from_b.cells[y1] * from_a.cells[y2];
        joint.push_back(std::norm(det));
    }
    return joint;
}

namespace {

void check_sources(const std::array<std::int64_t, 2> &sources) {
    if (!(sources[0] < sources[1])) {
        throw std::invalid_argument("determinant sources must be ordered a < b");
    }
}

double l1(std::span<const double> a, std::span<const double> b) {
    double total = 0;
    for (std::size_t k = 0; k < a.size(); k++) {
        total += std::abs(a[k] - b[k]);
    }
    return total;
}

}  // namespace

double slater_mismatch(const ScanSetup &setup, double beta) {
    check_sources(setup.sources);
    QlgaParams params{setup.theta, setup.alpha, beta};
    auto basis = enumerate_basis(setup.cells, 2);
    auto dense = to_dense(configuration(setup.cells, setup.sources, 0));
    // Two particles: one crossing the seam passes the other, hence -1.
    auto from_a = one_particle_history(setup.cells, setup.sources[0], 0, setup.steps, params, -1.0);
    auto from_b = one_particle_history(setup.cells, setup.sources[1], 0, setup.steps, params, -1.0);

    double worst = 0;
    for (std::size_t t = 0; t <= setup.steps; t++) {
        auto sector = from_dense(dense, basis, static_cast<std::int64_t>(t));
        std::vector<double> exact;
        exact.reserve(sector.amps.size());
        for (const auto &a : sector.amps) {
            exact.push_back(std::norm(a));
        }
        auto predicted = slater_joint(from_a[t], from_b[t], *basis);
        worst = std::max(worst, l1(exact, predicted));
        if (t < setup.steps) {
            dense = full_space_step(dense, setup.cells, static_cast<std::int64_t>(t), params);
        }
    }
    return worst;
}

FreeFermionCondition scan_free_fermion_beta(const ScanSetup &setup, std::span<const double> betas) {
    if (betas.empty()) {
        throw std::invalid_argument("empty beta grid");
    }
    std::vector<double> mismatch;
    mismatch.reserve(betas.size());
    for (double b : betas) {
        mismatch.push_back(slater_mismatch(setup, b));
    }
    auto best = static_cast<std::size_t>(std::min_element(mismatch.begin(), mismatch.end()) - mismatch.begin());
    FreeFermionCondition out;
    out.alpha = setup.alpha;
    out.beta = betas[best];
    out.mismatch = mismatch[best];
    out.runner_up = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < mismatch.size(); k++) {
        if (k != best) {
            out.runner_up = std::min(out.runner_up, mismatch[k]);
        }
    }
    return out;
}

std::vector<double> slater_two_particle(
    const FreeFermionCondition &validated, const QlgaParams &params, int cells,
    std::array<std::int64_t, 2> sources, std::size_t steps) {
    check_sources(sources);
    bool alpha_ok = std::abs(params.alpha - validated.alpha) <= 1e-12;
    bool beta_ok = std::abs(std::polar(1.0, params.beta) - std::polar(1.0, validated.beta)) <= 1e-9;
    if (!alpha_ok || !beta_ok) {
        throw std::domain_error("determinant factorization used outside the validated free-particle condition");
    }
    auto basis = enumerate_basis(cells, 2);
    auto from_a = one_particle_history(cells, sources[0], 0, steps, params, -1.0);
    auto from_b = one_particle_history(cells, sources[1], 0, steps, params, -1.0);
    return slater_joint(from_a.back(), from_b.back(), *basis);
}

std::vector<double> pair_occupation(std::span<const double> joint, const FockBasis &pair_basis) {
    if (joint.size() != pair_basis.size()) {
        throw std::invalid_argument("joint distribution does not match the basis");
    }
    std::vector<double> p(static_cast<std::size_t>(pair_basis.cells()), 0.0);
    for (std::size_t j = 0; j < joint.size(); j++) {
        for (auto mask = pair_basis.state(j); mask != 0; mask &= mask - 1) {
            p[static_cast<std::size_t>(std::countr_zero(mask))] += joint[j];
        }
    }
    return p;
}

}  // namespace qca::qlga

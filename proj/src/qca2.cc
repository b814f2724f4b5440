#include "qca/qca2.h"

#include <stdexcept>

namespace qca::qca2 {

namespace {

Spinor apply(const Mat2 &m, const Spinor &s) {
    return {m(0, 0) * s.left + m(0, 1) * s.right, m(1, 0) * s.left + m(1, 1) * s.right};
}

TwoComponentField zero_field(std::size_t ring_size, std::int64_t t) {
    require_even_ring(ring_size);
    TwoComponentField f;
    f.cells.assign(ring_size, Spinor{});
    f.t = t;
    return f;
}

}  // namespace

TwoComponentField step(const TwoComponentField &psi, const BlockBandWeights &w) {
    auto n = psi.size();
    require_even_ring(n);
    TwoComponentField out;
    out.cells.resize(n);
    out.t = psi.t + 1;
    for (std::size_t x = 0; x < n; x++) {
        const Spinor &from_left = psi.cells[x == 0 ? n - 1 : x - 1];
        const Spinor &from_right = psi.cells[x + 1 == n ? 0 : x + 1];
        Spinor a = apply(w.minus, from_left);
        Spinor b = apply(w.zero, psi.cells[x]);
        Spinor c = apply(w.plus, from_right);
        out.cells[x] = {a.left + b.left + c.left, a.right + b.right + c.right};
    }
    return out;
}

TwoComponentField step(const TwoComponentField &psi, double theta, double rho) {
    return step(psi, build_two_component_weights(theta, rho));
}

std::vector<TwoComponentField> evolve(const TwoComponentField &init, std::size_t steps, double theta, double rho) {
    require_even_ring(init.size());
    auto w = build_two_component_weights(theta, rho);
    std::vector<TwoComponentField> history;
    history.reserve(steps + 1);
    history.push_back(init);
    for (std::size_t k = 0; k < steps; k++) {
        history.push_back(step(history.back(), w));
    }
    return history;
}

PositionDistribution probability(const TwoComponentField &psi) {
    PositionDistribution out;
    out.entries.reserve(psi.size());
    for (std::size_t x = 0; x < psi.size(); x++) {
        const auto &s = psi.cells[x];
        out.entries.push_back({psi.t, static_cast<std::int64_t>(x), std::norm(s.left) + std::norm(s.right)});
    }
    return out;
}

PositionDistribution probability(const std::vector<TwoComponentField> &history) {
    PositionDistribution out;
    for (const auto &psi : history) {
        auto row = probability(psi);
        out.entries.insert(out.entries.end(), row.entries.begin(), row.entries.end());
    }
    return out;
}

TwoComponentField right_mover(std::size_t ring_size, std::int64_t x) {
    auto cell = wrap(x, ring_size);
    auto f = zero_field(ring_size, static_cast<std::int64_t>(cell % 2));
    f.cells[cell].right = 1;
    return f;
}

TwoComponentField left_mover(std::size_t ring_size, std::int64_t x) {
    auto cell = wrap(x, ring_size);
    auto f = zero_field(ring_size, static_cast<std::int64_t>(cell % 2));
    f.cells[cell].left = 1;
    return f;
}

TwoComponentField embed(const OneComponentField &phi) {
    auto n = phi.size();
    auto psi = zero_field(n, phi.t);
    for (auto x = wrap(phi.t, 2); x < n; x += 2) {
        psi.cells[x] = {phi.cells[x == 0 ? n - 1 : x - 1], phi.cells[x]};
    }
    return psi;
}

OneComponentField restrict_to_qca1(const TwoComponentField &psi) {
    auto n = psi.size();
    require_even_ring(n);
    OneComponentField phi;
    phi.cells.assign(n, Amplitude{0, 0});
    phi.t = psi.t;
    for (std::size_t x = 0; x < n; x++) {
        const auto &s = psi.cells[x];
        if (x % 2 == wrap(psi.t, 2)) {
            phi.cells[x == 0 ? n - 1 : x - 1] = s.left;
            phi.cells[x] = s.right;
        } else if (s.left != Amplitude{0, 0} || s.right != Amplitude{0, 0}) {
            throw std::invalid_argument("two-component field has support off the x = t (mod 2) sublattice");
        }
    }
    return phi;
}

double off_sublattice_weight(const TwoComponentField &psi) {
    double total = 0;
    for (std::size_t x = 0; x < psi.size(); x++) {
        if (x % 2 != wrap(psi.t, 2)) {
            total += std::norm(psi.cells[x].left) + std::norm(psi.cells[x].right);
        }
    }
    return total;
}

TwoComponentField reflect(const TwoComponentField &psi) {
    auto n = psi.size();
    TwoComponentField out;
    out.cells.resize(n);
    out.t = psi.t;
    for (std::size_t x = 0; x < n; x++) {
        const auto &s = psi.cells[x];
        out.cells[wrap(-static_cast<std::int64_t>(x), n)] = {s.right, s.left};
    }
    return out;
}

}  // namespace qca::qca2

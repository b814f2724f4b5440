#include "qca/qca2.h"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "gtest/gtest.h"
#include "qca/qca1.h"
#include "test_util.h"

using namespace qca;

namespace {

constexpr double kPi = std::numbers::pi;

TwoComponentField random_spinor_field(std::mt19937_64 &rng, std::size_t n, std::int64_t t) {
    auto amps = qca::testing::random_unit_vector(rng, 2 * n);
    TwoComponentField psi;
    psi.t = t;
    for (std::size_t x = 0; x < n; x++) {
        psi.cells.push_back({amps[2 * x], amps[2 * x + 1]});
    }
    return psi;
}

double max_diff(const TwoComponentField &a, const TwoComponentField &b) {
    double worst = 0;
    for (std::size_t x = 0; x < a.size(); x++) {
        worst = std::max(worst, std::abs(a.cells[x].left - b.cells[x].left));
        worst = std::max(worst, std::abs(a.cells[x].right - b.cells[x].right));
    }
    return worst;
}

double total(const PositionDistribution &d) {
    double s = 0;
    for (const auto &e : d.entries) {
        s += e.p;
    }
    return s;
}

}  // namespace

TEST(qca2_probability, examples) {
    auto psi = qca2::right_mover(8, 0);
    auto d = qca2::probability(psi);
    for (const auto &e : d.entries) {
        EXPECT_EQ(e.p, e.x == 0 ? 1.0 : 0.0);
    }
    double h = 1 / std::sqrt(2.0);
    TwoComponentField one{std::vector<Spinor>(4), 0};
    one.cells[2] = {Amplitude(h), Amplitude(0, h)};
    EXPECT_NEAR(total(qca2::probability(one)), 1.0, 1e-15);

    std::mt19937_64 rng(21);
    EXPECT_NEAR(total(qca2::probability(random_spinor_field(rng, 20, 0))), 1.0, 1e-12);
}

TEST(qca2_embed, right_mover_and_round_trip) {
    auto psi = qca2::embed(qca1::right_mover(8, 0));
    EXPECT_EQ(psi.cells[0].right, Amplitude(1));
    EXPECT_EQ(psi.cells[0].left, Amplitude(0));
    EXPECT_EQ(qca2::off_sublattice_weight(psi), 0.0);
    for (std::size_t x = 1; x < 8; x++) {
        EXPECT_EQ(psi.cells[x], (Spinor{0, 0}));
    }
    EXPECT_EQ(psi.cells, qca2::right_mover(8, 0).cells);
    EXPECT_EQ(qca2::embed(qca1::left_mover(8, 3)).cells, qca2::left_mover(8, 3).cells);

    std::mt19937_64 rng(22);
    for (std::int64_t t : {0, 1}) {
        OneComponentField phi{qca::testing::random_unit_vector(rng, 12), t};
        auto back = qca2::restrict_to_qca1(qca2::embed(phi));
        EXPECT_EQ(back.cells, phi.cells);
        EXPECT_EQ(back.t, t);
    }
}

TEST(qca2_embed, restrict_rejects_mixed_support) {
    std::mt19937_64 rng(23);
    EXPECT_THROW(qca2::restrict_to_qca1(random_spinor_field(rng, 8, 0)), std::invalid_argument);
}

TEST(qca2_step, rho_zero_commutes_with_embedding) {
    std::mt19937_64 rng(24);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    for (int trial = 0; trial < 50; trial++) {
        double theta = angle(rng);
        OneComponentField phi{qca::testing::random_unit_vector(rng, 16), trial % 2};
        auto a = qca2::embed(qca1::step(phi, theta));
        auto b = qca2::step(qca2::embed(phi), theta, 0.0);
        EXPECT_EQ(a.t, b.t);
        EXPECT_LE(max_diff(a, b), 1e-12);
    }
}

TEST(qca2_step, rho_zero_never_leaks_between_sublattices) {
    auto history = qca2::evolve(qca2::right_mover(32, 0), 200, 0.7, 0.0);
    for (const auto &psi : history) {
        ASSERT_EQ(qca2::off_sublattice_weight(psi), 0.0);
    }
}

TEST(qca2_step, nonzero_rho_leaks) {
    auto history = qca2::evolve(qca2::right_mover(32, 0), 2, kPi / 4, kPi / 6);
    EXPECT_GT(qca2::off_sublattice_weight(history[2]), 0.0);
}

TEST(qca2_step, rho_half_pi_is_static) {
    std::mt19937_64 rng(25);
    auto history = qca2::evolve(random_spinor_field(rng, 16, 0), 10, kPi / 4, kPi / 2);
    auto first = qca2::probability(history.front());
    for (const auto &psi : history) {
        auto d = qca2::probability(psi);
        for (std::size_t k = 0; k < d.entries.size(); k++) {
            ASSERT_NEAR(d.entries[k].p, first.entries[k].p, 1e-14);
        }
    }
}

TEST(qca2_step, conserves_norm_on_grid) {
    std::mt19937_64 rng(26);
    auto init = random_spinor_field(rng, 32, 0);
    for (int a = 0; a < 8; a++) {
        for (int b = 0; b < 8; b++) {
            double theta = 2 * kPi * a / 8 + 0.1, rho = 2 * kPi * b / 8 + 0.05;
            auto w = build_two_component_weights(theta, rho);
            auto psi = init;
            for (int k = 0; k < 4096; k++) {
                psi = qca2::step(psi, w);
            }
            ASSERT_NEAR(norm_sq(psi), 1.0, 1e-9) << theta << " " << rho;
        }
    }
}

TEST(qca2_step, parity_covariance) {
    std::mt19937_64 rng(27);
    for (double rho : {0.0, kPi / 6, kPi / 3, 1.1}) {
        auto psi = random_spinor_field(rng, 24, 0);
        auto a = qca2::reflect(psi);
        auto b = psi;
        for (int k = 0; k < 30; k++) {
            a = qca2::step(a, kPi / 4, rho);
            b = qca2::step(b, kPi / 4, rho);
        }
        EXPECT_LE(max_diff(a, qca2::reflect(b)), 1e-12) << rho;
    }
}

TEST(qca2_step, larger_rho_is_slower) {
    std::size_t n = 256;
    std::int64_t x0 = 128;
    auto speed = [&](double rho) {
        auto history = qca2::evolve(qca2::right_mover(n, x0), 64, kPi / 4, rho);
        return qca1::measure_speed(qca2::probability(history), x0, n);
    };
    double slow = speed(kPi / 3);
    double fast = speed(kPi / 6);
    EXPECT_LT(slow, fast);
    EXPECT_NEAR(speed(0.0), qca1::measure_speed(
                                project_position(qca1::evolve(qca1::right_mover(n, x0), 64, kPi / 4)), x0, n),
                1e-12);
}

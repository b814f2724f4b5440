// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "qca/field.h"
#include "qca/qca1.h"
#include "qca/qca2.h"
#include "qca/qlga.h"
#include "qca/unitarity.h"

using namespace qca;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char *pattern, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

Amplitude gaussian(std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    return {g(rng), g(rng)};
}

std::vector<Amplitude> unit_vector(std::mt19937_64 &rng, std::size_t n) {
    std::vector<Amplitude> v(n);
    double total = 0;
    for (auto &a : v) {
        a = gaussian(rng);
        total += std::norm(a);
    }
    for (auto &a : v) {
        a /= std::sqrt(total);
    }
    return v;
}

double max_abs(const std::vector<Amplitude> &v) {
    double m = 0;
    for (auto a : v) {
        m = std::max(m, std::abs(a));
    }
    return m;
}

Outcome no_go_classification() {
    constexpr double kTol = 1e-10;
    constexpr int kTrials = 10000;
    std::mt19937_64 rng(1001);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    std::uniform_real_distribution<double> unit(0, 1);
    int counterexamples = 0;
    int unitary_random = 0;

    for (int r = 1; r <= 3; r++) {
        auto width = static_cast<std::size_t>(2 * r + 1);
        std::uniform_int_distribution<std::size_t> slot(0, width - 1);
        for (int trial = 0; trial < kTrials; trial++) {
            // Random inputs: dense Gaussian, normalized, and sparse unit-modulus mixes.
            std::vector<Amplitude> w(width, 0);
            switch (trial % 3) {
                case 0:
                    for (auto &a : w) {
                        a = gaussian(rng);
                    }
                    break;
                case 1:
                    w = unit_vector(rng, width);
                    break;
                default:
                    for (int k = 0; k < 1 + trial % 2; k++) {
                        w[slot(rng)] = std::polar(unit(rng) < 0.5 ? 1.0 : unit(rng), angle(rng));
                    }
            }
            try {
                ScalarBandWeights weights(w);
                auto verdict = classify_no_go(weights, kTol);
                bool passes = max_abs(scalar_band_residuals(weights)) <= kTol;
                unitary_random += passes;
                if (passes != std::holds_alternative<TrivialVerdict>(verdict)) {
                    counterexamples++;
                }
            } catch (const std::exception &) {
                counterexamples++;
            }

            // Constructed translation times phase, and its perturbation.
            auto e = static_cast<std::int64_t>(slot(rng)) - r;
            auto phase = std::polar(1.0, angle(rng));
            std::vector<Amplitude> shift(width, 0);
            shift[static_cast<std::size_t>(e + r)] = phase;
            try {
                auto verdict = classify_no_go(ScalarBandWeights(shift), kTol);
                const auto *t = std::get_if<TrivialVerdict>(&verdict);
                if (t == nullptr || t->shift != -e || std::abs(t->phase - phase) > 1e-12) {
                    counterexamples++;
                }
                auto perturbed = shift;
                double size = 1e-6 * (1 + 9 * unit(rng));
                auto k = slot(rng);
                if (unit(rng) < 0.5 && k != static_cast<std::size_t>(e + r)) {
                    perturbed[k] += std::polar(size, angle(rng));
                } else {
                    perturbed[static_cast<std::size_t>(e + r)] *= 1 + size;
                }
                if (!std::holds_alternative<NonUnitaryVerdict>(classify_no_go(ScalarBandWeights(perturbed), kTol))) {
                    counterexamples++;
                }
            } catch (const std::exception &) {
                counterexamples++;
            }
        }
    }
    return {counterexamples == 0,
            std::to_string(3 * kTrials) + " random (" + std::to_string(unitary_random) + " unitary), " +
                std::to_string(3 * kTrials) + " shifts, " + std::to_string(3 * kTrials) +
                " perturbations; counterexamples=" + std::to_string(counterexamples)};
}

Outcome propagator_oracles() {
    double worst_paths = 0;
    for (double theta : {0.0, kPi / 12, kPi / 6, kPi / 4, kPi / 3}) {
        for (std::int64_t n = 0; n <= 20; n++) {
            for (std::int64_t u = 0; u <= n; u++) {
                auto a = qca1::propagator_closed(u, n - u, theta);
                auto b = qca1::propagator_paths(u, n - u, theta);
                worst_paths = std::max({worst_paths, std::abs(a.left - b.left), std::abs(a.right - b.right)});
            }
        }
    }
    double worst_evolution = 0;
    std::size_t ring = 128;
    std::int64_t x0 = 64;
    for (double theta : {0.0, kPi / 12, kPi / 6, kPi / 4, kPi / 3}) {
        auto history = qca1::evolve(qca1::right_mover(ring, x0), 24, theta);
        for (const auto &f : history) {
            for (std::int64_t u = 0; u <= f.t; u++) {
                auto r = qca1::propagator_closed(u, f.t - u, theta);
                std::int64_t x = x0 + 2 * u - f.t;
                worst_evolution = std::max(
                    {worst_evolution, std::abs(r.right - f.cells[wrap(x, ring)]),
                     std::abs(r.left - f.cells[wrap(x - 1, ring)])});
            }
        }
    }
    return {worst_paths <= 1e-10 && worst_evolution <= 1e-10,
            fmt("closed vs paths max %.3g; closed vs evolution max %.3g", worst_paths, worst_evolution)};
}

Outcome unitarity() {
    std::mt19937_64 rng(1003);
    OneComponentField phi{unit_vector(rng, 256), 0};
    auto s = build_pair_matrix(kPi / 6);
    for (int k = 0; k < 4096; k++) {
        phi = qca1::step(phi, s);
    }
    double d1 = std::abs(norm_sq(phi) - 1);

    auto amps = unit_vector(rng, 512);
    TwoComponentField psi;
    for (std::size_t x = 0; x < 256; x++) {
        psi.cells.push_back({amps[2 * x], amps[2 * x + 1]});
    }
    auto w = build_two_component_weights(kPi / 4, kPi / 6);
    for (int k = 0; k < 4096; k++) {
        psi = qca2::step(psi, w);
    }
    double d2 = std::abs(norm_sq(psi) - 1);

    qlga::FockVector gas;
    gas.basis = qlga::enumerate_basis(20, 2);
    gas.amps = unit_vector(rng, gas.basis->size());
    for (int k = 0; k < 4096; k++) {
        gas = qlga::step(gas, {kPi / 4, 0, -3 * kPi / 4});
    }
    double d3 = std::abs(qlga::norm_sq(gas) - 1);
    return {d1 <= 1e-9 && d2 <= 1e-9 && d3 <= 1e-9,
            fmt("|norm-1| after 4096 steps: qca1 %.3g, qca2 %.3g, qlga %.3g", d1, d2, d3)};
}

Outcome speeds() {
    std::size_t ring = 256;
    std::int64_t x0 = 128;
    auto speed = [&](double theta) {
        return qca1::measure_speed(project_position(qca1::evolve(qca1::right_mover(ring, x0), 64, theta)), x0, ring);
    };
    double free = speed(0);
    double frozen = speed(kPi / 2);
    double quarter = speed(kPi / 4);
    bool pass = std::abs(free - 1) <= 1e-9 && frozen == 0 && quarter >= 0.60 && quarter <= 0.75;
    return {pass, fmt("theta=0: %.12g, theta=pi/2: %.3g, theta=pi/4: %.4f", free, frozen, quarter)};
}

Outcome causality() {
    std::size_t ring = 128;
    std::int64_t x0 = 64;
    std::size_t violations = 0;
    std::size_t checked = 0;
    for (double theta : {0.0, kPi / 6, kPi / 4, kPi / 3, 1.0, kPi / 2}) {
        for (const auto &f : qca1::evolve(qca1::right_mover(ring, x0), 48, theta)) {
            for (std::size_t x = 0; x < ring; x++) {
                if (std::abs(static_cast<std::int64_t>(x) - x0) > f.t) {
                    checked++;
                    violations += f.cells[x] != Amplitude(0);
                }
            }
        }
        for (const auto &f : qca1::evolve(qca1::left_mover(ring, x0), 48, theta)) {
            // the left-mover source occupies cell x0 - 1
            for (std::size_t x = 0; x < ring; x++) {
                if (std::abs(static_cast<std::int64_t>(x) - (x0 - 1)) > f.t) {
                    checked++;
                    violations += f.cells[x] != Amplitude(0);
                }
            }
        }
    }
    for (double rho : {kPi / 6, kPi / 3}) {
        for (const auto &psi : qca2::evolve(qca2::right_mover(ring, x0), 48, kPi / 4, rho)) {
            for (std::size_t x = 0; x < ring; x++) {
                if (std::abs(static_cast<std::int64_t>(x) - x0) > psi.t) {
                    checked++;
                    violations += psi.cells[x] != Spinor{0, 0};
                }
            }
        }
    }
    return {violations == 0,
            std::to_string(checked) + " cells outside the lightcone, " + std::to_string(violations) + " nonzero"};
}

Outcome continuum_limit() {
    double theta = 1.0;
    std::int64_t t = 8, x = 2;
    std::int64_t u = (t + x) / 2, v = (t - x) / 2;
    std::vector<double> errors;
    for (int scale : {4, 8, 16}) {
        double eps = 1.0 / scale;
        auto lattice = qca1::propagator_closed(u * scale, v * scale, eps * theta);
        auto limit = qca1::bessel_limit(static_cast<double>(t), static_cast<double>(x), theta, eps);
        errors.push_back(std::max(std::abs(lattice.left - limit.left), std::abs(lattice.right - limit.right)));
    }
    double r1 = errors[0] / errors[1];
    double r2 = errors[1] / errors[2];
    return {r1 >= 1.8 && r2 >= 1.8,
            fmt("abs error %.3g, ", errors[0]) + fmt("%.3g, %.3g; ", errors[1], errors[2]) +
                fmt("ratios %.3f, %.3f", r1, r2)};
}

Outcome two_component_reduction() {
    std::mt19937_64 rng(1007);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    double worst_square = 0;
    for (int trial = 0; trial < 100; trial++) {
        double theta = angle(rng);
        OneComponentField phi{unit_vector(rng, 32), trial % 2};
        auto a = qca2::embed(qca1::step(phi, theta));
        auto b = qca2::step(qca2::embed(phi), theta, 0.0);
        for (std::size_t x = 0; x < a.size(); x++) {
            worst_square = std::max(
                {worst_square, std::abs(a.cells[x].left - b.cells[x].left),
                 std::abs(a.cells[x].right - b.cells[x].right)});
        }
    }
    double worst_grid = 0;
    for (int i = 0; i < 32; i++) {
        for (int j = 0; j < 32; j++) {
            auto w = build_two_component_weights(2 * kPi * i / 32, 2 * kPi * j / 32);
            worst_grid = std::max({worst_grid, max_residual(block_band_residuals(w)), max_residual(parity_residuals(w))});
        }
    }
    return {worst_square <= 1e-12 && worst_grid <= 1e-12,
            fmt("embedding square max %.3g over 100 states; 32x32 residual max %.3g", worst_square, worst_grid)};
}

Outcome fock_sector() {
    std::mt19937_64 rng(1008);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    double worst = 0;
    double leaked = 0;
    int runs = 0;
    for (int cells = 2; cells <= qlga::kMaxDenseCells; cells += 2) {
        for (int n = 0; n <= std::min(cells, 3); n++) {
            qlga::QlgaParams params{angle(rng), angle(rng), angle(rng)};
            qlga::FockVector v;
            v.basis = qlga::enumerate_basis(cells, n);
            v.amps = unit_vector(rng, v.basis->size());
            auto dense = qlga::to_dense(v);
            for (int k = 0; k < 64; k++) {
                dense = qlga::full_space_step(dense, cells, v.t, params);
                v = qlga::step(v, params);
                auto back = qlga::from_dense(dense, v.basis, v.t);
                for (std::size_t i = 0; i < v.amps.size(); i++) {
                    worst = std::max(worst, std::abs(back.amps[i] - v.amps[i]));
                }
                leaked = std::max(leaked, qlga::weight_outside_sector(dense, n));
            }
            runs++;
        }
    }
    return {worst <= 1e-10 && leaked == 0,
            std::to_string(runs) + " (N, n) sectors x 64 steps: " +
                fmt("max diff %.3g, weight outside sector %.3g", worst, leaked)};
}

Outcome free_fermions() {
    qlga::ScanSetup setup{kPi / 4, 0};
    std::vector<double> betas;
    for (int k = 0; k < 64; k++) {
        betas.push_back(-kPi + 2 * kPi * k / 64);
    }
    auto found = qlga::scan_free_fermion_beta(setup, betas);

    double worst = 0;
    qlga::QlgaParams params{kPi / 4, 0, found.beta};
    auto basis = qlga::enumerate_basis(8, 2);
    for (std::int64_t a = 0; a < 8; a++) {
        for (std::int64_t b = a + 1; b < 8; b++) {
            std::array<std::int64_t, 2> sources{a, b};
            auto history = qlga::evolve(qlga::configuration(8, sources), 16, params);
            auto predicted = qlga::slater_two_particle(found, params, 8, sources, 16);
            auto occupation = qlga::occupation(history.back());
            auto predicted_occupation = qlga::pair_occupation(predicted, *basis);
            for (std::size_t i = 0; i < predicted.size(); i++) {
                worst = std::max(worst, std::abs(std::norm(history.back().amps[i]) - predicted[i]));
            }
            for (std::size_t x = 0; x < 8; x++) {
                worst = std::max(worst, std::abs(occupation[x] - predicted_occupation[x]));
            }
        }
    }
    double interacting = qlga::slater_mismatch(setup, -3 * kPi / 4);
    bool pass = found.mismatch <= 1e-8 && worst <= 1e-8 && interacting > 1e3 * 1e-8;
    return {pass, fmt("scan picks beta=%.6f (L1 %.3g, next best %.3g); ", found.beta, found.mismatch, found.runner_up) +
                      fmt("all 28 source pairs max diff %.3g; beta=-3pi/4 L1 %.3g", worst, interacting)};
}

std::vector<std::string> split_words(const std::string &line) {
    std::istringstream in(line);
    std::vector<std::string> words;
    for (std::string w; in >> w;) {
        words.push_back(w);
    }
    return words;
}

Outcome golden_files() {
    std::string dir = QCA_GOLDEN_DIR;
    std::ifstream manifest(dir + "/MANIFEST");
    if (!manifest) {
        return {false, "cannot open " + dir + "/MANIFEST"};
    }
    int compared = 0;
    std::vector<std::string> mismatched;
    for (std::string line; std::getline(manifest, line);) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        auto words = split_words(line);
        std::vector<std::string> args(words.begin() + 1, words.end());
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        std::ifstream golden(dir + "/" + words[0], std::ios::binary);
        std::string expected((std::istreambuf_iterator<char>(golden)), std::istreambuf_iterator<char>());
        // run twice: determinism is part of the contract
        std::ostringstream again, err_again;
        cli::run(args, again, err_again);
        if (code != 0 || !golden || out.str() != expected || again.str() != expected) {
            mismatched.push_back(words[0]);
        }
        compared++;
    }
    std::string detail = std::to_string(compared) + " outputs compared";
    for (const auto &m : mismatched) {
        detail += "; mismatch " + m;
    }
    return {compared > 0 && mismatched.empty(), detail};
}

}  // namespace

int main() {
    struct Criterion {
        const char *name;
        std::function<Outcome()> check;
    };
    std::vector<Criterion> criteria{
        {"no-go property suite", no_go_classification},
        {"propagator oracle equivalence", propagator_oracles},
        {"unitarity over 4096 steps", unitarity},
        {"peak speeds", speeds},
        {"causality", causality},
        {"continuum limit convergence", continuum_limit},
        {"two-component reduction", two_component_reduction},
        {"fock sector vs full space", fock_sector},
        {"free-fermion factorization", free_fermions},
        {"reference runs (golden files)", golden_files},
    };
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); k++) {
        auto start = std::chrono::steady_clock::now();
        Outcome result;
        try {
            result = criteria[k].check();
        } catch (const std::exception &e) {
            result = {false, std::string("exception: ") + e.what()};
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !result.pass;
        std::printf(
            "%s %2zu %s: %s [%.2fs]\n", result.pass ? "PASS" : "FAIL", k + 1, criteria[k].name,
            result.detail.c_str(), seconds);
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}

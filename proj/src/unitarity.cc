#include "qca/unitarity.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qca {

namespace {
constexpr Amplitude kI{0, 1};

// Residuals bound products of weights, so a surviving weight may sit a small
// multiple of tol away from its ideal value.
constexpr double kWeightSlack = 4;
}  // namespace

ScalarBandWeights::ScalarBandWeights(std::vector<Amplitude> weights) : weights_(std::move(weights)) {
    if (weights_.size() % 2 == 0) {
        throw std::invalid_argument(
            "band weights need an odd count 2r+1, got " + std::to_string(weights_.size()));
    }
    radius_ = static_cast<int>(weights_.size() / 2);
}

Amplitude ScalarBandWeights::at(int e) const {
    if (e < -radius_ || e > radius_) {
        throw std::out_of_range("band offset " + std::to_string(e) + " outside radius " + std::to_string(radius_));
    }
    return weights_[static_cast<std::size_t>(e + radius_)];
}

std::vector<Amplitude> scalar_band_residuals(const ScalarBandWeights &w) {
    int r = w.radius();
    std::vector<Amplitude> out;
    out.reserve(static_cast<std::size_t>(2 * r + 1));
    for (int m = 0; m <= 2 * r; m++) {
        Amplitude acc = 0;
        for (int e = -r; e + m <= r; e++) {
            acc += w.at(e + m) * std::conj(w.at(e));
        }
        if (m == 0) {
            acc -= 1.0;
        }
        out.push_back(acc);
    }
    return out;
}

NoGoVerdict classify_no_go(const ScalarBandWeights &w, double tol) {
    if (!(tol > 0)) {
        throw std::invalid_argument("tolerance must be positive");
    }
    double worst = 0;
    for (const auto &res : scalar_band_residuals(w)) {
        worst = std::max(worst, std::abs(res));
    }
    if (worst > tol) {
        return NonUnitaryVerdict{worst};
    }

    int r = w.radius();
    int survivor = -r;
    for (int e = -r; e <= r; e++) {
        if (std::abs(w.at(e)) > std::abs(w.at(survivor))) {
            survivor = e;
        }
    }
    bool consistent = std::abs(std::abs(w.at(survivor)) - 1) <= kWeightSlack * tol;
    for (int e = -r; e <= r; e++) {
        if (e != survivor && std::abs(w.at(e)) > kWeightSlack * tol) {
            consistent = false;
        }
    }
    if (!consistent) {
        throw std::logic_error("band weights pass unitarity but are not a shifted phase");
    }
    return TrivialVerdict{-survivor, w.at(survivor)};
}

std::array<Amplitude, 6> two_step_residuals(const TwoStepWeights &w) {
    using std::conj;
    using std::norm;
    return {
        norm(w.a) + norm(w.b) + norm(w.c) - 1.0,
        w.b * conj(w.d) + w.c * conj(w.e),
        w.c * conj(w.a),
        norm(w.d) + norm(w.e) + norm(w.f) - 1.0,
        w.e * conj(w.a) + w.f * conj(w.b),
        w.f * conj(w.d),
    };
}

PairMatrix build_pair_matrix(double theta) {
    double s = std::sin(theta);
    double c = std::cos(theta);
    PairMatrix out;
    out(0, 0) = kI * s;
    out(0, 1) = c;
    out(1, 0) = c;
    out(1, 1) = kI * s;
    return out;
}

BlockBandWeights build_two_component_weights(double theta, double rho) {
    double s = std::sin(theta);
    double c = std::cos(theta);
    double hop = std::cos(rho);
    double stay = std::sin(rho);

    BlockBandWeights w;
    w.theta = theta;
    w.rho = rho;
    w.minus(0, 1) = hop * (kI * s);
    w.minus(1, 1) = hop * c;
    w.plus(0, 0) = hop * c;
    w.plus(1, 0) = hop * (kI * s);
    w.zero(0, 0) = stay * s;
    w.zero(0, 1) = stay * (-kI * c);
    w.zero(1, 0) = stay * (-kI * c);
    w.zero(1, 1) = stay * s;
    return w;
}

Mat2 parity_matrix() {
    Mat2 p;
    p(0, 1) = 1;
    p(1, 0) = 1;
    return p;
}

std::array<Mat2, 3> block_band_residuals(const BlockBandWeights &w) {
    return {
        w.minus * w.minus.adjoint() + w.zero * w.zero.adjoint() + w.plus * w.plus.adjoint() - Mat2::identity(),
        w.zero * w.minus.adjoint() + w.plus * w.zero.adjoint(),
        w.plus * w.minus.adjoint(),
    };
}

std::array<Mat2, 2> parity_residuals(const BlockBandWeights &w) {
    // P is its own inverse.
    Mat2 p = parity_matrix();
    return {
        w.minus - p * w.plus * p,
        w.zero - p * w.zero * p,
    };
}

Mat2 QlgaScatteringMatrix::middle_block() const {
    Mat2 out;
    out(0, 0) = s(1, 1);
    out(0, 1) = s(1, 2);
    out(1, 0) = s(2, 1);
    out(1, 1) = s(2, 2);
    return out;
}

QlgaScatteringMatrix build_qlga_matrix(double theta, double alpha, double beta) {
    QlgaScatteringMatrix out;
    out.theta = theta;
    out.alpha = alpha;
    out.beta = beta;
    Amplitude phase = std::polar(1.0, alpha);
    PairMatrix pair = build_pair_matrix(theta);
    out.s(0, 0) = 1;
    out.s(1, 1) = phase * pair(0, 0);
    out.s(1, 2) = phase * pair(0, 1);
    out.s(2, 1) = phase * pair(1, 0);
    out.s(2, 2) = phase * pair(1, 1);
    out.s(3, 3) = std::polar(1.0, beta);
    return out;
}

}  // namespace qca

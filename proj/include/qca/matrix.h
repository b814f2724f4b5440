#ifndef QCA_MATRIX_H
#define QCA_MATRIX_H

#include <algorithm>
#include <array>
#include <cstddef>

#include "qca/field.h"

namespace qca {

/// Dense row-major K x K complex matrix.
template <std::size_t K>
struct SquareMatrix {
    std::array<Amplitude, K * K> m{};

    Amplitude &operator()(std::size_t r, std::size_t c) { return m[r * K + c]; }
    const Amplitude &operator()(std::size_t r, std::size_t c) const { return m[r * K + c]; }

    static SquareMatrix identity() {
        SquareMatrix out;
        for (std::size_t k = 0; k < K; k++) {
            out(k, k) = 1;
        }
        return out;
    }

    SquareMatrix adjoint() const {
        SquareMatrix out;
        for (std::size_t r = 0; r < K; r++) {
            for (std::size_t c = 0; c < K; c++) {
                out(c, r) = std::conj((*this)(r, c));
            }
        }
        return out;
    }

    /// Largest entry modulus.
    double max_abs() const {
        double best = 0;
        for (const auto &a : m) {
            best = std::max(best, std::abs(a));
        }
        return best;
    }

    friend SquareMatrix operator*(const SquareMatrix &a, const SquareMatrix &b) {
        SquareMatrix out;
        for (std::size_t r = 0; r < K; r++) {
            for (std::size_t c = 0; c < K; c++) {
                Amplitude acc = 0;
                for (std::size_t k = 0; k < K; k++) {
                    acc += a(r, k) * b(k, c);
                }
                out(r, c) = acc;
            }
        }
        return out;
    }
    friend SquareMatrix operator*(Amplitude s, const SquareMatrix &a) {
        SquareMatrix out = a;
        for (auto &x : out.m) {
            x *= s;
        }
        return out;
    }
    friend SquareMatrix operator+(const SquareMatrix &a, const SquareMatrix &b) {
        SquareMatrix out = a;
        for (std::size_t k = 0; k < K * K; k++) {
            out.m[k] += b.m[k];
        }
        return out;
    }
    friend SquareMatrix operator-(const SquareMatrix &a, const SquareMatrix &b) {
        SquareMatrix out = a;
        for (std::size_t k = 0; k < K * K; k++) {
            out.m[k] -= b.m[k];
        }
        return out;
    }
    bool operator==(const SquareMatrix &) const = default;
};

using Mat2 = SquareMatrix<2>;
using Mat4 = SquareMatrix<4>;

/// max |(A^dagger A - I)_{rc}|
template <std::size_t K>
double unitarity_defect(const SquareMatrix<K> &a) {
    return (a.adjoint() * a - SquareMatrix<K>::identity()).max_abs();
}

}  // namespace qca

#endif

#include "qca/render.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace qca {

std::string format_real(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

namespace {

// grid[row][col] holds probabilities; rows are emitted in the given order.
std::string raster_to_pgm(const std::vector<std::vector<double>> &grid, std::int64_t width) {
    double p_max = 0;
    for (const auto &row : grid) {
        for (double p : row) {
            p_max = std::max(p_max, p);
        }
    }
    if (!(p_max > 0)) {
        p_max = 1;
    }
    std::string out = "P2\n" + std::to_string(width) + " " + std::to_string(grid.size()) + "\n255\n";
    for (const auto &row : grid) {
        for (std::size_t c = 0; c < row.size(); c++) {
            auto level = static_cast<int>(std::floor(255.0 * row[c] / p_max + 0.5));
            if (c > 0) {
                out += ' ';
            }
            out += std::to_string(std::clamp(level, 0, 255));
        }
        out += '\n';
    }
    return out;
}

}  // namespace

std::string render_pgm(const PositionDistribution &dist, std::int64_t width, std::int64_t height) {
    if (width <= 0 || height <= 0) {
        throw std::invalid_argument("image dimensions must be positive");
    }
    std::vector<std::vector<double>> grid(
        static_cast<std::size_t>(height), std::vector<double>(static_cast<std::size_t>(width), 0.0));
    for (const auto &e : dist.entries) {
        if (e.x < 0 || e.x >= width || e.t < 0 || e.t >= height) {
            throw std::invalid_argument(
                "entry (t=" + std::to_string(e.t) + ", x=" + std::to_string(e.x) + ") outside the image grid");
        }
        if (!(e.p >= 0) || !std::isfinite(e.p)) {
            throw std::invalid_argument("probability must be finite and non-negative");
        }
        grid[static_cast<std::size_t>(height - 1 - e.t)][static_cast<std::size_t>(e.x)] = e.p;
    }
    return raster_to_pgm(grid, width);
}

std::string render_pgm(const LightconeDistribution &dist) {
    auto side = dist.extent + 1;
    std::vector<std::vector<double>> grid(
        static_cast<std::size_t>(side), std::vector<double>(static_cast<std::size_t>(side), 0.0));
    for (const auto &e : dist.entries) {
        if (e.u < 0 || e.u >= side || e.v < 0 || e.v >= side) {
            throw std::invalid_argument("lightcone entry outside the window");
        }
        grid[static_cast<std::size_t>(dist.extent - e.v)][static_cast<std::size_t>(e.u)] = e.p;
    }
    return raster_to_pgm(grid, side);
}

std::string write_csv(const PositionDistribution &dist) {
    auto rows = dist.entries;
    std::stable_sort(rows.begin(), rows.end(), [](const ProbabilityEntry &a, const ProbabilityEntry &b) {
        return a.t != b.t ? a.t < b.t : a.x < b.x;
    });
    std::string out = "t,x,p\n";
    for (const auto &e : rows) {
        out += std::to_string(e.t) + "," + std::to_string(e.x) + "," + format_real(e.p) + "\n";
    }
    return out;
}

std::string write_csv(const LightconeDistribution &dist) {
    auto rows = dist.entries;
    std::stable_sort(rows.begin(), rows.end(), [](const LightconeEntry &a, const LightconeEntry &b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    std::string out = "u,v,p\n";
    for (const auto &e : rows) {
        out += std::to_string(e.u) + "," + std::to_string(e.v) + "," + format_real(e.p) + "\n";
    }
    return out;
}

}  // namespace qca

#ifndef QCA_RENDER_H
#define QCA_RENDER_H

#include <cstdint>
#include <string>

#include "qca/field.h"

namespace qca {

/// Plain PGM ("P2", maxval 255). One image row per timestep, latest timestep
/// first so that time runs upward; pixel = round(255 p / p_max). A distribution
/// with no positive probability renders with p_max = 1. Entries must satisfy
/// 0 <= x < width and 0 <= t < height.
std::string render_pgm(const PositionDistribution &dist, std::int64_t width, std::int64_t height);

/// Lightcone window as a square PGM: column u, row v, v = extent first.
std::string render_pgm(const LightconeDistribution &dist);

/// "t,x,p" header then rows sorted by (t, x), p with 17 significant digits.
std::string write_csv(const PositionDistribution &dist);

/// "u,v,p" header then rows sorted by (u, v).
std::string write_csv(const LightconeDistribution &dist);

/// printf("%.17g")
std::string format_real(double value);

}  // namespace qca

#endif

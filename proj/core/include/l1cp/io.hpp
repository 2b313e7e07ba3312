#pragma once

#include "l1cp/functional.hpp"

#include <istream>
#include <ostream>
#include <string>

namespace l1cp {

enum class HeaderMode {
    Auto,  ///< first row is a header iff it is a valid grid (0 first, 1 last, strictly increasing)
    Present,
    Absent,
};

/// Reads a rectangular comma-separated file of curves, one curve per row in
/// temporal order. Without a header the grid is uniform on [0,1]. Ragged rows,
/// non-numeric cells and fewer than two curves each raise ParseError naming the line.
[[nodiscard]] FunctionalSample ingest_curves(const std::string& path, HeaderMode header = HeaderMode::Auto);
[[nodiscard]] FunctionalSample read_curves(std::istream& in, const std::string& source,
                                           HeaderMode header = HeaderMode::Auto);

/// Writes the grid as a header row followed by one row per curve. Values use the
/// shortest round-trip representation, so re-reading yields an identical sample.
void write_curves(std::ostream& out, const FunctionalSample& sample, bool header = true);

}  // namespace l1cp

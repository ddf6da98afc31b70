// metrics.hpp - the cell grid: one monospaced column = 6pt
#pragma once

#include <cmath>

#include "captionkit/dimension.hpp"

namespace captionkit {

inline constexpr double kPtPerCell = 6.0;
inline constexpr int kDefaultCellsPerLine = 72;

struct CellMetrics {
    int cells_per_line = kDefaultCellsPerLine;

    // Rounded half away from zero; monotone in points, 0pt -> 0 cells.
    int to_cells(const Dimension& d) const {
        double cells = d.points / kPtPerCell;
        if (d.relative) cells += *d.relative * cells_per_line;
        return static_cast<int>(std::llround(cells));
    }
};

}  // namespace captionkit

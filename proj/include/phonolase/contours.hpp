#pragma once

// Marching squares with linear interpolation along cell edges. Cells with a
// non-finite corner are skipped. Saddles are resolved with the cell-centre mean.

#include "phonolase/sweep.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace phonolase {

struct ContourPoint {
    double x = 0.0;
    double y = 0.0;
};

using Polyline = std::vector<ContourPoint>;

enum class ContourStatus { Ok, EmptyContour };

struct ContourLevel {
    double level = 0.0;
    ContourStatus status = ContourStatus::EmptyContour;
    std::vector<Polyline> polylines;
};

struct ContourSet {
    std::string x_name;
    std::string y_name;
    std::string field;
    std::vector<ContourLevel> levels;
};

namespace detail {

// Edge ids: horizontal edge (ix, iy) joins nodes (ix, iy)-(ix+1, iy);
// vertical edge (ix, iy) joins (ix, iy)-(ix, iy+1).
inline std::int64_t edge_id(std::size_t ix, std::size_t iy, bool vertical, std::size_t nx) {
    return (static_cast<std::int64_t>(iy) * static_cast<std::int64_t>(nx) + static_cast<std::int64_t>(ix)) * 2
         + (vertical ? 1 : 0);
}

struct Segment {
    std::int64_t a, b;
};

inline std::vector<Polyline> trace_level(const std::vector<double>& xs, const std::vector<double>& ys,
                                         const std::vector<std::vector<double>>& f, double level) {
    const std::size_t nx = xs.size(), ny = ys.size();
    std::map<std::int64_t, ContourPoint> points;
    std::vector<Segment> segments;

    auto above = [level](double v) { return v >= level; };
    auto crossing = [&](std::size_t ix0, std::size_t iy0, std::size_t ix1, std::size_t iy1) {
        const double v0 = f[iy0][ix0], v1 = f[iy1][ix1];
        const double t = (level - v0) / (v1 - v0);
        return ContourPoint{xs[ix0] + t * (xs[ix1] - xs[ix0]), ys[iy0] + t * (ys[iy1] - ys[iy0])};
    };

    for (std::size_t iy = 0; iy + 1 < ny; ++iy) {
        for (std::size_t ix = 0; ix + 1 < nx; ++ix) {
            const double v00 = f[iy][ix], v10 = f[iy][ix + 1], v11 = f[iy + 1][ix + 1], v01 = f[iy + 1][ix];
            if (!std::isfinite(v00) || !std::isfinite(v10) || !std::isfinite(v11) || !std::isfinite(v01))
                continue;
            // edges: 0 bottom, 1 right, 2 top, 3 left
            const std::array<std::int64_t, 4> ids{edge_id(ix, iy, false, nx), edge_id(ix + 1, iy, true, nx),
                                                  edge_id(ix, iy + 1, false, nx), edge_id(ix, iy, true, nx)};
            std::array<bool, 4> cut{above(v00) != above(v10), above(v10) != above(v11),
                                    above(v01) != above(v11), above(v00) != above(v01)};
            if (cut[0]) points.emplace(ids[0], crossing(ix, iy, ix + 1, iy));
            if (cut[1]) points.emplace(ids[1], crossing(ix + 1, iy, ix + 1, iy + 1));
            if (cut[2]) points.emplace(ids[2], crossing(ix, iy + 1, ix + 1, iy + 1));
            if (cut[3]) points.emplace(ids[3], crossing(ix, iy, ix, iy + 1));

            std::vector<int> edges;
            for (int e = 0; e < 4; ++e)
                if (cut[static_cast<std::size_t>(e)]) edges.push_back(e);
            if (edges.size() == 2) {
                segments.push_back({ids[static_cast<std::size_t>(edges[0])], ids[static_cast<std::size_t>(edges[1])]});
            } else if (edges.size() == 4) {
                const bool centre_above = above(0.25 * (v00 + v10 + v11 + v01));
                // cut off the two corners on the opposite side from the centre
                if (above(v00) != centre_above) {
                    segments.push_back({ids[3], ids[0]});
                    segments.push_back({ids[1], ids[2]});
                } else {
                    segments.push_back({ids[0], ids[1]});
                    segments.push_back({ids[2], ids[3]});
                }
            }
        }
    }

    // chain segments that share an edge crossing
    std::map<std::int64_t, std::vector<std::size_t>> incident;
    for (std::size_t s = 0; s < segments.size(); ++s) {
        incident[segments[s].a].push_back(s);
        incident[segments[s].b].push_back(s);
    }
    std::vector<bool> used(segments.size(), false);
    auto other_end = [&](std::size_t s, std::int64_t from) { return segments[s].a == from ? segments[s].b : segments[s].a; };
    auto next_segment = [&](std::int64_t node) -> std::ptrdiff_t {
        for (std::size_t s : incident[node])
            if (!used[s]) return static_cast<std::ptrdiff_t>(s);
        return -1;
    };

    std::vector<Polyline> lines;
    auto walk = [&](std::size_t first, std::int64_t start) {
        std::vector<std::int64_t> chain{start};
        std::int64_t node = start;
        std::ptrdiff_t s = static_cast<std::ptrdiff_t>(first);
        while (s >= 0) {
            used[static_cast<std::size_t>(s)] = true;
            node = other_end(static_cast<std::size_t>(s), node);
            chain.push_back(node);
            s = next_segment(node);
        }
        Polyline line;
        for (auto id : chain) line.push_back(points.at(id));
        lines.push_back(std::move(line));
    };
    // open curves start at an end that has only one segment
    for (const auto& [node, segs] : incident) {
        if (segs.size() == 1 && !used[segs[0]]) walk(segs[0], node);
    }
    for (std::size_t s = 0; s < segments.size(); ++s) {
        if (!used[s]) walk(s, segments[s].a);
    }
    return lines;
}

} // namespace detail

inline ContourSet extract_contours(const Grid& grid, const std::string& field, const std::vector<double>& levels) {
    const auto& f = grid.field(field);
    ContourSet out{grid.x_name, grid.y_name, field, {}};
    for (double level : levels) {
        if (!std::isfinite(level)) throw InvalidConfig("contour levels must be finite");
        ContourLevel cl;
        cl.level = level;
        cl.polylines = detail::trace_level(grid.xs, grid.ys, f, level);
        cl.status = cl.polylines.empty() ? ContourStatus::EmptyContour : ContourStatus::Ok;
        out.levels.push_back(std::move(cl));
    }
    return out;
}

/// level, polyline, vertex, x, y
inline void write_contours_csv(std::ostream& os, const ContourSet& set) {
    os << "level,polyline,vertex," << set.x_name << ',' << set.y_name << '\n';
    for (const auto& level : set.levels) {
        for (std::size_t p = 0; p < level.polylines.size(); ++p) {
            for (std::size_t v = 0; v < level.polylines[p].size(); ++v) {
                const auto& pt = level.polylines[p][v];
                os << format_double(level.level) << ',' << p << ',' << v << ',' << format_double(pt.x) << ','
                   << format_double(pt.y) << '\n';
            }
        }
    }
}

} // namespace phonolase

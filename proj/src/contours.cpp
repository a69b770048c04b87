#include <cmath>
#include <limits>
#include <unordered_map>

#include "debtrec/errors.hpp"
#include "debtrec/phase.hpp"

namespace debtrec {

namespace {

using EdgeKey = std::uint64_t;

struct Segment {
    EdgeKey a;
    EdgeKey b;
};

// Horizontal edge from corner (i, j) to (i+1, j), vertical from (i, j) to (i, j+1).
EdgeKey horizontal_edge(int i, int j, int n_p) {
    return (static_cast<EdgeKey>(j) * static_cast<EdgeKey>(n_p) + static_cast<EdgeKey>(i)) * 2;
}

EdgeKey vertical_edge(int i, int j, int n_p) { return horizontal_edge(i, j, n_p) + 1; }

class LevelTracer {
public:
    LevelTracer(const PhaseGrid& grid, double level) : grid_(grid), level_(level) {}

    ContourSet trace() {
        const int n_p = grid_.spec.n_p;
        const int n_s = grid_.spec.n_s;
        for (int j = 0; j + 1 < n_s; ++j) {
            for (int i = 0; i + 1 < n_p; ++i) {
                march(i, j);
            }
        }
        return chain();
    }

private:
    double value(int i, int j) const {
        const auto& t = grid_.at(i, j).outcome.t_star;
        return t ? static_cast<double>(*t) : std::numeric_limits<double>::quiet_NaN();
    }

    bool below(double v) const { return v < level_; }

    // Crossing point on the edge between corners (i0, j0) and (i1, j1).
    std::pair<double, double> crossing(int i0, int j0, int i1, int j1) const {
        const double v0 = value(i0, j0);
        const double v1 = value(i1, j1);
        const double f = (level_ - v0) / (v1 - v0);
        const PhaseCell& c0 = grid_.at(i0, j0);
        const PhaseCell& c1 = grid_.at(i1, j1);
        return {c0.p + f * (c1.p - c0.p), c0.s + f * (c1.s - c0.s)};
    }

    EdgeKey edge(int square_i, int square_j, int side) {
        const int n_p = grid_.spec.n_p;
        EdgeKey key = 0;
        switch (side) {
        case 0:  // bottom
            key = horizontal_edge(square_i, square_j, n_p);
            if (!points_.count(key)) {
                points_[key] = crossing(square_i, square_j, square_i + 1, square_j);
            }
            break;
        case 1:  // right
            key = vertical_edge(square_i + 1, square_j, n_p);
            if (!points_.count(key)) {
                points_[key] = crossing(square_i + 1, square_j, square_i + 1, square_j + 1);
            }
            break;
        case 2:  // top
            key = horizontal_edge(square_i, square_j + 1, n_p);
            if (!points_.count(key)) {
                points_[key] = crossing(square_i, square_j + 1, square_i + 1, square_j + 1);
            }
            break;
        default:  // left
            key = vertical_edge(square_i, square_j, n_p);
            if (!points_.count(key)) {
                points_[key] = crossing(square_i, square_j, square_i, square_j + 1);
            }
            break;
        }
        return key;
    }

    void add(int i, int j, int side_a, int side_b) {
        segments_.push_back({edge(i, j, side_a), edge(i, j, side_b)});
    }

    void march(int i, int j) {
        const double v00 = value(i, j);
        const double v10 = value(i + 1, j);
        const double v11 = value(i + 1, j + 1);
        const double v01 = value(i, j + 1);
        if (std::isnan(v00) || std::isnan(v10) || std::isnan(v11) || std::isnan(v01)) {
            return;
        }
        const int code = (below(v00) ? 1 : 0) | (below(v10) ? 2 : 0) | (below(v11) ? 4 : 0) |
                         (below(v01) ? 8 : 0);
        switch (code) {
        case 0:
        case 15:
            return;
        case 1:
        case 14:
            add(i, j, 3, 0);
            return;
        case 2:
        case 13:
            add(i, j, 0, 1);
            return;
        case 3:
        case 12:
            add(i, j, 3, 1);
            return;
        case 4:
        case 11:
            add(i, j, 1, 2);
            return;
        case 6:
        case 9:
            add(i, j, 0, 2);
            return;
        case 7:
        case 8:
            add(i, j, 2, 3);
            return;
        default:
            break;
        }
        // Saddles: the square centre decides which diagonal pair is joined.
        const bool centre_below = below(0.25 * (v00 + v10 + v11 + v01));
        const bool isolate_00_11 = (code == 5) != centre_below;
        if (isolate_00_11) {
            add(i, j, 3, 0);
            add(i, j, 1, 2);
        } else {
            add(i, j, 0, 1);
            add(i, j, 2, 3);
        }
    }

    ContourSet chain() {
        ContourSet set;
        set.level = level_;
        std::unordered_map<EdgeKey, std::vector<std::size_t>> incident;
        for (std::size_t k = 0; k < segments_.size(); ++k) {
            incident[segments_[k].a].push_back(k);
            incident[segments_[k].b].push_back(k);
        }
        std::vector<bool> used(segments_.size(), false);

        auto walk = [&](EdgeKey start) {
            Polyline line;
            line.level = level_;
            line.points.push_back(points_.at(start));
            EdgeKey at = start;
            for (;;) {
                std::size_t next = segments_.size();
                for (std::size_t k : incident[at]) {
                    if (!used[k]) {
                        next = k;
                        break;
                    }
                }
                if (next == segments_.size()) {
                    break;
                }
                used[next] = true;
                at = segments_[next].a == at ? segments_[next].b : segments_[next].a;
                line.points.push_back(points_.at(at));
                if (at == start) {
                    line.closed = true;
                    break;
                }
            }
            set.lines.push_back(std::move(line));
        };

        // Open lines start at an edge with a single incident segment; walk
        // those first, in segment order so output is deterministic.
        for (const Segment& seg : segments_) {
            for (EdgeKey end : {seg.a, seg.b}) {
                if (incident[end].size() == 1 && !used[incident[end].front()]) {
                    walk(end);
                }
            }
        }
        for (std::size_t k = 0; k < segments_.size(); ++k) {
            if (!used[k]) {
                walk(segments_[k].a);
            }
        }
        return set;
    }

    const PhaseGrid& grid_;
    double level_;
    std::vector<Segment> segments_;
    std::unordered_map<EdgeKey, std::pair<double, double>> points_;
};

}  // namespace

std::vector<ContourSet> iso_time_contours(const PhaseGrid& grid, const std::vector<double>& levels) {
    const auto expected =
        static_cast<std::size_t>(grid.spec.n_p) * static_cast<std::size_t>(grid.spec.n_s);
    if (grid.cells.size() != expected) {
        throw ValidationError("phase grid cell count does not match its spec");
    }
    std::vector<ContourSet> out;
    out.reserve(levels.size());
    for (double level : levels) {
        if (!(level > 0.0) || !std::isfinite(level)) {
            throw ValidationError("contour levels must be positive");
        }
        out.push_back(LevelTracer(grid, level).trace());
    }
    return out;
}

}  // namespace debtrec

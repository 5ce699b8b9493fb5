#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "misr/rng.hpp"

namespace misr {

using Coord = std::int64_t;

struct Point {
    Coord x = 0;
    Coord y = 0;
    friend bool operator==(const Point&, const Point&) = default;
    friend auto operator<=>(const Point&, const Point&) = default;
};

// Axis-parallel rectangle. Input rectangles are open, fake rectangles and
// partition cells are closed.
struct Rect {
    Coord x1 = 0, y1 = 0, x2 = 0, y2 = 0;
    bool closed = false;

    bool valid() const { return x1 < x2 && y1 < y2; }
    Coord width() const { return x2 - x1; }
    Coord height() const { return y2 - y1; }
    Coord area() const { return width() * height(); }
    // Point-set containment, ignoring openness (closure of this contains the closure of o).
    bool contains(const Rect& o) const {
        return x1 <= o.x1 && o.x2 <= x2 && y1 <= o.y1 && o.y2 <= y2;
    }
    bool same_box(const Rect& o) const {
        return x1 == o.x1 && y1 == o.y1 && x2 == o.x2 && y2 == o.y2;
    }
    friend bool operator==(const Rect&, const Rect&) = default;
    friend auto operator<=>(const Rect&, const Rect&) = default;
};

inline Rect closed_rect(Coord x1, Coord y1, Coord x2, Coord y2) { return {x1, y1, x2, y2, true}; }
inline Rect open_rect(Coord x1, Coord y1, Coord x2, Coord y2) { return {x1, y1, x2, y2, false}; }

// Closed-closed pairs meet when they share any point; any pair involving an
// open rectangle needs a common interior point.
bool intersects(const Rect& a, const Rect& b);

// Interiors overlap (ignores openness).
inline bool interiors_overlap(const Rect& a, const Rect& b) {
    return a.x1 < b.x2 && b.x1 < a.x2 && a.y1 < b.y2 && b.y1 < a.y2;
}

struct RectilinearPolygon {
    std::vector<Point> corners;  // boundary walk, either orientation accepted
    bool closed = true;
    int size() const { return static_cast<int>(corners.size()); }
};

struct AlignmentPointSet {
    std::vector<Coord> xs;
    std::vector<Coord> ys;

    static AlignmentPointSet from_points(const std::vector<Point>& pts);
    static AlignmentPointSet from_rects(const std::vector<Rect>& rs);
    void add_rect(const Rect& r);
    void add_point(const Point& p);
    void normalize();
    bool has_x(Coord x) const;
    bool has_y(Coord y) const;
};

bool is_aligned(const Rect& r, const AlignmentPointSet& z);
bool is_aligned(const RectilinearPolygon& p, const AlignmentPointSet& z);

// Empty string when p is a simple rectilinear polygon, otherwise the reason.
std::string polygon_defect(const RectilinearPolygon& p);

// Twice the signed area (positive for counter-clockwise).
Coord signed_area2(const RectilinearPolygon& p);

// A region described on an overlay grid: inside[i * (ys.size()-1) + j] marks the
// open elementary cell (xs[i],xs[i+1]) x (ys[j],ys[j+1]).
struct CellRegion {
    std::vector<Coord> xs;
    std::vector<Coord> ys;
    std::vector<char> inside;

    int nx() const { return static_cast<int>(xs.size()) - 1; }
    int ny() const { return static_cast<int>(ys.size()) - 1; }
    char at(int i, int j) const { return inside[static_cast<std::size_t>(i) * ny() + j]; }
    char& at(int i, int j) { return inside[static_cast<std::size_t>(i) * ny() + j]; }
    Coord area() const;
    bool empty() const;
};

enum class Sweep { vertical, horizontal };

// Tiles the region with closed rectangles by extending vertical (or horizontal)
// segments from every reflex vertex until they meet the boundary. All output
// corners lie on the grid lines of the region.
std::vector<Rect> tile_region(const CellRegion& reg, Sweep sweep = Sweep::vertical);
// The smaller of the two sweeps, vertical on ties.
std::vector<Rect> tile_region_best(const CellRegion& reg);

// Cells of the overlay grid (xs, ys) whose interior lies inside the polygon.
CellRegion rasterize_polygon(const RectilinearPolygon& p, std::vector<Coord> xs, std::vector<Coord> ys);

// Closed rectangles, internally disjoint, union = p, count <= L-3.
std::vector<Rect> tile_polygon(const RectilinearPolygon& p);
// Closed rectangles tiling b \ p, count <= L+2.
std::vector<Rect> tile_complement(const RectilinearPolygon& p, const Rect& b);

// Random simple rectilinear polygon with at most max_corners corners, grown as
// a hole-free polyomino on a grid x grid board and then stretched.
RectilinearPolygon random_rectilinear_polygon(Rng& rng, int max_corners, int grid = 6);

// Boundary of a simply connected, pinch-free union of unit cells.
// Returns an empty polygon when the cell set has holes or pinches.
RectilinearPolygon polyomino_boundary(const std::vector<Point>& cells);

std::vector<Coord> sorted_unique(std::vector<Coord> v);

}  // namespace misr

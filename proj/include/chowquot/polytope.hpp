// Exact rational convex geometry at desk scale: hulls with both V- and
// H-representations, point location, halfspace splitting, and an
// independent simplex-based membership oracle.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chowquot/rational.hpp"

namespace chowquot {

// normal . x <= offset, normal a primitive integer outward vector.
struct Halfspace {
    ZVector normal;
    Rat offset;
    bool operator==(const Halfspace&) const = default;
};

// normal . x == offset, normal primitive with positive leading entry.
struct Hyperplane {
    ZVector normal;
    Rat offset;
    bool operator==(const Hyperplane&) const = default;
};

enum class Location { Interior, Boundary, Outside };

// Maximum ambient dimension accepted by the hull routines.
inline constexpr int kMaxHullDimension = 4;

class Polytope {
public:
    Polytope() = default;

    // Exact convex hull; vertices are reduced to the extreme points.
    // Throws ScaleGuardError above kMaxHullDimension, std::invalid_argument
    // on empty input or ragged dimensions.
    static Polytope convex_hull(std::vector<QVector> points);

    int ambient_dimension() const { return ambient_dim_; }
    int dimension() const { return dim_; }  // affine dimension
    bool is_empty() const { return vertices_.empty(); }

    const std::vector<QVector>& vertices() const { return vertices_; }
    const std::vector<Hyperplane>& equations() const { return equations_; }
    const std::vector<Halfspace>& facets() const { return facets_; }

    // Exact classification; Interior/Boundary are relative to the affine
    // hull when the polytope is lower-dimensional.
    Location locate(const QVector& u) const;
    bool contains(const QVector& u) const;  // closed membership

    // Floating membership with Euclidean slack, for the numeric layer.
    bool contains_approx(const std::vector<double>& u, double slack) const;

    // Signed Euclidean distance proxy: largest violation of the H-description
    // (0 when inside), and the smallest slack among facets (distance to the
    // boundary from inside). Used to skip near-boundary samples.
    double boundary_margin_approx(const std::vector<double>& u) const;

    // Average of the vertices: a relative-interior point.
    QVector relative_interior_point() const;

    // All vertices of `this` contained in `other` (closed).
    bool contained_in(const Polytope& other) const;

    std::string to_json_string(int indent = -1) const;

    bool same_vertex_set(const Polytope& other) const;

private:
    int ambient_dim_ = 0;
    int dim_ = -1;
    std::vector<QVector> vertices_;
    std::vector<Hyperplane> equations_;
    std::vector<Halfspace> facets_;

    friend struct PolytopeSplitter;
};

struct SplitResult {
    std::optional<Polytope> minus;  // normal . x <= offset side
    std::optional<Polytope> zero;   // slice
    std::optional<Polytope> plus;   // normal . x >= offset side
};

// Splits a polytope by the hyperplane normal . x = offset into the closed
// sign cells. Parts that are empty (or equal to a side that has no strict
// representative) are nullopt.
SplitResult split_by_hyperplane(const Polytope& p, const ZVector& normal,
                                const Rat& offset);

// Independent oracle: u in conv(points), decided by exact phase-I simplex
// on the V-representation. No shared code path with the hull construction.
bool point_in_hull_lp(const std::vector<QVector>& points, const QVector& u);

// Rank over Q of a list of integer row vectors (fraction-free elimination).
int rational_rank(const std::vector<ZVector>& rows);

}  // namespace chowquot

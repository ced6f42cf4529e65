// GIT chamber decomposition of the moment polytope: cells of the
// hyperplane arrangement spanned by (rank-1)-subsets of the weights,
// refined by the facet hyperplanes of the realizable support hulls and
// intersected with the weight hull. Two points in the relative interior
// of one cell then lie in exactly the same support hulls.

#pragma once

#include <vector>

#include "chowquot/polytope.hpp"

namespace chowquot {

struct Chamber {
    Polytope body;
    bool full_dimensional = false;
    // Indices into the realizable_supports argument whose weight hulls
    // contain the whole chamber.
    std::vector<int> support_profile;
};

struct ChamberComplex {
    Polytope hull;
    std::vector<Hyperplane> walls;
    std::vector<Chamber> chambers;

    int full_dimensional_count() const;
    std::string to_json_string(int indent = -1) const;
};

inline constexpr int kMaxChamberRank = 3;
inline constexpr int kMaxChamberWeights = 24;

// realizable_supports: index sets into `weights`. Throws ScaleGuardError
// past the rank/count guards.
ChamberComplex git_chambers(const std::vector<QVector>& weights,
                            const std::vector<std::vector<int>>& realizable_supports);

}  // namespace chowquot

#include "chowquot/chambers.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

#include "chowquot/errors.hpp"
#include "chowquot/integer_matrix.hpp"

namespace chowquot {

int ChamberComplex::full_dimensional_count() const {
    int n = 0;
    for (const Chamber& c : chambers) n += c.full_dimensional ? 1 : 0;
    return n;
}

namespace {

// Central hyperplanes spanned by (m-1)-subsets of the weight vectors.
std::vector<Hyperplane> central_walls(const std::vector<QVector>& weights, int m) {
    std::set<ZVector> normals;
    if (m == 1) {
        normals.insert(ZVector{Int(1)});  // span of the empty set: the origin
    } else {
        std::vector<QVector> distinct = weights;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        const int k = m - 1;
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        const int n = static_cast<int>(distinct.size());
        if (n < k) return {};
        for (;;) {
            std::vector<ZVector> rows;
            for (int i = 0; i < k; ++i)
                rows.push_back(primitive_integer_direction(distinct[idx[i]]));
            // Span must be a genuine hyperplane.
            if (rational_rank(rows) == m - 1) {
                IntegerMatrix mat = IntegerMatrix::from_rows(rows);
                IntegerMatrix kernel = integer_kernel(mat);
                if (kernel.cols() == 1) {
                    ZVector nu = kernel.col(0);
                    normals.insert(primitive_integer_direction(nu));
                }
            }
            int i = k - 1;
            while (i >= 0 && idx[i] == n - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    std::vector<Hyperplane> walls;
    for (const ZVector& nu : normals) {
        if (nu == ZVector(nu.size(), Int(0))) continue;
        walls.push_back({nu, Rat(0)});
    }
    return walls;
}

}  // namespace

ChamberComplex git_chambers(const std::vector<QVector>& weights,
                            const std::vector<std::vector<int>>& realizable_supports) {
    if (weights.empty()) throw std::invalid_argument("git_chambers: no weights");
    const int m = static_cast<int>(weights[0].size());
    if (m > kMaxChamberRank)
        throw ScaleGuardError("git_chambers: rank exceeds guard");
    if (static_cast<int>(weights.size()) > kMaxChamberWeights)
        throw ScaleGuardError("git_chambers: weight count exceeds guard");

    ChamberComplex out;
    out.hull = Polytope::convex_hull(weights);

    // Support hulls for the provenance profiles.
    std::vector<Polytope> support_hulls;
    for (const std::vector<int>& sup : realizable_supports) {
        std::vector<QVector> pts;
        for (int i : sup) pts.push_back(weights.at(i));
        support_hulls.push_back(Polytope::convex_hull(std::move(pts)));
    }

    // Wall set: the central hyperplanes spanned by weight subsets, refined
    // by the facet and affine-hull hyperplanes of every realizable support
    // hull. The refinement is what makes the support-membership profile
    // constant on the relative interior of each cell; without it a cell
    // can straddle the boundary of a support hull.
    std::set<std::pair<ZVector, Rat>> wall_keys;
    auto add_wall = [&](ZVector normal, Rat offset) {
        if (normal == ZVector(normal.size(), Int(0))) return;
        int k = 0;
        while (normal[k] == 0) ++k;
        if (normal[k] < 0) {
            for (Int& x : normal) x = -x;
            offset = -offset;
        }
        offset.canonicalize();
        if (wall_keys.insert({normal, offset}).second)
            out.walls.push_back({std::move(normal), std::move(offset)});
    };
    for (const Hyperplane& w : central_walls(weights, m)) add_wall(w.normal, w.offset);
    for (const Polytope& hull : support_hulls) {
        for (const Halfspace& f : hull.facets()) add_wall(f.normal, f.offset);
        for (const Hyperplane& e : hull.equations()) add_wall(e.normal, e.offset);
    }

    // Depth-first sign enumeration over the walls; every nonempty closed
    // sign cell (zeros included) becomes a chamber.
    std::set<std::vector<QVector>> seen;
    std::vector<Chamber>& cells = out.chambers;
    std::vector<std::pair<Polytope, size_t>> stack;
    stack.push_back({out.hull, 0});
    while (!stack.empty()) {
        auto [region, wall_idx] = std::move(stack.back());
        stack.pop_back();
        if (wall_idx == out.walls.size()) {
            if (!seen.insert(region.vertices()).second) continue;
            Chamber c;
            c.full_dimensional = region.dimension() == m;
            for (size_t s = 0; s < support_hulls.size(); ++s)
                if (region.contained_in(support_hulls[s]))
                    c.support_profile.push_back(static_cast<int>(s));
            c.body = std::move(region);
            cells.push_back(std::move(c));
            continue;
        }
        const Hyperplane& w = out.walls[wall_idx];
        SplitResult sp = split_by_hyperplane(region, w.normal, w.offset);
        if (sp.minus) stack.push_back({std::move(*sp.minus), wall_idx + 1});
        if (sp.zero) stack.push_back({std::move(*sp.zero), wall_idx + 1});
        if (sp.plus) stack.push_back({std::move(*sp.plus), wall_idx + 1});
    }

    // Deterministic order: full-dimensional first, then by vertex list.
    std::sort(cells.begin(), cells.end(), [](const Chamber& a, const Chamber& b) {
        if (a.full_dimensional != b.full_dimensional) return a.full_dimensional;
        return a.body.vertices() < b.body.vertices();
    });
    return out;
}

std::string ChamberComplex::to_json_string(int indent) const {
    nlohmann::ordered_json j;
    j["hull"] = nlohmann::ordered_json::parse(hull.to_json_string());
    auto jwalls = nlohmann::ordered_json::array();
    for (const Hyperplane& w : walls) {
        nlohmann::ordered_json jw;
        jw["normal"] = vector_to_strings(w.normal);
        jw["offset"] = rat_to_string(w.offset);
        jwalls.push_back(jw);
    }
    j["walls"] = jwalls;
    auto jc = nlohmann::ordered_json::array();
    for (const Chamber& c : chambers) {
        nlohmann::ordered_json e;
        e["full_dimensional"] = c.full_dimensional;
        e["support_profile"] = c.support_profile;
        e["body"] = nlohmann::ordered_json::parse(c.body.to_json_string());
        jc.push_back(e);
    }
    j["chambers"] = jc;
    j["full_dimensional_count"] = full_dimensional_count();
    return indent >= 0 ? j.dump(indent) : j.dump();
}

}  // namespace chowquot

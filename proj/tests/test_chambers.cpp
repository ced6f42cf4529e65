#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "chowquot/chambers.hpp"
#include "chowquot/errors.hpp"
#include "chowquot/families.hpp"
#include "chowquot/moment.hpp"

using namespace chowquot;

namespace {

QVector qv(std::initializer_list<long> v) {
    QVector r;
    for (long x : v) r.push_back(Rat(x));
    return r;
}

// Monomial weights and realizable monomial supports for a family.
struct WeightData {
    std::vector<QVector> weights;
    std::vector<std::vector<int>> supports;
};

WeightData weight_data(const FamilySpec& f) {
    TorusActionSpec spec = ambient_spec(f);
    MonomialTable table = MonomialTable::build(spec);
    WeightData out;
    for (const ZVector& w : table.weights) {
        QVector q(w.size());
        for (size_t i = 0; i < w.size(); ++i) q[i] = Rat(w[i]);
        out.weights.push_back(std::move(q));
    }
    const int coords = spec.coordinate_count();
    for (std::uint64_t mask = 1; mask < (1ull << coords); ++mask) {
        SupportPattern pattern;
        for (int i = 0; i < coords; ++i)
            if (mask & (1ull << i)) pattern.insert(i);
        bool per_factor = true;
        for (size_t fac = 0; fac < spec.factors.size() && per_factor; ++fac) {
            int lo = spec.factor_offset(static_cast<int>(fac));
            int hi = lo + spec.factor_size(static_cast<int>(fac));
            bool nonempty = false;
            for (int i = lo; i < hi && !nonempty; ++i) nonempty = pattern.count(i) > 0;
            per_factor = nonempty;
        }
        if (!per_factor || !realizable_support(f, pattern)) continue;
        std::vector<int> idxs;
        for (size_t k = 0; k < table.size(); ++k) {
            bool in = true;
            for (int idx : table.coordinate_choices[k]) in &= pattern.count(idx) > 0;
            if (in) idxs.push_back(static_cast<int>(k));
        }
        if (!idxs.empty()) out.supports.push_back(std::move(idxs));
    }
    std::sort(out.supports.begin(), out.supports.end());
    out.supports.erase(std::unique(out.supports.begin(), out.supports.end()),
                       out.supports.end());
    return out;
}

std::vector<int> grid_profile(const std::vector<Polytope>& hulls, const QVector& u) {
    std::vector<int> profile;
    for (size_t s = 0; s < hulls.size(); ++s)
        if (hulls[s].contains(u)) profile.push_back(static_cast<int>(s));
    return profile;
}

}  // namespace

TEST_CASE("rank-one chambers split at the origin") {
    std::vector<QVector> weights = {qv({1}), qv({-1})};
    ChamberComplex cc = git_chambers(weights, {{0}, {1}, {0, 1}});
    CHECK(cc.full_dimensional_count() == 2);
    std::set<std::vector<QVector>> bodies;
    for (const Chamber& c : cc.chambers)
        if (c.full_dimensional) bodies.insert(c.body.vertices());
    CHECK(bodies.count({qv({-1}), qv({0})}) == 1);
    CHECK(bodies.count({qv({0}), qv({1})}) == 1);
    // The wall cell at the origin is retained but flagged.
    bool origin_cell = false;
    for (const Chamber& c : cc.chambers)
        if (!c.full_dimensional && c.body.vertices() == std::vector<QVector>{qv({0})})
            origin_cell = true;
    CHECK(origin_cell);
}

TEST_CASE("all weights equal yields a single point chamber") {
    std::vector<QVector> weights = {qv({2, 3}), qv({2, 3}), qv({2, 3})};
    ChamberComplex cc = git_chambers(weights, {{0, 1, 2}});
    CHECK(cc.full_dimensional_count() == 0);
    REQUIRE(!cc.chambers.empty());
    for (const Chamber& c : cc.chambers) {
        CHECK_FALSE(c.full_dimensional);
        CHECK(c.body.dimension() == 0);
        CHECK(c.body.vertices()[0] == qv({2, 3}));
    }
}

TEST_CASE("scale guards") {
    QVector w4(4, Rat(0));
    CHECK_THROWS_AS(git_chambers({w4}, {}), ScaleGuardError);
    std::vector<QVector> many(25, qv({1, 0}));
    CHECK_THROWS_AS(git_chambers(many, {}), ScaleGuardError);
}

TEST_CASE("X^3_(1,1) chamber complex against the grid oracle") {
    FamilySpec f;
    f.kind = FamilyKind::BidegreeHypersurface;
    f.n = 2;
    f.alpha = 1;
    f.beta = 1;
    WeightData data = weight_data(f);
    ChamberComplex cc = git_chambers(data.weights, data.supports);

    // Three central lines cut the hexagon into six sectors.
    CHECK(cc.full_dimensional_count() == 6);
    CHECK(cc.hull.vertices().size() == 6);

    std::vector<Polytope> hulls;
    for (const auto& sup : data.supports) {
        std::vector<QVector> pts;
        for (int i : sup) pts.push_back(data.weights[i]);
        hulls.push_back(Polytope::convex_hull(pts));
    }

    // Chamber profiles are computed from whole-cell containment; every
    // relative-interior grid point of a chamber must reproduce them.
    int grid_points_used = 0;
    const int grid_n = 12;
    for (int ix = -grid_n; ix <= grid_n; ++ix)
        for (int iy = -grid_n; iy <= grid_n; ++iy) {
            QVector u{Rat(ix, grid_n), Rat(iy, grid_n)};
            u[0].canonicalize();
            u[1].canonicalize();
            if (cc.hull.locate(u) != Location::Interior) continue;
            std::vector<int> profile =
                grid_profile(hulls, u);
            int interior_hits = 0;
            for (const Chamber& c : cc.chambers) {
                if (!c.full_dimensional) continue;
                Location loc = c.body.locate(u);
                if (loc == Location::Interior) {
                    ++interior_hits;
                    CHECK(profile == c.support_profile);
                }
            }
            // Points off every wall lie strictly inside exactly one
            // full-dimensional chamber.
            bool on_wall = false;
            for (const Hyperplane& w : cc.walls)
                if (dot(w.normal, u) == w.offset) on_wall = true;
            if (!on_wall) CHECK(interior_hits == 1);
            ++grid_points_used;
        }
    CHECK(grid_points_used > 200);

    // Relative-interior samples of every chamber reproduce the stored
    // profile (including the lower-dimensional wall cells).
    for (const Chamber& c : cc.chambers) {
        QVector sample = c.body.relative_interior_point();
        CHECK(grid_profile(hulls, sample) ==
              c.support_profile);
    }
}

TEST_CASE("chamber union covers the hull and chambers nest consistently") {
    FamilySpec f;
    f.kind = FamilyKind::BidegreeHypersurface;
    f.n = 2;
    f.alpha = 1;
    f.beta = 2;
    WeightData data = weight_data(f);
    ChamberComplex cc = git_chambers(data.weights, data.supports);
    CHECK(cc.full_dimensional_count() > 0);
    for (const Chamber& c : cc.chambers) CHECK(c.body.contained_in(cc.hull));
    // Every chamber's sample point lies in the hull and in some
    // full-dimensional chamber's closure.
    for (const Chamber& c : cc.chambers) {
        QVector sample = c.body.relative_interior_point();
        bool covered = false;
        for (const Chamber& d : cc.chambers)
            if (d.full_dimensional && d.body.contains(sample)) covered = true;
        CHECK(covered);
    }
}

TEST_CASE("support profiles are constant on relative interiors") {
    FamilySpec f;
    f.kind = FamilyKind::BidegreeHypersurface;
    f.n = 2;
    f.alpha = 1;
    f.beta = 2;
    WeightData data = weight_data(f);
    ChamberComplex cc = git_chambers(data.weights, data.supports);
    std::vector<Polytope> hulls;
    for (const auto& sup : data.supports) {
        std::vector<QVector> pts;
        for (int i : sup) pts.push_back(data.weights[i]);
        hulls.push_back(Polytope::convex_hull(pts));
    }
    DeterministicRng rng(17);
    for (const Chamber& c : cc.chambers) {
        for (int s = 0; s < 8; ++s) {
            // Random strict convex combination of the vertices.
            const auto& verts = c.body.vertices();
            QVector pt(data.weights[0].size(), Rat(0));
            Rat total = 0;
            std::vector<Rat> lambda;
            for (size_t v = 0; v < verts.size(); ++v) {
                lambda.push_back(Rat(1 + static_cast<long>(rng.next_u64() % 97), 7));
                total += lambda.back();
            }
            for (size_t v = 0; v < verts.size(); ++v)
                for (size_t k = 0; k < pt.size(); ++k)
                    pt[k] += lambda[v] / total * verts[v][k];
            for (Rat& x : pt) x.canonicalize();
            CHECK(grid_profile(hulls, pt) ==
                  c.support_profile);
        }
    }
}

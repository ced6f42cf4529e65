#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "chowquot/errors.hpp"
#include "chowquot/families.hpp"
#include "chowquot/moment.hpp"
#include "oracles.hpp"

using namespace chowquot;

namespace {

FamilySpec hyper(int n, int alpha, int beta) {
    FamilySpec f;
    f.kind = FamilyKind::BidegreeHypersurface;
    f.n = n;
    f.alpha = alpha;
    f.beta = beta;
    return f;
}

FamilySpec quadric(int n) {
    FamilySpec f;
    f.kind = FamilyKind::EvenQuadric;
    f.n = n;
    return f;
}

FamilySpec blownup(int n) {
    FamilySpec f;
    f.kind = FamilyKind::BlownUpQuadric;
    f.n = n;
    return f;
}

}  // namespace

TEST_CASE("reduced bidegree pairs") {
    CHECK(reduced_pair(1, 2) == std::tuple<long, long, long>{1, 1, 2});
    CHECK(reduced_pair(2, 2) == std::tuple<long, long, long>{2, 1, 1});
    CHECK(reduced_pair(6, 4) == std::tuple<long, long, long>{2, 3, 2});
    CHECK_THROWS_AS(reduced_pair(0, 2), std::invalid_argument);
}

TEST_CASE("Fano detection") {
    CHECK(is_fano(hyper(3, 1, 3)));
    CHECK_FALSE(is_fano(hyper(3, 1, 4)));
    CHECK_FALSE(is_fano(hyper(3, 4, 2)));
    CHECK(is_fano(quadric(3)));
    CHECK(is_fano(blownup(3)));
}

TEST_CASE("smoothness flags") {
    CHECK(is_smooth_known(hyper(3, 1, 3)));
    CHECK(is_smooth_known(hyper(3, 3, 1)));
    CHECK_FALSE(is_smooth_known(hyper(3, 2, 3)));
    CHECK(is_smooth_known(quadric(3)));
    CHECK(is_smooth_known(blownup(3)));
}

TEST_CASE("ambient spec of X^3_(1,1)") {
    TorusActionSpec s = ambient_spec(hyper(2, 1, 1));
    CHECK(s.torus_rank == 2);
    CHECK(s.factors == std::vector<int>{2, 2});
    REQUIRE(s.weights.size() == 6);
    CHECK(s.weights[0] == ZVector{Int(0), Int(0)});
    CHECK(s.weights[1] == ZVector{Int(1), Int(0)});
    CHECK(s.weights[2] == ZVector{Int(0), Int(1)});
    CHECK(s.weights[3] == ZVector{Int(0), Int(0)});
    CHECK(s.weights[4] == ZVector{Int(-1), Int(0)});
    CHECK(s.weights[5] == ZVector{Int(0), Int(-1)});
    CHECK(s.equation.size() == 3);
    CHECK(global_stabilizer(s).is_trivial());
}

TEST_CASE("ambient spec of the quadric kinds is effective") {
    // T = (C*)^{n+1} acts through +-Id; the effective torus keeps rank
    // n+1 (for Q^4 that is rank 3).
    for (int n = 2; n <= 3; ++n) {
        TorusActionSpec q = ambient_spec(quadric(n));
        CHECK(q.torus_rank == n + 1);
        CHECK(q.factors == std::vector<int>{2 * n + 1});
        CHECK(global_stabilizer(q).is_trivial());
        // The blown-up quadric shares the quadric's action.
        TorusActionSpec w = ambient_spec(blownup(n));
        CHECK(w.weights == q.weights);
        CHECK(w.equation.size() == q.equation.size());
    }
}

TEST_CASE("chow quotient map monomials") {
    MonomialMap m12 = chow_quotient_map(hyper(3, 1, 2));
    REQUIRE(m12.monomials.size() == 3);
    // (x_1 y_1^2 : x_2 y_2^2 : x_3 y_3^2) over coordinates x_0..x_3, y_0..y_3.
    for (int i = 1; i <= 3; ++i) {
        std::vector<int> expected(8, 0);
        expected[i] = 1;
        expected[4 + i] = 2;
        CHECK(m12.monomials[i - 1] == expected);
    }
    MonomialMap q6 = chow_quotient_map(quadric(3));
    REQUIRE(q6.monomials.size() == 3);
    for (int i = 1; i <= 3; ++i) {
        std::vector<int> expected(8, 0);
        expected[2 * i] = 1;
        expected[2 * i + 1] = 1;
        CHECK(q6.monomials[i - 1] == expected);
    }
}

TEST_CASE("quotient map values are constant along torus orbits") {
    for (const FamilySpec& f : {hyper(3, 1, 2), quadric(3), blownup(2)}) {
        TorusActionSpec spec = ambient_spec(f);
        MonomialMap map = chow_quotient_map(f);
        DeterministicRng rng(301);
        AmbientPoint p = sample_point(spec, spec.full_support(), 61, 0);
        std::vector<Complex> base = map.evaluate(p.flat());
        for (int t = 0; t < 20; ++t) {
            std::vector<double> s(spec.torus_rank);
            for (double& x : s) x = 2 * rng.next_uniform() - 1;
            AmbientPoint moved = apply_torus_log(spec, p, s);
            std::vector<Complex> v = map.evaluate(moved.flat());
            // Projective comparison via cross ratios v_i * base_j = v_j * base_i.
            for (size_t i = 0; i < v.size(); ++i)
                for (size_t j = i + 1; j < v.size(); ++j)
                    CHECK(std::abs(v[i] * base[j] - v[j] * base[i]) < 1e-9);
        }
    }
}

TEST_CASE("quotient map monomials are torus-invariant (exact lattice check)") {
    for (const FamilySpec& f : {hyper(2, 1, 1), hyper(3, 2, 3), quadric(2), blownup(3)}) {
        // Weight zero on the unshifted torus weights.
        TorusActionSpec original;
        if (f.kind == FamilyKind::BidegreeHypersurface) {
            original = ambient_spec(f);
        } else {
            original.torus_rank = f.n + 1;
            original.factors = {2 * f.n + 1};
            for (int i = 0; i <= f.n; ++i) {
                ZVector w(f.n + 1, Int(0)), wn(f.n + 1, Int(0));
                w[i] = 1;
                wn[i] = -1;
                original.weights.push_back(w);
                original.weights.push_back(wn);
            }
        }
        MonomialMap map = chow_quotient_map(f);
        for (const std::vector<int>& mono : map.monomials) {
            ZVector w(original.torus_rank, Int(0));
            for (int i = 0; i < original.coordinate_count(); ++i)
                for (int k = 0; k < original.torus_rank; ++k)
                    w[k] += mono[i] * original.weights[i][k];
            CHECK(w == ZVector(original.torus_rank, Int(0)));
        }
        // On the reference-normalized effective spec all map monomials share
        // one weight (the common linearization shift), so ratios are
        // honest T'-invariants.
        TorusActionSpec spec = ambient_spec(f);
        ZVector common;
        for (const std::vector<int>& mono : map.monomials) {
            ZVector w(spec.torus_rank, Int(0));
            for (int i = 0; i < spec.coordinate_count(); ++i)
                for (int k = 0; k < spec.torus_rank; ++k)
                    w[k] += mono[i] * spec.weights[i][k];
            if (common.empty())
                common = w;
            else
                CHECK(w == common);
        }
    }
}

TEST_CASE("support realizability matches the witness-construction oracle") {
    DeterministicRng rng(71);
    for (const FamilySpec& f : {hyper(2, 1, 1), hyper(2, 1, 2), hyper(2, 2, 2), quadric(2)}) {
        TorusActionSpec spec = ambient_spec(f);
        const int coords = spec.coordinate_count();
        int checked = 0;
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
            if (!per_factor) {
                CHECK_THROWS_AS(realizable_support(f, pattern), InvalidStratumError);
                continue;
            }
            CHECK(realizable_support(f, pattern) ==
                  oracles::witness_exists(spec, pattern, rng));
            ++checked;
        }
        CHECK(checked >= 40);
    }
}

TEST_CASE("full support is realizable; single diagonal pairs are not") {
    FamilySpec f = hyper(2, 1, 1);
    CHECK(realizable_support(f, ambient_spec(f).full_support()));
    // Exactly the diagonal pair (x_0, y_0) plus padding off the diagonal.
    SupportPattern one_diag{0, 3, 1};  // x_0, y_0, x_1: one complete pair
    CHECK_FALSE(realizable_support(f, one_diag));
    SupportPattern no_diag{0, 4};  // x_0, y_1: zero complete pairs
    CHECK(realizable_support(f, no_diag));
}

TEST_CASE("chow boundary pairs of the named families") {
    ChowQuotientPair x12 = chow_boundary(hyper(3, 1, 2));
    CHECK(x12.base_dim == 2);
    CHECK(x12.gamma == Rat(1, 2));
    CHECK(x12.coefficients.size() == 4);

    ChowQuotientPair x13 = chow_boundary(hyper(3, 1, 3));
    CHECK(x13.gamma == Rat(2, 3));

    ChowQuotientPair w6 = chow_boundary(blownup(3));
    CHECK(w6.base_dim == 2);
    CHECK(w6.gamma == Rat(1, 2));

    ChowQuotientPair q6 = chow_boundary(quadric(3));
    CHECK(q6.gamma == 0);

    // gcd reduction: X_(2,2) has a = b = 1.
    CHECK(chow_boundary(hyper(3, 2, 2)).gamma == 0);
    // X_(6,4): a = 3, b = 2, gamma = 2/3 with stabilizer order 3.
    ChowQuotientPair x64 = chow_boundary(hyper(3, 6, 4));
    CHECK(x64.gamma == Rat(2, 3));
    CHECK(x64.stabilizer_orders[0] == 3);
}

TEST_CASE("both boundary routes agree across the family grid") {
    for (int n = 2; n <= 4; ++n) {
        for (int alpha = 1; alpha <= 6; ++alpha)
            for (int beta = 1; beta <= 6; ++beta)
                CHECK(chow_boundary(hyper(n, alpha, beta)) ==
                      boundary_from_stabilizers(hyper(n, alpha, beta)));
        CHECK(chow_boundary(quadric(n)) == boundary_from_stabilizers(quadric(n)));
        CHECK(chow_boundary(blownup(n)) == boundary_from_stabilizers(blownup(n)));
    }
}

TEST_CASE("boundary coefficients have the shape (m-1)/m") {
    for (const FamilySpec& f : {hyper(3, 6, 4), hyper(4, 5, 3), blownup(3), quadric(2)}) {
        ChowQuotientPair pair = boundary_from_stabilizers(f);
        REQUIRE(pair.coefficients.size() == pair.stabilizer_orders.size());
        for (size_t i = 0; i < pair.coefficients.size(); ++i) {
            const Int& m = pair.stabilizer_orders[i];
            Rat expected(m - 1, m);
            expected.canonicalize();
            CHECK(pair.coefficients[i] == expected);
            CHECK(pair.coefficients[i] >= 0);
            CHECK(pair.coefficients[i] < 1);
        }
    }
}

TEST_CASE("exceptional divisor stabilizer of the blown-up quadric") {
    for (int n = 2; n <= 4; ++n) {
        StabilizerGroup g = exc_divisor_stabilizer(blownup(n));
        CHECK(g.order == 2);
        REQUIRE(g.invariant_factors.size() == 1);
        CHECK(g.invariant_factors[0] == 2);
        // Coefficient cross-check: (m-1)/m = 1/2.
        Rat coeff(g.order - 1, g.order);
        coeff.canonicalize();
        CHECK(coeff == Rat(1, 2));
    }
    CHECK_THROWS_AS(exc_divisor_stabilizer(quadric(3)), std::invalid_argument);
    CHECK_THROWS_AS(exc_divisor_stabilizer(hyper(3, 1, 2)), std::invalid_argument);
}

TEST_CASE("orbit space reports") {
    auto r1 = quotient_space_report(hyper(3, 1, 1));
    REQUIRE(r1.has_value());
    CHECK(*r1 == "S² ∗ CP²");
    auto r2 = quotient_space_report(hyper(2, 1, 2));
    REQUIRE(r2.has_value());
    CHECK(*r2 == "S¹ ∗ CP¹");
    CHECK_FALSE(quotient_space_report(blownup(3)).has_value());
    CHECK_FALSE(quotient_space_report(quadric(2)).has_value());
}

TEST_CASE("selector parsing and round-trips") {
    FamilySpec f = FamilySpec::parse("hypersurface:n=3,alpha=1,beta=2");
    CHECK(f.kind == FamilyKind::BidegreeHypersurface);
    CHECK(f.n == 3);
    CHECK(f.alpha == 1);
    CHECK(f.beta == 2);
    CHECK(FamilySpec::parse(f.selector()).selector() == f.selector());
    CHECK(FamilySpec::parse("quadric:n=3").kind == FamilyKind::EvenQuadric);
    CHECK(FamilySpec::parse("blownup-quadric:n=4").n == 4);
    CHECK_THROWS_AS(FamilySpec::parse("cubic:n=3"), std::invalid_argument);
    CHECK_THROWS_AS(FamilySpec::parse("quadric:n=1"), std::invalid_argument);
    CHECK_THROWS_AS(FamilySpec::parse("hypersurface:n=3,alpha=0,beta=1"),
                    std::invalid_argument);
    CHECK_THROWS_AS(FamilySpec::parse("quadric"), std::invalid_argument);
    CHECK(hyper(3, 1, 2).display_name() == "X^5_(1,2)");
    CHECK(blownup(3).display_name() == "W^6");
    CHECK(quadric(2).display_name() == "Q^4");
}

TEST_CASE("dimension bookkeeping") {
    CHECK(hyper(3, 1, 2).dimension() == 5);
    CHECK(hyper(2, 1, 1).dimension() == 3);
    CHECK(quadric(3).dimension() == 6);
    CHECK(blownup(3).dimension() == 6);
}

// The three torus-variety families: symbolic descriptors, their torus
// actions, quotient monomial maps, support realizability, and the
// Chow-quotient boundary pair via two independent routes.

#pragma once

#include <complex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "chowquot/rational.hpp"
#include "chowquot/torus_action.hpp"

namespace chowquot {

enum class FamilyKind { BidegreeHypersurface, EvenQuadric, BlownUpQuadric };

struct FamilySpec {
    FamilyKind kind = FamilyKind::BidegreeHypersurface;
    int n = 2;
    int alpha = 1, beta = 1;  // hypersurface bidegree; ignored otherwise

    // gcd-reduced bidegree (d, a, b) with alpha = d*a, beta = d*b.
    long d() const;
    long a() const;
    long b() const;

    int dimension() const;  // 2n-1 for hypersurfaces, 2n for the quadric kinds
    bool is_quadric_kind() const { return kind != FamilyKind::BidegreeHypersurface; }

    void validate() const;

    std::string selector() const;     // "hypersurface:n=3,alpha=1,beta=2"
    std::string display_name() const;  // "X^5_(1,2)", "Q^6", "W^6"
    static FamilySpec parse(const std::string& selector);
};

// (d, a, b) with d = gcd(alpha, beta), a d = alpha, b d = beta.
std::tuple<long, long, long> reduced_pair(long alpha, long beta);

bool is_fano(const FamilySpec& f);

// Smoothness as established by the construction: bidegree hypersurfaces
// with min(alpha, beta) = 1, and both quadric kinds.
bool is_smooth_known(const FamilySpec& f);

// Weight data, factor structure and defining equation. Quadric kinds are
// returned pre-composed with make_effective.
TorusActionSpec ambient_spec(const FamilySpec& f);

// Torus-invariant monomial map to P^{n-1}, one exponent vector (over the
// ambient coordinates) per target coordinate.
struct MonomialMap {
    std::vector<std::vector<int>> monomials;

    int target_dimension() const { return static_cast<int>(monomials.size()) - 1; }
    std::vector<std::complex<double>> evaluate(
        const std::vector<std::complex<double>>& flat_coordinates) const;
};

MonomialMap chow_quotient_map(const FamilySpec& f);

// Vanishing pattern consistent with the defining equation: the number of
// diagonal pairs (hypersurface) / complete pairs (quadric kinds) fully
// inside the pattern must differ from 1. Pattern must be nonempty per factor.
bool realizable_support(const FamilySpec& f, const SupportPattern& pattern);

// Base P^{n-1} with hyperplanes H_0..H_n (H_0 = V(sum z_i)) and one
// rational coefficient (m_Z - 1)/m_Z per hyperplane.
struct ChowQuotientPair {
    int base_dim = 0;
    Rat gamma;                          // common coefficient
    std::vector<Rat> coefficients;      // per hyperplane H_0..H_n
    std::vector<Int> stabilizer_orders; // m_Z per hyperplane

    bool operator==(const ChowQuotientPair&) const = default;
    std::string to_json_string(int indent = -1) const;
};

// Closed-form route (reduced bidegree / the fixed quadric values).
ChowQuotientPair chow_boundary(const FamilySpec& f);

// Independent route: enumerate the fibre components over each hyperplane
// as coordinate strata (plus exceptional divisors for the blown-up
// quadric), take the maximal generic stabilizer order per hyperplane.
ChowQuotientPair boundary_from_stabilizers(const FamilySpec& f);

// Generic stabilizer of an exceptional divisor of the blown-up quadric on
// the effective torus, from the blowup chart's weight-homogeneity
// condition modulo the global stabilizer. Throws on other kinds.
StabilizerGroup exc_divisor_stabilizer(const FamilySpec& f);

// Homeomorphism type of the compact-torus orbit space, available for the
// hypersurface family only.
std::optional<std::string> quotient_space_report(const FamilySpec& f);

}  // namespace chowquot

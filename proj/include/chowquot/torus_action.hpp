// Torus actions on products of projective spaces: weight data, the
// defining hypersurface equation, generic stabilizers of coordinate
// strata, and reduction to an effective torus.

#pragma once

#include <set>
#include <vector>

#include "chowquot/integer_matrix.hpp"
#include "chowquot/rational.hpp"

namespace chowquot {

// One monomial of the defining equation: exponent per ambient coordinate.
struct EquationTerm {
    std::vector<int> exponents;
    Rat coefficient;
};

// The set of ambient coordinate indices allowed to be nonzero.
using SupportPattern = std::set<int>;

struct TorusActionSpec {
    int torus_rank = 0;
    // Projective dimension of each factor; factor f contributes
    // factors[f] + 1 ambient coordinates, flattened factor-major.
    std::vector<int> factors;
    // One integer weight vector (length torus_rank) per ambient coordinate.
    std::vector<ZVector> weights;
    // Defining equation as a sum of terms; empty means no hypersurface.
    std::vector<EquationTerm> equation;

    int coordinate_count() const;
    int factor_of(int coordinate) const;
    int factor_offset(int factor) const;
    int factor_size(int factor) const { return factors[factor] + 1; }

    SupportPattern full_support() const;

    // Throws std::invalid_argument when the invariants fail: every
    // coordinate weighted, equation multihomogeneous of a single
    // multidegree per factor, and weight-homogeneous for the torus.
    void validate() const;

    // The common torus weight of the equation monomials (equation nonempty).
    ZVector equation_weight() const;

    // Number of equation terms supported entirely inside the pattern.
    // A pattern with exactly one surviving term cannot be realized by a
    // point of the hypersurface.
    int surviving_equation_terms(const SupportPattern& support) const;
    bool support_consistent_with_equation(const SupportPattern& support) const;
};

// Finite abelian group as a chain of invariant factors d_1 | d_2 | ...
// (only entries > 1 are kept).
struct StabilizerGroup {
    std::vector<Int> invariant_factors;
    Int order = 1;

    bool is_trivial() const { return order == 1; }
    static StabilizerGroup from_diagonal(const std::vector<Int>& diagonal);
};

// Matrix whose rows span the lattice of within-factor weight differences
// over the supported coordinates (reference = first supported coordinate
// of each factor).
IntegerMatrix weight_difference_matrix(const TorusActionSpec& spec,
                                       const SupportPattern& support);

// Torsion of the cokernel of the weight-difference lattice: the finite
// part of the generic stabilizer of the open stratum.
StabilizerGroup global_stabilizer(const TorusActionSpec& spec);

// Same for the locus where exactly the supported coordinates are nonzero.
// Throws InvalidStratumError when some factor has empty support.
StabilizerGroup stratum_stabilizer(const TorusActionSpec& spec,
                                   const SupportPattern& support);

// Codimension of the weight-difference lattice; the generic stabilizer has
// a positive-dimensional identity component iff this is > 0.
int stabilizer_dimension(const TorusActionSpec& spec, const SupportPattern& support);

// Reduces to the quotient torus acting effectively: re-expresses the
// (reference-normalized) weights in a basis of the lattice they generate.
TorusActionSpec make_effective(const TorusActionSpec& spec);

// Invariant factors of L_num / L_den for two sublattices given by spanning
// rows, requiring L_den <= L_num. Used for stabilizer quotients.
StabilizerGroup lattice_quotient(const IntegerMatrix& numerator_rows,
                                 const IntegerMatrix& denominator_rows);

}  // namespace chowquot

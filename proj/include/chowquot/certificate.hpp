// Chains family data through the quotient pair, the glct lower bound and
// the alpha-invariant criterion into an auditable certificate.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chowquot/families.hpp"
#include "chowquot/integer_matrix.hpp"
#include "chowquot/log_canonical.hpp"

namespace chowquot {

Rat tian_threshold(int dim);

// Generators of the finite symmetry acting on the character lattice:
// the standard representation of S_{n+1} for hypersurfaces; pair
// permutations plus one within-pair involution for the quadric kinds.
std::vector<IntegerMatrix> symmetry_generators(const FamilySpec& f);

// True iff the fixed subspace of the generated action on M (x) Q is zero.
bool symmetry_check(const FamilySpec& f);
bool symmetry_check(const std::vector<IntegerMatrix>& generators);

enum class Verdict { Certified, Inconclusive };

struct TrailStep {
    std::string step;
    std::string citation;
    std::string value;
};

struct KECertificate {
    FamilySpec family;
    int dim_x = 0;
    ChowQuotientPair pair;
    Rat gamma;
    std::optional<GlctBound> pair_glct_bound;  // absent when no bound applies
    std::optional<Rat> glct_upstairs;          // min{1, pair bound}
    Rat tian;                                  // dim/(dim+1)
    bool fano = false;
    bool smooth_known = false;
    bool symmetry_ok = false;
    Verdict verdict = Verdict::Inconclusive;
    std::string reason;  // nonempty when Inconclusive
    std::vector<TrailStep> trail;

    std::string to_json_string(int indent = -1) const;
};

// Assembles the full audit trail. Inconclusive is a value, not an error:
// non-Fano families, unestablished log terminality, bases other than P^2
// and failed comparisons all land there with a reason.
KECertificate certify(const FamilySpec& f);

}  // namespace chowquot

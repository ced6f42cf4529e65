// Numeric layer over the exact core: moment-map evaluation, Kempf-Ness
// minimization onto moment fibres, exact semistability via support
// polytopes, reproducible sampling, and the boundary-fibre orbit probe.

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "chowquot/families.hpp"
#include "chowquot/polytope.hpp"
#include "chowquot/torus_action.hpp"

namespace chowquot {

using Complex = std::complex<double>;

// A point of the ambient product of projective spaces, one unit-norm
// coordinate vector per factor.
struct AmbientPoint {
    std::vector<std::vector<Complex>> factors;

    std::vector<Complex> flat() const;
    void normalize();
    // Checks factor sizes, non-vanishing, and the equation residual.
    void validate(const TorusActionSpec& spec, double residual_tol = 1e-8) const;
    double equation_residual(const TorusActionSpec& spec) const;
};

// The monomial coordinates of the multidegree-(1,...,1) embedding: one
// ambient coordinate per factor.
struct MonomialTable {
    std::vector<std::vector<int>> coordinate_choices;  // flat indices, one per factor
    std::vector<ZVector> weights;
    std::vector<std::vector<double>> weights_dbl;

    static MonomialTable build(const TorusActionSpec& spec);
    size_t size() const { return weights.size(); }
};

std::vector<double> moment_map(const TorusActionSpec& spec, const AmbientPoint& p);

// Hull of all monomial weights (the moment image).
Polytope moment_polytope(const TorusActionSpec& spec);

// Hull of the monomial weights supported on the pattern.
Polytope support_weight_hull(const TorusActionSpec& spec, const SupportPattern& support);

// Exact semistability for the linearization u: closed membership of u in
// the support weight hull. Throws UnrealizableSupportError when the
// pattern is inconsistent with the defining equation.
bool semistable_exact(const TorusActionSpec& spec, const SupportPattern& support,
                      const QVector& u);

enum class KnStatus { Converged, Diverged, IterationLimit };

struct KnOptions {
    double tol = 1e-9;
    int max_iter = 500;
    double step_clip = 10.0;   // trust bound per Newton step
    double norm_bound = 1e6;   // iterate guard; exceeding it stops the run
};

struct KNSolveResult {
    KnStatus status = KnStatus::IterationLimit;
    std::vector<double> minimizer;     // s in R^m, log-coordinates of the real torus
    std::vector<double> moment_value;  // mu(e^s . p)
    double gradient_norm = 0;          // ||mu(e^s . p) - u||_2
    int iterations = 0;
    double objective = 0;
    // Exact separating functional when status == Diverged.
    std::optional<ZVector> separation_direction;

    std::string to_json_string(int indent = -1) const;
};

// Minimizes F(s) = (1/2) log sum_w |c_w|^2 e^{2<w,s>} - <u,s>; grad F = mu - u.
// u outside the exact support hull yields an immediate Diverged with a
// separation certificate.
KNSolveResult kn_minimize(const TorusActionSpec& spec, const AmbientPoint& p,
                          const QVector& u, const KnOptions& options = {});

// Rescales the point by the real torus element exp(s) and renormalizes.
AmbientPoint apply_torus_log(const TorusActionSpec& spec, const AmbientPoint& p,
                             const std::vector<double>& s);

// Deterministic sampling: complex Gaussian coordinates on the support,
// then the equation is solved for one deterministically chosen coordinate.
// The stream is derived from (seed, sample_index) only.
AmbientPoint sample_point(const TorusActionSpec& spec, const SupportPattern& support,
                          std::uint64_t seed, std::uint64_t sample_index);

struct FibreProbeOptions {
    int trials = 50;
    std::uint64_t seed = 0;
    KnOptions kn{};
    double value_tol = 1e-7;  // projective comparison tolerance for map values
};

struct FibreProbeReport {
    std::string u_location;    // interior / boundary
    int trials = 0;
    int converged = 0;
    int collapsed = 0;         // samples whose map value degenerates to zero
    int map_value_classes = 0; // projective classes, the collapsed value counting as one
    int orbit_classes = 0;     // classes under support pattern + invariant monomials
    bool single_orbit = false;
    bool inconclusive = false;
    std::vector<std::string> sample_values;  // representative map values (printable)

    std::string verdict() const;
    std::string to_json_string(int indent = -1) const;
};

// Samples points, flows each to the moment fibre over u, and compares the
// quotient monomial map values of the converged samples.
FibreProbeReport fibre_orbit_probe(const TorusActionSpec& spec, const MonomialMap& map,
                                   const QVector& u, const FibreProbeOptions& options);

// Deterministic uniform/gaussian stream (seed, index) -> doubles; exposed
// for the test oracles.
struct DeterministicRng {
    explicit DeterministicRng(std::uint64_t seed);
    std::uint64_t next_u64();
    double next_uniform();       // [0, 1)
    double next_gaussian();      // Box-Muller, fresh pair each call
    Complex next_complex_gaussian();

private:
    std::uint64_t state_;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace chowquot

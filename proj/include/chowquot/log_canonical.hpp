// Plane log pairs: homogeneous ternary forms with exact rational
// coefficients, one-parameter-subgroup degenerations, the concurrent-lines
// log-canonicity test, and the glct lower bound for (P^2, B_gamma).

#pragma once

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chowquot/rational.hpp"

namespace chowquot {

// Homogeneous polynomial in x1, x2, x3 with exact rational coefficients.
class TernaryForm {
public:
    using Exponent = std::array<int, 3>;

    TernaryForm() = default;
    explicit TernaryForm(std::map<Exponent, Rat> terms);

    // Parses sums of terms like "x1^2*x2 - 3/2*x3^3 + x1*x2*x3".
    static TernaryForm parse(const std::string& text);

    bool is_zero() const { return terms_.empty(); }
    int degree() const;
    bool is_homogeneous() const;
    const std::map<Exponent, Rat>& terms() const { return terms_; }

    // Sum of the monomials of maximal <exponent, w>.
    TernaryForm initial_form(const std::array<long, 3>& w) const;

    // Coefficient substitution x_i -> t^{-w_i} x_i (numeric), i.e. the
    // coefficients of phi_t(V(F)) before normalization.
    std::vector<double> transported_coefficients(const std::array<long, 3>& w, double t,
                                                 const std::vector<Exponent>& order) const;

    // Swap x1 and x2.
    TernaryForm swapped_x1_x2() const;

    // Scales so the lexicographically largest monomial has coefficient 1.
    TernaryForm monic() const;
    bool proportional_to(const TernaryForm& other) const;

    std::complex<double> evaluate(const std::array<std::complex<double>, 3>& x) const;

    // True when the form is linear and vanishes at the point.
    bool is_line_through(const std::array<Rat, 3>& point) const;

    std::vector<Exponent> monomial_order() const;
    std::string to_string() const;

    bool operator==(const TernaryForm&) const = default;
    bool operator<(const TernaryForm& other) const { return terms_ < other.terms_; }

private:
    std::map<Exponent, Rat> terms_;
};

struct DivisorComponent {
    TernaryForm poly;
    Rat coefficient;  // multiplicity a_i >= 0
};

struct PlaneDivisor {
    std::vector<DivisorComponent> components;

    void validate() const;  // distinct reduced components, coefficients >= 0
    Rat total_degree() const;  // sum a_i * deg(F_i)
    std::string to_json_string(int indent = -1) const;
    static PlaneDivisor from_json_string(const std::string& text);
};

// One-parameter subgroup t . [x] = [t^{w_1} x_1 : t^{w_2} x_2 : t^{w_3} x_3].
struct OnePS {
    std::array<long, 3> weights;
    void validate() const;  // weights not all equal
};

// Flat limit under the subgroup: per component the top-weight initial
// form; components with proportional initial forms merge (coefficients add).
PlaneDivisor degenerate(const PlaneDivisor& d, const OnePS& w);

// Concurrent-lines log-canonicity: every component a line through the
// point; log canonical iff sum a_i <= 2 and each a_i <= 1.
bool is_lc_concurrent(const PlaneDivisor& d, const std::array<Rat, 3>& point);

// Coefficient of the exceptional divisor after one blowup at the common
// point: sum a_i - 1.
Rat blowup_discrepancy_concurrent(const PlaneDivisor& d, const std::array<Rat, 3>& point);

// Feasibility of the two degeneration inequalities at (gamma, lambda):
// 2 gamma + 3 lambda - 4 gamma lambda <= 2  and  3 lambda - 4 gamma lambda <= 1.
bool lc_feasible(const Rat& gamma, const Rat& lambda);

// A rational value or +infinity.
struct GlctBound {
    bool is_infinite = false;
    Rat value;

    bool operator==(const GlctBound&) const = default;
    std::string to_string() const { return is_infinite ? "inf" : rat_to_string(value); }
};

// Closed form: 1/(3-4g) for g <= 1/2; 2(1-g)/(3-4g) for 1/2 <= g <= 3/4;
// infinity for g >= 3/4. Requires 0 <= gamma < 1.
GlctBound glct_bound(const Rat& gamma);

// Independent route: sup { lambda : lc_feasible(gamma, lambda) } recovered
// from the boolean oracle alone by exact bisection plus continued-fraction
// snapping, with a verification step.
GlctBound glct_bound_via_search(const Rat& gamma);

}  // namespace chowquot

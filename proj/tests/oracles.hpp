// Independent brute-force oracles used by the test suites. These stay
// deliberately naive and share no code path with the implementations they
// check.

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "chowquot/log_canonical.hpp"
#include "chowquot/moment.hpp"
#include "chowquot/polytope.hpp"
#include "chowquot/torus_action.hpp"

namespace chowquot::oracles {

// Number of tuples t in (mu_k)^m acting trivially on the stratum: for every
// within-factor pair of supported coordinates, <w_i - w_j, t> = 0 mod k.
inline long brute_force_stabilizer_count(const TorusActionSpec& spec,
                                         const SupportPattern& support, long k) {
    const int m = spec.torus_rank;
    std::vector<ZVector> diffs;
    IntegerMatrix dm = weight_difference_matrix(spec, support);
    for (int r = 0; r < dm.rows(); ++r) diffs.push_back(dm.row(r));

    std::vector<long> tuple(m, 0);
    long count = 0;
    for (;;) {
        bool trivial = true;
        for (const ZVector& d : diffs) {
            long s = 0;
            for (int i = 0; i < m; ++i) s += static_cast<long>(d[i].get_si()) * tuple[i];
            if (((s % k) + k) % k != 0) { trivial = false; break; }
        }
        if (trivial) ++count;
        int i = 0;
        while (i < m) {
            if (++tuple[i] < k) break;
            tuple[i] = 0;
            ++i;
        }
        if (i == m) break;
    }
    return count;
}

// Extreme points by definition: p is extreme iff it is not in the hull of
// the remaining points (decided by the exact simplex oracle).
inline std::vector<QVector> brute_force_extreme_points(const std::vector<QVector>& points) {
    std::vector<QVector> out;
    for (size_t i = 0; i < points.size(); ++i) {
        std::vector<QVector> others;
        for (size_t j = 0; j < points.size(); ++j)
            if (j != i && points[j] != points[i]) others.push_back(points[j]);
        if (others.empty() || !point_in_hull_lp(others, points[i]))
            out.push_back(points[i]);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Exact moment of a rational mass distribution over rational weights.
inline QVector exact_moment(const std::vector<QVector>& weights,
                            const std::vector<Rat>& masses) {
    QVector mu(weights[0].size(), Rat(0));
    Rat total = 0;
    for (size_t k = 0; k < weights.size(); ++k) {
        total += masses[k];
        for (size_t j = 0; j < mu.size(); ++j) mu[j] += masses[k] * weights[k][j];
    }
    for (Rat& x : mu) {
        x /= total;
        x.canonicalize();
    }
    return mu;
}

// Numeric limit of the transported, sup-normalized coefficient vector of a
// form under the subgroup action at small t, against the normalized
// initial form. On the initial form's support the shared t-power cancels,
// so the mismatch there is pure floating-point noise; entries off the
// support decay like t^(weight gap) and are reported separately.
struct DegenerationCheck {
    double support_mismatch = 0;   // on the initial form's monomials
    double off_support_mass = 0;   // largest surviving non-initial entry
};

inline DegenerationCheck degeneration_check(const TernaryForm& f,
                                            const std::array<long, 3>& w, double t) {
    std::vector<TernaryForm::Exponent> order = f.monomial_order();
    std::vector<double> moved = f.transported_coefficients(w, t, order);
    double sup = 0;
    for (double x : moved) sup = std::max(sup, std::abs(x));
    for (double& x : moved) x /= sup;

    TernaryForm init = f.initial_form(w);
    std::vector<double> target(order.size(), 0.0);
    for (size_t i = 0; i < order.size(); ++i) {
        auto it = init.terms().find(order[i]);
        if (it != init.terms().end()) target[i] = rat_to_double(it->second);
    }
    double tsup = 0;
    for (double x : target) tsup = std::max(tsup, std::abs(x));
    for (double& x : target) x /= tsup;

    size_t lead = 0;
    for (size_t i = 0; i < target.size(); ++i)
        if (std::abs(target[i]) > std::abs(target[lead])) lead = i;
    double flip = (moved[lead] * target[lead] < 0) ? -1.0 : 1.0;
    DegenerationCheck out;
    for (size_t i = 0; i < order.size(); ++i) {
        if (target[i] != 0)
            out.support_mismatch =
                std::max(out.support_mismatch, std::abs(flip * moved[i] - target[i]));
        else
            out.off_support_mass = std::max(out.off_support_mass, std::abs(moved[i]));
    }
    return out;
}

// Independent witness-construction oracle for support realizability: for a
// single surviving equation term no witness can exist (a monomial of
// nonzero coordinates is nonzero); otherwise attempt the construction
// numerically without consulting the realizability rule.
inline bool witness_exists(const TorusActionSpec& spec, const SupportPattern& pattern,
                           DeterministicRng& rng) {
    using Complex = std::complex<double>;
    std::vector<int> surviving;
    for (size_t t = 0; t < spec.equation.size(); ++t) {
        bool ok = true;
        for (int i = 0; i < spec.coordinate_count() && ok; ++i)
            if (spec.equation[t].exponents[i] > 0 && !pattern.count(i)) ok = false;
        if (ok) surviving.push_back(static_cast<int>(t));
    }
    if (surviving.size() == 1) return false;

    for (int attempt = 0; attempt < 40; ++attempt) {
        std::vector<Complex> z(spec.coordinate_count(), Complex(0, 0));
        for (int i : pattern) z[i] = rng.next_complex_gaussian();
        if (!surviving.empty()) {
            int solve_coord = -1, solve_term = -1, solve_exp = 0;
            for (int i = 0; i < spec.coordinate_count() && solve_coord < 0; ++i) {
                if (!pattern.count(i)) continue;
                int hits = 0, last = -1;
                for (int t : surviving)
                    if (spec.equation[t].exponents[i] > 0) { ++hits; last = t; }
                if (hits == 1) {
                    solve_coord = i;
                    solve_term = last;
                    solve_exp = spec.equation[last].exponents[i];
                }
            }
            if (solve_coord < 0) return false;
            Complex rest = 0;
            for (int t : surviving) {
                if (t == solve_term) continue;
                Complex v = rat_to_double(spec.equation[t].coefficient);
                for (int i = 0; i < spec.coordinate_count(); ++i)
                    for (int e = 0; e < spec.equation[t].exponents[i]; ++e) v *= z[i];
                rest += v;
            }
            Complex cofactor = rat_to_double(spec.equation[solve_term].coefficient);
            for (int i = 0; i < spec.coordinate_count(); ++i) {
                if (i == solve_coord) continue;
                for (int e = 0; e < spec.equation[solve_term].exponents[i]; ++e)
                    cofactor *= z[i];
            }
            if (std::abs(cofactor) < 1e-9) continue;
            Complex target = -rest / cofactor;
            if (std::abs(target) < 1e-9) continue;
            z[solve_coord] = std::pow(target, 1.0 / solve_exp);
        }
        Complex sum = 0;
        for (const EquationTerm& term : spec.equation) {
            Complex v = rat_to_double(term.coefficient);
            for (int i = 0; i < spec.coordinate_count(); ++i)
                for (int e = 0; e < term.exponents[i]; ++e) v *= z[i];
            sum += v;
        }
        if (std::abs(sum) > 1e-8) continue;
        bool match = true;
        for (int i = 0; i < spec.coordinate_count() && match; ++i) {
            bool nz = std::abs(z[i]) > 1e-9;
            match = nz == (pattern.count(i) > 0);
        }
        if (match) return true;
    }
    return false;
}

// Closure of a matrix group from generators (exact); empty result means the
// closure exceeded the cap.
inline std::vector<IntegerMatrix> group_closure(const std::vector<IntegerMatrix>& gens,
                                                size_t cap = 4000) {
    std::vector<IntegerMatrix> elems;
    elems.push_back(IntegerMatrix::identity(gens.front().rows()));
    for (size_t head = 0; head < elems.size(); ++head) {
        for (const IntegerMatrix& g : gens) {
            IntegerMatrix prod = g.multiplied(elems[head]);
            bool known = false;
            for (const IntegerMatrix& e : elems)
                if (e == prod) { known = true; break; }
            if (!known) {
                elems.push_back(std::move(prod));
                if (elems.size() > cap) return {};
            }
        }
    }
    return elems;
}

}  // namespace chowquot::oracles

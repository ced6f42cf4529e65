#include "chowquot/moment.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "chowquot/errors.hpp"

namespace chowquot {

namespace {

double norm2(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

std::vector<Complex> AmbientPoint::flat() const {
    std::vector<Complex> out;
    for (const auto& f : factors) out.insert(out.end(), f.begin(), f.end());
    return out;
}

void AmbientPoint::normalize() {
    for (auto& f : factors) {
        double n = 0;
        for (const Complex& z : f) n += std::norm(z);
        n = std::sqrt(n);
        if (n == 0) throw std::invalid_argument("ambient point has a vanishing factor");
        for (Complex& z : f) z /= n;
    }
}

double AmbientPoint::equation_residual(const TorusActionSpec& spec) const {
    if (spec.equation.empty()) return 0;
    std::vector<Complex> z = flat();
    Complex sum = 0;
    for (const EquationTerm& term : spec.equation) {
        Complex v = rat_to_double(term.coefficient);
        for (size_t i = 0; i < z.size(); ++i)
            for (int e = 0; e < term.exponents[i]; ++e) v *= z[i];
        sum += v;
    }
    return std::abs(sum);
}

void AmbientPoint::validate(const TorusActionSpec& spec, double residual_tol) const {
    if (factors.size() != spec.factors.size())
        throw std::invalid_argument("ambient point factor count mismatch");
    for (size_t f = 0; f < factors.size(); ++f) {
        if (static_cast<int>(factors[f].size()) != spec.factor_size(static_cast<int>(f)))
            throw std::invalid_argument("ambient point factor size mismatch");
        double n = 0;
        for (const Complex& z : factors[f]) n += std::norm(z);
        if (n == 0) throw std::invalid_argument("ambient point has a vanishing factor");
    }
    if (equation_residual(spec) > residual_tol)
        throw std::invalid_argument("ambient point does not satisfy the defining equation");
}

MonomialTable MonomialTable::build(const TorusActionSpec& spec) {
    MonomialTable table;
    std::vector<int> choice(spec.factors.size(), 0);
    for (;;) {
        std::vector<int> coords;
        ZVector w(spec.torus_rank, Int(0));
        for (size_t f = 0; f < spec.factors.size(); ++f) {
            int idx = spec.factor_offset(static_cast<int>(f)) + choice[f];
            coords.push_back(idx);
            for (int k = 0; k < spec.torus_rank; ++k) w[k] += spec.weights[idx][k];
        }
        std::vector<double> wd(spec.torus_rank);
        for (int k = 0; k < spec.torus_rank; ++k) wd[k] = w[k].get_d();
        table.coordinate_choices.push_back(std::move(coords));
        table.weights.push_back(std::move(w));
        table.weights_dbl.push_back(std::move(wd));

        size_t f = 0;
        while (f < choice.size()) {
            if (++choice[f] < spec.factor_size(static_cast<int>(f))) break;
            choice[f] = 0;
            ++f;
        }
        if (f == choice.size()) break;
    }
    return table;
}

std::vector<double> moment_map(const TorusActionSpec& spec, const AmbientPoint& p) {
    p.validate(spec);
    MonomialTable table = MonomialTable::build(spec);
    std::vector<Complex> z = p.flat();
    std::vector<double> mu(spec.torus_rank, 0.0);
    double total = 0;
    for (size_t k = 0; k < table.size(); ++k) {
        Complex c = 1.0;
        for (int idx : table.coordinate_choices[k]) c *= z[idx];
        double mass = std::norm(c);
        total += mass;
        for (int j = 0; j < spec.torus_rank; ++j) mu[j] += mass * table.weights_dbl[k][j];
    }
    if (total == 0)
        throw std::invalid_argument("all monomial coordinates vanish");
    for (double& x : mu) x /= total;
    return mu;
}

Polytope moment_polytope(const TorusActionSpec& spec) {
    MonomialTable table = MonomialTable::build(spec);
    std::vector<QVector> pts;
    for (const ZVector& w : table.weights) {
        QVector q(w.size());
        for (size_t i = 0; i < w.size(); ++i) q[i] = Rat(w[i]);
        pts.push_back(std::move(q));
    }
    return Polytope::convex_hull(std::move(pts));
}

Polytope support_weight_hull(const TorusActionSpec& spec, const SupportPattern& support) {
    MonomialTable table = MonomialTable::build(spec);
    std::vector<QVector> pts;
    for (size_t k = 0; k < table.size(); ++k) {
        bool supported = true;
        for (int idx : table.coordinate_choices[k]) supported &= support.count(idx) > 0;
        if (!supported) continue;
        QVector q(table.weights[k].size());
        for (size_t i = 0; i < q.size(); ++i) q[i] = Rat(table.weights[k][i]);
        pts.push_back(std::move(q));
    }
    if (pts.empty()) throw std::invalid_argument("support carries no monomial coordinate");
    return Polytope::convex_hull(std::move(pts));
}

bool semistable_exact(const TorusActionSpec& spec, const SupportPattern& support,
                      const QVector& u) {
    for (size_t f = 0; f < spec.factors.size(); ++f) {
        int lo = spec.factor_offset(static_cast<int>(f));
        int hi = lo + spec.factor_size(static_cast<int>(f));
        bool nonempty = false;
        for (int i = lo; i < hi && !nonempty; ++i) nonempty = support.count(i) > 0;
        if (!nonempty) throw InvalidStratumError("support misses a projective factor");
    }
    if (!spec.support_consistent_with_equation(support))
        throw UnrealizableSupportError(
            "support pattern is unrealizable; consult realizable_support first");
    return support_weight_hull(spec, support).contains(u);
}

AmbientPoint apply_torus_log(const TorusActionSpec& spec, const AmbientPoint& p,
                             const std::vector<double>& s) {
    AmbientPoint out = p;
    for (size_t f = 0; f < out.factors.size(); ++f) {
        int lo = spec.factor_offset(static_cast<int>(f));
        for (size_t c = 0; c < out.factors[f].size(); ++c) {
            double e = 0;
            for (int k = 0; k < spec.torus_rank; ++k)
                e += spec.weights[lo + static_cast<int>(c)][k].get_d() * s[k];
            out.factors[f][c] *= std::exp(e);
        }
    }
    out.normalize();
    return out;
}

namespace {

// Small dense symmetric solve; returns false when the pivot degenerates.
bool solve_spd(std::vector<std::vector<double>> h, std::vector<double> g,
               std::vector<double>& out) {
    const int n = static_cast<int>(g.size());
    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(h[i][k]) > std::abs(h[p][k])) p = i;
        if (std::abs(h[p][k]) < 1e-13) return false;
        std::swap(h[p], h[k]);
        std::swap(g[p], g[k]);
        for (int i = k + 1; i < n; ++i) {
            double f = h[i][k] / h[k][k];
            for (int j = k; j < n; ++j) h[i][j] -= f * h[k][j];
            g[i] -= f * g[k];
        }
    }
    out.assign(n, 0.0);
    for (int i = n - 1; i >= 0; --i) {
        double s = g[i];
        for (int j = i + 1; j < n; ++j) s -= h[i][j] * out[j];
        out[i] = s / h[i][i];
    }
    return true;
}

struct KnObjective {
    std::vector<double> log_mass;             // log |c_w|^2 for active monomials
    std::vector<std::vector<double>> weights; // their weight vectors
    std::vector<double> u;
    int rank;

    // F, mu at s via a softmax over l_k = log_mass_k + 2 <w_k, s>.
    void eval(const std::vector<double>& s, double& f_out, std::vector<double>& mu,
              std::vector<std::vector<double>>* cov = nullptr) const {
        const size_t n = log_mass.size();
        std::vector<double> l(n);
        double lmax = -std::numeric_limits<double>::infinity();
        for (size_t k = 0; k < n; ++k) {
            double t = log_mass[k];
            for (int j = 0; j < rank; ++j) t += 2 * weights[k][j] * s[j];
            l[k] = t;
            lmax = std::max(lmax, t);
        }
        double z = 0;
        std::vector<double> p(n);
        for (size_t k = 0; k < n; ++k) {
            p[k] = std::exp(l[k] - lmax);
            z += p[k];
        }
        for (double& x : p) x /= z;
        mu.assign(rank, 0.0);
        for (size_t k = 0; k < n; ++k)
            for (int j = 0; j < rank; ++j) mu[j] += p[k] * weights[k][j];
        f_out = 0.5 * (lmax + std::log(z));
        for (int j = 0; j < rank; ++j) f_out -= u[j] * s[j];
        if (cov) {
            cov->assign(rank, std::vector<double>(rank, 0.0));
            for (size_t k = 0; k < n; ++k)
                for (int i = 0; i < rank; ++i)
                    for (int j = 0; j < rank; ++j)
                        (*cov)[i][j] += p[k] * weights[k][i] * weights[k][j];
            for (int i = 0; i < rank; ++i)
                for (int j = 0; j < rank; ++j) (*cov)[i][j] -= mu[i] * mu[j];
        }
    }
};

std::optional<ZVector> separation_certificate(const Polytope& hull, const QVector& u) {
    for (const Hyperplane& eq : hull.equations()) {
        Rat r = dot(eq.normal, u) - eq.offset;
        if (r != 0) {
            ZVector dir = eq.normal;
            if (r < 0)
                for (Int& x : dir) x = -x;
            return dir;
        }
    }
    for (const Halfspace& f : hull.facets())
        if (dot(f.normal, u) > f.offset) return f.normal;
    return std::nullopt;
}

}  // namespace

KNSolveResult kn_minimize(const TorusActionSpec& spec, const AmbientPoint& p,
                          const QVector& u, const KnOptions& options) {
    p.validate(spec);
    if (static_cast<int>(u.size()) != spec.torus_rank)
        throw std::invalid_argument("linearization dimension mismatch");

    MonomialTable table = MonomialTable::build(spec);
    std::vector<Complex> z = p.flat();

    KnObjective obj;
    obj.rank = spec.torus_rank;
    obj.u.resize(spec.torus_rank);
    for (int j = 0; j < spec.torus_rank; ++j) obj.u[j] = rat_to_double(u[j]);
    std::vector<QVector> active_weights;
    for (size_t k = 0; k < table.size(); ++k) {
        Complex c = 1.0;
        for (int idx : table.coordinate_choices[k]) c *= z[idx];
        double mass = std::norm(c);
        if (mass <= 0) continue;
        obj.log_mass.push_back(std::log(mass));
        obj.weights.push_back(table.weights_dbl[k]);
        QVector w(table.weights[k].size());
        for (size_t i = 0; i < w.size(); ++i) w[i] = Rat(table.weights[k][i]);
        active_weights.push_back(std::move(w));
    }

    KNSolveResult res;
    res.minimizer.assign(spec.torus_rank, 0.0);

    // Exact stability gate: u must lie in the closed support hull.
    Polytope hull = Polytope::convex_hull(active_weights);
    if (!hull.contains(u)) {
        res.status = KnStatus::Diverged;
        res.separation_direction = separation_certificate(hull, u);
        double f;
        obj.eval(res.minimizer, f, res.moment_value);
        res.objective = f;
        res.gradient_norm = [&] {
            std::vector<double> g(res.moment_value);
            for (int j = 0; j < spec.torus_rank; ++j) g[j] -= obj.u[j];
            return norm2(g);
        }();
        return res;
    }

    std::vector<double> s(spec.torus_rank, 0.0), mu;
    double f;
    std::vector<std::vector<double>> cov;
    obj.eval(s, f, mu, &cov);
    for (int iter = 0; iter <= options.max_iter; ++iter) {
        std::vector<double> g(mu);
        for (int j = 0; j < spec.torus_rank; ++j) g[j] -= obj.u[j];
        double gn = norm2(g);
        res.iterations = iter;
        res.minimizer = s;
        res.moment_value = mu;
        res.gradient_norm = gn;
        res.objective = f;
        if (gn <= options.tol) {
            res.status = KnStatus::Converged;
            return res;
        }
        if (iter == options.max_iter) break;

        // Levenberg-damped Newton on 2*Cov; the clip keeps the step sane
        // when the mass concentrates on a face and Cov degenerates.
        std::vector<std::vector<double>> h(cov);
        double max_diag = 0;
        for (int j = 0; j < spec.torus_rank; ++j)
            max_diag = std::max(max_diag, std::abs(h[j][j]));
        double damping = std::max(1e-12, 1e-9 * max_diag);
        for (int i = 0; i < spec.torus_rank; ++i) {
            for (double& x : h[i]) x *= 2;
            h[i][i] += damping;
        }
        std::vector<double> delta;
        std::vector<double> neg_g(g);
        for (double& x : neg_g) x = -x;
        bool have_newton = solve_spd(h, neg_g, delta);
        if (!have_newton) {
            delta = neg_g;
            double gl = norm2(delta);
            if (gl > 0)
                for (double& x : delta) x *= options.step_clip / gl;
        }
        double dn = norm2(delta);
        if (dn > options.step_clip)
            for (double& x : delta) x *= options.step_clip / dn;

        auto try_direction = [&](const std::vector<double>& dir) -> bool {
            double slope = 0;
            for (int j = 0; j < spec.torus_rank; ++j) slope += g[j] * dir[j];
            if (slope >= 0) return false;
            double t = 1.0;
            for (int back = 0; back < 60; ++back, t *= 0.5) {
                std::vector<double> cand(s);
                for (int j = 0; j < spec.torus_rank; ++j) cand[j] += t * dir[j];
                double fc;
                std::vector<double> muc;
                std::vector<std::vector<double>> covc;
                obj.eval(cand, fc, muc, &covc);
                if (fc <= f + 1e-4 * t * slope) {
                    s = std::move(cand);
                    f = fc;
                    mu = std::move(muc);
                    cov = std::move(covc);
                    return true;
                }
            }
            return false;
        };
        bool moved = try_direction(delta);
        if (!moved && have_newton) moved = try_direction(neg_g);
        if (!moved) break;  // no descent at machine precision

        if (norm2(s) > options.norm_bound) break;
    }
    res.status = KnStatus::IterationLimit;
    return res;
}

std::string KNSolveResult::to_json_string(int indent) const {
    nlohmann::ordered_json j;
    switch (status) {
        case KnStatus::Converged: j["status"] = "converged"; break;
        case KnStatus::Diverged: j["status"] = "diverged"; break;
        case KnStatus::IterationLimit: j["status"] = "iteration-limit"; break;
    }
    j["minimizer"] = minimizer;
    j["moment_value"] = moment_value;
    j["gradient_norm"] = gradient_norm;
    j["iterations"] = iterations;
    j["objective"] = objective;
    if (separation_direction) {
        std::vector<std::string> dir;
        for (const Int& x : *separation_direction) dir.push_back(x.get_str());
        j["separation_direction"] = dir;
    }
    return indent >= 0 ? j.dump(indent) : j.dump();
}

// splitmix64
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

DeterministicRng::DeterministicRng(std::uint64_t seed) : state_(seed) {}

std::uint64_t DeterministicRng::next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double DeterministicRng::next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double DeterministicRng::next_gaussian() {
    double u1 = next_uniform(), u2 = next_uniform();
    while (u1 <= 1e-300) u1 = next_uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Complex DeterministicRng::next_complex_gaussian() {
    double u1 = next_uniform(), u2 = next_uniform();
    while (u1 <= 1e-300) u1 = next_uniform();
    double r = std::sqrt(-std::log(u1));
    return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
}

AmbientPoint sample_point(const TorusActionSpec& spec, const SupportPattern& support,
                          std::uint64_t seed, std::uint64_t sample_index) {
    if (!spec.support_consistent_with_equation(support))
        throw UnrealizableSupportError(
            "support pattern is unrealizable; consult realizable_support first");

    for (std::uint64_t attempt = 0; attempt < 100; ++attempt) {
        DeterministicRng rng(mix_seed(seed, sample_index * 1000 + attempt));
        std::vector<Complex> z(spec.coordinate_count(), Complex(0, 0));
        for (int i : support) z[static_cast<size_t>(i)] = rng.next_complex_gaussian();

        if (!spec.equation.empty()) {
            // Surviving terms; solve for a coordinate unique to one of them.
            std::vector<int> surviving;
            for (size_t t = 0; t < spec.equation.size(); ++t) {
                bool ok = true;
                for (int i = 0; i < spec.coordinate_count() && ok; ++i)
                    if (spec.equation[t].exponents[i] > 0 && !support.count(i)) ok = false;
                if (ok) surviving.push_back(static_cast<int>(t));
            }
            if (!surviving.empty()) {
                int solve_coord = -1, solve_term = -1, solve_exp = 0;
                for (int i = 0; i < spec.coordinate_count() && solve_coord < 0; ++i) {
                    if (!support.count(i)) continue;
                    int in_terms = 0, last = -1;
                    for (int t : surviving)
                        if (spec.equation[t].exponents[i] > 0) { ++in_terms; last = t; }
                    if (in_terms == 1) {
                        solve_coord = i;
                        solve_term = last;
                        solve_exp = spec.equation[solve_term].exponents[i];
                    }
                }
                if (solve_coord < 0)
                    throw std::invalid_argument(
                        "no coordinate is unique to a single equation term; cannot sample");
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
                if (std::abs(cofactor) < 1e-12) continue;  // redraw
                Complex target = -rest / cofactor;
                if (std::abs(target) < 1e-10 && surviving.size() > 1) continue;  // redraw
                z[solve_coord] = std::pow(target, 1.0 / solve_exp);
            }
        }

        AmbientPoint p;
        for (size_t f = 0; f < spec.factors.size(); ++f) {
            int lo = spec.factor_offset(static_cast<int>(f));
            std::vector<Complex> fac(z.begin() + lo, z.begin() + lo + spec.factor_size(static_cast<int>(f)));
            double n = 0;
            for (const Complex& c : fac) n += std::norm(c);
            if (n == 0) { p.factors.clear(); break; }  // redraw
            p.factors.push_back(std::move(fac));
        }
        if (p.factors.size() != spec.factors.size()) continue;
        p.normalize();
        if (p.equation_residual(spec) > 1e-8) continue;
        // The solved coordinate must not leave the requested support.
        bool support_ok = true;
        std::vector<Complex> flat = p.flat();
        for (int i = 0; i < spec.coordinate_count() && support_ok; ++i) {
            bool nonzero = std::abs(flat[i]) > 1e-9;
            if (nonzero && !support.count(i)) support_ok = false;
            if (!nonzero && support.count(i)) support_ok = false;
        }
        if (!support_ok) continue;
        return p;
    }
    throw std::runtime_error("sample_point: could not draw a valid point");
}

namespace {

// Projective canonical representative: divide by the entry of largest
// modulus. Returns nullopt when every entry is (numerically) zero.
std::optional<std::vector<Complex>> projective_rep(const std::vector<Complex>& v,
                                                   double zero_tol) {
    size_t best = 0;
    double bm = 0;
    for (size_t i = 0; i < v.size(); ++i)
        if (std::abs(v[i]) > bm) { bm = std::abs(v[i]); best = i; }
    if (bm <= zero_tol) return std::nullopt;
    std::vector<Complex> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] / v[best];
    return out;
}

double projective_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double d = 0;
    for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

// Invariant Laurent monomials of a support pattern: integer kernel of the
// (weights + per-factor degree) matrix over the supported coordinates.
std::vector<ZVector> support_invariants(const TorusActionSpec& spec,
                                        const std::vector<int>& support_coords) {
    const int cols = static_cast<int>(support_coords.size());
    const int rows = spec.torus_rank + static_cast<int>(spec.factors.size());
    IntegerMatrix a(rows, cols);
    for (int c = 0; c < cols; ++c) {
        int coord = support_coords[c];
        for (int k = 0; k < spec.torus_rank; ++k) a.at(k, c) = spec.weights[coord][k];
        a.at(spec.torus_rank + spec.factor_of(coord), c) = 1;
    }
    IntegerMatrix kernel = integer_kernel(a);
    std::vector<ZVector> out;
    for (int j = 0; j < kernel.cols(); ++j) out.push_back(kernel.col(j));
    return out;
}

}  // namespace

std::string FibreProbeReport::verdict() const {
    if (inconclusive) return "inconclusive";
    return single_orbit ? "single orbit" : "multiple orbits";
}

FibreProbeReport fibre_orbit_probe(const TorusActionSpec& spec, const MonomialMap& map,
                                   const QVector& u, const FibreProbeOptions& options) {
    FibreProbeReport report;
    report.trials = options.trials;

    Polytope p = moment_polytope(spec);
    Location loc = p.locate(u);
    if (loc == Location::Outside)
        throw std::invalid_argument("linearization point lies outside the moment polytope");
    report.u_location = loc == Location::Boundary ? "boundary" : "interior";

    // Exact limit stratum of the flow: the smallest face of the moment
    // polytope containing u. A coordinate survives iff it enters a monomial
    // whose weight lies on that face.
    MonomialTable table = MonomialTable::build(spec);
    std::vector<const Halfspace*> tight;
    for (const Halfspace& f : p.facets())
        if (dot(f.normal, u) == f.offset) tight.push_back(&f);
    std::vector<bool> survives(spec.coordinate_count(), false);
    for (size_t k = 0; k < table.size(); ++k) {
        QVector w(table.weights[k].size());
        for (size_t i = 0; i < w.size(); ++i) w[i] = Rat(table.weights[k][i]);
        bool active = true;
        for (const Halfspace* f : tight)
            if (dot(f->normal, w) != f->offset) { active = false; break; }
        if (active)
            for (int idx : table.coordinate_choices[k]) survives[idx] = true;
    }

    struct Sample {
        std::vector<int> support;
        std::optional<std::vector<Complex>> value;  // nullopt = collapsed
        std::vector<Complex> invariants;
    };

    // Trials are independent: each owns the RNG stream derived from
    // (seed, trial index); results are merged in index order.
    auto run_trial = [&](int trial) -> std::optional<Sample> {
        AmbientPoint start;
        try {
            start = sample_point(spec, spec.full_support(), options.seed,
                                 static_cast<std::uint64_t>(trial));
        } catch (const std::runtime_error&) {
            return std::nullopt;
        }
        KNSolveResult kn = kn_minimize(spec, start, u, options.kn);
        if (kn.status != KnStatus::Converged) return std::nullopt;

        AmbientPoint flowed = apply_torus_log(spec, start, kn.minimizer);
        // Snap to the limit stratum.
        for (size_t fac = 0; fac < flowed.factors.size(); ++fac) {
            int lo = spec.factor_offset(static_cast<int>(fac));
            for (size_t c = 0; c < flowed.factors[fac].size(); ++c)
                if (!survives[lo + static_cast<int>(c)]) flowed.factors[fac][c] = 0;
        }
        flowed.normalize();

        Sample s;
        std::vector<Complex> flat = flowed.flat();
        for (int i = 0; i < spec.coordinate_count(); ++i)
            if (std::abs(flat[i]) > 0) s.support.push_back(i);
        s.value = projective_rep(map.evaluate(flat), 1e-12);
        for (const ZVector& gamma : support_invariants(spec, s.support)) {
            Complex inv = 1.0;
            for (size_t c = 0; c < s.support.size(); ++c) {
                long e = gamma[c].get_si();
                Complex zc = flat[s.support[c]];
                for (long k = 0; k < std::abs(e); ++k) inv = e > 0 ? inv * zc : inv / zc;
            }
            s.invariants.push_back(inv);
        }
        return s;
    };

    std::vector<std::future<std::optional<Sample>>> futures;
    futures.reserve(options.trials);
    for (int trial = 0; trial < options.trials; ++trial)
        futures.push_back(std::async(std::launch::async | std::launch::deferred,
                                     run_trial, trial));
    std::vector<Sample> samples;
    for (auto& fut : futures) {
        std::optional<Sample> s = fut.get();
        if (!s) continue;
        samples.push_back(std::move(*s));
        ++report.converged;
    }

    if (report.converged == 0) {
        report.inconclusive = true;
        return report;
    }

    // Projective value classes; the collapsed value is one class.
    std::vector<std::vector<Complex>> value_reps;
    bool any_collapsed = false;
    for (const Sample& s : samples) {
        if (!s.value) {
            any_collapsed = true;
            ++report.collapsed;
            continue;
        }
        bool found = false;
        for (const auto& rep : value_reps)
            if (projective_distance(rep, *s.value) <= options.value_tol) { found = true; break; }
        if (!found) value_reps.push_back(*s.value);
    }
    report.map_value_classes = static_cast<int>(value_reps.size()) + (any_collapsed ? 1 : 0);
    for (size_t i = 0; i < value_reps.size() && i < 5; ++i) {
        std::string text = "(";
        for (size_t k = 0; k < value_reps[i].size(); ++k) {
            if (k) text += ", ";
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.6g%+.6gi", value_reps[i][k].real(),
                          value_reps[i][k].imag());
            text += buf;
        }
        report.sample_values.push_back(text + ")");
    }
    if (any_collapsed) report.sample_values.push_back("(collapsed)");

    // Orbit classes: same support pattern and matching invariant monomials.
    std::vector<const Sample*> orbit_reps;
    for (const Sample& s : samples) {
        bool found = false;
        for (const Sample* rep : orbit_reps) {
            if (rep->support != s.support) continue;
            if (rep->invariants.size() != s.invariants.size()) continue;
            double d = 0;
            for (size_t k = 0; k < s.invariants.size(); ++k)
                d = std::max(d, std::abs(rep->invariants[k] - s.invariants[k]));
            if (d <= 1e-5) { found = true; break; }
        }
        if (!found) orbit_reps.push_back(&s);
    }
    report.orbit_classes = static_cast<int>(orbit_reps.size());
    report.single_orbit = report.orbit_classes == 1;
    return report;
}

std::string FibreProbeReport::to_json_string(int indent) const {
    nlohmann::ordered_json j;
    j["u_location"] = u_location;
    j["trials"] = trials;
    j["converged"] = converged;
    j["collapsed"] = collapsed;
    j["map_value_classes"] = map_value_classes;
    j["orbit_classes"] = orbit_classes;
    j["single_orbit"] = single_orbit;
    j["inconclusive"] = inconclusive;
    j["verdict"] = verdict();
    j["sample_values"] = sample_values;
    return indent >= 0 ? j.dump(indent) : j.dump();
}

}  // namespace chowquot

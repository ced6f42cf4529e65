// chowquot command-line front end: family analysis, moment polytopes and
// GIT chambers, Kempf-Ness solves, boundary-fibre probes, glct bounds and
// Kaehler-Einstein certificates, all as one JSON document per run.

#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "chowquot/certificate.hpp"
#include "chowquot/chambers.hpp"
#include "chowquot/errors.hpp"
#include "chowquot/families.hpp"
#include "chowquot/log_canonical.hpp"
#include "chowquot/moment.hpp"

using namespace chowquot;
using nlohmann::ordered_json;

namespace {

QVector parse_rational_vector(const std::string& text) {
    QVector out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(rat_from_string(item));
    if (out.empty()) throw std::invalid_argument("empty vector: '" + text + "'");
    return out;
}

Complex parse_complex(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw std::invalid_argument("empty complex literal");
    // forms: a, bi, a+bi, a-bi
    if (t.back() == 'i' || t.back() == 'I') {
        t.pop_back();
        size_t split = t.size();
        for (size_t k = t.size(); k-- > 1;)
            if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
                split = k;
                break;
            }
        if (split == t.size()) {  // pure imaginary
            if (t.empty() || t == "+") return {0, 1};
            if (t == "-") return {0, -1};
            return {0, std::stod(t)};
        }
        std::string re = t.substr(0, split), im = t.substr(split);
        if (im == "+") im = "1";
        if (im == "-") im = "-1";
        return {std::stod(re), std::stod(im)};
    }
    return {std::stod(t), 0};
}

AmbientPoint parse_point(const TorusActionSpec& spec, const std::string& text) {
    AmbientPoint p;
    std::stringstream ss(text);
    std::string factor;
    while (std::getline(ss, factor, ';')) {
        std::vector<Complex> coords;
        std::stringstream fs(factor);
        std::string item;
        while (std::getline(fs, item, ',')) coords.push_back(parse_complex(item));
        p.factors.push_back(std::move(coords));
    }
    p.normalize();
    p.validate(spec);
    return p;
}

void emit(const ordered_json& doc, const std::string& out_path) {
    std::string text = doc.dump(2);
    std::cout << text << "\n";
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) throw std::runtime_error("cannot open output file: " + out_path);
        f << text << "\n";
    }
}

ordered_json spec_to_json(const TorusActionSpec& spec) {
    ordered_json j;
    j["torus_rank"] = spec.torus_rank;
    j["factors"] = spec.factors;
    auto weights = ordered_json::array();
    for (const ZVector& w : spec.weights) {
        std::vector<std::string> row;
        for (const Int& x : w) row.push_back(x.get_str());
        weights.push_back(row);
    }
    j["weights"] = weights;
    return j;
}

int cmd_analyze(const std::string& family, const std::string& out_path) {
    FamilySpec f = FamilySpec::parse(family);
    ordered_json j;
    j["family"] = f.selector();
    j["family_name"] = f.display_name();
    j["dim"] = f.dimension();
    j["fano"] = is_fano(f);
    j["smooth_known"] = is_smooth_known(f);
    if (f.kind == FamilyKind::BidegreeHypersurface) {
        auto [d, a, b] = reduced_pair(f.alpha, f.beta);
        j["reduced_pair"] = {{"d", d}, {"a", a}, {"b", b}};
    }
    j["effective_action"] = spec_to_json(ambient_spec(f));
    auto map = chow_quotient_map(f);
    j["quotient_map_monomials"] = map.monomials;
    j["chow_pair"] = ordered_json::parse(chow_boundary(f).to_json_string());
    j["chow_pair_from_stabilizers"] =
        ordered_json::parse(boundary_from_stabilizers(f).to_json_string());
    auto report = quotient_space_report(f);
    j["orbit_space"] = report ? ordered_json(*report)
                              : ordered_json("not available for this family");
    j["symmetry_ok"] = symmetry_check(f);
    j["arithmetic"] = "exact";
    emit(j, out_path);
    return 0;
}

int cmd_polytope(const std::string& family, const std::string& out_path) {
    FamilySpec f = FamilySpec::parse(family);
    TorusActionSpec spec = ambient_spec(f);
    ordered_json j = ordered_json::parse(moment_polytope(spec).to_json_string());
    j["arithmetic"] = "exact";
    emit(j, out_path);
    return 0;
}

int cmd_chambers(const std::string& family, const std::string& out_path) {
    FamilySpec f = FamilySpec::parse(family);
    TorusActionSpec spec = ambient_spec(f);
    MonomialTable table = MonomialTable::build(spec);
    std::vector<QVector> weights;
    for (const ZVector& w : table.weights) {
        QVector q(w.size());
        for (size_t i = 0; i < w.size(); ++i) q[i] = Rat(w[i]);
        weights.push_back(std::move(q));
    }
    // Realizable supports as monomial index sets.
    std::vector<std::vector<int>> supports;
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
        if (!per_factor) continue;
        if (!realizable_support(f, pattern)) continue;
        std::vector<int> idxs;
        for (size_t k = 0; k < table.size(); ++k) {
            bool in = true;
            for (int idx : table.coordinate_choices[k]) in &= pattern.count(idx) > 0;
            if (in) idxs.push_back(static_cast<int>(k));
        }
        if (!idxs.empty()) supports.push_back(std::move(idxs));
    }
    std::sort(supports.begin(), supports.end());
    supports.erase(std::unique(supports.begin(), supports.end()), supports.end());

    ChamberComplex complex = git_chambers(weights, supports);
    ordered_json j = ordered_json::parse(complex.to_json_string());
    j["arithmetic"] = "exact";
    emit(j, out_path);
    return 0;
}

int cmd_kn_solve(const std::string& family, const std::string& u_text,
                 const std::string& point_text, std::uint64_t seed, double tol,
                 int max_iter, const std::string& out_path) {
    FamilySpec f = FamilySpec::parse(family);
    TorusActionSpec spec = ambient_spec(f);
    QVector u = parse_rational_vector(u_text);
    AmbientPoint p = point_text.empty() ? sample_point(spec, spec.full_support(), seed, 0)
                                        : parse_point(spec, point_text);
    KnOptions opts;
    opts.tol = tol;
    opts.max_iter = max_iter;
    KNSolveResult res = kn_minimize(spec, p, u, opts);
    ordered_json j = ordered_json::parse(res.to_json_string());
    j["tolerance"] = tol;
    j["seed"] = seed;
    emit(j, out_path);
    return 0;
}

int cmd_fibre_probe(const std::string& family, const std::string& u_text, int trials,
                    std::uint64_t seed, double tol, int max_iter,
                    const std::string& out_path) {
    FamilySpec f = FamilySpec::parse(family);
    TorusActionSpec spec = ambient_spec(f);
    QVector u = parse_rational_vector(u_text);
    FibreProbeOptions opts;
    opts.trials = trials;
    opts.seed = seed;
    opts.kn.tol = tol;
    opts.kn.max_iter = max_iter;
    FibreProbeReport report = fibre_orbit_probe(spec, chow_quotient_map(f), u, opts);
    ordered_json j = ordered_json::parse(report.to_json_string());
    j["seed"] = seed;
    j["kn_tolerance"] = tol;
    j["value_tolerance"] = opts.value_tol;
    emit(j, out_path);
    return 0;
}

int cmd_glct_bound(const std::string& gamma_text, const std::string& out_path) {
    Rat gamma = rat_from_string(gamma_text);
    GlctBound closed = glct_bound(gamma);
    GlctBound searched = glct_bound_via_search(gamma);
    ordered_json j;
    j["gamma"] = rat_to_string(gamma);
    j["bound"] = closed.to_string();
    j["bound_via_search"] = searched.to_string();
    j["agreement"] = closed == searched;
    j["arithmetic"] = "exact";
    emit(j, out_path);
    return closed == searched ? 0 : 1;
}

int cmd_certify(const std::string& family, const std::string& out_path) {
    FamilySpec f = FamilySpec::parse(family);
    KECertificate cert = certify(f);
    ordered_json j = ordered_json::parse(cert.to_json_string());
    j["arithmetic"] = "exact";
    emit(j, out_path);
    return 0;
}

// Built-in property suites: dual routes and invariants that need no
// frozen test data.
int cmd_verify(std::uint64_t seed, const std::string& out_path) {
    struct Suite {
        std::string name;
        int checks = 0, failures = 0;
    };
    std::vector<Suite> suites;
    auto check = [&](Suite& s, bool ok) {
        ++s.checks;
        if (!ok) ++s.failures;
    };

    {
        Suite s{"lattice.smith_normal_form"};
        DeterministicRng rng(mix_seed(seed, 1));
        for (int t = 0; t < 50; ++t) {
            int rows = 1 + static_cast<int>(rng.next_u64() % 4);
            int cols = 1 + static_cast<int>(rng.next_u64() % 4);
            IntegerMatrix a(rows, cols);
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < cols; ++j)
                    a.at(i, j) = static_cast<long>(rng.next_u64() % 11) - 5;
            auto snf = smith_normal_form(a);
            bool ok = snf.u.multiplied(snf.d).multiplied(snf.v) == a;
            ok = ok && abs(snf.u.determinant()) == 1 && abs(snf.v.determinant()) == 1;
            auto diag = snf.diagonal();
            for (size_t i = 0; i + 1 < diag.size(); ++i)
                ok = ok && diag[i + 1] % diag[i] == 0;
            check(s, ok);
        }
        suites.push_back(s);
    }
    {
        Suite s{"polyhedral.membership_dual_route"};
        FamilySpec f = FamilySpec::parse("hypersurface:n=2,alpha=1,beta=1");
        TorusActionSpec spec = ambient_spec(f);
        Polytope p = moment_polytope(spec);
        MonomialTable table = MonomialTable::build(spec);
        std::vector<QVector> pts;
        for (const ZVector& w : table.weights) {
            QVector q(w.size());
            for (size_t i = 0; i < w.size(); ++i) q[i] = Rat(w[i]);
            pts.push_back(std::move(q));
        }
        DeterministicRng rng(mix_seed(seed, 2));
        for (int t = 0; t < 200; ++t) {
            QVector u;
            for (int k = 0; k < spec.torus_rank; ++k) {
                long num = static_cast<long>(rng.next_u64() % 41) - 20;
                u.push_back(Rat(num, 10));
                u.back().canonicalize();
            }
            check(s, p.contains(u) == point_in_hull_lp(pts, u));
        }
        suites.push_back(s);
    }
    {
        Suite s{"families.boundary_pair_routes"};
        for (int n = 2; n <= 4; ++n) {
            for (int alpha = 1; alpha <= 6; ++alpha)
                for (int beta = 1; beta <= 6; ++beta) {
                    FamilySpec f;
                    f.kind = FamilyKind::BidegreeHypersurface;
                    f.n = n;
                    f.alpha = alpha;
                    f.beta = beta;
                    check(s, chow_boundary(f) == boundary_from_stabilizers(f));
                }
            FamilySpec w;
            w.kind = FamilyKind::BlownUpQuadric;
            w.n = n;
            check(s, chow_boundary(w) == boundary_from_stabilizers(w));
        }
        suites.push_back(s);
    }
    {
        Suite s{"moment.image_in_polytope"};
        FamilySpec f = FamilySpec::parse("hypersurface:n=2,alpha=1,beta=2");
        TorusActionSpec spec = ambient_spec(f);
        Polytope p = moment_polytope(spec);
        for (int t = 0; t < 100; ++t) {
            AmbientPoint pt = sample_point(spec, spec.full_support(), seed, t);
            check(s, p.contains_approx(moment_map(spec, pt), 1e-10));
        }
        suites.push_back(s);
    }
    {
        Suite s{"log_canonical.bound_vs_search"};
        for (int k = 0; k <= 74; ++k) {
            Rat gamma(k, 100);
            gamma.canonicalize();
            check(s, glct_bound(gamma) == glct_bound_via_search(gamma));
        }
        suites.push_back(s);
    }
    {
        Suite s{"certificate.exactly_three"};
        int certified = 0;
        for (int alpha = 1; alpha <= 6; ++alpha)
            for (int beta = alpha; beta <= 6; ++beta) {
                FamilySpec f;
                f.kind = FamilyKind::BidegreeHypersurface;
                f.n = 3;
                f.alpha = alpha;
                f.beta = beta;
                if (certify(f).verdict == Verdict::Certified) ++certified;
            }
        FamilySpec q;
        q.kind = FamilyKind::EvenQuadric;
        q.n = 3;
        if (certify(q).verdict == Verdict::Certified) ++certified;
        FamilySpec w;
        w.kind = FamilyKind::BlownUpQuadric;
        w.n = 3;
        if (certify(w).verdict == Verdict::Certified) ++certified;
        check(s, certified == 3);
        FamilySpec x12 = FamilySpec::parse("hypersurface:n=3,alpha=1,beta=2");
        check(s, certify(x12).to_json_string() == certify(x12).to_json_string());
        suites.push_back(s);
    }

    ordered_json j;
    int total = 0, failed = 0;
    auto arr = ordered_json::array();
    for (const Suite& s : suites) {
        ordered_json e;
        e["suite"] = s.name;
        e["checks"] = s.checks;
        e["failures"] = s.failures;
        arr.push_back(e);
        total += s.checks;
        failed += s.failures;
    }
    j["suites"] = arr;
    j["total_checks"] = total;
    j["total_failures"] = failed;
    j["seed"] = seed;
    emit(j, out_path);
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"torus-quotient data and Kaehler-Einstein certificates for "
                 "symmetric T-varieties"};
    app.require_subcommand(1);

    std::string family, u_text, point_text, gamma_text, out_path;
    std::uint64_t seed = 0;
    double tol = 1e-9;
    int max_iter = 500, trials = 50;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "also write the JSON document to this path");
    };

    auto* analyze = app.add_subcommand("analyze", "family summary");
    analyze->add_option("--family", family, "family selector")->required();
    add_common(analyze);

    auto* polytope = app.add_subcommand("polytope", "moment polytope");
    polytope->add_option("--family", family)->required();
    add_common(polytope);

    auto* chambers = app.add_subcommand("chambers", "GIT chamber complex");
    chambers->add_option("--family", family)->required();
    add_common(chambers);

    auto* kn = app.add_subcommand("kn-solve", "Kempf-Ness minimization");
    kn->add_option("--family", family)->required();
    kn->add_option("--u", u_text, "linearization point, comma-separated rationals")->required();
    kn->add_option("--point", point_text,
                   "ambient point: factors ';'-separated, coords ','-separated complex");
    kn->add_option("--seed", seed);
    kn->add_option("--tol", tol);
    kn->add_option("--max-iter", max_iter);
    add_common(kn);

    auto* probe = app.add_subcommand("fibre-probe", "boundary-fibre orbit probe");
    probe->add_option("--family", family)->required();
    probe->add_option("--u", u_text)->required();
    probe->add_option("--trials", trials);
    probe->add_option("--seed", seed);
    probe->add_option("--tol", tol);
    probe->add_option("--max-iter", max_iter);
    add_common(probe);

    auto* glct = app.add_subcommand("glct-bound", "pair glct lower bound");
    glct->add_option("--gamma", gamma_text, "rational in [0,1)")->required();
    add_common(glct);

    auto* certify_cmd = app.add_subcommand("certify", "Kaehler-Einstein certificate");
    certify_cmd->add_option("--family", family)->required();
    add_common(certify_cmd);

    auto* verify = app.add_subcommand("verify", "run the module property suites");
    verify->add_option("--seed", seed);
    add_common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(family, out_path);
        if (polytope->parsed()) return cmd_polytope(family, out_path);
        if (chambers->parsed()) return cmd_chambers(family, out_path);
        if (kn->parsed())
            return cmd_kn_solve(family, u_text, point_text, seed, tol, max_iter, out_path);
        if (probe->parsed())
            return cmd_fibre_probe(family, u_text, trials, seed, tol, max_iter, out_path);
        if (glct->parsed()) return cmd_glct_bound(gamma_text, out_path);
        if (certify_cmd->parsed()) return cmd_certify(family, out_path);
        if (verify->parsed()) return cmd_verify(seed, out_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

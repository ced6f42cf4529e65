// Python bindings for the main operations. Structured results cross the
// boundary as JSON strings; the package wrapper decodes them into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chowquot/certificate.hpp"
#include "chowquot/chambers.hpp"
#include "chowquot/families.hpp"
#include "chowquot/log_canonical.hpp"
#include "chowquot/moment.hpp"

namespace py = pybind11;
using namespace chowquot;

namespace {

QVector to_qvector(const std::vector<std::string>& items) {
    QVector out;
    for (const std::string& s : items) out.push_back(rat_from_string(s));
    return out;
}

std::vector<QVector> to_qvectors(const std::vector<std::vector<std::string>>& rows) {
    std::vector<QVector> out;
    for (const auto& r : rows) out.push_back(to_qvector(r));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "torus-quotient data and Kaehler-Einstein certificates for "
              "symmetric T-varieties";

    m.def("certify_json", [](const std::string& selector) {
        return certify(FamilySpec::parse(selector)).to_json_string();
    }, py::arg("family"));

    m.def("analyze_verdict", [](const std::string& selector) {
        KECertificate c = certify(FamilySpec::parse(selector));
        return c.verdict == Verdict::Certified ? "certified" : "inconclusive";
    }, py::arg("family"));

    m.def("glct_bound", [](const std::string& gamma) {
        return glct_bound(rat_from_string(gamma)).to_string();
    }, py::arg("gamma"));

    m.def("glct_bound_via_search", [](const std::string& gamma) {
        return glct_bound_via_search(rat_from_string(gamma)).to_string();
    }, py::arg("gamma"));

    m.def("chow_boundary_json", [](const std::string& selector) {
        return chow_boundary(FamilySpec::parse(selector)).to_json_string();
    }, py::arg("family"));

    m.def("boundary_from_stabilizers_json", [](const std::string& selector) {
        return boundary_from_stabilizers(FamilySpec::parse(selector)).to_json_string();
    }, py::arg("family"));

    m.def("moment_polytope_json", [](const std::string& selector) {
        return moment_polytope(ambient_spec(FamilySpec::parse(selector))).to_json_string();
    }, py::arg("family"));

    m.def("convex_hull_json", [](const std::vector<std::vector<std::string>>& points) {
        return Polytope::convex_hull(to_qvectors(points)).to_json_string();
    }, py::arg("points"));

    m.def("moment_map", [](const std::string& selector, std::uint64_t seed,
                           std::uint64_t index) {
        TorusActionSpec spec = ambient_spec(FamilySpec::parse(selector));
        AmbientPoint p = sample_point(spec, spec.full_support(), seed, index);
        return moment_map(spec, p);
    }, py::arg("family"), py::arg("seed") = 0, py::arg("index") = 0);

    m.def("kn_solve_json", [](const std::string& selector,
                              const std::vector<std::string>& u, std::uint64_t seed,
                              double tol, int max_iter) {
        TorusActionSpec spec = ambient_spec(FamilySpec::parse(selector));
        AmbientPoint p = sample_point(spec, spec.full_support(), seed, 0);
        KnOptions opts;
        opts.tol = tol;
        opts.max_iter = max_iter;
        return kn_minimize(spec, p, to_qvector(u), opts).to_json_string();
    }, py::arg("family"), py::arg("u"), py::arg("seed") = 0, py::arg("tol") = 1e-9,
       py::arg("max_iter") = 500);

    m.def("fibre_probe_json", [](const std::string& selector,
                                 const std::vector<std::string>& u, int trials,
                                 std::uint64_t seed, double tol) {
        FamilySpec f = FamilySpec::parse(selector);
        TorusActionSpec spec = ambient_spec(f);
        FibreProbeOptions opts;
        opts.trials = trials;
        opts.seed = seed;
        opts.kn.tol = tol;
        return fibre_orbit_probe(spec, chow_quotient_map(f), to_qvector(u), opts)
            .to_json_string();
    }, py::arg("family"), py::arg("u"), py::arg("trials") = 30, py::arg("seed") = 0,
       py::arg("tol") = 1e-9);

    m.def("smith_normal_form", [](const std::vector<std::vector<long>>& rows) {
        std::vector<ZVector> zrows;
        for (const auto& r : rows) {
            ZVector z;
            for (long x : r) z.push_back(Int(x));
            zrows.push_back(std::move(z));
        }
        auto snf = smith_normal_form(IntegerMatrix::from_rows(zrows));
        auto to_py = [](const IntegerMatrix& m) {
            std::vector<std::vector<long>> out(m.rows(), std::vector<long>(m.cols()));
            for (int i = 0; i < m.rows(); ++i)
                for (int j = 0; j < m.cols(); ++j) out[i][j] = m.at(i, j).get_si();
            return out;
        };
        return py::make_tuple(to_py(snf.u), to_py(snf.d), to_py(snf.v));
    }, py::arg("rows"));

    m.def("stratum_stabilizer_order", [](const std::string& selector,
                                         const std::vector<int>& support) {
        TorusActionSpec spec = ambient_spec(FamilySpec::parse(selector));
        SupportPattern pattern(support.begin(), support.end());
        return stratum_stabilizer(spec, pattern).order.get_si();
    }, py::arg("family"), py::arg("support"));

    m.def("quotient_space_report", [](const std::string& selector) -> py::object {
        auto r = quotient_space_report(FamilySpec::parse(selector));
        if (!r) return py::none();
        return py::str(*r);
    }, py::arg("family"));

    m.def("degenerate_json", [](const std::string& divisor_json,
                                const std::vector<long>& weights) {
        if (weights.size() != 3)
            throw std::invalid_argument("one-parameter subgroup needs 3 weights");
        PlaneDivisor d = PlaneDivisor::from_json_string(divisor_json);
        OnePS w{{weights[0], weights[1], weights[2]}};
        return degenerate(d, w).to_json_string();
    }, py::arg("divisor"), py::arg("weights"));

    m.def("is_lc_concurrent", [](const std::string& divisor_json,
                                 const std::vector<std::string>& point) {
        if (point.size() != 3) throw std::invalid_argument("point needs 3 coordinates");
        PlaneDivisor d = PlaneDivisor::from_json_string(divisor_json);
        std::array<Rat, 3> p{rat_from_string(point[0]), rat_from_string(point[1]),
                             rat_from_string(point[2])};
        return is_lc_concurrent(d, p);
    }, py::arg("divisor"), py::arg("point"));
}

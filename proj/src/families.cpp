#include "chowquot/families.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "chowquot/errors.hpp"

namespace chowquot {

std::tuple<long, long, long> reduced_pair(long alpha, long beta) {
    if (alpha < 1 || beta < 1)
        throw std::invalid_argument("reduced_pair: bidegree must be positive");
    long d = std::gcd(alpha, beta);
    return {d, alpha / d, beta / d};
}

long FamilySpec::d() const { return std::get<0>(reduced_pair(alpha, beta)); }
long FamilySpec::a() const { return std::get<1>(reduced_pair(alpha, beta)); }
long FamilySpec::b() const { return std::get<2>(reduced_pair(alpha, beta)); }

int FamilySpec::dimension() const {
    return kind == FamilyKind::BidegreeHypersurface ? 2 * n - 1 : 2 * n;
}

void FamilySpec::validate() const {
    if (n < 2) throw std::invalid_argument("family requires n >= 2");
    if (kind == FamilyKind::BidegreeHypersurface && (alpha < 1 || beta < 1))
        throw std::invalid_argument("bidegree must be positive");
}

std::string FamilySpec::selector() const {
    std::ostringstream os;
    switch (kind) {
        case FamilyKind::BidegreeHypersurface:
            os << "hypersurface:n=" << n << ",alpha=" << alpha << ",beta=" << beta;
            break;
        case FamilyKind::EvenQuadric:
            os << "quadric:n=" << n;
            break;
        case FamilyKind::BlownUpQuadric:
            os << "blownup-quadric:n=" << n;
            break;
    }
    return os.str();
}

std::string FamilySpec::display_name() const {
    std::ostringstream os;
    switch (kind) {
        case FamilyKind::BidegreeHypersurface:
            os << "X^" << (2 * n - 1) << "_(" << alpha << "," << beta << ")";
            break;
        case FamilyKind::EvenQuadric:
            os << "Q^" << 2 * n;
            break;
        case FamilyKind::BlownUpQuadric:
            os << "W^" << 2 * n;
            break;
    }
    return os.str();
}

FamilySpec FamilySpec::parse(const std::string& selector) {
    auto colon = selector.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("family selector needs 'kind:params': " + selector);
    std::string kind_str = selector.substr(0, colon);
    FamilySpec f;
    if (kind_str == "hypersurface")
        f.kind = FamilyKind::BidegreeHypersurface;
    else if (kind_str == "quadric")
        f.kind = FamilyKind::EvenQuadric;
    else if (kind_str == "blownup-quadric")
        f.kind = FamilyKind::BlownUpQuadric;
    else
        throw std::invalid_argument("unknown family kind: " + kind_str);

    bool saw_n = false;
    std::stringstream params(selector.substr(colon + 1));
    std::string item;
    while (std::getline(params, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("malformed family parameter: " + item);
        std::string key = item.substr(0, eq);
        int value = 0;
        try {
            size_t pos = 0;
            value = std::stoi(item.substr(eq + 1), &pos);
            if (pos != item.size() - eq - 1) throw std::invalid_argument("");
        } catch (...) {
            throw std::invalid_argument("malformed family parameter: " + item);
        }
        if (key == "n")
            f.n = value, saw_n = true;
        else if (key == "alpha" && f.kind == FamilyKind::BidegreeHypersurface)
            f.alpha = value;
        else if (key == "beta" && f.kind == FamilyKind::BidegreeHypersurface)
            f.beta = value;
        else
            throw std::invalid_argument("unknown family parameter: " + key);
    }
    if (!saw_n) throw std::invalid_argument("family selector needs n=");
    f.validate();
    return f;
}

bool is_fano(const FamilySpec& f) {
    f.validate();
    if (f.kind == FamilyKind::BidegreeHypersurface)
        return f.alpha < f.n + 1 && f.beta < f.n + 1;
    // The even quadric is Fano; so is its wonderful compactification
    // (recorded fact, nef-cone argument not reproduced here).
    return true;
}

bool is_smooth_known(const FamilySpec& f) {
    f.validate();
    if (f.kind == FamilyKind::BidegreeHypersurface)
        return std::min(f.alpha, f.beta) == 1;
    return true;
}

namespace {

TorusActionSpec raw_quadric_spec(int n) {
    // Q^{2n} in P^{2n+1}, pairs (x_{2i}, x_{2i+1}) with weights +-e_{i+1}.
    TorusActionSpec s;
    s.torus_rank = n + 1;
    s.factors = {2 * n + 1};
    for (int i = 0; i <= n; ++i) {
        ZVector w(n + 1, Int(0)), wn(n + 1, Int(0));
        w[i] = 1;
        wn[i] = -1;
        s.weights.push_back(std::move(w));
        s.weights.push_back(std::move(wn));
    }
    for (int i = 0; i <= n; ++i) {
        EquationTerm t;
        t.exponents.assign(2 * n + 2, 0);
        t.exponents[2 * i] = 1;
        t.exponents[2 * i + 1] = 1;
        t.coefficient = 1;
        s.equation.push_back(std::move(t));
    }
    s.validate();
    return s;
}

}  // namespace

TorusActionSpec ambient_spec(const FamilySpec& f) {
    f.validate();
    if (f.kind == FamilyKind::BidegreeHypersurface) {
        const int n = f.n;
        TorusActionSpec s;
        s.torus_rank = n;
        s.factors = {n, n};
        // x_0..x_n weights (0 | b e_i), y_0..y_n weights (0 | -a e_j).
        for (int i = 0; i <= n; ++i) {
            ZVector w(n, Int(0));
            if (i > 0) w[i - 1] = f.b();
            s.weights.push_back(std::move(w));
        }
        for (int j = 0; j <= n; ++j) {
            ZVector w(n, Int(0));
            if (j > 0) w[j - 1] = -f.a();
            s.weights.push_back(std::move(w));
        }
        for (int i = 0; i <= n; ++i) {
            EquationTerm t;
            t.exponents.assign(2 * n + 2, 0);
            t.exponents[i] = f.alpha;
            t.exponents[n + 1 + i] = f.beta;
            t.coefficient = 1;
            s.equation.push_back(std::move(t));
        }
        s.validate();
        return s;
    }
    return make_effective(raw_quadric_spec(f.n));
}

std::vector<std::complex<double>> MonomialMap::evaluate(
    const std::vector<std::complex<double>>& flat) const {
    std::vector<std::complex<double>> out;
    out.reserve(monomials.size());
    for (const std::vector<int>& mono : monomials) {
        std::complex<double> v = 1.0;
        for (size_t i = 0; i < mono.size(); ++i)
            for (int e = 0; e < mono[i]; ++e) v *= flat[i];
        out.push_back(v);
    }
    return out;
}

MonomialMap chow_quotient_map(const FamilySpec& f) {
    f.validate();
    MonomialMap map;
    if (f.kind == FamilyKind::BidegreeHypersurface) {
        const int n = f.n;
        for (int i = 1; i <= n; ++i) {
            std::vector<int> mono(2 * n + 2, 0);
            mono[i] = static_cast<int>(f.a());
            mono[n + 1 + i] = static_cast<int>(f.b());
            map.monomials.push_back(std::move(mono));
        }
    } else {
        const int n = f.n;
        for (int i = 1; i <= n; ++i) {
            std::vector<int> mono(2 * n + 2, 0);
            mono[2 * i] = 1;
            mono[2 * i + 1] = 1;
            map.monomials.push_back(std::move(mono));
        }
    }
    // Torus-invariance: weight zero in the unshifted weight data (the
    // effective spec carries reference-normalized weights, which shift
    // every degree-(d_1,...,d_r) monomial by a common character).
    TorusActionSpec original = f.kind == FamilyKind::BidegreeHypersurface
                                   ? ambient_spec(f)
                                   : raw_quadric_spec(f.n);
    for (const std::vector<int>& mono : map.monomials) {
        ZVector w(original.torus_rank, Int(0));
        for (int i = 0; i < original.coordinate_count(); ++i)
            for (int k = 0; k < original.torus_rank; ++k)
                w[k] += mono[i] * original.weights[i][k];
        if (w != ZVector(original.torus_rank, Int(0)))
            throw std::logic_error("quotient map monomial is not torus-invariant");
    }
    return map;
}

bool realizable_support(const FamilySpec& f, const SupportPattern& pattern) {
    f.validate();
    TorusActionSpec spec = ambient_spec(f);
    for (size_t fac = 0; fac < spec.factors.size(); ++fac) {
        int lo = spec.factor_offset(static_cast<int>(fac));
        int hi = lo + spec.factor_size(static_cast<int>(fac));
        bool nonempty = false;
        for (int i = lo; i < hi && !nonempty; ++i) nonempty = pattern.count(i) > 0;
        if (!nonempty)
            throw InvalidStratumError("support pattern misses a projective factor");
    }
    int pairs = 0;
    if (f.kind == FamilyKind::BidegreeHypersurface) {
        for (int i = 0; i <= f.n; ++i)
            if (pattern.count(i) && pattern.count(f.n + 1 + i)) ++pairs;
    } else {
        for (int i = 0; i <= f.n; ++i)
            if (pattern.count(2 * i) && pattern.count(2 * i + 1)) ++pairs;
    }
    return pairs != 1;
}

namespace {

Rat boundary_coefficient(const Int& order) {
    Rat c(order - 1, order);
    c.canonicalize();
    return c;
}

ChowQuotientPair assemble_pair(int n, const std::vector<Int>& orders) {
    ChowQuotientPair pair;
    pair.base_dim = n - 1;
    pair.stabilizer_orders = orders;
    for (const Int& m : orders) pair.coefficients.push_back(boundary_coefficient(m));
    pair.gamma = pair.coefficients.front();
    for (const Rat& c : pair.coefficients)
        if (c != pair.gamma)
            throw std::logic_error("boundary coefficients are not uniform");
    return pair;
}

}  // namespace

ChowQuotientPair chow_boundary(const FamilySpec& f) {
    f.validate();
    Int m;
    if (f.kind == FamilyKind::BidegreeHypersurface)
        m = Int(std::max(f.a(), f.b()));
    else if (f.kind == FamilyKind::EvenQuadric)
        m = 1;
    else
        m = 2;
    return assemble_pair(f.n, std::vector<Int>(f.n + 1, m));
}

StabilizerGroup exc_divisor_stabilizer(const FamilySpec& f) {
    if (f.kind != FamilyKind::BlownUpQuadric)
        throw std::invalid_argument("exceptional divisors exist for the blown-up quadric only");
    f.validate();
    TorusActionSpec raw = raw_quadric_spec(f.n);

    // Conditions cutting out the stabilizer of a generic point of E_0:
    // fixing the blowup centre Z_0 = V(x_0, x_1) pointwise up to scaling
    // (differences among the remaining coordinates), plus triviality on the
    // exceptional P^1 direction. The chart relation v x_0 = u x_1 is
    // weight-homogeneous, deg u - deg v = 2 e_1, so the fibre condition is
    // the character 2 e_1.
    SupportPattern centre_support;
    for (int i = 2; i < raw.coordinate_count(); ++i) centre_support.insert(i);
    IntegerMatrix centre_diffs = weight_difference_matrix(raw, centre_support);
    std::vector<ZVector> exc_rows;
    for (int r = 0; r < centre_diffs.rows(); ++r) exc_rows.push_back(centre_diffs.row(r));
    ZVector fibre(raw.torus_rank, Int(0));
    fibre[0] = 2;
    exc_rows.push_back(std::move(fibre));

    IntegerMatrix global_diffs = weight_difference_matrix(raw, raw.full_support());

    // Stabilizer on T' = T / (global stabilizer): the lattice quotient
    // L_global / L_exceptional.
    return lattice_quotient(global_diffs, IntegerMatrix::from_rows(exc_rows));
}

ChowQuotientPair boundary_from_stabilizers(const FamilySpec& f) {
    f.validate();
    TorusActionSpec spec = ambient_spec(f);
    const int n = f.n;
    std::vector<Int> orders;
    for (int j = 0; j <= n; ++j) {
        std::vector<Int> component_orders;
        SupportPattern full = spec.full_support();
        if (f.kind == FamilyKind::BidegreeHypersurface) {
            SupportPattern no_xj = full, no_yj = full;
            no_xj.erase(j);
            no_yj.erase(n + 1 + j);
            component_orders.push_back(stratum_stabilizer(spec, no_xj).order);
            component_orders.push_back(stratum_stabilizer(spec, no_yj).order);
        } else {
            SupportPattern no_even = full, no_odd = full;
            no_even.erase(2 * j);
            no_odd.erase(2 * j + 1);
            component_orders.push_back(stratum_stabilizer(spec, no_even).order);
            component_orders.push_back(stratum_stabilizer(spec, no_odd).order);
            if (f.kind == FamilyKind::BlownUpQuadric)
                component_orders.push_back(exc_divisor_stabilizer(f).order);
        }
        orders.push_back(*std::max_element(component_orders.begin(), component_orders.end()));
    }
    return assemble_pair(n, orders);
}

std::optional<std::string> quotient_space_report(const FamilySpec& f) {
    if (f.kind != FamilyKind::BidegreeHypersurface) return std::nullopt;
    f.validate();
    static const char* superscripts[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
    auto sup = [&](int k) {
        std::string s;
        for (char c : std::to_string(k)) s += superscripts[c - '0'];
        return s;
    };
    return "S" + sup(f.n - 1) + " ∗ CP" + sup(f.n - 1);
}

std::string ChowQuotientPair::to_json_string(int indent) const {
    nlohmann::ordered_json j;
    j["base"] = "P^" + std::to_string(base_dim);
    j["gamma"] = rat_to_string(gamma);
    auto coeffs = nlohmann::ordered_json::array();
    for (const Rat& c : coefficients) coeffs.push_back(rat_to_string(c));
    j["coefficients"] = coeffs;
    auto orders = nlohmann::ordered_json::array();
    for (const Int& m : stabilizer_orders) orders.push_back(m.get_str());
    j["stabilizer_orders"] = orders;
    return indent >= 0 ? j.dump(indent) : j.dump();
}

}  // namespace chowquot

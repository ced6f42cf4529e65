#include "chowquot/log_canonical.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace chowquot {

TernaryForm::TernaryForm(std::map<Exponent, Rat> terms) {
    for (auto& [e, c] : terms) {
        if (e[0] < 0 || e[1] < 0 || e[2] < 0)
            throw std::invalid_argument("negative exponent in polynomial");
        Rat cc = c;
        cc.canonicalize();
        if (cc != 0) terms_[e] = cc;
    }
}

int TernaryForm::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
    return d;
}

bool TernaryForm::is_homogeneous() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
        int s = e[0] + e[1] + e[2];
        if (d < 0) d = s;
        if (s != d) return false;
    }
    return true;
}

TernaryForm TernaryForm::initial_form(const std::array<long, 3>& w) const {
    long best = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        long v = e[0] * w[0] + e[1] * w[1] + e[2] * w[2];
        if (first || v > best) { best = v; first = false; }
    }
    std::map<Exponent, Rat> out;
    for (const auto& [e, c] : terms_)
        if (e[0] * w[0] + e[1] * w[1] + e[2] * w[2] == best) out[e] = c;
    return TernaryForm(std::move(out));
}

std::vector<TernaryForm::Exponent> TernaryForm::monomial_order() const {
    std::vector<Exponent> order;
    for (const auto& [e, c] : terms_) order.push_back(e);
    return order;
}

std::vector<double> TernaryForm::transported_coefficients(
    const std::array<long, 3>& w, double t, const std::vector<Exponent>& order) const {
    std::vector<double> out;
    out.reserve(order.size());
    for (const Exponent& e : order) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            out.push_back(0);
            continue;
        }
        long ew = e[0] * w[0] + e[1] * w[1] + e[2] * w[2];
        out.push_back(rat_to_double(it->second) * std::pow(t, static_cast<double>(-ew)));
    }
    return out;
}

TernaryForm TernaryForm::swapped_x1_x2() const {
    std::map<Exponent, Rat> out;
    for (const auto& [e, c] : terms_) out[{e[1], e[0], e[2]}] = c;
    return TernaryForm(std::move(out));
}

TernaryForm TernaryForm::monic() const {
    if (terms_.empty()) return *this;
    const Rat& lead = terms_.rbegin()->second;
    std::map<Exponent, Rat> out;
    for (const auto& [e, c] : terms_) {
        Rat q = c / lead;
        q.canonicalize();
        out[e] = q;
    }
    return TernaryForm(std::move(out));
}

bool TernaryForm::proportional_to(const TernaryForm& other) const {
    if (is_zero() || other.is_zero()) return is_zero() == other.is_zero();
    return monic() == other.monic();
}

std::complex<double> TernaryForm::evaluate(
    const std::array<std::complex<double>, 3>& x) const {
    std::complex<double> sum = 0;
    for (const auto& [e, c] : terms_) {
        std::complex<double> v = rat_to_double(c);
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < e[i]; ++k) v *= x[i];
        sum += v;
    }
    return sum;
}

bool TernaryForm::is_line_through(const std::array<Rat, 3>& point) const {
    if (degree() != 1 || !is_homogeneous()) return false;
    Rat v = 0;
    for (const auto& [e, c] : terms_)
        for (int i = 0; i < 3; ++i)
            if (e[i] == 1) v += c * point[i];
    return v == 0;
}

std::string TernaryForm::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Print in descending lex order.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rat a = c;
        if (!first) os << (a < 0 ? " - " : " + ");
        else if (a < 0) os << "-";
        first = false;
        Rat mag = abs(a);
        bool has_var = e[0] + e[1] + e[2] > 0;
        if (mag != 1 || !has_var) {
            os << mag.get_num().get_str();
            if (mag.get_den() != 1) os << "/" << mag.get_den().get_str();
            if (has_var) os << "*";
        }
        bool started = false;
        for (int i = 0; i < 3; ++i) {
            if (e[i] == 0) continue;
            if (started) os << "*";
            started = true;
            os << "x" << i + 1;
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

TernaryForm TernaryForm::parse(const std::string& text) {
    std::map<Exponent, Rat> terms;
    size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    auto parse_number = [&]() -> Rat {
        size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        std::string num = text.substr(start, i - start);
        skip_ws();
        if (i < text.size() && text[i] == '/') {
            size_t save = i++;
            skip_ws();
            size_t dstart = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (i == dstart) { i = save; }  // not a fraction; bare '/' belongs elsewhere
            else num += "/" + text.substr(dstart, i - dstart);
        }
        return rat_from_string(num);
    };

    skip_ws();
    bool expect_term = true;
    int sign = 1;
    Rat coeff = 1;
    Exponent expo{0, 0, 0};
    bool in_term = false;
    auto flush = [&] {
        if (!in_term) return;
        Rat c = coeff * sign;
        c.canonicalize();
        terms[expo] += c;
        coeff = 1;
        expo = {0, 0, 0};
        sign = 1;
        in_term = false;
    };
    while (i < text.size()) {
        skip_ws();
        if (i >= text.size()) break;
        char c = text[i];
        if (c == '+' || c == '-') {
            flush();
            sign = c == '-' ? -1 : 1;
            ++i;
            expect_term = true;
        } else if (c == '*') {
            if (!in_term) throw std::invalid_argument("polynomial parse error near '*'");
            ++i;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            coeff *= parse_number();
            in_term = true;
            expect_term = false;
        } else if (c == 'x' || c == 'X') {
            ++i;
            if (i >= text.size() || text[i] < '1' || text[i] > '3')
                throw std::invalid_argument("variables are x1, x2, x3");
            int var = text[i] - '1';
            ++i;
            int e = 1;
            skip_ws();
            if (i < text.size() && text[i] == '^') {
                ++i;
                skip_ws();
                size_t start = i;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
                if (i == start) throw std::invalid_argument("missing exponent after '^'");
                e = std::stoi(text.substr(start, i - start));
            }
            expo[var] += e;
            in_term = true;
            expect_term = false;
        } else {
            throw std::invalid_argument(std::string("unexpected character '") + c +
                                        "' in polynomial");
        }
    }
    if (expect_term && !in_term && !terms.empty())
        throw std::invalid_argument("dangling sign in polynomial");
    flush();
    std::erase_if(terms, [](const auto& kv) { return kv.second == 0; });
    return TernaryForm(std::move(terms));
}

void PlaneDivisor::validate() const {
    for (const DivisorComponent& c : components) {
        if (c.poly.is_zero())
            throw std::invalid_argument("zero polynomial as divisor component");
        if (!c.poly.is_homogeneous())
            throw std::invalid_argument("divisor components must be homogeneous");
        if (c.coefficient < 0)
            throw std::invalid_argument("negative divisor coefficient");
    }
    for (size_t i = 0; i < components.size(); ++i)
        for (size_t j = i + 1; j < components.size(); ++j)
            if (components[i].poly.proportional_to(components[j].poly))
                throw std::invalid_argument("divisor components must be pairwise distinct");
}

Rat PlaneDivisor::total_degree() const {
    Rat d = 0;
    for (const DivisorComponent& c : components) d += c.coefficient * c.poly.degree();
    return d;
}

std::string PlaneDivisor::to_json_string(int indent) const {
    auto arr = nlohmann::ordered_json::array();
    for (const DivisorComponent& c : components) {
        nlohmann::ordered_json e;
        e["poly"] = c.poly.to_string();
        e["coeff"] = rat_to_string(c.coefficient);
        arr.push_back(e);
    }
    return indent >= 0 ? arr.dump(indent) : arr.dump();
}

PlaneDivisor PlaneDivisor::from_json_string(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.is_array()) throw std::invalid_argument("divisor JSON must be a list");
    PlaneDivisor d;
    for (const auto& e : j) {
        DivisorComponent c;
        c.poly = TernaryForm::parse(e.at("poly").get<std::string>());
        c.coefficient = rat_from_string(e.at("coeff").get<std::string>());
        d.components.push_back(std::move(c));
    }
    d.validate();
    return d;
}

void OnePS::validate() const {
    if (weights[0] == weights[1] && weights[1] == weights[2])
        throw std::invalid_argument("one-parameter subgroup acts trivially on P^2");
}

PlaneDivisor degenerate(const PlaneDivisor& d, const OnePS& w) {
    w.validate();
    PlaneDivisor out;
    for (const DivisorComponent& c : d.components) {
        TernaryForm init = c.poly.initial_form(w.weights).monic();
        bool merged = false;
        for (DivisorComponent& existing : out.components)
            if (existing.poly.proportional_to(init)) {
                existing.coefficient += c.coefficient;
                merged = true;
                break;
            }
        if (!merged) out.components.push_back({std::move(init), c.coefficient});
    }
    return out;
}

namespace {

void require_concurrent_lines(const PlaneDivisor& d, const std::array<Rat, 3>& point) {
    d.validate();
    for (const DivisorComponent& c : d.components)
        if (!c.poly.is_line_through(point))
            throw std::invalid_argument(
                "component is not a line through the common point: " + c.poly.to_string());
}

}  // namespace

bool is_lc_concurrent(const PlaneDivisor& d, const std::array<Rat, 3>& point) {
    require_concurrent_lines(d, point);
    Rat total = 0;
    for (const DivisorComponent& c : d.components) {
        if (c.coefficient > 1) return false;
        total += c.coefficient;
    }
    return total <= 2;
}

Rat blowup_discrepancy_concurrent(const PlaneDivisor& d, const std::array<Rat, 3>& point) {
    require_concurrent_lines(d, point);
    Rat total = 0;
    for (const DivisorComponent& c : d.components) total += c.coefficient;
    Rat r = total - 1;
    r.canonicalize();
    return r;
}

bool lc_feasible(const Rat& gamma, const Rat& lambda) {
    if (gamma < 0 || gamma >= 1)
        throw std::invalid_argument("gamma must lie in [0, 1)");
    if (lambda < 0) throw std::invalid_argument("lambda must be nonnegative");
    Rat c1 = 2 * gamma + 3 * lambda - 4 * gamma * lambda;
    Rat c2 = 3 * lambda - 4 * gamma * lambda;
    return c1 <= 2 && c2 <= 1;
}

GlctBound glct_bound(const Rat& gamma) {
    if (gamma < 0 || gamma >= 1)
        throw std::invalid_argument("gamma must lie in [0, 1)");
    if (gamma >= Rat(3, 4)) return {true, Rat(0)};
    Rat denom = 3 - 4 * gamma;
    Rat v;
    if (gamma <= Rat(1, 2))
        v = 1 / denom;
    else
        v = 2 * (1 - gamma) / denom;
    v.canonicalize();
    return {false, v};
}

namespace {

Int rat_floor(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

Int rat_ceil(const Rat& r) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

// Smallest-denominator rational in the closed interval [lo, hi].
Rat simplest_between(const Rat& lo, const Rat& hi) {
    Int c = rat_ceil(lo);
    if (Rat(c) <= hi) return Rat(c);
    Int n = rat_floor(lo);
    // lo, hi lie strictly between n and n+1.
    Rat inner = simplest_between(1 / (hi - Rat(n)), 1 / (lo - Rat(n)));
    Rat r = Rat(n) + 1 / inner;
    r.canonicalize();
    return r;
}

}  // namespace

GlctBound glct_bound_via_search(const Rat& gamma) {
    if (gamma < 0 || gamma >= 1)
        throw std::invalid_argument("gamma must lie in [0, 1)");
    const Rat big(1 << 20);
    if (lc_feasible(gamma, big) && lc_feasible(gamma, big * 2)) return {true, Rat(0)};
    if (!lc_feasible(gamma, 0))
        throw std::logic_error("lambda = 0 should always be feasible");

    Rat lo = 0, hi = big;  // feasible at lo, infeasible at hi
    for (int it = 0; it < 200; ++it) {
        Rat mid = (lo + hi) / 2;
        mid.canonicalize();
        if (lc_feasible(gamma, mid))
            lo = mid;
        else
            hi = mid;
    }
    // The supremum is attained (closed constraints); recover it as the
    // simplest rational in [lo, hi] and verify against the oracle.
    Rat candidate = simplest_between(lo, hi);
    Rat eps = (hi - lo) / 2;
    if (!lc_feasible(gamma, candidate) || lc_feasible(gamma, candidate + eps))
        throw std::logic_error("bisection failed to isolate the supremum");
    candidate.canonicalize();
    return {false, candidate};
}

}  // namespace chowquot

#include "chowquot/rational.hpp"

#include <cassert>
#include <cstddef>
#include <stdexcept>

namespace chowquot {

std::string rat_to_string(const Rat& r) {
    Rat c = r;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::optional<Rat> try_rat_from_string(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::string t = s;
    // Decimal literal: shift the point into a power-of-ten denominator.
    auto dot_pos = t.find('.');
    if (dot_pos != std::string::npos) {
        std::string digits = t.substr(0, dot_pos) + t.substr(dot_pos + 1);
        size_t frac_len = t.size() - dot_pos - 1;
        if (digits.empty() || digits == "-" || digits == "+") return std::nullopt;
        for (size_t i = 0; i < digits.size(); ++i) {
            char c = digits[i];
            if (!(std::isdigit(static_cast<unsigned char>(c)) ||
                  (i == 0 && (c == '-' || c == '+'))))
                return std::nullopt;
        }
        std::string den = "1";
        den.append(frac_len, '0');
        t = digits + "/" + den;
    }
    try {
        Rat r(t, 10);  // explicit base; GMP would read leading zeros as octal
        if (r.get_den() == 0) return std::nullopt;
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

Rat rat_from_string(const std::string& s) {
    auto r = try_rat_from_string(s);
    if (!r) throw std::invalid_argument("not a rational: '" + s + "'");
    return *r;
}

double rat_to_double(const Rat& r) { return r.get_d(); }

Rat dot(const QVector& a, const QVector& b) {
    assert(a.size() == b.size());
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Int dot(const ZVector& a, const ZVector& b) {
    assert(a.size() == b.size());
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat dot(const ZVector& a, const QVector& b) {
    assert(a.size() == b.size());
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
    return s;
}

ZVector z_sub(const ZVector& a, const ZVector& b) {
    assert(a.size() == b.size());
    ZVector r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

ZVector primitive_integer_direction(const QVector& v) {
    // Common denominator first, then strip the content.
    Int den_lcm = 1;
    for (const Rat& x : v) {
        Rat c = x;
        c.canonicalize();
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    ZVector w(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        Rat c = v[i];
        c.canonicalize();
        w[i] = c.get_num() * (den_lcm / c.get_den());
    }
    return primitive_integer_direction(w);
}

ZVector primitive_integer_direction(const ZVector& v) {
    Int g = 0;
    for (const Int& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 0) return v;  // zero vector
    ZVector w(v.size());
    int lead_sign = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        w[i] = v[i] / g;
        if (lead_sign == 0 && w[i] != 0) lead_sign = sgn(w[i]);
    }
    if (lead_sign < 0)
        for (Int& x : w) x = -x;
    return w;
}

std::vector<std::string> vector_to_strings(const QVector& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const Rat& x : v) out.push_back(rat_to_string(x));
    return out;
}

std::vector<std::string> vector_to_strings(const ZVector& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const Int& x : v) out.push_back(x.get_str() + "/1");
    return out;
}

}  // namespace chowquot

// Exact integer/rational scalars (GMP-backed) and their canonical
// "p/q" string form used by every JSON interface of the library.

#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace chowquot {

using Int = mpz_class;
using Rat = mpq_class;

using QVector = std::vector<Rat>;
using ZVector = std::vector<Int>;

// Canonical serialization: always "p/q" in lowest terms, q > 0 ("3/1", "-1/2").
std::string rat_to_string(const Rat& r);

// Accepts "p/q", plain integers, and decimal literals like "0.74".
// Throws std::invalid_argument on malformed input.
Rat rat_from_string(const std::string& s);

std::optional<Rat> try_rat_from_string(const std::string& s);

double rat_to_double(const Rat& r);

inline Rat rat_of(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Dot product / elementwise helpers for exact vectors.
Rat dot(const QVector& a, const QVector& b);
Int dot(const ZVector& a, const ZVector& b);
Rat dot(const ZVector& a, const QVector& b);

ZVector z_sub(const ZVector& a, const ZVector& b);

// Divides a rational vector by the gcd of numerators / lcm of denominators,
// returning the unique primitive integer vector with positive leading
// nonzero entry (zero vector maps to itself).
ZVector primitive_integer_direction(const QVector& v);
ZVector primitive_integer_direction(const ZVector& v);

std::vector<std::string> vector_to_strings(const QVector& v);
std::vector<std::string> vector_to_strings(const ZVector& v);

}  // namespace chowquot

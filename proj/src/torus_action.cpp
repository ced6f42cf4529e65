#include "chowquot/torus_action.hpp"

#include <algorithm>
#include <stdexcept>

#include "chowquot/errors.hpp"

namespace chowquot {

int TorusActionSpec::coordinate_count() const {
    int n = 0;
    for (int d : factors) n += d + 1;
    return n;
}

int TorusActionSpec::factor_of(int coordinate) const {
    int offset = 0;
    for (size_t f = 0; f < factors.size(); ++f) {
        offset += factors[f] + 1;
        if (coordinate < offset) return static_cast<int>(f);
    }
    throw std::out_of_range("coordinate index out of range");
}

int TorusActionSpec::factor_offset(int factor) const {
    int offset = 0;
    for (int f = 0; f < factor; ++f) offset += factors[f] + 1;
    return offset;
}

SupportPattern TorusActionSpec::full_support() const {
    SupportPattern s;
    for (int i = 0; i < coordinate_count(); ++i) s.insert(i);
    return s;
}

void TorusActionSpec::validate() const {
    if (torus_rank < 0) throw std::invalid_argument("negative torus rank");
    if (factors.empty()) throw std::invalid_argument("no projective factors");
    for (int d : factors)
        if (d < 0) throw std::invalid_argument("negative factor dimension");
    const int n = coordinate_count();
    if (static_cast<int>(weights.size()) != n)
        throw std::invalid_argument("one weight vector per coordinate required");
    for (const ZVector& w : weights)
        if (static_cast<int>(w.size()) != torus_rank)
            throw std::invalid_argument("weight vector length must equal torus rank");
    if (equation.empty()) return;

    std::vector<int> degree(factors.size(), -1);
    ZVector eq_weight;
    for (const EquationTerm& term : equation) {
        if (static_cast<int>(term.exponents.size()) != n)
            throw std::invalid_argument("equation exponent length mismatch");
        if (term.coefficient == 0)
            throw std::invalid_argument("zero coefficient in equation");
        std::vector<int> deg(factors.size(), 0);
        ZVector w(torus_rank, Int(0));
        for (int i = 0; i < n; ++i) {
            int e = term.exponents[i];
            if (e < 0) throw std::invalid_argument("negative exponent in equation");
            if (e == 0) continue;
            deg[factor_of(i)] += e;
            for (int k = 0; k < torus_rank; ++k) w[k] += e * weights[i][k];
        }
        if (degree[0] < 0) {
            degree = deg;
            eq_weight = w;
        } else {
            if (deg != degree)
                throw std::invalid_argument("equation not multihomogeneous");
            if (w != eq_weight)
                throw std::invalid_argument("equation not weight-homogeneous");
        }
    }
}

ZVector TorusActionSpec::equation_weight() const {
    if (equation.empty()) throw std::logic_error("no equation");
    ZVector w(torus_rank, Int(0));
    const EquationTerm& term = equation.front();
    for (int i = 0; i < coordinate_count(); ++i)
        for (int k = 0; k < torus_rank; ++k) w[k] += term.exponents[i] * weights[i][k];
    return w;
}

int TorusActionSpec::surviving_equation_terms(const SupportPattern& support) const {
    int count = 0;
    for (const EquationTerm& term : equation) {
        bool survives = true;
        for (int i = 0; i < coordinate_count() && survives; ++i)
            if (term.exponents[i] > 0 && !support.count(i)) survives = false;
        if (survives) ++count;
    }
    return count;
}

bool TorusActionSpec::support_consistent_with_equation(const SupportPattern& support) const {
    if (equation.empty()) return true;
    return surviving_equation_terms(support) != 1;
}

StabilizerGroup StabilizerGroup::from_diagonal(const std::vector<Int>& diagonal) {
    StabilizerGroup g;
    for (const Int& d : diagonal)
        if (d > 1) {
            g.invariant_factors.push_back(d);
            g.order *= d;
        }
    return g;
}

IntegerMatrix weight_difference_matrix(const TorusActionSpec& spec,
                                       const SupportPattern& support) {
    std::vector<ZVector> rows;
    for (size_t f = 0; f < spec.factors.size(); ++f) {
        int lo = spec.factor_offset(static_cast<int>(f));
        int hi = lo + spec.factor_size(static_cast<int>(f));
        int ref = -1;
        for (int i = lo; i < hi; ++i) {
            if (!support.count(i)) continue;
            if (ref < 0) {
                ref = i;
            } else {
                rows.push_back(z_sub(spec.weights[i], spec.weights[ref]));
            }
        }
    }
    if (rows.empty()) return IntegerMatrix(0, spec.torus_rank);
    return IntegerMatrix::from_rows(rows);
}

namespace {

StabilizerGroup cokernel_torsion(const IntegerMatrix& rows_matrix) {
    if (rows_matrix.rows() == 0 || rows_matrix.cols() == 0) return StabilizerGroup{};
    SmithDecomposition snf = smith_normal_form(rows_matrix);
    return StabilizerGroup::from_diagonal(snf.diagonal());
}

void check_support(const TorusActionSpec& spec, const SupportPattern& support) {
    for (int i : support)
        if (i < 0 || i >= spec.coordinate_count())
            throw std::out_of_range("support index out of range");
    for (size_t f = 0; f < spec.factors.size(); ++f) {
        int lo = spec.factor_offset(static_cast<int>(f));
        int hi = lo + spec.factor_size(static_cast<int>(f));
        bool nonempty = false;
        for (int i = lo; i < hi && !nonempty; ++i) nonempty = support.count(i) > 0;
        if (!nonempty)
            throw InvalidStratumError("support misses projective factor " +
                                      std::to_string(f));
    }
}

}  // namespace

StabilizerGroup global_stabilizer(const TorusActionSpec& spec) {
    spec.validate();
    return cokernel_torsion(weight_difference_matrix(spec, spec.full_support()));
}

StabilizerGroup stratum_stabilizer(const TorusActionSpec& spec,
                                   const SupportPattern& support) {
    spec.validate();
    check_support(spec, support);
    return cokernel_torsion(weight_difference_matrix(spec, support));
}

int stabilizer_dimension(const TorusActionSpec& spec, const SupportPattern& support) {
    check_support(spec, support);
    IntegerMatrix diff = weight_difference_matrix(spec, support);
    if (diff.rows() == 0) return spec.torus_rank;
    return spec.torus_rank - rank(diff);
}

TorusActionSpec make_effective(const TorusActionSpec& spec) {
    spec.validate();
    if (spec.torus_rank == 0) return spec;

    // Reference-normalize per factor (projective rescaling), then express
    // every normalized weight in a basis of the lattice they generate.
    const int n = spec.coordinate_count();
    std::vector<ZVector> normalized(n);
    for (size_t f = 0; f < spec.factors.size(); ++f) {
        int lo = spec.factor_offset(static_cast<int>(f));
        int hi = lo + spec.factor_size(static_cast<int>(f));
        for (int i = lo; i < hi; ++i) normalized[i] = z_sub(spec.weights[i], spec.weights[lo]);
    }
    IntegerMatrix g = IntegerMatrix::from_rows(normalized);
    SmithDecomposition snf = smith_normal_form(g);
    const int r = snf.rank;

    // Row i of G equals sum_k U[i][k] * (d_k * V_row_k); the coefficients
    // U[i][0..r) are the coordinates in the basis {d_k V_k} of the lattice.
    TorusActionSpec out = spec;
    out.torus_rank = r;
    for (int i = 0; i < n; ++i) {
        ZVector w(r);
        for (int k = 0; k < r; ++k) w[k] = snf.u.at(i, k);
        out.weights[i] = std::move(w);
    }
    out.validate();
    return out;
}

StabilizerGroup lattice_quotient(const IntegerMatrix& numerator_rows,
                                 const IntegerMatrix& denominator_rows) {
    if (numerator_rows.rows() == 0)
        throw std::invalid_argument("lattice_quotient: empty numerator");
    SmithDecomposition num = smith_normal_form(numerator_rows);
    const int r = num.rank;
    if (denominator_rows.rows() == 0) {
        if (r != 0) throw std::invalid_argument("lattice_quotient: quotient not finite");
        return StabilizerGroup{};
    }
    if (denominator_rows.cols() != numerator_rows.cols())
        throw std::invalid_argument("lattice_quotient: ambient dimension mismatch");
    if (rank(denominator_rows) != r)
        throw std::invalid_argument("lattice_quotient: quotient not finite");

    // Coordinates of each denominator generator in the numerator basis
    // {d_k * V_k}: a = g * V^{-1}, coefficient_k = a_k / d_k.
    IntegerMatrix coords(denominator_rows.rows(), r);
    for (int i = 0; i < denominator_rows.rows(); ++i) {
        ZVector gen = denominator_rows.row(i);
        for (int k = 0; k < numerator_rows.cols(); ++k) {
            Int a = 0;
            for (int j = 0; j < numerator_rows.cols(); ++j)
                a += gen[j] * num.v_inverse.at(j, k);
            if (k < r) {
                const Int& dk = num.d.at(k, k);
                if (a % dk != 0)
                    throw std::invalid_argument(
                        "lattice_quotient: denominator not a sublattice");
                coords.at(i, k) = a / dk;
            } else if (a != 0) {
                throw std::invalid_argument(
                    "lattice_quotient: denominator not a sublattice");
            }
        }
    }
    SmithDecomposition q = smith_normal_form(coords);
    return StabilizerGroup::from_diagonal(q.diagonal());
}

}  // namespace chowquot

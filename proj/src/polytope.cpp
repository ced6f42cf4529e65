#include "chowquot/polytope.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "chowquot/errors.hpp"

namespace chowquot {

namespace {

// Reduced row echelon form over Q. Returns pivot column per row.
std::vector<int> rref(std::vector<QVector>& rows) {
    std::vector<int> pivots;
    if (rows.empty()) return pivots;
    const int cols = static_cast<int>(rows[0].size());
    size_t r = 0;
    for (int c = 0; c < cols && r < rows.size(); ++c) {
        size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[r], rows[p]);
        Rat inv = rows[r][c];
        for (int j = 0; j < cols; ++j) rows[r][j] /= inv;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Rat f = rows[i][c];
            for (int j = 0; j < cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

// Basis of { x : row . x = 0 for all rows }.
std::vector<QVector> rational_kernel(std::vector<QVector> rows, int cols) {
    std::vector<int> pivots = rref(rows);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<QVector> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        QVector v(cols, Rat(0));
        v[f] = 1;
        for (size_t r = 0; r < rows.size(); ++r) v[pivots[r]] = -rows[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

QVector q_sub(const QVector& a, const QVector& b) {
    QVector r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

double znorm(const ZVector& v) {
    double s = 0;
    for (const Int& x : v) {
        double d = x.get_d();
        s += d * d;
    }
    return std::sqrt(s);
}

// Joint primitive-integer scaling of (normal, offset); sign left alone.
std::pair<ZVector, Rat> scale_constraint(const QVector& normal, const Rat& offset) {
    ZVector zn = primitive_integer_direction(normal);
    // Recover the positive factor s with zn = s * normal (sign may flip).
    int k = 0;
    while (k < static_cast<int>(normal.size()) && normal[k] == 0) ++k;
    if (k == static_cast<int>(normal.size())) return {zn, offset};  // zero normal
    Rat s = Rat(zn[k]) / normal[k];
    return {zn, offset * s};
}

}  // namespace

int rational_rank(const std::vector<ZVector>& rows) {
    if (rows.empty()) return 0;
    std::vector<QVector> qrows;
    qrows.reserve(rows.size());
    for (const ZVector& r : rows) {
        QVector q(r.size());
        for (size_t i = 0; i < r.size(); ++i) q[i] = Rat(r[i]);
        qrows.push_back(std::move(q));
    }
    std::vector<QVector> copy = qrows;
    return static_cast<int>(rref(copy).size());
}

Polytope Polytope::convex_hull(std::vector<QVector> points) {
    if (points.empty()) throw std::invalid_argument("convex_hull: no points");
    const int amb = static_cast<int>(points[0].size());
    if (amb > kMaxHullDimension)
        throw ScaleGuardError("convex_hull: ambient dimension exceeds guard");
    for (QVector& p : points) {
        if (static_cast<int>(p.size()) != amb)
            throw std::invalid_argument("convex_hull: ragged point dimensions");
        for (Rat& x : p) x.canonicalize();
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    Polytope out;
    out.ambient_dim_ = amb;

    // Affine hull: RREF the difference vectors.
    const QVector& origin = points[0];
    std::vector<QVector> dirs;
    for (size_t i = 1; i < points.size(); ++i) dirs.push_back(q_sub(points[i], origin));
    std::vector<int> pivots = rref(dirs);
    const int d = static_cast<int>(dirs.size());
    out.dim_ = d;

    for (const QVector& nu : rational_kernel(dirs, amb)) {
        auto [zn, off] = scale_constraint(nu, dot(nu, origin));
        if (!zn.empty() && zn != ZVector(zn.size(), Int(0))) {
            // positive leading entry
            int k = 0;
            while (zn[k] == 0) ++k;
            if (zn[k] < 0) {
                for (Int& x : zn) x = -x;
                off = -off;
            }
            out.equations_.push_back({std::move(zn), off});
        }
    }
    std::sort(out.equations_.begin(), out.equations_.end(),
              [](const Hyperplane& a, const Hyperplane& b) {
                  return std::tie(a.normal, a.offset) < std::tie(b.normal, b.offset);
              });

    if (d == 0) {
        out.vertices_ = {origin};
        return out;
    }

    // Local coordinates read off the RREF pivots.
    auto local = [&](const QVector& p) {
        QVector xi(d);
        QVector diff = q_sub(p, origin);
        for (int r = 0; r < d; ++r) xi[r] = diff[pivots[r]] / dirs[r][pivots[r]];
        return xi;
    };
    std::vector<QVector> xs;
    xs.reserve(points.size());
    for (const QVector& p : points) xs.push_back(local(p));

    // Facet candidates: hyperplanes through d-subsets of the points.
    const size_t n = points.size();
    std::vector<size_t> idx(d);
    std::set<std::pair<ZVector, Rat>> seen;
    auto consider = [&](const std::vector<size_t>& subset) {
        std::vector<QVector> sys;
        for (size_t s : subset) {
            QVector row = xs[s];
            row.push_back(Rat(-1));
            sys.push_back(std::move(row));
        }
        std::vector<QVector> kernel = rational_kernel(std::move(sys), d + 1);
        if (kernel.size() != 1) return;  // affinely degenerate subset
        QVector nu_loc(kernel[0].begin(), kernel[0].end() - 1);
        Rat b_loc = kernel[0].back();
        bool any_pos = false, any_neg = false;
        for (const QVector& xi : xs) {
            int s = sgn(static_cast<Rat>(dot(nu_loc, xi) - b_loc));
            any_pos |= s > 0;
            any_neg |= s < 0;
            if (any_pos && any_neg) return;
        }
        if (any_pos) {
            for (Rat& x : nu_loc) x = -x;
            b_loc = -b_loc;
        }
        // Ambient representative supported on the pivot coordinates.
        QVector nu_amb(amb, Rat(0));
        for (int r = 0; r < d; ++r) nu_amb[pivots[r]] = nu_loc[r] / dirs[r][pivots[r]];
        Rat b_amb = b_loc + dot(nu_amb, origin);
        auto [zn, off] = scale_constraint(nu_amb, b_amb);
        // scale_constraint may flip the sign; restore outward orientation.
        int k = 0;
        while (k < amb && zn[k] == 0) ++k;
        if (k < amb && sgn(nu_amb[k]) != sgn(zn[k])) {
            for (Int& x : zn) x = -x;
            off = -off;
        }
        if (seen.insert({zn, off}).second) out.facets_.push_back({zn, off});
    };
    // Enumerate d-subsets.
    for (int i = 0; i < d; ++i) idx[i] = i;
    if (n >= static_cast<size_t>(d)) {
        for (;;) {
            consider(idx);
            int i = d - 1;
            while (i >= 0 && idx[i] == n - d + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    std::sort(out.facets_.begin(), out.facets_.end(),
              [](const Halfspace& a, const Halfspace& b) {
                  return std::tie(a.normal, a.offset) < std::tie(b.normal, b.offset);
              });

    // Vertices: points whose tight constraints span the ambient space.
    for (size_t i = 0; i < n; ++i) {
        std::vector<ZVector> tight;
        for (const Hyperplane& eq : out.equations_) tight.push_back(eq.normal);
        for (const Halfspace& f : out.facets_)
            if (dot(f.normal, points[i]) == f.offset) tight.push_back(f.normal);
        if (rational_rank(tight) == amb) out.vertices_.push_back(points[i]);
    }
    return out;
}

Location Polytope::locate(const QVector& u) const {
    if (static_cast<int>(u.size()) != ambient_dim_)
        throw std::invalid_argument("locate: dimension mismatch");
    for (const Hyperplane& eq : equations_)
        if (dot(eq.normal, u) != eq.offset) return Location::Outside;
    bool boundary = false;
    for (const Halfspace& f : facets_) {
        Rat v = dot(f.normal, u);
        if (v > f.offset) return Location::Outside;
        if (v == f.offset) boundary = true;
    }
    return boundary ? Location::Boundary : Location::Interior;
}

bool Polytope::contains(const QVector& u) const { return locate(u) != Location::Outside; }

bool Polytope::contains_approx(const std::vector<double>& u, double slack) const {
    auto fdot = [&](const ZVector& nu) {
        double s = 0;
        for (size_t i = 0; i < nu.size(); ++i) s += nu[i].get_d() * u[i];
        return s;
    };
    for (const Hyperplane& eq : equations_)
        if (std::abs(fdot(eq.normal) - rat_to_double(eq.offset)) > slack * znorm(eq.normal))
            return false;
    for (const Halfspace& f : facets_)
        if (fdot(f.normal) - rat_to_double(f.offset) > slack * znorm(f.normal))
            return false;
    return true;
}

double Polytope::boundary_margin_approx(const std::vector<double>& u) const {
    auto fdot = [&](const ZVector& nu) {
        double s = 0;
        for (size_t i = 0; i < nu.size(); ++i) s += nu[i].get_d() * u[i];
        return s;
    };
    double margin = std::numeric_limits<double>::infinity();
    for (const Halfspace& f : facets_)
        margin = std::min(margin, (rat_to_double(f.offset) - fdot(f.normal)) / znorm(f.normal));
    for (const Hyperplane& eq : equations_) {
        double r = std::abs(fdot(eq.normal) - rat_to_double(eq.offset)) / znorm(eq.normal);
        margin = std::min(margin, -r);
    }
    return margin;
}

QVector Polytope::relative_interior_point() const {
    if (vertices_.empty()) throw std::logic_error("empty polytope");
    QVector c(ambient_dim_, Rat(0));
    for (const QVector& v : vertices_)
        for (int i = 0; i < ambient_dim_; ++i) c[i] += v[i];
    for (Rat& x : c) {
        x /= static_cast<long>(vertices_.size());
        x.canonicalize();
    }
    return c;
}

bool Polytope::contained_in(const Polytope& other) const {
    for (const QVector& v : vertices_)
        if (!other.contains(v)) return false;
    return true;
}

bool Polytope::same_vertex_set(const Polytope& other) const {
    return vertices_ == other.vertices_;
}

std::string Polytope::to_json_string(int indent) const {
    nlohmann::ordered_json j;
    j["ambient_dim"] = ambient_dim_;
    j["dim"] = dim_;
    auto verts = nlohmann::ordered_json::array();
    for (const QVector& v : vertices_) verts.push_back(vector_to_strings(v));
    j["vertices"] = verts;
    auto facets = nlohmann::ordered_json::array();
    for (const Halfspace& f : facets_) {
        nlohmann::ordered_json jf;
        jf["normal"] = vector_to_strings(f.normal);
        jf["offset"] = rat_to_string(f.offset);
        facets.push_back(jf);
    }
    j["facets"] = facets;
    auto eqs = nlohmann::ordered_json::array();
    for (const Hyperplane& e : equations_) {
        nlohmann::ordered_json je;
        je["normal"] = vector_to_strings(e.normal);
        je["offset"] = rat_to_string(e.offset);
        eqs.push_back(je);
    }
    j["equations"] = eqs;
    return indent >= 0 ? j.dump(indent) : j.dump();
}

SplitResult split_by_hyperplane(const Polytope& p, const ZVector& normal, const Rat& offset) {
    SplitResult res;
    if (p.is_empty()) return res;
    const auto& verts = p.vertices();
    std::vector<int> sign(verts.size());
    bool any_pos = false, any_neg = false;
    for (size_t i = 0; i < verts.size(); ++i) {
        sign[i] = sgn(static_cast<Rat>(dot(normal, verts[i]) - offset));
        any_pos |= sign[i] > 0;
        any_neg |= sign[i] < 0;
    }

    // Edge crossings between strictly-opposite vertices (adjacency decided
    // by the rank of the shared tight constraints).
    std::vector<QVector> cuts;
    if (any_pos && any_neg) {
        for (size_t i = 0; i < verts.size(); ++i) {
            if (sign[i] <= 0) continue;
            for (size_t j = 0; j < verts.size(); ++j) {
                if (sign[j] >= 0) continue;
                std::vector<ZVector> tight;
                for (const Hyperplane& eq : p.equations()) tight.push_back(eq.normal);
                for (const Halfspace& f : p.facets())
                    if (dot(f.normal, verts[i]) == f.offset &&
                        dot(f.normal, verts[j]) == f.offset)
                        tight.push_back(f.normal);
                if (rational_rank(tight) != p.ambient_dimension() - 1) continue;
                Rat a = dot(normal, verts[i]) - offset;
                Rat c = dot(normal, verts[j]) - offset;
                Rat t = a / (a - c);  // in (0,1)
                QVector cut(verts[i].size());
                for (size_t k = 0; k < cut.size(); ++k) {
                    cut[k] = verts[i][k] + t * (verts[j][k] - verts[i][k]);
                    cut[k].canonicalize();
                }
                cuts.push_back(std::move(cut));
            }
        }
    }

    auto build = [&](int keep_sign) -> std::optional<Polytope> {
        std::vector<QVector> pts;
        for (size_t i = 0; i < verts.size(); ++i)
            if (sign[i] == keep_sign || sign[i] == 0) pts.push_back(verts[i]);
        if (keep_sign != 0) {
            bool any_strict = false;
            for (size_t i = 0; i < verts.size(); ++i) any_strict |= sign[i] == keep_sign;
            if (!any_strict) return std::nullopt;
            pts.insert(pts.end(), cuts.begin(), cuts.end());
        } else {
            pts.insert(pts.end(), cuts.begin(), cuts.end());
            if (pts.empty()) return std::nullopt;
        }
        return Polytope::convex_hull(std::move(pts));
    };

    res.plus = build(1);
    res.minus = build(-1);
    res.zero = build(0);
    return res;
}

bool point_in_hull_lp(const std::vector<QVector>& points, const QVector& u) {
    if (points.empty()) return false;
    const int m = static_cast<int>(u.size()) + 1;  // ambient eqs + convexity row
    const int n = static_cast<int>(points.size());

    // Phase-I simplex: lambda >= 0, [P; 1] lambda = [u; 1], artificials basic.
    std::vector<QVector> a(m, QVector(n, Rat(0)));
    QVector b(m, Rat(0));
    for (int i = 0; i + 1 < m; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = points[j][i];
        b[i] = u[i];
    }
    for (int j = 0; j < n; ++j) a[m - 1][j] = 1;
    b[m - 1] = 1;
    for (int i = 0; i < m; ++i)
        if (b[i] < 0) {
            for (int j = 0; j < n; ++j) a[i][j] = -a[i][j];
            b[i] = -b[i];
        }

    // Tableau columns: n original + m artificial.
    const int cols = n + m;
    std::vector<QVector> t(m, QVector(cols, Rat(0)));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) t[i][j] = a[i][j];
        t[i][n + i] = 1;
    }
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;
    // Objective: minimize sum of artificials. Reduced cost row.
    QVector cost(cols, Rat(0));
    Rat value = 0;
    for (int j = n; j < cols; ++j) cost[j] = 1;
    for (int i = 0; i < m; ++i) {  // price out the initial basis
        for (int j = 0; j < cols; ++j) cost[j] -= t[i][j];
        value -= b[i];
    }

    for (;;) {
        int enter = -1;
        for (int j = 0; j < cols; ++j)  // Bland's rule
            if (cost[j] < 0) { enter = j; break; }
        if (enter < 0) break;
        int leave = -1;
        Rat best_ratio;
        for (int i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            Rat ratio = b[i] / t[i][enter];
            if (leave < 0 || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                best_ratio = ratio;
                leave = i;
            }
        }
        if (leave < 0) return false;  // unbounded phase-I: cannot happen
        Rat piv = t[leave][enter];
        for (int j = 0; j < cols; ++j) t[leave][j] /= piv;
        b[leave] /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            Rat f = t[i][enter];
            for (int j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
            b[i] -= f * b[leave];
        }
        Rat fc = cost[enter];
        for (int j = 0; j < cols; ++j) cost[j] -= fc * t[leave][j];
        value -= fc * b[leave];
        basis[leave] = enter;
    }
    return value == 0;
}

}  // namespace chowquot

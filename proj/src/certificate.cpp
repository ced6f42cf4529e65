#include "chowquot/certificate.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "chowquot/polytope.hpp"

namespace chowquot {

Rat tian_threshold(int dim) {
    if (dim < 1) throw std::invalid_argument("dimension must be positive");
    Rat t(dim, dim + 1);
    t.canonicalize();
    return t;
}

std::vector<IntegerMatrix> symmetry_generators(const FamilySpec& f) {
    f.validate();
    std::vector<IntegerMatrix> gens;
    if (f.kind == FamilyKind::BidegreeHypersurface) {
        // Standard representation of S_{n+1} on Z^n with the e_0 := 0
        // convention: sigma sends e_i to e_{sigma(i)} - e_{sigma(0)}.
        const int n = f.n;
        for (int k = 0; k + 1 <= n; ++k) {
            IntegerMatrix g(n, n);
            if (k == 0) {
                // transposition (0 1): e_1 -> -e_1, e_i -> e_i - e_1
                for (int i = 1; i <= n; ++i) {
                    g.at(0, i - 1) = -1;
                    if (i >= 2) g.at(i - 1, i - 1) = 1;
                }
            } else {
                // transposition (k k+1): swap e_k and e_{k+1}
                for (int i = 1; i <= n; ++i) {
                    int img = i == k ? k + 1 : (i == k + 1 ? k : i);
                    g.at(img - 1, i - 1) = 1;
                }
            }
            gens.push_back(std::move(g));
        }
    } else {
        // Pair permutations of Z_0..Z_n act on Z^{n+1} by permuting the
        // basis; the within-pair swap x_0 <-> x_1 acts as e_1 -> -e_1 and
        // descends to the identity on the quotient base.
        const int m = f.n + 1;
        for (int k = 0; k + 1 < m; ++k) {
            IntegerMatrix g(m, m);
            for (int i = 0; i < m; ++i) {
                int img = i == k ? k + 1 : (i == k + 1 ? k : i);
                g.at(img, i) = 1;
            }
            gens.push_back(std::move(g));
        }
        IntegerMatrix swap0(m, m);
        for (int i = 0; i < m; ++i) swap0.at(i, i) = i == 0 ? -1 : 1;
        gens.push_back(std::move(swap0));
    }
    return gens;
}

bool symmetry_check(const std::vector<IntegerMatrix>& generators) {
    if (generators.empty()) return false;
    const int m = generators.front().rows();
    if (m == 0) return true;
    std::vector<ZVector> stacked;
    for (const IntegerMatrix& g : generators) {
        if (g.rows() != m || g.cols() != m)
            throw std::invalid_argument("symmetry generators must be square of equal size");
        for (int i = 0; i < m; ++i) {
            ZVector row = g.row(i);
            row[i] -= 1;
            stacked.push_back(std::move(row));
        }
    }
    // The joint kernel of the stacked (g - I) blocks is the fixed subspace;
    // it vanishes iff the stack has full column rank.
    return rational_rank(stacked) == m;
}

bool symmetry_check(const FamilySpec& f) { return symmetry_check(symmetry_generators(f)); }

namespace {

std::string bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace

KECertificate certify(const FamilySpec& f) {
    f.validate();
    KECertificate cert;
    cert.family = f;
    cert.dim_x = f.dimension();
    cert.tian = tian_threshold(cert.dim_x);
    cert.fano = is_fano(f);
    cert.smooth_known = is_smooth_known(f);
    cert.symmetry_ok = symmetry_check(f);
    cert.pair = chow_boundary(f);
    cert.gamma = cert.pair.gamma;

    auto& trail = cert.trail;
    trail.push_back({"family", "input", f.display_name() + " [" + f.selector() + "]"});
    trail.push_back({"dimension", "dim X", std::to_string(cert.dim_x)});
    trail.push_back({"fano",
                     f.kind == FamilyKind::BidegreeHypersurface
                         ? "adjunction: Fano iff alpha, beta < n+1"
                         : "recorded fact for the quadric kinds",
                     bool_str(cert.fano)});
    trail.push_back({"log-terminal",
                     "smoothness established by construction; required by the "
                     "quotient glct reduction",
                     bool_str(cert.smooth_known)});
    trail.push_back({"symmetric-action",
                     "finite normalizer fixing only the origin of the character lattice",
                     bool_str(cert.symmetry_ok)});

    ChowQuotientPair audited = boundary_from_stabilizers(f);
    bool pair_agrees = audited == cert.pair;
    trail.push_back({"chow-pair", "boundary coefficients (m_Z - 1)/m_Z",
                     "(P^" + std::to_string(cert.pair.base_dim) +
                         ", B_" + rat_to_string(cert.gamma) + ")"});
    trail.push_back({"pair-cross-check",
                     "closed form vs stabilizer enumeration over fibre components",
                     bool_str(pair_agrees)});
    if (!pair_agrees) {
        cert.verdict = Verdict::Inconclusive;
        cert.reason = "boundary pair routes disagree";
        trail.push_back({"verdict", "", "inconclusive: " + cert.reason});
        return cert;
    }

    const bool base_is_p2 = cert.pair.base_dim == 2;
    if (!base_is_p2) {
        cert.verdict = Verdict::Inconclusive;
        cert.reason = "no glct bound available for this base";
        trail.push_back({"pair-glct-bound", "concurrent-lines degeneration bound",
                         "unavailable for P^" + std::to_string(cert.pair.base_dim)});
        trail.push_back({"verdict", "", "inconclusive: " + cert.reason});
        return cert;
    }

    GlctBound bound = glct_bound(cert.gamma);
    cert.pair_glct_bound = bound;
    Rat upstairs = bound.is_infinite ? Rat(1) : std::min(Rat(1), bound.value);
    cert.glct_upstairs = upstairs;
    trail.push_back({"pair-glct-bound",
                     "degeneration to concurrent lines on (P^2, B_gamma)",
                     bound.to_string()});
    trail.push_back({"glct-upstairs", "min{1, pair bound} via the quotient reduction",
                     rat_to_string(upstairs)});
    trail.push_back({"tian-threshold", "dim/(dim+1)", rat_to_string(cert.tian)});

    const bool comparison = upstairs > cert.tian;
    {
        std::ostringstream os;
        os << rat_to_string(upstairs) << (comparison ? " > " : " <= ")
           << rat_to_string(cert.tian);
        trail.push_back({"comparison", "Tian criterion (alpha bound vs threshold)", os.str()});
    }

    if (!cert.fano) {
        cert.verdict = Verdict::Inconclusive;
        cert.reason = "not Fano";
    } else if (!cert.smooth_known) {
        cert.verdict = Verdict::Inconclusive;
        cert.reason = "log terminality not established";
    } else if (!cert.symmetry_ok) {
        cert.verdict = Verdict::Inconclusive;
        cert.reason = "symmetry condition fails";
    } else if (!comparison) {
        cert.verdict = Verdict::Inconclusive;
        cert.reason = "alpha bound does not exceed the threshold";
    } else {
        cert.verdict = Verdict::Certified;
        cert.reason.clear();
    }
    trail.push_back({"verdict", "criterion is sufficient only; no non-existence claims",
                     cert.verdict == Verdict::Certified ? "certified"
                                                        : "inconclusive: " + cert.reason});
    return cert;
}

std::string KECertificate::to_json_string(int indent) const {
    nlohmann::ordered_json j;
    j["family"] = family.selector();
    j["family_name"] = family.display_name();
    j["dim"] = dim_x;
    j["gamma"] = rat_to_string(gamma);
    if (pair_glct_bound)
        j["pair_glct_bound"] = pair_glct_bound->to_string();
    else
        j["pair_glct_bound"] = nullptr;
    if (glct_upstairs)
        j["glct_upstairs"] = rat_to_string(*glct_upstairs);
    else
        j["glct_upstairs"] = nullptr;
    j["tian_threshold"] = rat_to_string(tian);
    j["fano"] = fano;
    j["smooth_known"] = smooth_known;
    j["symmetry_ok"] = symmetry_ok;
    j["verdict"] = verdict == Verdict::Certified ? "certified" : "inconclusive";
    if (!reason.empty()) j["reason"] = reason;
    auto steps = nlohmann::ordered_json::array();
    for (const TrailStep& s : trail) {
        nlohmann::ordered_json e;
        e["step"] = s.step;
        e["citation"] = s.citation;
        e["value"] = s.value;
        steps.push_back(e);
    }
    j["trail"] = steps;
    return indent >= 0 ? j.dump(indent) : j.dump();
}

}  // namespace chowquot

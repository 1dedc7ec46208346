#pragma once

// Rigged paths: admissibility, degree, bounded enumeration, the graded
// generating series, and the dictionary between riggings and monomial
// exponent lists (including the streamlined p = 3 form).

#include "virapath/minimal_model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace virapath {

/// A rigged path of length L. Vectors are indexed by subscript:
/// r[i] = r_i for i = 0..L (r.front() is the fixed base height 1) and
/// sigma[i] = sigma_i for i = 0..L-1. Display order (text format, JSON) is
/// reversed: r_L,...,r_0. The empty path is { r = {1}, sigma = {} }.
struct RiggedPath {
    std::vector<long long> r;
    std::vector<long long> sigma;

    long long length() const { return static_cast<long long>(sigma.size()); }
    bool operator==(const RiggedPath&) const = default;
};

/// Exponent-list form of a path: n[i] = n_{i+1} for i = 0..L-1 (ascending
/// subscripts n_1..n_L), alongside the height sequence as in RiggedPath.
struct MonomialExponents {
    std::vector<ExactRational> n;
    std::vector<long long> r;

    bool operator==(const MonomialExponents&) const = default;
};

struct AdmissibilityReport {
    bool ok = true;
    std::string violation;  // empty when ok, else names the failed constraint
};

/// Checks the rigging constraints: sigma_i >= 0 everywhere and, on every
/// four-height window lying inside a ladder {h, h+1},
/// sigma_i + sigma_{i+1} >= v(h). Malformed structure (wrong lengths,
/// r_0 != 1, step != +-1, height out of range) throws std::domain_error --
/// that is distinct from a well-formed but inadmissible path.
AdmissibilityReport path_admissible(const ModelParams& m, const RiggedPath& P);

/// Degree of an admissible path:
/// L*Delta_{2,1} + sum_i (L-i) w(r_{i+1},r_i,r_{i-1}) + sum_i (L-i) sigma_i.
/// Throws std::domain_error when the path is inadmissible.
ExactRational path_degree(const ModelParams& m, const RiggedPath& P);

/// Same formula without the admissibility gate (structure is still
/// validated); used for tracing and for failure reporting.
ExactRational path_degree_unchecked(const ModelParams& m, const RiggedPath& P);

/// Minimum degree over all admissible paths of length L ending at height r,
/// or nullopt when no such path exists (wrong parity, or r unreachable).
std::optional<ExactRational> min_degree(const ModelParams& m, long long L, long long r);

/// All admissible paths of length L ending at height r with degree
/// <= max_degree, sorted lexicographically by height sequence then rigging
/// (both read in ascending subscript order). Exhaustive: pruning uses an
/// exact minimal-completion table. Requires max_degree >= 0.
std::vector<RiggedPath> enumerate_paths(const ModelParams& m, long long L, long long r,
                                        const ExactRational& max_degree);

/// Graded generating series sum of q^{d(P)} over the set above, truncated
/// at N. Empty index sets (wrong parity, unreachable r, N < 0) give the
/// zero series with bound N.
QSeries char_paths(const ModelParams& m, long long L, long long r, const ExactRational& N);

/// The exponent list of an admissible path: n_1 = Delta_{2,1} + sigma_0,
/// n_{i+1} = n_i + w(r_{i+1},r_i,r_{i-1}) + sigma_i.
MonomialExponents exponents_from_path(const ModelParams& m, const RiggedPath& P);

/// Inverse of exponents_from_path. Rejects exponent lists that fall off the
/// height-dependent lattice or violate one of the admissibility conditions,
/// naming the violated condition in the error: the base bound on n_1, the
/// weight gap between consecutive exponents, or a rigging-window constraint.
RiggedPath path_from_exponents(const ModelParams& m, const MonomialExponents& M);

/// p = 3 admissibility in exponent form: n_1 >= (p'-2)/4, steps
/// n_{i+1} - n_i >= 3 - p'/2, window gaps n_{i+2} - n_i >= 1. Agrees with
/// the generic admissibility of the corresponding path. Requires p' > 3
/// coprime to 3, the forced alternating height sequence 1,2,1,2,..., and
/// exponents on its quarter-integer lattice.
bool p3_admissible(long long pprime, const MonomialExponents& M);

/// p = 3 partition-shape admissibility: given lam = (lam_L,...,lam_1) in
/// displayed descending order, true iff every part is >= 1, the parts are
/// weakly decreasing, and lam drops by at least p'-2 over every second
/// index. Requires p' > 3 coprime to 3.
bool w3_monomial_admissible(long long pprime, const std::vector<long long>& lam);

/// Text format r_L,...,r_0;s_{L-1},...,s_0 (the empty path prints "1;").
std::string path_to_text(const RiggedPath& P);

/// Parses the text format; throws std::invalid_argument on malformed input.
RiggedPath path_from_text(const std::string& s);

/// JSON object {"r":[r_L,...,r_0],"sigma":[s_{L-1},...,s_0]}.
std::string path_to_json(const RiggedPath& P);

}  // namespace virapath

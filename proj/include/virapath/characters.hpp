#pragma once

// Character formulas and q-series identities: the alternating theta-sum
// form, the positive occupation-number form with its quadratic form and
// finite binomial kernel, length-graded partial sums, the two level-lowering
// recurrences, and the auxiliary multi-sum identities.

#include "virapath/path_comb.hpp"

namespace virapath {

/// The quadratic-plus-linear exponent form in k occupation numbers
/// (m_0,...,m_{k-1}):
///   (k-1)/4 m_0^2 + sum_j (k-j) m_j^2 + sum_j (k-j) m_0 m_j
///   + 2 sum_{j<j'} (k-j') m_j m_{j'} + (k-1)/2 m_0 + sum_j (k-j) m_j.
/// Stored as an explicit coefficient table; evaluation is exact.
struct QForm {
    long long k = 1;
    std::vector<std::vector<ExactRational>> quad;  // quad[i][j], i <= j
    std::vector<ExactRational> lin;

    static QForm standard(long long k);
    ExactRational eval(const std::vector<long long>& m) const;
};

/// Convenience wrapper: builds the standard form of rank k and evaluates.
/// Requires k >= 1 and m of length k.
ExactRational q_form_eval(long long k, const std::vector<long long>& m);

/// Character of the (r, s) field as the alternating theta sum divided by
/// the Euler product, truncated at N; the lattice sum is cut off once both
/// exponent families provably exceed the bound.
QSeries char_bosonic(const ModelParams& m, long long r, long long s, const ExactRational& N);

/// The finite alternating Gaussian-binomial kernel
///   q^{(m^2-(r-1)^2)/4} sum_n q^{p*pbar*n^2 + pbar*n*r}
///       ([m ; (m-r+1)/2 - p n] - [m ; (m+r+1)/2 + p n]),
/// an exact polynomial. Vanishes when m and r-1 have different parity
/// (the binomial slots would be half-integers). Requires m >= 0, pbar > 0.
QSeries kostka_poly(long long p, long long pbar, long long mm, long long r);

/// s = 1 character as the positive sum over occupation numbers
/// m_0,...,m_{k-1} >= 0 with m_0 = r-1 (mod 2), k = integer part of t,
/// truncated at N. The sum is cut off by occupation shells
/// L = m_0 + 2(m_1+...+m_{k-1}) using a proven lower bound L^2/4 - const
/// on each shell's leading exponent.
QSeries char_fermionic(const ModelParams& m, long long r, const ExactRational& N);

/// Single occupation shell of char_fermionic: the partial character graded
/// by L. The zero series (bound N) when L and r-1 have different parity.
QSeries char_partial(const ModelParams& m, long long r, long long L, const ExactRational& N);

/// Outcome of a truncated identity check.
struct VerifyResult {
    bool ok = false;
    std::optional<QSeries::Diff> diff;  // first mismatch when !ok
    std::string detail;
    bool l_cap_hit = false;  // the length cap bound the sum before N did
};

/// Checks the partial-character recurrence
///   chi_{r,1;L}(p,p') = sum_m q^{L^2/4 + L/2} / (q)_m * chi_{r,1;L-2m}(p,p'-p)
/// up to N. Requires p' > 2p so the reduced pair is itself a valid model.
VerifyResult verify_char_recurrence(const ModelParams& m, long long r, long long L,
                                    const ExactRational& N);

/// Same recurrence with both sides replaced by graded path series at levels
/// t and t-1. Requires p' > 2p.
VerifyResult verify_path_recurrence(const ModelParams& m, long long r, long long L,
                                    const ExactRational& N);

/// Checks sum_L (graded path series) = char_bosonic up to N. The L-sum
/// stops after the minimum degree exceeds N for two consecutive lengths of
/// each parity; if the hard cap l_cap binds first, l_cap_hit is set and the
/// comparison is not trusted.
VerifyResult verify_main_theorem(const ModelParams& m, long long r, const ExactRational& N,
                                 long long l_cap = 64);

/// The auxiliary multi-sum
///   F_k(mu) = sum_{N_0..N_{k-1}>=0} q^{sum N_j^2 + mu N_0 + (mu+1)(N_1+..+N_{k-1})}
///             / ((q)_{N_0+mu}(q)_{N_0}(q)_{N_1-N_0}...(q)_{N_{k-1}-N_{k-2}})
/// truncated at N, with 1/(q)_n = 0 for n < 0. Requires k >= 1.
QSeries f_k_series(long long k, long long mu, const ExactRational& N);

/// Checks the (l+1)-fold sum representation of 1/(q)_infinity:
///   sum q^{sum N_j^2 + mu sum N_j} / ((q)_{N_0+mu}(q)_{N_0}(q)_{N_1-N_0}...)
/// against the partition series, up to N. Requires l >= 0; any integer mu.
VerifyResult verify_gauss_identity(long long l, long long mu, const ExactRational& N);

/// Checks F_k(mu-1) - q^mu F_k(-mu-1) = (1 - q^mu)/(q)_infinity up to N.
VerifyResult verify_fk_identity(long long k, long long mu, const ExactRational& N);

}  // namespace virapath

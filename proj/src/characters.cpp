#include "virapath/characters.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>

namespace virapath {

namespace {

std::string model_tag(const ModelParams& m) {
    return "(" + std::to_string(m.p()) + "," + std::to_string(m.pprime()) + ")";
}

VerifyResult compare_series(const QSeries& lhs, const QSeries& rhs, const ExactRational& N,
                            const std::string& label) {
    VerifyResult res;
    auto d = QSeries::first_diff(lhs, rhs, N);
    res.ok = !d.has_value();
    res.diff = d;
    if (d) {
        res.detail = label + ": first difference at q^" + rational_to_string(d->exponent) +
                     ": " + d->lhs.str() + " vs " + d->rhs.str();
    } else {
        res.detail = label + ": equal up to q^" + rational_to_string(N);
    }
    return res;
}

}  // namespace

QForm QForm::standard(long long k) {
    if (k < 1) throw std::domain_error("QForm: k must be >= 1");
    QForm f;
    f.k = k;
    const auto n = static_cast<std::size_t>(k);
    f.quad.assign(n, std::vector<ExactRational>(n, ExactRational(0)));
    f.lin.assign(n, ExactRational(0));
    f.quad[0][0] = ExactRational(k - 1, 4);
    f.lin[0] = ExactRational(k - 1, 2);
    for (long long j = 1; j < k; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        f.quad[uj][uj] = ExactRational(k - j);
        f.quad[0][uj] = ExactRational(k - j);
        f.lin[uj] = ExactRational(k - j);
        for (long long j2 = j + 1; j2 < k; ++j2)
            f.quad[uj][static_cast<std::size_t>(j2)] = ExactRational(2 * (k - j2));
    }
    return f;
}

ExactRational QForm::eval(const std::vector<long long>& m) const {
    if (m.size() != static_cast<std::size_t>(k))
        throw std::domain_error("QForm: argument length does not match k");
    ExactRational out(0);
    for (std::size_t i = 0; i < m.size(); ++i) {
        out += lin[i] * m[i];
        for (std::size_t j = i; j < m.size(); ++j) out += quad[i][j] * m[i] * m[j];
    }
    return out;
}

ExactRational q_form_eval(long long k, const std::vector<long long>& m) {
    return QForm::standard(k).eval(m);
}

QSeries char_bosonic(const ModelParams& m, long long r, long long s, const ExactRational& N) {
    const ExactRational delta = conformal_dim(m, r, s);  // validates (r, s)
    const ExactRational B = N - delta;
    if (B < 0) return QSeries(TruncBound(N));

    const long long p = m.p(), pp = m.pprime();
    const long long a = p * pp;
    const long long b = pp * r - p * s;
    const long long c = pp * r + p * s;
    const long long off = r * s;

    // Both exponent families are >= a n^2 - C|n|, so every lattice point
    // beyond the first R with a R^2 - C R > B is negligible.
    const long long C = std::max(std::llabs(b), c) + off;
    long long R = 0;
    while (ExactRational(a) * R * R - ExactRational(C) * R <= B) ++R;

    QSeries theta{TruncBound(B)};
    for (long long n = -R; n <= R; ++n) {
        theta.add_term(ExactRational(a * n * n + b * n), BigInt(1));
        theta.add_term(ExactRational(a * n * n + c * n + off), BigInt(-1));
    }
    return (theta * euler_inverse(B)).shifted(delta);
}

QSeries kostka_poly(long long p, long long pbar, long long mm, long long r) {
    if (p < 1) throw std::domain_error("kostka_poly: p must be >= 1");
    if (pbar < 1) throw std::domain_error("kostka_poly: pbar must be >= 1");
    if (mm < 0) throw std::domain_error("kostka_poly: m must be >= 0");
    if (r < 1) throw std::domain_error("kostka_poly: r must be >= 1");

    QSeries out;  // exact polynomial
    if (((mm - r + 1) % 2 + 2) % 2 != 0) return out;  // half-integer slots

    const long long nr = std::llabs(mm) + std::llabs(r) + 2;  // generous lattice window
    for (long long n = -nr; n <= nr; ++n) {
        const long long j1 = (mm - r + 1) / 2 - p * n;
        const long long j2 = (mm + r + 1) / 2 + p * n;
        QSeries diff = gauss_binom(mm, j1) - gauss_binom(mm, j2);
        if (diff.is_zero()) continue;
        out += diff.shifted(ExactRational(p * pbar * n * n + pbar * n * r));
    }
    return out.shifted(ExactRational(mm * mm - (r - 1) * (r - 1), 4));
}

namespace {

// One term of the occupation-number sum, complete up to exponent B.
void fermionic_term(const ModelParams& m, long long r, const QForm& form, long long pbar,
                    const ExactRational& eshift, const std::vector<long long>& occ,
                    const ExactRational& B, QSeries& acc) {
    QSeries kern = kostka_poly(m.p(), pbar, occ[0], r);
    if (kern.is_zero()) return;
    const ExactRational e0 = form.eval(occ) + eshift;
    QSeries term = kern.shifted(e0);
    auto val = term.valuation();
    if (val && *val < 0)
        throw std::logic_error("occupation-number sum produced a negative leading exponent");
    for (long long x : occ) term = term * inv_poch(x, B);
    acc += term;
}

void fermionic_compose(const ModelParams& m, long long r, const QForm& form, long long pbar,
                       const ExactRational& eshift, std::vector<long long>& occ,
                       std::size_t j, long long left, const ExactRational& B, QSeries& acc) {
    if (j + 1 == occ.size()) {
        occ[j] = left;
        fermionic_term(m, r, form, pbar, eshift, occ, B, acc);
        return;
    }
    for (long long v = 0; v <= left; ++v) {
        occ[j] = v;
        fermionic_compose(m, r, form, pbar, eshift, occ, j + 1, left - v, B, acc);
    }
}

// Contribution of the shell m_0 + 2(m_1+...+m_{k-1}) = L, complete up to B.
QSeries fermionic_shell(const ModelParams& m, long long r, long long L, const ExactRational& B) {
    QSeries acc{TruncBound(B)};
    if (L < 0 || (L - (r - 1)) % 2 != 0) return acc;
    const long long k = m.k();
    const long long pbar = m.pprime() - k * m.p();
    const QForm form = QForm::standard(k);
    const ExactRational eshift(-(k - 1) * (r * r - 1), 4);
    std::vector<long long> occ(static_cast<std::size_t>(k), 0);
    for (long long M = 0; 2 * M <= L; ++M) {
        occ[0] = L - 2 * M;
        if (k == 1) {
            if (M == 0) fermionic_term(m, r, form, pbar, eshift, occ, B, acc);
        } else {
            fermionic_compose(m, r, form, pbar, eshift, occ, 1, M, B, acc);
        }
    }
    return acc;
}

void check_r(const ModelParams& m, long long r, const char* who) {
    if (r < 1 || r > m.p() - 1)
        throw std::domain_error(std::string(who) + ": r must lie in [1, p-1]");
}

}  // namespace

QSeries char_fermionic(const ModelParams& m, long long r, const ExactRational& N) {
    check_r(m, r, "char_fermionic");
    const ExactRational delta = conformal_dim(m, r, 1);
    const ExactRational B = N - delta;
    QSeries acc{TruncBound(B)};
    const long long k = m.k();
    // Every term of shell L has exponent >= L^2/4 - const_off.
    const ExactRational const_off =
        ExactRational((r - 1) * (r - 1), 4) + ExactRational((k - 1) * (r * r - 1), 4);
    for (long long L = (r - 1) % 2;; L += 2) {
        if (ExactRational(L * L, 4) - const_off > B) break;
        acc += fermionic_shell(m, r, L, B);
    }
    return acc.shifted(delta);
}

QSeries char_partial(const ModelParams& m, long long r, long long L, const ExactRational& N) {
    check_r(m, r, "char_partial");
    if (L < 0) throw std::domain_error("char_partial: L must be >= 0");
    const ExactRational delta = conformal_dim(m, r, 1);
    const ExactRational B = N - delta;
    if (B < 0) return QSeries(TruncBound(N));
    return fermionic_shell(m, r, L, B).shifted(delta);
}

namespace {

ModelParams reduced_model(const ModelParams& m, const char* who) {
    if (m.pprime() <= 2 * m.p())
        throw std::domain_error(std::string(who) + ": the reduced pair (p, p'-p) needs p' > 2p");
    return ModelParams(m.p(), m.pprime() - m.p());
}

// sum_m q^{L^2/4 + L/2} / (q)_m * base(L - 2m), where base(L2) is one of the
// two length-graded series at the reduced level.
template <typename Base>
QSeries recurrence_rhs(long long L, const ExactRational& N, Base&& base) {
    const ExactRational E = ExactRational(L * L, 4) + ExactRational(L, 2);
    const ExactRational B = N - E;
    QSeries rhs{TruncBound(N)};
    if (B < 0) return rhs;
    for (long long mm = 0; 2 * mm <= L; ++mm)
        rhs += (inv_poch(mm, B) * base(L - 2 * mm, B)).shifted(E);
    return rhs;
}

}  // namespace

VerifyResult verify_char_recurrence(const ModelParams& m, long long r, long long L,
                                    const ExactRational& N) {
    check_r(m, r, "verify_char_recurrence");
    if (L < 0) throw std::domain_error("verify_char_recurrence: L must be >= 0");
    const ModelParams red = reduced_model(m, "verify_char_recurrence");
    QSeries lhs = char_partial(m, r, L, N);
    QSeries rhs = recurrence_rhs(L, N, [&](long long L2, const ExactRational& B) {
        return char_partial(red, r, L2, B);
    });
    return compare_series(lhs, rhs, N,
                          "char recurrence " + model_tag(m) + " r=" + std::to_string(r) +
                              " L=" + std::to_string(L));
}

VerifyResult verify_path_recurrence(const ModelParams& m, long long r, long long L,
                                    const ExactRational& N) {
    check_r(m, r, "verify_path_recurrence");
    if (L < 0) throw std::domain_error("verify_path_recurrence: L must be >= 0");
    const ModelParams red = reduced_model(m, "verify_path_recurrence");
    QSeries lhs = char_paths(m, L, r, N);
    QSeries rhs = recurrence_rhs(L, N, [&](long long L2, const ExactRational& B) {
        return char_paths(red, L2, r, B);
    });
    return compare_series(lhs, rhs, N,
                          "path recurrence " + model_tag(m) + " r=" + std::to_string(r) +
                              " L=" + std::to_string(L));
}

VerifyResult verify_main_theorem(const ModelParams& m, long long r, const ExactRational& N,
                                 long long l_cap) {
    check_r(m, r, "verify_main_theorem");
    if (l_cap < 0) throw std::domain_error("verify_main_theorem: l_cap must be >= 0");
    QSeries lhs{TruncBound(N)};
    long long streak[2] = {0, 0};  // consecutive dead lengths, per parity
    bool settled = false;
    for (long long L = 0; L <= l_cap; ++L) {
        auto md = min_degree(m, L, r);
        if (md && *md <= N) {
            lhs += char_paths(m, L, r, N);
            streak[L % 2] = 0;
        } else {
            ++streak[L % 2];
        }
        if (streak[0] >= 2 && streak[1] >= 2) {
            settled = true;
            break;
        }
    }
    const std::string label =
        "path sum vs character " + model_tag(m) + " r=" + std::to_string(r);
    if (!settled) {
        VerifyResult res;
        res.ok = false;
        res.l_cap_hit = true;
        res.detail = label + ": length cap " + std::to_string(l_cap) +
                     " exhausted before the tail provably cleared q^" + rational_to_string(N);
        return res;
    }
    QSeries rhs = char_bosonic(m, r, 1, N);
    return compare_series(lhs, rhs, N, label);
}

namespace {

// Ascending occupation chains n_{j-1} <= n_j <= cap; entries below lo0 or
// with negative differences contribute nothing, so they are skipped.
template <typename Emit>
void chain_rec(std::vector<long long>& n, std::size_t j, long long lo0, long long cap,
               Emit&& emit) {
    if (j == n.size()) {
        emit(n);
        return;
    }
    const long long lo = (j == 0) ? lo0 : n[j - 1];
    for (long long v = lo; v <= cap; ++v) {
        n[j] = v;
        chain_rec(n, j + 1, lo0, cap, emit);
    }
}

QSeries chain_denominator(const std::vector<long long>& n, long long mu,
                          const ExactRational& B) {
    QSeries term = inv_poch(n[0] + mu, B) * inv_poch(n[0], B);
    for (std::size_t j = 1; j < n.size(); ++j) term = term * inv_poch(n[j] - n[j - 1], B);
    return term;
}

}  // namespace

QSeries f_k_series(long long k, long long mu, const ExactRational& N) {
    if (k < 1) throw std::domain_error("f_k_series: k must be >= 1");
    QSeries acc{TruncBound(N)};
    const long long C = std::max(std::llabs(mu), std::llabs(mu + 1));
    long long cap = 0;
    while (ExactRational(cap) * cap - ExactRational(C) * cap -
               ExactRational((k - 1) * C * C, 4) <=
           N)
        ++cap;
    std::vector<long long> n(static_cast<std::size_t>(k), 0);
    chain_rec(n, 0, std::max(0LL, -mu), cap, [&](const std::vector<long long>& v) {
        ExactRational e(mu * v[0]);
        for (long long x : v) e += ExactRational(x) * x;
        for (std::size_t j = 1; j < v.size(); ++j) e += ExactRational(mu + 1) * v[j];
        if (e > N) return;
        acc += chain_denominator(v, mu, N - e).shifted(e);
    });
    return acc;
}

VerifyResult verify_gauss_identity(long long l, long long mu, const ExactRational& N) {
    if (l < 0) throw std::domain_error("verify_gauss_identity: l must be >= 0");
    QSeries acc{TruncBound(N)};
    const long long C = std::llabs(mu);
    long long cap = 0;
    while (ExactRational(cap) * cap - ExactRational(C) * cap - ExactRational(l * C * C, 4) <= N)
        ++cap;
    std::vector<long long> n(static_cast<std::size_t>(l + 1), 0);
    chain_rec(n, 0, std::max(0LL, -mu), cap, [&](const std::vector<long long>& v) {
        ExactRational e(0);
        for (long long x : v) e += ExactRational(x) * x + ExactRational(mu) * x;
        if (e > N) return;
        acc += chain_denominator(v, mu, N - e).shifted(e);
    });
    return compare_series(euler_inverse(N), acc, N,
                          "partition multi-sum l=" + std::to_string(l) +
                              " mu=" + std::to_string(mu));
}

VerifyResult verify_fk_identity(long long k, long long mu, const ExactRational& N) {
    QSeries lhs =
        f_k_series(k, mu - 1, N) - f_k_series(k, -mu - 1, N - mu).shifted(ExactRational(mu));
    QSeries rhs = euler_inverse(N) - euler_inverse(N - mu).shifted(ExactRational(mu));
    return compare_series(lhs, rhs, N,
                          "telescoping pair k=" + std::to_string(k) +
                              " mu=" + std::to_string(mu));
}

}  // namespace virapath

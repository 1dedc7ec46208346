#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "virapath/characters.hpp"

#include <utility>
#include <vector>

using namespace virapath;

namespace {

ExactRational q(long long num, long long den = 1) { return ExactRational(num, den); }

QSeries make_series(const std::vector<std::pair<ExactRational, long long>>& terms,
                    std::optional<ExactRational> bound) {
    QSeries s = bound ? QSeries(TruncBound(*bound)) : QSeries();
    for (const auto& [e, c] : terms) s.add_term(e, BigInt(c));
    return s;
}

bool nonnegative_coeffs(const QSeries& s) {
    for (const auto& [e, c] : s.terms())
        if (c < 0) return false;
    return true;
}

// Exact representation equality: same bound, same term map.
bool same_series(const QSeries& a, const QSeries& b) {
    return a.trunc() == b.trunc() && a.terms() == b.terms();
}

}  // namespace

TEST_CASE("quadratic exponent form") {
    CHECK_THROWS_AS(QForm::standard(0), std::domain_error);
    CHECK_THROWS_AS(q_form_eval(2, {1, 2, 3}), std::domain_error);

    // Rank 1 is identically zero.
    for (long long x : {0LL, 1LL, 5LL, 9LL}) CHECK(q_form_eval(1, {x}) == 0);

    CHECK(q_form_eval(2, {0, 0}) == 0);
    CHECK(q_form_eval(2, {2, 1}) == 6);  // 1 + 1 + 2 + 1 + 1
    CHECK(q_form_eval(2, {1, 0}) == q(3, 4));
    CHECK(q_form_eval(3, {1, 1, 1}) == q(25, 2));
    CHECK(q_form_eval(3, {2, 0, 1}) == 8);

    // Unit vectors: e_0 gives 3(k-1)/4, e_j gives 2(k-j).
    for (long long k = 1; k <= 4; ++k) {
        std::vector<long long> v(static_cast<std::size_t>(k), 0);
        v[0] = 1;
        CHECK(q_form_eval(k, v) == q(3 * (k - 1), 4));
        for (long long j = 1; j < k; ++j) {
            std::vector<long long> w(static_cast<std::size_t>(k), 0);
            w[static_cast<std::size_t>(j)] = 1;
            CHECK(q_form_eval(k, w) == q(2 * (k - j)));
        }
    }

    const QForm f = QForm::standard(3);
    CHECK(f.k == 3);
    CHECK(f.quad[0][0] == q(1, 2));
    CHECK(f.quad[1][2] == q(2));
    CHECK(f.lin[0] == q(1));
}

TEST_CASE("finite alternating kernel") {
    CHECK_THROWS_AS(kostka_poly(0, 1, 2, 1), std::domain_error);
    CHECK_THROWS_AS(kostka_poly(3, 0, 2, 1), std::domain_error);
    CHECK_THROWS_AS(kostka_poly(3, 1, -1, 1), std::domain_error);
    CHECK_THROWS_AS(kostka_poly(3, 1, 2, 0), std::domain_error);

    // Exact polynomials, no truncation bound.
    QSeries k01 = kostka_poly(3, 1, 0, 1);
    CHECK_FALSE(k01.trunc().has_value());
    CHECK(same_series(k01, QSeries::one(std::nullopt)));

    for (long long pbar : {1LL, 2LL, 3LL}) {
        CHECK(same_series(kostka_poly(4, pbar, 0, 1), QSeries::one(std::nullopt)));
        CHECK(same_series(kostka_poly(4, pbar, 1, 2), QSeries::one(std::nullopt)));
    }

    // Parity mismatch between m and r-1 gives the zero polynomial.
    CHECK(kostka_poly(3, 1, 1, 1).is_zero());
    CHECK(kostka_poly(3, 2, 4, 2).is_zero());

    // Below the threshold m = r-1 the kernel vanishes (for r within [1, p-1];
    // beyond that range the lattice sum wraps around and can survive).
    for (long long p : {5LL, 7LL})
        for (long long r = 2; r < p; ++r)
            for (long long mm = 0; mm < r - 1; ++mm)
                CHECK(kostka_poly(p, 1, mm, r).is_zero());

    CHECK(same_series(kostka_poly(3, 1, 2, 1), QSeries::monomial(q(2), BigInt(1), std::nullopt)));
}

TEST_CASE("theta-sum character") {
    const ModelParams ising(3, 4);

    QSeries chi = char_bosonic(ising, 1, 1, q(4));
    QSeries expect = make_series({{q(0), 1}, {q(2), 1}, {q(3), 1}, {q(4), 2}}, q(4));
    CHECK(same_series(chi, expect));
    CHECK(chi.trunc().has_value());
    CHECK(*chi.trunc() == 4);

    CHECK(same_series(char_bosonic(ising, 1, 1, q(0)), make_series({{q(0), 1}}, q(0))));

    // A truncation below the leading exponent leaves only that exponent.
    CHECK(same_series(char_bosonic(ModelParams(3, 5), 2, 1, q(3, 4)),
                      make_series({{q(3, 4), 1}}, q(3, 4))));

    CHECK_THROWS_AS(char_bosonic(ising, 0, 1, q(4)), std::domain_error);
    CHECK_THROWS_AS(char_bosonic(ising, 1, 4, q(4)), std::domain_error);

    const std::vector<std::pair<long long, long long>> grid = {
        {3, 4}, {3, 5}, {4, 5}, {3, 7}, {5, 7}, {3, 8}, {4, 7}, {5, 8}, {4, 9}, {3, 10}};
    for (auto [p, pp] : grid) {
        ModelParams m(p, pp);
        for (long long r = 1; r < p; ++r)
            for (long long s = 1; s < pp; ++s) {
                const ExactRational N = conformal_dim(m, r, s) + 10;
                QSeries a = char_bosonic(m, r, s, N);
                CHECK(nonnegative_coeffs(a));
                // The (r, s) and (p-r, p'-s) labels describe the same field.
                QSeries b = char_bosonic(m, p - r, pp - s, N);
                CHECK(QSeries::equal_up_to(a, b, N));
            }
    }
}

TEST_CASE("occupation-number character matches theta sum") {
    QSeries f = char_fermionic(ModelParams(3, 7), 2, q(5, 4));
    CHECK(same_series(f, make_series({{q(5, 4), 1}}, q(5, 4))));

    const std::vector<std::pair<long long, long long>> grid = {
        {3, 4}, {3, 5}, {4, 5}, {3, 7}, {5, 7}, {3, 8}, {4, 7}, {5, 8}, {4, 9}, {3, 10}};
    for (auto [p, pp] : grid) {
        ModelParams m(p, pp);
        for (long long r = 1; r < p; ++r) {
            const ExactRational N = conformal_dim(m, r, 1) + 15;
            QSeries ferm = char_fermionic(m, r, N);
            QSeries bos = char_bosonic(m, r, 1, N);
            CHECK(nonnegative_coeffs(ferm));
            CHECK(QSeries::equal_up_to(ferm, bos, N));
        }
    }

    CHECK_THROWS_AS(char_fermionic(ModelParams(3, 7), 0, q(4)), std::domain_error);
    CHECK_THROWS_AS(char_fermionic(ModelParams(3, 7), 3, q(4)), std::domain_error);
}

TEST_CASE("length-graded partial characters") {
    const ModelParams m37(3, 7);

    // Wrong parity: identically zero at the requested bound.
    QSeries odd = char_partial(m37, 1, 3, q(10));
    CHECK(odd.is_zero());
    CHECK(*odd.trunc() == 10);

    CHECK(same_series(char_partial(m37, 1, 0, q(10)), make_series({{q(0), 1}}, q(10))));

    QSeries l2 = char_partial(m37, 1, 2, q(6));
    CHECK(same_series(l2,
          make_series({{q(2), 1}, {q(3), 1}, {q(4), 2}, {q(5), 2}, {q(6), 3}}, q(6))));

    CHECK_THROWS_AS(char_partial(m37, 1, -1, q(4)), std::domain_error);

    // Each shell reproduces the graded count of admissible paths.
    const std::vector<std::pair<long long, long long>> grid = {{3, 7}, {4, 9}, {3, 10}};
    for (auto [p, pp] : grid) {
        ModelParams m(p, pp);
        for (long long r = 1; r < p; ++r)
            for (long long L = 0; L <= 5; ++L) {
                const ExactRational N = conformal_dim(m, r, 1) + 8;
                CHECK(QSeries::equal_up_to(char_partial(m, r, L, N), char_paths(m, L, r, N),
                                           N));
            }
    }

    // Shells sum to the full character.
    {
        const ExactRational N = q(8);
        QSeries total{TruncBound(N)};
        for (long long L = 0; L <= 12; ++L) total += char_partial(m37, 1, L, N);
        CHECK(QSeries::equal_up_to(total, char_fermionic(m37, 1, N), N));
    }
    {
        const ModelParams m49(4, 9);
        const ExactRational N = conformal_dim(m49, 3, 1) + 6;
        QSeries total{TruncBound(N)};
        for (long long L = 0; L <= 12; ++L) total += char_partial(m49, 3, L, N);
        CHECK(QSeries::equal_up_to(total, char_fermionic(m49, 3, N), N));
    }

    // With k = 1 a shell is a single kernel term.
    {
        const ModelParams m35(3, 5);
        const ExactRational delta = conformal_dim(m35, 2, 1);
        const ExactRational N = delta + 8;
        for (long long L : {1LL, 3LL, 5LL}) {
            QSeries direct =
                (kostka_poly(3, 2, L, 2) * inv_poch(L, N - delta)).shifted(delta);
            CHECK(QSeries::equal_up_to(char_partial(m35, 2, L, N), direct, N));
        }
    }
}

TEST_CASE("partial-character recurrence") {
    CHECK(verify_char_recurrence(ModelParams(3, 7), 1, 2, q(10)).ok);
    CHECK(verify_char_recurrence(ModelParams(3, 7), 2, 1, q(10)).ok);
    CHECK(verify_char_recurrence(ModelParams(4, 9), 3, 4, q(12)).ok);

    // The reduced pair must itself be a valid model.
    CHECK_THROWS_AS(verify_char_recurrence(ModelParams(3, 5), 1, 2, q(10)),
                    std::domain_error);
    CHECK_THROWS_AS(verify_char_recurrence(ModelParams(3, 7), 0, 2, q(10)),
                    std::domain_error);
    CHECK_THROWS_AS(verify_char_recurrence(ModelParams(3, 7), 1, -2, q(10)),
                    std::domain_error);

    for (long long r = 1; r <= 2; ++r)
        for (long long L = 0; L <= 4; ++L) {
            auto res = verify_char_recurrence(ModelParams(3, 7), r, L,
                                              conformal_dim(ModelParams(3, 7), r, 1) + 8);
            CHECK(res.ok);
            CHECK_FALSE(res.diff.has_value());
            CHECK(res.detail.find("equal up to") != std::string::npos);
        }
}

TEST_CASE("path recurrence") {
    CHECK(verify_path_recurrence(ModelParams(3, 7), 1, 2, q(10)).ok);
    CHECK(verify_path_recurrence(ModelParams(4, 9), 2, 3, q(10)).ok);
    CHECK(verify_path_recurrence(ModelParams(5, 12), 2, 3, q(10)).ok);

    CHECK_THROWS_AS(verify_path_recurrence(ModelParams(4, 5), 1, 2, q(10)),
                    std::domain_error);

    for (long long r = 1; r <= 2; ++r)
        for (long long L = 0; L <= 4; ++L)
            CHECK(verify_path_recurrence(ModelParams(3, 8), r, L, q(9)).ok);
}

TEST_CASE("path sum equals character") {
    auto a = verify_main_theorem(ModelParams(3, 4), 1, q(20));
    CHECK(a.ok);
    CHECK_FALSE(a.l_cap_hit);
    CHECK(a.detail.find("equal up to") != std::string::npos);

    CHECK(verify_main_theorem(ModelParams(3, 7), 2, q(20)).ok);
    CHECK(verify_main_theorem(ModelParams(4, 5), 3, q(16)).ok);

    // A cap too small to clear the tail is reported distinctly.
    auto capped = verify_main_theorem(ModelParams(3, 4), 1, q(20), 2);
    CHECK_FALSE(capped.ok);
    CHECK(capped.l_cap_hit);
    CHECK_FALSE(capped.diff.has_value());

    CHECK_THROWS_AS(verify_main_theorem(ModelParams(3, 4), 3, q(10)), std::domain_error);
}

TEST_CASE("auxiliary multi-sum") {
    QSeries f10 = f_k_series(1, 0, q(4));
    CHECK(same_series(
        f10, make_series({{q(0), 1}, {q(1), 1}, {q(2), 2}, {q(3), 3}, {q(4), 5}}, q(4))));
    CHECK(QSeries::equal_up_to(f10, euler_inverse(q(4)), q(4)));

    // With mu <= -1 the N_0 = 0 summand vanishes (1/(q)_mu = 0). Here every
    // surviving chain of F_2(-1) has positive exponent, so no constant term.
    CHECK(f_k_series(2, -1, q(6)).coeff(q(0)) == 0);
    // F_1(-2) keeps a constant term, but only from the N_0 = 2 summand: the
    // unrestricted window starting at N_0 = 0 gives the same series.
    {
        const ExactRational N = q(6);
        QSeries naive{TruncBound(N)};
        for (long long n0 = 0; n0 <= 8; ++n0) {
            const ExactRational e = q(n0 * n0 - 2 * n0);
            if (e > N) continue;
            naive += (inv_poch(n0 - 2, N - e) * inv_poch(n0, N - e)).shifted(e);
        }
        CHECK(QSeries::equal_up_to(f_k_series(1, -2, N), naive, N));
        CHECK(f_k_series(1, -2, N).coeff(q(0)) == 1);
    }

    CHECK_THROWS_AS(f_k_series(0, 0, q(4)), std::domain_error);

    // Unpruned direct summation over a wide fixed window.
    {
        const ExactRational N = q(3);
        const long long mu = 1;
        QSeries naive{TruncBound(N)};
        for (long long n0 = 0; n0 <= 8; ++n0)
            for (long long n1 = 0; n1 <= 8; ++n1) {
                const ExactRational e =
                    q(n0 * n0 + n1 * n1) + q(mu * n0) + q((mu + 1) * n1);
                if (e > N) continue;
                QSeries term = inv_poch(n0 + mu, N - e) * inv_poch(n0, N - e) *
                               inv_poch(n1 - n0, N - e);
                naive += term.shifted(e);
            }
        CHECK(QSeries::equal_up_to(f_k_series(2, mu, N), naive, N));
    }
    {
        const ExactRational N = q(6);
        const long long mu = 0;
        QSeries naive{TruncBound(N)};
        for (long long n0 = 0; n0 <= 8; ++n0)
            for (long long n1 = 0; n1 <= 8; ++n1)
                for (long long n2 = 0; n2 <= 8; ++n2) {
                    const ExactRational e =
                        q(n0 * n0 + n1 * n1 + n2 * n2) + q(mu * n0) + q((mu + 1) * (n1 + n2));
                    if (e > N) continue;
                    QSeries term = inv_poch(n0 + mu, N - e) * inv_poch(n0, N - e) *
                                   inv_poch(n1 - n0, N - e) * inv_poch(n2 - n1, N - e);
                    naive += term.shifted(e);
                }
        CHECK(QSeries::equal_up_to(f_k_series(3, mu, N), naive, N));
    }
}

TEST_CASE("multi-sum partition identity") {
    CHECK(verify_gauss_identity(0, 0, q(10)).ok);
    CHECK(verify_gauss_identity(2, 3, q(12)).ok);
    CHECK(verify_gauss_identity(1, -2, q(10)).ok);
    CHECK_THROWS_AS(verify_gauss_identity(-1, 0, q(10)), std::domain_error);

    for (long long l = 0; l <= 2; ++l)
        for (long long mu = -2; mu <= 3; ++mu) {
            auto res = verify_gauss_identity(l, mu, q(10));
            CHECK(res.ok);
            CHECK_FALSE(res.l_cap_hit);
        }
}

TEST_CASE("telescoping multi-sum identity") {
    CHECK(verify_fk_identity(1, 1, q(10)).ok);
    CHECK(verify_fk_identity(2, 0, q(10)).ok);
    CHECK(verify_fk_identity(3, 2, q(8)).ok);
    CHECK(verify_fk_identity(2, -2, q(10)).ok);
    CHECK_THROWS_AS(verify_fk_identity(0, 1, q(8)), std::domain_error);

    for (long long k = 1; k <= 2; ++k)
        for (long long mu = -2; mu <= 2; ++mu) CHECK(verify_fk_identity(k, mu, q(8)).ok);
}

#include "virapath/exactq.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>
#include <vector>

namespace virapath {

BigInt rat_num(const ExactRational& x) { return boost::multiprecision::numerator(x); }
BigInt rat_den(const ExactRational& x) { return boost::multiprecision::denominator(x); }

bool rat_is_integer(const ExactRational& x) { return rat_den(x) == 1; }

BigInt rat_floor(const ExactRational& x) {
    BigInt n = rat_num(x), d = rat_den(x);
    BigInt q = n / d;                       // truncates toward zero
    if (n < 0 && q * d != n) --q;
    return q;
}

ExactRational parse_rational(const std::string& s) {
    auto is_int = [](const std::string& t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size()) return false;
        return std::all_of(t.begin() + static_cast<long>(i), t.end(),
                           [](unsigned char c) { return std::isdigit(c); });
    };
    const auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!is_int(num) || !is_int(den))
        throw std::invalid_argument("not a rational: '" + s + "'");
    BigInt d(den);
    if (d == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
    return ExactRational(BigInt(num), d);
}

std::string rational_to_string(const ExactRational& x) {
    if (rat_is_integer(x)) return rat_num(x).str();
    return rat_num(x).str() + "/" + rat_den(x).str();
}

std::string rational_to_fraction_string(const ExactRational& x) {
    return rat_num(x).str() + "/" + rat_den(x).str();
}

QSeries QSeries::one(TruncBound bound) {
    QSeries r(std::move(bound));
    r.add_term(0, 1);
    return r;
}

QSeries QSeries::monomial(const ExactRational& exponent, const BigInt& coeff,
                          TruncBound bound) {
    QSeries r(std::move(bound));
    r.add_term(exponent, coeff);
    return r;
}

std::optional<ExactRational> QSeries::valuation() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first;
}

std::optional<ExactRational> QSeries::valuation_lower_bound() const {
    if (!terms_.empty()) return terms_.begin()->first;
    return trunc_;  // all of [.., N] is zero; nullopt = exact zero = +infinity
}

BigInt QSeries::coeff(const ExactRational& e) const {
    if (trunc_ && e > *trunc_)
        throw std::logic_error("QSeries: coefficient at " + rational_to_string(e) +
                               " beyond truncation bound " + rational_to_string(*trunc_));
    auto it = terms_.find(e);
    return it == terms_.end() ? BigInt(0) : it->second;
}

void QSeries::add_term(const ExactRational& e, const BigInt& c) {
    if (c == 0) return;
    if (trunc_ && e > *trunc_) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

namespace {
// min of two bounds where nullopt means +infinity
TruncBound min_bound(const TruncBound& a, const TruncBound& b) {
    if (!a) return b;
    if (!b) return a;
    return *a < *b ? a : b;
}
}  // namespace

QSeries& QSeries::operator+=(const QSeries& o) {
    trunc_ = min_bound(trunc_, o.trunc_);
    if (trunc_) std::erase_if(terms_, [&](const auto& t) { return t.first > *trunc_; });
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) {
    trunc_ = min_bound(trunc_, o.trunc_);
    if (trunc_) std::erase_if(terms_, [&](const auto& t) { return t.first > *trunc_; });
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

QSeries QSeries::operator-() const {
    QSeries r(trunc_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
    // Sound bound: coefficients of the product are complete up to
    // min(N_a + val(b), N_b + val(a)); an empty operand contributes its own
    // bound as valuation floor, an exact operand no constraint at all.
    TruncBound bound;
    auto consider = [&bound](const TruncBound& n, const std::optional<ExactRational>& val) {
        if (!n || !val) return;
        ExactRational cand = *n + *val;
        if (!bound || cand < *bound) bound = cand;
    };
    consider(a.trunc_, b.valuation_lower_bound());
    consider(b.trunc_, a.valuation_lower_bound());
    QSeries r(bound);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            ExactRational e = ea + eb;
            if (bound && e > *bound) break;  // eb ascending
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

QSeries QSeries::shifted(const ExactRational& e) const {
    TruncBound bound = trunc_ ? TruncBound(*trunc_ + e) : std::nullopt;
    QSeries r(bound);
    for (const auto& [x, c] : terms_) r.terms_.emplace(x + e, c);
    return r;
}

QSeries QSeries::scaled(const BigInt& c) const {
    QSeries r(trunc_);
    if (c == 0) return r;
    for (const auto& [e, x] : terms_) r.terms_.emplace(e, x * c);
    return r;
}

QSeries QSeries::truncated(const ExactRational& N) const {
    QSeries r(min_bound(trunc_, TruncBound(N)));
    for (const auto& [e, c] : terms_) {
        if (e > N) break;
        r.terms_.emplace(e, c);
    }
    return r;
}

BigInt QSeries::eval_at_one() const {
    BigInt s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
}

std::string QSeries::to_text() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        BigInt a = c < 0 ? BigInt(-c) : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        const bool constant = (e == 0);
        if (constant) {
            os << a.str();
        } else {
            if (a != 1) os << a.str() << "*";
            if (e == 1)
                os << "q";
            else if (rat_is_integer(e))
                os << "q^" << rat_num(e).str();
            else
                os << "q^{" << rational_to_string(e) << "}";
        }
    }
    return os.str();
}

std::string QSeries::to_json() const {
    nlohmann::ordered_json j;
    if (trunc_)
        j["trunc"] = rational_to_fraction_string(*trunc_);
    else
        j["trunc"] = nullptr;
    j["terms"] = nlohmann::ordered_json::array();
    for (const auto& [e, c] : terms_)
        j["terms"].push_back({rational_to_fraction_string(e), c.str()});
    return j.dump();
}

namespace {
void require_bound(const QSeries& s, const ExactRational& N) {
    if (s.trunc() && *s.trunc() < N)
        throw std::logic_error("QSeries: comparison up to " + rational_to_string(N) +
                               " exceeds truncation bound " +
                               rational_to_string(*s.trunc()));
}
}  // namespace

bool QSeries::equal_up_to(const QSeries& a, const QSeries& b, const ExactRational& N) {
    return !first_diff(a, b, N).has_value();
}

std::optional<QSeries::Diff> QSeries::first_diff(const QSeries& a, const QSeries& b,
                                                 const ExactRational& N) {
    require_bound(a, N);
    require_bound(b, N);
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
        const bool ea_ok = ia != a.terms_.end() && !(ia->first > N);
        const bool eb_ok = ib != b.terms_.end() && !(ib->first > N);
        if (!ea_ok && !eb_ok) break;
        if (ea_ok && (!eb_ok || ia->first < ib->first)) {
            return Diff{ia->first, ia->second, 0};
        }
        if (eb_ok && (!ea_ok || ib->first < ia->first)) {
            return Diff{ib->first, 0, ib->second};
        }
        if (ia->second != ib->second)
            return Diff{ia->first, ia->second, ib->second};
        ++ia;
        ++ib;
    }
    return std::nullopt;
}

QSeries poch(long long n, const ExactRational& N) {
    if (n < 0) throw std::domain_error("poch: negative n");
    QSeries r = QSeries::one(N);
    for (long long j = 1; j <= n; ++j) {
        if (ExactRational(j) > N) break;  // further factors are invisible below N
        QSeries factor;                   // exact polynomial 1 - q^j
        factor.add_term(0, 1);
        factor.add_term(j, -1);
        r = r * factor;
    }
    return r;
}

namespace {
// Dense partition-count DP: coefficients of prod_{j=1}^{maxpart} 1/(1-q^j)
// up to exponent M.
std::vector<BigInt> bounded_partitions(long long maxpart, long long M) {
    std::vector<BigInt> c(static_cast<std::size_t>(M) + 1);
    c[0] = 1;
    for (long long j = 1; j <= std::min(maxpart, M); ++j)
        for (long long e = j; e <= M; ++e)
            c[static_cast<std::size_t>(e)] += c[static_cast<std::size_t>(e - j)];
    return c;
}

QSeries dense_to_series(const std::vector<BigInt>& c, TruncBound bound) {
    QSeries r(std::move(bound));
    for (std::size_t e = 0; e < c.size(); ++e)
        if (c[e] != 0) r.add_term(static_cast<long long>(e), c[e]);
    return r;
}
}  // namespace

QSeries inv_poch(long long n, const ExactRational& N) {
    if (n < 0) return QSeries::zero(N);  // convention 1/(q)_n = 0 for n < 0
    if (N < 0) return QSeries::zero(N);
    const long long M = rat_floor(N).convert_to<long long>();
    return dense_to_series(bounded_partitions(n, M), N);
}

QSeries euler_inverse(const ExactRational& N) {
    if (N < 0) return QSeries::zero(N);
    const long long M = rat_floor(N).convert_to<long long>();
    return dense_to_series(bounded_partitions(M, M), N);
}

QSeries gauss_binom(long long m, long long n) {
    if (n < 0 || m < 0 || n > m) return QSeries();  // exact zero
    n = std::min(n, m - n);  // symmetry, smaller column count
    // q-binomial recurrence [i over j] = q^j [i-1 over j] + [i-1 over j-1]
    // on dense coefficient vectors; row i holds [i over j] for j = 0..n.
    std::vector<std::vector<BigInt>> row(static_cast<std::size_t>(n) + 1);
    row[0] = {BigInt(1)};
    for (long long i = 1; i <= m; ++i) {
        std::vector<std::vector<BigInt>> next(static_cast<std::size_t>(n) + 1);
        next[0] = {BigInt(1)};
        for (long long j = 1; j <= std::min(i, n); ++j) {
            const auto& up = row[static_cast<std::size_t>(j)];        // [i-1, j]
            const auto& diag = row[static_cast<std::size_t>(j - 1)];  // [i-1, j-1]
            std::vector<BigInt> out(
                std::max(up.empty() ? 0 : up.size() + static_cast<std::size_t>(j),
                         diag.size()));
            if (!up.empty())
                for (std::size_t e = 0; e < up.size(); ++e)
                    out[e + static_cast<std::size_t>(j)] += up[e];
            for (std::size_t e = 0; e < diag.size(); ++e) out[e] += diag[e];
            next[static_cast<std::size_t>(j)] = std::move(out);
        }
        row = std::move(next);
    }
    return dense_to_series(row[static_cast<std::size_t>(n)], std::nullopt);
}

}  // namespace virapath

#pragma once

// Exact arithmetic kernel: arbitrary-precision rationals, truncated q-series
// on rational exponent grids, q-Pochhammer symbols and Gaussian binomials.
// No floating point anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace virapath {

using BigInt = boost::multiprecision::cpp_int;

/// Exact fraction, always in lowest terms with positive denominator.
using ExactRational = boost::multiprecision::cpp_rational;

BigInt rat_num(const ExactRational& x);
BigInt rat_den(const ExactRational& x);
bool rat_is_integer(const ExactRational& x);

/// floor(x) for exact rationals (rounds toward minus infinity).
BigInt rat_floor(const ExactRational& x);

/// Parse "a/b" or "a" (optional leading '-'). Throws std::invalid_argument.
ExactRational parse_rational(const std::string& s);

/// "a/b", or just "a" when the denominator is 1.
std::string rational_to_string(const ExactRational& x);

/// Always "a/b", keeping an explicit denominator ("2/1").
std::string rational_to_fraction_string(const ExactRational& x);

/// Integer extended with +infinity; models the sentinel rigging
/// sigma_L = infinity with the convention infinity +- 1 = infinity.
class ExtInt {
public:
    ExtInt() : finite_(true), value_(0) {}
    static ExtInt finite(long long v) { ExtInt e; e.finite_ = true; e.value_ = v; return e; }
    static ExtInt infinity() { ExtInt e; e.finite_ = false; e.value_ = 0; return e; }

    bool is_infinite() const { return !finite_; }
    long long value() const {
        if (!finite_) throw std::logic_error("ExtInt: value() of infinity");
        return value_;
    }

    ExtInt& operator+=(long long d) { if (finite_) value_ += d; return *this; }
    ExtInt& operator-=(long long d) { if (finite_) value_ -= d; return *this; }

    bool operator==(const ExtInt& o) const {
        return finite_ == o.finite_ && (!finite_ || value_ == o.value_);
    }
    bool operator>=(long long v) const { return !finite_ || value_ >= v; }
    bool operator<(long long v) const { return finite_ && value_ < v; }

private:
    bool finite_;
    long long value_;
};

/// Truncation bound of a series; std::nullopt means the series is exact
/// (a polynomial known completely, e.g. a Gaussian binomial).
using TruncBound = std::optional<ExactRational>;

/// Truncated formal q-series: finite map exponent -> coefficient plus a
/// truncation bound N. Terms with exponent > N are unrepresented and
/// undefined; all arithmetic keeps the weakest *sound* bound, and
/// comparisons are only ever "up to N" with an explicit N.
class QSeries {
public:
    QSeries() = default;                       // zero series, exact
    explicit QSeries(TruncBound bound) : trunc_(std::move(bound)) {}

    static QSeries zero(TruncBound bound) { return QSeries(std::move(bound)); }
    static QSeries one(TruncBound bound);
    static QSeries monomial(const ExactRational& exponent, const BigInt& coeff,
                            TruncBound bound);

    const TruncBound& trunc() const { return trunc_; }
    const std::map<ExactRational, BigInt>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Smallest stored exponent (nullopt for the zero series).
    std::optional<ExactRational> valuation() const;

    /// Sound lower bound for the valuation: min exponent, or the truncation
    /// bound itself when no term is stored (everything below it is zero).
    /// nullopt = plus infinity (exact zero series).
    std::optional<ExactRational> valuation_lower_bound() const;

    /// Coefficient at exponent e; throws std::logic_error when e lies
    /// beyond the truncation bound (the value would be undefined).
    BigInt coeff(const ExactRational& e) const;

    /// Add c*q^e; silently drops exponents beyond the bound, erases zeros.
    void add_term(const ExactRational& e, const BigInt& c);

    QSeries& operator+=(const QSeries& o);
    QSeries& operator-=(const QSeries& o);
    QSeries operator-() const;
    friend QSeries operator+(QSeries a, const QSeries& b) { a += b; return a; }
    friend QSeries operator-(QSeries a, const QSeries& b) { a -= b; return a; }
    friend QSeries operator*(const QSeries& a, const QSeries& b);

    /// Multiply by q^e (shifts exponents and the bound).
    QSeries shifted(const ExactRational& e) const;
    /// Multiply by an integer constant.
    QSeries scaled(const BigInt& c) const;
    /// Weakens the bound to min(current, N) and drops terms above it.
    QSeries truncated(const ExactRational& N) const;

    /// Sum of coefficients (the series evaluated at q=1).
    BigInt eval_at_one() const;

    std::string to_text() const;
    std::string to_json() const;

    /// Coefficient-wise comparison for all exponents <= N. Throws
    /// std::logic_error if either bound is insufficient to decide.
    static bool equal_up_to(const QSeries& a, const QSeries& b,
                            const ExactRational& N);

    struct Diff {
        ExactRational exponent;
        BigInt lhs;
        BigInt rhs;
    };
    /// Smallest exponent <= N where the coefficients differ.
    static std::optional<Diff> first_diff(const QSeries& a, const QSeries& b,
                                          const ExactRational& N);

private:
    std::map<ExactRational, BigInt> terms_;
    TruncBound trunc_;
};

/// (q)_n = prod_{j=1}^n (1-q^j), truncated at N. Requires n >= 0.
QSeries poch(long long n, const ExactRational& N);

/// 1/(q)_n as a power series truncated at N; the zero series for n < 0.
QSeries inv_poch(long long n, const ExactRational& N);

/// 1/(q)_infinity truncated at N: the partition generating function.
QSeries euler_inverse(const ExactRational& N);

/// Gaussian binomial [m over n] = (q)_m/((q)_n (q)_{m-n}) as an exact
/// polynomial; 0 when n < 0, n > m or m < 0.
QSeries gauss_binom(long long m, long long n);

}  // namespace virapath

#include "virapath/minimal_model.hpp"

#include <cstdlib>
#include <numeric>

namespace virapath {

namespace {

// floor(r * p'/p); exact because r*p' and p are positive and, for
// 1 <= r <= p-1 with gcd(p,p') = 1, rt is never an integer anyway.
long long floor_rt(long long p, long long pp, long long r) { return r * pp / p; }

ExactRational weight_raw(long long p, long long pp, long long a, long long b, long long c) {
    const ExactRational t(pp, p);
    if (a != c) return t / 2;  // straight step
    if (b == a + 1) {
        // peak at height a
        if (a == 1) return 3 - 3 * t / 2;  // boundary triple (1,2,1)
        return 2 - t / 2 + floor_rt(p, pp, a) - a * t;
    }
    // valley at height a
    if (a == p - 1) return 3 - 3 * t / 2;  // boundary triple (p-1,p-2,p-1)
    return 1 - t / 2 - floor_rt(p, pp, a) + a * t;
}

std::size_t windex(long long b, long long a, long long c) {
    return static_cast<std::size_t>(4 * b + (a > b ? 2 : 0) + (c > b ? 1 : 0));
}

}  // namespace

ModelParams::ModelParams(long long p, long long pprime) : p_(p), pprime_(pprime) {
    if (p < 3)
        throw std::domain_error("ModelParams: need p >= 3, got p=" + std::to_string(p));
    if (pprime <= p)
        throw std::domain_error("ModelParams: need p' > p, got (" + std::to_string(p) +
                                "," + std::to_string(pprime) + ")");
    if (std::gcd(p, pprime) != 1)
        throw std::domain_error("ModelParams: p and p' must be coprime, got (" +
                                std::to_string(p) + "," + std::to_string(pprime) + ")");

    t_ = ExactRational(pprime, p);
    k_ = pprime / p;
    delta21_ = ExactRational((2 * pprime - p) * (2 * pprime - p) -
                                 (pprime - p) * (pprime - p),
                             4 * p * pprime);

    wcache_.assign(static_cast<std::size_t>(4 * p), ExactRational(0));
    for (long long b = 1; b <= p - 1; ++b)
        for (long long a : {b - 1, b + 1})
            for (long long c : {b - 1, b + 1})
                if (a >= 1 && a <= p - 1 && c >= 1 && c <= p - 1)
                    wcache_[windex(b, a, c)] = weight_raw(p, pprime, a, b, c);

    v_.reserve(static_cast<std::size_t>(p - 2));
    for (long long r = 1; r <= p - 2; ++r) {
        const ExactRational x = 1 - weight_raw(p, pprime, r, r + 1, r) -
                                weight_raw(p, pprime, r + 1, r, r + 1);
        if (!rat_is_integer(x))
            throw std::logic_error("v(" + std::to_string(r) + ") is not an integer");
        const long long v = rat_num(x).convert_to<long long>();
        long long closed;
        if (p == 3)
            closed = pprime - 5;
        else if (r == 1 || r == p - 2)
            closed = 2 * pprime / p - 3;
        else
            closed = floor_rt(p, pprime, r + 1) - floor_rt(p, pprime, r) - 2;
        if (v != closed)
            throw std::logic_error("v(" + std::to_string(r) +
                                   ") disagrees with its closed form");
        v_.push_back(v);
        vmax_ = std::max(vmax_, v);
    }
}

ExactRational conformal_dim(const ModelParams& m, long long r, long long s) {
    if (r < 1 || r > m.p() - 1 || s < 1 || s > m.pprime() - 1)
        throw std::domain_error("conformal_dim: (r,s)=(" + std::to_string(r) + "," +
                                std::to_string(s) + ") out of range for (p,p')=(" +
                                std::to_string(m.p()) + "," + std::to_string(m.pprime()) +
                                ")");
    const long long a = r * m.pprime() - s * m.p();
    const long long b = m.pprime() - m.p();
    return ExactRational(a * a - b * b, 4 * m.p() * m.pprime());
}

ExactRational weight_w(const ModelParams& m, long long a, long long b, long long c) {
    const long long p = m.p_;
    if (a < 1 || a > p - 1 || b < 1 || b > p - 1 || c < 1 || c > p - 1 ||
        std::llabs(a - b) != 1 || std::llabs(b - c) != 1)
        throw std::domain_error("weight_w: invalid triple (" + std::to_string(a) + "," +
                                std::to_string(b) + "," + std::to_string(c) +
                                ") for p=" + std::to_string(p));
    return m.wcache_[windex(b, a, c)];
}

long long v_int(const ModelParams& m, long long r) {
    if (r < 1 || r > m.p_ - 2)
        throw std::domain_error("v_int: r=" + std::to_string(r) +
                                " out of range for p=" + std::to_string(m.p_));
    return m.v_[static_cast<std::size_t>(r - 1)];
}

}  // namespace virapath

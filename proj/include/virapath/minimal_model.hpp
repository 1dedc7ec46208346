#pragma once

// Model parameters (p, p') and the closed-form constants attached to them:
// conformal dimensions, local weights of path corners, and the integer
// interaction constants v(r).

#include "virapath/exactq.hpp"

#include <vector>

namespace virapath {

/// Validated coprime pair (p, p') with p >= 3 and p' > p, so t = p'/p > 1.
/// Immutable after construction; all derived tables are cached up front.
class ModelParams {
public:
    /// Throws std::domain_error when the pair is out of range or not coprime.
    ModelParams(long long p, long long pprime);

    long long p() const { return p_; }
    long long pprime() const { return pprime_; }
    const ExactRational& t() const { return t_; }

    /// Integer part of t (t is never an integer here).
    long long k() const { return k_; }

    /// Dimension of the (2,1) field, (3t-2)/4: the smallest admissible
    /// monomial exponent.
    const ExactRational& delta21() const { return delta21_; }

    /// max(0, max_r v(r)); used to clip rigging state in enumeration.
    long long vmax() const { return vmax_; }

private:
    friend ExactRational weight_w(const ModelParams&, long long, long long, long long);
    friend long long v_int(const ModelParams&, long long);

    long long p_ = 0;
    long long pprime_ = 0;
    ExactRational t_;
    long long k_ = 0;
    ExactRational delta21_;
    std::vector<ExactRational> wcache_;  // all valid corner triples
    std::vector<long long> v_;           // v(r), r = 1..p-2
    long long vmax_ = 0;
};

/// Exact conformal dimension of the (r, s) field,
/// ((rt-s)^2 - (t-1)^2) / (4t). Requires 1 <= r <= p-1, 1 <= s <= p'-1.
ExactRational conformal_dim(const ModelParams& m, long long r, long long s);

/// Local weight of the corner (a, b, c) of a path, where consecutive heights
/// differ by one. Straight steps weigh t/2; peaks and valleys carry a
/// floor-corrected weight, with a special value at the two boundary triples
/// (1,2,1) and (p-1,p-2,p-1). Requires 1 <= a,b,c <= p-1 and |a-b|=|b-c|=1.
ExactRational weight_w(const ModelParams& m, long long a, long long b, long long c);

/// The integer v(r) = 1 - w(r,r+1,r) - w(r+1,r,r+1) for 1 <= r <= p-2.
/// Construction verifies integrality and agreement with the closed forms
/// (p'-5 at p=3; floor(2t)-3 at the ends; floor((r+1)t)-floor(rt)-2 inside);
/// a mismatch is a fatal internal-consistency error.
long long v_int(const ModelParams& m, long long r);

}  // namespace virapath

#include "virapath/path_comb.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <utility>

namespace virapath {

namespace {

void check_structure(const ModelParams& m, const RiggedPath& P) {
    if (P.r.empty())
        throw std::domain_error("path: empty height sequence (the empty path still has r_0 = 1)");
    if (P.sigma.size() + 1 != P.r.size())
        throw std::domain_error("path: " + std::to_string(P.r.size()) + " heights need " +
                                std::to_string(P.r.size() - 1) + " riggings, got " +
                                std::to_string(P.sigma.size()));
    if (P.r.front() != 1)
        throw std::domain_error("path: r_0 = " + std::to_string(P.r.front()) + ", must be 1");
    for (std::size_t i = 0; i < P.r.size(); ++i)
        if (P.r[i] < 1 || P.r[i] > m.p() - 1)
            throw std::domain_error("path: height r_" + std::to_string(i) + " = " +
                                    std::to_string(P.r[i]) + " outside [1, p-1]");
    for (std::size_t i = 0; i + 1 < P.r.size(); ++i)
        if (std::llabs(P.r[i + 1] - P.r[i]) != 1)
            throw std::domain_error("path: step r_" + std::to_string(i + 1) + " - r_" +
                                    std::to_string(i) + " is not +-1");
}

// Base height h when the four consecutive heights lie inside a two-value
// ladder {h, h+1}; -1 otherwise. (All four equal is impossible: steps are
// +-1.)
long long ladder_base(long long a, long long b, long long c, long long d) {
    const long long lo = std::min(std::min(a, b), std::min(c, d));
    const long long hi = std::max(std::max(a, b), std::max(c, d));
    return hi - lo == 1 ? lo : -1;
}

}  // namespace

AdmissibilityReport path_admissible(const ModelParams& m, const RiggedPath& P) {
    check_structure(m, P);
    const long long L = P.length();
    for (long long i = 0; i < L; ++i)
        if (P.sigma[i] < 0)
            return {false, "sigma_" + std::to_string(i) + " = " +
                               std::to_string(P.sigma[i]) + " < 0"};
    for (long long i = 1; i + 1 < L; ++i) {
        const long long h = ladder_base(P.r[i - 1], P.r[i], P.r[i + 1], P.r[i + 2]);
        if (h < 0) continue;
        const long long need = v_int(m, h);
        if (P.sigma[i] + P.sigma[i + 1] < need)
            return {false, "sigma_" + std::to_string(i) + " + sigma_" +
                               std::to_string(i + 1) + " = " +
                               std::to_string(P.sigma[i] + P.sigma[i + 1]) + " < v(" +
                               std::to_string(h) + ") = " + std::to_string(need) +
                               " (window at i=" + std::to_string(i) + ")"};
    }
    return {};
}

ExactRational path_degree_unchecked(const ModelParams& m, const RiggedPath& P) {
    check_structure(m, P);
    const long long L = P.length();
    ExactRational d = L * m.delta21();
    for (long long i = 1; i <= L - 1; ++i)
        d += (L - i) * weight_w(m, P.r[i + 1], P.r[i], P.r[i - 1]);
    for (long long i = 0; i <= L - 1; ++i) d += (L - i) * P.sigma[i];
    return d;
}

ExactRational path_degree(const ModelParams& m, const RiggedPath& P) {
    const auto rep = path_admissible(m, P);
    if (!rep.ok) throw std::domain_error("path_degree: inadmissible path: " + rep.violation);
    return path_degree_unchecked(m, P);
}

namespace {

// Exact minimum of the remaining degree contribution from step i onward,
// indexed by (i, r_{i-2}, r_{i-1}, r_i, clipped sigma_{i-1}). Height slots
// that do not exist yet hold 0; the sigma slot is clipped to
// vclip = max(0, max_r v(r)) -- at or above the clip every window
// constraint on (sigma_{i-1}, sigma_i) is satisfied regardless of partner,
// and raising a sigma only ever costs degree, so the clipped table is exact.
class Completion {
public:
    Completion(const ModelParams& m, long long L, long long rtarget)
        : m_(m), L_(L), p_(m.p()), vclip_(m.vmax()),
          tab_(static_cast<std::size_t>((L + 1) * p_ * p_ * p_ * (vclip_ + 1))) {
        for (long long a = 0; a < p_; ++a)
            for (long long b = 0; b < p_; ++b)
                for (long long c = 1; c <= p_ - 1; ++c)
                    for (long long s = 0; s <= vclip_; ++s)
                        if (c == rtarget) at(L, a, b, c, s) = ExactRational(0);
        for (long long i = L - 1; i >= 0; --i)
            for (long long a = 0; a < p_; ++a)
                for (long long b = 0; b < p_; ++b)
                    for (long long c = 1; c <= p_ - 1; ++c) {
                        if (i >= 1 && (b < 1 || std::llabs(c - b) != 1)) continue;
                        if (i >= 2 && (a < 1 || std::llabs(b - a) != 1)) continue;
                        for (long long s = 0; s <= vclip_; ++s)
                            at(i, a, b, c, s) = best_step(i, a, b, c, s);
                    }
    }

    const std::optional<ExactRational>& at(long long i, long long a, long long b,
                                           long long c, long long s) const {
        return tab_[idx(i, a, b, c, s)];
    }

private:
    std::optional<ExactRational>& at(long long i, long long a, long long b, long long c,
                                     long long s) {
        return tab_[idx(i, a, b, c, s)];
    }

    std::size_t idx(long long i, long long a, long long b, long long c, long long s) const {
        return static_cast<std::size_t>((((i * p_ + a) * p_ + b) * p_ + c) * (vclip_ + 1) + s);
    }

    std::optional<ExactRational> best_step(long long i, long long a, long long b,
                                           long long c, long long s) const {
        std::optional<ExactRational> best;
        for (long long nr : {c - 1, c + 1}) {
            if (nr < 1 || nr > p_ - 1) continue;
            ExactRational wterm = 0;
            if (i >= 1) wterm = (L_ - i) * weight_w(m_, nr, c, b);
            for (long long sig = 0; sig <= vclip_; ++sig) {
                if (i >= 2) {
                    const long long h = ladder_base(a, b, c, nr);
                    if (h >= 0 && s + sig < v_int(m_, h)) continue;
                }
                const auto& rest = at(i + 1, b, c, nr, sig);
                if (!rest) continue;
                ExactRational cost = *rest + (L_ - i) * sig + wterm;
                if (!best || cost < *best) best = std::move(cost);
            }
        }
        return best;
    }

    const ModelParams& m_;
    long long L_, p_, vclip_;
    std::vector<std::optional<ExactRational>> tab_;
};

struct Enumerator {
    const ModelParams& m;
    long long L, p, vclip;
    ExactRational maxdeg;
    const Completion& comp;
    std::vector<long long> r, sig;
    std::vector<std::pair<RiggedPath, ExactRational>>& out;

    void run() {
        r.assign(1, 1);
        const auto& c0 = comp.at(0, 0, 0, 1, vclip);
        if (!c0) return;
        ExactRational acc = L * m.delta21();
        if (acc + *c0 > maxdeg) return;
        dfs(0, acc);
    }

    void dfs(long long i, const ExactRational& acc) {
        if (i == L) {
            out.emplace_back(RiggedPath{r, sig}, acc);
            return;
        }
        for (long long s0 = 0;; ++s0) {
            bool any = false;
            for (long long nr : {r[i] - 1, r[i] + 1}) {
                if (nr < 1 || nr > p - 1) continue;
                if (i >= 2) {
                    const long long h = ladder_base(r[i - 2], r[i - 1], r[i], nr);
                    if (h >= 0 && sig[i - 1] + s0 < v_int(m, h)) continue;
                }
                ExactRational na = acc + (L - i) * s0;
                if (i >= 1) na += (L - i) * weight_w(m, nr, r[i], r[i - 1]);
                const auto& rest =
                    comp.at(i + 1, i >= 1 ? r[i - 1] : 0, r[i], nr, std::min(s0, vclip));
                if (!rest || na + *rest > maxdeg) continue;
                any = true;
                r.push_back(nr);
                sig.push_back(s0);
                dfs(i + 1, na);
                r.pop_back();
                sig.pop_back();
            }
            // Past the clip, window constraints are settled and the cost of
            // s0 only grows, so a fully-bounded round means we are done.
            if (!any && s0 >= vclip) break;
        }
    }
};

std::vector<std::pair<RiggedPath, ExactRational>> enumerate_with_degrees(
    const ModelParams& m, long long L, long long r, const ExactRational& max_degree) {
    std::vector<std::pair<RiggedPath, ExactRational>> out;
    Completion comp(m, L, r);
    Enumerator e{m, L, m.p(), m.vmax(), max_degree, comp, {}, {}, out};
    e.run();
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.first.r != y.first.r) return x.first.r < y.first.r;
        return x.first.sigma < y.first.sigma;
    });
    return out;
}

void check_Lr(const ModelParams& m, long long L, long long r, const char* who) {
    if (L < 0 || r < 1 || r > m.p() - 1)
        throw std::domain_error(std::string(who) + ": need L >= 0 and 1 <= r <= p-1, got L=" +
                                std::to_string(L) + ", r=" + std::to_string(r));
}

}  // namespace

std::optional<ExactRational> min_degree(const ModelParams& m, long long L, long long r) {
    check_Lr(m, L, r, "min_degree");
    const Completion comp(m, L, r);
    const auto& c0 = comp.at(0, 0, 0, 1, m.vmax());
    if (!c0) return std::nullopt;
    return L * m.delta21() + *c0;
}

std::vector<RiggedPath> enumerate_paths(const ModelParams& m, long long L, long long r,
                                        const ExactRational& max_degree) {
    check_Lr(m, L, r, "enumerate_paths");
    if (max_degree < 0)
        throw std::domain_error("enumerate_paths: max_degree must be >= 0");
    auto withd = enumerate_with_degrees(m, L, r, max_degree);
    std::vector<RiggedPath> out;
    out.reserve(withd.size());
    for (auto& [P, d] : withd) out.push_back(std::move(P));
    return out;
}

QSeries char_paths(const ModelParams& m, long long L, long long r, const ExactRational& N) {
    QSeries out{TruncBound(N)};
    if (N < 0 || L < 0 || r < 1 || r > m.p() - 1) return out;
    for (const auto& [P, d] : enumerate_with_degrees(m, L, r, N)) out.add_term(d, 1);
    return out;
}

MonomialExponents exponents_from_path(const ModelParams& m, const RiggedPath& P) {
    const auto rep = path_admissible(m, P);
    if (!rep.ok)
        throw std::domain_error("exponents_from_path: inadmissible path: " + rep.violation);
    MonomialExponents M;
    M.r = P.r;
    const long long L = P.length();
    if (L == 0) return M;
    M.n.reserve(static_cast<std::size_t>(L));
    ExactRational cur = m.delta21() + P.sigma[0];
    M.n.push_back(cur);
    for (long long i = 1; i <= L - 1; ++i) {
        cur += weight_w(m, P.r[i + 1], P.r[i], P.r[i - 1]) + P.sigma[i];
        M.n.push_back(cur);
    }
    return M;
}

RiggedPath path_from_exponents(const ModelParams& m, const MonomialExponents& M) {
    if (M.n.size() + 1 != M.r.size())
        throw std::domain_error("path_from_exponents: " + std::to_string(M.r.size()) +
                                " heights need " + std::to_string(M.r.size() - 1) +
                                " exponents, got " + std::to_string(M.n.size()));
    RiggedPath P;
    P.r = M.r;
    P.sigma.assign(M.n.size(), 0);
    check_structure(m, P);
    const long long L = static_cast<long long>(M.n.size());
    for (long long i = 1; i <= L; ++i) {
        const ExactRational off =
            M.n[i - 1] - conformal_dim(m, M.r[i], 1) + conformal_dim(m, M.r[i - 1], 1);
        if (!rat_is_integer(off))
            throw std::domain_error("path_from_exponents: n_" + std::to_string(i) + " = " +
                                    rational_to_string(M.n[i - 1]) +
                                    " is off the exponent lattice for heights (" +
                                    std::to_string(M.r[i]) + "," + std::to_string(M.r[i - 1]) +
                                    ")");
    }
    if (L == 0) return P;
    const ExactRational s0 = M.n[0] - m.delta21();
    if (s0 < 0)
        throw std::domain_error("path_from_exponents: n_1 = " + rational_to_string(M.n[0]) +
                                " violates the base bound n_1 >= Delta_{2,1} = " +
                                rational_to_string(m.delta21()));
    P.sigma[0] = rat_num(s0).convert_to<long long>();
    for (long long i = 1; i <= L - 1; ++i) {
        const ExactRational w = weight_w(m, M.r[i + 1], M.r[i], M.r[i - 1]);
        const ExactRational si = M.n[i] - M.n[i - 1] - w;
        if (!rat_is_integer(si))
            throw std::domain_error(
                "path_from_exponents: n_" + std::to_string(i + 1) + " - n_" +
                std::to_string(i) + " - w = " + rational_to_string(si) +
                " is not an integer (exponent lattice violation)");
        if (si < 0)
            throw std::domain_error("path_from_exponents: n_" + std::to_string(i + 1) +
                                    " - n_" + std::to_string(i) + " = " +
                                    rational_to_string(M.n[i] - M.n[i - 1]) +
                                    " rises by less than the weight w = " + rational_to_string(w));
        P.sigma[i] = rat_num(si).convert_to<long long>();
    }
    const auto rep = path_admissible(m, P);
    if (!rep.ok)
        throw std::domain_error("path_from_exponents: inadmissible: " + rep.violation);
    return P;
}

bool p3_admissible(long long pprime, const MonomialExponents& M) {
    if (pprime <= 3 || std::gcd(3LL, pprime) != 1)
        throw std::domain_error("p3_admissible: need p' > 3 coprime to 3, got p'=" +
                                std::to_string(pprime));
    const long long L = static_cast<long long>(M.n.size());
    if (M.r.size() != M.n.size() + 1)
        throw std::domain_error("p3_admissible: height/exponent length mismatch");
    for (long long i = 0; i <= L; ++i)
        if (M.r[i] != 1 + i % 2)
            throw std::domain_error("p3_admissible: heights must alternate 1,2,1,2,... at p=3");
    const ExactRational d21(pprime - 2, 4);
    for (long long i = 1; i <= L; ++i) {
        const ExactRational off = M.n[i - 1] + (i % 2 == 0 ? d21 : -d21);
        if (!rat_is_integer(off)) return false;  // off the quarter-integer lattice
    }
    if (L == 0) return true;
    if (M.n[0] < d21) return false;                          // base bound
    const ExactRational step_min = 3 - ExactRational(pprime, 2);
    for (long long i = 0; i + 1 < L; ++i)
        if (M.n[i + 1] - M.n[i] < step_min) return false;    // step bound
    for (long long i = 0; i + 2 < L; ++i)
        if (M.n[i + 2] - M.n[i] < 1) return false;           // window bound
    return true;
}

bool w3_monomial_admissible(long long pprime, const std::vector<long long>& lam) {
    if (pprime <= 3 || std::gcd(3LL, pprime) != 1)
        throw std::domain_error("w3_monomial_admissible: need p' > 3 coprime to 3, got p'=" +
                                std::to_string(pprime));
    for (long long x : lam)
        if (x < 1) return false;
    for (std::size_t i = 0; i + 1 < lam.size(); ++i)
        if (lam[i] < lam[i + 1]) return false;
    for (std::size_t i = 0; i + 2 < lam.size(); ++i)
        if (lam[i] - lam[i + 2] < pprime - 2) return false;
    return true;
}

std::string path_to_text(const RiggedPath& P) {
    std::ostringstream os;
    for (auto it = P.r.rbegin(); it != P.r.rend(); ++it) {
        if (it != P.r.rbegin()) os << ",";
        os << *it;
    }
    os << ";";
    for (auto it = P.sigma.rbegin(); it != P.sigma.rend(); ++it) {
        if (it != P.sigma.rbegin()) os << ",";
        os << *it;
    }
    return os.str();
}

namespace {

std::vector<long long> parse_ll_list(const std::string& s, const char* what) {
    std::vector<long long> out;
    if (s.empty()) return out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = s.find(',', pos);
        const std::string tok =
            s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        std::size_t start = (!tok.empty() && tok[0] == '-') ? 1 : 0;
        const bool digits =
            tok.size() > start &&
            std::all_of(tok.begin() + static_cast<long>(start), tok.end(),
                        [](unsigned char ch) { return std::isdigit(ch); });
        if (!digits)
            throw std::invalid_argument(std::string("path: bad ") + what + " entry '" + tok +
                                        "'");
        out.push_back(std::stoll(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace

RiggedPath path_from_text(const std::string& s) {
    const std::size_t semi = s.find(';');
    if (semi == std::string::npos || s.find(';', semi + 1) != std::string::npos)
        throw std::invalid_argument("path: expected exactly one ';' in '" + s + "'");
    const auto rdisp = parse_ll_list(s.substr(0, semi), "height");
    const auto sdisp = parse_ll_list(s.substr(semi + 1), "rigging");
    if (rdisp.empty()) throw std::invalid_argument("path: empty height list in '" + s + "'");
    if (sdisp.size() + 1 != rdisp.size())
        throw std::invalid_argument("path: " + std::to_string(rdisp.size()) +
                                    " heights need " + std::to_string(rdisp.size() - 1) +
                                    " riggings, got " + std::to_string(sdisp.size()));
    RiggedPath P;
    P.r.assign(rdisp.rbegin(), rdisp.rend());
    P.sigma.assign(sdisp.rbegin(), sdisp.rend());
    return P;
}

std::string path_to_json(const RiggedPath& P) {
    nlohmann::ordered_json j;
    j["r"] = nlohmann::ordered_json::array();
    for (auto it = P.r.rbegin(); it != P.r.rend(); ++it) j["r"].push_back(*it);
    j["sigma"] = nlohmann::ordered_json::array();
    for (auto it = P.sigma.rbegin(); it != P.sigma.rend(); ++it) j["sigma"].push_back(*it);
    return j.dump();
}

}  // namespace virapath

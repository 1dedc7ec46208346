#include "virapath/particle_moves.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace virapath {

namespace {

void require_admissible(const ModelParams& m, const RiggedPath& P, const char* who) {
    AdmissibilityReport rep = path_admissible(m, P);
    if (!rep.ok) throw std::domain_error(std::string(who) + ": path not admissible: " + rep.violation);
}

// Rung h when the four heights occupy a ladder {h, h+1}, otherwise -1.
// Adjacent heights always differ by 1, so span 1 is the only ladder case.
long long ladder_rung(long long a, long long b, long long c, long long d) {
    const long long mn = std::min(std::min(a, b), std::min(c, d));
    const long long mx = std::max(std::max(a, b), std::max(c, d));
    return mx - mn == 1 ? mn : -1;
}

}  // namespace

std::vector<Block> find_blocks(const ModelParams& m, const RiggedPath& P) {
    require_admissible(m, P, "find_blocks");
    const std::vector<long long>& r = P.r;
    const std::vector<long long>& s = P.sigma;
    const long long L = P.length();
    const long long p = m.p();

    // Positions x and x-1 are in contact when the four surrounding heights
    // form a ladder on some rung h and the two riggings add up to v(h).
    auto connected = [&](long long x) {
        const long long h = ladder_rung(r[x - 2], r[x - 1], r[x], r[x + 1]);
        return h != -1 && s[x] + s[x - 1] == v_int(m, h);
    };

    std::vector<Block> out;
    long long x = 1;
    while (x <= L - 1) {
        const long long lo = x;
        while (x + 1 <= L - 1 && connected(x + 1)) ++x;
        const long long hi = x;
        const long long size = hi - lo + 1;

        std::optional<BlockKind> kind;
        if (size >= 2) {
            kind = BlockKind::MULTI;
        } else if (s[lo] == 1 && r[lo + 1] == r[lo - 1] &&
                   ((r[lo] == 2 && r[lo + 1] == 1) ||
                    (r[lo] == p - 2 && r[lo + 1] == p - 1))) {
            kind = BlockKind::SINGLE_SIGMA1_BOUNDARY;
        } else if (s[lo] == 0 && r[lo + 1] == r[lo - 1]) {
            kind = BlockKind::SINGLE_SIGMA0;
        }

        if (kind) {
            for (long long y = lo; y <= hi; ++y)
                if (r[y + 1] != r[y - 1])
                    throw std::logic_error("find_blocks: unequal flanking heights inside a block");
            if (size % 2 == 1 && s[lo] != s[hi])
                throw std::logic_error("find_blocks: odd block with unequal end riggings");

            const long long rp = r[hi + 1];
            const bool extremal = rp == 1 || rp == p - 1;
            const long long mb =
                (s[hi] >= 2 || (s[hi] == 1 && !extremal)) ? size / 2 : (size + 1) / 2;
            out.push_back(Block{lo, hi, *kind, mb});
        }
        ++x;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

long long particle_count(const ModelParams& m, const RiggedPath& P) {
    long long total = 0;
    for (const Block& b : find_blocks(m, P)) total += b.particles;
    if (total > P.length() / 2)
        throw std::logic_error("particle_count: more particles than positions allow");
    return total;
}

MoveDomains move_domains(const ModelParams& m, const RiggedPath& P) {
    MoveDomains out;
    const std::vector<Block> blocks = find_blocks(m, P);
    const bool bar_bottom = P.length() >= 2 && P.sigma[0] == 0 && P.sigma[1] == 0;

    // Blocks come ordered from the left, so the particle numbers of each
    // block occupy the next run after all blocks already seen.
    long long seen = 0;
    for (const Block& b : blocks) {
        const long long jp = seen + 1;
        out.i_plus.push_back(jp);
        out.x_plus[jp] = b.max;
        if (!(bar_bottom && b.min == 1)) {
            const long long jm = seen + b.particles;
            out.i_minus.push_back(jm);
            out.x_minus[jm] = b.min;
        }
        seen += b.particles;
    }
    return out;
}

std::optional<RiggedPath> apply_move(const ModelParams& m, const RiggedPath& P,
                                     long long j, int dir) {
    if (dir != 1 && dir != -1) throw std::domain_error("apply_move: dir must be +1 or -1");
    const MoveDomains dom = move_domains(m, P);
    const std::map<long long, long long>& xmap = dir == 1 ? dom.x_plus : dom.x_minus;
    const auto it = xmap.find(j);
    if (it == xmap.end()) return std::nullopt;

    const long long x = it->second;
    const long long L = P.length();
    const long long p = m.p();
    std::vector<long long> r = P.r;
    std::vector<ExtInt> s;
    s.reserve(L + 1);
    for (long long v : P.sigma) s.push_back(ExtInt::finite(v));
    s.push_back(ExtInt::infinity());  // sigma_L, absorbs every adjustment

    const long long rx = P.r[x];
    const long long rp = P.r[x + 1];  // equals r[x-1] on a block
    if (!(s[x] == ExtInt::finite(0))) {
        s[x] -= 1;
        s[x - dir] += 1;
    } else if (rp == 1 || rp == p - 1) {
        s[x] = ExtInt::finite(1);
        s[x + dir] -= 1;
    } else {
        // Reflection: the height at x flips to the other side of its equal
        // neighbours. Never happens at x = 1, where the flanking height is 1.
        if (x < 2) throw std::logic_error("apply_move: reflection scheduled at position 1");
        const long long rr = std::min(rx, rp);
        const long long eps = rp - rx;  // +-1
        r[x] = 2 * rp - rx;
        const long long vr = v_int(m, rr);
        const long long vre = v_int(m, rr + eps);
        // When the height two steps out does not exist (beyond L) the
        // adjusted rigging is the infinite sentinel, so either branch acts
        // the same; fall back to the first one.
        auto height_or = [&](long long i) { return i <= L ? P.r[i] : rx; };
        {
            const long long a = x + dir, h = x + 2 * dir;
            const long long hv = height_or(h);
            if (hv == rx) s[a] -= vr + 1;
            else if (hv == rx + 2 * eps) s[a] += vre;
            else throw std::logic_error("apply_move: unexpected height beside a reflection");
        }
        {
            const long long a = x - dir, h = x - 2 * dir;
            const long long hv = height_or(h);
            if (hv == rx) s[a] -= vr;
            else if (hv == rx + 2 * eps) s[a] += vre + 1;
            else throw std::logic_error("apply_move: unexpected height beside a reflection");
        }
    }

    RiggedPath out;
    out.r = std::move(r);
    out.sigma.resize(L);
    for (long long i = 0; i < L; ++i) {
        const long long v = s[i].value();
        if (v < 0) throw std::logic_error("apply_move: negative rigging in the result");
        out.sigma[i] = v;
    }
    return out;
}

Partition rigging(const ModelParams& m, const RiggedPath& P) {
    const long long mp = particle_count(m, P);
    Partition lam(mp, 0);
    if (mp == 0) return lam;

    const ExactRational d0 = path_degree(m, P);
    const std::optional<ExactRational> floor = min_degree(m, P.length(), P.r.back());
    if (!floor) throw std::logic_error("rigging: path outside its own family");

    long long acc = 0;  // lam[j] while processing particle j
    for (long long j = mp; j >= 1; --j) {
        RiggedPath cur = P;
        ExactRational d = d0;
        long long l = 0;
        while (std::optional<RiggedPath> nxt = apply_move(m, cur, j, -1)) {
            const ExactRational dn = path_degree(m, *nxt);
            if (dn != d - 1)
                throw std::logic_error("rigging: right move changed the degree by other than -1");
            if (dn < *floor)
                throw std::logic_error("rigging: right moves ran below the minimal degree");
            cur = std::move(*nxt);
            d = dn;
            ++l;
        }
        acc += l;
        lam[j - 1] = acc;
    }
    return lam;
}

namespace {

// Growth of each interior rigging when a path is read one level up:
// 0 across a slope, 1 at an interior turn, 2 at an extremal turn.
long long level_shift(long long p, long long below, long long above) {
    if (below != above) return 0;
    return below == 1 || below == p - 1 ? 2 : 1;
}

ModelParams source_model(const ModelParams& mt, const char* who) {
    if (mt.pprime() - mt.p() <= mt.p())
        throw std::domain_error(std::string(who) + ": no source level below (needs p' > 2p)");
    return ModelParams(mt.p(), mt.pprime() - mt.p());
}

}  // namespace

RiggedPath iota0(const ModelParams& params_t, const RiggedPath& pbar) {
    const ModelParams ms = source_model(params_t, "iota0");
    require_admissible(ms, pbar, "iota0");

    RiggedPath out = pbar;
    const long long L = pbar.length();
    for (long long i = 1; i <= L - 1; ++i) {
        const ExactRational shift = ExactRational(1, 2)
            + weight_w(ms, pbar.r[i + 1], pbar.r[i], pbar.r[i - 1])
            - weight_w(params_t, pbar.r[i + 1], pbar.r[i], pbar.r[i - 1]);
        const long long expect = level_shift(params_t.p(), pbar.r[i - 1], pbar.r[i + 1]);
        if (shift != ExactRational(expect))
            throw std::logic_error("iota0: weight drop disagrees with the height pattern");
        out.sigma[i] += expect;
    }

    AdmissibilityReport rep = path_admissible(params_t, out);
    if (!rep.ok) throw std::logic_error("iota0: image not admissible: " + rep.violation);
    return out;
}

RiggedPath iota(const ModelParams& params_t, const RiggedPath& pbar, const Partition& lam) {
    for (std::size_t i = 0; i + 1 < lam.size(); ++i)
        if (lam[i] < lam[i + 1])
            throw std::domain_error("iota: rigging must be weakly decreasing");
    if (!lam.empty() && lam.back() < 0)
        throw std::domain_error("iota: rigging must be nonnegative");

    const RiggedPath p0 = iota0(params_t, pbar);
    const long long mcnt = static_cast<long long>(lam.size());
    if (mcnt == 0) return p0;

    const long long Lbar = pbar.length();
    const long long L = Lbar + 2 * mcnt;
    const long long v1 = v_int(params_t, 1);

    // Ground configuration: alternating heights 1,2,...,1 on the bottom 2m
    // edges, riggings 0, 0, v(1), 0, v(1), 0, ... from the bottom, and the
    // embedded path on top with its lowest rigging raised by v(1).
    RiggedPath cur;
    cur.r.resize(L + 1);
    cur.sigma.resize(L);
    for (long long i = 0; i <= 2 * mcnt; ++i) cur.r[i] = i % 2 == 0 ? 1 : 2;
    for (long long i = 1; i <= Lbar; ++i) cur.r[2 * mcnt + i] = p0.r[i];
    for (long long i = 0; i < 2 * mcnt; ++i)
        cur.sigma[i] = (i >= 2 && i % 2 == 0) ? v1 : 0;
    if (Lbar > 0) {
        cur.sigma[2 * mcnt] = p0.sigma[0] + v1;
        for (long long i = 1; i <= Lbar - 1; ++i) cur.sigma[2 * mcnt + i] = p0.sigma[i];
    }

    for (long long j = 1; j <= mcnt; ++j) {
        for (long long step = 0; step < lam[j - 1]; ++step) {
            std::optional<RiggedPath> nxt = apply_move(params_t, cur, j, +1);
            if (!nxt)
                throw std::logic_error("iota: left-move word left its domain, "
                                       "falsifying the particle construction");
            cur = std::move(*nxt);
        }
    }
    return cur;
}

std::pair<RiggedPath, Partition> iota_inverse(const ModelParams& params_t,
                                              const RiggedPath& P) {
    const ModelParams ms = source_model(params_t, "iota_inverse");
    const Partition lam = rigging(params_t, P);  // also validates P

    // Undo the rigging: repeatedly move the largest still-raised particle
    // right once; its rigging entry drops by one each time.
    RiggedPath cur = P;
    Partition rem = lam;
    while (true) {
        long long j = 0;
        for (long long i = static_cast<long long>(rem.size()); i >= 1; --i) {
            const long long below = i < static_cast<long long>(rem.size()) ? rem[i] : 0;
            if (rem[i - 1] > below) { j = i; break; }
        }
        if (j == 0) break;
        std::optional<RiggedPath> nxt = apply_move(params_t, cur, j, -1);
        if (!nxt)
            throw std::logic_error("iota_inverse: scheduled right move undefined, "
                                   "falsifying the particle decomposition");
        cur = std::move(*nxt);
        --rem[j - 1];
    }

    const long long mcnt = static_cast<long long>(lam.size());
    const long long L = cur.length();
    const long long Lbar = L - 2 * mcnt;
    if (Lbar < 0)
        throw std::logic_error("iota_inverse: more particles than the length can hold");

    RiggedPath p0;
    if (mcnt == 0) {
        p0 = cur;
    } else {
        const long long v1 = v_int(params_t, 1);
        for (long long i = 0; i <= 2 * mcnt; ++i)
            if (cur.r[i] != (i % 2 == 0 ? 1 : 2))
                throw std::logic_error("iota_inverse: ground heights missing after undoing "
                                       "the rigging, falsifying the particle decomposition");
        for (long long i = 0; i < 2 * mcnt; ++i) {
            const long long want = (i >= 2 && i % 2 == 0) ? v1 : 0;
            if (cur.sigma[i] != want)
                throw std::logic_error("iota_inverse: ground riggings missing after undoing "
                                       "the rigging, falsifying the particle decomposition");
        }
        p0.r.assign(cur.r.begin() + 2 * mcnt, cur.r.end());
        if (Lbar > 0) {
            p0.sigma.assign(cur.sigma.begin() + 2 * mcnt, cur.sigma.end());
            if (p0.sigma[0] < v1)
                throw std::logic_error("iota_inverse: junction rigging below the ground "
                                       "level, falsifying the particle decomposition");
            p0.sigma[0] -= v1;
        }
    }

    RiggedPath pbar = p0;
    for (long long i = 1; i <= p0.length() - 1; ++i) {
        pbar.sigma[i] -= level_shift(params_t.p(), p0.r[i - 1], p0.r[i + 1]);
        if (pbar.sigma[i] < 0)
            throw std::logic_error("iota_inverse: negative rigging one level down, "
                                   "falsifying the particle decomposition");
    }
    AdmissibilityReport rep = path_admissible(ms, pbar);
    if (!rep.ok)
        throw std::logic_error("iota_inverse: stripped path not admissible one level down, "
                               "falsifying the particle decomposition: " + rep.violation);
    return {pbar, lam};
}

}  // namespace virapath

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "virapath/particle_moves.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

using namespace virapath;

namespace {

RiggedPath path(const std::string& text) { return path_from_text(text); }

// Applies one move and insists it is defined.
RiggedPath step(const ModelParams& m, const RiggedPath& P, long long j, int dir) {
    auto q = apply_move(m, P, j, dir);
    REQUIRE(q.has_value());
    return *q;
}

// All weakly decreasing nonnegative lists with `parts` entries and sum <= cap.
void collect_partitions(long long parts, long long largest, long long cap,
                        Partition& cur, std::vector<Partition>& out) {
    if (static_cast<long long>(cur.size()) == parts) {
        out.push_back(cur);
        return;
    }
    for (long long v = std::min(largest, cap); v >= 0; --v) {
        cur.push_back(v);
        collect_partitions(parts, v, cap - v, cur, out);
        cur.pop_back();
    }
}

std::vector<Partition> partitions_with(long long parts, long long cap) {
    std::vector<Partition> out;
    Partition cur;
    collect_partitions(parts, cap, cap, cur, out);
    return out;
}

long long part_at(const Partition& lam, long long j) {  // lambda_j, 0 beyond the end
    return j >= 1 && j <= static_cast<long long>(lam.size()) ? lam[j - 1] : 0;
}

}  // namespace

TEST_CASE("contact runs split into particle blocks") {
    ModelParams m(3, 7);

    auto blocks = find_blocks(m, path("1,2,1;0,0"));
    REQUIRE(blocks.size() == 1);
    CHECK(blocks[0] == Block{1, 1, BlockKind::SINGLE_SIGMA0, 1});

    blocks = find_blocks(m, path("2,1,2,1;2,0,0"));
    REQUIRE(blocks.size() == 1);
    CHECK(blocks[0] == Block{1, 2, BlockKind::MULTI, 1});

    CHECK(find_blocks(m, path("2,1;5")).empty());
    CHECK(find_blocks(m, path("1;")).empty());

    blocks = find_blocks(m, path("1,2,1;1,0"));
    REQUIRE(blocks.size() == 1);
    CHECK(blocks[0] == Block{1, 1, BlockKind::SINGLE_SIGMA1_BOUNDARY, 1});

    // A lone interior rigging of 2 carries no particle.
    CHECK(find_blocks(m, path("1,2,1;2,0")).empty());

    // Two blocks, reported from the left: a boundary single above a triple run.
    blocks = find_blocks(m, path("2,1,2,1,2,1;1,2,0,2,0"));
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0] == Block{4, 4, BlockKind::SINGLE_SIGMA1_BOUNDARY, 1});
    CHECK(blocks[1] == Block{1, 3, BlockKind::MULTI, 1});

    ModelParams m49(4, 9);
    blocks = find_blocks(m49, path("2,3,2,1;0,0,1"));
    REQUIRE(blocks.size() == 1);
    CHECK(blocks[0] == Block{2, 2, BlockKind::SINGLE_SIGMA0, 1});

    CHECK_THROWS_AS(find_blocks(m, path("2,1,2,1;0,0,0")), std::domain_error);

    CHECK(particle_count(m, path("1,2,1,2,1;0,2,0,0")) == 2);
    CHECK(particle_count(m, path("1,2,1;5,7")) == 0);
    CHECK(particle_count(m, path("1;")) == 0);
}

TEST_CASE("movable particles and their positions") {
    ModelParams m(3, 7);

    auto dom = move_domains(m, path("1,2,1;0,0"));
    CHECK(dom.i_plus == std::vector<long long>{1});
    CHECK(dom.i_minus.empty());
    CHECK(dom.x_plus.at(1) == 1);

    dom = move_domains(m, path("1,2,1;1,0"));
    CHECK(dom.i_plus == std::vector<long long>{1});
    CHECK(dom.i_minus == std::vector<long long>{1});
    CHECK(dom.x_plus.at(1) == 1);
    CHECK(dom.x_minus.at(1) == 1);

    dom = move_domains(m, path("1;"));
    CHECK(dom.i_plus.empty());
    CHECK(dom.i_minus.empty());

    dom = move_domains(m, path("2,1;5"));
    CHECK(dom.i_plus.empty());
    CHECK(dom.i_minus.empty());

    // Two particles; the bottom one cannot move right because the two lowest
    // riggings both vanish.
    dom = move_domains(m, path("1,2,1,2,1;1,2,0,0"));
    CHECK(dom.i_plus == std::vector<long long>{1, 2});
    CHECK(dom.x_plus.at(1) == 3);
    CHECK(dom.x_plus.at(2) == 2);
    CHECK(dom.i_minus == std::vector<long long>{1});
    CHECK(dom.x_minus.at(1) == 3);
}

TEST_CASE("single moves follow the three-case rule") {
    ModelParams m(3, 7);

    CHECK(step(m, path("1,2,1;0,0"), 1, +1) == path("1,2,1;1,0"));
    CHECK(step(m, path("1,2,1;1,0"), 1, +1) == path("1,2,1;0,1"));
    CHECK(step(m, path("2,1,2,1;0,2,0"), 1, +1) == path("2,1,2,1;1,2,0"));

    CHECK(step(m, path("1,2,1;0,1"), 1, -1) == path("1,2,1;1,0"));
    CHECK(step(m, path("1,2,1;1,0"), 1, -1) == path("1,2,1;0,0"));

    CHECK_FALSE(apply_move(m, path("1,2,1;0,0"), 1, -1).has_value());
    CHECK_FALSE(apply_move(m, path("1,2,1;0,0"), 0, +1).has_value());
    CHECK_FALSE(apply_move(m, path("1,2,1;0,0"), 2, +1).has_value());
    CHECK_THROWS_AS(apply_move(m, path("1,2,1;0,0"), 1, 3), std::domain_error);
}

TEST_CASE("repeated left moves travel the expected orbits") {
    ModelParams m37(3, 7);

    // Length 2: the rigging walks through all (sigma_1, sigma_0) of total d-2.
    const char* orbit2[] = {"1,2,1;0,0", "1,2,1;1,0", "1,2,1;0,1", "1,2,1;1,1",
                            "1,2,1;0,2", "1,2,1;1,2", "1,2,1;0,3"};
    RiggedPath cur = path(orbit2[0]);
    for (int i = 1; i < 7; ++i) {
        cur = step(m37, cur, 1, +1);
        CHECK(cur == path(orbit2[i]));
        CHECK(path_degree(m37, cur) == path_degree(m37, path(orbit2[i - 1])) + 1);
    }

    // Length 3 with a reflection: the height at position 2 flips between its
    // equal neighbours whenever its rigging hits zero on a non-extremal rung.
    ModelParams m49(4, 9);
    const char* orbit3[] = {"2,1,2,1;2,0,0",   "2,1,2,1;1,1,0", "2,1,2,1;1,0,1",
                            "2,1,2,1;0,1,1",   "2,3,2,1;0,0,1", "2,1,2,1;0,2,1",
                            "2,3,2,1;0,1,1"};
    cur = path(orbit3[0]);
    for (int i = 1; i < 7; ++i) {
        cur = step(m49, cur, 1, +1);
        CHECK(cur == path(orbit3[i]));
        CHECK(cur.r.back() == 2);
        CHECK(particle_count(m49, cur) == 1);
    }

    // Both flanks of a reflection adjust when the flip happens mid-path.
    CHECK(step(m49, path("1,2,1,2,1;2,0,1,0"), 1, +1) == path("1,2,3,2,1;0,0,0,0"));
    CHECK(step(m49, path("1,2,3,2,1;0,0,0,0"), 1, +1) == path("1,2,1,2,1;1,0,2,0"));
}

TEST_CASE("two-particle grid of left moves") {
    ModelParams m(3, 7);

    CHECK(step(m, path("1,2,1,2,1;0,2,0,0"), 1, +1) == path("1,2,1,2,1;1,2,0,0"));
    CHECK(step(m, path("1,2,1,2,1;1,2,0,0"), 1, +1) == path("1,2,1,2,1;0,3,0,0"));
    CHECK(step(m, path("1,2,1,2,1;0,3,0,0"), 1, +1) == path("1,2,1,2,1;1,3,0,0"));

    CHECK(step(m, path("1,2,1,2,1;1,2,0,0"), 2, +1) == path("1,2,1,2,1;1,1,1,0"));
    CHECK(step(m, path("1,2,1,2,1;0,3,0,0"), 2, +1) == path("1,2,1,2,1;0,2,1,0"));
    CHECK(step(m, path("1,2,1,2,1;1,3,0,0"), 2, +1) == path("1,2,1,2,1;1,2,1,0"));
    CHECK(step(m, path("1,2,1,2,1;0,2,1,0"), 2, +1) == path("1,2,1,2,1;0,2,0,1"));
    CHECK(step(m, path("1,2,1,2,1;1,2,1,0"), 2, +1) == path("1,2,1,2,1;1,2,0,1"));
    CHECK(step(m, path("1,2,1,2,1;1,2,0,1"), 2, +1) == path("1,2,1,2,1;1,1,1,1"));
}

TEST_CASE("rigging measures the available right moves") {
    ModelParams m(3, 7);

    CHECK(rigging(m, path("1,2,1;0,0")) == Partition{0});
    CHECK(rigging(m, path("1,2,1;1,0")) == Partition{1});
    CHECK(rigging(m, path("1,2,1;0,1")) == Partition{2});
    CHECK(rigging(m, path("1;")) == Partition{});
    CHECK(rigging(m, path("2,1;5")) == Partition{});

    // Along the length-2 orbit the single rigging counts the steps taken.
    RiggedPath cur = path("1,2,1;0,0");
    for (long long k = 1; k <= 6; ++k) {
        cur = step(m, cur, 1, +1);
        CHECK(rigging(m, cur) == Partition{k});
    }

    // Grid coordinates: lambda_1 counts moves of particle 1, lambda_2 of
    // particle 2, starting from the two-particle ground configuration.
    CHECK(rigging(m, path("1,2,1,2,1;0,2,0,0")) == Partition{0, 0});
    CHECK(rigging(m, path("1,2,1,2,1;0,2,1,0")) == Partition{2, 1});
    CHECK(rigging(m, path("1,2,1,2,1;1,3,0,0")) == Partition{3, 0});
    CHECK(rigging(m, path("1,2,1,2,1;1,1,1,1")) == Partition{3, 3});
}

TEST_CASE("right moves of neighbouring particles commute in one order only") {
    ModelParams m(3, 7);

    // lambda = (2,2): moving particle 2 right first frees particle 1, but
    // particle 1 alone cannot move right.
    RiggedPath P = path("1,2,1,2,1;0,2,0,1");
    REQUIRE(rigging(m, P) == Partition{2, 2});
    RiggedPath after2 = step(m, P, 2, -1);
    CHECK(apply_move(m, after2, 1, -1).has_value());
    CHECK_FALSE(apply_move(m, P, 1, -1).has_value());
}

TEST_CASE("move laws on enumerated paths") {
    long long instances = 0;
    for (auto [p, pp] : {std::pair<long long, long long>{3, 7}, {4, 9}}) {
        ModelParams m(p, pp);
        for (long long L = 0; L <= 5; ++L) {
            for (long long r = 1; r <= p - 1; ++r) {
                auto base = min_degree(m, L, r);
                if (!base) continue;
                for (const RiggedPath& P : enumerate_paths(m, L, r, *base + 7)) {
                    ++instances;
                    const long long mp = particle_count(m, P);
                    CHECK(mp <= L / 2);
                    const MoveDomains dom = move_domains(m, P);
                    const ExactRational d = path_degree(m, P);

                    // A particle movable both ways acts inside a single block:
                    // at its top for left moves and at its bottom for right.
                    const auto blocks = find_blocks(m, P);
                    for (long long j : dom.i_plus)
                        if (dom.x_minus.count(j)) {
                            const long long xp = dom.x_plus.at(j);
                            const long long xm = dom.x_minus.at(j);
                            const bool together =
                                std::any_of(blocks.begin(), blocks.end(), [&](const Block& b) {
                                    return b.max == xp && b.min == xm;
                                });
                            CHECK(together);
                        }

                    for (int dir : {+1, -1}) {
                        const auto& dome = dir == 1 ? dom.i_plus : dom.i_minus;
                        for (long long j = 0; j <= mp + 1; ++j) {
                            auto q = apply_move(m, P, j, dir);
                            const bool in_dom =
                                std::find(dome.begin(), dome.end(), j) != dome.end();
                            REQUIRE(q.has_value() == in_dom);
                            if (!q) continue;
                            CHECK(path_admissible(m, *q).ok);
                            CHECK(q->length() == P.length());
                            CHECK(q->r.back() == P.r.back());
                            CHECK(particle_count(m, *q) == mp);
                            CHECK(path_degree(m, *q) == d + dir);
                            // The two moves undo each other.
                            auto back = apply_move(m, *q, j, -dir);
                            REQUIRE(back.has_value());
                            CHECK(*back == P);
                        }
                    }

                    // Same-sign moves commute; the excluded neighbour index
                    // depends on the direction.
                    for (int dir : {+1, -1})
                        for (long long i = 1; i <= mp; ++i)
                            for (long long j = 1; j <= mp; ++j) {
                                if (i == j + dir) continue;
                                auto qj = apply_move(m, P, j, dir);
                                if (!qj) continue;
                                auto qij = apply_move(m, *qj, i, dir);
                                if (!qij) continue;
                                auto qi = apply_move(m, P, i, dir);
                                REQUIRE(qi.has_value());
                                auto qji = apply_move(m, *qi, j, dir);
                                REQUIRE(qji.has_value());
                                CHECK(*qji == *qij);
                            }

                    // Opposite-sign moves commute whenever i != j.
                    for (int dir : {+1, -1})
                        for (long long i = 1; i <= mp; ++i)
                            for (long long j = 1; j <= mp; ++j) {
                                if (i == j) continue;
                                auto qj = apply_move(m, P, j, -dir);
                                if (!qj) continue;
                                auto qij = apply_move(m, *qj, i, dir);
                                if (!qij) continue;
                                auto qi = apply_move(m, P, i, dir);
                                REQUIRE(qi.has_value());
                                auto qji = apply_move(m, *qi, j, -dir);
                                REQUIRE(qji.has_value());
                                CHECK(*qji == *qij);
                            }

                    // A left move of particle j+1 exists exactly when a right
                    // move of particle j does, and the pair commutes.
                    for (long long j = 1; j + 1 <= mp; ++j) {
                        auto up = apply_move(m, P, j + 1, +1);
                        auto down = apply_move(m, P, j, -1);
                        CHECK(up.has_value() == down.has_value());
                        if (up && down) {
                            // The compositions are defined together or not at
                            // all, and agree when they exist.
                            auto ud = apply_move(m, *down, j + 1, +1);
                            auto du = apply_move(m, *up, j, -1);
                            CHECK(ud.has_value() == du.has_value());
                            if (ud && du) CHECK(*ud == *du);
                        }
                        // Iterated versions stay in lockstep.
                        for (long long l = 1; l <= 3; ++l) {
                            RiggedPath a = P, b = P;
                            bool oka = true, okb = true;
                            for (long long s = 0; s < l; ++s) {
                                if (oka) {
                                    auto nxt = apply_move(m, a, j + 1, +1);
                                    if (nxt) a = *nxt; else oka = false;
                                }
                                if (okb) {
                                    auto nxt = apply_move(m, b, j, -1);
                                    if (nxt) b = *nxt; else okb = false;
                                }
                            }
                            CHECK(oka == okb);
                        }
                    }

                    // The rigging is a partition and steers both moves.
                    const Partition lam = rigging(m, P);
                    CHECK(static_cast<long long>(lam.size()) == mp);
                    for (std::size_t idx = 0; idx + 1 < lam.size(); ++idx)
                        CHECK(lam[idx] >= lam[idx + 1]);
                    for (long long j = 1; j <= mp; ++j) {
                        auto up = apply_move(m, P, j, +1);
                        const bool can_up = j == 1 || part_at(lam, j) < part_at(lam, j - 1);
                        CHECK(up.has_value() == can_up);
                        if (up) {
                            Partition want = lam;
                            ++want[j - 1];
                            CHECK(rigging(m, *up) == want);
                        }
                        auto down = apply_move(m, P, j, -1);
                        const bool can_down = part_at(lam, j) > part_at(lam, j + 1);
                        CHECK(down.has_value() == can_down);
                        if (down) {
                            Partition want = lam;
                            --want[j - 1];
                            CHECK(rigging(m, *down) == want);
                        }
                    }
                }
            }
        }
    }
    CHECK(instances > 400);
}

TEST_CASE("particle-free embedding raises riggings by the height pattern") {
    ModelParams m37(3, 7);

    CHECK(iota0(m37, path("1;")) == path("1;"));
    CHECK(iota0(m37, path("1,2,1;0,0")) == path("1,2,1;2,0"));
    CHECK(iota0(m37, path("2,1;3")) == path("2,1;3"));

    CHECK_THROWS_AS(iota0(ModelParams(3, 4), path("1;")), std::domain_error);
    CHECK_THROWS_AS(iota0(ModelParams(3, 5), path("1;")), std::domain_error);
    // Inadmissible at the source level (3,7), where v(1) = 2 bars flat runs.
    CHECK_THROWS_AS(iota0(ModelParams(3, 10), path("2,1,2,1;0,0,0")), std::domain_error);

    // The image is particle-free, and the degree grows by L^2/4 + L/2.
    for (auto [p, pp] : {std::pair<long long, long long>{3, 7}, {4, 9}, {5, 12}}) {
        ModelParams mt(p, pp);
        ModelParams ms(p, pp - p);
        for (long long L = 0; L <= 5; ++L)
            for (long long r = 1; r <= p - 1; ++r) {
                auto base = min_degree(ms, L, r);
                if (!base) continue;
                for (const RiggedPath& pb : enumerate_paths(ms, L, r, *base + 5)) {
                    const RiggedPath img = iota0(mt, pb);
                    CHECK(img.r == pb.r);
                    CHECK(path_admissible(mt, img).ok);
                    CHECK(particle_count(mt, img) == 0);
                    CHECK(path_degree(mt, img) ==
                          path_degree(ms, pb) + ExactRational(L * L, 4) + ExactRational(L, 2));
                    if (L > 0) CHECK(img.sigma[0] == pb.sigma[0]);
                }
            }
    }
}

TEST_CASE("adding rigged particles to an embedded path") {
    ModelParams m(3, 7);
    ModelParams src(3, 4);

    CHECK(iota(m, path("1;"), Partition{0}) == path("1,2,1;0,0"));
    CHECK(path_degree(m, iota(m, path("1;"), Partition{0})) == ExactRational(2));
    CHECK(iota(m, path("1;"), Partition{0, 0}) == path("1,2,1,2,1;0,2,0,0"));
    CHECK(iota(m, path("1;"), Partition{3}) == path("1,2,1;1,1"));
    CHECK(iota(m, path("1;"), Partition{3, 1}) == path("1,2,1,2,1;1,2,1,0"));
    CHECK(iota(m, path("1,2,1;0,0"), Partition{2}) == path("1,2,1,2,1;2,0,2,0"));
    CHECK(iota(m, path("1;"), Partition{}) == path("1;"));

    CHECK_THROWS_AS(iota(m, path("1;"), Partition{1, 2}), std::domain_error);
    CHECK_THROWS_AS(iota(m, path("1;"), Partition{-1}), std::domain_error);
    CHECK_THROWS_AS(iota(ModelParams(3, 5), path("1;"), Partition{0}), std::domain_error);
}

TEST_CASE("undoing particles recovers the source path and the rigging") {
    ModelParams m(3, 7);

    auto inv = iota_inverse(m, path("1,2,1;0,0"));
    CHECK(inv.first == path("1;"));
    CHECK(inv.second == Partition{0});

    inv = iota_inverse(m, path("2,1;3"));
    CHECK(inv.first == path("2,1;3"));
    CHECK(inv.second == Partition{});

    inv = iota_inverse(m, path("1,2,1;0,1"));
    CHECK(inv.first == path("1;"));
    CHECK(inv.second == Partition{2});

    CHECK_THROWS_AS(iota_inverse(ModelParams(3, 5), path("1;")), std::domain_error);
    CHECK_THROWS_AS(iota_inverse(m, path("2,1,2,1;0,0,0")), std::domain_error);
}

TEST_CASE("particle decomposition is a graded bijection") {
    for (auto [p, pp] : {std::pair<long long, long long>{3, 7}, {4, 9}, {5, 12}}) {
        ModelParams mt(p, pp);
        ModelParams ms(p, pp - p);
        for (long long L = 0; L <= 4; ++L)
            for (long long r = 1; r <= p - 1; ++r) {
                auto base = min_degree(mt, L, r);
                if (!base) continue;
                const ExactRational cutoff = *base + 7;
                const auto targets = enumerate_paths(mt, L, r, cutoff);

                // Backward: every path unpacks, reconstructs, and the degrees
                // line up with the particle weight.
                std::set<std::string> seen;
                for (const RiggedPath& P : targets) {
                    auto [pb, lam] = iota_inverse(mt, P);
                    CHECK(static_cast<long long>(lam.size()) == particle_count(mt, P));
                    CHECK(pb.length() == L - 2 * static_cast<long long>(lam.size()));
                    CHECK(path_admissible(ms, pb).ok);
                    CHECK(iota(mt, pb, lam) == P);
                    long long wt = 0;
                    for (long long part : lam) wt += part;
                    CHECK(path_degree(mt, P) ==
                          path_degree(ms, pb) + wt + ExactRational(L * L, 4) + ExactRational(L, 2));
                    std::string key = std::to_string(lam.size()) + "|" + path_to_text(pb) + "|";
                    for (long long part : lam) key += std::to_string(part) + ",";
                    CHECK(seen.insert(key).second);
                }

                // Forward: every source-plus-rigging of small enough degree
                // lands inside the enumerated window, hitting it exactly once.
                long long produced = 0;
                const ExactRational off = ExactRational(L * L, 4) + ExactRational(L, 2);
                for (long long mc = 0; 2 * mc <= L; ++mc) {
                    const long long Lb = L - 2 * mc;
                    auto sb = min_degree(ms, Lb, r);
                    if (!sb) continue;
                    if (*sb + off > cutoff) continue;
                    for (const RiggedPath& pb : enumerate_paths(ms, Lb, r, cutoff - off)) {
                        const ExactRational slack_r = cutoff - off - path_degree(ms, pb);
                        if (slack_r < 0) continue;
                        const long long slack =
                            static_cast<long long>(boost::multiprecision::numerator(slack_r) /
                                                   boost::multiprecision::denominator(slack_r));
                        for (const Partition& lam : partitions_with(mc, slack)) {
                            const RiggedPath P = iota(mt, pb, lam);
                            CHECK(std::find(targets.begin(), targets.end(), P) != targets.end());
                            ++produced;
                        }
                    }
                }
                CHECK(produced == static_cast<long long>(targets.size()));
            }
    }
}

#pragma once

// Particle structure on rigged paths: blocks, left/right moves, the rigging
// partition extracted from a path, and the level-raising maps that organize
// every path as a particle configuration over a shorter path one level down.

#include "virapath/path_comb.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace virapath {

enum class BlockKind {
    MULTI,                    // two or more connected positions
    SINGLE_SIGMA1_BOUNDARY,   // lone position, sigma = 1, flanked 1,2,1 or p-1,p-2,p-1
    SINGLE_SIGMA0,            // lone position, sigma = 0, equal flanking heights
};

/// A maximal run [min, max] of positions joined by the contact relation
/// (four heights inside a ladder {h, h+1} and sigma_x + sigma_{x-1} = v(h))
/// that carries at least one particle. `particles` is the count m(B).
struct Block {
    long long min = 0;
    long long max = 0;
    BlockKind kind = BlockKind::MULTI;
    long long particles = 0;

    bool operator==(const Block&) const = default;
};

/// Weakly decreasing list of nonnegative integers; lam[j-1] is the rigging
/// of particle j (particles are numbered from the left, starting at 1).
using Partition = std::vector<long long>;

/// All blocks of an admissible path, ordered from the left (descending
/// positions: each block's min exceeds the next block's max). Throws
/// std::domain_error when the path is not admissible.
std::vector<Block> find_blocks(const ModelParams& m, const RiggedPath& P);

/// Total particle count m(P); always at most floor(L/2).
long long particle_count(const ModelParams& m, const RiggedPath& P);

/// Movable particles: i_plus/i_minus list the particle numbers that admit a
/// left/right move, and x_plus/x_minus map each such number to the position
/// the move acts on (the top of its block for left moves, the bottom for
/// right moves; right moves at position 1 are barred when sigma_0 = sigma_1 = 0).
struct MoveDomains {
    std::vector<long long> i_plus;
    std::vector<long long> i_minus;
    std::map<long long, long long> x_plus;
    std::map<long long, long long> x_minus;
};
MoveDomains move_domains(const ModelParams& m, const RiggedPath& P);

/// One move of particle j: dir = +1 raises the degree by 1, dir = -1 lowers
/// it by 1. Returns nullopt exactly when j admits no such move (this is not
/// an error). The result is again admissible, with the same length, the same
/// top height and the same particle count. dir outside {+1, -1} throws
/// std::domain_error; structural corruption of the result throws
/// std::logic_error.
std::optional<RiggedPath> apply_move(const ModelParams& m, const RiggedPath& P,
                                     long long j, int dir);

/// The rigging of P: lam[j-1] - lam[j] equals the largest l such that
/// particle j can move right l times from the original path (lam[m] - 0 for
/// the last particle). The result is a partition with particle_count parts.
Partition rigging(const ModelParams& m, const RiggedPath& P);

/// Particle-free embedding of a path at level t-1 = (p'-p)/p into level
/// t = p'/p: heights are kept, sigma_0 is kept, and each interior rigging
/// grows by 0, 1 or 2 according to the flanking heights (0 when they differ,
/// 1 when equal and interior, 2 when equal and extremal). Requires p' > 2p;
/// throws std::domain_error for an inadmissible source.
RiggedPath iota0(const ModelParams& params_t, const RiggedPath& pbar);

/// Adds |lam| particles to iota0(pbar): attaches the length-2m alternating
/// ground configuration below the embedded path and applies the left-move
/// word (m_m)^{lam_m} ... (m_1)^{lam_1}. The degree of the result is
/// d(pbar) + |lam| + L^2/4 + L/2 where L is the new length. Throws
/// std::domain_error for an invalid rigging or source, std::logic_error if
/// an intermediate move is undefined (which would falsify the construction).
RiggedPath iota(const ModelParams& params_t, const RiggedPath& pbar,
                const Partition& lam);

/// Inverse of iota: extracts the rigging, undoes it by right moves (largest
/// movable particle first), strips the ground configuration and removes the
/// level shift. Any mismatch along the way throws std::logic_error, since it
/// would falsify the particle decomposition; an inadmissible input throws
/// std::domain_error.
std::pair<RiggedPath, Partition> iota_inverse(const ModelParams& params_t,
                                              const RiggedPath& P);

}  // namespace virapath

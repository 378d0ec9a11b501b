#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ig/bitpack.hpp"
#include "ig/kernels.hpp"

namespace ig {

// One mined pattern, resolved against a vocabulary only at reporting time.
struct Pattern {
    PackedRow bits;
    std::uint32_t size = 0;  // popcount(bits), >= 1
    ClassTag class_tag = ClassTag::unlabeled;
    std::int64_t support = 0;
    std::int64_t score = 0;  // support * size^2
};

// Deduplicated candidate patterns of one class, in canonical bit order:
// every non-empty pairwise intersection plus every instance signature.
struct CandidateSet {
    ClassTag class_tag = ClassTag::unlabeled;
    PackedMatrix patterns;
    std::vector<std::int64_t> supports;  // empty until count_support
    std::vector<std::int64_t> scores;    // empty until score_patterns
    std::size_t source_rows = 0;
};

using ProgressFn =
    std::function<void(std::uint64_t pairs_done, std::uint64_t pairs_total,
                       std::uint64_t candidates_found)>;

// Drives pair_intersect_batch over all ordered pairs (i < j), deduplicates
// per worker and merges deterministically. Candidate content and order are
// independent of batch size and worker count.
CandidateSet enumerate_candidates(const PackedMatrix& rows, const KernelBackend& backend,
                                  const KernelConfig& config,
                                  const ProgressFn& progress = {});

// support[p] = number of class rows containing pattern p.
void count_support(CandidateSet& candidates, const PackedMatrix& rows,
                   const KernelConfig& config);

// score[p] = support[p] * size[p]^2, exact; throws ArithmeticError on
// overflow, as does a total score that does not fit in int64.
void score_patterns(CandidateSet& candidates);

// Checked sum of all scores; the trainer aborts if this overflows.
std::int64_t total_score(const std::vector<std::int64_t>& scores);

}  // namespace ig

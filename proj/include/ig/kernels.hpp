#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ig/bitpack.hpp"

namespace ig {

struct KernelConfig {
    std::size_t pair_batch = 8192;      // rows per broadcast-AND window
    std::size_t coverage_block = 4096;  // patterns per coverage batch
    std::size_t memory_budget_bytes = std::size_t{2} << 30;  // soft cap for batch sizing
    int threads = 0;                    // 0 = runtime default

    void validate() const;
};

// The three batched compute primitives behind mining, purification and
// inference. Implementations are pure functions of their inputs; any two
// backends must produce bit-for-bit identical results for all three, at
// every batch size and worker count.
class KernelBackend {
public:
    virtual ~KernelBackend() = default;

    virtual std::string_view name() const = 0;

    // out[t] = rows[left] AND rows[j_begin + t], word-wise, for
    // t in [0, j_end - j_begin). out must hold (j_end - j_begin) * K words.
    // The window must lie within (left, rows.n]; anything touching
    // [0, left] would duplicate unordered pairs and is rejected.
    virtual void pair_intersect_batch(const PackedMatrix& rows, std::size_t left,
                                      std::size_t j_begin, std::size_t j_end,
                                      std::int64_t* out) const = 0;

    // mask[p] = 1 iff some opponent row is a superset of pattern p.
    // Processed coverage_block patterns at a time; the block size never
    // changes results.
    virtual std::vector<std::uint8_t> coverage_any(const PackedMatrix& patterns,
                                                   const PackedMatrix& opponents,
                                                   std::size_t coverage_block) const = 0;

    // out[t] = sum of scores[p] over patterns p contained in test row t.
    // Exact int64 arithmetic; overflow raises ArithmeticError, never wraps.
    virtual std::vector<std::int64_t> fused_score(const PackedMatrix& patterns,
                                                  std::span<const std::int64_t> scores,
                                                  const PackedMatrix& tests) const = 0;
};

// Known backends: "reference" (sequential) and "parallel-cpu" (OpenMP).
// Unknown names raise ConfigError listing the available ones.
std::unique_ptr<KernelBackend> make_backend(std::string_view name, int threads = 0);
std::vector<std::string> backend_names();

}  // namespace ig

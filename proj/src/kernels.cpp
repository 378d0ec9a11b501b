#include "ig/kernels.hpp"

#include <atomic>
#include <stdexcept>

#include <omp.h>

#include "ig/errors.hpp"

namespace ig {

void KernelConfig::validate() const {
    if (pair_batch < 1) throw ConfigError("pair-batch must be >= 1");
    if (coverage_block < 1) throw ConfigError("coverage-block must be >= 1");
}

namespace {

void check_pair_window(const PackedMatrix& rows, std::size_t left, std::size_t j_begin,
                       std::size_t j_end) {
    if (left >= rows.rows()) {
        throw std::invalid_argument("pair_intersect_batch: left index out of range");
    }
    if (j_begin <= left) {
        throw std::invalid_argument(
            "pair_intersect_batch: window overlaps [0, left]; only ordered pairs left < j "
            "are valid");
    }
    if (j_end < j_begin || j_end > rows.rows()) {
        throw std::invalid_argument("pair_intersect_batch: window out of range");
    }
}

void check_same_shape(const PackedMatrix& a, const PackedMatrix& b, const char* what) {
    if (a.logical_len() != b.logical_len()) {
        throw std::invalid_argument(std::string(what) + ": logical length mismatch");
    }
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out)) {
        throw ArithmeticError("evidence score sum overflows int64");
    }
    return out;
}

// Both backends share these loops; the parallel one distributes them.

void pair_window_serial(const PackedMatrix& rows, std::size_t left, std::size_t j_begin,
                        std::size_t j_end, std::int64_t* out) {
    const std::size_t k = rows.word_count();
    const std::int64_t* lw = rows.row(left);
    for (std::size_t j = j_begin; j < j_end; ++j) {
        words::intersect(lw, rows.row(j), out + (j - j_begin) * k, k);
    }
}

inline bool covered_by_any(const std::int64_t* pattern, const PackedMatrix& opponents,
                           std::size_t k) {
    for (std::size_t t = 0; t < opponents.rows(); ++t) {
        if (words::is_subset(pattern, opponents.row(t), k)) return true;
    }
    return false;
}

inline std::int64_t score_one_test(const PackedMatrix& patterns,
                                   std::span<const std::int64_t> scores,
                                   const std::int64_t* test, std::size_t k) {
    std::int64_t acc = 0;
    for (std::size_t p = 0; p < patterns.rows(); ++p) {
        if (words::is_subset(patterns.row(p), test, k)) {
            acc = checked_add(acc, scores[p]);
        }
    }
    return acc;
}

class ReferenceBackend final : public KernelBackend {
public:
    std::string_view name() const override { return "reference"; }

    void pair_intersect_batch(const PackedMatrix& rows, std::size_t left, std::size_t j_begin,
                              std::size_t j_end, std::int64_t* out) const override {
        check_pair_window(rows, left, j_begin, j_end);
        pair_window_serial(rows, left, j_begin, j_end, out);
    }

    std::vector<std::uint8_t> coverage_any(const PackedMatrix& patterns,
                                           const PackedMatrix& opponents,
                                           std::size_t coverage_block) const override {
        check_same_shape(patterns, opponents, "coverage_any");
        if (coverage_block < 1) throw std::invalid_argument("coverage_block must be >= 1");
        const std::size_t k = patterns.word_count();
        std::vector<std::uint8_t> mask(patterns.rows(), 0);
        for (std::size_t begin = 0; begin < patterns.rows(); begin += coverage_block) {
            const std::size_t end = std::min(begin + coverage_block, patterns.rows());
            for (std::size_t p = begin; p < end; ++p) {
                mask[p] = covered_by_any(patterns.row(p), opponents, k) ? 1 : 0;
            }
        }
        return mask;
    }

    std::vector<std::int64_t> fused_score(const PackedMatrix& patterns,
                                          std::span<const std::int64_t> scores,
                                          const PackedMatrix& tests) const override {
        check_same_shape(patterns, tests, "fused_score");
        if (scores.size() != patterns.rows()) {
            throw std::invalid_argument("fused_score: scores length != pattern count");
        }
        const std::size_t k = patterns.word_count();
        std::vector<std::int64_t> out(tests.rows(), 0);
        for (std::size_t t = 0; t < tests.rows(); ++t) {
            out[t] = score_one_test(patterns, scores, tests.row(t), k);
        }
        return out;
    }
};

class ParallelCpuBackend final : public KernelBackend {
public:
    explicit ParallelCpuBackend(int threads) : threads_(threads) {}

    std::string_view name() const override { return "parallel-cpu"; }

    void pair_intersect_batch(const PackedMatrix& rows, std::size_t left, std::size_t j_begin,
                              std::size_t j_end, std::int64_t* out) const override {
        check_pair_window(rows, left, j_begin, j_end);
        const std::size_t k = rows.word_count();
        const std::int64_t* lw = rows.row(left);
        const std::size_t count = j_end - j_begin;
#pragma omp parallel for schedule(static) num_threads(resolve_threads())
        for (std::size_t t = 0; t < count; ++t) {
            words::intersect(lw, rows.row(j_begin + t), out + t * k, k);
        }
    }

    std::vector<std::uint8_t> coverage_any(const PackedMatrix& patterns,
                                           const PackedMatrix& opponents,
                                           std::size_t coverage_block) const override {
        check_same_shape(patterns, opponents, "coverage_any");
        if (coverage_block < 1) throw std::invalid_argument("coverage_block must be >= 1");
        const std::size_t k = patterns.word_count();
        std::vector<std::uint8_t> mask(patterns.rows(), 0);
        for (std::size_t begin = 0; begin < patterns.rows(); begin += coverage_block) {
            const std::size_t end = std::min(begin + coverage_block, patterns.rows());
#pragma omp parallel for schedule(dynamic, 16) num_threads(resolve_threads())
            for (std::size_t p = begin; p < end; ++p) {
                mask[p] = covered_by_any(patterns.row(p), opponents, k) ? 1 : 0;
            }
        }
        return mask;
    }

    std::vector<std::int64_t> fused_score(const PackedMatrix& patterns,
                                          std::span<const std::int64_t> scores,
                                          const PackedMatrix& tests) const override {
        check_same_shape(patterns, tests, "fused_score");
        if (scores.size() != patterns.rows()) {
            throw std::invalid_argument("fused_score: scores length != pattern count");
        }
        const std::size_t k = patterns.word_count();
        std::vector<std::int64_t> out(tests.rows(), 0);
        std::atomic<bool> overflow{false};
#pragma omp parallel for schedule(dynamic, 16) num_threads(resolve_threads())
        for (std::size_t t = 0; t < tests.rows(); ++t) {
            try {
                out[t] = score_one_test(patterns, scores, tests.row(t), k);
            } catch (const ArithmeticError&) {
                overflow.store(true, std::memory_order_relaxed);
            }
        }
        if (overflow.load()) {
            throw ArithmeticError("evidence score sum overflows int64");
        }
        return out;
    }

private:
    int resolve_threads() const { return threads_ > 0 ? threads_ : omp_get_max_threads(); }

    int threads_;
};

}  // namespace

std::unique_ptr<KernelBackend> make_backend(std::string_view name, int threads) {
    if (name == "reference") return std::make_unique<ReferenceBackend>();
    if (name == "parallel-cpu") return std::make_unique<ParallelCpuBackend>(threads);
    std::string known;
    for (const auto& n : backend_names()) known += " " + n;
    throw ConfigError("unknown backend '" + std::string(name) + "'; available:" + known);
}

std::vector<std::string> backend_names() { return {"reference", "parallel-cpu"}; }

}  // namespace ig

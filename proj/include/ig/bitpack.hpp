#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <span>
#include <vector>

namespace ig {

enum class ClassTag { attack, normal, unlabeled };

const char* to_string(ClassTag tag);

// Word-level primitives. Words hold 64 bit positions each; storage is
// two's-complement int64 but every operation below is defined on the raw
// bit pattern, so signed/unsigned views agree.
namespace words {

inline constexpr std::size_t bits_per_word = 64;

inline constexpr std::size_t count_for(std::uint32_t logical_len) {
    return (static_cast<std::size_t>(logical_len) + bits_per_word - 1) / bits_per_word;
}

inline void intersect(const std::int64_t* a, const std::int64_t* b, std::int64_t* out,
                      std::size_t k) {
    for (std::size_t w = 0; w < k; ++w) out[w] = a[w] & b[w];
}

inline int popcount(const std::int64_t* a, std::size_t k) {
    int n = 0;
    for (std::size_t w = 0; w < k; ++w) n += std::popcount(static_cast<std::uint64_t>(a[w]));
    return n;
}

// true iff (p & x) == p word-wise: the subset test of packed sets.
inline bool is_subset(const std::int64_t* p, const std::int64_t* x, std::size_t k) {
    for (std::size_t w = 0; w < k; ++w) {
        if ((p[w] & x[w]) != p[w]) return false;
    }
    return true;
}

inline bool any(const std::int64_t* a, std::size_t k) {
    for (std::size_t w = 0; w < k; ++w) {
        if (a[w] != 0) return true;
    }
    return false;
}

inline bool equal(const std::int64_t* a, const std::int64_t* b, std::size_t k) {
    for (std::size_t w = 0; w < k; ++w) {
        if (a[w] != b[w]) return false;
    }
    return true;
}

// Lexicographic on the word sequence viewed unsigned; the canonical order
// used for deterministic dedup merges and archive listings.
inline bool less(const std::int64_t* a, const std::int64_t* b, std::size_t k) {
    for (std::size_t w = 0; w < k; ++w) {
        auto ua = static_cast<std::uint64_t>(a[w]);
        auto ub = static_cast<std::uint64_t>(b[w]);
        if (ua != ub) return ua < ub;
    }
    return false;
}

inline std::uint64_t hash(const std::int64_t* a, std::size_t k) {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (std::size_t w = 0; w < k; ++w) {
        h ^= static_cast<std::uint64_t>(a[w]);
        h *= 0xff51afd7ed558ccdull;
        h ^= h >> 33;
    }
    return h;
}

}  // namespace words

// One packed token bitset. Padding bits at positions >= logical_len are
// always zero, which makes word-wise equality a valid subset test and the
// word sequence a canonical hash/equality key.
class PackedRow {
public:
    PackedRow() = default;
    PackedRow(std::span<const std::uint32_t> bit_indices, std::uint32_t logical_len);

    std::uint32_t logical_len() const { return logical_len_; }
    std::size_t word_count() const { return words_.size(); }
    std::span<const std::int64_t> word_span() const { return words_; }
    const std::int64_t* data() const { return words_.data(); }

    bool test(std::uint32_t bit) const;
    std::vector<std::uint32_t> to_indices() const;

    friend bool operator==(const PackedRow& a, const PackedRow& b) = default;

private:
    friend class PackedMatrix;
    friend PackedRow intersect(const PackedRow& a, const PackedRow& b);
    std::vector<std::int64_t> words_;
    std::uint32_t logical_len_ = 0;
};

PackedRow pack(std::span<const std::uint32_t> bit_indices, std::uint32_t logical_len);
PackedRow intersect(const PackedRow& a, const PackedRow& b);
int popcount(const PackedRow& a);
bool is_subset(const PackedRow& p, const PackedRow& x);

// Class-contiguous n x K block of packed rows. Immutable once filled;
// shared read-only across workers.
class PackedMatrix {
public:
    PackedMatrix() = default;
    PackedMatrix(std::uint32_t logical_len, ClassTag tag);

    void append(const PackedRow& row);
    void append_words(const std::int64_t* row_words);
    void reserve_rows(std::size_t n);

    std::size_t rows() const { return n_; }
    std::uint32_t logical_len() const { return logical_len_; }
    std::size_t word_count() const { return k_; }
    ClassTag class_tag() const { return tag_; }

    const std::int64_t* row(std::size_t i) const { return words_.data() + i * k_; }
    std::span<const std::int64_t> row_span(std::size_t i) const { return {row(i), k_}; }
    PackedRow row_copy(std::size_t i) const;
    const std::int64_t* data() const { return words_.data(); }

    friend bool operator==(const PackedMatrix& a, const PackedMatrix& b) = default;

private:
    std::vector<std::int64_t> words_;
    std::size_t n_ = 0;
    std::size_t k_ = 0;
    std::uint32_t logical_len_ = 0;
    ClassTag tag_ = ClassTag::unlabeled;
};

}  // namespace ig

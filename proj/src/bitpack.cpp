#include "ig/bitpack.hpp"

#include <stdexcept>
#include <string>

namespace ig {

const char* to_string(ClassTag tag) {
    switch (tag) {
        case ClassTag::attack: return "attack";
        case ClassTag::normal: return "normal";
        case ClassTag::unlabeled: return "unlabeled";
    }
    return "?";
}

PackedRow::PackedRow(std::span<const std::uint32_t> bit_indices, std::uint32_t logical_len)
    : words_(words::count_for(logical_len), 0), logical_len_(logical_len) {
    for (std::uint32_t idx : bit_indices) {
        if (idx >= logical_len_) {
            throw std::out_of_range("bit index " + std::to_string(idx) +
                                    " out of range for logical length " +
                                    std::to_string(logical_len_));
        }
        words_[idx / words::bits_per_word] |=
            static_cast<std::int64_t>(std::uint64_t{1} << (idx % words::bits_per_word));
    }
}

bool PackedRow::test(std::uint32_t bit) const {
    if (bit >= logical_len_) return false;
    return (static_cast<std::uint64_t>(words_[bit / words::bits_per_word]) >>
            (bit % words::bits_per_word)) &
           1u;
}

std::vector<std::uint32_t> PackedRow::to_indices() const {
    std::vector<std::uint32_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        auto word = static_cast<std::uint64_t>(words_[w]);
        while (word != 0) {
            int bit = std::countr_zero(word);
            out.push_back(static_cast<std::uint32_t>(w * words::bits_per_word + bit));
            word &= word - 1;
        }
    }
    return out;
}

PackedRow pack(std::span<const std::uint32_t> bit_indices, std::uint32_t logical_len) {
    return PackedRow(bit_indices, logical_len);
}

static void check_same_len(std::uint32_t a, std::uint32_t b) {
    if (a != b) {
        throw std::invalid_argument("logical length mismatch: " + std::to_string(a) + " vs " +
                                    std::to_string(b));
    }
}

PackedRow intersect(const PackedRow& a, const PackedRow& b) {
    check_same_len(a.logical_len(), b.logical_len());
    PackedRow out = a;
    for (std::size_t w = 0; w < out.words_.size(); ++w) out.words_[w] &= b.words_[w];
    return out;
}

int popcount(const PackedRow& a) { return words::popcount(a.data(), a.word_count()); }

bool is_subset(const PackedRow& p, const PackedRow& x) {
    check_same_len(p.logical_len(), x.logical_len());
    return words::is_subset(p.data(), x.data(), p.word_count());
}

PackedMatrix::PackedMatrix(std::uint32_t logical_len, ClassTag tag)
    : k_(words::count_for(logical_len)), logical_len_(logical_len), tag_(tag) {}

void PackedMatrix::append(const PackedRow& row) {
    check_same_len(row.logical_len(), logical_len_);
    words_.insert(words_.end(), row.words_.begin(), row.words_.end());
    ++n_;
}

void PackedMatrix::append_words(const std::int64_t* row_words) {
    words_.insert(words_.end(), row_words, row_words + k_);
    ++n_;
}

void PackedMatrix::reserve_rows(std::size_t n) { words_.reserve(n * k_); }

PackedRow PackedMatrix::row_copy(std::size_t i) const {
    PackedRow r;
    r.logical_len_ = logical_len_;
    r.words_.assign(row(i), row(i) + k_);
    return r;
}

}  // namespace ig

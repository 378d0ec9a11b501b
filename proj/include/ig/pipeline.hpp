#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ig/bitpack.hpp"
#include "ig/csv.hpp"

namespace ig {

enum class ColumnKind { numeric, categorical };

struct ColumnSchema {
    std::string name;
    ColumnKind kind = ColumnKind::categorical;
    double mean = 0.0;    // valid iff kind == numeric
    double stddev = 0.0;  // population convention, >= 0
};

struct DatasetSchema {
    std::vector<ColumnSchema> columns;  // one per table column, label included
    std::size_t label_index = 0;
    std::string label_column;
    // Attack mapping: if attack_values is non-empty a label is attack iff
    // listed there; otherwise any label != "normal" (or not listed in
    // normal_values when given) is attack.
    std::vector<std::string> attack_values;
    std::vector<std::string> normal_values;
    int decimals = 2;

    bool is_attack(std::string_view label) const;
};

// Bijection between "columnIndex:value" tokens and bit positions.
class TokenVocabulary {
public:
    TokenVocabulary() = default;
    explicit TokenVocabulary(std::vector<std::string> sorted_tokens);

    static TokenVocabulary build(const std::vector<std::vector<std::string>>& train_token_sets);

    std::optional<std::uint32_t> find(std::string_view token) const;
    const std::string& token(std::uint32_t bit) const { return bit_to_token_.at(bit); }
    std::uint32_t size() const { return static_cast<std::uint32_t>(bit_to_token_.size()); }
    const std::vector<std::string>& tokens() const { return bit_to_token_; }

private:
    std::vector<std::string> bit_to_token_;
    std::unordered_map<std::string, std::uint32_t> token_to_bit_;
};

// Fixed-point rendering of a z-score: half-away-from-zero at `decimals`
// places, "-0.00" collapsed to "0.00".
std::string format_zscore(double z, int decimals);

DatasetSchema infer_schema(const Table& table, const std::string& label_column,
                           const std::vector<std::string>& attack_values,
                           const std::vector<std::string>& normal_values, int decimals);

// One token per non-label column, in column order. row_index is only used
// in error messages.
std::vector<std::string> tokenize_row(const std::vector<std::string>& row,
                                      const DatasetSchema& schema, std::size_t row_index = 0);

struct EncodedInstance {
    std::vector<std::uint32_t> bits;  // sorted
    bool attack = false;
    std::size_t source_row = 0;  // 0-based data row in the input table
};

struct Contradiction {
    std::vector<std::uint32_t> bits;
    std::size_t attack_count = 0;
    std::size_t normal_count = 0;
};

struct FilterReport {
    std::size_t removed_attack = 0;
    std::size_t removed_normal = 0;
    std::vector<Contradiction> contradictions;
    std::vector<std::size_t> removed_rows;  // source rows, ascending
};

// Drops every instance whose exact bit signature occurs under both labels.
// Duplicates within one class are kept (legitimate support).
FilterReport anti_contradiction_filter(std::vector<EncodedInstance>& instances);

struct TrainingEncoding {
    TokenVocabulary vocabulary;
    PackedMatrix attack;
    PackedMatrix normal;
    FilterReport filter_report;
};

// tokenize -> build vocabulary -> anti-contradiction filter -> pack.
// Fatal if either class is empty before or after filtering.
TrainingEncoding encode_training(const Table& table, const DatasetSchema& schema);

// Test-time encoding with a fixed vocabulary; tokens absent from it are
// dropped. Rows keep file order; the matrix is unlabeled.
PackedMatrix encode_rows(const Table& table, const DatasetSchema& schema,
                         const TokenVocabulary& vocabulary);

// Attack/normal truth flags from the label column.
std::vector<std::uint8_t> truth_labels(const Table& table, const DatasetSchema& schema);

// Throws DataError with a column diff summary when the header does not
// match the schema.
void check_schema_compatible(const Table& table, const DatasetSchema& schema);

}  // namespace ig

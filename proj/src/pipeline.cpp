#include "ig/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "ig/errors.hpp"

namespace ig {

namespace {

std::optional<double> parse_double_strict(std::string_view s) {
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    if (!std::isfinite(v)) return std::nullopt;
    return v;
}

std::int64_t pow10_int(int p) {
    std::int64_t s = 1;
    for (int i = 0; i < p; ++i) s *= 10;
    return s;
}

}  // namespace

bool DatasetSchema::is_attack(std::string_view label) const {
    auto contains = [&](const std::vector<std::string>& set) {
        return std::find(set.begin(), set.end(), label) != set.end();
    };
    if (!attack_values.empty()) {
        if (contains(attack_values)) return true;
        if (normal_values.empty() || contains(normal_values)) return false;
        throw DataError("label value '" + std::string(label) +
                        "' not covered by attack/normal mapping");
    }
    if (!normal_values.empty()) {
        return !contains(normal_values);
    }
    return label != "normal";
}

TokenVocabulary::TokenVocabulary(std::vector<std::string> sorted_tokens)
    : bit_to_token_(std::move(sorted_tokens)) {
    token_to_bit_.reserve(bit_to_token_.size());
    for (std::uint32_t i = 0; i < bit_to_token_.size(); ++i) {
        token_to_bit_.emplace(bit_to_token_[i], i);
    }
    if (token_to_bit_.size() != bit_to_token_.size()) {
        throw DataError("vocabulary contains duplicate tokens");
    }
}

TokenVocabulary TokenVocabulary::build(
    const std::vector<std::vector<std::string>>& train_token_sets) {
    std::set<std::string> distinct;
    for (const auto& row : train_token_sets) {
        distinct.insert(row.begin(), row.end());
    }
    return TokenVocabulary(std::vector<std::string>(distinct.begin(), distinct.end()));
}

std::optional<std::uint32_t> TokenVocabulary::find(std::string_view token) const {
    auto it = token_to_bit_.find(std::string(token));
    if (it == token_to_bit_.end()) return std::nullopt;
    return it->second;
}

std::string format_zscore(double z, int decimals) {
    const double scale = std::pow(10.0, decimals);
    double scaled = z * scale;
    // Near-overflow z-scores are clamped; the token stays deterministic.
    constexpr double cap = 9.0e18;
    std::int64_t units;
    if (std::fabs(scaled) >= cap) {
        units = scaled < 0 ? -static_cast<std::int64_t>(cap) : static_cast<std::int64_t>(cap);
    } else {
        units = std::llround(scaled);  // halfway cases away from zero
    }
    const std::int64_t denom = pow10_int(decimals);
    const bool negative = units < 0;
    const std::uint64_t mag = negative ? -static_cast<std::uint64_t>(units)
                                       : static_cast<std::uint64_t>(units);
    const std::uint64_t whole = mag / static_cast<std::uint64_t>(denom);
    const std::uint64_t frac = mag % static_cast<std::uint64_t>(denom);

    std::string out;
    if (negative && mag != 0) out += '-';  // sign-normalized zero
    out += std::to_string(whole);
    if (decimals > 0) {
        std::string f = std::to_string(frac);
        out += '.';
        out.append(static_cast<std::size_t>(decimals) - f.size(), '0');
        out += f;
    }
    return out;
}

DatasetSchema infer_schema(const Table& table, const std::string& label_column,
                           const std::vector<std::string>& attack_values,
                           const std::vector<std::string>& normal_values, int decimals) {
    if (table.rows.empty()) {
        throw DataError("empty table: no data rows to train on");
    }
    if (decimals < 0 || decimals > 12) {
        throw ConfigError("decimals must be in [0, 12], got " + std::to_string(decimals));
    }
    auto it = std::find(table.header.begin(), table.header.end(), label_column);
    if (it == table.header.end()) {
        throw ConfigError("label column '" + label_column + "' not found in header");
    }

    DatasetSchema schema;
    schema.label_index = static_cast<std::size_t>(it - table.header.begin());
    schema.label_column = label_column;
    schema.attack_values = attack_values;
    schema.normal_values = normal_values;
    schema.decimals = decimals;
    schema.columns.resize(table.columns());

    for (std::size_t j = 0; j < table.columns(); ++j) {
        ColumnSchema& col = schema.columns[j];
        col.name = table.header[j];
        if (j == schema.label_index) continue;

        bool numeric = true;
        std::size_t parsed = 0;
        double sum = 0.0;
        for (const auto& row : table.rows) {
            const std::string& cell = row[j];
            if (cell.empty()) continue;
            auto v = parse_double_strict(cell);
            if (!v) {
                numeric = false;
                break;
            }
            sum += *v;
            ++parsed;
        }
        if (!numeric || parsed == 0) {
            col.kind = ColumnKind::categorical;
            continue;
        }
        col.kind = ColumnKind::numeric;
        col.mean = sum / static_cast<double>(parsed);
        double ss = 0.0;
        for (const auto& row : table.rows) {
            const std::string& cell = row[j];
            if (cell.empty()) continue;
            double d = *parse_double_strict(cell) - col.mean;
            ss += d * d;
        }
        col.stddev = std::sqrt(ss / static_cast<double>(parsed));
    }

    // Every training label must classify cleanly.
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        schema.is_attack(table.rows[r][schema.label_index]);
    }
    return schema;
}

std::vector<std::string> tokenize_row(const std::vector<std::string>& row,
                                      const DatasetSchema& schema, std::size_t row_index) {
    if (row.size() != schema.columns.size()) {
        throw DataError("row " + std::to_string(row_index) + ": expected " +
                        std::to_string(schema.columns.size()) + " columns, got " +
                        std::to_string(row.size()));
    }
    std::vector<std::string> tokens;
    tokens.reserve(schema.columns.size() - 1);
    for (std::size_t j = 0; j < schema.columns.size(); ++j) {
        if (j == schema.label_index) continue;
        const ColumnSchema& col = schema.columns[j];
        const std::string& cell = row[j];
        std::string value;
        if (cell.empty()) {
            // empty cells become the bare "j:" token
        } else if (col.kind == ColumnKind::numeric) {
            auto v = parse_double_strict(cell);
            if (!v) {
                throw DataError("row " + std::to_string(row_index) + ", column " +
                                std::to_string(j) + " (" + col.name + "): cannot parse '" +
                                cell + "' as a number");
            }
            double z = col.stddev == 0.0 ? 0.0 : (*v - col.mean) / col.stddev;
            value = format_zscore(z, schema.decimals);
        } else {
            value = cell;
        }
        tokens.push_back(std::to_string(j) + ":" + value);
    }
    return tokens;
}

FilterReport anti_contradiction_filter(std::vector<EncodedInstance>& instances) {
    std::map<std::vector<std::uint32_t>, std::pair<std::size_t, std::size_t>> by_signature;
    for (const auto& inst : instances) {
        auto& counts = by_signature[inst.bits];
        (inst.attack ? counts.first : counts.second) += 1;
    }

    FilterReport report;
    for (auto& [bits, counts] : by_signature) {
        if (counts.first > 0 && counts.second > 0) {
            report.contradictions.push_back({bits, counts.first, counts.second});
        }
    }
    if (report.contradictions.empty()) return report;

    std::set<std::vector<std::uint32_t>> bad;
    for (const auto& c : report.contradictions) bad.insert(c.bits);

    std::vector<EncodedInstance> kept;
    kept.reserve(instances.size());
    for (auto& inst : instances) {
        if (bad.count(inst.bits)) {
            (inst.attack ? report.removed_attack : report.removed_normal) += 1;
            report.removed_rows.push_back(inst.source_row);
        } else {
            kept.push_back(std::move(inst));
        }
    }
    std::sort(report.removed_rows.begin(), report.removed_rows.end());
    instances = std::move(kept);
    return report;
}

namespace {

std::vector<EncodedInstance> tokenize_and_encode(const Table& table, const DatasetSchema& schema,
                                                 const TokenVocabulary& vocab,
                                                 bool with_labels) {
    std::vector<EncodedInstance> out(table.rows.size());
    std::string first_error;
    bool failed = false;
#pragma omp parallel for schedule(static)
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        try {
            auto tokens = tokenize_row(table.rows[r], schema, r);
            EncodedInstance& inst = out[r];
            inst.source_row = r;
            inst.attack = with_labels && schema.is_attack(table.rows[r][schema.label_index]);
            inst.bits.reserve(tokens.size());
            for (const auto& t : tokens) {
                if (auto bit = vocab.find(t)) inst.bits.push_back(*bit);
            }
            std::sort(inst.bits.begin(), inst.bits.end());
        } catch (const std::exception& e) {
#pragma omp critical
            {
                if (!failed) {
                    failed = true;
                    first_error = e.what();
                }
            }
        }
    }
    if (failed) throw DataError(first_error);
    return out;
}

}  // namespace

TrainingEncoding encode_training(const Table& table, const DatasetSchema& schema) {
    std::vector<std::vector<std::string>> token_sets(table.rows.size());
    std::string first_error;
    bool failed = false;
#pragma omp parallel for schedule(static)
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        try {
            token_sets[r] = tokenize_row(table.rows[r], schema, r);
        } catch (const std::exception& e) {
#pragma omp critical
            {
                if (!failed) {
                    failed = true;
                    first_error = e.what();
                }
            }
        }
    }
    if (failed) throw DataError(first_error);

    TrainingEncoding enc;
    enc.vocabulary = TokenVocabulary::build(token_sets);

    std::vector<EncodedInstance> instances(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        EncodedInstance& inst = instances[r];
        inst.source_row = r;
        inst.attack = schema.is_attack(table.rows[r][schema.label_index]);
        inst.bits.reserve(token_sets[r].size());
        for (const auto& t : token_sets[r]) inst.bits.push_back(*enc.vocabulary.find(t));
        std::sort(inst.bits.begin(), inst.bits.end());
    }

    auto count_class = [&](bool attack) {
        return std::count_if(instances.begin(), instances.end(),
                             [&](const EncodedInstance& i) { return i.attack == attack; });
    };
    if (count_class(true) == 0 || count_class(false) == 0) {
        throw DataError("training data must contain both attack and normal instances");
    }

    enc.filter_report = anti_contradiction_filter(instances);

    if (count_class(true) == 0 || count_class(false) == 0) {
        throw DataError("anti-contradiction filtering emptied a class; training impossible");
    }

    const std::uint32_t L = enc.vocabulary.size();
    enc.attack = PackedMatrix(L, ClassTag::attack);
    enc.normal = PackedMatrix(L, ClassTag::normal);
    for (const auto& inst : instances) {
        PackedRow row(inst.bits, L);
        (inst.attack ? enc.attack : enc.normal).append(row);
    }
    return enc;
}

PackedMatrix encode_rows(const Table& table, const DatasetSchema& schema,
                         const TokenVocabulary& vocabulary) {
    auto instances = tokenize_and_encode(table, schema, vocabulary, /*with_labels=*/false);
    PackedMatrix out(vocabulary.size(), ClassTag::unlabeled);
    out.reserve_rows(instances.size());
    for (const auto& inst : instances) {
        out.append(PackedRow(inst.bits, vocabulary.size()));
    }
    return out;
}

std::vector<std::uint8_t> truth_labels(const Table& table, const DatasetSchema& schema) {
    std::vector<std::uint8_t> out(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        out[r] = schema.is_attack(table.rows[r][schema.label_index]) ? 1 : 0;
    }
    return out;
}

void check_schema_compatible(const Table& table, const DatasetSchema& schema) {
    if (table.header.size() == schema.columns.size()) {
        bool same = true;
        for (std::size_t j = 0; j < schema.columns.size(); ++j) {
            if (table.header[j] != schema.columns[j].name) {
                same = false;
                break;
            }
        }
        if (same) return;
    }
    std::string diff = "input columns do not match the model schema;";
    std::set<std::string> have(table.header.begin(), table.header.end());
    std::set<std::string> want;
    for (const auto& c : schema.columns) want.insert(c.name);
    std::string missing, extra;
    for (const auto& w : want) {
        if (!have.count(w)) missing += " " + w;
    }
    for (const auto& h : have) {
        if (!want.count(h)) extra += " " + h;
    }
    if (!missing.empty()) diff += " missing:" + missing + ";";
    if (!extra.empty()) diff += " unexpected:" + extra + ";";
    if (missing.empty() && extra.empty()) diff += " columns are reordered;";
    diff += " expected " + std::to_string(schema.columns.size()) + " columns, got " +
            std::to_string(table.header.size());
    throw DataError(diff);
}

}  // namespace ig

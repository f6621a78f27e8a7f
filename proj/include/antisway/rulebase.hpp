#pragma once

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace antisway {

/// Error raised by parse_rulebase for a structurally invalid document.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Complete rule table: grid[i][j] is the index into out_labels of the
/// consequent fired when input terms (row i, column j) are active.
struct RuleBase {
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    std::vector<std::string> out_labels;
    std::vector<std::vector<int>> grid;

    std::size_t rows() const noexcept { return row_labels.size(); }
    std::size_t cols() const noexcept { return col_labels.size(); }
    std::size_t outputs() const noexcept { return out_labels.size(); }
    int out_index(std::size_t i, std::size_t j) const { return grid[i][j]; }

    bool operator==(const RuleBase&) const = default;
};

/// The 5x5 anti-sway composition table over {NB,NM,Z,PM,PB} inputs with
/// the 7-term output {NB,NM,NS,Z,PS,PM,PB} ordered by increasing signed
/// control amplitude.
inline RuleBase table_i() {
    RuleBase rb;
    rb.row_labels = {"NB", "NM", "Z", "PM", "PB"};
    rb.col_labels = {"NB", "NM", "Z", "PM", "PB"};
    rb.out_labels = {"NB", "NM", "NS", "Z", "PS", "PM", "PB"};
    rb.grid = {
        {0, 0, 1, 2, 3},  // NB: NB NB NM NS Z
        {0, 1, 2, 3, 4},  // NM: NB NM NS Z  PS
        {1, 2, 3, 4, 5},  // Z : NM NS Z  PS PM
        {2, 3, 4, 5, 6},  // PM: NS Z  PS PM PB
        {3, 4, 5, 6, 6},  // PB: Z  PS PM PB PB
    };
    return rb;
}

/// 3x3 table generated from the sign principles: equal input signs push in
/// that direction, opposite or zero signs command no action.
inline RuleBase principles_3x3() {
    RuleBase rb;
    rb.row_labels = {"N", "Z", "P"};
    rb.col_labels = {"N", "Z", "P"};
    rb.out_labels = {"N", "Z", "P"};
    rb.grid = {
        {0, 0, 1},
        {0, 1, 2},
        {1, 2, 2},
    };
    return rb;
}

/// True when cells mirrored through the table center map to output terms
/// mirrored about the middle output term.
inline bool is_antisymmetric(const RuleBase& rb) {
    const std::size_t n = rb.rows(), m = rb.cols();
    const int top = static_cast<int>(rb.outputs()) - 1;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (rb.grid[i][j] + rb.grid[n - 1 - i][m - 1 - j] != top) {
                return false;
            }
        }
    }
    return true;
}

/// True when output indices are nondecreasing along every row and column.
inline bool is_row_col_monotone(const RuleBase& rb) {
    for (std::size_t i = 0; i < rb.rows(); ++i) {
        for (std::size_t j = 0; j + 1 < rb.cols(); ++j) {
            if (rb.grid[i][j] > rb.grid[i][j + 1]) return false;
        }
    }
    for (std::size_t j = 0; j < rb.cols(); ++j) {
        for (std::size_t i = 0; i + 1 < rb.rows(); ++i) {
            if (rb.grid[i][j] > rb.grid[i + 1][j]) return false;
        }
    }
    return true;
}

/// Text form: first line is the comma-separated column labels, then one
/// line per row as "row_label,out,out,...".
inline std::string serialize_rulebase(const RuleBase& rb) {
    std::ostringstream os;
    for (std::size_t j = 0; j < rb.cols(); ++j) {
        if (j > 0) os << ',';
        os << rb.col_labels[j];
    }
    os << '\n';
    for (std::size_t i = 0; i < rb.rows(); ++i) {
        os << rb.row_labels[i];
        for (std::size_t j = 0; j < rb.cols(); ++j) {
            os << ',' << rb.out_labels[static_cast<std::size_t>(rb.grid[i][j])];
        }
        os << '\n';
    }
    return os.str();
}

namespace detail {

inline std::string trim(std::string_view s) {
    const auto* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

inline void check_no_duplicates(const std::vector<std::string>& labels,
                                const char* what) {
    std::unordered_set<std::string_view> seen;
    for (const auto& l : labels) {
        if (!seen.insert(l).second) {
            throw ParseError(std::string("duplicate ") + what + " label '" +
                             l + "'");
        }
    }
}

}  // namespace detail

/// Parses the rule-table text format against the declared label sets.
/// Layout defects (ragged rows, duplicate or misordered labels, unknown
/// output terms) throw ParseError naming the offender; style defects
/// (broken antisymmetry or monotonicity) only append to `warnings`.
inline RuleBase parse_rulebase(std::string_view text,
                               const std::vector<std::string>& row_labels,
                               const std::vector<std::string>& col_labels,
                               const std::vector<std::string>& out_labels,
                               std::vector<std::string>* warnings = nullptr) {
    std::vector<std::string> lines;
    {
        std::size_t start = 0;
        while (start <= text.size()) {
            const auto nl = text.find('\n', start);
            const auto raw = nl == std::string_view::npos
                                 ? text.substr(start)
                                 : text.substr(start, nl - start);
            if (!detail::trim(raw).empty()) lines.emplace_back(raw);
            if (nl == std::string_view::npos) break;
            start = nl + 1;
        }
    }
    if (lines.empty()) throw ParseError("empty rule table document");

    const auto header = detail::split_fields(lines[0]);
    detail::check_no_duplicates(header, "column");
    if (header.size() != col_labels.size()) {
        throw ParseError("expected " + std::to_string(col_labels.size()) +
                         " column labels, found " +
                         std::to_string(header.size()));
    }
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (header[j] != col_labels[j]) {
            throw ParseError("column label '" + header[j] + "' at position " +
                             std::to_string(j) + " does not match declared '" +
                             col_labels[j] + "'");
        }
    }

    if (lines.size() - 1 != row_labels.size()) {
        throw ParseError("expected " + std::to_string(row_labels.size()) +
                         " rows, found " + std::to_string(lines.size() - 1));
    }

    RuleBase rb;
    rb.row_labels = row_labels;
    rb.col_labels = col_labels;
    rb.out_labels = out_labels;
    rb.grid.assign(row_labels.size(),
                   std::vector<int>(col_labels.size(), 0));

    std::vector<std::string> seen_rows;
    for (std::size_t i = 0; i < row_labels.size(); ++i) {
        const auto fields = detail::split_fields(lines[i + 1]);
        if (fields.empty()) throw ParseError("blank rule row");
        const auto& row = fields[0];
        seen_rows.push_back(row);
        detail::check_no_duplicates(seen_rows, "row");
        if (row != row_labels[i]) {
            throw ParseError("row label '" + row + "' at row " +
                             std::to_string(i) + " does not match declared '" +
                             row_labels[i] + "'");
        }
        if (fields.size() != col_labels.size() + 1) {
            throw ParseError("row '" + row + "' has " +
                             std::to_string(fields.size() - 1) +
                             " cells, expected " +
                             std::to_string(col_labels.size()));
        }
        for (std::size_t j = 0; j < col_labels.size(); ++j) {
            const auto& cell = fields[j + 1];
            const auto it =
                std::find(out_labels.begin(), out_labels.end(), cell);
            if (it == out_labels.end()) {
                throw ParseError("unknown output label '" + cell +
                                 "' in cell (" + row + ", " + col_labels[j] +
                                 ")");
            }
            rb.grid[i][j] = static_cast<int>(it - out_labels.begin());
        }
    }

    if (warnings != nullptr) {
        if (!is_antisymmetric(rb)) {
            warnings->push_back("rule table is not antisymmetric about the "
                                "middle output term");
        }
        if (!is_row_col_monotone(rb)) {
            warnings->push_back("rule table outputs are not monotone along "
                                "rows and columns");
        }
    }
    return rb;
}

}  // namespace antisway

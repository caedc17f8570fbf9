#include <algorithm>
#include <set>

#include "chadkg/csv.hpp"
#include "chadkg/materialiser/materialiser.hpp"

namespace chadkg::mat {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::optional<size_t> Table::column_index(const std::string& col) const {
    auto it = std::find(header.begin(), header.end(), col);
    if (it == header.end()) return std::nullopt;
    return static_cast<size_t>(it - header.begin());
}

Table table_from_csv(std::string_view text, const std::string& name) {
    auto records = csv::read_records(text);
    if (records.empty()) throw TableError(name + ": empty input, no header row");

    Table t;
    t.name = name;
    std::set<std::string> seen;
    for (const std::string& raw : records[0]) {
        std::string col = trim(raw);
        if (col.empty()) throw TableError(name + ": empty column name in header");
        if (!seen.insert(col).second)
            throw TableError(name + ": duplicate header column '" + col + "'");
        t.header.push_back(std::move(col));
    }
    if (t.header.empty()) throw TableError(name + ": zero columns");

    for (size_t r = 1; r < records.size(); ++r) {
        std::vector<std::optional<std::string>> row;
        row.reserve(t.header.size());
        for (size_t c = 0; c < t.header.size(); ++c) {
            if (c >= records[r].size()) {
                row.push_back(std::nullopt);
                continue;
            }
            std::string cell = trim(records[r][c]);
            if (cell.empty()) row.push_back(std::nullopt);
            else row.push_back(std::move(cell));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table load_table(const std::string& path, const std::string& name) {
    return table_from_csv(csv::read_file(path), name);
}

AlignResult align_table(Table t, const std::vector<std::string>& expected_columns) {
    AlignResult result{std::move(t), {}};
    std::set<std::string> expected(expected_columns.begin(), expected_columns.end());
    std::set<std::string> present(result.table.header.begin(), result.table.header.end());

    for (const std::string& col : expected_columns) {
        if (present.contains(col)) continue;
        result.table.header.push_back(col);
        for (auto& row : result.table.rows) row.push_back(std::nullopt);
        result.warnings.push_back(
            {std::nullopt, "table-alignment",
             "expected column '" + col + "' is missing; added as all-null"});
    }
    for (const std::string& col : result.table.header) {
        if (!expected.contains(col))
            result.warnings.push_back(
                {std::nullopt, "table-alignment",
                 "column '" + col + "' is not used by the mapping; retained"});
    }
    return result;
}

}  // namespace chadkg::mat

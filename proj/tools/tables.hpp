#pragma once

// Regeneration of the reference result tables with embedded values
// and a pass/fail verdict per row.

#include "borel/resum.hpp"

#include <string>
#include <vector>

namespace borel::tables {

struct Row {
    std::vector<std::string> cells;
    bool pass = true;
    std::string note;
};

// A verdict spanning several rows, e.g. monotone error growth.
struct Check {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct Table {
    std::string name;
    std::vector<std::string> header;
    std::vector<Row> rows;
    std::vector<Check> checks;

    bool all_pass() const;
};

/// |x - ref| within half a unit in the `figures`-th significant figure of ref.
bool matches_figures(const BigReal& x, const BigReal& ref, int figures);

const std::vector<std::string>& table_names();

/// Throws std::invalid_argument for an unknown name.
Table run_table(const std::string& name, const resum::ResumConfig& cfg);

Table table_g(const resum::ResumConfig& cfg);
Table table_h(const resum::ResumConfig& cfg);
Table table_einf(const resum::ResumConfig& cfg);
Table table_hshifted(const resum::ResumConfig& cfg);
Table table_error(const resum::ResumConfig& cfg);

std::string to_csv(const Table& t);
std::string to_json(const Table& t);

}  // namespace borel::tables

#pragma once

#include <string>
#include <vector>

namespace halite {

// Minimal CSV support: comma delimiter, double quotes for fields containing
// commas/quotes/newlines, UTF-8 passed through, dot decimal separator.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Column index by header name, -1 if absent.
    int column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);
CsvTable parse_csv(const std::string& text);

std::string csv_escape(const std::string& field);

}  // namespace halite

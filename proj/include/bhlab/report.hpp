#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bhlab/numeric.hpp"

namespace bhlab {

// CSV uses ',' delimiter and '.' decimal point, no locale.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> columns) : columns_(std::move(columns)) {
        std::ostringstream os;
        for (size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
        lines_.push_back(os.str());
    }

    void row(const std::vector<std::string>& cells) {
        if (cells.size() != columns_.size()) throw ConfigError("csv row arity mismatch");
        std::ostringstream os;
        for (size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
        lines_.push_back(os.str());
    }

    std::string str() const {
        std::string out;
        for (auto& l : lines_) {
            out += l;
            out += '\n';
        }
        return out;
    }

    void write(const std::string& path) const {
        std::ofstream f(path);
        if (!f) throw ConfigError("cannot open output file: " + path);
        f << str();
    }

private:
    std::vector<std::string> columns_;
    std::vector<std::string> lines_;
};

std::string format_double(double v);

} // namespace bhlab

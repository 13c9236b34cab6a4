#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "lsii/cli.hpp"
#include "lsii/errors.hpp"

namespace lsii::cli {

namespace {

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(trim(field));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::optional<double> to_number(const std::string& s) {
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    const char* begin = s.data();
    if (*begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

}  // namespace

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& f : split(text)) {
        const auto v = to_number(f);
        if (!v) throw ParseError("cannot parse '" + f + "' as a number", 0);
        out.push_back(*v);
    }
    if (out.empty()) throw ParseError("empty list", 0);
    return out;
}

Bounds parse_bounds(const std::string& text) {
    const auto v = parse_list(text);
    if (v.size() != 2) throw ParseError("bounds need exactly two values 'lo,hi'", 0);
    if (!(v[0] < v[1])) throw ParseError("bounds need lo < hi", 0);
    return Bounds{v[0], v[1]};
}

InputData parse_input_csv(const std::string& text, const std::string& column,
                          const std::vector<std::string>& regressors) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> names;
    std::size_t width = 0;
    std::size_t value_col = 0;
    std::vector<std::size_t> reg_cols;
    bool configured = false;
    InputData data;
    data.regressors.resize(regressors.size());

    auto configure = [&](std::size_t line_number) {
        width = names.size();
        auto find = [&](const std::string& name) -> std::size_t {
            for (std::size_t i = 0; i < names.size(); ++i) {
                if (names[i] == name) return i;
            }
            throw ParseError("line " + std::to_string(line_number) + ": no column named '" + name + "'",
                             line_number);
        };
        if (!column.empty()) {
            value_col = find(column);
        } else {
            bool found = false;
            for (std::size_t i = names.size(); i-- > 0;) {
                const auto n = lower(names[i]);
                if (n == "value") {
                    value_col = i;
                    found = true;
                    break;
                }
            }
            if (!found) {
                for (std::size_t i = names.size(); i-- > 0;) {
                    const auto n = lower(names[i]);
                    if (n != "t" && n != "date" && n != "u") {
                        value_col = i;
                        found = true;
                        break;
                    }
                }
            }
            if (!found) throw ParseError("line " + std::to_string(line_number) + ": no value column", line_number);
        }
        for (const auto& r : regressors) reg_cols.push_back(find(r));
        configured = true;
    };

    while (std::getline(in, line)) {
        ++line_no;
        const auto content = trim(line);
        if (content.empty() || content.front() == '#') continue;
        const auto fields = split(content);
        if (!configured) {
            const bool numeric = std::all_of(fields.begin(), fields.end(), [](const auto& f) { return to_number(f).has_value(); });
            if (!numeric) {
                names = fields;
                configure(line_no);
                continue;
            }
            if (!column.empty() || !regressors.empty()) {
                throw ParseError("line " + std::to_string(line_no) + ": named columns require a header row", line_no);
            }
            names.assign(fields.size(), std::string());
            for (std::size_t i = 0; i < fields.size(); ++i) names[i] = "c" + std::to_string(i);
            configure(line_no);
        }
        if (fields.size() != width) {
            throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(width) +
                                 " fields, found " + std::to_string(fields.size()),
                             line_no);
        }
        auto number = [&](std::size_t col) {
            const auto v = to_number(fields[col]);
            if (!v || !std::isfinite(*v)) {
                throw ParseError("line " + std::to_string(line_no) + ": '" + fields[col] + "' is not a finite number",
                                 line_no);
            }
            return *v;
        };
        data.values.push_back(number(value_col));
        for (std::size_t k = 0; k < reg_cols.size(); ++k) data.regressors[k].push_back(number(reg_cols[k]));
    }
    if (data.values.empty()) throw ParseError("input contains no data rows", line_no);
    return data;
}

InputData read_input_csv(const std::string& path, const std::string& column,
                         const std::vector<std::string>& regressors) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open input file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_input_csv(buffer.str(), column, regressors);
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void CsvWriter::comment(const std::string& key, const std::string& value) { out_ << "# " << key << '=' << value << '\n'; }

void CsvWriter::header(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) out_ << (i ? "," : "") << names[i];
    out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_double(values[i]);
    out_ << '\n';
}

}  // namespace lsii::cli

#include "uncervals/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace uncervals {

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw numeric_error("format_double failed");
    return std::string(buf, ptr);
}

double parse_double(const std::string& token) {
    if (token == "inf") return kInf;
    double v = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw io_error("cannot parse number '" + token + "'");
    return v;
}

namespace {

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string strip(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
    std::size_t b = 0;
    while (b < s.size() && (s[b] == ' ' || s[b] == '\t')) ++b;
    return s.substr(b);
}

[[noreturn]] void row_error(const std::string& path, std::size_t row, const std::string& what) {
    throw io_error(path + ":" + std::to_string(row) + ": " + what);
}

}  // namespace

Dataset load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw io_error(path + ": empty file");
    auto header = split_row(strip(line));
    if (header.size() < 2 || strip(header[0]) != "l" || strip(header[1]) != "u")
        throw io_error(path + ": expected header l,u,x1,...,xp");
    const std::size_t dim = header.size() - 2;

    Dataset data;
    data.covariate_dim = dim;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        line = strip(line);
        if (line.empty()) continue;
        auto fields = split_row(line);
        if (fields.size() != dim + 2)
            row_error(path, row, "expected " + std::to_string(dim + 2) + " fields, got " +
                                     std::to_string(fields.size()));
        IntervalObservation o;
        try {
            o.l = parse_double(strip(fields[0]));
            o.u = parse_double(strip(fields[1]));
            o.x.resize(dim);
            for (std::size_t j = 0; j < dim; ++j) o.x[j] = parse_double(strip(fields[j + 2]));
            validate_observation(o, dim);
        } catch (const std::exception& e) {
            row_error(path, row, e.what());
        }
        data.observations.push_back(std::move(o));
    }
    return data;
}

void save_dataset(const Dataset& data, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write '" + path + "'");
    out << "l,u";
    for (std::size_t j = 0; j < data.covariate_dim; ++j) out << ",x" << (j + 1);
    out << "\n";
    for (const auto& o : data.observations) {
        out << format_double(o.l) << ',' << format_double(o.u);
        for (double v : o.x) out << ',' << format_double(v);
        out << "\n";
    }
    if (!out) throw io_error("write to '" + path + "' failed");
}

std::vector<std::vector<double>> load_covariates(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw io_error(path + ": empty file");
    const std::size_t dim = split_row(strip(line)).size();

    std::vector<std::vector<double>> rows;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        line = strip(line);
        if (line.empty()) continue;
        auto fields = split_row(line);
        if (fields.size() != dim) row_error(path, row, "covariate dimension mismatch");
        std::vector<double> x(dim);
        try {
            for (std::size_t j = 0; j < dim; ++j) x[j] = parse_double(strip(fields[j]));
        } catch (const std::exception& e) {
            row_error(path, row, e.what());
        }
        rows.push_back(std::move(x));
    }
    return rows;
}

void save_true_times(const std::vector<double>& times, const std::vector<Censoring>& classes,
                     const std::string& path) {
    if (times.size() != classes.size())
        throw numeric_error("save_true_times: length mismatch");
    std::ofstream out(path);
    if (!out) throw io_error("cannot write '" + path + "'");
    out << "t,censoring\n";
    for (std::size_t i = 0; i < times.size(); ++i)
        out << format_double(times[i]) << ',' << censoring_name(classes[i]) << "\n";
    if (!out) throw io_error("write to '" + path + "' failed");
}

}  // namespace uncervals

#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dataset.hpp"

namespace admissa {

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '"')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '"'))
        s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

inline std::optional<double> parse_double(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

inline std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

} // namespace detail

/// Parse a headed CSV. Every column except `label_column` must be numeric.
/// Labels are re-indexed densely in order of first appearance; the original
/// strings are kept as `label_names()`.
inline Dataset parse_dataset(std::istream& in, std::string name,
                             const std::optional<std::string>& label_column = std::nullopt) {
    std::string line;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        if (detail::trim(line).empty()) continue;
        for (auto f : detail::split_csv(line)) header.emplace_back(f);
        break;
    }
    if (header.empty()) throw DataError(name + ": empty file");

    std::optional<std::size_t> label_idx;
    if (label_column) {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == *label_column) label_idx = i;
        if (!label_idx) throw DataError(name + ": label column '" + *label_column + "' absent");
    }
    const std::size_t d = header.size() - (label_idx ? 1 : 0);
    if (d == 0) throw DataError(name + ": no feature columns");

    std::vector<double> flat;
    std::vector<int> labels;
    std::vector<std::string> label_names;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (detail::trim(line).empty()) continue;
        auto fields = detail::split_csv(line);
        if (fields.size() != header.size())
            throw DataError(name + ": inconsistent arity at row " + std::to_string(row) + " (expected " +
                            std::to_string(header.size()) + " fields, got " + std::to_string(fields.size()) + ")");
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (label_idx && i == *label_idx) {
                std::string lbl(fields[i]);
                auto it = std::find(label_names.begin(), label_names.end(), lbl);
                if (it == label_names.end()) {
                    labels.push_back(static_cast<int>(label_names.size()));
                    label_names.push_back(std::move(lbl));
                } else {
                    labels.push_back(static_cast<int>(it - label_names.begin()));
                }
                continue;
            }
            auto v = detail::parse_double(fields[i]);
            if (!v) throw DataError(name + ": non-numeric feature '" + std::string(fields[i]) + "' at row " +
                                    std::to_string(row));
            flat.push_back(*v);
        }
    }
    if (flat.empty()) throw DataError(name + ": empty file");
    if (label_idx) return Dataset(std::move(name), std::move(flat), d, std::move(labels), std::move(label_names));
    return Dataset(std::move(name), std::move(flat), d);
}

inline Dataset load_dataset(const std::string& path, const std::optional<std::string>& label_column = std::nullopt,
                            std::optional<std::string> name = std::nullopt) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    if (!name) {
        auto slash = path.find_last_of('/');
        std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
        if (auto dot = base.rfind('.'); dot != std::string::npos) base.resize(dot);
        name = base;
    }
    return parse_dataset(in, *name, label_column);
}

/// Write the schema `parse_dataset` reads: x0..x{d-1}[,label]. Values round-trip exactly.
inline std::string dataset_to_csv(const Dataset& ds) {
    std::ostringstream os;
    for (std::size_t r = 0; r < ds.dim(); ++r) os << (r ? "," : "") << 'x' << r;
    if (ds.has_labels()) os << ",label";
    os << '\n';
    for (std::size_t i = 0; i < ds.size(); ++i) {
        auto p = ds.point(i);
        for (std::size_t r = 0; r < ds.dim(); ++r) os << (r ? "," : "") << detail::format_double(p[r]);
        if (ds.has_labels()) os << ',' << (*ds.truth())[i];
        os << '\n';
    }
    return os.str();
}

} // namespace admissa

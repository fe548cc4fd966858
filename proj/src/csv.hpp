#pragma once

// Minimal CSV cell helpers shared by the panel and scenario readers.

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace growthkit::csv {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto next = line.find(sep, pos);
        out.push_back(trim(line.substr(pos, next == std::string_view::npos ? next : next - pos)));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return out;
}

/// Non-empty lines with their 1-based line numbers.
inline std::vector<std::pair<std::size_t, std::string_view>> lines(std::string_view text) {
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
    std::vector<std::pair<std::size_t, std::string_view>> out;
    std::size_t number = 0;
    for (const auto line : split(text, '\n')) {
        ++number;
        if (!line.empty()) out.emplace_back(number, line);
    }
    return out;
}

inline std::optional<double> to_double(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

inline std::optional<int> to_int(std::string_view s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

inline std::string location(std::size_t row, std::string_view column) {
    return "row " + std::to_string(row) + ", column " + std::string(column);
}

}  // namespace growthkit::csv

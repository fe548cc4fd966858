#include "growthkit/data.hpp"

#include "growthkit/error.hpp"

#include "csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace growthkit {

namespace {

using csv::location;
using csv::split;
using csv::to_double;
using csv::to_int;
using csv::trim;

constexpr const char* kModule = "data";

std::string format_shortest(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

constexpr std::string_view kMandatory[] = {"output", "capital", "labor", "consumption",
                                           "investment"};

}  // namespace

YearRange parse_year_range(std::string_view text) {
    text = trim(text);
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw Error(kModule, "bad_range", "year range must be START:END, got '" + std::string(text) + "'");
    }
    const auto start = to_int(trim(text.substr(0, colon)));
    const auto end = to_int(trim(text.substr(colon + 1)));
    if (!start || !end) {
        throw Error(kModule, "bad_range", "year range must be START:END, got '" + std::string(text) + "'");
    }
    if (*start > *end) {
        throw Error(kModule, "bad_range", "year range start after end: '" + std::string(text) + "'");
    }
    return {*start, *end};
}

std::vector<YearRange> parse_year_ranges(std::string_view text) {
    std::vector<YearRange> out;
    for (const auto part : split(text, ',')) out.push_back(parse_year_range(part));
    return out;
}

double YearSeries::at(int year) const {
    if (year < first_year || year > last_year()) {
        throw Error(kModule, "year_out_of_span", "year " + std::to_string(year) + " outside series span");
    }
    return values[static_cast<std::size_t>(year - first_year)];
}

std::span<const double> YearSeries::slice(const YearRange& range) const {
    if (range.start > range.end || !span().contains(range)) {
        throw Error(kModule, "window_out_of_span",
                    "window " + std::to_string(range.start) + ":" + std::to_string(range.end) +
                        " outside series span " + std::to_string(first_year) + ":" +
                        std::to_string(last_year()));
    }
    return std::span<const double>(values).subspan(static_cast<std::size_t>(range.start - first_year),
                                                   static_cast<std::size_t>(range.length()));
}

YearSeries MacroPanel::series(std::string_view name) const {
    const std::vector<double>* v = nullptr;
    if (name == "output") v = &output;
    else if (name == "capital") v = &capital;
    else if (name == "labor") v = &labor;
    else if (name == "consumption") v = &consumption;
    else if (name == "investment") v = &investment;
    else if (name == "tfp" && tfp) v = &*tfp;
    else if (name == "labor_share" && labor_share) v = &*labor_share;
    if (v == nullptr) {
        throw Error(kModule, "unknown_series", "panel has no series named '" + std::string(name) + "'");
    }
    return {first_year, *v};
}

void MacroPanel::validate() const {
    if (output.size() < 2) {
        throw Error(kModule, "too_short", "panel needs at least 2 years");
    }
    auto check = [&](std::string_view name, const std::vector<double>& v, bool fraction) {
        if (v.size() != output.size()) {
            throw Error(kModule, "length_mismatch", "series '" + std::string(name) + "' has wrong length");
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
            const bool ok = std::isfinite(v[i]) && v[i] > 0.0 && (!fraction || v[i] < 1.0);
            if (!ok) {
                throw Error(kModule, fraction ? "share_out_of_range" : "non_positive",
                            std::string(name) + (fraction ? " must lie in (0,1)" : " must be finite and > 0"),
                            "year " + std::to_string(first_year + static_cast<int>(i)) + ", column " +
                                std::string(name));
            }
        }
    };
    check("output", output, false);
    check("capital", capital, false);
    check("labor", labor, false);
    check("consumption", consumption, false);
    check("investment", investment, false);
    if (tfp) check("tfp", *tfp, false);
    if (labor_share) check("labor_share", *labor_share, true);
}

MacroPanel parse_panel(std::string_view csv_text) {
    const auto lines = csv::lines(csv_text);
    if (lines.empty()) throw Error(kModule, "empty_input", "CSV input is empty");

    const auto header = split(lines.front().second, ',');
    std::map<std::string_view, std::size_t> column;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (column.contains(header[c])) {
            throw Error(kModule, "duplicate_column", "column '" + std::string(header[c]) + "' appears twice",
                        location(lines.front().first, header[c]));
        }
        column.emplace(header[c], c);
    }
    if (!column.contains("year")) throw Error(kModule, "missing_column", "missing mandatory column 'year'", "row " + std::to_string(lines.front().first));
    for (const auto name : kMandatory) {
        if (!column.contains(name)) {
            throw Error(kModule, "missing_column", "missing mandatory column '" + std::string(name) + "'",
                        "row " + std::to_string(lines.front().first));
        }
    }

    MacroPanel panel;
    const bool has_tfp = column.contains("tfp");
    const bool has_share = column.contains("labor_share");
    if (has_tfp) panel.tfp.emplace();
    if (has_share) panel.labor_share.emplace();

    std::map<int, std::size_t> seen;  // year -> row
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const std::size_t row = lines[r].first;
        const auto cells = split(lines[r].second, ',');
        if (cells.size() < header.size()) {
            throw Error(kModule, "short_row",
                        "row has " + std::to_string(cells.size()) + " cells, header has " +
                            std::to_string(header.size()),
                        "row " + std::to_string(row));
        }
        const auto year = to_int(cells[column.at("year")]);
        if (!year) {
            throw Error(kModule, "non_numeric", "year is not an integer: '" + std::string(cells[column.at("year")]) + "'",
                        location(row, "year"));
        }
        if (auto it = seen.find(*year); it != seen.end()) {
            throw Error(kModule, "duplicate_year",
                        "year " + std::to_string(*year) + " repeats row " + std::to_string(it->second),
                        location(row, "year"));
        }
        if (!seen.empty()) {
            const int expected = panel.last_year() + 1;
            if (*year > expected) {
                throw Error(kModule, "gapped_year", "missing year " + std::to_string(expected),
                            location(row, "year"));
            }
            if (*year < expected) {
                throw Error(kModule, "unordered_year",
                            "year " + std::to_string(*year) + " out of ascending order",
                            location(row, "year"));
            }
        } else {
            panel.first_year = *year;
        }
        seen.emplace(*year, row);

        auto read = [&](std::string_view name, std::vector<double>& dest, bool fraction) {
            const auto text = cells[column.at(name)];
            const auto value = to_double(text);
            if (!value || !std::isfinite(*value)) {
                throw Error(kModule, "non_numeric", std::string(name) + " is not a number: '" + std::string(text) + "'",
                            location(row, name));
            }
            if (*value <= 0.0) {
                throw Error(kModule, "non_positive", std::string(name) + " must be > 0, got " + std::string(text),
                            location(row, name));
            }
            if (fraction && *value >= 1.0) {
                throw Error(kModule, "share_out_of_range", std::string(name) + " must lie in (0,1), got " + std::string(text),
                            location(row, name));
            }
            dest.push_back(*value);
        };
        read("output", panel.output, false);
        read("capital", panel.capital, false);
        read("labor", panel.labor, false);
        read("consumption", panel.consumption, false);
        read("investment", panel.investment, false);
        if (has_tfp) read("tfp", *panel.tfp, false);
        if (has_share) read("labor_share", *panel.labor_share, true);
    }
    if (panel.size() < 2) {
        throw Error(kModule, "too_short", "panel needs at least 2 years, got " + std::to_string(panel.size()));
    }
    return panel;
}

std::string serialize_panel(const MacroPanel& panel) {
    std::string out = "year,output,capital,labor,consumption,investment";
    if (panel.tfp) out += ",tfp";
    if (panel.labor_share) out += ",labor_share";
    out += '\n';
    for (std::size_t i = 0; i < panel.size(); ++i) {
        out += std::to_string(panel.first_year + static_cast<int>(i));
        for (const auto* v : {&panel.output, &panel.capital, &panel.labor, &panel.consumption, &panel.investment}) {
            out += ',' + format_shortest((*v)[i]);
        }
        if (panel.tfp) out += ',' + format_shortest((*panel.tfp)[i]);
        if (panel.labor_share) out += ',' + format_shortest((*panel.labor_share)[i]);
        out += '\n';
    }
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cli", "file_not_found", "cannot open '" + path + "'", path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<WindowStats> window_stats(const YearSeries& series, std::span<const YearRange> windows) {
    std::vector<WindowStats> out;
    out.reserve(windows.size());
    for (const auto& w : windows) {
        const auto values = series.slice(w);
        WindowStats s{w, values.front(), 0.0};
        // All-equal windows report the value itself and an exact zero.
        if (std::adjacent_find(values.begin(), values.end(), std::not_equal_to<>()) != values.end()) {
            const double n = static_cast<double>(values.size());
            s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
            double ss = 0.0;
            for (const double v : values) ss += (v - s.mean) * (v - s.mean);
            s.std = std::sqrt(ss / n);
        }
        out.push_back(s);
    }
    return out;
}

std::vector<SteadyWindow> select_steady_window(const MacroPanel& panel, int min_len, double tol) {
    if (min_len < 2) throw Error(kModule, "bad_argument", "min_len must be >= 2");
    if (!(tol > 0.0)) throw Error(kModule, "bad_argument", "tol must be > 0");

    const std::size_t n = panel.size();
    // prefix[i] = sum of |dlnC - dlnY| over transitions 0..i-1
    std::vector<double> prefix(n, 0.0);
    for (std::size_t t = 0; t + 1 < n; ++t) {
        const double dc = std::log(panel.consumption[t + 1] / panel.consumption[t]);
        const double dy = std::log(panel.output[t + 1] / panel.output[t]);
        prefix[t + 1] = prefix[t] + std::abs(dc - dy);
    }

    std::vector<SteadyWindow> qualifying;
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t e = s + static_cast<std::size_t>(min_len) - 1; e < n; ++e) {
            const double gap = (prefix[e] - prefix[s]) / static_cast<double>(e - s);
            if (gap <= tol) {
                qualifying.push_back({{panel.first_year + static_cast<int>(s), panel.first_year + static_cast<int>(e)}, gap});
            }
        }
    }

    std::vector<SteadyWindow> maximal;
    for (const auto& w : qualifying) {
        const bool dominated = std::any_of(qualifying.begin(), qualifying.end(), [&](const SteadyWindow& o) {
            return o.range != w.range && o.range.contains(w.range);
        });
        if (!dominated) maximal.push_back(w);
    }
    std::sort(maximal.begin(), maximal.end(), [](const SteadyWindow& a, const SteadyWindow& b) {
        if (a.mean_abs_diff != b.mean_abs_diff) return a.mean_abs_diff < b.mean_abs_diff;
        if (a.range.length() != b.range.length()) return a.range.length() > b.range.length();
        return a.range.start < b.range.start;
    });
    return maximal;
}

}  // namespace growthkit

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace growthkit {

/// Inclusive range of calendar years.
struct YearRange {
    int start = 0;
    int end = 0;

    [[nodiscard]] int length() const noexcept { return end - start + 1; }
    [[nodiscard]] bool contains(const YearRange& other) const noexcept {
        return start <= other.start && other.end <= end;
    }
    friend bool operator==(const YearRange&, const YearRange&) = default;
};

/// Parses "START:END". Throws Error (module "data") on malformed input or start > end.
[[nodiscard]] YearRange parse_year_range(std::string_view text);
/// Comma-separated list of "START:END" ranges.
[[nodiscard]] std::vector<YearRange> parse_year_ranges(std::string_view text);

/// Annual series indexed by consecutive years starting at first_year.
struct YearSeries {
    int first_year = 0;
    std::vector<double> values;

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
    [[nodiscard]] int last_year() const noexcept {
        return first_year + static_cast<int>(values.size()) - 1;
    }
    [[nodiscard]] YearRange span() const noexcept { return {first_year, last_year()}; }
    [[nodiscard]] double at(int year) const;
    /// Values for the years in `range`; throws if the range leaves the series.
    [[nodiscard]] std::span<const double> slice(const YearRange& range) const;
};

/// Year-indexed annual panel in one constant-price currency unit.
///
/// Only positivity is checked; downstream quantities are ratios or log
/// differences and therefore unit-free.
struct MacroPanel {
    int first_year = 0;
    std::vector<double> output;
    std::vector<double> capital;
    std::vector<double> labor;
    std::vector<double> consumption;
    std::vector<double> investment;
    std::optional<std::vector<double>> tfp;
    std::optional<std::vector<double>> labor_share;

    [[nodiscard]] std::size_t size() const noexcept { return output.size(); }
    [[nodiscard]] int last_year() const noexcept {
        return first_year + static_cast<int>(output.size()) - 1;
    }
    [[nodiscard]] YearRange span() const noexcept { return {first_year, last_year()}; }

    /// Looks up a column by its CSV name ("output", "tfp", ...).
    [[nodiscard]] YearSeries series(std::string_view name) const;

    /// Throws unless every invariant holds (length >= 2, equal lengths,
    /// finite positive values, labor share in (0,1)).
    void validate() const;
};

/// Parses the CSV panel format:
/// `year,output,capital,labor,consumption,investment[,tfp][,labor_share]`.
/// Column order is free and unknown columns are ignored. Errors carry the
/// offending row/column.
[[nodiscard]] MacroPanel parse_panel(std::string_view csv_text);

/// Writes a panel in the format read by parse_panel; values round-trip exactly.
[[nodiscard]] std::string serialize_panel(const MacroPanel& panel);

/// Reads a whole file; throws Error ("cli.file_not_found") when it cannot be opened.
[[nodiscard]] std::string read_text_file(const std::string& path);

struct WindowStats {
    YearRange range;
    double mean = 0.0;
    double std = 0.0;  ///< population standard deviation
};

/// Mean and population standard deviation for each window, in input order.
[[nodiscard]] std::vector<WindowStats> window_stats(const YearSeries& series,
                                                    std::span<const YearRange> windows);

struct SteadyWindow {
    YearRange range;
    double mean_abs_diff = 0.0;  ///< mean |dln C - dln Y| over in-window transitions
};

inline constexpr int kDefaultWindowMinLength = 8;
inline constexpr double kDefaultWindowTolerance = 0.01;

/// All maximal windows of at least `min_len` years whose mean absolute gap
/// between consumption and output log growth is at most `tol`. Sorted by
/// that gap ascending, then length descending, then start year.
[[nodiscard]] std::vector<SteadyWindow> select_steady_window(
    const MacroPanel& panel, int min_len = kDefaultWindowMinLength,
    double tol = kDefaultWindowTolerance);

}  // namespace growthkit

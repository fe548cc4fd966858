#pragma once

#include "growthkit/data.hpp"

#include <optional>
#include <span>
#include <vector>

namespace growthkit {

/// Capital share: either fixed, or one minus the mean labor share over a
/// range (the full panel span when the range is empty).
class AlphaSpec {
public:
    [[nodiscard]] static AlphaSpec fixed(double alpha);
    [[nodiscard]] static AlphaSpec from_labor_share(std::optional<YearRange> range = std::nullopt);

    /// Resolves against a panel; throws when the share column is absent or
    /// the result leaves (0,1).
    [[nodiscard]] double resolve(const MacroPanel& panel) const;

    [[nodiscard]] bool is_fixed() const noexcept { return fixed_.has_value(); }

private:
    std::optional<double> fixed_;
    std::optional<YearRange> share_range_;
};

/// One row of a growth-accounting table. All entries are cumulative
/// natural-log changes over the range, so the columns add up exactly.
struct AccountingRow {
    YearRange range;
    double growth = 0.0;
    double contrib_capital = 0.0;
    double contrib_labor = 0.0;
    double contrib_tfp = 0.0;
};

/// ln(x[t+1] / x[t]) for each year t but the last.
[[nodiscard]] YearSeries log_growth(const YearSeries& series);

/// Solow residual A_t = Y_t / (K_t^alpha * L_t^(1-alpha)).
[[nodiscard]] YearSeries tfp_residual(const MacroPanel& panel, const AlphaSpec& alpha);

[[nodiscard]] AccountingRow decompose_growth(const MacroPanel& panel, const AlphaSpec& alpha,
                                             const YearRange& range);

/// decompose_growth over each range with a single resolved alpha; rows in input order.
[[nodiscard]] std::vector<AccountingRow> accounting_table(const MacroPanel& panel, const AlphaSpec& alpha,
                                                          std::span<const YearRange> ranges);

}  // namespace growthkit

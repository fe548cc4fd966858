#include "growthkit/accounting.hpp"

#include "growthkit/error.hpp"

#include <cmath>
#include <numeric>

namespace growthkit {

namespace {

constexpr const char* kModule = "accounting";

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw Error(kModule, "alpha_out_of_range", "capital share must lie in (0,1), got " + std::to_string(alpha));
    }
}

AccountingRow decompose_with(const MacroPanel& panel, double alpha, const YearRange& range) {
    if (range.length() < 2) {
        throw Error(kModule, "range_too_short",
                    "accounting range " + std::to_string(range.start) + ":" + std::to_string(range.end) +
                        " needs at least 2 years");
    }
    if (!panel.span().contains(range)) {
        throw Error(kModule, "range_out_of_span",
                    "accounting range " + std::to_string(range.start) + ":" + std::to_string(range.end) +
                        " outside panel span " + std::to_string(panel.first_year) + ":" +
                        std::to_string(panel.last_year()));
    }
    const auto s = static_cast<std::size_t>(range.start - panel.first_year);
    const auto e = static_cast<std::size_t>(range.end - panel.first_year);
    auto dlog = [&](const std::vector<double>& x) { return std::log(x[e]) - std::log(x[s]); };

    AccountingRow row{range};
    row.growth = dlog(panel.output);
    row.contrib_capital = alpha * dlog(panel.capital);
    row.contrib_labor = (1.0 - alpha) * dlog(panel.labor);
    row.contrib_tfp = row.growth - row.contrib_capital - row.contrib_labor;
    return row;
}

}  // namespace

AlphaSpec AlphaSpec::fixed(double alpha) {
    check_alpha(alpha);
    AlphaSpec spec;
    spec.fixed_ = alpha;
    return spec;
}

AlphaSpec AlphaSpec::from_labor_share(std::optional<YearRange> range) {
    AlphaSpec spec;
    spec.share_range_ = range;
    return spec;
}

double AlphaSpec::resolve(const MacroPanel& panel) const {
    if (fixed_) return *fixed_;
    if (!panel.labor_share) {
        throw Error(kModule, "alpha_unresolvable",
                    "panel has no labor_share column; pass a fixed capital share instead");
    }
    const YearSeries share{panel.first_year, *panel.labor_share};
    const auto values = share.slice(share_range_.value_or(share.span()));
    const double alpha = 1.0 - std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    check_alpha(alpha);
    return alpha;
}

YearSeries log_growth(const YearSeries& series) {
    if (series.size() < 2) {
        throw Error(kModule, "series_too_short", "log growth needs at least 2 observations");
    }
    YearSeries out{series.first_year, {}};
    out.values.reserve(series.size() - 1);
    for (std::size_t t = 0; t + 1 < series.size(); ++t) {
        if (!(series.values[t] > 0.0 && series.values[t + 1] > 0.0)) {
            throw Error(kModule, "non_positive", "log growth needs positive values",
                        "year " + std::to_string(series.first_year + static_cast<int>(t)));
        }
        out.values.push_back(std::log(series.values[t + 1] / series.values[t]));
    }
    return out;
}

YearSeries tfp_residual(const MacroPanel& panel, const AlphaSpec& alpha_spec) {
    const double alpha = alpha_spec.resolve(panel);
    YearSeries out{panel.first_year, {}};
    out.values.reserve(panel.size());
    for (std::size_t t = 0; t < panel.size(); ++t) {
        out.values.push_back(std::exp(std::log(panel.output[t]) - alpha * std::log(panel.capital[t]) -
                                      (1.0 - alpha) * std::log(panel.labor[t])));
    }
    return out;
}

AccountingRow decompose_growth(const MacroPanel& panel, const AlphaSpec& alpha, const YearRange& range) {
    return decompose_with(panel, alpha.resolve(panel), range);
}

std::vector<AccountingRow> accounting_table(const MacroPanel& panel, const AlphaSpec& alpha_spec,
                                            std::span<const YearRange> ranges) {
    const double alpha = alpha_spec.resolve(panel);
    std::vector<AccountingRow> rows;
    rows.reserve(ranges.size());
    for (const auto& r : ranges) rows.push_back(decompose_with(panel, alpha, r));
    return rows;
}

}  // namespace growthkit

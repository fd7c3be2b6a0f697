#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace fnet {

/// Augmented Dickey-Fuller unit-root test, constant and no trend:
///
///   dx_t = a + g * x_{t-1} + sum_{i=1..p} phi_i * dx_{t-i} + e_t
///
/// The statistic is the OLS t-ratio of g. Critical values come from MacKinnon's
/// (2010) constant-only response surface evaluated at the regression sample size.
struct AdfResult {
    double statistic = 0.0;
    std::size_t lag_order = 0;
    /// Observations used by the regression.
    std::size_t nobs = 0;
    double critical_1pct = 0.0;
    double critical_5pct = 0.0;
    double critical_10pct = 0.0;
    bool reject_unit_root_5pct = false;
};

struct AdfCriticalValues {
    double pct1;
    double pct5;
    double pct10;
};

/// floor(12 * (T/100)^(1/4))
[[nodiscard]] std::size_t schwert_lag(std::size_t t_len);

[[nodiscard]] AdfCriticalValues adf_critical_values(std::size_t nobs);

/// `lag_order` defaults to schwert_lag(x.size()).
/// Throws InsufficientSamples when x.size() < lag + 10 and DegenerateSeries on a
/// constant input.
[[nodiscard]] AdfResult adf_test(std::span<const double> x,
                                 std::optional<std::size_t> lag_order = std::nullopt);

}  // namespace fnet

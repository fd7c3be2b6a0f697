#include "fnet/adf.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "fnet/error.hpp"

namespace fnet {

namespace {

// tau_inf, b1, b2, b3 for N = 1, constant only
constexpr double kSurface[3][4] = {
    {-3.43035, -6.5393, -16.786, -79.433},
    {-2.86154, -2.8903, -4.234, -40.040},
    {-2.56677, -1.5384, -2.809, 0.0},
};

double response_surface(const double (&c)[4], double nobs) {
    const double inv = 1.0 / nobs;
    return c[0] + inv * (c[1] + inv * (c[2] + inv * c[3]));
}

}  // namespace

std::size_t schwert_lag(std::size_t t_len) {
    return static_cast<std::size_t>(
        std::floor(12.0 * std::pow(static_cast<double>(t_len) / 100.0, 0.25)));
}

AdfCriticalValues adf_critical_values(std::size_t nobs) {
    const auto n = static_cast<double>(nobs);
    return {response_surface(kSurface[0], n), response_surface(kSurface[1], n),
            response_surface(kSurface[2], n)};
}

AdfResult adf_test(std::span<const double> x, std::optional<std::size_t> lag_order) {
    const std::size_t t_len = x.size();
    const std::size_t p = lag_order.value_or(schwert_lag(t_len));
    if (t_len < p + 10) {
        throw Error(ErrorCode::InsufficientSamples,
                    "ADF needs at least lag + 10 = " + std::to_string(p + 10) +
                        " observations, got " + std::to_string(t_len));
    }
    bool constant = true;
    for (std::size_t i = 1; i < t_len && constant; ++i) constant = x[i] == x[0];
    if (constant) throw Error(ErrorCode::DegenerateSeries, "ADF on a constant series");

    std::vector<double> dx(t_len - 1);
    for (std::size_t t = 1; t < t_len; ++t) dx[t - 1] = x[t] - x[t - 1];

    // rows: dx index j = p .. t_len-2  (dx[j] = x[j+1] - x[j])
    const std::size_t nobs = t_len - 1 - p;
    const std::size_t k = 2 + p;
    Eigen::MatrixXd design(nobs, k);
    Eigen::VectorXd target(nobs);
    for (std::size_t r = 0; r < nobs; ++r) {
        const std::size_t j = r + p;
        target(r) = dx[j];
        design(r, 0) = 1.0;
        design(r, 1) = x[j];
        for (std::size_t i = 1; i <= p; ++i) design(r, 1 + i) = dx[j - i];
    }

    const Eigen::MatrixXd gram = design.transpose() * design;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
    if (ldlt.info() != Eigen::Success) {
        throw Error(ErrorCode::DegenerateSeries, "ADF regression is singular");
    }
    const Eigen::VectorXd beta = ldlt.solve(design.transpose() * target);
    const Eigen::VectorXd resid = target - design * beta;
    const double dof = static_cast<double>(nobs) - static_cast<double>(k);
    if (dof <= 0.0) throw Error(ErrorCode::InsufficientSamples, "no residual degrees of freedom");
    const double sigma2 = resid.squaredNorm() / dof;
    const Eigen::VectorXd e1 = Eigen::VectorXd::Unit(static_cast<Eigen::Index>(k), 1);
    const double var_gamma = sigma2 * ldlt.solve(e1)(1);
    if (!(var_gamma > 0.0) || !std::isfinite(var_gamma)) {
        throw Error(ErrorCode::DegenerateSeries, "ADF regression has zero residual variance");
    }

    AdfResult result;
    result.statistic = beta(1) / std::sqrt(var_gamma);
    result.lag_order = p;
    result.nobs = nobs;
    const auto cv = adf_critical_values(nobs);
    result.critical_1pct = cv.pct1;
    result.critical_5pct = cv.pct5;
    result.critical_10pct = cv.pct10;
    result.reject_unit_root_5pct = result.statistic < cv.pct5;
    return result;
}

}  // namespace fnet

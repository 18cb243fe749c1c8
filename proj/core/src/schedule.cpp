#include "extsum/schedule.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace extsum {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string("schedule parameter ") + name +
                                    " must be positive and finite");
    }
}

std::string fmt(double v) {
    std::ostringstream out;
    out << v;
    return out.str();
}

// Least-squares slope of log(values[k]) against log(k+first) over the tail
// half of the list. Returns the decay exponent (positive = decaying).
double fitted_decay_exponent(const std::vector<double>& values) {
    const std::size_t m = values.size();
    const std::size_t begin = m / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double count = static_cast<double>(m - begin);
    for (std::size_t k = begin; k < m; ++k) {
        const double x = std::log(static_cast<double>(k + 1));
        const double y = std::log(values[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = count * sxx - sx * sx;
    if (denom == 0.0) return 0.0;
    const double slope = (count * sxy - sx * sy) / denom;
    return -slope;
}

ScheduleRelation pseries_diverges(const std::string& name, double exponent,
                                  const std::string& series) {
    ScheduleRelation r;
    r.name = name;
    r.holds = exponent <= 1.0;
    r.detail = series + " ~ n^(-" + fmt(exponent) + "): " +
               (r.holds ? "diverges (exponent <= 1)" : "converges (exponent > 1)");
    return r;
}

ScheduleRelation pseries_converges(const std::string& name, double exponent,
                                   const std::string& series) {
    ScheduleRelation r;
    r.name = name;
    r.holds = exponent > 1.0;
    r.detail = series + " ~ n^(-" + fmt(exponent) + "): " +
               (r.holds ? "converges (exponent > 1)" : "diverges (exponent <= 1)");
    return r;
}

ValidityReport finalize(ValidityReport report) {
    report.valid = true;
    for (const auto& r : report.relations) {
        if (!r.holds) report.valid = false;
    }
    return report;
}

} // namespace

StepSchedule StepSchedule::power(double c, double p, double q) {
    require_positive(c, "c");
    require_positive(p, "p");
    require_positive(q, "q");
    return StepSchedule(PowerSchedule{c, p, q});
}

StepSchedule StepSchedule::from_lists(std::vector<double> lambda, std::vector<double> eps) {
    if (lambda.size() != eps.size()) {
        throw std::invalid_argument("schedule lists must have equal length");
    }
    if (lambda.size() < 8) {
        throw std::invalid_argument("schedule lists need at least 8 entries");
    }
    for (double v : lambda) require_positive(v, "lambda");
    for (double v : eps) require_positive(v, "eps");
    return StepSchedule(ListSchedule{std::move(lambda), std::move(eps)});
}

std::pair<double, double> StepSchedule::at(long n) const {
    if (n < 0) throw std::out_of_range("schedule index must be >= 0");
    const long k = n == 0 ? 1 : n;
    if (const auto* pw = as_power()) {
        const double nd = static_cast<double>(k);
        return {pw->c * std::pow(nd, -pw->p), std::pow(nd, -pw->q)};
    }
    const auto& list = std::get<ListSchedule>(impl_);
    const auto idx = static_cast<std::size_t>(k - 1);
    if (idx >= list.lambda.size()) {
        throw std::out_of_range("schedule index " + std::to_string(n) +
                                " past list length " + std::to_string(list.lambda.size()));
    }
    return {list.lambda[idx], list.eps[idx]};
}

std::optional<std::size_t> StepSchedule::length() const noexcept {
    if (const auto* list = as_list()) return list->lambda.size();
    return std::nullopt;
}

std::vector<std::string> ValidityReport::reasons() const {
    std::vector<std::string> out;
    for (const auto& r : relations) {
        if (!r.holds) out.push_back(r.name);
    }
    return out;
}

ValidityReport validate_schedule(const StepSchedule& schedule) {
    ValidityReport report;
    if (const auto* pw = schedule.as_power()) {
        const double p = pw->p;
        const double q = pw->q;
        report.relations.push_back(
            pseries_diverges("sum_lambda_diverges", p, "sum lambda_n"));
        report.relations.push_back(pseries_converges("sum_lambda_over_eps_sq_converges",
                                                     2.0 * (p - q), "sum (lambda_n/eps_n)^2"));
        report.relations.push_back(
            pseries_converges("sum_lambda_eps_converges", p + q, "sum lambda_n*eps_n"));
        ScheduleRelation dec;
        dec.name = "eps_decreases_to_zero";
        dec.holds = q > 0.0;
        dec.detail = "eps_n = n^(-" + fmt(q) + ") " +
                     (dec.holds ? "decreases to 0" : "does not decrease to 0");
        report.relations.push_back(dec);
        return finalize(report);
    }

    const auto& list = *schedule.as_list();
    report.heuristic = true;
    std::vector<double> ratio_sq(list.lambda.size());
    std::vector<double> product(list.lambda.size());
    for (std::size_t k = 0; k < list.lambda.size(); ++k) {
        const double r = list.lambda[k] / list.eps[k];
        ratio_sq[k] = r * r;
        product[k] = list.lambda[k] * list.eps[k];
    }
    report.relations.push_back(pseries_diverges(
        "sum_lambda_diverges", fitted_decay_exponent(list.lambda), "sum lambda_n"));
    report.relations.push_back(pseries_converges("sum_lambda_over_eps_sq_converges",
                                                 fitted_decay_exponent(ratio_sq),
                                                 "sum (lambda_n/eps_n)^2"));
    report.relations.push_back(pseries_converges(
        "sum_lambda_eps_converges", fitted_decay_exponent(product), "sum lambda_n*eps_n"));

    ScheduleRelation dec;
    dec.name = "eps_decreases_to_zero";
    bool nonincreasing = true;
    for (std::size_t k = 1; k < list.eps.size(); ++k) {
        if (list.eps[k] > list.eps[k - 1]) nonincreasing = false;
    }
    const double eps_exponent = fitted_decay_exponent(list.eps);
    dec.holds = nonincreasing && eps_exponent > 0.0;
    dec.detail = nonincreasing ? "eps_n nonincreasing, fitted decay exponent " + fmt(eps_exponent)
                               : "eps_n is not nonincreasing";
    report.relations.push_back(dec);
    return finalize(report);
}

ValidityReport validate_schedule_passty(const StepSchedule& schedule) {
    ValidityReport report;
    if (const auto* pw = schedule.as_power()) {
        const double p = pw->p;
        report.relations.push_back(
            pseries_diverges("sum_lambda_diverges", p, "sum lambda_n"));
        report.relations.push_back(
            pseries_converges("sum_lambda_sq_converges", 2.0 * p, "sum lambda_n^2"));
        return finalize(report);
    }
    const auto& list = *schedule.as_list();
    report.heuristic = true;
    std::vector<double> sq(list.lambda.size());
    for (std::size_t k = 0; k < list.lambda.size(); ++k) sq[k] = list.lambda[k] * list.lambda[k];
    report.relations.push_back(pseries_diverges(
        "sum_lambda_diverges", fitted_decay_exponent(list.lambda), "sum lambda_n"));
    report.relations.push_back(pseries_converges(
        "sum_lambda_sq_converges", fitted_decay_exponent(sq), "sum lambda_n^2"));
    return finalize(report);
}

} // namespace extsum

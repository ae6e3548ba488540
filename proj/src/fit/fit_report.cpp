/*
 * Copyright 2026 The heapscope Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <stdexcept>

#include "heapscope/fit.hpp"

namespace heapscope::fit {

std::string_view to_string(FitMethod m) {
    switch (m) {
    case FitMethod::LsLogLog:
        return "LS_LOGLOG";
    case FitMethod::MleMultinomial:
        return "MLE_MULTINOMIAL";
    }
    return "UNKNOWN";
}

FitMethod parse_fit_method(std::string_view s) {
    if (s == "LS_LOGLOG")
        return FitMethod::LsLogLog;
    if (s == "MLE_MULTINOMIAL")
        return FitMethod::MleMultinomial;
    throw std::invalid_argument("unknown fit method '" + std::string(s) + "'");
}

nlohmann::json fit_report(const PowerLawFit &fit) {
    nlohmann::json j;
    j["method"] = std::string(to_string(fit.method));
    j["exponent"] = fit.exponent;
    j["log_prefactor"] = fit.log_prefactor;
    j["range"] = {fit.range_lo, fit.range_hi};
    j["n_points"] = fit.n_points;
    if (fit.method == FitMethod::LsLogLog)
        j["residual_sum_squares"] = fit.diagnostic;
    else
        j["log_likelihood"] = fit.diagnostic;
    return j;
}

PowerLawFit parse_fit_report(const nlohmann::json &j) {
    PowerLawFit fit;
    fit.method = parse_fit_method(j.at("method").get<std::string>());
    fit.exponent = j.at("exponent").get<double>();
    fit.log_prefactor = j.at("log_prefactor").get<double>();
    const auto &range = j.at("range");
    fit.range_lo = range.at(0).get<double>();
    fit.range_hi = range.at(1).get<double>();
    fit.n_points = j.at("n_points").get<std::size_t>();
    fit.diagnostic = fit.method == FitMethod::LsLogLog ? j.at("residual_sum_squares").get<double>()
                                                       : j.at("log_likelihood").get<double>();
    return fit;
}

} // namespace heapscope::fit

#pragma once

#include <string>

#include <json.hpp>

#include "xigap/functionals.hpp"
#include "xigap/optimize.hpp"
#include "xigap/zerofinder.hpp"

namespace xigap {

using json = nlohmann::ordered_json;

/// x rounded to 12 significant digits, so dumps are stable across runs.
double round12(double x);
/// %.12g
std::string fmt12(double x);

std::string to_string(ZeroKind kind);
ZeroKind zero_kind_from_string(const std::string& s);
std::string to_string(MollifierKind kind);
std::string to_string(CoeffKind kind);

/// index,kind,ordinate,bracket_lo,bracket_hi
std::string zeros_csv(const ZeroList& zeros);
/// Reads the CSV above back; t_min / t_max come from the caller.
ZeroList zeros_from_csv(const std::string& text, double t_min, double t_max);

json to_json(const ZeroList& zeros);
json to_json(const GapStats& stats);
json to_json(const DistributionTable& table);
/// alpha,D,frac_delta_one_gt,frac_delta_zero_lt
std::string distribution_csv(const DistributionTable& table);
json to_json(const MollifierSpec& spec);
json to_json(const FunctionalResult& result);
json to_json(const OptReport& report);
json to_json(const EmpiricalResult& result);

}  // namespace xigap

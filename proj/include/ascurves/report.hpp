#pragma once

#include <cstdint>
#include <string>

#include "ascurves/parse.hpp"

namespace ascurves {

// Human-readable or JSON reports for the CLI. JSON key order is fixed.
std::string report_strata(int g, std::int64_t p, bool json);
std::string report_classify(const CurveSpec& spec, bool json);
std::string report_invariants(const CurveSpec& spec, bool json);
std::string report_isomorphic(const CurveSpec& a, const CurveSpec& b, bool json);
std::string report_orbit(const CurveSpec& spec, bool json);
std::string report_census(std::int64_t p, int g, int s, const std::string& partition_csv,
                          std::uint64_t q, std::uint64_t budget, bool json);

}  // namespace ascurves

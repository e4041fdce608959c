#pragma once

#include <string>

#include "tiltmom/diagnostics.hpp"
#include "tiltmom/karamata.hpp"
#include "tiltmom/oracle.hpp"
#include "tiltmom/tilt.hpp"

namespace tiltmom {

// JSON serialization with sorted keys and shortest round-trip numbers, so
// identical inputs produce byte-identical output.
std::string to_json(const VariationClass& cls);
std::string to_json(const MomentSet& ms);
std::string to_json(const TiltPoint& tp);
std::string to_json(const DiagnosticsReport& report);

// One CSV per ratio series: header t,exact,asymptotic,ratio then one row
// per grid point, shortest round-trip decimals.
std::string ratio_series_csv(const RatioSeries& series);

}  // namespace tiltmom

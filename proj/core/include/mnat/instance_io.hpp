#pragma once

#include <string>

#include <json.hpp>

#include "mnat/adversarial.hpp"
#include "mnat/greedy.hpp"
#include "mnat/lattice.hpp"
#include "mnat/matroid.hpp"
#include "mnat/mchecker.hpp"
#include "mnat/valuations.hpp"

namespace mnat {

/// Builds a valuation from an instance document:
///   {"family":"separable","tables":[[...],...],"K":k}
///   {"family":"oxs","left":N,"right":M,"edges":[[i,j,w],...],"caps":[...]}
///   {"family":"matroid_distance","matroid":{...}}
///   {"family":"table","box":[...],"values":[...]}   (null = -infinity)
/// An optional top-level "rescale":[lo,hi] maps the range onto [0,1].
/// Elements and edge endpoints are 0-based.
Valuation valuation_from_json(const nlohmann::json& doc);

/// Matroid documents:
///   {"type":"uniform","n":N,"r":r}
///   {"type":"partition","blocks":[[...],...],"caps":[...]}
///   {"type":"explicit","n":N,"bases":[[...],...]}  ("n" optional)
Matroid matroid_from_json(const nlohmann::json& doc);

Valuation load_valuation(const std::string& path);
Matroid load_matroid(const std::string& path);

nlohmann::json point_to_json(const Point& p);
nlohmann::json report_to_json(const ExchangeReport& report);
nlohmann::json trajectory_to_json(const Trajectory& traj);
nlohmann::json audit_to_json(const RobustnessAudit& audit);

/// Semicolon-joined coordinates, e.g. "1;0;2".
std::string format_point(const Point& p);

/// Fixed %.12g rendering so emitted CSV bytes are stable.
std::string format_double(double v);

} // namespace mnat

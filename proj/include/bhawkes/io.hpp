#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "bhawkes/cluster_sim.hpp"
#include "bhawkes/estimate.hpp"
#include "bhawkes/exact_sim.hpp"
#include "bhawkes/moments.hpp"
#include "bhawkes/price.hpp"
#include "bhawkes/scaling.hpp"

namespace bhawkes {

inline constexpr const char* kToolkitVersion = "0.1.0";

/// 17 significant digits, locale independent.
std::string format_double(double v);

nlohmann::ordered_json to_json(const ModelParams& p);
ModelParams params_from_json(const nlohmann::json& j);

/// The commented first line of every output file: "# " followed by compact
/// JSON with tool, version and the caller's reproduction record.
void write_metadata(std::ostream& os, const nlohmann::ordered_json& record);
/// Parses a metadata line; returns null JSON when the line is not one.
nlohmann::json parse_metadata(const std::string& line);

/// time,kind,lambda,gamma,n
void write_event_log_csv(std::ostream& os, const EventLog& log, const nlohmann::ordered_json& meta);
/// Reads an event log CSV. Params, seed and horizon come from the metadata
/// line; L and K are rebuilt from the event kinds. Throws ConfigError.
EventLog read_event_log_csv(std::istream& is);

/// t,lambda,gamma,n
void write_grid_csv(std::ostream& os, const GridSample& g, const nlohmann::ordered_json& meta);
/// time
void write_order_times_csv(std::ostream& os, const ClusterSample& s, const nlohmann::ordered_json& meta);
/// time,z (one row at 0 and one per birth)
void write_z_path_csv(std::ostream& os, std::span<const double> births, const nlohmann::ordered_json& meta);
/// t,ell,g,m,pbar,qbar,rbar,ubar,vbar,wbar,x,y
void write_moment_curves_csv(std::ostream& os, const MomentCurves& mc, const nlohmann::ordered_json& meta);
/// m,t,n_paths,emp_mean,emp_var,predicted_var,ks
void write_scaling_csv(std::ostream& os, const ScalingReport& r, const nlohmann::ordered_json& meta);
nlohmann::ordered_json to_json(const ScalingReport& r);
/// t,price
void write_price_csv(std::ostream& os, const PricePath& path, const nlohmann::ordered_json& meta);
nlohmann::ordered_json to_json(const Estimates& e);

} // namespace bhawkes

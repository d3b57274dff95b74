#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "msroute/metrics.hpp"
#include "msroute/router.hpp"

namespace msroute {

struct NetRecord {
    int id = 0;
    std::string name;
    std::string status;
    int degree = 0;
    double hpwl = 0.0;
    double wirelength = 0.0;
    int vias = 0;
    int pairs = 0;
    int steiner_points = 0;
    double max_detour = 0.0;
};

struct RouteReport {
    std::string config;
    std::string search;
    std::string profile;
    int layers = 0;
    std::string layer_model;
    std::string balance;
    double capacity_scale = 1.0;
    std::string instance_hash;
    int blocks = 0;
    int segments = 0;
    int junctions = 0;

    std::vector<NetRecord> nets;  // by net id

    int net_count = 0;
    int routed = 0;
    double routed_percent = 100.0;
    double total_wirelength = 0.0;
    long long total_vias = 0;
    double total_hpwl = 0.0;
    double runtime_seconds = 0.0;

    CongestionSummary congestion;
};

RouteReport summarize(const RoutingProblem& problem, const RouteOutcome& outcome);

// Runtime is left out when include_runtime is false so that two runs compare byte for byte.
std::string report_json(const RouteReport& report, bool include_runtime = true);

// id,name,status,degree,hpwl,wirelength,vias,pairs,steiner_points,max_detour
std::string nets_csv(const RouteReport& report);

// One row per report: config,search,profile,layers,layer_model,balance,instance_hash,
// nets,routed,routed_percent,total_wirelength,total_vias,total_hpwl,wace4,wace4_max,runtime_seconds
std::string summary_csv(std::span<const RouteReport> reports, bool include_runtime = true);

// config,wirelength,vias,runtime_seconds
std::string plot_data_csv(std::span<const RouteReport> reports);

} // namespace msroute

#include "msroute/report.hpp"

#include <json.hpp>

#include "msroute/floorplan_io.hpp"

namespace msroute {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json optional_number(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

std::string csv_optional(const std::optional<double>& v) { return v ? format_fixed(*v) : ""; }

} // namespace

RouteReport summarize(const RoutingProblem& problem, const RouteOutcome& outcome) {
    const RunConfig& c = problem.config;
    RouteReport r;
    r.config = c.name();
    r.search = c.search == Search::Forward ? "forward" : "backward";
    r.profile = to_string(c.profile.kind);
    r.layers = c.profile.layers;
    r.layer_model = to_string(c.profile.model);
    r.balance = to_string(c.balance);
    r.capacity_scale = c.capacity_scale;
    r.instance_hash = instance_hash(problem.fp);
    r.blocks = problem.fp.block_count();
    r.segments = static_cast<int>(problem.segments.size());
    r.junctions = static_cast<int>(problem.junctions.size());

    for (const Net& net : problem.fp.nets) {
        const NetResult& res = outcome.results.at(static_cast<std::size_t>(net.id));
        NetRecord rec;
        rec.id = net.id;
        rec.name = net.name;
        rec.status = to_string(res.status);
        rec.degree = net.degree();
        rec.hpwl = net.hpwl;
        if (res.status == NetStatus::Routed) {
            rec.wirelength = res.smst.wirelength;
            rec.vias = res.smst.vias;
            rec.pairs = static_cast<int>(res.smst.paths.size());
            rec.steiner_points = static_cast<int>(res.smst.steiner_points.size());
            rec.max_detour = res.max_detour;
            ++r.routed;
            r.total_wirelength += rec.wirelength;
            r.total_vias += rec.vias;
        }
        r.total_hpwl += net.hpwl;
        r.nets.push_back(std::move(rec));
    }
    r.net_count = static_cast<int>(r.nets.size());
    r.routed_percent = r.net_count == 0 ? 100.0 : 100.0 * r.routed / r.net_count;
    r.runtime_seconds = outcome.runtime_seconds;
    r.congestion = summarize_congestion(take_snapshot(outcome.state.segments, c.profile), c.profile.layers);
    return r;
}

std::string report_json(const RouteReport& r, bool include_runtime) {
    ordered_json j;
    j["config"] = {
        {"name", r.config},          {"search", r.search},   {"profile", r.profile},
        {"layers", r.layers},        {"layer_model", r.layer_model}, {"balance", r.balance},
        {"capacity_scale", r.capacity_scale},
    };
    j["instance"] = {
        {"hash", r.instance_hash}, {"blocks", r.blocks}, {"segments", r.segments}, {"junctions", r.junctions},
    };
    ordered_json totals = {
        {"nets", r.net_count},
        {"routed", r.routed},
        {"routed_percent", r.routed_percent},
        {"wirelength", r.total_wirelength},
        {"vias", r.total_vias},
        {"hpwl", r.total_hpwl},
    };
    if (include_runtime) {
        totals["runtime_seconds"] = r.runtime_seconds;
    }
    j["totals"] = totals;
    ordered_json per_layer = ordered_json::array();
    for (const auto& v : r.congestion.per_layer) {
        per_layer.push_back(optional_number(v));
    }
    j["congestion"] = {
        {"wace4", optional_number(r.congestion.wace4)},
        {"wace4_per_layer", per_layer},
        {"wace4_max_layer", optional_number(r.congestion.max_over_layers)},
        {"max_p", r.congestion.max_p},
    };
    ordered_json nets = ordered_json::array();
    for (const NetRecord& n : r.nets) {
        nets.push_back({
            {"id", n.id},
            {"name", n.name},
            {"status", n.status},
            {"degree", n.degree},
            {"hpwl", n.hpwl},
            {"wirelength", n.wirelength},
            {"vias", n.vias},
            {"pairs", n.pairs},
            {"steiner_points", n.steiner_points},
            {"max_detour", n.max_detour},
        });
    }
    j["nets"] = nets;
    return j.dump(2) + "\n";
}

std::string nets_csv(const RouteReport& r) {
    std::string out = "id,name,status,degree,hpwl,wirelength,vias,pairs,steiner_points,max_detour\n";
    for (const NetRecord& n : r.nets) {
        out += std::to_string(n.id) + "," + n.name + "," + n.status + "," + std::to_string(n.degree) + "," +
               format_fixed(n.hpwl) + "," + format_fixed(n.wirelength) + "," + std::to_string(n.vias) + "," +
               std::to_string(n.pairs) + "," + std::to_string(n.steiner_points) + "," + format_fixed(n.max_detour) + "\n";
    }
    return out;
}

std::string summary_csv(std::span<const RouteReport> reports, bool include_runtime) {
    std::string out =
        "config,search,profile,layers,layer_model,balance,instance_hash,nets,routed,routed_percent,"
        "total_wirelength,total_vias,total_hpwl,wace4,wace4_max,runtime_seconds\n";
    for (const RouteReport& r : reports) {
        out += r.config + "," + r.search + "," + r.profile + "," + std::to_string(r.layers) + "," + r.layer_model + "," +
               r.balance + "," + r.instance_hash + "," + std::to_string(r.net_count) + "," + std::to_string(r.routed) + "," +
               format_fixed(r.routed_percent) + "," + format_fixed(r.total_wirelength) + "," +
               std::to_string(r.total_vias) + "," + format_fixed(r.total_hpwl) + "," + csv_optional(r.congestion.wace4) +
               "," + csv_optional(r.congestion.max_over_layers) + "," +
               (include_runtime ? format_fixed(r.runtime_seconds) : "") + "\n";
    }
    return out;
}

std::string plot_data_csv(std::span<const RouteReport> reports) {
    std::string out = "config,wirelength,vias,runtime_seconds\n";
    for (const RouteReport& r : reports) {
        out += r.config + "," + format_fixed(r.total_wirelength) + "," + std::to_string(r.total_vias) + "," +
               format_fixed(r.runtime_seconds) + "\n";
    }
    return out;
}

} // namespace msroute

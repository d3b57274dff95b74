#include "msroute/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>

#include "msroute/adjacency.hpp"
#include "msroute/error.hpp"
#include "msroute/floorplan_io.hpp"
#include "msroute/generator.hpp"
#include "msroute/report.hpp"
#include "msroute/router.hpp"

namespace msroute {

namespace {

namespace fs = std::filesystem;

struct InstanceArgs {
    std::string blocks, pl, nets;
    int n = 0;
    int k = 0;
    int max_degree = 6;
    std::uint64_t seed = 1;
};

struct RunArgs {
    std::string config = "FCN";
    int layers = 8;
    std::string layer_model = "reserved-hv";
    std::string balance = "number";
    double capacity_scale = 1.0;
    std::string out = ".";
    std::string report = "both";
    bool all_configs = false;
};

void add_instance_options(CLI::App* app, InstanceArgs& a, bool allow_generate) {
    app->add_option("--blocks", a.blocks, ".blocks file");
    app->add_option("--pl", a.pl, ".pl file");
    app->add_option("--nets", a.nets, ".nets file");
    if (allow_generate) {
        app->add_option("--n", a.n, "generate an instance with this many blocks instead of reading files");
        app->add_option("--k", a.k, "net count for a generated instance");
        app->add_option("--max-degree", a.max_degree, "largest net degree for a generated instance");
    }
    app->add_option("--seed", a.seed, "generator seed");
}

void add_run_options(CLI::App* app, RunArgs& a) {
    app->add_option("--config", a.config, "FCN|FCH|FCL|BCN|BCH|BCL")
        ->check(CLI::IsMember({"FCN", "FCH", "FCL", "BCN", "BCH", "BCL"}));
    app->add_option("--layers", a.layers, "metal layers M")->check(CLI::PositiveNumber);
    app->add_option("--layer-model", a.layer_model, "reserved-hv|unreserved")
        ->check(CLI::IsMember({"reserved-hv", "unreserved"}));
    app->add_option("--balance", a.balance, "number|area")->check(CLI::IsMember({"number", "area"}));
    app->add_option("--capacity-scale", a.capacity_scale, "multiply every estimated capacity")->check(CLI::PositiveNumber);
    app->add_option("--out", a.out, "output directory");
    app->add_option("--report", a.report, "json|csv|both")->check(CLI::IsMember({"json", "csv", "both"}));
}

Floorplan load_instance(const InstanceArgs& a) {
    if (!a.blocks.empty() || !a.pl.empty() || !a.nets.empty()) {
        if (a.blocks.empty() || a.pl.empty() || a.nets.empty()) {
            throw PreconditionError("--blocks, --pl and --nets must be given together");
        }
        return load_floorplan(a.blocks, a.pl, a.nets);
    }
    if (a.n > 0) {
        return generate_random_floorplan(GeneratorOptions{a.n, a.k, a.max_degree, a.seed});
    }
    throw PreconditionError("give --blocks/--pl/--nets or --n/--k");
}

RunConfig make_config(const RunArgs& a, const std::string& name) {
    RunConfig c = preset(name, a.layers, a.layer_model == "unreserved" ? LayerModel::Unreserved : LayerModel::ReservedHV,
                         a.balance == "area" ? Balance::Area : Balance::Number);
    c.capacity_scale = a.capacity_scale;
    return c;
}

RouteReport run_one(const Floorplan& fp, const RunConfig& c) {
    const RoutingProblem problem = prepare_problem(fp, c);
    const RouteOutcome outcome = route_all(problem);
    return summarize(problem, outcome);
}

void write_report(const RouteReport& r, const fs::path& dir, const std::string& stem, const std::string& kind) {
    if (kind == "json" || kind == "both") {
        write_text_file(dir / (stem + ".json"), report_json(r));
    }
    if (kind == "csv" || kind == "both") {
        write_text_file(dir / (stem + "_nets.csv"), nets_csv(r));
    }
}

void print_line(std::ostream& out, const RouteReport& r) {
    out << r.config << ": routed " << r.routed << "/" << r.net_count << " wirelength " << format_fixed(r.total_wirelength)
        << " vias " << r.total_vias << " wACE4 " << (r.congestion.wace4 ? format_fixed(*r.congestion.wace4) : "n/a")
        << " runtime " << format_fixed(r.runtime_seconds) << "s\n";
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Staircase global router for block-level floorplans", "msroute"};
    app.require_subcommand(1);

    InstanceArgs route_in, sweep_in, dump_in;
    RunArgs route_run, sweep_run, dump_run;

    auto* route = app.add_subcommand("route", "route one configuration");
    add_instance_options(route, route_in, true);
    add_run_options(route, route_run);

    auto* sweep = app.add_subcommand("sweep", "route several configurations on one instance");
    add_instance_options(sweep, sweep_in, true);
    add_run_options(sweep, sweep_run);
    sweep->add_flag("--all-configs", sweep_run.all_configs, "run FCN, FCH, FCL, BCN, BCH and BCL");

    GeneratorOptions gen_opt;
    gen_opt.max_degree = 6;
    std::string gen_out = ".";
    std::string gen_name = "instance";
    auto* gen = app.add_subcommand("gen", "write a random mosaic instance");
    gen->add_option("--n", gen_opt.blocks, "block count")->required();
    gen->add_option("--k", gen_opt.nets, "net count")->required();
    gen->add_option("--max-degree", gen_opt.max_degree, "largest net degree");
    gen->add_option("--seed", gen_opt.seed, "seed");
    gen->add_option("--out", gen_out, "output directory");
    gen->add_option("--name", gen_name, "file stem");

    auto* dump = app.add_subcommand("dump-graph", "write the BAGs, MSC tree, segments and junction graph");
    add_instance_options(dump, dump_in, true);
    add_run_options(dump, dump_run);
    bool dump_unrouted = false;
    dump->add_flag("--no-route", dump_unrouted, "dump the junction graph before routing");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        try {
            app.parse(reversed);
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e, out, err);
            return code == 0 ? 0 : 1;
        }

        if (*gen) {
            const Floorplan fp = generate_random_floorplan(gen_opt);
            const auto report = validate_floorplan(fp);
            if (!report.passed()) {
                throw InvariantError("generated floorplan failed validation: " + report.summary());
            }
            fs::create_directories(gen_out);
            save_floorplan(fp, gen_out, gen_name);
            out << "wrote " << (fs::path(gen_out) / gen_name).string() << ".{blocks,pl,nets} hash " << instance_hash(fp) << "\n";
            return 0;
        }

        if (*route) {
            const Floorplan fp = load_instance(route_in);
            const RouteReport r = run_one(fp, make_config(route_run, route_run.config));
            fs::create_directories(route_run.out);
            write_report(r, route_run.out, "report", route_run.report);
            if (route_run.report != "json") {
                write_text_file(fs::path(route_run.out) / "summary.csv", summary_csv(std::span(&r, 1)));
            }
            print_line(out, r);
            return 0;
        }

        if (*sweep) {
            const Floorplan fp = load_instance(sweep_in);
            std::vector<std::string> names{sweep_run.config};
            if (sweep_run.all_configs) {
                names = preset_names();
            }
            std::vector<RouteReport> reports;
            fs::create_directories(sweep_run.out);
            for (const auto& name : names) {
                reports.push_back(run_one(fp, make_config(sweep_run, name)));
                write_report(reports.back(), sweep_run.out, name, sweep_run.report);
                print_line(out, reports.back());
            }
            write_text_file(fs::path(sweep_run.out) / "summary.csv", summary_csv(reports));
            write_text_file(fs::path(sweep_run.out) / "plot_data.csv", plot_data_csv(reports));
            return 0;
        }

        if (*dump) {
            const Floorplan fp = load_instance(dump_in);
            const fs::path dir = dump_run.out;
            fs::create_directories(dir);
            write_text_file(dir / "bag_mis.dot", bag_to_dot(build_bag(fp, Orientation::MIS), fp));
            write_text_file(dir / "bag_mds.dot", bag_to_dot(build_bag(fp, Orientation::MDS), fp));
            const RoutingProblem problem = prepare_problem(fp, make_config(dump_run, dump_run.config));
            write_text_file(dir / "msc_tree.txt", msc_tree_text(problem.tree, problem.fp));
            write_text_file(dir / "segments.csv", segments_csv(problem.segments));
            std::vector<Segment> segs = problem.segments;
            if (!dump_unrouted) {
                segs = route_all(problem).state.segments;
            }
            write_text_file(dir / "junction_graph.csv", junction_graph_csv(problem.graph, segs, problem.config.profile));
            out << "junctions " << problem.junctions.size() << " (interior " << interior_junction_count(problem.junctions)
                << ") segments " << problem.segments.size() << " junction-graph edges " << problem.graph.edge_count()
                << " (3n-7 = " << 3 * fp.block_count() - 7 << ")\n";
            return 0;
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const InvariantError& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run_cli(args, std::cout, std::cerr);
}

} // namespace msroute

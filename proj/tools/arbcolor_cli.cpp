#include "arbcolor/arbcolor.hpp"
#include "verifier.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace arbcolor;
using nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kAlgorithmFailed = 3 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::optional<std::uint32_t> n;
    std::optional<std::uint32_t> alpha;
    std::optional<std::uint32_t> beta;
    double epsilon = 1.0;
    double delta = 0.5;
    double c = 7.0;
    std::optional<std::uint64_t> x;
    std::uint64_t seed = 1;
    std::string pipeline;
    std::string in;
    std::string out;
    std::string format = "json";
    std::string partition_file;
    std::string coloring_file;
    std::optional<std::uint64_t> palette_bound;
    std::vector<std::uint32_t> grid_n;
    std::vector<std::uint32_t> grid_alpha;
    std::vector<std::string> grid_pipeline;
    bool omit_timing = false;
};

Graph load_graph(const std::string& path) {
    std::ifstream f(path);
    if (!f) {
        throw std::runtime_error("cannot open " + path);
    }
    return read_edge_list(f);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) {
        throw std::runtime_error("cannot write " + path);
    }
    return f;
}

PipelineConfig pipeline_config(const Options& o) {
    PipelineConfig cfg;
    cfg.delta = o.delta;
    cfg.c = o.c;
    cfg.epsilon = o.epsilon;
    cfg.x_override = o.x;
    cfg.alpha_hint = o.alpha;
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return cfg;
}

void emit(const ordered_json& j, const std::string& format) {
    if (format == "json") {
        std::cout << j.dump(2) << '\n';
        return;
    }
    // One header line and one value line over the scalar fields.
    std::string header;
    std::string row;
    for (const auto& [key, value] : j.items()) {
        if (value.is_structured()) {
            continue;
        }
        header += (header.empty() ? "" : ",") + key;
        row += (row.empty() ? "" : ",") + (value.is_string() ? value.get<std::string>() : value.dump());
    }
    std::cout << header << '\n' << row << '\n';
}

int fail_json(int code, const std::string& error, ordered_json extra = ordered_json::object()) {
    ordered_json j;
    j["error"] = error;
    j["exit_code"] = code;
    for (const auto& [k, v] : extra.items()) {
        j[k] = v;
    }
    std::cerr << j.dump() << '\n';
    return code;
}

int cmd_generate(const Options& o) {
    if (!o.n || !o.alpha || o.out.empty()) {
        throw UsageError("generate needs --n, --alpha and --out");
    }
    if (*o.alpha < 1) {
        throw UsageError("--alpha must be at least 1");
    }
    auto [g, cert] = generate_forest_union(*o.n, *o.alpha, o.seed);
    auto f = open_out(o.out);
    write_edge_list(f, g);
    auto cf = open_out(o.out + ".cert");
    write_certificate(cf, cert);
    ordered_json j;
    j["n"] = g.num_nodes();
    j["m"] = g.num_edges();
    j["alpha"] = cert.value();
    j["seed"] = o.seed;
    j["graph"] = o.out;
    j["certificate"] = o.out + ".cert";
    emit(j, o.format);
    return kOk;
}

int cmd_partition(const Options& o) {
    if (o.in.empty()) {
        throw UsageError("partition needs --in");
    }
    auto cfg = pipeline_config(o);
    const Graph g = load_graph(o.in);
    PipelineResult result;
    std::optional<GuessResult> guess;
    if (o.beta) {
        if (*o.beta < 1) {
            throw UsageError("--beta must be at least 1");
        }
        cfg.beta = *o.beta;
        result = partition_pipeline(g, cfg);
    } else if (o.alpha) {
        cfg.beta = beta_for_alpha(*o.alpha, o.epsilon);
        result = partition_pipeline(g, cfg);
    } else {
        if (g.num_nodes() == 0) {
            throw UsageError("cannot guess arboricity of an empty graph");
        }
        guess = guess_arboricity_pipeline(g, cfg, o.epsilon);
        result = guess->result;
        cfg.beta = result.partition.beta;
    }
    auto report = pipeline_report(g, cfg, result);
    if (guess) {
        report["alpha_estimate"] = guess->alpha_estimate;
        report["phase1_estimate"] = guess->phase1_estimate;
        report["charged_rounds"] = guess->charged_rounds;
    }
    if (!result.ok()) {
        return fail_json(kAlgorithmFailed, "FAILED_TO_PROGRESS", {{"diagnostics", result.diagnostics},
                                                                   {"report", report}});
    }
    if (!o.out.empty()) {
        auto f = open_out(o.out);
        write_partition(f, result.partition);
    }
    emit(report, o.format);
    return report["valid"].get<bool>() ? kOk : kVerifyFailed;
}

int cmd_color(const Options& o) {
    if (o.in.empty() || o.pipeline.empty()) {
        throw UsageError("color needs --in and --pipeline");
    }
    const auto which = parse_color_pipeline(o.pipeline);
    if (!which) {
        throw UsageError("unknown pipeline '" + o.pipeline + "'");
    }
    if (*which != ColorPipeline::Derand && !o.alpha) {
        throw UsageError("pipeline " + o.pipeline + " needs --alpha");
    }
    ColorConfig cfg;
    cfg.alpha = o.alpha.value_or(1);
    if (cfg.alpha < 1) {
        throw UsageError("--alpha must be at least 1");
    }
    cfg.partition = pipeline_config(o);
    if (*which == ColorPipeline::Derand) {
        cfg.derand_x = o.x.value_or(2);
        cfg.partition.x_override.reset();
    }
    const Graph g = load_graph(o.in);
    ColoringReport rep;
    try {
        rep = run_color_pipeline(g, cfg, *which);
    } catch (const PipelineFailure& e) {
        return fail_json(kAlgorithmFailed, "FAILED_TO_PROGRESS",
                         {{"phase", "partition"}, {"diagnostics", e.result.diagnostics}});
    } catch (const DerandFailure& e) {
        return fail_json(kAlgorithmFailed, e.what(), {{"phase", "derand"}});
    }
    const bool proper = is_proper(g, rep.coloring);
    const bool within = rep.coloring.palette <= rep.palette_bound;
    if (!o.out.empty()) {
        auto f = open_out(o.out);
        write_coloring(f, rep.coloring);
    }
    ordered_json phases = ordered_json::array();
    for (const auto& p : rep.phases) {
        phases.push_back({{"name", p.name}, {"rounds", p.rounds}});
    }
    ordered_json j;
    j["pipeline"] = to_string(rep.pipeline);
    j["n"] = g.num_nodes();
    j["m"] = g.num_edges();
    j["alpha"] = cfg.alpha;
    j["beta"] = rep.beta;
    j["palette"] = rep.coloring.palette;
    j["palette_bound"] = rep.palette_bound;
    j["proper"] = proper;
    j["rounds_charged"] = rep.rounds_charged();
    j["pre_recolor_conflicts"] = rep.pre_recolor_conflicts;
    j["phases"] = phases;
    j["notes"] = rep.notes;
    emit(j, o.format);
    return proper && within ? kOk : kVerifyFailed;
}

int cmd_verify(const Options& o) {
    if (o.in.empty() || (o.partition_file.empty() && o.coloring_file.empty())) {
        throw UsageError("verify needs --in and at least one of --partition / --coloring");
    }
    if (!o.partition_file.empty() && !o.beta) {
        throw UsageError("verifying a partition needs --beta");
    }
    const Graph g = load_graph(o.in);
    ordered_json j;
    bool ok = true;
    if (!o.partition_file.empty()) {
        std::ifstream f(o.partition_file);
        if (!f) {
            throw std::runtime_error("cannot open " + o.partition_file);
        }
        auto parsed = verify::parse_node_values(f, g.num_nodes(), true);
        if (!parsed.error.empty()) {
            throw FormatError("partition file: " + parsed.error);
        }
        const auto c = verify::check_partition(g, parsed.values, *o.beta);
        j["partition"] = {{"valid", c.valid},
                          {"size", c.size},
                          {"infinity_count", c.infinity_count},
                          {"violations", c.violations}};
        ok = ok && c.valid;
    }
    if (!o.coloring_file.empty()) {
        std::ifstream f(o.coloring_file);
        if (!f) {
            throw std::runtime_error("cannot open " + o.coloring_file);
        }
        auto parsed = verify::parse_node_values(f, g.num_nodes(), false);
        if (!parsed.error.empty()) {
            throw FormatError("coloring file: " + parsed.error);
        }
        const auto c = verify::check_coloring(g, parsed.values, o.palette_bound);
        ordered_json conflicts = ordered_json::array();
        for (const auto& [u, v] : c.conflicts) {
            conflicts.push_back({u, v});
        }
        j["coloring"] = {{"proper", c.proper},
                         {"palette", c.palette},
                         {"within_bound", c.within_bound},
                         {"conflicts", conflicts}};
        ok = ok && c.proper && c.within_bound;
    }
    j["ok"] = ok;
    std::cout << j.dump(2) << '\n';
    return ok ? kOk : kVerifyFailed;
}

int cmd_bench(const Options& o) {
    if (o.grid_n.empty() || o.grid_alpha.empty() || o.grid_pipeline.empty()) {
        throw UsageError("bench needs --n, --alpha and --pipeline");
    }
    if (o.format != "csv" && o.format != "json") {
        throw UsageError("--format must be csv or json");
    }
    const auto base = pipeline_config(o);
    for (const auto& name : o.grid_pipeline) {
        if (name != "lca" && name != "peel" && !parse_color_pipeline(name)) {
            throw UsageError("unknown pipeline '" + name + "'");
        }
    }
    for (auto a : o.grid_alpha) {
        if (a < 1) {
            throw UsageError("--alpha must be at least 1");
        }
    }

    ordered_json rows = ordered_json::array();
    for (const auto& name : o.grid_pipeline) {
        for (auto n : o.grid_n) {
            for (auto alpha : o.grid_alpha) {
                auto [g, cert] = generate_forest_union(n, alpha, o.seed);
                const auto start = std::chrono::steady_clock::now();
                ordered_json row;
                row["n"] = n;
                row["alpha"] = alpha;
                PipelineConfig cfg = base;
                cfg.beta = o.beta.value_or(beta_for_alpha(alpha, o.epsilon));
                std::uint64_t rounds = 0;
                std::uint64_t size = 0;
                std::uint64_t palette = 0;
                std::uint64_t reads = 0;
                std::uint64_t x = cfg.x_for(g.num_nodes());
                bool valid = false;
                if (name == "lca" || name == "peel") {
                    auto r = name == "lca" ? partition_pipeline(g, cfg) : peel_pipeline(g, cfg.beta);
                    const auto check = validate_partition(g, r.partition);
                    rounds = r.ledger.rounds;
                    size = check.size;
                    reads = r.ledger.max_machine_reads();
                    valid = r.ok() && check.valid() && check.infinity_count == 0;
                } else {
                    ColorConfig cc;
                    cc.alpha = alpha;
                    cc.partition = base;
                    cc.derand_x = o.x.value_or(2);
                    try {
                        auto rep = run_color_pipeline(g, cc, *parse_color_pipeline(name));
                        rounds = rep.rounds_charged();
                        palette = rep.coloring.palette;
                        if (rep.partition) {
                            size = validate_partition(g, rep.partition->partition).size;
                            reads = rep.partition->ledger.max_machine_reads();
                            cfg.beta = rep.beta;
                        }
                        valid = is_proper(g, rep.coloring) && rep.coloring.palette <= rep.palette_bound;
                    } catch (const PipelineFailure&) {
                        valid = false;
                    }
                }
                const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                    std::chrono::steady_clock::now() - start)
                                    .count();
                row["beta"] = cfg.beta;
                row["x"] = x;
                row["pipeline"] = name;
                row["rounds"] = rounds;
                row["size"] = size;
                row["palette"] = palette;
                row["max_reads"] = reads;
                row["wall_ms"] = o.omit_timing ? 0 : ms;
                row["valid"] = valid;
                rows.push_back(row);
            }
        }
    }

    std::ostringstream text;
    if (o.format == "json") {
        text << rows.dump(2) << '\n';
    } else {
        text << "n,alpha,beta,x,pipeline,rounds,size,palette,max_reads,wall_ms,valid\n";
        for (const auto& r : rows) {
            text << r["n"].dump() << ',' << r["alpha"].dump() << ',' << r["beta"].dump() << ',' << r["x"].dump()
                 << ',' << r["pipeline"].get<std::string>() << ',' << r["rounds"].dump() << ','
                 << r["size"].dump() << ',' << r["palette"].dump() << ',' << r["max_reads"].dump() << ','
                 << r["wall_ms"].dump() << ',' << r["valid"].dump() << '\n';
        }
    }
    if (o.out.empty()) {
        std::cout << text.str();
    } else {
        auto f = open_out(o.out);
        f << text.str();
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Low-arboricity partitioning and coloring toolkit"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--epsilon", o.epsilon, "slack in beta >= (2+eps) alpha");
        sub->add_option("--delta", o.delta, "machine space exponent");
        sub->add_option("--c", o.c, "divisor in x = n^(delta/c)");
        sub->add_option("--x", o.x, "LCA coin budget (derand: palette multiplier)");
        sub->add_option("--seed", o.seed, "random seed");
        sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    };

    auto* gen = app.add_subcommand("generate", "write a random union of alpha spanning trees");
    gen->add_option("--n", o.n, "number of nodes")->required();
    gen->add_option("--alpha", o.alpha, "number of trees")->required();
    gen->add_option("--out", o.out, "edge list path; certificate goes to <out>.cert")->required();
    add_common(gen);

    auto* part = app.add_subcommand("partition", "compute a beta-partition");
    part->add_option("--in", o.in, "edge list")->required();
    part->add_option("--out", o.out, "partition output path");
    part->add_option("--beta", o.beta, "out-degree bound");
    part->add_option("--alpha", o.alpha, "known arboricity; beta = ceil((2+eps) alpha)");
    add_common(part);

    auto* color = app.add_subcommand("color", "color the graph");
    color->add_option("--in", o.in, "edge list")->required();
    color->add_option("--out", o.out, "coloring output path");
    color->add_option("--pipeline", o.pipeline, "p1, p2, p3, large-poly, large-linear or derand")->required();
    color->add_option("--alpha", o.alpha, "certified arboricity");
    add_common(color);

    auto* ver = app.add_subcommand("verify", "re-check partition and coloring files");
    ver->add_option("--in", o.in, "edge list")->required();
    ver->add_option("--partition", o.partition_file, "partition file");
    ver->add_option("--coloring", o.coloring_file, "coloring file");
    ver->add_option("--beta", o.beta, "out-degree bound for the partition check");
    ver->add_option("--palette-bound", o.palette_bound, "largest allowed palette");

    auto* bench = app.add_subcommand("bench", "run a parameter grid and print one row per run");
    bench->add_option("--n", o.grid_n, "node counts")->required()->delimiter(',');
    bench->add_option("--alpha", o.grid_alpha, "arboricities")->required()->delimiter(',');
    bench->add_option("--pipeline", o.grid_pipeline, "lca, peel or a coloring pipeline")->required()->delimiter(',');
    bench->add_option("--beta", o.beta, "fixed beta for partition rows");
    bench->add_option("--out", o.out, "output path (default stdout)");
    bench->add_flag("--omit-timing", o.omit_timing, "write 0 for wall_ms");
    add_common(bench);
    bench->get_option("--format")->default_str("csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    if (bench->parsed() && bench->get_option("--format")->count() == 0) {
        o.format = "csv";
    }

    try {
        if (gen->parsed()) {
            return cmd_generate(o);
        }
        if (part->parsed()) {
            return cmd_partition(o);
        }
        if (color->parsed()) {
            return cmd_color(o);
        }
        if (ver->parsed()) {
            return cmd_verify(o);
        }
        return cmd_bench(o);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const FormatError& e) {
        return fail_json(kVerifyFailed, e.what());
    } catch (const std::exception& e) {
        return fail_json(kVerifyFailed, e.what());
    }
}

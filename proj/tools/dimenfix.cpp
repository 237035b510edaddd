// dimenfix command line: project, stress, bench, plot.
//
// Exit codes: 0 success, 1 usage error, 2 runtime error.

#include "dimenfix/bench.hpp"
#include "dimenfix/csv.hpp"
#include "dimenfix/engine.hpp"
#include "dimenfix/error.hpp"
#include "dimenfix/io.hpp"
#include "dimenfix/metrics.hpp"
#include "dimenfix/plot.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using namespace dimenfix;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double v) {
    return csv::format_double(v);
}

std::string scale_text(const ScaleRange& r) {
    return num(r.low) + "," + num(r.high);
}

// Picks the label column: the explicit flag, else a header column named
// "class" or "label".
std::optional<std::string> resolve_label_column(const fs::path& path,
                                                const std::optional<std::string>& flag) {
    if (flag) {
        return flag;
    }
    const auto rows = csv::parse(io::read_file(path));
    if (rows.empty()) {
        return std::nullopt;
    }
    for (const char* candidate : {"class", "label"}) {
        for (const auto& name : rows.front()) {
            if (name == candidate) {
                return name;
            }
        }
    }
    return std::nullopt;
}

ScaleRange scale_flag(const std::string& text) {
    try {
        return parse_scale_range(text);
    } catch (const InvalidArgument& ex) {
        throw UsageError(ex.what());
    }
}

struct ProjectOptions {
    std::string input;
    std::size_t dims = 2;
    std::string mode = "vanilla";
    std::optional<std::string> feature;
    std::optional<double> range;
    double ci = 0.95;
    std::string gauss_displacement = "post";
    std::string init = "random";
    int iters = 500;
    double lr = 0.1;
    bool lr_decay = false;
    std::uint64_t seed = 0;
    std::string scale = "0,1";
    std::optional<std::string> label_column;
    std::string out;
    std::optional<std::string> report;
    std::optional<std::string> json;
    int trace_every = 0;
};

ProjectionConfig build_config(const ProjectOptions& o) {
    ProjectionConfig cfg;
    cfg.learning_rate = o.lr;
    cfg.max_iterations = o.iters;
    cfg.target_dims = o.dims;
    cfg.seed = o.seed;
    cfg.init = o.init == "pca" ? InitKind::pca : InitKind::random;
    cfg.scale = scale_flag(o.scale);
    cfg.lr_decay = o.lr_decay;
    cfg.trace_every = o.trace_every;

    if (o.mode == "vanilla") {
        cfg.policy = policy::Vanilla{};
    } else if (o.mode == "strict") {
        cfg.policy = policy::Strict{};
    } else if (o.mode == "range" || o.mode == "gauss") {
        if (!o.range) {
            throw UsageError("--mode " + o.mode + " requires --range A");
        }
        if (o.mode == "range") {
            cfg.policy = policy::NormalRange{*o.range};
        } else {
            cfg.policy = policy::GaussianRange{*o.range, o.ci,
                                               o.gauss_displacement == "pre"
                                                   ? GaussianDisplacement::pre_move
                                                   : GaussianDisplacement::post_move};
        }
    }
    if (is_fixing(cfg.policy)) {
        if (!o.feature) {
            throw UsageError("--mode " + o.mode + " requires --feature NAME");
        }
        cfg.fixed_feature = o.feature;
    } else if (o.feature) {
        throw UsageError("--feature is only meaningful with a fixing mode");
    }
    try {
        validate(cfg);
    } catch (const InvalidArgument& ex) {
        throw UsageError(ex.what());
    }
    return cfg;
}

void cmd_project(const ProjectOptions& o) {
    const ProjectionConfig cfg = build_config(o);
    const auto label_column = resolve_label_column(o.input, o.label_column);
    const Dataset data = load_csv(o.input, label_column);

    const RunResult result = run_projection(data, cfg);
    const StressReport stress = stress_pipeline(data, result.embedding, cfg.scale);

    io::write_file(o.out, io::projection_csv(result.embedding.coords, data.labels()));

    io::KeyValues kv{
        {"command", "project"},
        {"input", o.input},
        {"label_column", label_column.value_or("")},
        {"dims", std::to_string(cfg.target_dims)},
        {"mode", mode_name(cfg.policy)},
        {"feature", cfg.fixed_feature.value_or("")},
    };
    if (const auto* r = std::get_if<policy::NormalRange>(&cfg.policy)) {
        kv.emplace_back("range", num(r->a));
    }
    if (const auto* g = std::get_if<policy::GaussianRange>(&cfg.policy)) {
        const auto params = gaussian_params(g->a, g->ci);
        kv.emplace_back("range", num(g->a));
        kv.emplace_back("ci", num(g->ci));
        kv.emplace_back("gauss_displacement",
                        g->displacement == GaussianDisplacement::pre_move ? "pre" : "post");
        kv.emplace_back("gauss_z", num(params.z));
        kv.emplace_back("gauss_sigma", num(params.sigma));
    }
    kv.insert(kv.end(), {
                            {"init", init_name(cfg.init)},
                            {"iters", std::to_string(cfg.max_iterations)},
                            {"lr", num(cfg.learning_rate)},
                            {"lr_decay", cfg.lr_decay ? "true" : "false"},
                            {"seed", std::to_string(cfg.seed)},
                            {"scale", scale_text(cfg.scale)},
                            {"out", o.out},
                            {"n_points", std::to_string(stress.n_points)},
                            {"stress", num(stress.stress)},
                            {"stress_initial", num(result.stress_trace.front().stress)},
                            {"raw_stress", num(result.stress_trace.back().raw_stress)},
                            {"iterations_run", std::to_string(result.iterations_run)},
                            {"wall_time_init", num(result.wall_time_init)},
                            {"wall_time_total", num(result.wall_time_total)},
                        });
    const std::string report_path = o.report.value_or(o.out + ".report.txt");
    io::write_file(report_path, io::format_key_values(kv, "dimenfix projection report"));

    if (o.json) {
        nlohmann::json j;
        for (const auto& [k, v] : kv) {
            j["config"][k] = v;
        }
        j["stress"] = stress.stress;
        j["wall_time_total"] = result.wall_time_total;
        j["wall_time_init"] = result.wall_time_init;
        for (const auto& s : result.stress_trace) {
            j["stress_trace"].push_back(
                {{"iteration", s.iteration}, {"stress", s.stress}, {"raw_stress", s.raw_stress}});
        }
        io::write_file(*o.json, j.dump(2) + "\n");
    }
    std::cout << "stress=" << num(stress.stress) << "\n"
              << "wall_time_total=" << num(result.wall_time_total) << "\n"
              << "wrote " << o.out << " and " << report_path << "\n";
}

struct StressOptions {
    std::string input;
    std::string projection;
    std::string scale = "0,1";
    std::optional<std::string> label_column;
    bool raw = false;
};

void cmd_stress(const StressOptions& o) {
    const ScaleRange range = scale_flag(o.scale);
    const Dataset data = load_csv(o.input, resolve_label_column(o.input, o.label_column));
    const io::Projection p = io::load_projection(o.projection);
    if (p.coords.rows() != data.n_samples()) {
        throw Error("projection has " + std::to_string(p.coords.rows()) + " rows but dataset has " +
                    std::to_string(data.n_samples()));
    }
    const StressReport r =
        o.raw ? kruskal_stress(build_distance_matrix(data), build_distance_matrix(p.coords))
              : stress_pipeline(data, Embedding{p.coords, std::nullopt}, range);
    std::cout << io::format_key_values({{"stress", num(r.stress)},
                                        {"n_points", std::to_string(r.n_points)},
                                        {"scale", o.raw ? "none" : scale_text(range)}});
}

struct BenchOptions {
    std::string grid;
    std::string out_dir;
    int jobs = 1;
};

void cmd_bench(const BenchOptions& o) {
    const bench::BenchGrid grid = bench::load_grid(o.grid);
    const bench::BenchReport report = bench::run_grid(grid, o.jobs);
    fs::create_directories(o.out_dir);
    const fs::path dir(o.out_dir);
    io::write_file(dir / "report.csv", bench::rows_csv(report));
    io::write_file(dir / "summary.csv", bench::cells_csv(report));
    const std::string table = bench::text_table(report, grid);
    io::write_file(dir / "report.txt", table);
    std::cout << table;
    std::size_t failures = 0;
    for (const auto& row : report.rows) {
        failures += row.ok ? 0 : 1;
    }
    if (failures) {
        std::cerr << failures << " of " << report.rows.size()
                  << " runs failed; see report.csv for details\n";
    }
}

struct PlotOptions {
    std::string projection;
    std::optional<std::string> labels;
    std::string out;
    bool panels = false;
    PlotSpec spec;
};

void cmd_plot(const PlotOptions& o) {
    const io::Projection p = io::load_projection(o.projection, o.labels);
    std::string svg;
    if (p.coords.cols() == 2) {
        svg = render_scatter(p.coords, p.labels, o.spec);
    } else if (p.coords.cols() == 3) {
        if (!o.panels) {
            throw Error("projection is 3-D; pass --panels to draw pairwise-axis panels");
        }
        svg = render_panels(p.coords, p.labels, o.spec);
    } else {
        throw Error("cannot plot a " + std::to_string(p.coords.cols()) + "-D projection");
    }
    io::write_file(o.out, svg);
    std::cout << "wrote " << o.out << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Feature-fixing Force Scheme projections"};
    app.require_subcommand(1);

    ProjectOptions po;
    auto* project = app.add_subcommand("project", "Project a dataset to 2-D or 3-D");
    project->add_option("--input", po.input, "Input CSV")->required();
    project->add_option("--dims", po.dims, "Target dimensions")->check(CLI::IsMember({2, 3}));
    project->add_option("--mode", po.mode, "Constraint mode")
        ->check(CLI::IsMember({"vanilla", "strict", "range", "gauss"}));
    project->add_option("--feature", po.feature, "Feature pinned to the last axis");
    project->add_option("--range", po.range, "Half-width of the allowed drift (scaled units)");
    project->add_option("--ci", po.ci, "Confidence level for gauss mode")->capture_default_str();
    project->add_option("--gauss-displacement", po.gauss_displacement,
                        "Evaluate the gauss ratio at the post-move or pre-move displacement")
        ->check(CLI::IsMember({"post", "pre"}));
    project->add_option("--init", po.init, "Initial embedding")
        ->check(CLI::IsMember({"random", "pca"}));
    project->add_option("--iters", po.iters, "Iterations")->capture_default_str();
    project->add_option("--lr", po.lr, "Learning rate")->capture_default_str();
    project->add_flag("--lr-decay", po.lr_decay, "Decay the learning rate linearly to zero");
    project->add_option("--seed", po.seed, "Random seed")->capture_default_str();
    project->add_option("--scale", po.scale, "Normalization range LO,HI")->capture_default_str();
    project->add_option("--label-column", po.label_column,
                        "Label column (default: a column named class or label)");
    project->add_option("--out", po.out, "Projection CSV to write")->required();
    project->add_option("--report", po.report, "Report file (default: OUT.report.txt)");
    project->add_option("--json", po.json, "Also write a JSON report with the stress trace");
    project->add_option("--trace-every", po.trace_every, "Stress sampling interval");

    StressOptions so;
    auto* stress = app.add_subcommand("stress", "Kruskal stress of a projection");
    stress->add_option("--input", so.input, "Original dataset CSV")->required();
    stress->add_option("--projection", so.projection, "Projection CSV")->required();
    stress->add_option("--scale", so.scale, "Normalization range LO,HI")->capture_default_str();
    stress->add_option("--label-column", so.label_column, "Label column in the dataset");
    stress->add_flag("--raw", so.raw, "Compare distances as given, without rescaling either side");

    BenchOptions bo;
    auto* bench_cmd = app.add_subcommand("bench", "Run an experiment grid");
    bench_cmd->add_option("--grid", bo.grid, "Grid file")->required();
    bench_cmd->add_option("--out-dir", bo.out_dir, "Directory for report files")->required();
    bench_cmd->add_option("--jobs", bo.jobs, "Parallel cells (timings are not isolated when > 1)")
        ->check(CLI::PositiveNumber);

    PlotOptions plo;
    auto* plot = app.add_subcommand("plot", "Render a projection as SVG");
    plot->add_option("--projection", plo.projection, "Projection CSV")->required();
    plot->add_option("--labels", plo.labels, "Label column used for colors");
    plot->add_option("--out", plo.out, "SVG file to write")->required();
    plot->add_flag("--panels", plo.panels, "Draw 3-D projections as three 2-D panels");
    plot->add_option("--width", plo.spec.width, "Panel width in pixels")->check(CLI::PositiveNumber);
    plot->add_option("--height", plo.spec.height, "Panel height in pixels")
        ->check(CLI::PositiveNumber);
    plot->add_option("--radius", plo.spec.point_radius, "Point radius in pixels")
        ->check(CLI::PositiveNumber);
    plot->add_option("--x-label", plo.spec.x_label, "Horizontal axis caption");
    plot->add_option("--y-label", plo.spec.y_label, "Vertical axis caption");
    plot->add_option("--title", plo.spec.title, "Title");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*project) {
            cmd_project(po);
        } else if (*stress) {
            cmd_stress(so);
        } else if (*bench_cmd) {
            cmd_bench(bo);
        } else if (*plot) {
            cmd_plot(plo);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

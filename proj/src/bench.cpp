#include "dimenfix/bench.hpp"

#include "dimenfix/csv.hpp"
#include "dimenfix/error.hpp"
#include "dimenfix/io.hpp"
#include "dimenfix/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <type_traits>

namespace dimenfix::bench {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    while (true) {
        const auto at = s.find(sep);
        out.push_back(trim(s.substr(0, at)));
        if (at == std::string_view::npos) {
            return out;
        }
        s.remove_prefix(at + 1);
    }
}

double to_double(std::string_view s, std::string_view what) {
    double v = 0.0;
    if (!csv::parse_double(s, v)) {
        throw ParseError("grid: cannot read " + std::string(what) + " from '" + std::string(s) + "'");
    }
    return v;
}

std::uint64_t to_uint(std::string_view s, std::string_view what) {
    const double v = to_double(s, what);
    if (v < 0 || v != std::floor(v) || v > 9.0e15) {
        throw ParseError("grid: " + std::string(what) + " must be a non-negative integer, got '" +
                         std::string(s) + "'");
    }
    return static_cast<std::uint64_t>(v);
}

const double nan = std::numeric_limits<double>::quiet_NaN();

} // namespace

std::string method_name(const Method& m) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, PcaOnly>) {
                return "pca-only";
            } else {
                return std::visit(
                    [&](const auto& p) -> std::string {
                        using P = std::decay_t<decltype(p)>;
                        if constexpr (std::is_same_v<P, policy::NormalRange>) {
                            return "range:" + csv::format_double(p.a);
                        } else if constexpr (std::is_same_v<P, policy::GaussianRange>) {
                            return "gauss:" + csv::format_double(p.a) + ":" +
                                   csv::format_double(p.ci);
                        } else {
                            return mode_name(v);
                        }
                    },
                    v);
            }
        },
        m);
}

Method parse_method(std::string_view text) {
    const auto parts = split(trim(text), ':');
    const std::string_view kind = parts.front();
    if (kind == "vanilla" && parts.size() == 1) {
        return ConstraintPolicy{policy::Vanilla{}};
    }
    if (kind == "strict" && parts.size() == 1) {
        return ConstraintPolicy{policy::Strict{}};
    }
    if (kind == "pca-only" && parts.size() == 1) {
        return PcaOnly{};
    }
    if (kind == "range" && parts.size() == 2) {
        ConstraintPolicy p = policy::NormalRange{to_double(parts[1], "range half-width")};
        dimenfix::validate(p);
        return p;
    }
    if (kind == "gauss" && (parts.size() == 2 || parts.size() == 3)) {
        policy::GaussianRange g;
        g.a = to_double(parts[1], "gauss half-width");
        if (parts.size() == 3) {
            g.ci = to_double(parts[2], "gauss confidence");
        }
        ConstraintPolicy p = g;
        dimenfix::validate(p);
        return p;
    }
    throw ParseError("grid: unknown method '" + std::string(text) +
                     "' (expected vanilla, strict, range:A, gauss:A[:CI] or pca-only)");
}

void validate(const BenchGrid& grid) {
    if (grid.datasets.empty() || grid.methods.empty() || grid.inits.empty() || grid.seeds.empty()) {
        throw InvalidArgument("grid needs at least one dataset, method, init and seed");
    }
    validate(grid.scale);
    if (grid.dims != 2 && grid.dims != 3) {
        throw InvalidArgument("grid dims must be 2 or 3");
    }
    if (grid.iterations < 1 || !(grid.learning_rate > 0.0 && grid.learning_rate <= 1.0)) {
        throw InvalidArgument("grid needs iterations >= 1 and learning_rate in (0, 1]");
    }
    if (grid.knn_k == 0) {
        throw InvalidArgument("grid knn_k must be at least 1");
    }
}

BenchGrid parse_grid(std::string_view text, const std::filesystem::path& base_dir) {
    BenchGrid grid;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = trim(text.substr(0, nl));
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++line_no;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("grid line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));

        if (key == "iterations") {
            grid.iterations = static_cast<int>(to_uint(value, "iterations"));
        } else if (key == "learning_rate") {
            grid.learning_rate = to_double(value, "learning_rate");
        } else if (key == "dims") {
            grid.dims = to_uint(value, "dims");
        } else if (key == "knn_k") {
            grid.knn_k = to_uint(value, "knn_k");
        } else if (key == "scale") {
            grid.scale = parse_scale_range(value);
        } else if (key == "seeds") {
            grid.seeds.clear();
            for (auto item : split(value, ',')) {
                const auto dots = item.find("..");
                if (dots != std::string_view::npos) {
                    const auto lo = to_uint(item.substr(0, dots), "seed range");
                    const auto hi = to_uint(item.substr(dots + 2), "seed range");
                    for (auto s = lo; s <= hi; ++s) {
                        grid.seeds.push_back(s);
                    }
                } else {
                    grid.seeds.push_back(to_uint(item, "seed"));
                }
            }
        } else if (key == "inits") {
            grid.inits.clear();
            for (auto item : split(value, ',')) {
                if (item == "random") {
                    grid.inits.push_back(InitKind::random);
                } else if (item == "pca") {
                    grid.inits.push_back(InitKind::pca);
                } else {
                    throw ParseError("grid: unknown init '" + std::string(item) + "'");
                }
            }
        } else if (key == "methods") {
            grid.methods.clear();
            for (auto item : split(value, ',')) {
                grid.methods.push_back(parse_method(item));
            }
        } else if (key == "dataset") {
            const auto fields = split(value, '|');
            if (fields.size() < 2 || fields[0].empty() || fields[1].empty()) {
                throw ParseError("grid line " + std::to_string(line_no) +
                                 ": dataset = NAME | PATH [| key=value ...]");
            }
            DatasetSpec spec;
            spec.name = fields[0];
            spec.path = std::filesystem::path(std::string(fields[1]));
            if (spec.path.is_relative() && !base_dir.empty()) {
                spec.path = base_dir / spec.path;
            }
            for (std::size_t f = 2; f < fields.size(); ++f) {
                const auto kv_eq = fields[f].find('=');
                if (kv_eq == std::string_view::npos) {
                    throw ParseError("grid line " + std::to_string(line_no) +
                                     ": dataset option '" + std::string(fields[f]) +
                                     "' is not key=value");
                }
                const auto k = trim(fields[f].substr(0, kv_eq));
                const auto v = trim(fields[f].substr(kv_eq + 1));
                if (k == "feature") {
                    spec.fixed_feature = std::string(v);
                } else if (k == "label") {
                    spec.label_column = std::string(v);
                } else if (k == "subsample") {
                    spec.subsample = to_uint(v, "subsample");
                } else {
                    throw ParseError("grid line " + std::to_string(line_no) +
                                     ": unknown dataset option '" + std::string(k) + "'");
                }
            }
            grid.datasets.push_back(std::move(spec));
        } else {
            throw ParseError("grid line " + std::to_string(line_no) + ": unknown key '" +
                             std::string(key) + "'");
        }
    }
    if (grid.inits.empty()) {
        grid.inits.push_back(InitKind::random);
    }
    validate(grid);
    return grid;
}

BenchGrid load_grid(const std::filesystem::path& path) {
    return parse_grid(io::read_file(path), path.parent_path());
}

Summary summarize(std::vector<double> values) {
    std::erase_if(values, [](double v) { return std::isnan(v); });
    if (values.empty()) {
        return {nan, nan};
    }
    std::sort(values.begin(), values.end());
    auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(values.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const auto hi = static_cast<std::size_t>(std::ceil(pos));
        return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
    };
    return {quantile(0.5), quantile(0.75) - quantile(0.25)};
}

namespace {

struct Cell {
    std::size_t dataset;
    std::size_t method;
    std::size_t init;
    std::uint64_t seed;
};

BenchRow run_cell(const BenchGrid& grid, const Cell& cell, const Dataset& data) {
    const DatasetSpec& spec = grid.datasets[cell.dataset];
    const Method& method = grid.methods[cell.method];
    BenchRow row;

    if (std::holds_alternative<PcaOnly>(method)) {
        const auto start = std::chrono::steady_clock::now();
        const Dataset scaled = scale_features(data, grid.scale);
        Embedding e = init_embedding(scaled, grid.dims, PcaInit{}, grid.scale);
        row.wall_time_total =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        row.wall_time_init = row.wall_time_total;
        row.stress = stress_pipeline(data, e, grid.scale).stress;
        row.knn_accuracy = data.labels() ? knn_label_accuracy(e.coords, *data.labels(), grid.knn_k)
                                         : nan;
        return row;
    }

    ProjectionConfig cfg;
    cfg.learning_rate = grid.learning_rate;
    cfg.max_iterations = grid.iterations;
    cfg.target_dims = grid.dims;
    cfg.seed = cell.seed;
    cfg.policy = std::get<ConstraintPolicy>(method);
    cfg.init = grid.inits[cell.init];
    cfg.scale = grid.scale;
    if (is_fixing(cfg.policy)) {
        if (!spec.fixed_feature) {
            throw InvalidArgument("dataset '" + spec.name + "' names no fixed feature");
        }
        cfg.fixed_feature = spec.fixed_feature;
    }
    const RunResult result = run_projection(data, cfg);
    row.stress = result.stress_trace.back().stress;
    row.wall_time_total = result.wall_time_total;
    row.wall_time_init = result.wall_time_init;
    row.knn_accuracy = data.labels()
                           ? knn_label_accuracy(result.embedding.coords, *data.labels(), grid.knn_k)
                           : nan;
    return row;
}

} // namespace

BenchReport run_grid(const BenchGrid& grid, int jobs) {
    validate(grid);

    std::vector<std::optional<Dataset>> data(grid.datasets.size());
    std::vector<std::string> load_errors(grid.datasets.size());
    for (std::size_t d = 0; d < grid.datasets.size(); ++d) {
        const auto& spec = grid.datasets[d];
        try {
            data[d] = subsample(load_csv(spec.path, spec.label_column), spec.subsample, 0);
        } catch (const std::exception& ex) {
            load_errors[d] = ex.what();
        }
    }

    std::vector<Cell> cells;
    for (std::size_t d = 0; d < grid.datasets.size(); ++d) {
        for (std::size_t m = 0; m < grid.methods.size(); ++m) {
            for (std::size_t i = 0; i < grid.inits.size(); ++i) {
                for (auto seed : grid.seeds) {
                    cells.push_back({d, m, i, seed});
                }
            }
        }
    }

    BenchReport report;
    report.rows.resize(cells.size());
    const auto n_cells = static_cast<std::ptrdiff_t>(cells.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(jobs, 1))
    for (std::ptrdiff_t c = 0; c < n_cells; ++c) {
        const Cell& cell = cells[static_cast<std::size_t>(c)];
        BenchRow row;
        try {
            if (!data[cell.dataset]) {
                throw Error(load_errors[cell.dataset]);
            }
            row = run_cell(grid, cell, *data[cell.dataset]);
            row.ok = true;
        } catch (const std::exception& ex) {
            row = BenchRow{};
            row.error = ex.what();
            row.stress = row.wall_time_total = row.wall_time_init = row.knn_accuracy = nan;
        }
        row.dataset = grid.datasets[cell.dataset].name;
        row.method = method_name(grid.methods[cell.method]);
        row.init = init_name(grid.inits[cell.init]);
        row.seed = cell.seed;
        report.rows[static_cast<std::size_t>(c)] = std::move(row);
    }
    report.cells = aggregate(report.rows);
    return report;
}

std::vector<BenchCell> aggregate(const std::vector<BenchRow>& rows) {
    std::vector<BenchCell> cells;
    std::map<std::tuple<std::string, std::string, std::string>, std::size_t> index;
    std::vector<std::array<std::vector<double>, 4>> samples;
    for (const auto& row : rows) {
        auto key = std::make_tuple(row.dataset, row.method, row.init);
        auto [it, fresh] = index.try_emplace(key, cells.size());
        if (fresh) {
            BenchCell cell;
            cell.dataset = row.dataset;
            cell.method = row.method;
            cell.init = row.init;
            cells.push_back(std::move(cell));
            samples.emplace_back();
        }
        BenchCell& cell = cells[it->second];
        ++cell.runs;
        if (!row.ok) {
            ++cell.failures;
            continue;
        }
        auto& s = samples[it->second];
        s[0].push_back(row.stress);
        s[1].push_back(row.wall_time_total);
        s[2].push_back(row.wall_time_init);
        s[3].push_back(row.knn_accuracy);
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
        cells[c].stress = summarize(samples[c][0]);
        cells[c].wall_time_total = summarize(samples[c][1]);
        cells[c].wall_time_init = summarize(samples[c][2]);
        cells[c].knn_accuracy = summarize(samples[c][3]);
    }
    return cells;
}

namespace {

std::string num(double v) {
    return std::isnan(v) ? std::string() : csv::format_double(v);
}

} // namespace

std::string rows_csv(const BenchReport& report) {
    std::string out =
        "dataset,method,init,seed,status,stress,wall_time_total,wall_time_init,knn_accuracy,error\n";
    for (const auto& r : report.rows) {
        const std::vector<std::string> fields{r.dataset,
                                              r.method,
                                              r.init,
                                              std::to_string(r.seed),
                                              r.ok ? "ok" : "failed",
                                              num(r.stress),
                                              num(r.wall_time_total),
                                              num(r.wall_time_init),
                                              num(r.knn_accuracy),
                                              r.error};
        out += csv::format_row(fields) + "\n";
    }
    return out;
}

std::string cells_csv(const BenchReport& report) {
    std::string out = "dataset,method,init,runs,failures,stress_median,stress_iqr,"
                      "time_median,time_iqr,init_time_median,knn_median,knn_iqr\n";
    for (const auto& c : report.cells) {
        const std::vector<std::string> fields{
            c.dataset, c.method, c.init, std::to_string(c.runs), std::to_string(c.failures),
            num(c.stress.median), num(c.stress.iqr), num(c.wall_time_total.median),
            num(c.wall_time_total.iqr), num(c.wall_time_init.median), num(c.knn_accuracy.median),
            num(c.knn_accuracy.iqr)};
        out += csv::format_row(fields) + "\n";
    }
    return out;
}

std::string text_table(const BenchReport& report, const BenchGrid& grid) {
    std::vector<std::string> datasets;
    for (const auto& d : grid.datasets) {
        datasets.push_back(d.name);
    }
    std::vector<std::string> row_keys;
    std::map<std::pair<std::string, std::string>, const BenchCell*> lookup;
    for (const auto& c : report.cells) {
        const std::string key = c.method + " " + c.init;
        if (std::find(row_keys.begin(), row_keys.end(), key) == row_keys.end()) {
            row_keys.push_back(key);
        }
        lookup[{key, c.dataset}] = &c;
    }

    std::size_t first_width = 6;
    for (const auto& k : row_keys) {
        first_width = std::max(first_width, k.size());
    }
    std::size_t col_width = 10;
    for (const auto& d : datasets) {
        col_width = std::max(col_width, d.size());
    }

    auto table = [&](std::string_view title, auto pick, int precision) {
        std::ostringstream os;
        os << title << "\n";
        os << std::string(first_width, ' ');
        for (const auto& d : datasets) {
            os << "  " << std::string(col_width - d.size(), ' ') << d;
        }
        os << "\n";
        for (const auto& key : row_keys) {
            os << key << std::string(first_width - key.size(), ' ');
            for (const auto& d : datasets) {
                std::string cell = "-";
                if (auto it = lookup.find({key, d}); it != lookup.end()) {
                    const double v = pick(*it->second);
                    if (std::isnan(v)) {
                        cell = "fail";
                    } else {
                        char buf[32];
                        std::snprintf(buf, sizeof buf, "%.*f", precision, v);
                        cell = buf;
                    }
                }
                os << "  " << std::string(col_width - std::min(col_width, cell.size()), ' ') << cell;
            }
            os << "\n";
        }
        return os.str();
    };

    std::ostringstream os;
    os << "# seeds=" << grid.seeds.size() << " iterations=" << grid.iterations
       << " learning_rate=" << csv::format_double(grid.learning_rate) << " dims=" << grid.dims
       << " scale=" << csv::format_double(grid.scale.low) << ","
       << csv::format_double(grid.scale.high) << "\n\n";
    os << table("Running time (s), median over seeds",
                [](const BenchCell& c) { return c.wall_time_total.median; }, 4)
       << "\n";
    os << table("Kruskal stress, median over seeds",
                [](const BenchCell& c) { return c.stress.median; }, 4)
       << "\n";
    os << table("1-NN label accuracy, median over seeds",
                [](const BenchCell& c) { return c.knn_accuracy.median; }, 4);
    return os.str();
}

} // namespace dimenfix::bench

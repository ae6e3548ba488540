/*
 * Copyright 2026 The heapscope Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "heapscope/cli.hpp"
#include "heapscope/error.hpp"
#include "heapscope/fit.hpp"
#include "heapscope/growth.hpp"
#include "heapscope/ingest.hpp"
#include "heapscope/model.hpp"
#include "heapscope/oracle.hpp"

namespace heapscope::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Context {
    std::vector<std::string> args;
    std::ostream &out;
    std::ostream &err;
};

struct FilterFlags {
    bool ascii_strict = false;
    bool keep_tagged = false;
    bool no_case_fold = false;
    std::string script = "latin";

    void add_to(CLI::App &cmd) {
        cmd.add_flag("--ascii-strict", ascii_strict, "Accept only the letters a-z");
        cmd.add_flag("--keep-tagged", keep_tagged, "Keep tokens containing '_' (POS tags, sentinels)");
        cmd.add_flag("--no-case-fold", no_case_fold, "Keep capitalization");
        cmd.add_option("--script", script, "Alphabet: latin, cyrillic or greek")
            ->capture_default_str();
    }

    ingest::FilterConfig config() const {
        ingest::FilterConfig cfg;
        auto s = ingest::parse_script(script);
        if (!s)
            throw std::invalid_argument("unknown script '" + script + "'");
        cfg.alphabet = *s;
        cfg.ascii_strict = ascii_strict;
        cfg.reject_tagged = !keep_tagged;
        cfg.case_fold = !no_case_fold;
        cfg.validate();
        return cfg;
    }
};

struct ProbabilitySource {
    std::optional<std::string> input;
    std::optional<std::string> probs;
    std::optional<double> zipf_beta;
    std::optional<std::uint64_t> zipf_w;

    void add_to(CLI::App &cmd) {
        cmd.add_option("--input", input, "Snapshot (p = count / L) or 'probability<TAB>multiplicity' file");
        cmd.add_option("--probs", probs, "Inline comma-separated probabilities");
        cmd.add_option("--zipf-beta", zipf_beta, "Zipf exponent for a synthetic distribution");
        cmd.add_option("--zipf-w", zipf_w, "Number of words of the synthetic Zipf distribution");
    }

    bool from_snapshot() const { return input && snapshot_text().starts_with("#year="); }

    const std::string &snapshot_text() const {
        if (!text_)
            text_ = ingest::read_text_file(*input);
        return *text_;
    }

    void validate() const {
        const int n = (input ? 1 : 0) + (probs ? 1 : 0) + (zipf_beta || zipf_w ? 1 : 0);
        if (n != 1)
            throw std::invalid_argument(
                "give exactly one probability source: --input, --probs, or --zipf-beta with --zipf-w");
        if ((zipf_beta || zipf_w) && !(zipf_beta && zipf_w))
            throw std::invalid_argument("--zipf-beta and --zipf-w must be given together");
    }

    model::ProbabilityVector load() const {
        validate();
        if (zipf_beta)
            return model::zipf_probs(*zipf_beta, *zipf_w);
        if (probs) {
            std::vector<double> ps;
            std::stringstream ss(*probs);
            std::string item;
            while (std::getline(ss, item, ','))
                ps.push_back(io::parse_double(item));
            return model::ProbabilityVector::from_probabilities(ps);
        }
        if (from_snapshot())
            return model::ProbabilityVector::from_table(ingest::read_snapshot(snapshot_text()));
        return model::parse_probability_tsv(snapshot_text());
    }

  private:
    mutable std::optional<std::string> text_;
};

std::optional<growth::YearRange> year_range(const std::optional<std::string> &years) {
    if (!years)
        return std::nullopt;
    auto [a, b] = io::parse_integer_range(*years);
    return growth::YearRange{static_cast<int>(a), static_cast<int>(b)};
}

std::string csv_header(const Context &ctx, std::string_view columns) {
    return io::provenance_line(ctx.args) + "\n" + std::string(columns) + "\n";
}

std::string dump_json(json j) { return j.dump(2) + "\n"; }

json rounded_fit_report(const fit::PowerLawFit &f) {
    json j = fit::fit_report(f);
    for (auto &[key, value] : j.items())
        if (value.is_number_float())
            value = io::round12(value.get<double>());
    j["range"] = {io::round12(f.range_lo), io::round12(f.range_hi)};
    return j;
}

// Calls `visit` for each snapshot in the inputs whose year is in range.
template <typename Visit>
void for_each_snapshot(const std::vector<std::string> &inputs,
                       const std::optional<growth::YearRange> &range, Visit &&visit) {
    for (const auto &path : io::expand_inputs(inputs)) {
        auto table = ingest::read_snapshot_file(path);
        if (range && !range->contains(table.year()))
            continue;
        visit(table);
    }
}

growth::GrowthCurve load_curve(const std::vector<std::string> &inputs,
                               const std::optional<growth::YearRange> &range) {
    std::vector<growth::GrowthPoint> points;
    for (const auto &path : io::expand_inputs(inputs)) {
        if (path.extension() == ".csv") {
            auto csv = io::parse_csv(ingest::read_text_file(path));
            const auto cy = csv.column("year");
            const auto cl = csv.column("L");
            const auto cn = csv.column("N");
            for (const auto &row : csv.rows) {
                growth::GrowthPoint p;
                p.year = static_cast<int>(io::parse_integer(row[cy]));
                p.tokens = static_cast<std::uint64_t>(io::parse_integer(row[cl]));
                p.distinct = static_cast<std::uint64_t>(io::parse_integer(row[cn]));
                if (!range || range->contains(p.year))
                    points.push_back(p);
            }
            continue;
        }
        auto table = ingest::read_snapshot_file(path);
        if (!range || range->contains(table.year()))
            points.push_back(growth::growth_point(table));
    }
    if (points.empty())
        throw EmptyRange("no growth data in the requested year range");
    try {
        return growth::GrowthCurve(std::move(points));
    } catch (const std::invalid_argument &e) {
        throw DataError(e.what());
    }
}

// ---------------------------------------------------------------------------

struct IngestArgs {
    std::vector<std::string> inputs;
    std::string output;
    bool strict = false;
    std::optional<std::string> totalcounts;
    FilterFlags filter;
};

int cmd_ingest(const Context &ctx, const IngestArgs &a) {
    const auto cfg = a.filter.config();
    const auto policy = a.strict ? ingest::MalformedPolicy::Abort : ingest::MalformedPolicy::SkipAndCount;

    std::optional<ingest::TotalCounts> totals;
    if (a.totalcounts)
        totals = ingest::load_totalcounts(ingest::read_text_file(*a.totalcounts));

    ingest::TableBuilder builder(cfg);
    ingest::IngestStats stats;
    json files = json::array();
    for (const auto &in : a.inputs) {
        ingest::IngestStats file_stats;
        try {
            ingest::LineReader probe(in);
            files.push_back({{"path", in}, {"gzipped", probe.gzipped()}});
            ingest::ingest_file(in, builder, file_stats, policy);
        } catch (const MalformedLine &e) {
            throw MalformedLine(e.line_number(), in + ": " + e.what());
        }
        auto &f = files.back();
        f["lines_read"] = file_stats.lines_read;
        f["accepted"] = file_stats.accepted;
        f["rejected"] = file_stats.rejected;
        f["malformed"] = file_stats.malformed;
        f["blank"] = file_stats.blank;
        for (auto &m : file_stats.malformed_examples)
            m = in + ": " + m;
        stats += file_stats;
    }

    std::error_code ec;
    fs::create_directories(a.output, ec);
    if (ec)
        throw IoError("cannot create output directory '" + a.output + "': " + ec.message());

    auto tables = std::move(builder).finish();
    json snapshots = json::array();
    json checks = json::array();
    for (const auto &[year, table] : tables) {
        const auto path = fs::path(a.output) / (std::to_string(year) + ".tsv");
        ingest::write_snapshot_file(table, path);
        snapshots.push_back(path.filename().string());
        if (totals) {
            json c = {{"year", year}, {"table_tokens", table.total_tokens()}};
            if (auto it = totals->find(year); it != totals->end()) {
                c["match_count"] = it->second.match_count;
                c["accepted_fraction"] =
                    it->second.match_count == 0
                        ? json(nullptr)
                        : json(io::round12(static_cast<double>(table.total_tokens()) /
                                           static_cast<double>(it->second.match_count)));
            } else {
                c["match_count"] = nullptr;
            }
            checks.push_back(std::move(c));
        }
    }

    json report;
    report["provenance"] = io::provenance_line(ctx.args).substr(2);
    report["files"] = std::move(files);
    report["lines_read"] = stats.lines_read;
    report["accepted"] = stats.accepted;
    report["rejected"] = stats.rejected;
    report["malformed"] = stats.malformed;
    report["blank"] = stats.blank;
    report["malformed_examples"] = stats.malformed_examples;
    report["years"] = tables.size();
    report["snapshots"] = std::move(snapshots);
    report["filter"] = {{"case_fold", cfg.case_fold},
                        {"script", a.filter.script},
                        {"ascii_strict", cfg.ascii_strict},
                        {"reject_tagged", cfg.reject_tagged}};
    if (totals)
        report["totalcounts_check"] = std::move(checks);
    io::write_output((fs::path(a.output) / "ingest_report.json").string(), dump_json(report), ctx.out);
    if (stats.malformed > 0)
        ctx.err << "warning: skipped " << stats.malformed << " malformed line(s)\n";
    return kSuccess;
}

// ---------------------------------------------------------------------------

struct GrowthArgs {
    std::vector<std::string> inputs;
    std::optional<std::string> years;
    std::optional<std::string> output;
};

int cmd_growth(const Context &ctx, const GrowthArgs &a) {
    auto curve = load_curve(a.inputs, year_range(a.years));
    std::string csv = csv_header(ctx, "year,L,N");
    for (const auto &p : curve.points())
        csv += std::to_string(p.year) + "," + std::to_string(p.tokens) + "," +
               std::to_string(p.distinct) + "\n";
    io::write_output(a.output, csv, ctx.out);
    return kSuccess;
}

struct FwShareArgs {
    std::vector<std::string> inputs;
    std::string fwlist;
    std::optional<std::string> years;
    std::optional<std::string> output;
    FilterFlags filter;
};

int cmd_fwshare(const Context &ctx, const FwShareArgs &a) {
    const auto fw = growth::load_function_words(a.fwlist, a.filter.config());
    if (fw.rejected() > 0)
        ctx.err << "warning: " << fw.rejected() << " function word(s) rejected by the token filter\n";
    std::map<int, std::pair<double, double>> rows;
    for_each_snapshot(a.inputs, year_range(a.years), [&](const ingest::FrequencyTable &t) {
        const double share = growth::function_word_share(t, fw);
        rows[t.year()] = {share, 1.0 - share};
    });
    if (rows.empty())
        throw EmptyRange("no snapshots in the requested year range");
    std::string csv = csv_header(ctx, "year,fw_share,zeta");
    for (const auto &[year, v] : rows)
        csv += std::to_string(year) + "," + io::format_number(v.first) + "," +
               io::format_number(v.second) + "\n";
    io::write_output(a.output, csv, ctx.out);
    return kSuccess;
}

struct WindowArgs {
    std::vector<std::string> inputs;
    std::optional<std::string> years;
    int window = growth::kDefaultWindowYears;
    int step = 1;
    std::vector<int> centers;
    std::optional<std::string> output;
};

int cmd_window(const Context &ctx, const WindowArgs &a) {
    auto curve = load_curve(a.inputs, year_range(a.years));
    std::string csv;
    if (!a.centers.empty()) {
        const int half = a.window / 2;
        csv = csv_header(ctx, "center_year,year,L,N,N_fit");
        for (int c : a.centers) {
            auto sub = growth::window_extract(curve, c, half);
            auto pts = growth::to_fit_points(sub);
            auto f = fit::fit_powerlaw_ls(pts);
            ctx.err << "window " << c << ": k=" << io::format_number(f.exponent) << " over "
                    << f.n_points << " points\n";
            for (const auto &p : sub.points()) {
                const double nfit = std::exp(f.log_prefactor) *
                                    std::pow(static_cast<double>(p.tokens), f.exponent);
                csv += std::to_string(c) + "," + std::to_string(p.year) + "," +
                       std::to_string(p.tokens) + "," + std::to_string(p.distinct) + "," +
                       io::format_number(nfit) + "\n";
            }
        }
    } else {
        auto series = growth::sliding_heaps(curve, a.window, a.step);
        if (!series.skipped_centers.empty())
            ctx.err << "warning: skipped " << series.skipped_centers.size()
                    << " window(s) with fewer than " << growth::kMinWindowPoints << " points\n";
        csv = csv_header(ctx, "center_year,k,intercept,n_points");
        for (const auto &p : series.points)
            csv += std::to_string(p.center_year) + "," + io::format_number(p.k) + "," +
                   io::format_number(p.fit.log_prefactor) + "," + std::to_string(p.fit.n_points) + "\n";
    }
    io::write_output(a.output, csv, ctx.out);
    return kSuccess;
}

// ---------------------------------------------------------------------------

struct FitArgs {
    std::string input;
    std::optional<std::string> method;
    std::optional<std::string> lrange;
    std::string ranks = "3:440";
    std::optional<std::string> output;
    std::optional<std::string> curve;
};

int cmd_fit(const Context &ctx, const FitArgs &a) {
    const std::string text = ingest::read_text_file(a.input);
    const bool csv_input = fs::path(a.input).extension() == ".csv";
    std::string method = a.method.value_or(csv_input ? "ls" : "mle");
    if (method != "ls" && method != "mle")
        throw std::invalid_argument("--method must be 'ls' or 'mle'");

    json report;
    std::string curve_csv;
    int status = kSuccess;
    if (method == "ls") {
        std::optional<fit::Range> range;
        if (a.lrange) {
            auto [lo, hi] = io::parse_real_range(*a.lrange);
            range = fit::Range{lo, hi};
        }
        auto csv = io::parse_csv(text);
        auto cx = csv.find_column("L");
        auto cy = csv.find_column("N");
        if (!cx || !cy) {
            cx = csv.column("x");
            cy = csv.column("y");
        }
        std::vector<fit::Point> pts;
        for (const auto &row : csv.rows)
            pts.push_back({io::parse_double(row[*cx]), io::parse_double(row[*cy])});
        auto f = fit::fit_powerlaw_ls(pts, range);
        report = rounded_fit_report(f);
        curve_csv = csv_header(ctx, "x,y,y_fit");
        for (const auto &p : pts) {
            if (range && (p.x < range->lo || p.x > range->hi))
                continue;
            curve_csv += io::format_number(p.x) + "," + io::format_number(p.y) + "," +
                         io::format_number(std::exp(f.log_prefactor) * std::pow(p.x, f.exponent)) + "\n";
        }
        report["status"] = "ok";
    } else {
        if (a.lrange)
            throw std::invalid_argument("--lrange applies to --method ls; use --ranks for mle");
        auto [lo, hi] = io::parse_integer_range(a.ranks);
        if (lo < 1)
            throw std::invalid_argument("--ranks must start at 1 or above");
        auto rf = text.starts_with("#year=") ? fit::rank_table(ingest::read_snapshot(text))
                                             : fit::parse_rank_tsv(text);
        fit::PowerLawFit f;
        try {
            f = fit::fit_zipf_mle(rf, static_cast<std::size_t>(lo), static_cast<std::size_t>(hi));
            report = rounded_fit_report(f);
            report["status"] = "ok";
        } catch (const fit::NoInteriorMaximum &e) {
            f = e.fit();
            report = rounded_fit_report(f);
            report["status"] = "no_interior_maximum";
            ctx.err << "error: " << e.what() << "\n";
            status = kDataError;
        }
        double in_range = 0.0;
        for (auto r = static_cast<std::size_t>(lo); r <= static_cast<std::size_t>(hi); ++r)
            in_range += static_cast<double>(rf.count_at(r));
        curve_csv = csv_header(ctx, "rank,count,expected");
        for (auto r = static_cast<std::size_t>(lo); r <= static_cast<std::size_t>(hi); ++r) {
            const double expected = in_range * std::exp(f.log_prefactor -
                                                        f.exponent * std::log(static_cast<double>(r)));
            curve_csv += std::to_string(r) + "," + std::to_string(rf.count_at(r)) + "," +
                         io::format_number(expected) + "\n";
        }
    }
    report["provenance"] = io::provenance_line(ctx.args).substr(2);
    io::write_output(a.output, dump_json(report), ctx.out);
    if (a.curve)
        io::write_output(a.curve, curve_csv, ctx.out);
    return status;
}

// ---------------------------------------------------------------------------

struct ModelArgs {
    ProbabilitySource source;
    int eq = 2;
    std::optional<double> zeta;
    std::optional<std::uint64_t> nserv;
    std::optional<std::string> fwlist;
    std::optional<std::string> grid;
    std::string lrange = "1e0:1e10";
    int per_decade = model::kDefaultGridPerDecade;
    std::optional<std::string> at;
    std::optional<std::string> zeta_from;
    std::optional<std::string> output;
    FilterFlags filter;
};

std::vector<double> model_grid(const ModelArgs &a) {
    if (a.grid) {
        std::vector<double> grid;
        std::stringstream ss(*a.grid);
        std::string item;
        while (std::getline(ss, item, ','))
            grid.push_back(io::parse_double(item));
        return grid;
    }
    auto [lo, hi] = io::parse_real_range(a.lrange);
    if (!(lo > 0.0))
        throw std::invalid_argument("--lrange must be positive");
    return model::geometric_grid(std::log10(lo), std::log10(hi), a.per_decade);
}

int cmd_model(const Context &ctx, const ModelArgs &a) {
    if (a.eq != 2 && a.eq != 3)
        throw std::invalid_argument("--eq must be 2 or 3");
    if (a.eq == 2 && (a.zeta || a.nserv || a.fwlist || a.zeta_from))
        throw std::invalid_argument("--zeta, --nserv, --fwlist and --zeta-from need --eq 3");
    if (a.fwlist && !a.source.from_snapshot())
        throw std::invalid_argument("--fwlist needs a snapshot --input to split");
    if (a.zeta_from && !a.at)
        throw std::invalid_argument("--zeta-from needs --at");
    a.source.validate();

    model::ModelConfig cfg;
    if (a.eq == 3 && a.fwlist) {
        const auto fw = growth::load_function_words(*a.fwlist, a.filter.config());
        cfg = model::split_function_words(ingest::read_snapshot(a.source.snapshot_text()), fw);
        ctx.err << "content share zeta=" << io::format_number(cfg.zeta) << ", n_serv=" << cfg.n_serv
                << "\n";
    } else {
        cfg.content_probs = a.source.load();
    }
    if (a.zeta)
        cfg.zeta = *a.zeta;
    if (a.nserv)
        cfg.n_serv = *a.nserv;
    cfg.validate();

    std::string csv;
    if (a.at) {
        std::map<long long, double> zetas;
        if (a.zeta_from) {
            auto shares = io::parse_csv(ingest::read_text_file(*a.zeta_from));
            const auto cy = shares.column("year");
            const auto cz = shares.column("zeta");
            for (const auto &row : shares.rows)
                zetas[io::parse_integer(row[cy])] = io::parse_double(row[cz]);
        }
        auto growth_csv = io::parse_csv(ingest::read_text_file(*a.at));
        const auto cy = growth_csv.column("year");
        const auto cl = growth_csv.column("L");
        const auto cn = growth_csv.column("N");
        csv = csv_header(ctx, "year,L,N,N_model");
        for (const auto &row : growth_csv.rows) {
            const auto year = io::parse_integer(row[cy]);
            const double L = io::parse_double(row[cl]);
            double N_model;
            if (a.eq == 2) {
                N_model = model::expected_vocab(cfg.content_probs, L);
            } else {
                auto year_cfg = cfg;
                if (a.zeta_from) {
                    auto it = zetas.find(year);
                    if (it == zetas.end())
                        throw DataError("no zeta for year " + std::to_string(year));
                    year_cfg.zeta = it->second;
                }
                N_model = model::expected_vocab_modified(year_cfg, L);
            }
            csv += row[cy] + "," + row[cl] + "," + row[cn] + "," + io::format_number(N_model) + "\n";
        }
    } else {
        const auto grid = model_grid(a);
        const auto evaluator = a.eq == 2 ? model::evaluator_for(cfg.content_probs)
                                         : model::evaluator_for(cfg);
        csv = csv_header(ctx, "L,N,k");
        if (grid.size() >= 3) {
            for (const auto &p : model::local_heaps_exponent(evaluator, grid))
                csv += io::format_number(p.L) + "," + io::format_number(p.N) + "," +
                       io::format_number(p.k) + "\n";
        } else {
            // Too few points for a local exponent.
            for (const auto &p : model::model_growth_curve(evaluator, grid))
                csv += io::format_number(p.L) + "," + io::format_number(p.N) + ",\n";
        }
    }
    io::write_output(a.output, csv, ctx.out);
    return kSuccess;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
    ProbabilitySource source;
    std::int64_t length = 0;
    std::int64_t trials = 1000;
    std::uint64_t seed = 0;
    std::optional<std::string> output;
};

int cmd_simulate(const Context &ctx, const SimulateArgs &a) {
    const auto probs = a.source.load();
    const auto est = oracle::mc_expected_vocab(probs, a.length, a.trials, a.seed);
    json j;
    j["L"] = a.length;
    j["mean"] = io::round12(est.mean);
    j["std_error"] = io::round12(est.std_error);
    j["trials"] = est.trials;
    j["seed"] = est.seed;
    j["expected_vocab"] = io::round12(model::expected_vocab(probs, static_cast<double>(a.length)));
    j["provenance"] = io::provenance_line(ctx.args).substr(2);
    io::write_output(a.output, dump_json(j), ctx.out);
    return kSuccess;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    Context ctx{std::vector<std::string>(argv, argv + argc), out, err};
    if (!ctx.args.empty())
        ctx.args.front() = fs::path(ctx.args.front()).filename().string();

    CLI::App app{"Heaps/Zipf statistics for Google Books Ngram 1-gram data", "heapscope"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(HEAPSCOPE_VERSION));

    IngestArgs ingest_args;
    auto *ingest_cmd = app.add_subcommand("ingest", "Build per-year snapshot tables from 1-gram files");
    ingest_cmd->add_option("--input", ingest_args.inputs, "1-gram files (plain or gzip)")->required();
    ingest_cmd->add_option("--output", ingest_args.output, "Snapshot directory")->required();
    ingest_cmd->add_flag("--strict", ingest_args.strict, "Abort on the first malformed line");
    ingest_cmd->add_option("--totalcounts", ingest_args.totalcounts, "totalcounts file to cross-check");
    ingest_args.filter.add_to(*ingest_cmd);

    GrowthArgs growth_args;
    auto *growth_cmd = app.add_subcommand("growth", "Per-year (L, N) growth curve");
    growth_cmd->add_option("--input", growth_args.inputs, "Snapshot files or directories")->required();
    growth_cmd->add_option("--years", growth_args.years, "Year range A:B");
    growth_cmd->add_option("--output", growth_args.output, "CSV output path");

    FwShareArgs fw_args;
    auto *fw_cmd = app.add_subcommand("fwshare", "Function-word share and content share per year");
    fw_cmd->add_option("--input", fw_args.inputs, "Snapshot files or directories")->required();
    fw_cmd->add_option("--fwlist", fw_args.fwlist, "Function-word list")->required();
    fw_cmd->add_option("--years", fw_args.years, "Year range A:B");
    fw_cmd->add_option("--output", fw_args.output, "CSV output path");
    fw_args.filter.add_to(*fw_cmd);

    WindowArgs window_args;
    auto *window_cmd = app.add_subcommand("window", "Sliding-window Heaps exponent series");
    window_cmd->add_option("--input", window_args.inputs, "Snapshots, directories or a growth CSV")
        ->required();
    window_cmd->add_option("--years", window_args.years, "Year range A:B");
    window_cmd->add_option("--window", window_args.window, "Window width in years")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    window_cmd->add_option("--step", window_args.step, "Window step in years")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    window_cmd->add_option("--center", window_args.centers,
                           "Emit the points and fit of the window centered on these years");
    window_cmd->add_option("--output", window_args.output, "CSV output path");

    FitArgs fit_args;
    auto *fit_cmd = app.add_subcommand("fit", "Power-law fit (LS log-log or Zipf MLE)");
    fit_cmd->add_option("--input", fit_args.input, "Points CSV, snapshot, or rank TSV")->required();
    fit_cmd->add_option("--method", fit_args.method, "ls or mle (default: ls for CSV, mle otherwise)");
    fit_cmd->add_option("--lrange", fit_args.lrange, "x range for ls, e.g. 1e3:1e10");
    fit_cmd->add_option("--ranks", fit_args.ranks, "Rank range for mle")->capture_default_str();
    fit_cmd->add_option("--output", fit_args.output, "JSON output path");
    fit_cmd->add_option("--curve", fit_args.curve, "CSV of fitted-curve samples");

    ModelArgs model_args;
    auto *model_cmd = app.add_subcommand("model", "Expected vocabulary N(L) and local exponent k(L)");
    model_args.source.add_to(*model_cmd);
    model_cmd->add_option("--eq", model_args.eq, "2: all words drawn; 3: function words counted up front")
        ->capture_default_str();
    model_cmd->add_option("--zeta", model_args.zeta, "Content share for --eq 3");
    model_cmd->add_option("--nserv", model_args.nserv, "Number of function words for --eq 3");
    model_cmd->add_option("--fwlist", model_args.fwlist, "Split a snapshot into function/content words");
    model_cmd->add_option("--grid", model_args.grid, "Explicit comma-separated L values");
    model_cmd->add_option("--lrange", model_args.lrange, "Geometric grid range")->capture_default_str();
    model_cmd->add_option("--grid-per-decade", model_args.per_decade, "Grid density")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    model_cmd->add_option("--at", model_args.at, "Evaluate at the L values of a growth CSV");
    model_cmd->add_option("--zeta-from", model_args.zeta_from, "Per-year zeta from a fwshare CSV");
    model_cmd->add_option("--output", model_args.output, "CSV output path");
    model_args.filter.add_to(*model_cmd);

    SimulateArgs sim_args;
    auto *sim_cmd = app.add_subcommand("simulate", "Monte Carlo distinct-word count");
    sim_args.source.add_to(*sim_cmd);
    sim_cmd->add_option("--length,-L", sim_args.length, "Text length in tokens")->required();
    sim_cmd->add_option("--trials", sim_args.trials, "Number of replicas")->capture_default_str();
    sim_cmd->add_option("--seed", sim_args.seed, "Base seed")->capture_default_str();
    sim_cmd->add_option("--output", sim_args.output, "JSON output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    try {
        if (ingest_cmd->parsed())
            return cmd_ingest(ctx, ingest_args);
        if (growth_cmd->parsed())
            return cmd_growth(ctx, growth_args);
        if (fw_cmd->parsed())
            return cmd_fwshare(ctx, fw_args);
        if (window_cmd->parsed())
            return cmd_window(ctx, window_args);
        if (fit_cmd->parsed())
            return cmd_fit(ctx, fit_args);
        if (model_cmd->parsed())
            return cmd_model(ctx, model_args);
        if (sim_cmd->parsed())
            return cmd_simulate(ctx, sim_args);
    } catch (const IoError &e) {
        err << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const DataError &e) {
        err << "error: " << e.what() << "\n";
        return kDataError;
    } catch (const DomainError &e) {
        err << "error: " << e.what() << "\nRun with --help for usage.\n";
        return kUsageError;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\nRun with --help for usage.\n";
        return kUsageError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kDataError;
    }
    return kUsageError;
}

} // namespace heapscope::cli

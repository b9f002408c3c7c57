// zonefit: strike-zone model fitting and gray-zone analysis CLI.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zonefit/analysis.hpp"
#include "zonefit/data_model.hpp"
#include "zonefit/fitter.hpp"
#include "zonefit/parallel.hpp"
#include "zonefit/serialize.hpp"
#include "zonefit/stats.hpp"
#include "zonefit/svg.hpp"
#include "zonefit/synth.hpp"
#include "zonefit/version.hpp"
#include "zonefit/zone_model.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace zonefit;

namespace {

// exit code 2: input or validation problem; 1: internal error; 0: success
struct UserError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UserError("cannot open file: " + path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[8192];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
        if (!in) break;
    }
    return h;
}

// temp + rename so readers never observe a partial file
void atomic_write(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write: " + tmp.string());
        out << content;
    }
    fs::rename(tmp, path);
}

struct Manifest {
    std::string command;
    std::uint64_t seed = 0;
    json config_echo = json::object();
    json inputs = json::array();
    std::vector<std::string> outputs;

    void add_input(const std::string& path) {
        char hex[24];
        std::snprintf(hex, sizeof(hex), "%016llx",
                      static_cast<unsigned long long>(fnv1a_file(path)));
        inputs.push_back({{"path", path}, {"fnv1a64", hex}});
    }

    void write(const fs::path& dir) const {
        json j = {{"tool", "zonefit"}, {"version", kVersion}, {"command", command},
                  {"seed", seed}, {"config", config_echo}, {"inputs", inputs},
                  {"outputs", outputs}};
        atomic_write(dir / "manifest.json", j.dump(2) + "\n");
    }
};

fs::path ensure_out_dir(const std::string& out) {
    fs::path dir(out);
    fs::create_directories(dir);
    return dir;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UserError("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw UserError(std::string("bad JSON in ") + path + ": " + e.what());
    }
}

Dataset load_dataset(const std::string& path) {
    if (!fs::exists(path)) throw UserError("cannot open file: " + path);
    try {
        return load_csv(path);
    } catch (const MissingColumn& e) {
        throw UserError(e.what());
    } catch (const EmptyFile& e) {
        throw UserError(e.what());
    }
}

std::vector<GroupField> parse_group_fields(const std::string& csv) {
    std::vector<GroupField> fields;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "season") fields.push_back(GroupField::Season);
        else if (tok == "pitch_type") fields.push_back(GroupField::PitchType);
        else if (tok == "hand") fields.push_back(GroupField::Hand);
        else if (tok == "umpire") fields.push_back(GroupField::Umpire);
        else if (!tok.empty()) throw UserError("unknown group-by field: " + tok);
    }
    return fields;
}

std::vector<ZoneBand> parse_bands(const std::string& arg) {
    if (arg == "all") return all_bands();
    std::vector<ZoneBand> bands;
    std::stringstream ss(arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto b = parse_band(tok);
        if (!b) throw UserError("unknown band: " + tok);
        bands.push_back(*b);
    }
    return bands;
}

int cmd_validate(const std::string& input) {
    LoadReport report;
    try {
        report = load_csv_report(input);
    } catch (const std::exception& e) {
        std::cout << "error: " << e.what() << "\n";
        return 2;
    }
    std::cout << report.dataset.row_count() << " valid rows, "
              << report.violations.size() << " violations\n";
    for (const auto& v : report.violations)
        std::cout << "row " << v.row << ": " << v.message << "\n";
    return report.violations.empty() ? 0 : 2;
}

std::string trend_row(const std::string& group, const std::string& param,
                      double est, const Interval* iv) {
    std::ostringstream os;
    os.precision(17);
    os << group << ',' << param << ',' << est << ',';
    if (iv) os << iv->lo << ',' << iv->hi;
    else os << ',';
    os << '\n';
    return os.str();
}

void append_trend(std::string& csv, const std::string& group, const FitResult& r) {
    const ParamIntervals* iv = r.intervals ? &*r.intervals : nullptr;
    auto dm = derived_metrics(r.params);
    csv += trend_row(group, "x0", r.params.x0, iv ? &iv->x0 : nullptr);
    csv += trend_row(group, "y0", r.params.y0, iv ? &iv->y0 : nullptr);
    csv += trend_row(group, "alpha", r.params.alpha, iv ? &iv->alpha : nullptr);
    csv += trend_row(group, "lambda", r.params.lambda, iv ? &iv->lambda : nullptr);
    csv += trend_row(group, "beta", r.params.beta, iv ? &iv->beta : nullptr);
    csv += trend_row(group, "r", r.params.r, iv ? &iv->r : nullptr);
    csv += trend_row(group, "width", dm.width, iv ? &iv->width : nullptr);
    csv += trend_row(group, "height", dm.height, iv ? &iv->height : nullptr);
}

int cmd_fit(const std::string& input, const std::string& group_by,
            const std::string& config_path, const std::string& out,
            std::uint64_t seed, bool seed_given, int min_called) {
    FitConfig cfg;
    json cfg_json = json::object();
    if (!config_path.empty()) {
        cfg_json = load_json_file(config_path);
        cfg = fit_config_from_json(cfg_json);
    }
    if (seed_given || !cfg_json.contains("seed")) cfg.seed = seed;

    Dataset d = load_dataset(input);
    auto dir = ensure_out_dir(out);
    Manifest manifest;
    manifest.command = "fit";
    manifest.seed = cfg.seed;
    manifest.config_echo = to_json(cfg);
    manifest.config_echo["group_by"] = group_by;
    manifest.config_echo["min_called"] = min_called;
    manifest.add_input(input);

    std::string trend = "group,param,estimate,lo,hi\n";
    std::vector<std::string> failures;

    auto emit = [&](const std::string& label, const FitResult& r) {
        std::string name = "fit_" + label + ".json";
        atomic_write(dir / name, to_json(r).dump(2) + "\n");
        manifest.outputs.push_back(name);
        append_trend(trend, label, r);
    };

    if (group_by == "season") {
        std::set<int> season_set;
        for (const auto& p : d.pitches) season_set.insert(p.season);
        std::vector<int> seasons(season_set.begin(), season_set.end());
        std::vector<std::optional<FitResult>> results(seasons.size());
        std::vector<std::string> errors(seasons.size());
        parallel_for_index(seasons.size(), [&](std::size_t i) {
            FilterSpec fspec;
            fspec.seasons = std::set<int>{seasons[i]};
            Dataset sub = filter(d, fspec);
            try {
                results[i] = fit(sub, cfg);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        });
        for (std::size_t i = 0; i < seasons.size(); ++i) {
            if (results[i]) emit(std::to_string(seasons[i]), *results[i]);
            else failures.push_back("season " + std::to_string(seasons[i]) + ": " + errors[i]);
        }
    } else if (group_by == "umpire") {
        auto results = per_umpire_fits(d, static_cast<std::size_t>(min_called), cfg);
        for (const auto& [key, r] : results.fits)
            emit(key.umpire_id + "_" + std::to_string(key.season), r);
        for (const auto& s : results.skipped)
            failures.push_back(s.key.umpire_id + " " + std::to_string(s.key.season) +
                               " (" + std::to_string(s.n_called) + " called): " + s.reason);
    } else if (group_by == "none" || group_by.empty()) {
        try {
            emit("all", fit(d, cfg));
        } catch (const std::exception& e) {
            failures.push_back(std::string("all: ") + e.what());
        }
    } else {
        throw UserError("--group-by must be none, season, or umpire");
    }

    atomic_write(dir / "params_trend.csv", trend);
    manifest.outputs.push_back("params_trend.csv");
    if (!failures.empty()) {
        std::string skipped;
        for (const auto& f : failures) skipped += f + "\n";
        atomic_write(dir / "skipped_groups.txt", skipped);
        manifest.outputs.push_back("skipped_groups.txt");
        for (const auto& f : failures) std::cerr << "skipped: " << f << "\n";
    }
    manifest.write(dir);
    return 0;
}

int cmd_contour(const std::string& fit_path, const std::string& levels_arg,
                int n_points, const std::string& out) {
    json fj = load_json_file(fit_path);
    ZoneParams p = zone_params_from_json(fj.contains("params") ? fj.at("params") : fj);

    std::vector<double> levels;
    std::stringstream ss(levels_arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) levels.push_back(std::stod(tok));
    if (levels.empty()) throw UserError("no contour levels given");

    auto dir = ensure_out_dir(out);
    Manifest manifest;
    manifest.command = "contour";
    manifest.config_echo = {{"levels", levels}, {"points", n_points}};
    manifest.add_input(fit_path);

    std::ostringstream csv;
    csv.precision(17);
    csv << "level,index,x,y\n";
    std::vector<svg::ContourLayer> layers;
    std::size_t color_i = 0;
    for (double level : levels) {
        try {
            auto pts = contour(p, level, n_points);
            for (std::size_t i = 0; i < pts.size(); ++i)
                csv << level << ',' << i << ',' << pts[i].x << ',' << pts[i].y << '\n';
            char label[32];
            std::snprintf(label, sizeof(label), "p = %g", level);
            layers.push_back({std::move(pts), label,
                              svg::level_palette()[color_i++ % svg::level_palette().size()]});
        } catch (const EmptyContour&) {
            std::cerr << "warning: level " << level << " unreachable, skipped\n";
        }
    }

    atomic_write(dir / "contours.csv", csv.str());
    atomic_write(dir / "contours.svg", svg::render_contours(layers, RulebookZone{}));
    manifest.outputs = {"contours.csv", "contours.svg"};
    manifest.write(dir);
    return 0;
}

ProbabilityGrid grid_from_input(const std::string& path, const GridExtent& extent, double step) {
    if (path.size() > 4 && path.substr(path.size() - 4) == ".csv") {
        std::ifstream in(path);
        if (!in) throw UserError("cannot open file: " + path);
        return grid_from_csv(in);
    }
    json fj = load_json_file(path);
    ZoneParams p = zone_params_from_json(fj.contains("params") ? fj.at("params") : fj);
    return probability_grid(p, extent, step);
}

int cmd_compare(const std::string& a_path, const std::string& b_path,
                const std::string& out, double step) {
    GridExtent extent;  // default covers the zone and its surroundings
    ProbabilityGrid a = grid_from_input(a_path, extent, step);
    ProbabilityGrid b = grid_from_input(b_path, extent, step);
    ProbabilityGrid diff;
    try {
        diff = grid_difference(a, b);
    } catch (const GridMismatch& e) {
        throw UserError(e.what());
    }

    auto dir = ensure_out_dir(out);
    Manifest manifest;
    manifest.command = "compare";
    manifest.config_echo = {{"step", step}};
    manifest.add_input(a_path);
    manifest.add_input(b_path);

    std::ostringstream csv;
    csv.precision(17);
    grid_to_csv(diff, csv);
    atomic_write(dir / "difference.csv", csv.str());
    RulebookZone z;
    atomic_write(dir / "difference.svg", svg::render_heatmap(diff, /*diverging=*/true, &z));
    manifest.outputs = {"difference.csv", "difference.svg"};
    manifest.write(dir);
    return 0;
}

// ratio tables + pairwise per-season significance matrix
int zones_like(const std::string& command, const std::string& input,
               const std::string& band_arg, const std::string& group_by_arg,
               const std::string& out) {
    Dataset d = load_dataset(input);
    auto bands = parse_bands(band_arg);
    auto fields = parse_group_fields(group_by_arg);
    bool attempts = command == "attempts";

    auto dir = ensure_out_dir(out);
    Manifest manifest;
    manifest.command = command;
    manifest.config_echo = {{"band", band_arg}, {"group_by", group_by_arg}};
    manifest.add_input(input);

    std::vector<RatioReport> reports;
    for (ZoneBand band : bands) {
        auto rows = attempts ? hit_attempt_ratio(d, band, fields)
                             : strike_ratio(d, band, fields);
        reports.insert(reports.end(), rows.begin(), rows.end());
    }
    std::ostringstream csv;
    csv.precision(17);
    ratio_reports_to_csv(reports, csv);
    atomic_write(dir / "ratios.csv", csv.str());
    manifest.outputs.push_back("ratios.csv");

    // pairwise seasons within each (band, non-season group) cell
    bool grouped_by_season = false;
    for (auto f : fields) grouped_by_season |= f == GroupField::Season;
    if (grouped_by_season) {
        std::ostringstream sig;
        sig << "band,group,season_a,season_b,ratio_a,ratio_b,z,p_value\n";
        std::map<std::pair<ZoneBand, std::string>, std::vector<const RatioReport*>> cells;
        for (const auto& r : reports) {
            GroupKey rest = r.group_key;
            rest.season.reset();
            cells[{r.band, rest.label()}].push_back(&r);
        }
        for (const auto& [cell, rows] : cells) {
            for (std::size_t i = 0; i < rows.size(); ++i) {
                for (std::size_t j = i + 1; j < rows.size(); ++j) {
                    auto t = two_proportion_test(rows[i]->k, rows[i]->n, rows[j]->k, rows[j]->n);
                    sig << to_string(cell.first) << ',' << cell.second << ','
                        << *rows[i]->group_key.season << ',' << *rows[j]->group_key.season << ','
                        << rows[i]->ratio << ',' << rows[j]->ratio << ','
                        << t.z << ',' << t.p_value << '\n';
                }
            }
        }
        atomic_write(dir / "significance.csv", sig.str());
        manifest.outputs.push_back("significance.csv");
    }
    manifest.write(dir);
    return 0;
}

int cmd_mix(const std::string& input, const std::string& band_arg, const std::string& out) {
    Dataset d = load_dataset(input);
    auto bands = parse_bands(band_arg);
    auto dir = ensure_out_dir(out);
    Manifest manifest;
    manifest.command = "mix";
    manifest.config_echo = {{"band", band_arg}};
    manifest.add_input(input);

    std::ostringstream csv;
    csv.precision(17);
    csv << "band,four_seam,two_seam,slider,changeup,curveball,forkball,other\n";
    for (ZoneBand band : bands) {
        try {
            auto mix = decision_pitch_mix(d, band);
            csv << to_string(band);
            for (PitchType t : {PitchType::FourSeam, PitchType::TwoSeam, PitchType::Slider,
                                PitchType::ChangeUp, PitchType::Curveball, PitchType::Forkball,
                                PitchType::Other})
                csv << ',' << mix.at(t);
            csv << '\n';
        } catch (const EmptyCell&) {
            std::cerr << "warning: no decision pitches in band " << to_string(band) << "\n";
        }
    }
    atomic_write(dir / "mix.csv", csv.str());
    manifest.outputs = {"mix.csv"};
    manifest.write(dir);
    return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& out,
                 std::uint64_t seed, bool seed_given) {
    json cj = load_json_file(config_path);
    SynthConfig cfg;
    try {
        cfg = synth_config_from_json(cj);
        if (seed_given || !cj.contains("seed")) cfg.seed = seed;
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw UserError(e.what());
    }
    Dataset d = generate(cfg);

    auto dir = ensure_out_dir(out);
    Manifest manifest;
    manifest.command = "simulate";
    manifest.seed = cfg.seed;
    manifest.config_echo = cj;
    manifest.config_echo["seed"] = cfg.seed;
    manifest.add_input(config_path);

    std::ostringstream csv;
    csv.precision(17);
    save_csv(d, csv);
    atomic_write(dir / "synthetic.csv", csv.str());
    manifest.outputs = {"synthetic.csv"};
    manifest.write(dir);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Strike-zone model fitting and gray-zone analysis"};
    app.set_version_flag("--version", std::string("zonefit ") + kVersion);
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    bool seed_given = false;
    auto* seed_opt = app.add_option("--seed", seed, "master seed (default 0, never wall-clock)");

    std::string input, out = ".", config_path, group_by = "none", levels = "0.1,0.25,0.5,0.75,0.9";
    std::string band = "all", group_fields = "season", input_b;
    int n_points = 256, min_called = 500;
    double step = 0.05;

    auto* v = app.add_subcommand("validate", "validate a pitch CSV");
    v->add_option("input", input)->required();

    auto* f = app.add_subcommand("fit", "fit zone parameters, optionally per group");
    f->add_option("input", input)->required();
    f->add_option("--group-by", group_by, "none|season|umpire");
    f->add_option("--config", config_path, "FitConfig JSON");
    f->add_option("--min-called", min_called, "minimum called pitches per umpire group");
    f->add_option("--out", out)->required();

    auto* c = app.add_subcommand("contour", "emit probability contours from a fit JSON");
    c->add_option("fit", input)->required();
    c->add_option("--levels", levels);
    c->add_option("--points", n_points);
    c->add_option("--out", out)->required();

    auto* cp = app.add_subcommand("compare", "difference grid between two fits or grid CSVs");
    cp->add_option("a", input)->required();
    cp->add_option("b", input_b)->required();
    cp->add_option("--step", step);
    cp->add_option("--out", out)->required();

    auto* zs = app.add_subcommand("zones", "strike-call ratios per interest band");
    zs->add_option("input", input)->required();
    zs->add_option("--band", band, "all or comma list of band names");
    zs->add_option("--group-by", group_fields, "comma list: season,pitch_type,hand,umpire");
    zs->add_option("--out", out)->required();

    auto* at = app.add_subcommand("attempts", "hit-attempt ratios per interest band");
    at->add_option("input", input)->required();
    at->add_option("--band", band);
    at->add_option("--group-by", group_fields);
    at->add_option("--out", out)->required();

    auto* mx = app.add_subcommand("mix", "decision-pitch type mix per band");
    mx->add_option("input", input)->required();
    mx->add_option("--band", band);
    mx->add_option("--out", out)->required();

    auto* sm = app.add_subcommand("simulate", "generate a synthetic pitch CSV");
    sm->add_option("config", input)->required();
    sm->add_option("--out", out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    seed_given = seed_opt->count() > 0;

    try {
        if (v->parsed()) return cmd_validate(input);
        if (f->parsed()) return cmd_fit(input, group_by, config_path, out, seed, seed_given, min_called);
        if (c->parsed()) return cmd_contour(input, levels, n_points, out);
        if (cp->parsed()) return cmd_compare(input, input_b, out, step);
        if (zs->parsed()) return zones_like("zones", input, band, group_fields, out);
        if (at->parsed()) return zones_like("attempts", input, band, group_fields, out);
        if (mx->parsed()) return cmd_mix(input, band, out);
        if (sm->parsed()) return cmd_simulate(input, out, seed, seed_given);
    } catch (const UserError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

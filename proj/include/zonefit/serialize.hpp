#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "zonefit/analysis.hpp"
#include "zonefit/fitter.hpp"
#include "zonefit/synth.hpp"
#include "zonefit/zone_model.hpp"

namespace zonefit {

using nlohmann::json;

inline json to_json(const ZoneParams& p) {
    return {{"x0", p.x0}, {"y0", p.y0}, {"alpha", p.alpha},
            {"lambda", p.lambda}, {"beta", p.beta}, {"r", p.r}};
}

inline ZoneParams zone_params_from_json(const json& j) {
    ZoneParams p;
    p.x0 = j.at("x0").get<double>();
    p.y0 = j.at("y0").get<double>();
    p.alpha = j.at("alpha").get<double>();
    p.lambda = j.at("lambda").get<double>();
    p.beta = j.at("beta").get<double>();
    p.r = j.at("r").get<double>();
    return p;
}

inline json to_json(const Interval& iv) {
    return {{"lo", iv.lo}, {"hi", iv.hi}};
}

inline json to_json(const FitConfig& c) {
    return {{"n_starts", c.n_starts}, {"max_iters", c.max_iters}, {"tol", c.tol},
            {"seed", c.seed}, {"n_bootstrap", c.n_bootstrap}, {"beta_cap", c.beta_cap}};
}

inline FitConfig fit_config_from_json(const json& j) {
    FitConfig c;
    if (j.contains("n_starts")) c.n_starts = j.at("n_starts").get<int>();
    if (j.contains("max_iters")) c.max_iters = j.at("max_iters").get<int>();
    if (j.contains("tol")) c.tol = j.at("tol").get<double>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("n_bootstrap")) c.n_bootstrap = j.at("n_bootstrap").get<int>();
    if (j.contains("beta_cap")) c.beta_cap = j.at("beta_cap").get<double>();
    return c;
}

inline json to_json(const FitResult& r) {
    auto t = to_transformed(r.params);
    auto dm = derived_metrics(r.params);
    json j = {
        {"params", to_json(r.params)},
        {"transformed_params", {{"x0", t[0]}, {"y0", t[1]}, {"log_alpha", t[2]},
                                {"log_lambda", t[3]}, {"log_beta", t[4]}, {"log_r_minus_1", t[5]}}},
        {"nll", r.nll},
        {"nll_convention", "sum over called pitches"},
        {"converged", r.converged},
        {"capped_beta", r.capped_beta},
        {"n_pitches_used", r.n_pitches_used},
        {"derived", {{"width", dm.width}, {"height", dm.height},
                     {"center_x", dm.center_x}, {"center_y", dm.center_y}}},
        {"config_echo", to_json(r.config)},
    };
    if (r.intervals) {
        const auto& iv = *r.intervals;
        j["intervals"] = {
            {"kind", "bootstrap percentile 95%"},
            {"x0", to_json(iv.x0)}, {"y0", to_json(iv.y0)},
            {"alpha", to_json(iv.alpha)}, {"lambda", to_json(iv.lambda)},
            {"beta", to_json(iv.beta)}, {"r", to_json(iv.r)},
            {"width", to_json(iv.width)}, {"height", to_json(iv.height)},
            {"center_x", to_json(iv.center_x)}, {"center_y", to_json(iv.center_y)},
        };
        j["bootstrap_failures"] = r.bootstrap_failures;
    }
    return j;
}

inline SynthConfig synth_config_from_json(const json& j) {
    SynthConfig c;
    if (j.contains("true_params")) c.true_params = zone_params_from_json(j.at("true_params"));
    if (j.contains("n")) c.n = j.at("n").get<std::size_t>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("label_mode")) {
        std::string m = j.at("label_mode").get<std::string>();
        if (m == "probabilistic") c.label_mode = LabelMode::Probabilistic;
        else if (m == "rulebook") c.label_mode = LabelMode::RulebookDeterministic;
        else throw std::invalid_argument("label_mode must be 'probabilistic' or 'rulebook'");
    }
    if (j.contains("season")) c.season = j.at("season").get<int>();
    if (j.contains("umpire_id")) c.umpire_id = j.at("umpire_id").get<std::string>();
    if (j.contains("location")) {
        const auto& l = j.at("location");
        std::string kind = l.value("kind", "uniform");
        if (kind == "uniform") {
            c.location.gaussian = false;
            c.location.uniform.x_min = l.value("x_min", c.location.uniform.x_min);
            c.location.uniform.x_max = l.value("x_max", c.location.uniform.x_max);
            c.location.uniform.y_min = l.value("y_min", c.location.uniform.y_min);
            c.location.uniform.y_max = l.value("y_max", c.location.uniform.y_max);
        } else if (kind == "gaussian") {
            c.location.gaussian = true;
            c.location.gauss.x_mean = l.value("x_mean", c.location.gauss.x_mean);
            c.location.gauss.x_sd = l.value("x_sd", c.location.gauss.x_sd);
            c.location.gauss.y_mean = l.value("y_mean", c.location.gauss.y_mean);
            c.location.gauss.y_sd = l.value("y_sd", c.location.gauss.y_sd);
        } else {
            throw std::invalid_argument("location.kind must be 'uniform' or 'gaussian'");
        }
    }
    if (j.contains("pitch_type_mix")) {
        auto v = j.at("pitch_type_mix").get<std::vector<double>>();
        if (v.size() != c.pitch_type_mix.size())
            throw std::invalid_argument("pitch_type_mix needs exactly 7 weights");
        std::copy(v.begin(), v.end(), c.pitch_type_mix.begin());
    }
    if (j.contains("left_hand_fraction"))
        c.left_hand_fraction = j.at("left_hand_fraction").get<double>();
    return c;
}

// Grid CSV: header row of x coordinates, first column of y coordinates.
inline void grid_to_csv(const ProbabilityGrid& g, std::ostream& out) {
    out.precision(17);
    out << "y_x";
    for (std::size_t ix = 0; ix < g.nx; ++ix) out << ',' << g.x_of(ix);
    out << '\n';
    for (std::size_t iy = 0; iy < g.ny; ++iy) {
        out << g.y_of(iy);
        for (std::size_t ix = 0; ix < g.nx; ++ix) out << ',' << g.at(iy, ix);
        out << '\n';
    }
}

inline ProbabilityGrid grid_from_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("grid CSV: empty");
    std::vector<double> xs;
    {
        std::stringstream ss(line);
        std::string tok;
        std::getline(ss, tok, ',');  // corner label
        while (std::getline(ss, tok, ',')) xs.push_back(std::stod(tok));
    }
    std::vector<double> ys;
    std::vector<double> values;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        std::getline(ss, tok, ',');
        ys.push_back(std::stod(tok));
        while (std::getline(ss, tok, ',')) values.push_back(std::stod(tok));
    }
    if (xs.size() < 1 || ys.size() < 1 || values.size() != xs.size() * ys.size())
        throw std::runtime_error("grid CSV: inconsistent dimensions");
    ProbabilityGrid g;
    g.nx = xs.size();
    g.ny = ys.size();
    g.step = g.nx > 1 ? xs[1] - xs[0] : (g.ny > 1 ? ys[1] - ys[0] : 0.05);
    g.extent.x_min = xs.front() - 0.5 * g.step;
    g.extent.x_max = xs.back() + 0.5 * g.step;
    g.extent.y_min = ys.front() - 0.5 * g.step;
    g.extent.y_max = ys.back() + 0.5 * g.step;
    g.values = std::move(values);
    return g;
}

inline void ratio_reports_to_csv(const std::vector<RatioReport>& reports, std::ostream& out) {
    out.precision(17);
    out << "band,group,n,k,ratio,lo,hi\n";
    for (const auto& r : reports) {
        out << to_string(r.band) << ',' << r.group_key.label() << ','
            << r.n << ',' << r.k << ',' << r.ratio << ','
            << r.interval.lo << ',' << r.interval.hi << '\n';
    }
}

inline json ratio_reports_to_json(const std::vector<RatioReport>& reports) {
    json arr = json::array();
    for (const auto& r : reports) {
        json g = json::object();
        if (r.group_key.season) g["season"] = *r.group_key.season;
        if (r.group_key.pitch_type) g["pitch_type"] = to_string(*r.group_key.pitch_type);
        if (r.group_key.hand) g["batter_hand"] = to_string(*r.group_key.hand);
        if (r.group_key.umpire_id) g["umpire_id"] = *r.group_key.umpire_id;
        arr.push_back({{"band", to_string(r.band)}, {"group", g},
                       {"n", r.n}, {"k", r.k}, {"ratio", r.ratio},
                       {"lo", r.interval.lo}, {"hi", r.interval.hi}});
    }
    return arr;
}

} // namespace zonefit

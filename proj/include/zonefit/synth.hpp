#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "zonefit/data_model.hpp"
#include "zonefit/rng.hpp"
#include "zonefit/zone_model.hpp"

namespace zonefit {

enum class LabelMode { Probabilistic, RulebookDeterministic };

struct UniformLocation {
    double x_min = -2.0, x_max = 2.0;
    double y_min = 0.5, y_max = 4.5;
};

struct GaussianLocation {
    double x_mean = 0.0, x_sd = 1.0;
    double y_mean = 2.5, y_sd = 1.0;
};

struct LocationDist {
    bool gaussian = false;
    UniformLocation uniform;
    GaussianLocation gauss;
};

struct SynthConfig {
    ZoneParams true_params;
    std::size_t n = 10000;
    LocationDist location;
    std::uint64_t seed = 0;
    LabelMode label_mode = LabelMode::Probabilistic;
    int season = 2023;
    std::string umpire_id = "U1";
    RulebookZone rulebook;  // used by RulebookDeterministic labels
    // sampling mixes; indices follow the PitchType enum
    std::array<double, kNumPitchTypes> pitch_type_mix = {0.45, 0.1, 0.2, 0.1, 0.05, 0.05, 0.05};
    double left_hand_fraction = 0.4;

    void validate() const {
        if (n < 1) throw std::invalid_argument("SynthConfig: n must be >= 1");
        if (!true_params.valid()) throw std::invalid_argument("SynthConfig: invalid true_params");
        double s = 0.0;
        for (double w : pitch_type_mix) {
            if (w < 0.0) throw std::invalid_argument("SynthConfig: negative mix weight");
            s += w;
        }
        if (std::fabs(s - 1.0) > 1e-9) throw std::invalid_argument("SynthConfig: pitch_type_mix must sum to 1");
        if (left_hand_fraction < 0.0 || left_hand_fraction > 1.0)
            throw std::invalid_argument("SynthConfig: left_hand_fraction out of [0,1]");
        if (!location.gaussian) {
            const auto& u = location.uniform;
            if (u.x_max <= u.x_min || u.y_max <= u.y_min)
                throw std::invalid_argument("SynthConfig: degenerate uniform extent");
        } else if (location.gauss.x_sd <= 0.0 || location.gauss.y_sd <= 0.0) {
            throw std::invalid_argument("SynthConfig: gaussian sd must be > 0");
        }
    }
};

// Deterministic given seed; location, label, and metadata draws come from
// split substreams so adding one never perturbs the others.
inline Dataset generate(const SynthConfig& cfg) {
    cfg.validate();
    auto loc_rng = substream(cfg.seed, 1);
    auto label_rng = substream(cfg.seed, 2);
    auto meta_rng = substream(cfg.seed, 3);

    Dataset d;
    d.source_label = "synthetic";
    d.pitches.reserve(cfg.n);
    for (std::size_t i = 0; i < cfg.n; ++i) {
        Pitch p;
        if (cfg.location.gaussian) {
            p.x = loc_rng.normal(cfg.location.gauss.x_mean, cfg.location.gauss.x_sd);
            p.y = loc_rng.normal(cfg.location.gauss.y_mean, cfg.location.gauss.y_sd);
        } else {
            p.x = loc_rng.uniform(cfg.location.uniform.x_min, cfg.location.uniform.x_max);
            p.y = loc_rng.uniform(cfg.location.uniform.y_min, cfg.location.uniform.y_max);
        }
        // keep generated points inside the validation window
        p.x = std::clamp(p.x, -4.999, 4.999);
        p.y = std::clamp(p.y, 0.001, 7.999);

        bool strike;
        if (cfg.label_mode == LabelMode::RulebookDeterministic) {
            strike = rulebook_call(cfg.rulebook, p.x, p.y) == Call::Strike;
        } else {
            strike = label_rng.next_double() < strike_probability(cfg.true_params, p.x, p.y);
        }
        p.outcome = strike ? Outcome::CalledStrike : Outcome::CalledBall;

        p.season = cfg.season;
        p.umpire_id = cfg.umpire_id;
        p.game_id = "G" + std::to_string(i / 300 + 1);
        p.pitcher_id = "P" + std::to_string(meta_rng.next_u64() % 50 + 1);
        p.batter_id = "B" + std::to_string(meta_rng.next_u64() % 100 + 1);
        p.pitch_type = static_cast<PitchType>(meta_rng.pick_weighted(cfg.pitch_type_mix));
        p.batter_hand = meta_rng.next_double() < cfg.left_hand_fraction ? BatterHand::Left
                                                                        : BatterHand::Right;
        p.balls = static_cast<int>(meta_rng.next_u64() % 4);
        p.strikes = static_cast<int>(meta_rng.next_u64() % 3);
        d.pitches.push_back(std::move(p));
    }
    return d;
}

} // namespace zonefit

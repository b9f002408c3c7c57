#pragma once

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "zonefit/data_model.hpp"
#include "zonefit/fitter.hpp"
#include "zonefit/stats.hpp"
#include "zonefit/zone_model.hpp"

namespace zonefit {

// Gray-zone interest bands at the rule-book edges, 0.25 ft wide by default.
// Bands ending in 1 sit inside the rule-book zone, bands ending in 2 outside.
// In/Out resolve against batter handedness.
enum class ZoneBand { High1, High2, Low1, Low2, In1, In2, Out1, Out2 };

constexpr double kDefaultBandWidth = 0.25;

inline const char* to_string(ZoneBand b) {
    switch (b) {
        case ZoneBand::High1: return "High1";
        case ZoneBand::High2: return "High2";
        case ZoneBand::Low1: return "Low1";
        case ZoneBand::Low2: return "Low2";
        case ZoneBand::In1: return "In1";
        case ZoneBand::In2: return "In2";
        case ZoneBand::Out1: return "Out1";
        default: return "Out2";
    }
}

inline std::optional<ZoneBand> parse_band(std::string_view s) {
    if (s == "High1") return ZoneBand::High1;
    if (s == "High2") return ZoneBand::High2;
    if (s == "Low1") return ZoneBand::Low1;
    if (s == "Low2") return ZoneBand::Low2;
    if (s == "In1") return ZoneBand::In1;
    if (s == "In2") return ZoneBand::In2;
    if (s == "Out1") return ZoneBand::Out1;
    if (s == "Out2") return ZoneBand::Out2;
    return std::nullopt;
}

inline const std::vector<ZoneBand>& all_bands() {
    static const std::vector<ZoneBand> bands = {
        ZoneBand::High1, ZoneBand::High2, ZoneBand::Low1, ZoneBand::Low2,
        ZoneBand::In1, ZoneBand::In2, ZoneBand::Out1, ZoneBand::Out2};
    return bands;
}

// A corner pitch may land in one vertical and one horizontal band at once;
// a band-1 never overlaps its band-2. The right-handed batter stands on the
// negative-x side; a left-handed batter mirrors x.
inline std::set<ZoneBand> classify_band(double x, double y, BatterHand hand,
                                        const RulebookZone& z = {},
                                        double w = kDefaultBandWidth) {
    if (!(w > 0.0)) throw std::invalid_argument("classify_band: band width must be > 0");
    double xm = hand == BatterHand::Left ? -x : x;
    std::set<ZoneBand> out;
    bool x_inside = xm > -z.x_half && xm < z.x_half;
    bool y_inside = y > z.y_low && y < z.y_high;
    if (x_inside) {
        if (y >= z.y_high - w && y < z.y_high) out.insert(ZoneBand::High1);
        else if (y >= z.y_high && y < z.y_high + w) out.insert(ZoneBand::High2);
        if (y > z.y_low && y <= z.y_low + w) out.insert(ZoneBand::Low1);
        else if (y > z.y_low - w && y <= z.y_low) out.insert(ZoneBand::Low2);
    }
    if (y_inside) {
        if (xm > -z.x_half && xm <= -z.x_half + w) out.insert(ZoneBand::In1);
        else if (xm > -z.x_half - w && xm <= -z.x_half) out.insert(ZoneBand::In2);
        if (xm >= z.x_half - w && xm < z.x_half) out.insert(ZoneBand::Out1);
        else if (xm >= z.x_half && xm < z.x_half + w) out.insert(ZoneBand::Out2);
    }
    return out;
}

enum class GroupField { Season, PitchType, Hand, Umpire };

struct GroupKey {
    std::optional<int> season;
    std::optional<PitchType> pitch_type;
    std::optional<BatterHand> hand;
    std::optional<std::string> umpire_id;

    auto operator<=>(const GroupKey&) const = default;

    std::string label() const {
        std::ostringstream os;
        bool first = true;
        auto sep = [&] { if (!first) os << '|'; first = false; };
        if (season) { sep(); os << *season; }
        if (pitch_type) { sep(); os << to_string(*pitch_type); }
        if (hand) { sep(); os << to_string(*hand); }
        if (umpire_id) { sep(); os << *umpire_id; }
        if (first) os << "all";
        return os.str();
    }
};

inline GroupKey make_key(const Pitch& p, const std::vector<GroupField>& fields) {
    GroupKey k;
    for (auto f : fields) {
        switch (f) {
            case GroupField::Season: k.season = p.season; break;
            case GroupField::PitchType: k.pitch_type = p.pitch_type; break;
            case GroupField::Hand: k.hand = p.batter_hand; break;
            case GroupField::Umpire: k.umpire_id = p.umpire_id; break;
        }
    }
    return k;
}

struct RatioReport {
    ZoneBand band;
    GroupKey group_key;
    long long n = 0;
    long long k = 0;
    double ratio = 0.0;
    Interval interval;
};

namespace detail {

template <typename InBand, typename Numer, typename Denom>
std::vector<RatioReport> band_ratio(const Dataset& d, ZoneBand band,
                                    const std::vector<GroupField>& group_by,
                                    InBand in_band, Numer is_success, Denom in_denominator) {
    std::map<GroupKey, std::pair<long long, long long>> cells;  // key -> (k, n)
    for (const auto& p : d.pitches) {
        if (!in_denominator(p)) continue;
        if (!in_band(p)) continue;
        auto& cell = cells[make_key(p, group_by)];
        ++cell.second;
        if (is_success(p)) ++cell.first;
    }
    std::vector<RatioReport> out;
    for (const auto& [key, kn] : cells) {
        RatioReport r;
        r.band = band;
        r.group_key = key;
        r.k = kn.first;
        r.n = kn.second;
        r.ratio = static_cast<double>(r.k) / r.n;
        auto [lo, hi] = jeffreys_interval(r.k, r.n);
        r.interval = {lo, hi};
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace detail

// Called-strike ratio among called pitches whose band set contains `band`.
inline std::vector<RatioReport> strike_ratio(const Dataset& d, ZoneBand band,
                                             const std::vector<GroupField>& group_by = {},
                                             const RulebookZone& z = {},
                                             double w = kDefaultBandWidth) {
    return detail::band_ratio(
        d, band, group_by,
        [&](const Pitch& p) { return classify_band(p.x, p.y, p.batter_hand, z, w).count(band) > 0; },
        [&](const Pitch& p) { return p.outcome == Outcome::CalledStrike; },
        [&](const Pitch& p) { return p.is_called(); });
}

inline bool is_hit_attempt(Outcome o) {
    return o == Outcome::SwingingStrike || o == Outcome::InPlay || o == Outcome::Foul ||
           o == Outcome::Bunt || o == Outcome::BuntFoul;
}

// Fraction of all pitches in the band the batter offered at.
inline std::vector<RatioReport> hit_attempt_ratio(const Dataset& d, ZoneBand band,
                                                  const std::vector<GroupField>& group_by = {},
                                                  const RulebookZone& z = {},
                                                  double w = kDefaultBandWidth) {
    return detail::band_ratio(
        d, band, group_by,
        [&](const Pitch& p) { return classify_band(p.x, p.y, p.batter_hand, z, w).count(band) > 0; },
        [&](const Pitch& p) { return is_hit_attempt(p.outcome); },
        [&](const Pitch&) { return true; });
}

struct EmptyCell : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Pitch-type mix among 2-2 ("decision") pitches arriving in the band.
inline std::map<PitchType, double> decision_pitch_mix(const Dataset& d, ZoneBand band,
                                                      const RulebookZone& z = {},
                                                      double w = kDefaultBandWidth) {
    std::map<PitchType, long long> counts;
    long long total = 0;
    for (const auto& p : d.pitches) {
        if (p.balls != 2 || p.strikes != 2) continue;
        if (!classify_band(p.x, p.y, p.batter_hand, z, w).count(band)) continue;
        ++counts[p.pitch_type];
        ++total;
    }
    if (total == 0) throw EmptyCell(std::string("decision_pitch_mix: no 2-2 pitches in band ") + to_string(band));
    std::map<PitchType, double> mix;
    for (PitchType t : {PitchType::FourSeam, PitchType::TwoSeam, PitchType::Slider,
                        PitchType::ChangeUp, PitchType::Curveball, PitchType::Forkball,
                        PitchType::Other}) {
        mix[t] = static_cast<double>(counts[t]) / total;
    }
    return mix;
}

struct UmpireGroupKey {
    std::string umpire_id;
    int season = 0;
    auto operator<=>(const UmpireGroupKey&) const = default;
};

struct SkippedGroup {
    UmpireGroupKey key;
    std::size_t n_called = 0;
    std::string reason;
};

struct PerUmpireFits {
    std::map<UmpireGroupKey, FitResult> fits;
    std::vector<SkippedGroup> skipped;
};

// Fits each (umpire, season) group with enough called pitches; groups below
// the threshold or failing to fit are listed, not fatal.
inline PerUmpireFits per_umpire_fits(const Dataset& d, std::size_t min_called,
                                     const FitConfig& cfg = {}) {
    if (min_called < 50) throw std::invalid_argument("per_umpire_fits: min_called must be >= 50");
    std::map<UmpireGroupKey, Dataset> groups;
    for (const auto& p : d.pitches)
        groups[{p.umpire_id, p.season}].pitches.push_back(p);

    PerUmpireFits out;
    for (auto& [key, subset] : groups) {
        std::size_t called = 0;
        for (const auto& p : subset.pitches) called += p.is_called();
        if (called < min_called) {
            out.skipped.push_back({key, called, "below min_called"});
            continue;
        }
        try {
            out.fits.emplace(key, fit(subset, cfg));
        } catch (const std::exception& e) {
            out.skipped.push_back({key, called, e.what()});
        }
    }
    return out;
}

} // namespace zonefit

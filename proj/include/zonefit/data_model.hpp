#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zonefit {

enum class BatterHand { Left, Right };

enum class PitchType { FourSeam, TwoSeam, Slider, ChangeUp, Curveball, Forkball, Other };

enum class Outcome {
    CalledStrike, CalledBall, SwingingStrike, Foul, InPlay,
    Bunt, BuntFoul, HitByPitch, Other
};

constexpr int kNumPitchTypes = 7;

inline const char* to_string(BatterHand h) {
    return h == BatterHand::Left ? "L" : "R";
}

inline const char* to_string(PitchType t) {
    switch (t) {
        case PitchType::FourSeam: return "four_seam";
        case PitchType::TwoSeam: return "two_seam";
        case PitchType::Slider: return "slider";
        case PitchType::ChangeUp: return "changeup";
        case PitchType::Curveball: return "curveball";
        case PitchType::Forkball: return "forkball";
        default: return "other";
    }
}

inline const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::CalledStrike: return "called_strike";
        case Outcome::CalledBall: return "called_ball";
        case Outcome::SwingingStrike: return "swinging_strike";
        case Outcome::Foul: return "foul";
        case Outcome::InPlay: return "in_play";
        case Outcome::Bunt: return "bunt";
        case Outcome::BuntFoul: return "bunt_foul";
        case Outcome::HitByPitch: return "hbp";
        default: return "other";
    }
}

inline std::optional<BatterHand> parse_batter_hand(std::string_view s) {
    if (s == "L") return BatterHand::Left;
    if (s == "R") return BatterHand::Right;
    return std::nullopt;
}

// Unknown spellings map to Other by contract.
inline PitchType parse_pitch_type(std::string_view s) {
    if (s == "four_seam") return PitchType::FourSeam;
    if (s == "two_seam") return PitchType::TwoSeam;
    if (s == "slider") return PitchType::Slider;
    if (s == "changeup") return PitchType::ChangeUp;
    if (s == "curveball") return PitchType::Curveball;
    if (s == "forkball") return PitchType::Forkball;
    return PitchType::Other;
}

inline std::optional<Outcome> parse_outcome(std::string_view s) {
    if (s == "called_strike") return Outcome::CalledStrike;
    if (s == "called_ball") return Outcome::CalledBall;
    if (s == "swinging_strike") return Outcome::SwingingStrike;
    if (s == "foul") return Outcome::Foul;
    if (s == "in_play") return Outcome::InPlay;
    if (s == "bunt") return Outcome::Bunt;
    if (s == "bunt_foul") return Outcome::BuntFoul;
    if (s == "hbp") return Outcome::HitByPitch;
    if (s == "other") return Outcome::Other;
    return std::nullopt;
}

struct Pitch {
    int season = 0;
    std::string game_id;
    std::string umpire_id;
    std::string pitcher_id;
    std::string batter_id;
    BatterHand batter_hand = BatterHand::Right;
    PitchType pitch_type = PitchType::Other;
    double x = 0.0;   // ft from plate center, positive toward umpire's right
    double y = 0.0;   // ft above ground
    int balls = 0;
    int strikes = 0;
    Outcome outcome = Outcome::Other;

    bool is_called() const {
        return outcome == Outcome::CalledStrike || outcome == Outcome::CalledBall;
    }

    bool operator==(const Pitch&) const = default;
};

// Physical sanity window; rows outside are rejected, never clamped.
inline std::optional<std::string> validate_pitch(const Pitch& p) {
    if (!std::isfinite(p.x) || std::fabs(p.x) > 5.0)
        return "x out of range [-5, 5] ft";
    if (!std::isfinite(p.y) || p.y < 0.0 || p.y > 8.0)
        return "y out of range [0, 8] ft";
    if (p.balls < 0 || p.balls > 3)
        return "balls out of range [0, 3]";
    if (p.strikes < 0 || p.strikes > 2)
        return "strikes out of range [0, 2]";
    if (p.season < 1900)
        return "season before 1900";
    return std::nullopt;
}

struct Dataset {
    std::vector<Pitch> pitches;
    std::string source_label;

    std::size_t row_count() const { return pitches.size(); }
};

struct MissingColumn : std::runtime_error {
    explicit MissingColumn(const std::string& col)
        : std::runtime_error("missing column: " + col), column(col) {}
    std::string column;
};

struct ParseError : std::runtime_error {
    ParseError(std::size_t row_, const std::string& column_, const std::string& what_)
        : std::runtime_error("row " + std::to_string(row_) + ", column " + column_ + ": " + what_),
          row(row_), column(column_) {}
    std::size_t row;
    std::string column;
};

struct EmptyFile : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline const std::vector<std::string>& canonical_columns() {
    static const std::vector<std::string> cols = {
        "season", "game_id", "umpire_id", "pitcher_id", "batter_id",
        "batter_hand", "pitch_type", "x_ft", "y_ft", "balls", "strikes", "outcome"};
    return cols;
}

// Maps canonical field names to the column names found in a foreign export.
// An empty map means the file already uses the canonical header.
using ColumnMapping = std::map<std::string, std::string>;

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            out.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    out.push_back(field);
    return out;
}

inline int parse_int(const std::string& s, std::size_t row, const std::string& col) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ParseError(row, col, "not an integer: '" + s + "'");
    }
}

inline double parse_double(const std::string& s, std::size_t row, const std::string& col) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ParseError(row, col, "not a number: '" + s + "'");
    }
}

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace detail

struct RowViolation {
    std::size_t row;        // 1-based data row number (header excluded)
    std::string message;
};

struct LoadReport {
    Dataset dataset;
    std::vector<RowViolation> violations;
};

// Parses a canonical-schema CSV. Rows failing type parsing or the pitch sanity
// window are reported with their row number and excluded from the dataset.
inline LoadReport load_csv_report(const std::string& path,
                                  const ColumnMapping& mapping = {},
                                  const std::string& source_label = "") {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);

    std::string header_line;
    if (!std::getline(in, header_line)) throw EmptyFile("empty file: " + path);
    auto header = detail::split_csv_line(header_line);

    std::map<std::string, std::size_t> col_index;
    for (std::size_t i = 0; i < header.size(); ++i) col_index[header[i]] = i;

    std::map<std::string, std::size_t> field_index;
    for (const auto& field : canonical_columns()) {
        std::string col = field;
        if (auto it = mapping.find(field); it != mapping.end()) col = it->second;
        auto it = col_index.find(col);
        if (it == col_index.end()) throw MissingColumn(col);
        field_index[field] = it->second;
    }

    LoadReport report;
    report.dataset.source_label = source_label.empty() ? path : source_label;

    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        auto fields = detail::split_csv_line(line);
        if (fields.size() < header.size()) {
            report.violations.push_back({row, "too few fields"});
            continue;
        }
        auto get = [&](const std::string& f) -> const std::string& {
            return fields[field_index.at(f)];
        };
        try {
            Pitch p;
            p.season = detail::parse_int(get("season"), row, "season");
            p.game_id = get("game_id");
            p.umpire_id = get("umpire_id");
            p.pitcher_id = get("pitcher_id");
            p.batter_id = get("batter_id");
            auto hand = parse_batter_hand(get("batter_hand"));
            if (!hand) throw ParseError(row, "batter_hand", "expected L or R, got '" + get("batter_hand") + "'");
            p.batter_hand = *hand;
            p.pitch_type = parse_pitch_type(get("pitch_type"));
            p.x = detail::parse_double(get("x_ft"), row, "x_ft");
            p.y = detail::parse_double(get("y_ft"), row, "y_ft");
            p.balls = detail::parse_int(get("balls"), row, "balls");
            p.strikes = detail::parse_int(get("strikes"), row, "strikes");
            auto outcome = parse_outcome(get("outcome"));
            if (!outcome) throw ParseError(row, "outcome", "unknown outcome '" + get("outcome") + "'");
            p.outcome = *outcome;
            if (auto bad = validate_pitch(p)) {
                report.violations.push_back({row, *bad});
                continue;
            }
            report.dataset.pitches.push_back(std::move(p));
        } catch (const ParseError& e) {
            report.violations.push_back({row, e.what()});
        }
    }
    if (row == 0) throw EmptyFile("no data rows: " + path);
    return report;
}

inline Dataset load_csv(const std::string& path,
                        const ColumnMapping& mapping = {},
                        const std::string& source_label = "") {
    return load_csv_report(path, mapping, source_label).dataset;
}

inline void save_csv(const Dataset& d, std::ostream& out) {
    const auto& cols = canonical_columns();
    for (std::size_t i = 0; i < cols.size(); ++i)
        out << cols[i] << (i + 1 < cols.size() ? "," : "\n");
    for (const auto& p : d.pitches) {
        out << p.season << ',' << p.game_id << ',' << p.umpire_id << ','
            << p.pitcher_id << ',' << p.batter_id << ','
            << to_string(p.batter_hand) << ',' << to_string(p.pitch_type) << ','
            << detail::format_double(p.x) << ',' << detail::format_double(p.y) << ','
            << p.balls << ',' << p.strikes << ',' << to_string(p.outcome) << '\n';
    }
}

inline void save_csv(const Dataset& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    save_csv(d, out);
}

struct CountSpec {
    int balls = 0;
    int strikes = 0;
};

struct FilterSpec {
    std::optional<std::set<int>> seasons;
    std::optional<std::set<std::string>> umpire_ids;
    std::optional<std::set<PitchType>> pitch_types;
    std::optional<BatterHand> batter_hand;
    std::optional<CountSpec> count;
    bool called_only = false;
};

inline bool matches(const Pitch& p, const FilterSpec& s) {
    if (s.seasons && !s.seasons->count(p.season)) return false;
    if (s.umpire_ids && !s.umpire_ids->count(p.umpire_id)) return false;
    if (s.pitch_types && !s.pitch_types->count(p.pitch_type)) return false;
    if (s.batter_hand && p.batter_hand != *s.batter_hand) return false;
    if (s.count && (p.balls != s.count->balls || p.strikes != s.count->strikes)) return false;
    if (s.called_only && !p.is_called()) return false;
    return true;
}

inline Dataset filter(const Dataset& d, const FilterSpec& spec) {
    Dataset out;
    out.source_label = d.source_label;
    for (const auto& p : d.pitches)
        if (matches(p, spec)) out.pitches.push_back(p);
    return out;
}

struct DatasetSummary {
    std::size_t n_pitches = 0;
    std::size_t n_games = 0;
    std::size_t n_pitchers = 0;
    std::size_t n_batters = 0;
    std::map<int, std::size_t> per_season;
};

inline DatasetSummary summary(const Dataset& d) {
    DatasetSummary s;
    std::set<std::string> games, pitchers, batters;
    for (const auto& p : d.pitches) {
        games.insert(p.game_id);
        pitchers.insert(p.pitcher_id);
        batters.insert(p.batter_id);
        ++s.per_season[p.season];
    }
    s.n_pitches = d.pitches.size();
    s.n_games = games.size();
    s.n_pitchers = pitchers.size();
    s.n_batters = batters.size();
    return s;
}

} // namespace zonefit

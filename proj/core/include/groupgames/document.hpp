#pragma once

#include "groupgames/equilibrium.hpp"
#include "groupgames/foelner.hpp"
#include "groupgames/game.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gg {

/**
 * Game documents are JSON with exact rationals written as "p/q" strings.
 * Players are 1-based in documents (neighborhoods, order lists, gap
 * queries); element indices of finite groups are 0-based.
 */
struct GameDocument {
    GameSpec game;
    std::optional<Profile> profile;
};

GameDocument parse_game_document(const std::string& text);
Profile parse_profile_document(const std::string& text, const GameSpec& game);

std::string emit_game_document(const GameSpec& game,
                               const std::optional<Profile>& profile = std::nullopt);
std::string emit_profile_document(const Profile& profile, const GroupPtr& group);

/// Mixed-strategy mini-language: "dirac x", "finite {x:w, ...}",
/// "two-ended t", "interval-mean", "uniform", "mix w m1 m2".
Measure parse_measure_text(const std::string& text, const GroupPtr& group);
std::string measure_to_text(const Measure& measure, const GroupPtr& group);

/// "identity", "affine <sign> <shift>", "perm <image of 0> <image of 1> ...".
Bijection parse_bijection_text(const std::string& text, const GroupPtr& group);
std::string bijection_to_text(const Bijection& eta);

struct ReportOptions {
    bool flip_order = false;  // read order lists outermost-first instead
    bool normalize = false;   // add the affine [0,1]-rescaling annex
};

struct RenderedReport {
    std::string text;  // deterministic JSON document, trailing newline
    int exit_code = 0;
};

RenderedReport render_solve_report(const GameSpec& game, const ReportOptions& options = {});
RenderedReport render_verify_report(const GameSpec& game, const Profile& profile,
                                    const OrderWeights& nu, const ReportOptions& options = {});
RenderedReport render_payoff_report(const GameSpec& game, const Profile& profile,
                                    const ReportOptions& options = {});
RenderedReport render_gap_report(const GameSpec& game, const Profile& profile, int player,
                                 const ReportOptions& options = {});
RenderedReport render_fubini_report(const GameSpec& game, const Profile& profile,
                                    const ReportOptions& options = {});

/// Order weights from a CLI override: "uniform" or an inline JSON array of
/// {"order": [...], "weight": "p/q"} records (players 1-based).
OrderWeights parse_nu_text(const std::string& text, int players);

struct SweepRequest {
    enum class Kind { Density, Defect, Banach };
    Kind kind = Kind::Density;
    GroupPtr group;
    std::optional<PayoffFn> set;   // density, banach
    std::optional<Element> shift;  // defect
    std::vector<WindowSpec> windows;
    std::int64_t translate_range = -1;  // banach; -1 means the 10n default
};

SweepRequest parse_sweep_document(const std::string& text);

struct SweepOutput {
    std::string csv;      // n,window_size,value_num,value_den,value_decimal
    std::string summary;  // human-oriented convergence note (stderr)
};

SweepOutput run_sweep(const SweepRequest& request);

}  // namespace gg

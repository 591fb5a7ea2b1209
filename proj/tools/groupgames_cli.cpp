// Batch front end: parse game/profile documents, run solve / verify /
// payoff / gap / fubini / sweep / demo, and emit deterministic reports.
// Exit codes: 0 success (or certified), 1 verification not certified,
// 2 input error.

#include "groupgames/demos.hpp"
#include "groupgames/document.hpp"
#include "groupgames/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw gg::DocumentError(path, "cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

gg::Profile profile_for(const gg::GameDocument& doc, const std::string& profile_path) {
    if (!profile_path.empty())
        return gg::parse_profile_document(read_file(profile_path), doc.game);
    if (doc.profile) return *doc.profile;
    throw gg::DocumentError("profile", "no profile given and none embedded in the game document");
}

int emit(const gg::RenderedReport& report) {
    std::cout << report.text;
    return report.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact finitely additive equilibria for group games"};
    app.require_subcommand(1);

    std::string game_path, profile_path, nu_text, demo_name, sweep_path;
    int player = 0;
    bool flip_order = false, normalize = false, emit_doc = false, list_demos = false;

    auto add_common = [&](CLI::App* cmd, bool with_normalize = true) {
        cmd->add_flag("--flip-order", flip_order,
                      "read integration orders outermost-first instead");
        if (with_normalize)
            cmd->add_flag("--normalize", normalize, "append the affine [0,1] payoff rescaling");
    };

    auto* solve = app.add_subcommand("solve", "construct and certify the invariant-mean profile");
    solve->add_option("game", game_path, "game document")->required();
    add_common(solve);

    auto* verify = app.add_subcommand("verify", "check a profile for best-response gaps");
    verify->add_option("game", game_path, "game document")->required();
    verify->add_option("profile", profile_path, "profile document (defaults to the embedded one)");
    verify->add_option("--nu", nu_text, "override order weights: 'uniform' or a JSON array");
    add_common(verify);

    auto* payoff = app.add_subcommand("payoff", "order-weighted payoffs of a profile");
    payoff->add_option("game", game_path, "game document")->required();
    payoff->add_option("profile", profile_path, "profile document (defaults to the embedded one)");
    add_common(payoff);

    auto* gap = app.add_subcommand("gap", "best-response gap of one player");
    gap->add_option("game", game_path, "game document")->required();
    gap->add_option("player", player, "player id (1-based)")->required();
    gap->add_option("profile", profile_path, "profile document (defaults to the embedded one)");
    add_common(gap, false);

    auto* fubini = app.add_subcommand("fubini", "order-of-integration probe for two-player games");
    fubini->add_option("game", game_path, "game document")->required();
    fubini->add_option("profile", profile_path, "profile document (defaults to the embedded one)");
    add_common(fubini, false);

    auto* sweep = app.add_subcommand("sweep", "density / defect / Banach-density series as CSV");
    sweep->add_option("document", sweep_path, "sweep document")->required();

    auto* demo = app.add_subcommand("demo", "run a builtin example");
    demo->add_option("name", demo_name, "demo name");
    demo->add_flag("--emit", emit_doc, "print the demo's game document instead of running it");
    demo->add_flag("--list", list_demos, "list demo names");
    add_common(demo, false);

    CLI11_PARSE(app, argc, argv);

    gg::ReportOptions options{flip_order, normalize};
    try {
        if (solve->parsed()) {
            auto doc = gg::parse_game_document(read_file(game_path));
            return emit(gg::render_solve_report(doc.game, options));
        }
        if (verify->parsed()) {
            auto doc = gg::parse_game_document(read_file(game_path));
            gg::OrderWeights nu =
                nu_text.empty() ? doc.game.nu : gg::parse_nu_text(nu_text, doc.game.players);
            return emit(gg::render_verify_report(doc.game, profile_for(doc, profile_path), nu, options));
        }
        if (payoff->parsed()) {
            auto doc = gg::parse_game_document(read_file(game_path));
            return emit(gg::render_payoff_report(doc.game, profile_for(doc, profile_path), options));
        }
        if (gap->parsed()) {
            auto doc = gg::parse_game_document(read_file(game_path));
            if (player < 1 || player > doc.game.players)
                throw gg::DocumentError("player", "player id out of range");
            return emit(
                gg::render_gap_report(doc.game, profile_for(doc, profile_path), player - 1, options));
        }
        if (fubini->parsed()) {
            auto doc = gg::parse_game_document(read_file(game_path));
            return emit(gg::render_fubini_report(doc.game, profile_for(doc, profile_path), options));
        }
        if (sweep->parsed()) {
            auto request = gg::parse_sweep_document(read_file(sweep_path));
            auto output = gg::run_sweep(request);
            std::cout << output.csv;
            std::cerr << output.summary << "\n";
            return 0;
        }
        if (demo->parsed()) {
            if (list_demos) {
                for (const auto& name : gg::demo_names()) std::cout << name << "\n";
                return 0;
            }
            if (demo_name.empty())
                throw gg::DocumentError("demo", "give a demo name or --list");
            if (emit_doc) {
                std::cout << gg::demo_game_document(demo_name);
                return 0;
            }
            return emit(gg::run_demo(demo_name, options));
        }
    } catch (const gg::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

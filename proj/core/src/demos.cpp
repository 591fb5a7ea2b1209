#include "groupgames/demos.hpp"

#include "groupgames/equilibrium.hpp"
#include "groupgames/errors.hpp"
#include "groupgames/foelner.hpp"

#include <json.hpp>

#include <map>

namespace gg {

using nlohmann::json;

namespace {

const char* kMpFinite = R"({
  "group": {"tag": "table", "table": [[1, 0], [0, 1]], "names": ["A", "B"]},
  "players": 2,
  "phi": [
    {"tag": "table", "values": ["1", "-1"]},
    {"tag": "table", "values": ["-1", "1"]}
  ],
  "profile": ["uniform", "uniform"]
})";

const char* kRspFinite = R"({
  "group": {"tag": "table", "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]], "names": ["R", "P", "S"]},
  "players": 2,
  "phi": [
    {"tag": "table", "values": ["1/2", "0", "1"]},
    {"tag": "table", "values": ["1/2", "1", "0"]}
  ],
  "eta": ["perm 0 2 1", "identity"],
  "profile": ["uniform", "uniform"]
})";

const char* kMpZ = R"({
  "group": "Z",
  "players": 2,
  "phi": [
    {"tag": "ep-z", "period": 2, "right": ["1", "0"], "left": ["1", "0"], "core": {"0": "1"}},
    {"tag": "ep-z", "period": 2, "right": ["0", "1"], "left": ["0", "1"], "core": {"0": "0"}}
  ],
  "profile": ["two-ended 1/2", "two-ended 1/2"]
})";

const char* kWald = R"({
  "group": "Z",
  "players": 2,
  "phi": [
    {"tag": "ep-z", "period": 1, "right": ["1"], "left": ["0"], "core": {"0": "1/2"}},
    {"tag": "ep-z", "period": 1, "right": ["0"], "left": ["1"], "core": {"0": "1/2"}}
  ],
  "eta": ["identity", "affine -1 0"],
  "profile": ["two-ended 1", "two-ended 1"]
})";

const char* kRspQ1 = R"({
  "group": "Q1",
  "players": 2,
  "phi": [
    {
      "tag": "step-q1",
      "breakpoints": ["0", "1/3", "2/3", "1"],
      "pieces": [{"const": "0"}, {"const": "1/2"}, {"const": "1"}],
      "points": {"0": "1/2", "1/3": "1/2", "2/3": "1/2"}
    },
    {
      "tag": "step-q1",
      "breakpoints": ["0", "1/3", "2/3", "1"],
      "pieces": [{"const": "1"}, {"const": "1/2"}, {"const": "0"}],
      "points": {"0": "1/2", "1/3": "1/2", "2/3": "1/2"}
    }
  ],
  "eta": ["affine -1 0", "identity"],
  "profile": ["interval-mean", "interval-mean"]
})";

const char* kConesZ2 = R"({
  "group": "Z2",
  "players": 2,
  "phi": [
    {"tag": "cone-z2", "d1": [1, 0], "d2": [0, 1]},
    {"tag": "cone-z2", "d1": [1, 0], "d2": [0, 1]}
  ]
})";

const char* kLoveHate = R"({
  "group": "Q1",
  "players": 4,
  "phi": [
    {
      "tag": "step-q1",
      "breakpoints": ["0", "1/2", "1"],
      "pieces": [{"slope": "1", "intercept": "0"}, {"slope": "-1", "intercept": "1"}]
    },
    {
      "tag": "step-q1",
      "breakpoints": ["0", "1/2", "1"],
      "pieces": [{"slope": "-1", "intercept": "0"}, {"slope": "1", "intercept": "-1"}]
    },
    {
      "tag": "step-q1",
      "breakpoints": ["0", "1/2", "1"],
      "pieces": [{"slope": "1", "intercept": "0"}, {"slope": "-1", "intercept": "1"}]
    },
    {
      "tag": "step-q1",
      "breakpoints": ["0", "1/2", "1"],
      "pieces": [{"slope": "-1", "intercept": "0"}, {"slope": "1", "intercept": "-1"}]
    }
  ],
  "eta": ["affine -1 0", "identity", "affine -1 0", "identity"],
  "neighborhoods": [[1, 2], [2, 3], [3, 4], [1, 4]],
  "profile": ["interval-mean", "interval-mean", "interval-mean", "interval-mean"]
})";

const char* kFubiniRemark = R"({
  "group": "Z",
  "players": 2,
  "phi": [
    {"tag": "ep-z", "period": 1, "right": ["1"], "left": ["0"], "core": {"0": "1"}},
    {"tag": "ep-z", "period": 1, "right": ["1"], "left": ["0"], "core": {"0": "1"}}
  ],
  "profile": ["two-ended 0", "two-ended 1"]
})";

const std::map<std::string, const char*>& demo_table() {
    static const std::map<std::string, const char*> table = {
        {"mp-finite", kMpFinite}, {"rsp-finite", kRspFinite}, {"mp-z", kMpZ},
        {"wald", kWald},          {"rsp-q1", kRspQ1},         {"cones-z2", kConesZ2},
        {"love-hate", kLoveHate}, {"fubini-remark", kFubiniRemark},
    };
    return table;
}

json sweep_points_json(const std::vector<DensityPoint>& points) {
    json out = json::array();
    for (const DensityPoint& p : points) {
        json rec;
        rec["n"] = p.n;
        rec["window_size"] = p.window_size;
        rec["value"] = rat_to_string(p.value);
        rec["value_decimal"] = rat_to_double(p.value);
        out.push_back(std::move(rec));
    }
    return out;
}

json verify_json(const GameSpec& game, const Profile& profile, const ReportOptions& options) {
    return json::parse(render_verify_report(game, profile, game.nu, options).text);
}

}  // namespace

std::vector<std::string> demo_names() {
    std::vector<std::string> names;
    for (const auto& [name, text] : demo_table()) {
        (void)text;
        names.push_back(name);
    }
    return names;
}

std::string demo_game_document(const std::string& name) {
    auto it = demo_table().find(name);
    if (it == demo_table().end())
        throw DocumentError("demo", "unknown demo '" + name + "'; try one of: " + [] {
            std::string all;
            for (const auto& n : demo_names()) all += all.empty() ? n : ", " + n;
            return all;
        }());
    // normalize through the parser so emitted documents are canonical
    GameDocument doc = parse_game_document(it->second);
    return emit_game_document(doc.game, doc.profile);
}

RenderedReport run_demo(const std::string& name, const ReportOptions& options) {
    GameDocument doc = parse_game_document(demo_game_document(name));
    const GameSpec& game = doc.game;
    json out;
    out["demo"] = name;

    if (name == "cones-z2") {
        PredicateZ2 cone = game.phi[0].predicate_z2();
        std::vector<WindowSpec> windows;
        for (std::int64_t n : {10, 25, 50, 100, 150, 200, 300, 400})
            windows.push_back(WindowSpec::z2_cone(n, cone));
        DensitySweep density = density_sweep(game.phi[0], game.group, windows);
        DensitySweep defect = defect_sweep(game.group, windows, Element::lattice(1, 1));
        out["cone_density"] = sweep_points_json(density.points);
        out["shift_defect_g_1_1"] = sweep_points_json(defect.points);
        Window w = build_window(game.group, WindowSpec::z2_cone(20, cone));
        Profile empirical{{w.empirical(), w.empirical()}};
        json payoffs = json::array();
        for (int i = 0; i < game.players; ++i)
            payoffs.push_back(rat_to_string(payoff_nu(game, empirical, game.nu, i)));
        out["empirical_window_payoffs_n20"] = std::move(payoffs);
        return {out.dump(2) + "\n", 0};
    }

    if (name == "fubini-remark") {
        out["fubini"] = json::parse(render_fubini_report(game, *doc.profile, options).text);
        return {out.dump(2) + "\n", 0};
    }

    out["solve"] = json::parse(render_solve_report(game, options).text);
    Profile constructed = construct_equilibrium(game);
    out["verify"] = verify_json(game, constructed, options);

    if (name == "wald") {
        Profile variant{{Measure::two_ended(Rat(1)), Measure::two_ended(Rat(0))}};
        json alt;
        alt["label"] = "player 2 mass toward -infinity";
        json measures = json::array();
        for (const Measure& m : variant.measures) measures.push_back(measure_to_text(m, game.group));
        alt["profile"] = std::move(measures);
        alt["verify"] = verify_json(game, variant, options);
        out["alternative"] = std::move(alt);
    }

    if (name == "mp-z") {
        Profile mod2{{Measure::finite_support({{Element::integer(0), Rat(1, 2)},
                                               {Element::integer(1), Rat(1, 2)}}),
                      Measure::finite_support({{Element::integer(0), Rat(1, 2)},
                                               {Element::integer(1), Rat(1, 2)}})}};
        json section;
        section["profile"] = json::array({measure_to_text(mod2.measures[0], game.group),
                                          measure_to_text(mod2.measures[1], game.group)});
        section["verify"] = verify_json(game, mod2, options);
        out["mod2_uniform"] = std::move(section);

        json grid = json::array();
        const Rat thetas[] = {Rat(0), Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1)};
        for (const Rat& t1 : thetas) {
            for (const Rat& t2 : thetas) {
                Profile p{{Measure::two_ended(t1), Measure::two_ended(t2)}};
                GapReport r = verify_equilibrium(game, p, game.nu, EvalOptions{options.flip_order});
                json rec;
                rec["theta"] = json::array({rat_to_string(t1), rat_to_string(t2)});
                rec["u1"] = rat_to_string(r.entries[0].profile_payoff);
                rec["certified"] = r.certified;
                grid.push_back(std::move(rec));
            }
        }
        out["two_ended_grid"] = std::move(grid);
    }

    if (name == "rsp-q1") {
        json samples = json::array();
        for (const char* x : {"0", "1/7", "1/3", "81/97", "2/3"}) {
            Element e = game.group->parse_element(x);
            Rat v = deviation_value(game, *doc.profile, 0, Measure::dirac(e), game.nu,
                                    EvalOptions{options.flip_order});
            json rec;
            rec["x"] = x;
            rec["value"] = rat_to_string(v);
            samples.push_back(std::move(rec));
        }
        out["pure_deviation_samples"] = std::move(samples);
    }

    return {out.dump(2) + "\n", 0};
}

}  // namespace gg

#include "groupgames/document.hpp"

#include "engine_detail.hpp"
#include "groupgames/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace gg {

using nlohmann::json;

namespace {

int line_of_offset(const std::string& text, std::size_t offset) {
    int line = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw DocumentError("", e.what(), line_of_offset(text, e.byte));
    }
}

const json& field(const json& j, const std::string& key, const std::string& where) {
    if (!j.is_object()) throw DocumentError(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw DocumentError(where, "missing field '" + key + "'");
    return *it;
}

Rat get_rat(const json& j, const std::string& where) {
    try {
        if (j.is_string()) return parse_rat(j.get<std::string>());
        if (j.is_number_integer()) return Rat(Int(j.get<std::int64_t>()));
        if (j.is_number_unsigned()) return Rat(Int(j.get<std::uint64_t>()));
    } catch (const Error& e) {
        throw DocumentError(where, e.what());
    }
    throw DocumentError(where, "expected an exact rational (\"p/q\" string or integer)");
}

Int get_int(const json& j, const std::string& where) {
    try {
        if (j.is_string()) return parse_int(j.get<std::string>());
        if (j.is_number_integer()) return Int(j.get<std::int64_t>());
        if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
    } catch (const Error& e) {
        throw DocumentError(where, e.what());
    }
    throw DocumentError(where, "expected an integer");
}

std::int64_t get_i64(const json& j, const std::string& where) {
    Int v = get_int(j, where);
    if (v > Int(std::int64_t(1) << 40) || v < Int(-(std::int64_t(1) << 40)))
        throw DocumentError(where, "integer out of the supported range");
    return v.convert_to<std::int64_t>();
}

std::string trimmed(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    std::size_t e = s.find_last_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

// ---------------------------------------------------------------- groups

GroupPtr parse_group_spec(const json& j, const std::string& where);

GroupPtr parse_group_tag(const std::string& raw, const std::string& where) {
    std::string text = trimmed(raw);
    if (text == "Z") return Group::integers();
    if (text == "Z2") return Group::lattice_z2();
    if (text == "Q1") return Group::rational_circle();
    auto ws = words(text);
    if (ws.size() == 2 && ws[0] == "zc") {
        Int m = get_int(json(ws[1]), where);
        if (m < 1 || m > Int(1 << 20)) throw DocumentError(where, "cyclic modulus out of range");
        return Group::cyclic(m.convert_to<std::uint32_t>());
    }
    throw DocumentError(where, "unknown group tag '" + text + "'");
}

GroupPtr parse_group_spec(const json& j, const std::string& where) {
    if (j.is_string()) return parse_group_tag(j.get<std::string>(), where);
    if (!j.is_object()) throw DocumentError(where, "group must be a tag string or an object");
    std::string tag = field(j, "tag", where).get<std::string>();
    try {
        if (tag == "table") {
            const json& tj = field(j, "table", where);
            std::vector<std::vector<std::uint32_t>> table;
            for (const auto& row : tj) {
                std::vector<std::uint32_t> r;
                for (const auto& cell : row)
                    r.push_back(get_int(cell, where + ".table").convert_to<std::uint32_t>());
                table.push_back(std::move(r));
            }
            std::vector<std::string> names;
            if (j.contains("names"))
                for (const auto& n : j["names"]) names.push_back(n.get<std::string>());
            std::optional<bool> abelian;
            if (j.contains("abelian")) abelian = j["abelian"].get<bool>();
            std::optional<bool> fc;
            if (j.contains("fc")) fc = j["fc"].get<bool>();
            std::optional<std::uint32_t> identity;
            if (j.contains("identity"))
                identity = get_int(j["identity"], where + ".identity").convert_to<std::uint32_t>();
            std::optional<std::vector<std::uint32_t>> inverse;
            if (j.contains("inverse")) {
                std::vector<std::uint32_t> inv;
                for (const auto& cell : j["inverse"])
                    inv.push_back(get_int(cell, where + ".inverse").convert_to<std::uint32_t>());
                inverse = std::move(inv);
            }
            return Group::table(std::move(table), std::move(names), abelian, fc, identity, inverse);
        }
        if (tag == "product") {
            const json& fj = field(j, "factors", where);
            std::vector<GroupPtr> factors;
            int k = 0;
            for (const auto& f : fj)
                factors.push_back(parse_group_spec(f, where + ".factors[" + std::to_string(k++) + "]"));
            return Group::product(std::move(factors));
        }
    } catch (const DocumentError&) {
        throw;
    } catch (const Error& e) {
        throw DocumentError(where, e.what());
    }
    throw DocumentError(where, "unknown group tag '" + tag + "'");
}

json emit_group_spec(const GroupPtr& g) {
    switch (g->kind()) {
        case GroupKind::IntegersZ:
            return "Z";
        case GroupKind::LatticeZ2:
            return "Z2";
        case GroupKind::RationalCircleQ1:
            return "Q1";
        case GroupKind::FiniteCyclic:
            return "zc " + std::to_string(g->modulus());
        case GroupKind::FiniteTable: {
            json out;
            out["tag"] = "table";
            out["table"] = g->cayley();
            if (!g->names().empty()) out["names"] = g->names();
            out["abelian"] = g->is_abelian();
            out["fc"] = g->is_fc();
            return out;
        }
        case GroupKind::DirectProduct: {
            json out;
            out["tag"] = "product";
            json factors = json::array();
            for (const auto& f : g->factors()) factors.push_back(emit_group_spec(f));
            out["factors"] = std::move(factors);
            return out;
        }
    }
    throw Error("unreachable");
}

// --------------------------------------------------------------- payoffs

PredicateZ2 parse_predicate_z2(const json& j, const std::string& where);

PayoffFn parse_fn_spec(const json& j, const GroupPtr& group, const std::string& where) {
    if (!j.is_object()) throw DocumentError(where, "payoff spec must be an object");
    std::string tag = field(j, "tag", where).get<std::string>();
    try {
        if (tag == "ep-z") {
            std::int64_t period = get_i64(field(j, "period", where), where + ".period");
            auto read_values = [&](const char* key) {
                std::vector<Rat> out;
                int i = 0;
                for (const auto& v : field(j, key, where))
                    out.push_back(get_rat(v, where + "." + key + "[" + std::to_string(i++) + "]"));
                return out;
            };
            std::vector<Rat> right = read_values("right");
            std::vector<Rat> left = read_values("left");
            const json& cj = field(j, "core", where);
            if (!cj.is_object()) throw DocumentError(where + ".core", "expected an object");
            std::int64_t radius = 0;
            std::vector<std::pair<std::int64_t, Rat>> entries;
            for (const auto& [key, value] : cj.items()) {
                std::int64_t x = get_i64(json(key), where + ".core");
                radius = std::max(radius, x < 0 ? -x : x);
                entries.emplace_back(x, get_rat(value, where + ".core[" + key + "]"));
            }
            if (entries.empty()) throw DocumentError(where + ".core", "core must tabulate at least x=0");
            std::vector<Rat> core(static_cast<std::size_t>(2 * radius + 1));
            std::vector<bool> seen(core.size(), false);
            for (auto& [x, v] : entries) {
                seen[static_cast<std::size_t>(x + radius)] = true;
                core[static_cast<std::size_t>(x + radius)] = std::move(v);
            }
            if (std::find(seen.begin(), seen.end(), false) != seen.end())
                throw DocumentError(where + ".core", "core must cover every x with |x| <= max |key|");
            return PayoffFn(EventuallyPeriodicZ(period, std::move(right), std::move(left), radius,
                                                std::move(core)));
        }
        if (tag == "step-q1") {
            std::vector<Rat> bps;
            int i = 0;
            for (const auto& v : field(j, "breakpoints", where))
                bps.push_back(get_rat(v, where + ".breakpoints[" + std::to_string(i++) + "]"));
            std::vector<StepQ1::LinearPiece> pieces;
            i = 0;
            for (const auto& p : field(j, "pieces", where)) {
                std::string pw = where + ".pieces[" + std::to_string(i++) + "]";
                if (!p.is_object()) throw DocumentError(pw, "piece must be an object");
                if (p.contains("const")) {
                    pieces.push_back({Rat(0), get_rat(p["const"], pw + ".const")});
                } else {
                    pieces.push_back({get_rat(field(p, "slope", pw), pw + ".slope"),
                                      get_rat(field(p, "intercept", pw), pw + ".intercept")});
                }
            }
            std::map<Rat, Rat> points;
            if (j.contains("points")) {
                for (const auto& [key, value] : j["points"].items())
                    points[parse_rat(key)] = get_rat(value, where + ".points[" + key + "]");
            }
            return PayoffFn(StepQ1(std::move(bps), std::move(pieces), std::move(points)));
        }
        if (tag == "table") {
            std::vector<Rat> values;
            int i = 0;
            for (const auto& v : field(j, "values", where))
                values.push_back(get_rat(v, where + ".values[" + std::to_string(i++) + "]"));
            return PayoffFn(FiniteTableFn(group, std::move(values)));
        }
        return PayoffFn(parse_predicate_z2(j, where));
    } catch (const DocumentError&) {
        throw;
    } catch (const Error& e) {
        throw DocumentError(where, e.what());
    }
}

PredicateZ2 parse_predicate_z2(const json& j, const std::string& where) {
    std::string tag = field(j, "tag", where).get<std::string>();
    if (tag == "cone-z2") {
        const json& d1 = field(j, "d1", where);
        const json& d2 = field(j, "d2", where);
        if (!d1.is_array() || d1.size() != 2 || !d2.is_array() || d2.size() != 2)
            throw DocumentError(where, "cone directions must be [x, y] pairs");
        return PredicateZ2::cone(get_int(d1[0], where + ".d1"), get_int(d1[1], where + ".d1"),
                                 get_int(d2[0], where + ".d2"), get_int(d2[1], where + ".d2"));
    }
    if (tag == "periodic-z2") {
        const json& pj = field(j, "periods", where);
        if (!pj.is_array() || pj.size() != 2)
            throw DocumentError(where + ".periods", "expected [m1, m2]");
        std::vector<std::vector<int>> table;
        for (const auto& row : field(j, "table", where)) {
            std::vector<int> r;
            for (const auto& cell : row)
                r.push_back(get_int(cell, where + ".table").convert_to<int>());
            table.push_back(std::move(r));
        }
        return PredicateZ2::periodic(get_i64(pj[0], where + ".periods"),
                                     get_i64(pj[1], where + ".periods"), std::move(table));
    }
    if (tag == "finite-set-z2") {
        std::vector<Element::Pair> points;
        for (const auto& p : field(j, "points", where)) {
            if (!p.is_array() || p.size() != 2)
                throw DocumentError(where + ".points", "expected [x, y] pairs");
            points.emplace_back(get_int(p[0], where + ".points"), get_int(p[1], where + ".points"));
        }
        return PredicateZ2::finite_set(std::move(points));
    }
    if (tag == "z2-expr") {
        std::string op = field(j, "op", where).get<std::string>();
        std::vector<PredicateZ2> args;
        int i = 0;
        for (const auto& a : field(j, "args", where))
            args.push_back(parse_predicate_z2(a, where + ".args[" + std::to_string(i++) + "]"));
        if (op == "and") return PredicateZ2::predicate_and(std::move(args));
        if (op == "or") return PredicateZ2::predicate_or(std::move(args));
        if (op == "not") {
            if (args.size() != 1) throw DocumentError(where, "'not' takes exactly one argument");
            return PredicateZ2::predicate_not(std::move(args[0]));
        }
        throw DocumentError(where, "unknown boolean op '" + op + "'");
    }
    throw DocumentError(where, "unknown payoff tag '" + tag + "'");
}

json emit_predicate_z2(const PredicateZ2& p) {
    json out;
    switch (p.node_kind()) {
        case PredicateZ2::NodeKind::Cone:
            out["tag"] = "cone-z2";
            out["d1"] = {int_to_string(p.cone_dirs()[0]), int_to_string(p.cone_dirs()[1])};
            out["d2"] = {int_to_string(p.cone_dirs()[2]), int_to_string(p.cone_dirs()[3])};
            return out;
        case PredicateZ2::NodeKind::Periodic:
            out["tag"] = "periodic-z2";
            out["periods"] = {p.periods().first, p.periods().second};
            out["table"] = p.periodic_table();
            return out;
        case PredicateZ2::NodeKind::FiniteSet: {
            out["tag"] = "finite-set-z2";
            json pts = json::array();
            for (const auto& [x, y] : p.points())
                pts.push_back({int_to_string(x), int_to_string(y)});
            out["points"] = std::move(pts);
            return out;
        }
        case PredicateZ2::NodeKind::And:
        case PredicateZ2::NodeKind::Or:
        case PredicateZ2::NodeKind::Not: {
            out["tag"] = "z2-expr";
            out["op"] = p.node_kind() == PredicateZ2::NodeKind::And
                            ? "and"
                            : (p.node_kind() == PredicateZ2::NodeKind::Or ? "or" : "not");
            json args = json::array();
            for (const auto& c : p.children()) args.push_back(emit_predicate_z2(c));
            out["args"] = std::move(args);
            return out;
        }
    }
    throw Error("unreachable");
}

json emit_fn_spec(const PayoffFn& fn) {
    json out;
    switch (fn.kind()) {
        case PayoffFn::Kind::EventuallyPeriodicZ: {
            const auto& f = fn.ep_z();
            out["tag"] = "ep-z";
            out["period"] = f.period();
            json right = json::array(), left = json::array();
            for (const Rat& v : f.right_values()) right.push_back(rat_to_string(v));
            for (const Rat& v : f.left_values()) left.push_back(rat_to_string(v));
            out["right"] = std::move(right);
            out["left"] = std::move(left);
            json core = json::object();
            for (std::int64_t x = -f.core_radius(); x <= f.core_radius(); ++x)
                core[std::to_string(x)] =
                    rat_to_string(f.core_values()[static_cast<std::size_t>(x + f.core_radius())]);
            out["core"] = std::move(core);
            return out;
        }
        case PayoffFn::Kind::StepQ1: {
            const auto& f = fn.step_q1();
            out["tag"] = "step-q1";
            json bps = json::array();
            for (const Rat& b : f.breakpoints()) bps.push_back(rat_to_string(b));
            out["breakpoints"] = std::move(bps);
            json pieces = json::array();
            for (const auto& p : f.pieces()) {
                if (p.slope == 0) {
                    pieces.push_back({{"const", rat_to_string(p.intercept)}});
                } else {
                    pieces.push_back(
                        {{"slope", rat_to_string(p.slope)}, {"intercept", rat_to_string(p.intercept)}});
                }
            }
            out["pieces"] = std::move(pieces);
            if (!f.point_values().empty()) {
                json pts = json::object();
                for (const auto& [x, v] : f.point_values()) pts[rat_to_string(x)] = rat_to_string(v);
                out["points"] = std::move(pts);
            }
            return out;
        }
        case PayoffFn::Kind::FiniteTable: {
            out["tag"] = "table";
            json values = json::array();
            for (const Rat& v : fn.finite_table().values()) values.push_back(rat_to_string(v));
            out["values"] = std::move(values);
            return out;
        }
        case PayoffFn::Kind::PredicateZ2:
            return emit_predicate_z2(fn.predicate_z2());
    }
    throw Error("unreachable");
}

// -------------------------------------------------------------- measures

/// Splits measure text into tokens; parenthesized element literals stay whole.
std::vector<std::string> measure_tokens(const std::string& text) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            ++i;
            continue;
        }
        if (c == '{' || c == '}' || c == ':' || c == ',') {
            tokens.emplace_back(1, c);
            ++i;
            continue;
        }
        if (c == '(') {
            int depth = 0;
            std::size_t start = i;
            for (; i < text.size(); ++i) {
                if (text[i] == '(') ++depth;
                if (text[i] == ')' && --depth == 0) {
                    ++i;
                    break;
                }
            }
            if (depth != 0) throw ValidationError("unbalanced parentheses in measure text");
            tokens.push_back(text.substr(start, i - start));
            continue;
        }
        std::size_t start = i;
        while (i < text.size() && std::string(" \t\n\r{}:,(").find(text[i]) == std::string::npos) ++i;
        tokens.push_back(text.substr(start, i - start));
    }
    return tokens;
}

struct MeasureParser {
    const std::vector<std::string>& tokens;
    std::size_t pos = 0;
    const GroupPtr& group;

    const std::string& next(const char* what) {
        if (pos >= tokens.size())
            throw ValidationError(std::string("measure text ended while reading ") + what);
        return tokens[pos++];
    }

    void expect(const char* token) {
        if (next(token) != token)
            throw ValidationError(std::string("expected '") + token + "' in measure text");
    }

    Measure parse() {
        const std::string& head = next("a measure tag");
        if (head == "dirac") return Measure::dirac(group->parse_element(next("an element")));
        if (head == "two-ended") return Measure::two_ended(parse_rat(next("theta")));
        if (head == "interval-mean") return Measure::interval_mean();
        if (head == "uniform") return Measure::uniform_finite();
        if (head == "finite") {
            expect("{");
            std::vector<Measure::Atom> atoms;
            while (true) {
                Element e = group->parse_element(next("an element"));
                expect(":");
                Rat w = parse_rat(next("a weight"));
                atoms.push_back({std::move(e), std::move(w)});
                const std::string& sep = next("',' or '}'");
                if (sep == "}") break;
                if (sep != ",") throw ValidationError("expected ',' or '}' in finite measure");
            }
            return Measure::finite_support(std::move(atoms));
        }
        if (head == "mix") {
            Rat w = parse_rat(next("a mixture weight"));
            Measure a = parse();
            Measure b = parse();
            return Measure::mixture(w, std::move(a), std::move(b));
        }
        throw ValidationError("unknown measure tag '" + head + "'");
    }
};

}  // namespace

Measure parse_measure_text(const std::string& text, const GroupPtr& group) {
    auto tokens = measure_tokens(text);
    MeasureParser parser{tokens, 0, group};
    Measure m = parser.parse();
    if (parser.pos != tokens.size()) throw ValidationError("trailing tokens in measure text");
    m.validate(*group);
    return m;
}

std::string measure_to_text(const Measure& measure, const GroupPtr& group) {
    switch (measure.kind()) {
        case Measure::Kind::FiniteSupport: {
            const auto& atoms = measure.atoms();
            if (atoms.size() == 1) return "dirac " + group->format_element(atoms[0].point);
            std::string out = "finite {";
            for (std::size_t i = 0; i < atoms.size(); ++i) {
                if (i) out += ", ";
                out += group->format_element(atoms[i].point) + ":" + rat_to_string(atoms[i].weight);
            }
            out += "}";
            return out;
        }
        case Measure::Kind::TwoEndedMeanZ:
            return "two-ended " + rat_to_string(measure.theta());
        case Measure::Kind::IntervalMeanQ1:
            return "interval-mean";
        case Measure::Kind::UniformFinite:
            return "uniform";
        case Measure::Kind::Mixture:
            return "mix " + rat_to_string(measure.mix_weight()) + " " +
                   measure_to_text(measure.mix_first(), group) + " " +
                   measure_to_text(measure.mix_second(), group);
    }
    throw Error("unreachable");
}

Bijection parse_bijection_text(const std::string& text, const GroupPtr& group) {
    auto ws = words(trimmed(text));
    if (ws.empty()) throw ValidationError("empty bijection text");
    if (ws[0] == "identity") {
        if (ws.size() != 1) throw ValidationError("'identity' takes no arguments");
        return Bijection::identity();
    }
    if (ws[0] == "affine") {
        if (ws.size() != 3) throw ValidationError("'affine' needs a sign and a shift");
        Int sign = parse_int(ws[1]);
        if (sign != 1 && sign != -1) throw ValidationError("affine sign must be +1 or -1");
        if (group->kind() == GroupKind::IntegersZ)
            return Bijection::affine_z(sign.convert_to<int>(), parse_int(ws[2]));
        if (group->kind() == GroupKind::RationalCircleQ1)
            return Bijection::affine_q1(sign.convert_to<int>(), parse_rat(ws[2]));
        throw VariantMismatch("affine bijections need the group Z or Q1");
    }
    if (ws[0] == "perm") {
        std::vector<std::uint32_t> perm;
        for (std::size_t i = 1; i < ws.size(); ++i)
            perm.push_back(parse_int(ws[i]).convert_to<std::uint32_t>());
        Bijection b = Bijection::permutation(std::move(perm));
        if (!b.compatible_with(*group))
            throw VariantMismatch("permutation length does not match the group order");
        return b;
    }
    throw ValidationError("unknown bijection tag '" + ws[0] + "'");
}

std::string bijection_to_text(const Bijection& eta) {
    switch (eta.kind()) {
        case Bijection::Kind::Identity:
            return "identity";
        case Bijection::Kind::AffineZ:
            return "affine " + std::to_string(eta.sign()) + " " + int_to_string(eta.shift_z());
        case Bijection::Kind::AffineQ1:
            return "affine " + std::to_string(eta.sign()) + " " + rat_to_string(eta.shift_q1());
        case Bijection::Kind::FinitePermutation: {
            std::string out = "perm";
            for (std::uint32_t v : eta.perm()) out += " " + std::to_string(v);
            return out;
        }
    }
    throw Error("unreachable");
}

namespace {

OrderWeights parse_nu_json(const json& j, int players, const std::string& where) {
    if (j.is_string()) {
        if (j.get<std::string>() == "uniform") return OrderWeights::uniform(players);
        throw DocumentError(where, "unknown order-weight preset '" + j.get<std::string>() + "'");
    }
    if (!j.is_array()) throw DocumentError(where, "nu must be \"uniform\" or an array of records");
    std::vector<std::pair<OrderWeights::Order, Rat>> atoms;
    int i = 0;
    for (const auto& rec : j) {
        std::string rw = where + "[" + std::to_string(i++) + "]";
        OrderWeights::Order order;
        for (const auto& p : field(rec, "order", rw)) {
            std::int64_t v = get_i64(p, rw + ".order");
            if (v < 1 || v > players) throw DocumentError(rw + ".order", "player id out of range");
            order.push_back(static_cast<int>(v - 1));
        }
        atoms.emplace_back(std::move(order), get_rat(field(rec, "weight", rw), rw + ".weight"));
    }
    try {
        return OrderWeights::weighted(players, std::move(atoms));
    } catch (const Error& e) {
        throw DocumentError(where, e.what());
    }
}

json emit_nu(const OrderWeights& nu) {
    if (nu.is_uniform()) return "uniform";
    json out = json::array();
    for (const auto& [order, weight] : nu.atoms()) {
        json rec;
        json ord = json::array();
        for (int p : order) ord.push_back(p + 1);
        rec["order"] = std::move(ord);
        rec["weight"] = rat_to_string(weight);
        out.push_back(std::move(rec));
    }
    return out;
}

Profile parse_profile_json(const json& j, const GameSpec& game, const std::string& where) {
    const json* list = &j;
    if (j.is_object()) list = &field(j, "measures", where);
    if (!list->is_array())
        throw DocumentError(where, "profile must be an array of measure strings");
    if (list->size() != static_cast<std::size_t>(game.players))
        throw DocumentError(where, "profile needs exactly one measure per player");
    Profile profile;
    int i = 0;
    for (const auto& m : *list) {
        std::string mw = where + "[" + std::to_string(i++) + "]";
        if (!m.is_string()) throw DocumentError(mw, "measures are written as strings");
        try {
            profile.measures.push_back(parse_measure_text(m.get<std::string>(), game.group));
        } catch (const Error& e) {
            throw DocumentError(mw, e.what());
        }
    }
    return profile;
}

}  // namespace

OrderWeights parse_nu_text(const std::string& text, int players) {
    std::string t = trimmed(text);
    if (t == "uniform") return OrderWeights::uniform(players);
    return parse_nu_json(parse_json(t), players, "nu");
}

GameDocument parse_game_document(const std::string& text) {
    json j = parse_json(text);
    if (!j.is_object()) throw DocumentError("", "game document must be a JSON object");
    GameDocument doc;
    GameSpec& game = doc.game;
    game.group = parse_group_spec(field(j, "group", "group"), "group");
    std::int64_t players = get_i64(field(j, "players", "players"), "players");
    if (players < 2 || players > 16) throw DocumentError("players", "players must be in [2, 16]");
    game.players = static_cast<int>(players);

    const json& phis = field(j, "phi", "phi");
    if (!phis.is_array() || phis.size() != static_cast<std::size_t>(game.players))
        throw DocumentError("phi", "need exactly one payoff spec per player");
    for (std::size_t i = 0; i < phis.size(); ++i)
        game.phi.push_back(parse_fn_spec(phis[i], game.group, "phi[" + std::to_string(i) + "]"));

    if (j.contains("eta")) {
        const json& etas = j["eta"];
        if (!etas.is_array() || etas.size() != static_cast<std::size_t>(game.players))
            throw DocumentError("eta", "need exactly one bijection per player");
        for (std::size_t i = 0; i < etas.size(); ++i) {
            std::string ew = "eta[" + std::to_string(i) + "]";
            if (!etas[i].is_string()) throw DocumentError(ew, "bijections are written as strings");
            try {
                game.eta.push_back(parse_bijection_text(etas[i].get<std::string>(), game.group));
            } catch (const Error& e) {
                throw DocumentError(ew, e.what());
            }
        }
    } else {
        game.eta.assign(static_cast<std::size_t>(game.players), Bijection::identity());
    }

    if (j.contains("neighborhoods")) {
        const json& hoods = j["neighborhoods"];
        if (!hoods.is_array() || hoods.size() != static_cast<std::size_t>(game.players))
            throw DocumentError("neighborhoods", "need exactly one neighborhood per player");
        for (std::size_t i = 0; i < hoods.size(); ++i) {
            std::string hw = "neighborhoods[" + std::to_string(i) + "]";
            std::vector<int> hood;
            for (const auto& p : hoods[i]) {
                std::int64_t v = get_i64(p, hw);
                if (v < 1 || v > players) throw DocumentError(hw, "player id out of range");
                hood.push_back(static_cast<int>(v - 1));
            }
            std::sort(hood.begin(), hood.end());
            game.neighborhoods.push_back(std::move(hood));
        }
    } else {
        std::vector<int> all;
        for (int i = 0; i < game.players; ++i) all.push_back(i);
        game.neighborhoods.assign(static_cast<std::size_t>(game.players), all);
    }

    game.nu = j.contains("nu") ? parse_nu_json(j["nu"], game.players, "nu")
                               : OrderWeights::uniform(game.players);

    try {
        game.validate();
    } catch (const Error& e) {
        throw DocumentError("", e.what());
    }

    if (j.contains("profile")) {
        doc.profile = parse_profile_json(j["profile"], game, "profile");
        try {
            doc.profile->validate(game);
        } catch (const Error& e) {
            throw DocumentError("profile", e.what());
        }
    }
    return doc;
}

Profile parse_profile_document(const std::string& text, const GameSpec& game) {
    json j = parse_json(text);
    Profile profile = parse_profile_json(j, game, "profile");
    try {
        profile.validate(game);
    } catch (const Error& e) {
        throw DocumentError("profile", e.what());
    }
    return profile;
}

std::string emit_game_document(const GameSpec& game, const std::optional<Profile>& profile) {
    json out;
    out["group"] = emit_group_spec(game.group);
    out["players"] = game.players;
    json phis = json::array();
    for (const auto& fn : game.phi) phis.push_back(emit_fn_spec(fn));
    out["phi"] = std::move(phis);
    json etas = json::array();
    for (const auto& eta : game.eta) etas.push_back(bijection_to_text(eta));
    out["eta"] = std::move(etas);
    json hoods = json::array();
    for (const auto& hood : game.neighborhoods) {
        json h = json::array();
        for (int p : hood) h.push_back(p + 1);
        hoods.push_back(std::move(h));
    }
    out["neighborhoods"] = std::move(hoods);
    out["nu"] = emit_nu(game.nu);
    if (profile) {
        json measures = json::array();
        for (const auto& m : profile->measures) measures.push_back(measure_to_text(m, game.group));
        out["profile"] = std::move(measures);
    }
    return out.dump(2) + "\n";
}

std::string emit_profile_document(const Profile& profile, const GroupPtr& group) {
    json measures = json::array();
    for (const auto& m : profile.measures) measures.push_back(measure_to_text(m, group));
    json out;
    out["measures"] = std::move(measures);
    return out.dump(2) + "\n";
}

// ---------------------------------------------------------------- reports

namespace {

json rat_json(const Rat& v) { return rat_to_string(v); }

EvalOptions eval_options(const ReportOptions& options) {
    return EvalOptions{options.flip_order};
}

const char* convention_name(const ReportOptions& options) {
    return options.flip_order ? "innermost-last" : "innermost-first";
}

json order_json(const std::vector<int>& order) {
    json out = json::array();
    for (int p : order) out.push_back(p + 1);
    return out;
}

json gap_entry_json(const GapEntry& entry, const GroupPtr& group, int player) {
    json out;
    out["player"] = player + 1;
    out["payoff"] = rat_json(entry.profile_payoff);
    out["payoff_decimal"] = rat_to_double(entry.profile_payoff);
    out["best_deviation"] = measure_to_text(entry.best_deviation, group);
    out["deviation_payoff"] = rat_json(entry.deviation_payoff);
    out["gap"] = rat_json(entry.gap);
    out["gap_decimal"] = rat_to_double(entry.gap);
    out["sup_attained"] = entry.sup_attained;
    json terms = json::array();
    for (const auto& term : entry.terms) {
        json t;
        t["order"] = order_json(term.order);
        t["weight"] = rat_json(term.weight);
        t["value"] = rat_json(term.value);
        terms.push_back(std::move(t));
    }
    out["terms"] = std::move(terms);
    return out;
}

Rat payoff_sup_value(const PayoffFn& fn) { return fn.sup().value; }

Rat payoff_inf_value(const PayoffFn& fn) {
    PayoffFn negated = detail::payoff_affine({{Rat(-1), &fn}}, Rat(0));
    return -negated.sup().value;
}

/// Affine [0,1]-rescaling annex: the payoff range per player and the profile
/// payoffs mapped through (v - inf) / (sup - inf).
json normalization_json(const GameSpec& game, const std::vector<Rat>& payoffs) {
    json out = json::array();
    for (int i = 0; i < game.players; ++i) {
        const PayoffFn& fn = game.phi[static_cast<std::size_t>(i)];
        json rec;
        rec["player"] = i + 1;
        if (fn.kind() == PayoffFn::Kind::PredicateZ2) {
            rec["phi_min"] = "0";
            rec["phi_max"] = "1";
            rec["normalized_payoff"] = rat_json(payoffs[static_cast<std::size_t>(i)]);
            out.push_back(std::move(rec));
            continue;
        }
        Rat lo = payoff_inf_value(fn);
        Rat hi = payoff_sup_value(fn);
        rec["phi_min"] = rat_json(lo);
        rec["phi_max"] = rat_json(hi);
        if (hi == lo) {
            rec["normalized_payoff"] = "constant";
        } else {
            rec["normalized_payoff"] =
                rat_json((payoffs[static_cast<std::size_t>(i)] - lo) / (hi - lo));
        }
        out.push_back(std::move(rec));
    }
    return out;
}

bool z_structure_applicable(const GameSpec& game, const Profile& profile) {
    if (game.group->kind() != GroupKind::IntegersZ) return false;
    for (const Measure& m : profile.measures)
        if (m.kind() != Measure::Kind::TwoEndedMeanZ) return false;
    return true;
}

json z_structure_json(const ZStructureReport& report) {
    json out;
    out["pass"] = report.pass;
    json entries = json::array();
    for (std::size_t i = 0; i < report.entries.size(); ++i) {
        const auto& e = report.entries[i];
        json rec;
        rec["player"] = static_cast<int>(i) + 1;
        rec["theta_transformed"] = rat_json(e.theta);
        rec["tail_average_minus"] = rat_json(e.tail_average_minus);
        rec["tail_average_plus"] = rat_json(e.tail_average_plus);
        rec["required"] = e.required == ZStructureEntry::Requirement::ThetaOne
                              ? "theta=1"
                              : (e.required == ZStructureEntry::Requirement::ThetaZero ? "theta=0"
                                                                                      : "any theta");
        rec["pass"] = e.pass;
        entries.push_back(std::move(rec));
    }
    out["players"] = std::move(entries);
    return out;
}

std::string finish_report(json j) { return j.dump(2) + "\n"; }

}  // namespace

RenderedReport render_solve_report(const GameSpec& game, const ReportOptions& options) {
    game.validate();
    EvalOptions eval = eval_options(options);
    Profile profile = construct_equilibrium(game);
    json out;
    out["command"] = "solve";
    out["integration_convention"] = convention_name(options);
    out["group"] = emit_group_spec(game.group);
    out["players"] = game.players;
    json ranges = json::array();
    std::vector<Rat> payoffs;
    json payoff_list = json::array(), payoff_dec = json::array();
    for (int i = 0; i < game.players; ++i) {
        IRange range = i_range(game.phi[static_cast<std::size_t>(i)], *game.group);
        json rec;
        rec["player"] = i + 1;
        rec["lo"] = rat_json(range.lo);
        rec["hi"] = rat_json(range.hi);
        rec["argmax"] = range.argmax.describe();
        ranges.push_back(std::move(rec));
        Rat value = payoff_nu(game, profile, game.nu, i, eval);
        payoffs.push_back(value);
        payoff_list.push_back(rat_json(value));
        payoff_dec.push_back(rat_to_double(value));
    }
    out["i_range"] = std::move(ranges);
    json measures = json::array();
    for (const Measure& m : profile.measures) measures.push_back(measure_to_text(m, game.group));
    out["profile"] = std::move(measures);
    out["payoffs"] = std::move(payoff_list);
    out["payoffs_decimal"] = std::move(payoff_dec);
    GapReport report = verify_equilibrium(game, profile, game.nu, eval);
    json gaps = json::array();
    for (const auto& entry : report.entries) gaps.push_back(rat_json(entry.gap));
    out["gaps"] = std::move(gaps);
    out["certified"] = report.certified;
    if (options.normalize) out["normalization"] = normalization_json(game, payoffs);
    return {finish_report(std::move(out)), 0};
}

RenderedReport render_verify_report(const GameSpec& game, const Profile& profile,
                                    const OrderWeights& nu, const ReportOptions& options) {
    game.validate();
    profile.validate(game);
    EvalOptions eval = eval_options(options);
    GapReport report = verify_equilibrium(game, profile, nu, eval);
    json out;
    out["command"] = "verify";
    out["integration_convention"] = convention_name(options);
    out["certified"] = report.certified;
    json players = json::array();
    std::vector<Rat> payoffs;
    for (int i = 0; i < game.players; ++i) {
        players.push_back(gap_entry_json(report.entries[static_cast<std::size_t>(i)], game.group, i));
        payoffs.push_back(report.entries[static_cast<std::size_t>(i)].profile_payoff);
    }
    out["players"] = std::move(players);
    if (z_structure_applicable(game, profile))
        out["z_structure"] = z_structure_json(z_structure_check(game, profile));
    if (options.normalize) out["normalization"] = normalization_json(game, payoffs);
    return {finish_report(std::move(out)), report.certified ? 0 : 1};
}

RenderedReport render_payoff_report(const GameSpec& game, const Profile& profile,
                                    const ReportOptions& options) {
    game.validate();
    profile.validate(game);
    EvalOptions eval = eval_options(options);
    json out;
    out["command"] = "payoff";
    out["integration_convention"] = convention_name(options);
    std::vector<Rat> payoffs;
    json payoff_list = json::array(), payoff_dec = json::array();
    for (int i = 0; i < game.players; ++i) {
        Rat value = payoff_nu(game, profile, game.nu, i, eval);
        payoffs.push_back(value);
        payoff_list.push_back(rat_json(value));
        payoff_dec.push_back(rat_to_double(value));
    }
    out["payoffs"] = std::move(payoff_list);
    out["payoffs_decimal"] = std::move(payoff_dec);
    if (options.normalize) out["normalization"] = normalization_json(game, payoffs);
    return {finish_report(std::move(out)), 0};
}

RenderedReport render_gap_report(const GameSpec& game, const Profile& profile, int player,
                                 const ReportOptions& options) {
    game.validate();
    profile.validate(game);
    if (player < 0 || player >= game.players)
        throw ValidationError("player index out of range");
    EvalOptions eval = eval_options(options);
    GapEntry entry = best_response_gap(game, profile, player, game.nu, eval);
    json out;
    out["command"] = "gap";
    out["integration_convention"] = convention_name(options);
    out["result"] = gap_entry_json(entry, game.group, player);
    return {finish_report(std::move(out)), 0};
}

RenderedReport render_fubini_report(const GameSpec& game, const Profile& profile,
                                    const ReportOptions& options) {
    game.validate();
    profile.validate(game);
    if (game.players != 2) throw ValidationError("the order-of-integration probe needs two players");
    auto [mu_inner, lambda_inner] =
        fubini_gap(game.phi[0], profile.measures[0], profile.measures[1], game.group);
    if (options.flip_order) std::swap(mu_inner, lambda_inner);
    json out;
    out["command"] = "fubini";
    out["integration_convention"] = convention_name(options);
    out["mu_inner"] = rat_json(mu_inner);
    out["lambda_inner"] = rat_json(lambda_inner);
    out["mu_inner_decimal"] = rat_to_double(mu_inner);
    out["lambda_inner_decimal"] = rat_to_double(lambda_inner);
    out["order_independent"] = mu_inner == lambda_inner;
    return {finish_report(std::move(out)), 0};
}

// ----------------------------------------------------------------- sweeps

SweepRequest parse_sweep_document(const std::string& text) {
    json j = parse_json(text);
    if (!j.is_object()) throw DocumentError("", "sweep document must be a JSON object");
    SweepRequest req;
    std::string kind = field(j, "kind", "kind").get<std::string>();
    if (kind == "density") {
        req.kind = SweepRequest::Kind::Density;
    } else if (kind == "defect") {
        req.kind = SweepRequest::Kind::Defect;
    } else if (kind == "banach") {
        req.kind = SweepRequest::Kind::Banach;
    } else {
        throw DocumentError("kind", "unknown sweep kind '" + kind + "'");
    }

    if (req.kind == SweepRequest::Kind::Banach) {
        req.group = Group::integers();
    } else {
        req.group = parse_group_spec(field(j, "group", "group"), "group");
    }

    if (req.kind != SweepRequest::Kind::Defect) {
        req.set = parse_fn_spec(field(j, "set", "set"), req.group, "set");
        if (req.kind == SweepRequest::Kind::Banach &&
            req.set->kind() != PayoffFn::Kind::EventuallyPeriodicZ)
            throw DocumentError("set", "the Banach-density sweep takes eventually periodic sets on Z");
    } else {
        const json& gj = field(j, "g", "g");
        if (!gj.is_string()) throw DocumentError("g", "shift element is written as a string");
        try {
            req.shift = req.group->parse_element(gj.get<std::string>());
        } catch (const Error& e) {
            throw DocumentError("g", e.what());
        }
    }

    if (j.contains("translate_range"))
        req.translate_range = get_i64(j["translate_range"], "translate_range");

    const json& wj = field(j, "windows", "windows");
    std::string wkind = field(wj, "kind", "windows").get<std::string>();
    std::vector<std::int64_t> ns;
    if (wj.contains("ns"))
        for (const auto& n : wj["ns"]) ns.push_back(get_i64(n, "windows.ns"));
    try {
        if (wkind == "finite-whole") {
            req.windows.push_back(WindowSpec::finite_whole());
        } else {
            if (ns.empty()) throw DocumentError("windows.ns", "need at least one window size");
            for (std::int64_t n : ns) {
                if (wkind == "z-symmetric") {
                    req.windows.push_back(WindowSpec::z_symmetric(n));
                } else if (wkind == "z-right") {
                    req.windows.push_back(WindowSpec::z_right(n));
                } else if (wkind == "z-left") {
                    req.windows.push_back(WindowSpec::z_left(n));
                } else if (wkind == "q1-factorial") {
                    req.windows.push_back(WindowSpec::q1_factorial(n));
                } else if (wkind == "z2-cone") {
                    PayoffFn cone = parse_fn_spec(field(wj, "cone", "windows"), req.group, "windows.cone");
                    req.windows.push_back(WindowSpec::z2_cone(n, cone.predicate_z2()));
                } else {
                    throw DocumentError("windows.kind", "unknown window kind '" + wkind + "'");
                }
            }
        }
    } catch (const DocumentError&) {
        throw;
    } catch (const Error& e) {
        throw DocumentError("windows", e.what());
    }
    return req;
}

SweepOutput run_sweep(const SweepRequest& request) {
    std::vector<DensityPoint> points;
    Rat final_value = 0, tail_spread = 0;
    if (request.kind == SweepRequest::Kind::Banach) {
        for (const WindowSpec& w : request.windows) {
            Rat v = upper_banach_density(request.set->ep_z(), w.n, request.translate_range);
            points.push_back({w.n, static_cast<std::uint64_t>(2 * w.n + 1), v});
        }
        final_value = points.back().value;
        for (std::size_t i = points.size() / 2; i < points.size(); ++i) {
            Rat d = points[i].value - final_value;
            if (d < 0) d = -d;
            tail_spread = std::max(tail_spread, d);
        }
    } else {
        DensitySweep sweep = request.kind == SweepRequest::Kind::Density
                                 ? density_sweep(*request.set, request.group, request.windows)
                                 : defect_sweep(request.group, request.windows, *request.shift);
        points = std::move(sweep.points);
        final_value = sweep.final_value;
        tail_spread = sweep.tail_spread;
    }

    std::string csv = "n,window_size,value_num,value_den,value_decimal\n";
    for (const DensityPoint& p : points) {
        csv += std::to_string(p.n) + "," + std::to_string(p.window_size) + "," +
               int_to_string(numerator(p.value)) + "," + int_to_string(denominator(p.value)) + "," +
               rat_to_decimal_string(p.value, 9) + "\n";
    }
    std::string summary = "rows=" + std::to_string(points.size()) +
                          " final=" + rat_to_string(final_value) + " (" +
                          rat_to_decimal_string(final_value, 6) +
                          ") tail_spread=" + rat_to_string(tail_spread);
    return {std::move(csv), std::move(summary)};
}

}  // namespace gg

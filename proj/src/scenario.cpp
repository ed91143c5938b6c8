#include "pslbm/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace pslbm {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& ctx) {
    if (!j.is_object()) throw ConfigError("config: " + ctx + " must be an object");
    for (const auto& item : j.items()) {
        if (allowed.find(item.key()) == allowed.end()) {
            throw ConfigError("config: unknown key '" + item.key() + "' in " + ctx);
        }
    }
}

const json& require(const json& j, const std::string& key, const std::string& ctx) {
    auto it = j.find(key);
    if (it == j.end()) throw ConfigError("config: missing key '" + key + "' in " + ctx);
    return *it;
}

double require_number(const json& j, const std::string& key, const std::string& ctx) {
    const json& v = require(j, key, ctx);
    if (!v.is_number()) throw ConfigError("config: '" + key + "' in " + ctx + " must be a number");
    return v.get<double>();
}

int require_int(const json& j, const std::string& key, const std::string& ctx) {
    const json& v = require(j, key, ctx);
    if (!v.is_number_integer()) {
        throw ConfigError("config: '" + key + "' in " + ctx + " must be an integer");
    }
    return v.get<int>();
}

Vec2 parse_vec2(const json& v, const std::string& ctx) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw ConfigError("config: " + ctx + " must be a 2-element number array");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

LoadCurve parse_load(const json& j, const std::string& ctx) {
    const std::string type = require(j, "type", ctx).get<std::string>();
    if (type == "zero") {
        check_keys(j, {"type"}, ctx);
        return LoadCurve::zero();
    }
    if (type == "ramp_hold") {
        check_keys(j, {"type", "magnitude", "ramp_time"}, ctx);
        return LoadCurve::ramp_hold(require_number(j, "magnitude", ctx),
                                    require_number(j, "ramp_time", ctx));
    }
    if (type == "linear_ramp") {
        check_keys(j, {"type", "rate"}, ctx);
        return LoadCurve::linear_ramp(require_number(j, "rate", ctx));
    }
    throw ConfigError("config: unknown load type '" + type + "' in " + ctx);
}

json load_to_json(const LoadCurve& c) {
    switch (c.kind) {
        case LoadCurve::Kind::Zero: return {{"type", "zero"}};
        case LoadCurve::Kind::RampHold:
            return {{"type", "ramp_hold"}, {"magnitude", c.magnitude}, {"ramp_time", c.ramp_time}};
        case LoadCurve::Kind::LinearRamp: return {{"type", "linear_ramp"}, {"rate", c.rate}};
    }
    return {};
}

BcSpec parse_bc(const json& j, const std::string& ctx) {
    BcSpec bc;
    const std::string kind = require(j, "kind", ctx).get<std::string>();
    if (kind == "free") {
        check_keys(j, {"kind"}, ctx);
        bc.kind = BcSpec::Kind::Free;
    } else if (kind == "traction") {
        check_keys(j, {"kind", "direction", "load"}, ctx);
        bc.kind = BcSpec::Kind::Traction;
        bc.direction = parse_vec2(require(j, "direction", ctx), ctx + ".direction");
        bc.load = parse_load(require(j, "load", ctx), ctx + ".load");
    } else if (kind == "fixed") {
        check_keys(j, {"kind", "value"}, ctx);
        bc.kind = BcSpec::Kind::Fixed;
        bc.value = parse_vec2(require(j, "value", ctx), ctx + ".value");
    } else {
        throw ConfigError("config: unknown boundary kind '" + kind + "' in " + ctx);
    }
    return bc;
}

json bc_to_json(const BcSpec& bc) {
    switch (bc.kind) {
        case BcSpec::Kind::Free: return {{"kind", "free"}};
        case BcSpec::Kind::Traction:
            return {{"kind", "traction"},
                    {"direction", {bc.direction.x, bc.direction.y}},
                    {"load", load_to_json(bc.load)}};
        case BcSpec::Kind::Fixed:
            return {{"kind", "fixed"}, {"value", {bc.value.x, bc.value.y}}};
    }
    return {};
}

}  // namespace

FeatureRule BcSpec::to_rule() const {
    switch (kind) {
        case Kind::Free: return FeatureRule::traction_free();
        case Kind::Traction: return FeatureRule::traction_load(direction, load);
        case Kind::Fixed: return FeatureRule::fixed(value);
    }
    return {};
}

void Scenario::validate() const {
    try {
        geometry.validate();
        material();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (nodes_x < 3 || nodes_y < 3) throw ConfigError("config: lattice needs at least 3x3 nodes");
    const double dhx = geometry.width / (nodes_x - 1);
    const double dhy = geometry.height / (nodes_y - 1);
    if (std::abs(dhx - dhy) > 1e-12 * dhx) {
        throw ConfigError("config: node counts imply different spacings along x and y");
    }
    if (!(a0_dil >= 0.0) || !(a0_dil < 1.0)) {
        throw ConfigError("config: a0_dil must lie in [0, 1)");
    }
    if (sync_every < 0) throw ConfigError("config: sync_every must be >= 0");
    if (!(t_end > 0.0)) throw ConfigError("config: t_end must be positive");
    if (output.probe_stride < 1) throw ConfigError("config: probe_stride must be >= 1");
    if (output.snapshot_every < 0.0) throw ConfigError("config: snapshot_every must be >= 0");
    std::set<std::string> names;
    for (const Probe& p : probes) {
        if (p.name.empty()) throw ConfigError("config: probe names must be non-empty");
        if (!names.insert(p.name).second) {
            throw ConfigError("config: duplicate probe name '" + p.name + "'");
        }
    }
    if (holes_bc.kind != BcSpec::Kind::Free && geometry.holes.empty()) {
        throw ConfigError("config: hole boundary rule given without holes");
    }
}

Scenario parse_scenario(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: not valid JSON: ") + e.what());
    }
    check_keys(j, {"name", "geometry", "material", "lattice", "lbm", "time", "boundaries",
                   "probes", "output"},
               "document root");

    Scenario s;
    s.name = require(j, "name", "document root").get<std::string>();

    const json& g = require(j, "geometry", "root");
    check_keys(g, {"width", "height", "holes"}, "geometry");
    s.geometry.width = require_number(g, "width", "geometry");
    s.geometry.height = require_number(g, "height", "geometry");
    if (g.contains("holes")) {
        if (!g["holes"].is_array()) throw ConfigError("config: geometry.holes must be an array");
        for (const json& h : g["holes"]) {
            check_keys(h, {"center", "diameter"}, "geometry.holes[]");
            CircularHole hole;
            hole.center = parse_vec2(require(h, "center", "hole"), "hole.center");
            hole.diameter = require_number(h, "diameter", "hole");
            s.geometry.holes.push_back(hole);
        }
    }

    const json& m = require(j, "material", "root");
    check_keys(m, {"cs", "cs_over_cd", "mu"}, "material");
    s.cs = require_number(m, "cs", "material");
    s.cs_over_cd = require_number(m, "cs_over_cd", "material");
    s.mu = require_number(m, "mu", "material");

    const json& lat = require(j, "lattice", "root");
    check_keys(lat, {"nodes_x", "nodes_y"}, "lattice");
    s.nodes_x = require_int(lat, "nodes_x", "lattice");
    s.nodes_y = require_int(lat, "nodes_y", "lattice");

    const json& lbm = require(j, "lbm", "root");
    check_keys(lbm, {"a0_dil", "sync_every"}, "lbm");
    s.a0_dil = require_number(lbm, "a0_dil", "lbm");
    s.sync_every = require_int(lbm, "sync_every", "lbm");

    const json& t = require(j, "time", "root");
    check_keys(t, {"t_end"}, "time");
    s.t_end = require_number(t, "t_end", "time");

    const json& b = require(j, "boundaries", "root");
    check_keys(b, {"left", "right", "bottom", "top", "holes"}, "boundaries");
    s.left = parse_bc(require(b, "left", "boundaries"), "boundaries.left");
    s.right = parse_bc(require(b, "right", "boundaries"), "boundaries.right");
    s.bottom = parse_bc(require(b, "bottom", "boundaries"), "boundaries.bottom");
    s.top = parse_bc(require(b, "top", "boundaries"), "boundaries.top");
    if (b.contains("holes")) {
        s.holes_bc = parse_bc(b["holes"], "boundaries.holes");
    } else if (!s.geometry.holes.empty()) {
        throw ConfigError("config: geometry has holes but boundaries.holes is missing");
    }

    if (j.contains("probes")) {
        if (!j["probes"].is_array()) throw ConfigError("config: probes must be an array");
        for (const json& p : j["probes"]) {
            check_keys(p, {"name", "position"}, "probes[]");
            Probe probe;
            probe.name = require(p, "name", "probe").get<std::string>();
            probe.position = parse_vec2(require(p, "position", "probe"), "probe.position");
            s.probes.push_back(probe);
        }
    }

    if (j.contains("output")) {
        const json& o = j["output"];
        check_keys(o, {"probe_stride", "snapshot_every"}, "output");
        if (o.contains("probe_stride")) s.output.probe_stride = require_int(o, "probe_stride", "output");
        if (o.contains("snapshot_every")) {
            s.output.snapshot_every = require_number(o, "snapshot_every", "output");
        }
    }

    s.validate();
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string scenario_to_json(const Scenario& s, int indent) {
    json holes = json::array();
    for (const CircularHole& h : s.geometry.holes) {
        holes.push_back({{"center", {h.center.x, h.center.y}}, {"diameter", h.diameter}});
    }
    json j{
        {"name", s.name},
        {"geometry", {{"width", s.geometry.width}, {"height", s.geometry.height}, {"holes", holes}}},
        {"material", {{"cs", s.cs}, {"cs_over_cd", s.cs_over_cd}, {"mu", s.mu}}},
        {"lattice", {{"nodes_x", s.nodes_x}, {"nodes_y", s.nodes_y}}},
        {"lbm", {{"a0_dil", s.a0_dil}, {"sync_every", s.sync_every}}},
        {"time", {{"t_end", s.t_end}}},
        {"boundaries",
         {{"left", bc_to_json(s.left)},
          {"right", bc_to_json(s.right)},
          {"bottom", bc_to_json(s.bottom)},
          {"top", bc_to_json(s.top)},
          {"holes", bc_to_json(s.holes_bc)}}},
        {"output",
         {{"probe_stride", s.output.probe_stride}, {"snapshot_every", s.output.snapshot_every}}},
    };
    json probes = json::array();
    for (const Probe& p : s.probes) {
        probes.push_back({{"name", p.name}, {"position", {p.position.x, p.position.y}}});
    }
    j["probes"] = probes;
    return j.dump(indent);
}

namespace {

Scenario base_square() {
    Scenario s;
    s.geometry.width = 1.0;
    s.geometry.height = 1.0;
    s.cs = 1.0;
    s.cs_over_cd = 1.0 / std::sqrt(3.0);
    s.mu = 1.0;
    s.nodes_x = 101;
    s.nodes_y = 101;
    s.a0_dil = 0.9999;
    s.t_end = 2.0;
    s.probes.push_back({"P", {0.0, 1.0}});
    return s;
}

}  // namespace

std::vector<std::string> preset_names() { return {"tension", "shear", "hole"}; }

bool is_preset(const std::string& name) {
    for (const auto& n : preset_names()) {
        if (n == name) return true;
    }
    return false;
}

Scenario preset(const std::string& name) {
    // Loads are expressed in the normalized unit system of base_square():
    // stresses in mu, times in L/cs.
    if (name == "tension") {
        Scenario s = base_square();
        s.name = "tension";
        s.sync_every = 0;
        const LoadCurve pull = LoadCurve::ramp_hold(0.005, 1.0);
        s.top = {BcSpec::Kind::Traction, {0.0, 1.0}, pull, {}};
        s.bottom = {BcSpec::Kind::Traction, {0.0, -1.0}, pull, {}};
        return s;
    }
    if (name == "shear") {
        Scenario s = base_square();
        s.name = "shear";
        s.sync_every = 50;
        s.top = {BcSpec::Kind::Traction, {1.0, 0.0}, LoadCurve::linear_ramp(0.005), {}};
        s.bottom = {BcSpec::Kind::Fixed, {}, {}, {0.0, 0.0}};
        return s;
    }
    if (name == "hole") {
        Scenario s = preset("tension");
        s.name = "hole";
        s.sync_every = 50;
        s.geometry.holes.push_back({{0.5, 0.5}, 0.266});
        s.holes_bc = BcSpec{};  // traction free
        s.probes.push_back({"Q", {0.5 - 0.175, 0.5 + 0.025}});
        return s;
    }
    throw ConfigError("config: unknown preset '" + name + "'");
}

Scenario resolve_scenario(const std::string& arg) {
    if (is_preset(arg)) return preset(arg);
    return load_scenario_file(arg);
}

SimulationSetup build_setup(const Scenario& s) {
    s.validate();
    SimulationSetup setup{
        s.geometry, Lattice::build(s.geometry, s.dh()), {}, {}, s.material(), {}, {}, {}};
    setup.cells = build_boundary_cells(setup.lattice, s.geometry);

    setup.bcs.set_rule(feature::left, s.left.to_rule());
    setup.bcs.set_rule(feature::right, s.right.to_rule());
    setup.bcs.set_rule(feature::bottom, s.bottom.to_rule());
    setup.bcs.set_rule(feature::top, s.top.to_rule());
    for (std::size_t i = 0; i < s.geometry.holes.size(); ++i) {
        setup.bcs.set_rule(feature::hole(static_cast<int>(i)), s.holes_bc.to_rule());
    }
    setup.bcs.resolve(setup.lattice, setup.cells);

    const auto params = derive_lbm_params(setup.material, s.dh(), s.a0_dil);
    setup.dil = params.first;
    setup.rot = params.second;

    for (const Probe& p : s.probes) {
        setup.probe_nodes.push_back(setup.lattice.nearest_material_node(p.position));
    }
    return setup;
}

}  // namespace pslbm

#include "carleson/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace carleson {

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
    throw SpecParseError(origin + ": " + what);
}

Complex complex_from(const Json& j, const std::string& origin) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(origin, "expected a complex number as [re, im]");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

Json complex_to(Complex z) { return Json::array({z.real(), z.imag()}); }

Circle circle_from(const Json& j, const std::string& origin) {
    if (!j.is_object() || !j.contains("center") || !j.contains("radius"))
        fail(origin, "circle needs {\"center\":[x,y],\"radius\":r}");
    if (!j["radius"].is_number()) fail(origin, "circle radius must be a number");
    return Circle(complex_from(j["center"], origin), j["radius"].get<double>());
}

Json circle_to(const Circle& c) {
    return Json{{"center", complex_to(c.center)}, {"radius", c.radius}};
}

Json arc_to(const Arc& arc) {
    return Json{{"component", arc.component}, {"alpha", arc.alpha}, {"width", arc.width}};
}

Json square_to(const CarlesonSquare& sq) {
    return Json{{"component", sq.boundary_index}, {"depth", sq.depth}, {"anchor", sq.anchor}};
}

}  // namespace

Json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& err) {
        // err.byte is 1-based; recover line and column from the text
        std::size_t line = 1, col = 1;
        std::size_t limit = err.byte > 0 ? err.byte - 1 : 0;
        for (std::size_t i = 0; i < limit && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::ostringstream msg;
        msg << origin << ":" << line << ":" << col << ": " << err.what();
        throw SpecParseError(msg.str());
    }
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecParseError(path + ": cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_json_text(buffer.str(), path);
}

CircularDomain domain_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("outer")) fail("domain", "missing \"outer\" circle");
    std::vector<Circle> inner;
    if (j.contains("inner")) {
        if (!j["inner"].is_array()) fail("domain", "\"inner\" must be an array of circles");
        for (const Json& c : j["inner"]) inner.push_back(circle_from(c, "domain.inner"));
    }
    try {
        return CircularDomain(circle_from(j["outer"], "domain.outer"), std::move(inner));
    } catch (const InvalidDomain& err) {
        fail("domain", err.what());
    }
}

AtomicMeasure measure_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array())
        fail("measure", "expected {\"atoms\":[{\"z\":[x,y],\"w\":w},...]}");
    std::vector<std::pair<Complex, double>> atoms;
    for (const Json& a : j["atoms"]) {
        if (!a.is_object() || !a.contains("z") || !a.contains("w") || !a["w"].is_number())
            fail("measure", "atom needs {\"z\":[x,y],\"w\":w}");
        atoms.emplace_back(complex_from(a["z"], "measure.atom"), a["w"].get<double>());
    }
    try {
        return AtomicMeasure::from_atoms(atoms);
    } catch (const InvalidMeasure& err) {
        fail("measure", err.what());
    }
}

ConformalMap map_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind")) fail("map", "missing \"kind\"");
    const std::string kind = j["kind"].get<std::string>();
    try {
        if (kind == "mobius") {
            if (!j.contains("coeffs") || !j["coeffs"].is_array() || j["coeffs"].size() != 4)
                fail("map", "mobius needs \"coeffs\":[[a],[b],[c],[d]] as complex pairs");
            return ConformalMap::mobius(MobiusMap(complex_from(j["coeffs"][0], "map.coeffs"),
                                                  complex_from(j["coeffs"][1], "map.coeffs"),
                                                  complex_from(j["coeffs"][2], "map.coeffs"),
                                                  complex_from(j["coeffs"][3], "map.coeffs")));
        }
        if (kind == "quadpoly") {
            if (!j.contains("beta")) fail("map", "quadpoly needs \"beta\":[x,y]");
            return ConformalMap::quad(complex_from(j["beta"], "map.beta"));
        }
        if (kind == "compose") {
            if (!j.contains("maps") || !j["maps"].is_array() || j["maps"].empty())
                fail("map", "compose needs a nonempty \"maps\" array");
            std::vector<ConformalMap> maps;
            for (const Json& m : j["maps"]) maps.push_back(map_from_json(m));
            return ConformalMap::compose(std::move(maps));
        }
    } catch (const InvalidMap& err) {
        fail("map", err.what());
    }
    fail("map", "unknown kind \"" + kind + "\" (mobius | quadpoly | compose)");
}

PresentedDomain presented_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("base")) fail("presented", "missing \"base\" domain");
    ConformalMap chart =
        j.contains("chart") ? map_from_json(j["chart"]) : ConformalMap();
    try {
        return PresentedDomain(domain_from_json(j["base"]), std::move(chart));
    } catch (const InvalidMap& err) {
        fail("presented", err.what());
    }
}

OpenSetDomain openset_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("components") || !j["components"].is_array())
        fail("openset", "expected {\"components\":[...], \"weights\":[...]}");
    std::vector<PresentedDomain> components;
    for (const Json& c : j["components"]) components.push_back(presented_from_json(c));
    std::vector<double> weights;
    if (j.contains("weights")) {
        if (!j["weights"].is_array()) fail("openset", "\"weights\" must be an array");
        for (const Json& w : j["weights"]) {
            if (!w.is_number()) fail("openset", "weights must be numbers");
            weights.push_back(w.get<double>());
        }
    }
    try {
        return OpenSetDomain(std::move(components), std::move(weights));
    } catch (const Error& err) {
        fail("openset", err.what());
    }
}

Json domain_to_json(const CircularDomain& domain) {
    Json inner = Json::array();
    for (const Circle& c : domain.inner()) inner.push_back(circle_to(c));
    return Json{{"outer", circle_to(domain.outer())}, {"inner", inner}};
}

Json measure_to_json(const AtomicMeasure& mu) {
    Json atoms = Json::array();
    for (Eigen::Index i = 0; i < mu.size(); ++i)
        atoms.push_back(Json{{"z", complex_to(mu.point(i))}, {"w", mu.weight(i)}});
    return Json{{"atoms", atoms}};
}

Json map_to_json(const ConformalMap& map) {
    if (const auto* m = std::get_if<MobiusMap>(&map.node))
        return Json{{"kind", "mobius"},
                    {"coeffs", Json::array({complex_to(m->a()), complex_to(m->b()),
                                            complex_to(m->c()), complex_to(m->d())})}};
    if (const auto* p = std::get_if<QuadPoly>(&map.node))
        return Json{{"kind", "quadpoly"}, {"beta", complex_to(p->beta)}};
    Json maps = Json::array();
    for (const ConformalMap& m : std::get<Composition>(map.node).maps)
        maps.push_back(map_to_json(m));
    return Json{{"kind", "compose"}, {"maps", maps}};
}

Json box_report_to_json(const BoxReport& report) {
    Json per = Json::array();
    for (const ComponentRatio& c : report.per_component) {
        Json entry{{"component", c.component}, {"kappa", c.kappa}};
        entry["witness"] = c.witness ? square_to(*c.witness) : Json(nullptr);
        per.push_back(entry);
    }
    Json j{{"kappa", report.kappa}, {"per_component", per}};
    j["witness"] = report.witness ? square_to(*report.witness) : Json(nullptr);
    return j;
}

Json constant_estimate_to_json(const ConstantEstimate& estimate) {
    return Json{{"q", estimate.q},
                {"c_hat", estimate.c_hat},
                {"witness_index", estimate.witness_index},
                {"witness", estimate.witness_label},
                {"family_size", estimate.family_size},
                {"c_hat_stderr", estimate.c_hat_stderr}};
}

Json harmonic_estimate_to_json(const HarmonicEstimate& estimate) {
    Json arcs = Json::array();
    for (const ArcEstimate& a : estimate.arcs) {
        Json entry = arc_to(a.arc);
        entry["probability"] = a.probability;
        entry["stderr"] = a.std_error;
        arcs.push_back(entry);
    }
    return Json{{"evaluation_point", complex_to(estimate.evaluation_point)},
                {"walks", estimate.walks},
                {"capped_walks", estimate.capped_walks},
                {"unattributed", estimate.unattributed},
                {"arcs", arcs}};
}

Json trend_report_to_json(const TrendReport& trend) {
    return Json{{"values", trend.values},
                {"log2_slope", trend.log2_slope},
                {"classification",
                 trend.classification == TrendClass::Divergent ? "divergent" : "bounded"}};
}

Json component_report_to_json(const ComponentReport& report) {
    Json per = Json::array();
    for (const ComponentEntry& e : report.per_component)
        per.push_back(Json{{"component", e.component},
                           {"mass", e.mass},
                           {"kappa", e.kappa},
                           {"c_hat", e.c_hat},
                           {"c_hat_stderr", e.c_hat_stderr}});
    return Json{{"per_component", per},
                {"fitted_c", report.fitted_c},
                {"c_star", report.c_star},
                {"c_star_component", report.c_star_component}};
}

Json weighted_criterion_to_json(const WeightedCriterionReport& report) {
    return Json{{"components", component_report_to_json(report.components)},
                {"c_star", report.c_star},
                {"composite_c_hat", report.composite_c_hat},
                {"composite_sigma", report.composite_sigma},
                {"composite_within", report.composite_within},
                {"verdict", report.verdict}};
}

void write_file_atomic(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp);
        out << text;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw Error("cannot move " + tmp + " into place");
}

}  // namespace carleson

#include "mnat/instance_io.hpp"

#include <cstdio>
#include <fstream>
#include <limits>

namespace mnat {

namespace {

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw Error("malformed JSON in '" + path + "': " + e.what());
    }
    return doc;
}

Valuation build_family(const nlohmann::json& doc) {
    const std::string family = doc.at("family").get<std::string>();
    if (family == "separable") {
        SeparableConcaveSpec spec;
        spec.tables = doc.at("tables").get<std::vector<std::vector<double>>>();
        spec.budget = doc.at("K").get<int>();
        return separable_concave(spec);
    }
    if (family == "oxs") {
        BipartiteFlowSpec spec;
        spec.left_count = doc.at("left").get<std::size_t>();
        spec.right_count = doc.at("right").get<std::size_t>();
        for (const auto& e : doc.at("edges")) {
            spec.edges.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(),
                                  e.at(2).get<double>()});
        }
        if (doc.contains("caps")) {
            spec.source_caps = doc.at("caps").get<std::vector<int>>();
        } else {
            spec.source_caps.assign(spec.left_count, 1);
        }
        return oxs_maxflow(spec);
    }
    if (family == "matroid_distance") {
        return matroid_distance(matroid_from_json(doc.at("matroid")));
    }
    if (family == "table") {
        const auto box = doc.at("box").get<std::vector<int>>();
        std::vector<std::optional<double>> values;
        for (const auto& v : doc.at("values")) {
            if (v.is_null()) {
                values.push_back(std::nullopt);
            } else {
                values.push_back(v.get<double>());
            }
        }
        return dense_table(Point(box), std::move(values));
    }
    throw Error("unknown valuation family '" + family + "'");
}

} // namespace

Valuation valuation_from_json(const nlohmann::json& doc) {
    Valuation v = build_family(doc);
    if (doc.contains("rescale")) {
        const auto bounds = doc.at("rescale").get<std::vector<double>>();
        if (bounds.size() != 2 || !(bounds[0] < bounds[1])) {
            throw Error("rescale must be [lo, hi] with lo < hi");
        }
        v = rescaled(v, bounds[0], bounds[1]);
    }
    return v;
}

Matroid matroid_from_json(const nlohmann::json& doc) {
    const std::string type = doc.at("type").get<std::string>();
    if (type == "uniform") {
        return Matroid::uniform(doc.at("n").get<std::size_t>(), doc.at("r").get<std::size_t>());
    }
    if (type == "partition") {
        return Matroid::partition(doc.at("blocks").get<std::vector<std::vector<std::size_t>>>(),
                                  doc.at("caps").get<std::vector<std::size_t>>());
    }
    if (type == "explicit") {
        const auto bases = doc.at("bases").get<std::vector<std::vector<std::size_t>>>();
        std::size_t n = 0;
        if (doc.contains("n")) {
            n = doc.at("n").get<std::size_t>();
        } else {
            for (const auto& base : bases) {
                for (std::size_t e : base) n = std::max(n, e + 1);
            }
        }
        return Matroid::from_bases(n, bases);
    }
    throw Error("unknown matroid type '" + type + "'");
}

Valuation load_valuation(const std::string& path) { return valuation_from_json(read_json_file(path)); }

Matroid load_matroid(const std::string& path) { return matroid_from_json(read_json_file(path)); }

nlohmann::json point_to_json(const Point& p) { return nlohmann::json(p.coords()); }

nlohmann::json report_to_json(const ExchangeReport& report) {
    nlohmann::json doc;
    doc["pass"] = report.pass;
    doc["pairs_checked"] = report.pairs_checked;
    if (report.witness) {
        doc["witness"] = {{"x", point_to_json(report.witness->x)},
                          {"y", point_to_json(report.witness->y)},
                          {"i", report.witness->direction},
                          {"clause", report.witness->clause}};
    } else {
        doc["witness"] = nullptr;
    }
    return doc;
}

nlohmann::json trajectory_to_json(const Trajectory& traj) {
    nlohmann::json points = nlohmann::json::array();
    for (const Point& p : traj.points) points.push_back(point_to_json(p));
    nlohmann::json errors = nlohmann::json::array();
    for (const LocalError& e : traj.step_errors) {
        if (e.is_infinite()) {
            errors.push_back("inf");
        } else {
            errors.push_back(e.value());
        }
    }
    return {{"points", points}, {"directions", traj.directions}, {"step_errors", errors}};
}

nlohmann::json audit_to_json(const RobustnessAudit& audit) {
    nlohmann::json doc;
    doc["final_value"] = audit.final_value;
    doc["optimal_value"] = audit.optimal_value;
    doc["optimum"] = point_to_json(audit.optimum);
    doc["vacuous"] = audit.vacuous;
    if (audit.vacuous) {
        doc["error_sum"] = "inf";
        doc["slack"] = "inf";
    } else {
        doc["error_sum"] = audit.error_sum;
        doc["slack"] = audit.slack;
    }
    nlohmann::json slacks = nlohmann::json::array();
    for (double s : audit.step_slacks) {
        if (s == std::numeric_limits<double>::infinity()) {
            slacks.push_back("inf");
        } else {
            slacks.push_back(s);
        }
    }
    doc["step_slacks"] = slacks;
    doc["pass"] = audit.passed();
    return doc;
}

std::string format_point(const Point& p) {
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i > 0) out.push_back(';');
        out += std::to_string(p[i]);
    }
    return out;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace mnat

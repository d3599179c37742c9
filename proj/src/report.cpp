#include "acsgeo/report.hpp"

#include <fstream>

#include <json.hpp>

namespace acsgeo {

using nlohmann::json;

bool ScanReport::pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

namespace {

json check_to_json(const CheckRecord& c) {
    return json{{"name", c.name},
                {"max_residual", c.max_residual},
                {"tolerance", c.tolerance},
                {"pass", c.pass}};
}

json extremum_to_json(const ExtremumRecord& e) {
    return json{{"quantity", e.quantity},
                {"max", e.max},
                {"argmax", {{"point", e.argmax_point}, {"direction", e.argmax_direction}}},
                {"min", e.min},
                {"argmin", {{"point", e.argmin_point}, {"direction", e.argmin_direction}}}};
}

json full(const ScanReport& r, bool with_wall_time) {
    json env{{"seed", r.environment.seed},
             {"step", r.environment.step},
             {"samples", r.environment.samples}};
    if (with_wall_time) env["wall_time_s"] = r.environment.wall_time_s;
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back(check_to_json(c));
    json extrema = json::array();
    for (const auto& e : r.extrema) extrema.push_back(extremum_to_json(e));
    return json{{"suite", r.suite},
                {"field", r.field},
                {"environment", env},
                {"checks", checks},
                {"extrema", extrema}};
}

}  // namespace

std::string report_to_json(const ScanReport& r) { return full(r, true).dump(2); }

std::string report_payload_json(const ScanReport& r) { return full(r, false).dump(); }

ScanReport report_from_json(const std::string& text) {
    const json j = json::parse(text);
    ScanReport r;
    r.suite = j.at("suite").get<std::string>();
    r.field = j.at("field").get<std::string>();
    const auto& env = j.at("environment");
    r.environment.seed = env.at("seed").get<uint64_t>();
    r.environment.step = env.at("step").get<double>();
    r.environment.samples = env.at("samples").get<int>();
    r.environment.wall_time_s = env.at("wall_time_s").get<double>();
    for (const auto& c : j.at("checks")) {
        CheckRecord rec;
        rec.name = c.at("name").get<std::string>();
        rec.max_residual = c.at("max_residual").get<double>();
        rec.tolerance = c.at("tolerance").get<double>();
        rec.pass = c.at("pass").get<bool>();
        r.checks.push_back(rec);
    }
    for (const auto& e : j.at("extrema")) {
        ExtremumRecord rec;
        rec.quantity = e.at("quantity").get<std::string>();
        rec.max = e.at("max").get<double>();
        rec.min = e.at("min").get<double>();
        rec.argmax_point = e.at("argmax").at("point").get<RVector>();
        rec.argmax_direction = e.at("argmax").at("direction").get<RVector>();
        rec.argmin_point = e.at("argmin").at("point").get<RVector>();
        rec.argmin_direction = e.at("argmin").at("direction").get<RVector>();
        r.extrema.push_back(rec);
    }
    return r;
}

void emit_report(const ScanReport& r, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write report to " + path);
    out << report_to_json(r) << "\n";
}

}  // namespace acsgeo

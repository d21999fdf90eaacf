#include "pwtest/serialize.hpp"

#include <fstream>
#include <stdexcept>

namespace pwtest {

using nlohmann::json;

Target StoredInstance::target() const {
    if (piecewise) {
        return piecewise->as_target();
    }
    if (step) {
        return step->as_target();
    }
    return sine_probe(frequency, amplitude);
}

json to_json(const DistanceCertificate& c) {
    json j{{"instance_id", c.instance_id},
           {"k", c.k},
           {"distance", c.distance},
           {"method", std::string(to_string(c.method))}};
    if (c.grid_size) {
        j["grid_size"] = *c.grid_size;
    }
    return j;
}

DistanceCertificate certificate_from_json(const json& j) {
    DistanceCertificate c;
    c.instance_id = j.value("instance_id", std::string{});
    c.k = j.at("k").get<int>();
    c.distance = j.at("distance").get<double>();
    const auto method = parse_distance_method(j.at("method").get<std::string>());
    if (!method) {
        throw std::invalid_argument("unknown distance method");
    }
    c.method = *method;
    if (j.contains("grid_size")) {
        c.grid_size = j.at("grid_size").get<std::size_t>();
    }
    return c;
}

json to_json(const PiecewiseFunction& f, const BaseClass& h) {
    json pieces = json::array();
    for (const Member& m : f.pieces()) {
        pieces.push_back(m.params);
    }
    return {{"type", "piecewise"},
            {"base", h.name()},
            {"breakpoints", std::vector<double>(f.breakpoints().begin(), f.breakpoints().end())},
            {"pieces", std::move(pieces)}};
}

json to_json(const StepFunction& f, const std::optional<DistanceCertificate>& cert) {
    json j{{"type", "step"},
           {"breakpoints", std::vector<double>(f.breakpoints().begin(), f.breakpoints().end())},
           {"values", std::vector<double>(f.values().begin(), f.values().end())}};
    if (cert) {
        j["certificate"] = to_json(*cert);
    }
    return j;
}

json to_json(const Instance& inst) {
    if (inst.piecewise) {
        return to_json(*inst.piecewise, *parse_base_class(inst.spec.base));
    }
    if (inst.step) {
        return to_json(*inst.step, inst.certificate);
    }
    json j{{"type", "sine"}, {"frequency", inst.spec.frequency}, {"amplitude", inst.spec.amplitude}};
    if (inst.certificate) {
        j["certificate"] = to_json(*inst.certificate);
    }
    return j;
}

StoredInstance instance_from_json(const json& j) {
    try {
        StoredInstance out;
        out.type = j.at("type").get<std::string>();
        if (j.contains("certificate")) {
            out.certificate = certificate_from_json(j.at("certificate"));
        }
        if (out.type == "piecewise") {
            out.base = parse_base_class(j.at("base").get<std::string>());
            if (!out.base) {
                throw std::invalid_argument("unknown base class");
            }
            std::vector<Member> pieces;
            for (const json& p : j.at("pieces")) {
                pieces.push_back({out.base->kind(), p.get<std::vector<double>>()});
            }
            out.piecewise.emplace(j.at("breakpoints").get<std::vector<double>>(), std::move(pieces));
        } else if (out.type == "step") {
            out.step.emplace(j.at("breakpoints").get<std::vector<double>>(),
                             j.at("values").get<std::vector<double>>());
        } else if (out.type == "sine") {
            out.frequency = j.value("frequency", 10.0);
            out.amplitude = j.value("amplitude", 1.0);
        } else {
            throw std::invalid_argument("unknown instance type '" + out.type + "'");
        }
        return out;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed instance: ") + e.what());
    }
}

StoredInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open instance file " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("instance file is not JSON: ") + e.what());
    }
    return instance_from_json(j);
}

} // namespace pwtest

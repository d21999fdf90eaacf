#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "pwtest/base_class.hpp"
#include "pwtest/distance.hpp"
#include "pwtest/instances.hpp"
#include "pwtest/piecewise.hpp"

namespace pwtest {

/// Instance file contents. Three shapes, keyed by "type":
///   {"type": "piecewise", "base": "poly1", "breakpoints": [...], "pieces": [[a0, a1], ...]}
///   {"type": "step", "breakpoints": [...], "values": [...], "certificate": {...}}
///   {"type": "sine", "frequency": 10, "amplitude": 1, "certificate": {...}}
/// Piece descriptors are the Member parameter lists; "certificate" is
/// optional.
struct StoredInstance {
    std::string type;
    std::optional<BaseClass> base;
    std::optional<PiecewiseFunction> piecewise;
    std::optional<StepFunction> step;
    double frequency = 10.0;
    double amplitude = 1.0;
    std::optional<DistanceCertificate> certificate;

    Target target() const;
};

nlohmann::json to_json(const DistanceCertificate& c);
DistanceCertificate certificate_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PiecewiseFunction& f, const BaseClass& h);
nlohmann::json to_json(const StepFunction& f, const std::optional<DistanceCertificate>& cert = {});
nlohmann::json to_json(const Instance& inst);

/// Throws std::invalid_argument on malformed input.
StoredInstance instance_from_json(const nlohmann::json& j);
StoredInstance load_instance(const std::string& path);

} // namespace pwtest

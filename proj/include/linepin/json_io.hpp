#pragma once

// JSON (de)serialization for scenes, verdicts, and certificates, plus the
// solver-free recheck passes. Keys are emitted in a fixed order so output
// is byte-identical for identical inputs and seeds.

#include <optional>
#include <string>

#include <json.hpp>

#include "linepin/balls.hpp"
#include "linepin/engine.hpp"
#include "linepin/pattern.hpp"
#include "linepin/screens.hpp"

namespace linepin::io {

using json = nlohmann::ordered_json;

json to_json(const Vector2d& v);
json to_json(const VectorXd& v);
json to_json(const LineChart& g);
json to_json(const OpenArc& a);
json to_json(const HalfplanePattern& P);
json to_json(const PatternVerdict& v);
json to_json(const Screen& s);
json to_json(const ScreenFamily& F);
json to_json(const FeasibilityVerdict& v);
json to_json(const Ball& b);
json to_json(const BallConfig& C);
json to_json(const ValidationReport& r);
json to_json(const PinCertificate& c);
json to_json(const DemoReport& r);

HalfplanePattern pattern_from_json(const json& j);
ScreenFamily screens_from_json(const json& j);
BallConfig balls_from_json(const json& j);
LineChart chart_from_json(const json& j);
PatternVerdict pattern_verdict_from_json(const json& j);
FeasibilityVerdict feasibility_from_json(const json& j);
PinCertificate certificate_from_json(const json& j);

// A scene file carries one of the payload documents plus optional metadata.
struct Scene {
    std::optional<HalfplanePattern> pattern;
    std::optional<ScreenFamily> screens;
    std::optional<BallConfig> balls;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
};

Scene scene_from_json(const json& j);
json load_file(const std::string& path);
void write_file(const std::string& path, const json& j);

// Certificate rechecks: use only the certificate and the scene. Returns an
// explanation on failure.
struct Recheck {
    bool ok = false;
    std::string detail;
};

Recheck recheck_pattern_verdict(const HalfplanePattern& P, const PatternVerdict& v);
Recheck recheck_feasibility(const ScreenFamily& F, const FeasibilityVerdict& v);
Recheck recheck_pin_certificate(const BallConfig& C, const PinCertificate& c);

} // namespace linepin::io

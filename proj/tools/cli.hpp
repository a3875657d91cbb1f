#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "isingdrift/geometry.hpp"

namespace isingdrift::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode { kOk = 0, kFailure = 1, kUsage = 2 };

struct ExperimentConfig {
    std::string command;  // drift | theory | corners | simulate

    std::string shape = "circle";  // circle | ellipse | polygon | square
    double radius = 1.0, cx = 0.0, cy = 0.0;
    double a = 2.0, b = 1.0;
    double side = 1.0;
    std::string vertices;  // "x1,y1;x2,y2;..."
    double offset = 0.0;   // shifts polygon/square vertices by (offset, offset)

    std::optional<double> t;      // probe centre as curve parameter
    std::optional<double> theta;  // ... or as tangent angle (smooth curves)
    double r = 0.0;
    double delta = 0.0;
    int M = 32;

    std::string init = "deterministic";  // deterministic | spohn
    bool allow_nonmonotone = false;

    std::vector<long> N;
    long samples = 1;
    std::uint64_t seed = 1;

    std::optional<double> tau_max;
    int snapshots = 20;
    long replicas = 1;
    bool keep_configs = false;

    std::string out;  // csv | json; empty picks the command's default

    // Not echoed: they do not influence the rows.
    std::string output;
    unsigned threads = 0;
};

nlohmann::ordered_json to_json(const ExperimentConfig& c);
// Accepts either a bare config object or a full output document (reads meta.config).
ExperimentConfig from_json(const nlohmann::ordered_json& j);

Curve make_curve(const ExperimentConfig& c);
double probe_parameter(const ExperimentConfig& c, const Curve& curve);

// Fixed 12-significant-digit rendering used for every floating-point output.
std::string format_number(double x);

// Entry point shared by the executable and the tests; args exclude argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isingdrift::cli

#pragma once

#include <cstdint>
#include <string>

namespace crooked {

/// Exit codes shared by all subcommands: 0 success, 1 parse/usage error,
/// 2 mathematical failure, 3 point not located.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 1;
inline constexpr int kExitMath = 2;
inline constexpr int kExitNotLocated = 3;

struct TileOptions {
    std::string config_path;
    double plane = 1.0;
    int depth = 1;
    double xmin = -10.0, xmax = 10.0, ymin = -10.0, ymax = 10.0;
    std::string out_path;
    double tol = 1e-9;
};

struct VerifyOptions {
    std::string config_path;
    int samples = 1000;
    std::uint64_t seed = 42;
    double tol = 1e-9;
    std::string json_out;            // empty: stdout
    std::string separation_csv;      // optional CSV of the separation chain
};

int cmd_validate(const std::string& config_path, const std::string& json_out, double tol);
int cmd_tile(const TileOptions& opt);
int cmd_locate(const std::string& config_path, double x, double y, double z, int max_steps,
               const std::string& json_out, double tol);
int cmd_verify(const VerifyOptions& opt);

/// Default tolerance resolution: CROOKED_TOL when set, else 1e-9.  Throws on
/// an unparsable value.
double tolerance_from_env();

}  // namespace crooked

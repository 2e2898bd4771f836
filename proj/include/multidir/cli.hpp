#ifndef MULTIDIR_CLI_HPP
#define MULTIDIR_CLI_HPP

#include <cstdint>
#include <string>

#include "multidir/serialize.hpp"

namespace multidir {

struct ExperimentConfig {
    std::string subcommand;
    Json function_spec;  // catalog label or coefficient-list spec
    Json body_spec;
    std::string body_file;
    std::string cloud_file;
    Vec apex;
    Vec point;
    double r = 0.0;
    double eps = 0.2;
    double tol = 1e-6;
    int grid = 10;
    std::uint64_t seed = 0;
    TSchedule schedule;
    std::string out_dir = ".";

    static ExperimentConfig from_json(const Json& j);
    Json to_json() const;
    bool operator==(const ExperimentConfig&) const = default;
};

// the four standard verification bodies per dimension
std::vector<ConvexBody> standard_bodies(int dim);
std::vector<std::string> standard_body_names();

struct RunOutcome {
    int exit_code = 0;        // 0 pass, 1 verification failure, 2 usage error
    Json report;
    std::string failing;      // named failing inequality, if any
};

// dispatches one subcommand, writing report.json and CSV traces to out_dir
RunOutcome run_command(const ExperimentConfig& cfg);

// catalog x bodies x {bp, rolle, lagrange, dual} over R^2 and R^3
RunOutcome suite_command(const std::string& out_dir, std::uint64_t seed, double tol, int grid);

// full argv entry point used by the binary and by tests
int cli_main(int argc, const char* const* argv);

}  // namespace multidir

#endif  // MULTIDIR_CLI_HPP

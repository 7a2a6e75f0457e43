#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slln/slln.h"

int main(int argc, char** argv) {
    CLI::App app{"Experiments on random sequences under sub-linear expectations"};
    app.get_formatter()->column_width(26);

    std::string subcommand;
    std::string config_path;
    std::string out_dir;
    uint64_t seed = 0;
    bool list_fixtures = false;

    app.add_option("subcommand", subcommand,
                   "one of: expect, capacity, choquet, blocking, inequalities, "
                   "mean-bounds, cluster, divergence, theorem1");
    app.add_option("--config", config_path, "path to a JSON experiment config");
    CLI::Option* seed_opt =
        app.add_option("--seed", seed, "override the config's seed");
    app.add_option("--out", out_dir, "override the config's output directory");
    app.add_flag("--list-fixtures", list_fixtures,
                 "print the built-in fixture names and exit");

    CLI11_PARSE(app, argc, argv);

    if (list_fixtures) {
        char buf[4096];
        const int rc = slln_list_fixtures(buf, sizeof buf);
        if (rc != SLLN_OK) {
            std::fprintf(stderr, "error: %s\n", slln_last_error());
            return rc;
        }
        std::printf("%s\n", buf);
        return 0;
    }

    if (subcommand.empty() || config_path.empty()) {
        std::fprintf(stderr,
                     "usage: slln <subcommand> --config <path> [--seed N] "
                     "[--out dir] [--list-fixtures]\n");
        return SLLN_PARSE_ERROR;
    }

    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
        std::fprintf(stderr, "error: cannot read config file %s\n",
                     config_path.c_str());
        return SLLN_IO_ERROR;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string config = buffer.str();

    std::vector<char> summary(1 << 16, '\0');
    const uint64_t* seed_ptr = seed_opt->count() > 0 ? &seed : nullptr;
    const int rc = slln_run_experiment(
        config.c_str(), subcommand.c_str(), seed_ptr,
        out_dir.empty() ? nullptr : out_dir.c_str(), summary.data(),
        summary.size());

    if (summary[0] != '\0') std::printf("%s\n", summary.data());
    const char* err = slln_last_error();
    if (rc != SLLN_OK && err[0] != '\0')
        std::fprintf(stderr, "error: %s\n", err);
    return rc;
}

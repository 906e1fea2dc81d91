#include <exception>
#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "crooked/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"crooked: affine Schottky groups and crooked tilings of Minkowski (2+1)-space"};
    app.require_subcommand(1);

    double tol;
    try {
        tol = crooked::tolerance_from_env();
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return crooked::kExitParse;
    }

    std::string config_path, json_out;

    auto* validate = app.add_subcommand("validate", "check the fundamental-domain hypotheses");
    validate->add_option("config", config_path, "configuration JSON")->required();
    validate->add_option("--json", json_out, "write the report here instead of stdout");

    crooked::TileOptions tile_opt;
    std::vector<double> viewport;
    auto* tile = app.add_subcommand("tile", "slice the tiling by a definite plane into SVG");
    tile->add_option("config", tile_opt.config_path, "configuration JSON")->required();
    tile->add_option("--plane", tile_opt.plane, "height c of the slice plane {x3 = c}");
    tile->add_option("--depth", tile_opt.depth, "maximum word length");
    tile->add_option("--viewport", viewport, "xmin xmax ymin ymax")->expected(4);
    tile->add_option("--out", tile_opt.out_path, "output SVG path")->required();

    std::vector<double> point;
    int max_steps = 10000;
    auto* loc = app.add_subcommand("locate", "point location into the tiling");
    loc->add_option("config", config_path, "configuration JSON")->required();
    loc->add_option("--point", point, "x y z")->expected(3)->required();
    loc->add_option("--max-steps", max_steps, "descent step budget");
    loc->add_option("--json", json_out, "write the report here instead of stdout");

    crooked::VerifyOptions verify_opt;
    double tol_flag = -1.0;
    auto* verify = app.add_subcommand("verify", "run the property suites");
    verify->add_option("config", verify_opt.config_path, "configuration JSON")->required();
    verify->add_option("--samples", verify_opt.samples, "sampling budget");
    verify->add_option("--seed", verify_opt.seed, "rng seed");
    verify->add_option("--tol", tol_flag, "override tolerance");
    verify->add_option("--json", verify_opt.json_out, "write the report here instead of stdout");
    verify->add_option("--separation-csv", verify_opt.separation_csv,
                       "write the separation-chain rows as CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return crooked::cmd_validate(config_path, json_out, tol);
        if (tile->parsed()) {
            if (viewport.size() == 4) {
                tile_opt.xmin = viewport[0];
                tile_opt.xmax = viewport[1];
                tile_opt.ymin = viewport[2];
                tile_opt.ymax = viewport[3];
            }
            tile_opt.tol = tol;
            return crooked::cmd_tile(tile_opt);
        }
        if (loc->parsed())
            return crooked::cmd_locate(config_path, point[0], point[1], point[2], max_steps,
                                       json_out, tol);
        if (verify->parsed()) {
            verify_opt.tol = tol_flag > 0.0 ? tol_flag : tol;
            return crooked::cmd_verify(verify_opt);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return crooked::kExitParse;
    }
    return crooked::kExitParse;
}

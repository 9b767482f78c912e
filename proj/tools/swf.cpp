#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <swf/pipeline.hpp>

namespace
{

struct Args {
    std::string problem;
    std::string solution;
    std::string out;
    std::optional<int> order;
    std::string arithmetic;
    std::string branch;
    std::string grid;
};

CLI::App *add_command(CLI::App &app, const char *name, const char *help, Args &args, bool takes_solution)
{
    auto *cmd = app.add_subcommand(name, help);
    if (takes_solution) {
        cmd->add_option("--solution", args.solution, "solution JSON written by solve or all")->required();
    } else {
        cmd->add_option("--problem", args.problem, "problem JSON")->required();
        cmd->add_option("--order", args.order, "truncation order K (overrides the file)");
        cmd->add_option("--arithmetic", args.arithmetic, "float or rational")->check(CLI::IsMember({"float", "rational"}));
        cmd->add_option("--branch", args.branch, "eikonal root: + or -")->check(CLI::IsMember({"+", "-"}));
    }
    cmd->add_option("--out", args.out, "output directory (default $SWF_OUT_DIR, then .)");
    cmd->add_option("--grid", args.grid, "verification grid: default, or comma-separated T values");
    return cmd;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Singular solutions of nonlinear wave equations by Fuchsian reduction"};
    app.require_subcommand(1);
    Args args;
    add_command(app, "check", "run the surface conditions only", args, false);
    add_command(app, "eikonal", "solve the pseudo-Eikonal equation and write psi.json", args, false);
    add_command(app, "solve", "reduce and solve; write solution.json", args, false);
    add_command(app, "verify", "verify a stored solution; write residual.csv and fit.json", args, true);
    add_command(app, "all", "check, reduce, solve and verify", args, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const auto *sub = app.get_subcommands().front();
    swf::PipelineOptions opt;
    opt.out_dir = args.out;
    opt.order = args.order;
    if (!args.arithmetic.empty()) {
        opt.arithmetic = swf::parse_arithmetic(args.arithmetic);
    }
    if (!args.branch.empty()) {
        opt.branch = args.branch;
    }
    if (!args.grid.empty()) {
        opt.grid = args.grid;
    }
    const auto cmd = swf::parse_command(sub->get_name());
    const std::string input = cmd == swf::Command::verify ? args.solution : args.problem;
    return swf::run_command(cmd, input, opt, std::cout, std::cerr);
}

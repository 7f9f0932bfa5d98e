#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <unistd.h>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace cmvkit;
using namespace cmvkit::cli;

namespace {

std::string read_input(const std::string& path)
{
    if (path == "-")
        return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open input " + path);
    return {std::istreambuf_iterator<char>(f), {}};
}

// Temp file in the target directory, then rename.
void write_output(const std::string& path, const std::string& text)
{
    if (path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw std::runtime_error("cannot write " + tmp.string());
        f << text;
        f.flush();
        if (!f)
            throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

Complex parse_point(const std::string& s)
{
    std::stringstream ss(s);
    double re = 0.0, im = 0.0;
    char sep  = 0;
    if (!(ss >> re))
        throw CLI::ValidationError("--at", "expected re[,im], got '" + s + "'");
    if (ss >> sep) {
        if (sep != ',' || !(ss >> im))
            throw CLI::ValidationError("--at", "expected re[,im], got '" + s + "'");
    }
    return {re, im};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"CMV matrices, Schur functions and inverse spectral solvers"};
    app.require_subcommand(1);

    std::string input  = "-";
    std::string output = "-";
    Options opts;
    double phase = 0.0;
    std::vector<std::string> at;
    auto* phase_opt = app.add_option("--phase", phase, "Unimodular phase (radians) for invert-spectrum");
    app.add_option("--input", input, "Input JSON file or - for stdin");
    app.add_option("--output", output, "Output JSON file or - for stdout");
    app.add_option("--tol-structural", opts.tol.structural, "Structural tolerance")->check(CLI::PositiveNumber);
    app.add_option("--tol-roots", opts.tol.roots, "Root and spectrum tolerance")->check(CLI::PositiveNumber);
    app.add_option("--seed", opts.seed, "Seed for the Newton multi-start");
    app.fallthrough();

    const std::map<std::string, std::string> about{
        {"schur-params", "Blaschke product -> Schur parameters"},
        {"synth", "Schur parameters -> Blaschke product"},
        {"build-cmv", "CMV matrix of a parameter list"},
        {"truncate", "CMV matrix with its first row and column removed"},
        {"recover-params", "parameters of a truncated CMV matrix"},
        {"spectrum", "eigenvalues with multiplicities"},
        {"charfun", "characteristic function at --at points or on a --grid"},
        {"measure", "spectral measure of a Blaschke product or parameter list"},
        {"invert-spectrum", "truncated CMV matrix with a prescribed spectrum"},
        {"mixed-first", "spectrum part plus leading parameters"},
        {"mixed-last", "spectrum part plus trailing parameters"},
        {"verify", "structural checks on a CMV or truncated CMV matrix"},
        {"blaschke-sum", "partial sums of sum (1 - |z_n|)"},
    };
    std::map<std::string, CLI::App*> subs;
    for (const auto& name : command_names())
        subs[name] = app.add_subcommand(name, about.at(name));
    subs["charfun"]->add_option("--at", at, "Evaluation point re,im (repeatable)");
    subs["charfun"]->add_option("--grid", opts.grid, "Sample an n x n grid inside |z| < 0.95")->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cout << error_object("schema", e.what()).dump(2) << "\n";
        return exit_schema;
    }

    if (*phase_opt)
        opts.phase = phase;
    opts.tol.deflate = std::clamp(opts.tol.deflate, opts.tol.structural, opts.tol.roots);
    try {
        for (const auto& s : at)
            opts.at.push_back(parse_point(s));
    } catch (const CLI::ValidationError& e) {
        std::cout << error_object("schema", e.what()).dump(2) << "\n";
        return exit_schema;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    Outcome out;
    try {
        const json doc = json::parse(read_input(input));
        out            = run_command(name, doc, opts);
    } catch (const json::parse_error& e) {
        out = {exit_schema, error_object("schema", std::string("invalid JSON: ") + e.what())};
    } catch (const std::exception& e) {
        out = {exit_schema, error_object("io", e.what())};
    }

    try {
        write_output(output, out.body.dump(2) + "\n");
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return exit_numeric;
    }
    return out.exit_code;
}

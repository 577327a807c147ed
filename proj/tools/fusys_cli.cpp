// Command-line front end: catalog validation, scenario batches, and
// single-shot checks (mislin / dims / saturated / strata) on catalog groups.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fusys/fusys.hpp"

namespace {

using namespace fusys;

struct CommonOpts {
    std::string catalog_path;
    std::string out_path;
    std::string format = "json";
    std::size_t max_elements = kDefaultElementCap;
    unsigned max_degree = 4;
    unsigned jobs = 1;
    bool timings = false;
};

Catalog load_or_builtin(const CommonOpts& opt) {
    if (opt.catalog_path.empty()) return builtin_catalog();
    return load_catalog(opt.catalog_path);
}

RunOptions run_options(const CommonOpts& opt) {
    RunOptions r;
    r.element_cap = opt.max_elements;
    r.jobs = opt.jobs;
    r.timings = opt.timings;
    return r;
}

void emit(const CommonOpts& opt, const std::string& text) {
    if (opt.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opt.out_path, std::ios::binary);
    if (!out) throw InputError("cannot write output file: " + opt.out_path);
    out << text;
}

// "1,2,0;0,2,1" or "[1,2,0];[0,2,1]" -> image arrays
std::vector<std::vector<unsigned>> parse_gens_arg(const std::string& arg) {
    std::vector<std::vector<unsigned>> out;
    std::string cleaned;
    for (char c : arg)
        if (c != '[' && c != ']' && c != ' ') cleaned += c;
    std::istringstream parts(cleaned);
    std::string part;
    while (std::getline(parts, part, ';')) {
        if (part.empty()) continue;
        std::vector<unsigned> images;
        std::istringstream nums(part);
        std::string num;
        while (std::getline(nums, num, ',')) {
            try {
                images.push_back(static_cast<unsigned>(std::stoul(num)));
            } catch (const std::exception&) {
                throw InputError("cannot parse generator entry '" + num + "'");
            }
        }
        out.push_back(std::move(images));
    }
    if (out.empty()) throw InputError("empty generator list '" + arg + "'");
    return out;
}

int finish_single(const CommonOpts& opt, const Scenario& sc, const Catalog& cat) {
    ScenarioResult res = run_scenario(sc, cat, run_options(opt));
    if (res.status != "ok") {
        std::cerr << "error: " << res.error << "\n";
        return 2;
    }
    if (opt.format == "csv") {
        BatchResult b = assemble_report({sc}, {res}, cat);
        emit(opt, b.csv);
    } else {
        emit(opt, scenario_result_to_json(res).dump(2) + "\n");
    }
    for (const CheckResult& c : res.checks) {
        if (c.status == "error") {
            std::cerr << "check '" << c.name << "' failed: "
                      << c.data.value("message", std::string{}) << "\n";
            return 2;
        }
        if (c.inconsistent) return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fusion systems, control of fusion, and stable-element cohomology"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    CommonOpts opt;
    app.add_option("--catalog", opt.catalog_path, "catalog file (defaults to the built-in catalog)");
    app.add_option("--out", opt.out_path, "write output to this path instead of stdout");
    app.add_option("--format", opt.format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--max-elements", opt.max_elements, "group closure element cap");
    app.add_option("--max-degree", opt.max_degree, "default cohomology degree bound");
    app.add_option("--jobs", opt.jobs, "parallel scenarios in `run`");
    app.add_flag("--timings", opt.timings, "include wall-clock millis in reports (not reproducible)");

    auto* cat_cmd = app.add_subcommand("catalog", "catalog utilities");
    cat_cmd->require_subcommand(1);
    auto* validate = cat_cmd->add_subcommand("validate", "parse and validate a catalog file");

    std::vector<std::string> scenarios_paths;
    auto* run_cmd = app.add_subcommand("run", "run scenario files and emit one report");
    run_cmd->add_option("scenarios", scenarios_paths, "scenario file(s)")->required()->expected(-1);

    std::string group_name, sub_arg, subgroup_arg;
    unsigned prime = 2, degree_n = 4;

    auto add_group_opts = [&](CLI::App* cmd, bool with_degree) {
        cmd->add_option("-g,--group", group_name, "catalog group name")->required();
        cmd->add_option("-p,--prime", prime, "the prime p")->required();
        cmd->add_option("--subgroup", subgroup_arg,
                        "explicit generators for P (default: Sylow p-subgroup); "
                        "format '1,2,0;0,2,1'");
        cmd->add_option("--sub", sub_arg,
                        "generators of an intermediate group P <= H <= G "
                        "realizing the subsystem F_P(H)");
        if (with_degree) cmd->add_option("-N,--degree", degree_n, "max cohomology degree");
    };

    auto* mislin_cmd = app.add_subcommand("mislin", "control of fusion vs equality of systems");
    add_group_opts(mislin_cmd, false);
    auto* dims_cmd = app.add_subcommand("dims", "dimension table of H^n(F), n = 0..N");
    add_group_opts(dims_cmd, true);
    auto* sat_cmd = app.add_subcommand("saturated", "saturation report");
    add_group_opts(sat_cmd, false);
    auto* strata_cmd = app.add_subcommand("strata", "elementary abelian classes and automizers");
    add_group_opts(strata_cmd, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) {
            Catalog cat = load_or_builtin(opt);
            std::ostringstream os;
            os << "catalog ok: " << cat.specs().size() << " groups, hash " << catalog_hash(cat)
               << "\n";
            for (const GroupSpec& s : cat.specs())
                os << "  " << s.name << ": degree " << s.degree << ", order "
                   << s.build()->order() << "\n";
            emit(opt, os.str());
            return 0;
        }
        if (run_cmd->parsed()) {
            Catalog cat = load_or_builtin(opt);
            auto scenarios = load_scenarios(scenarios_paths);
            BatchResult batch = run_batch(scenarios, cat, run_options(opt));
            emit(opt, opt.format == "csv" ? batch.csv : batch.report.dump(2) + "\n");
            std::cerr << "scenarios: " << scenarios.size()
                      << ", inconsistencies: " << batch.report["summary"]["inconsistencies"]
                      << ", input errors: " << batch.report["summary"]["input_errors"] << "\n";
            return batch.exit_code;
        }

        Scenario sc;
        sc.id = "cli";
        sc.group = group_name;
        sc.p = prime;
        sc.max_degree = opt.max_degree;
        if (!subgroup_arg.empty()) sc.subgroup_gens = parse_gens_arg(subgroup_arg);
        if (!sub_arg.empty()) sc.ambient_sub_gens = parse_gens_arg(sub_arg);
        if (mislin_cmd->parsed()) sc.checks = {"mislin"};
        else if (dims_cmd->parsed()) {
            sc.checks = {"dims"};
            if (dims_cmd->count("--degree") || dims_cmd->count("-N")) sc.max_degree = degree_n;
        } else if (sat_cmd->parsed()) sc.checks = {"saturation"};
        else if (strata_cmd->parsed()) sc.checks = {"strata"};

        Catalog cat = load_or_builtin(opt);
        return finish_single(opt, sc, cat);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

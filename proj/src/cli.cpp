#include "relaysim/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "relaysim/errors.hpp"
#include "relaysim/pow.hpp"
#include "relaysim/relkin.hpp"
#include "relaysim/report_io.hpp"
#include "relaysim/scenario_file.hpp"
#include "relaysim/units.hpp"

namespace relaysim::cli {

namespace {

namespace fs = std::filesystem;
using units::format_number;

enum class Format { Table, Csv, JsonLines };

Format parse_format(const std::string& name) {
    if (name == "table") return Format::Table;
    if (name == "csv") return Format::Csv;
    return Format::JsonLines;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
    out << content;
}

/// Rows of (key, value) rendered in the requested stdout format.
void emit(std::ostream& out, Format format, const std::vector<std::pair<std::string, std::string>>& rows) {
    switch (format) {
        case Format::Table: {
            std::size_t width = 0;
            for (const auto& [k, v] : rows) width = std::max(width, k.size());
            for (const auto& [k, v] : rows) out << fmt::format("{:<{}}  {}\n", k, width, v);
            break;
        }
        case Format::Csv: {
            std::string header, values;
            for (const auto& [k, v] : rows) {
                header += (header.empty() ? "" : ",") + k;
                values += (values.empty() ? "" : ",") + v;
            }
            out << header << '\n' << values << '\n';
            break;
        }
        case Format::JsonLines: {
            nlohmann::ordered_json doc;
            for (const auto& [k, v] : rows) doc[k] = v;
            out << doc.dump() << '\n';
            break;
        }
    }
}

int cmd_causality(const std::string& dt_text, const std::string& dx_text, const std::string& v_text,
                  Format format, std::ostream& out) {
    const double c = relkin::kSpeedOfLight;
    const double dt = units::parse_time(dt_text, true);
    const double dx = units::parse_length(dx_text, true);
    const relkin::Velocity v{units::parse_velocity(v_text, true)};

    const double g = relkin::gamma(v, c);
    const auto primed = relkin::boost({dt, dx}, v, c);
    const auto cls = relkin::classify(dt, dx, c);
    const auto primed_cls = relkin::classify(primed.t, primed.x, c);

    std::string verdict;
    switch (cls.kind) {
        case relkin::CausalKind::Spacelike:
            verdict = "no signal can connect these events; neither caused the other";
            break;
        case relkin::CausalKind::Lightlike:
            verdict = "only a light-speed signal can connect these events";
            break;
        case relkin::CausalKind::Timelike:
            verdict = "a slower-than-light signal can connect these events; order is frame independent";
            break;
    }
    emit(out, format,
         {{"gamma", fmt::format("{:.6g}", g)},
          {"dt_prime_s", fmt::format("{:.6g}", primed.t)},
          {"dx_prime_m", fmt::format("{:.6g}", primed.x)},
          {"v_info_mps", fmt::format("{:.6g}", cls.v_info)},
          {"class", relkin::to_string(cls.kind)},
          {"class_in_boosted_frame", relkin::to_string(primed_cls.kind)},
          {"verdict", verdict}});
    return kOk;
}

int cmd_difficulty(const std::string& bits_text, Format format, std::ostream& out) {
    const auto bits = pow::parse_compact_hex(bits_text);
    const auto target = pow::decode_compact(bits);
    const double approx = target.value.convert_to<double>();
    emit(out, format,
         {{"bits", fmt::format("0x{:08x}", bits.raw)},
          {"exponent", fmt::format("0x{:02x}", bits.exponent())},
          {"coefficient", fmt::format("0x{:06x}", bits.coefficient())},
          {"target_decimal", target.to_decimal()},
          {"target_hex", target.to_hex()},
          {"target_approx", fmt::format("{:.4e}", approx)}});
    return kOk;
}

std::vector<std::pair<std::string, std::string>> plan_rows(const scenario::ScenarioFile& file,
                                                           const scenario::PlanResult& plan) {
    std::string inputs;
    for (double x : plan.bound.inputs) inputs += (inputs.empty() ? "" : " ") + format_number(x);
    const double blocktime = file.simulation.blocktime;
    return {
        {"topology", scenario::to_string(file.topology.kind)},
        {"rule", planner::to_string(plan.bound.rule)},
        {"inputs_s", inputs},
        {"b_min_s", format_number(plan.bound.b_min)},
        {"sampled_diameter_s", format_number(plan.sampled_diameter)},
        {"worst_case_confirmation_s", format_number(plan.feasibility.governing_latency)},
        {"max_confirmation_s", format_number(plan.feasibility.threshold)},
        {"verdict", planner::to_string(plan.feasibility.verdict)},
        {"blocktime_s", format_number(blocktime)},
        {"blocktime_admissible", plan.bound.admits(blocktime) ? "yes" : "no"},
    };
}

int cmd_plan(const std::string& path, const fs::path& output_dir, Format format, std::ostream& out) {
    const auto file = scenario::load_scenario(path);
    const auto plan = scenario::plan(file);
    const auto rows = plan_rows(file, plan);
    emit(out, format, rows);

    fs::create_directories(output_dir);
    std::string doc;
    for (const auto& [k, v] : rows) doc += fmt::format("{} = {}\n", k, v);
    write_file(output_dir / "plan.txt", doc);
    return kOk;
}

struct SimulateOptions {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> duration;
    std::optional<std::string> blocktime;
    std::size_t seeds = 1;
    unsigned workers = 0;
};

int cmd_simulate(const std::string& path, const fs::path& output_dir, const SimulateOptions& opts,
                 Format format, std::ostream& out) {
    auto file = scenario::load_scenario(path);
    if (opts.seed) file.simulation.seed = *opts.seed;
    if (opts.duration) file.simulation.duration = units::parse_time(*opts.duration, true);
    if (opts.blocktime) file.simulation.blocktime = units::parse_time(*opts.blocktime, true);
    if (!(file.simulation.duration > 0.0) || !(file.simulation.blocktime > 0.0)) {
        throw ArgumentError("duration and blocktime must be positive");
    }

    const auto base = scenario::build_scenario(file);
    const auto plan = scenario::plan(file);
    if (opts.seeds == 0) throw ArgumentError("--seeds must be at least 1");

    std::vector<std::uint64_t> seeds;
    for (std::size_t i = 0; i < opts.seeds; ++i) seeds.push_back(file.simulation.seed + i);
    const unsigned workers = opts.workers ? opts.workers : std::max(1u, std::thread::hardware_concurrency());
    const auto reports = simcore::run_sweep(base, seeds, workers);

    if (format == Format::Csv) {
        out << "seed,total_mined,final_height,orphan_rate,fork_count\n";
    }
    for (const auto& r : reports) {
        const fs::path dir = reports.size() == 1 ? output_dir : output_dir / fmt::format("seed_{}", r.seed);
        fs::create_directories(dir);
        write_file(dir / "summary.txt", report::summary_document(r, &plan));
        write_file(dir / "blocks.csv", report::blocks_csv(r));
        write_file(dir / "transactions.csv", report::transactions_csv(r));

        switch (format) {
            case Format::Table:
                out << report::summary_table(r);
                break;
            case Format::Csv:
                out << fmt::format("{},{},{},{},{}\n", r.seed, r.total_mined, r.final_height,
                                   format_number(r.orphan_rate), r.fork_count);
                break;
            case Format::JsonLines:
                out << report::summary_json_line(r, &plan);
                break;
        }
    }
    return kOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Light-delay proof-of-work network simulator and blocktime planner", "relaysim"};
    app.require_subcommand(1);

    std::string format_name = "table";
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format_name, "stdout format")
            ->check(CLI::IsMember({"table", "csv", "json-lines"}));
    };

    std::string dt, dx, velocity;
    auto* causality = app.add_subcommand("causality", "Boost an event pair and classify its causal relation");
    causality->add_option("dt", dt, "time separation (s, or with a time unit)")->required();
    causality->add_option("dx", dx, "spatial separation (m, or with a length unit)")->required();
    causality->add_option("v", velocity, "frame velocity (m/s, or e.g. 0.98c)")->required();
    add_format(causality);

    std::string bits;
    auto* difficulty = app.add_subcommand("difficulty", "Expand compact difficulty bits into a target");
    difficulty->add_option("bits", bits, "8 hex digits, e.g. 1903a30c")->required();
    add_format(difficulty);

    std::string scenario_path;
    std::string output_dir = "relaysim-out";
    auto* plan = app.add_subcommand("plan", "Blocktime lower bound and feasibility verdict for a scenario");
    plan->add_option("scenario", scenario_path, "scenario file")->required();
    plan->add_option("--output-dir", output_dir, "directory for the machine-readable plan");
    add_format(plan);

    SimulateOptions sim_opts;
    auto* simulate = app.add_subcommand("simulate", "Run the discrete-event simulation of a scenario");
    simulate->add_option("scenario", scenario_path, "scenario file")->required();
    simulate->add_option("--output-dir", output_dir, "directory for reports");
    simulate->add_option("--seed", sim_opts.seed, "override the scenario seed");
    simulate->add_option("--duration", sim_opts.duration, "override the duration (e.g. 30d)");
    simulate->add_option("--blocktime", sim_opts.blocktime, "override the blocktime (e.g. 10min)");
    simulate->add_option("--seeds", sim_opts.seeds, "sweep N consecutive seeds")->check(CLI::PositiveNumber);
    simulate->add_option("--workers", sim_opts.workers, "parallel workers for a sweep (default: all cores)");
    add_format(simulate);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kParseError;
    }

    const Format format = parse_format(format_name);
    try {
        if (causality->parsed()) return cmd_causality(dt, dx, velocity, format, out);
        if (difficulty->parsed()) return cmd_difficulty(bits, format, out);
        if (plan->parsed()) return cmd_plan(scenario_path, output_dir, format, out);
        if (simulate->parsed()) return cmd_simulate(scenario_path, output_dir, sim_opts, format, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kParseError;
    } catch (const ArgumentError& e) {
        err << "invalid argument: " << e.what() << '\n';
        return kParseError;
    } catch (const GraphError& e) {
        err << "graph error: " << e.what() << '\n';
        return kGraphError;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return kDomainError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return kParseError;
}

}  // namespace relaysim::cli

#include "ocgr/dataset.hpp"
#include "ocgr/recognition.hpp"
#include "ocgr/sas_io.hpp"
#include "ocgr/search.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitResourceLimit = 3;

ocgr::HeuristicKind parse_heuristic(const std::string &name) {
    if (name == "base")
        return ocgr::HeuristicKind::Base;
    if (name == "improved")
        return ocgr::HeuristicKind::Improved;
    ocgr::raise(ocgr::ErrorKind::InvalidArgument,
                "heuristic must be 'base' or 'improved'");
}

ocgr::SolveMode parse_mode(const std::string &name) {
    if (name == "lp")
        return ocgr::SolveMode::LP;
    if (name == "ip")
        return ocgr::SolveMode::IP;
    ocgr::raise(ocgr::ErrorKind::InvalidArgument, "mode must be 'lp' or 'ip'");
}

ordered_json finite_or_null(double v) {
    if (std::isinf(v))
        return nullptr;
    return v;
}

void write_text(const std::string &path, const std::string &content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        ocgr::raise(ocgr::ErrorKind::InvalidArgument,
                    "cannot write '" + path + "'");
    out << content;
}

struct RecognizeArgs {
    std::string task_path;
    std::string hyps_path;
    std::string obs_path;
    std::string eps = "0";
    std::string heuristic = "improved";
    std::string mode = "lp";
    std::string out_path = "-";
};

int run_recognize(const RecognizeArgs &args) {
    ocgr::Task task = ocgr::load_task_file(args.task_path);
    if (task.goal)
        ocgr::raise(ocgr::ErrorKind::InvalidArgument,
                    "recognition task must be goal-less (empty goal section)");
    std::vector<std::string> hyp_lines;
    std::vector<ocgr::PartialState> hyps = ocgr::parse_hypotheses(
        task, ocgr::read_text_file(args.hyps_path), &hyp_lines);
    ocgr::ObservationSequence omega =
        ocgr::parse_observations(ocgr::read_text_file(args.obs_path));
    ocgr::NoiseSpec eps = ocgr::NoiseSpec::parse(args.eps);

    ocgr::RecognitionResult result =
        ocgr::recognize(task, hyps, omega, eps, parse_heuristic(args.heuristic),
                        parse_mode(args.mode));

    ordered_json doc;
    doc["schema"] = "ocgr.recognition.v1";
    doc["task"] = args.task_path;
    doc["observations"] = (int)omega.size();
    doc["eps"] = eps.to_string();
    doc["heuristic"] = args.heuristic;
    doc["mode"] = args.mode;
    doc["delta_min"] = result.delta_min;
    doc["solution"] = result.solution;
    ordered_json solution_hyps = ordered_json::array();
    for (int idx : result.solution)
        solution_hyps.push_back(hyp_lines[idx]);
    doc["solution_hyps"] = solution_hyps;
    doc["goals"] = ordered_json::array();
    for (std::size_t i = 0; i < hyps.size(); ++i) {
        const ocgr::GoalReport &gr = result.per_goal[i];
        ordered_json g;
        g["id"] = i;
        g["hyp"] = hyp_lines[i];
        g["h_omega"] = finite_or_null(gr.h_omega);
        g["h"] = finite_or_null(gr.h);
        g["delta"] = finite_or_null(gr.delta);
        g["rows"] = gr.rows;
        g["lp_time_ms"] = gr.lp_time_ms;
        doc["goals"].push_back(g);
    }
    doc["total_time_ms"] = result.total_time_ms;
    write_text(args.out_path, doc.dump(2) + "\n");
    return kExitOk;
}

struct OracleArgs {
    std::string task_path;
    std::string hyps_path;
    std::string obs_path;
};

int run_oracle(const OracleArgs &args) {
    ocgr::Task task = ocgr::load_task_file(args.task_path);
    std::vector<std::string> hyp_lines;
    std::vector<ocgr::PartialState> hyps = ocgr::parse_hypotheses(
        task, ocgr::read_text_file(args.hyps_path), &hyp_lines);
    ocgr::ObservationSequence omega =
        ocgr::parse_observations(ocgr::read_text_file(args.obs_path));

    ordered_json doc = ordered_json::array();
    for (std::size_t i = 0; i < hyps.size(); ++i) {
        ocgr::detail::Stopwatch timer;
        ocgr::SearchResult plain = ocgr::optimal_cost(task, hyps[i]);
        ocgr::SearchResult complying =
            ocgr::optimal_complying_cost(task, hyps[i], omega);
        ordered_json g;
        g["goal"] = hyp_lines[i];
        g["h_star"] =
            plain.solved() ? ordered_json(*plain.cost) : ordered_json(nullptr);
        g["h_star_omega"] = complying.solved() ? ordered_json(*complying.cost)
                                               : ordered_json(nullptr);
        g["expanded"] = plain.expanded + complying.expanded;
        g["time_ms"] = timer.elapsed_ms();
        doc.push_back(g);
    }
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
}

struct GenerateArgs {
    std::string domain_dir;
    std::string out_dir;
    bool suboptimal = false;
    bool noise = false;
    std::uint64_t seed = 0;
    int goals_per_task = 4;
};

int run_generate(const GenerateArgs &args) {
    std::vector<ocgr::DomainTask> domains =
        ocgr::load_domain_dir(args.domain_dir);
    ocgr::GenerateParams params;
    params.suboptimal = args.suboptimal;
    params.noise = args.noise;
    params.seed = args.seed;
    params.goals_per_task = args.goals_per_task;
    ocgr::DatasetManifest manifest =
        ocgr::generate_dataset(domains, args.out_dir, params);
    std::cout << "instances: " << manifest.instances.size() << "\n";
    std::cout << "skipped: " << manifest.skipped.size() << "\n";
    return kExitOk;
}

struct BenchArgs {
    std::string dataset;
    std::string heuristic = "improved";
    std::string eps = "0";
    std::string mode = "lp";
    bool noisy = false;
    std::string out_path;
};

int run_bench(const BenchArgs &args) {
    ocgr::BenchOptions options;
    options.heuristic = parse_heuristic(args.heuristic);
    options.eps = ocgr::NoiseSpec::parse(args.eps);
    options.mode = parse_mode(args.mode);
    options.use_noisy = args.noisy;
    ocgr::BenchmarkReport report = ocgr::run_benchmark(args.dataset, options);

    std::string csv = ocgr::benchmark_csv(report);
    if (args.out_path.empty() || args.out_path == "-") {
        std::cout << csv;
    } else {
        write_text(args.out_path, csv);
        fs::path json_path = args.out_path;
        json_path.replace_extension(".json");
        write_text(json_path.string(), ocgr::benchmark_json(report));
    }
    std::cerr << "instances: " << report.instances
              << " mean_agr: " << report.mean_agr << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"LP-based goal recognition over SAS+ planning tasks"};
    app.require_subcommand(1);

    RecognizeArgs rec;
    CLI::App *recognize =
        app.add_subcommand("recognize", "Recognize goals from observations");
    recognize->add_option("--task", rec.task_path, "SAS or JSON task (goal-less)")
        ->required();
    recognize->add_option("--hyps", rec.hyps_path, "hypothesis file")->required();
    recognize->add_option("--obs", rec.obs_path, "observation file")->required();
    recognize->add_option("--eps", rec.eps, "noise filter epsilon (e.g. 0.2)");
    recognize->add_option("--heuristic", rec.heuristic, "base|improved");
    recognize->add_option("--mode", rec.mode, "lp|ip");
    recognize->add_option("--out", rec.out_path, "result JSON path ('-' = stdout)");

    OracleArgs ora;
    CLI::App *oracle =
        app.add_subcommand("oracle", "Search-exact h* and h*_omega per goal");
    oracle->add_option("--task", ora.task_path)->required();
    oracle->add_option("--hyps", ora.hyps_path)->required();
    oracle->add_option("--obs", ora.obs_path)->required();

    GenerateArgs gen;
    CLI::App *generate =
        app.add_subcommand("generate", "Generate a recognition dataset");
    generate->add_option("--domain-dir", gen.domain_dir, "directory of task+hyps")
        ->required();
    generate->add_option("--out", gen.out_dir, "dataset output directory")
        ->required();
    generate->add_flag("--suboptimal", gen.suboptimal,
                       "use weighted A* (w = 2) generating plans");
    generate->add_flag("--noise", gen.noise, "also emit obs_noisy.txt");
    generate->add_option("--seed", gen.seed, "base seed");
    generate->add_option("--goals-per-task", gen.goals_per_task);

    BenchArgs bench;
    CLI::App *bench_cmd =
        app.add_subcommand("bench", "Run recognition over a dataset");
    bench_cmd->add_option("--dataset", bench.dataset)->required();
    bench_cmd->add_option("--heuristic", bench.heuristic, "base|improved");
    bench_cmd->add_option("--eps", bench.eps, "noise filter epsilon");
    bench_cmd->add_option("--mode", bench.mode, "lp|ip");
    bench_cmd->add_flag("--noisy", bench.noisy, "read obs_noisy.txt");
    bench_cmd->add_option("--out", bench.out_path, "CSV path (JSON twin beside it)");

    try {
        app.parse(argc, argv);
        if (recognize->parsed())
            return run_recognize(rec);
        if (oracle->parsed())
            return run_oracle(ora);
        if (generate->parsed())
            return run_generate(gen);
        if (bench_cmd->parsed())
            return run_bench(bench);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    } catch (const ocgr::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        if (e.kind() == ocgr::ErrorKind::ResourceLimit)
            return kExitResourceLimit;
        if (e.is_input_error())
            return kExitInputError;
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}

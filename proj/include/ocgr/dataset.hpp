#ifndef OCGR_DATASET_HPP
#define OCGR_DATASET_HPP

#include "ocgr/errors.hpp"
#include "ocgr/observations.hpp"
#include "ocgr/recognition.hpp"
#include "ocgr/sas_io.hpp"
#include "ocgr/search.hpp"
#include "ocgr/task.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace ocgr {

namespace fs = std::filesystem;

struct DomainTask {
    std::string name;
    Task task; // goal-less
    std::vector<PartialState> hypotheses;
    std::vector<std::string> hypothesis_lines;
};

struct GenerateParams {
    int goals_per_task = 4;
    std::vector<int> observabilities = {10, 30, 50, 70, 100};
    int sequences_per_level = 3; // 100% always gets exactly one
    bool suboptimal = false;     // weighted A* with w = 2 when set
    double suboptimal_weight = 2.0;
    bool noise = false; // also emit obs_noisy.txt with ceil(0.2|omega|) inserts
    std::uint64_t seed = 0;
    SearchLimits limits;
};

struct InstanceRecord {
    std::string path; // relative to the dataset root
    std::string domain;
    int goal_index = 0;
    int observability = 100;
    int sequence_index = 0;
    std::uint64_t seed = 0;
};

struct DatasetManifest {
    std::vector<InstanceRecord> instances;
    std::vector<std::string> skipped; // path + reason, never silently dropped
};

namespace detail {

inline void write_file(const fs::path &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        raise(ErrorKind::InvalidArgument, "cannot write '" + path.string() + "'");
    out << content;
}

} // namespace detail

/*
  Benchmark-style dataset generation. For every (task, reference goal):
  one generating plan (optimal, or weighted A* with w = 2 in suboptimal
  mode), then per observability level `sequences_per_level` sampled
  sequences (one at 100%). Each instance directory holds task.sas,
  hyps.txt, real_goal.txt, obs.txt, optionally obs_noisy.txt, and
  solution.txt with the reference solution set computed from the noise-free
  sequence. Instances that exhaust the oracle budget are skipped and listed
  in the manifest.
*/
inline DatasetManifest generate_dataset(const std::vector<DomainTask> &domains,
                                        const fs::path &out_dir,
                                        const GenerateParams &params) {
    DatasetManifest manifest;
    fs::create_directories(out_dir);

    for (std::size_t d = 0; d < domains.size(); ++d) {
        const DomainTask &domain = domains[d];
        if ((int)domain.hypotheses.size() < params.goals_per_task)
            raise(ErrorKind::DatasetFormatError,
                  "domain '" + domain.name + "' has fewer hypotheses than goals_per_task");
        std::string task_text = serialize_sas(domain.task);
        std::string hyps_text;
        for (const std::string &line : domain.hypothesis_lines)
            hyps_text += line + "\n";

        for (int g = 0; g < params.goals_per_task; ++g) {
            const PartialState &ref_goal = domain.hypotheses[g];
            Plan plan;
            try {
                SearchResult plan_result =
                    params.suboptimal
                        ? weighted_plan(domain.task, ref_goal,
                                        params.suboptimal_weight, params.limits)
                        : optimal_cost(domain.task, ref_goal, params.limits);
                if (!plan_result.solved()) {
                    manifest.skipped.push_back(domain.name + "/g" +
                                               std::to_string(g) +
                                               ": goal unreachable");
                    continue;
                }
                plan = *plan_result.plan;
            } catch (const Error &e) {
                if (e.kind() != ErrorKind::ResourceLimit &&
                    e.kind() != ErrorKind::Unsolvable)
                    throw;
                manifest.skipped.push_back(domain.name + "/g" +
                                           std::to_string(g) + ": " + e.what());
                continue;
            }
            if (plan.empty()) {
                manifest.skipped.push_back(domain.name + "/g" +
                                           std::to_string(g) +
                                           ": goal already true initially");
                continue;
            }

            for (int level : params.observabilities) {
                int seqs = level == 100 ? 1 : params.sequences_per_level;
                for (int seq = 0; seq < seqs; ++seq) {
                    std::uint64_t inst_seed = derive_seed(
                        params.seed, d * 131 + (std::uint64_t)g, level, seq);
                    Rng rng(inst_seed);
                    ObservationSequence omega =
                        sample_observations(plan, level / 100.0, rng);

                    fs::path rel = fs::path(domain.name) /
                                   ("g" + std::to_string(g)) /
                                   ("obs" + std::to_string(level)) /
                                   ("s" + std::to_string(seq));
                    fs::path dir = out_dir / rel;

                    std::vector<int> solution;
                    try {
                        solution = reference_solution_set(
                            domain.task, domain.hypotheses, omega, plan,
                            ref_goal, params.limits);
                    } catch (const Error &e) {
                        if (e.kind() != ErrorKind::ResourceLimit)
                            throw;
                        manifest.skipped.push_back(rel.string() + ": " +
                                                   e.what());
                        continue;
                    }

                    fs::create_directories(dir);
                    detail::write_file(dir / "task.sas", task_text);
                    detail::write_file(dir / "hyps.txt", hyps_text);
                    detail::write_file(dir / "real_goal.txt",
                                       domain.hypothesis_lines[g] + "\n");
                    detail::write_file(dir / "obs.txt",
                                       serialize_observations(omega));
                    if (params.noise) {
                        ObservationSequence noisy =
                            inject_noise(omega, domain.task, plan, rng);
                        detail::write_file(dir / "obs_noisy.txt",
                                           serialize_observations(noisy));
                    }
                    std::string solution_text;
                    for (int idx : solution)
                        solution_text += domain.hypothesis_lines[idx] + "\n";
                    detail::write_file(dir / "solution.txt", solution_text);

                    InstanceRecord record;
                    record.path = rel.string();
                    record.domain = domain.name;
                    record.goal_index = g;
                    record.observability = level;
                    record.sequence_index = seq;
                    record.seed = inst_seed;
                    manifest.instances.push_back(std::move(record));
                }
            }
        }
    }

    // Manifest with ordered keys so regeneration is byte-stable.
    nlohmann::ordered_json doc;
    doc["schema"] = "ocgr.dataset.v1";
    doc["seed"] = params.seed;
    doc["suboptimal"] = params.suboptimal;
    doc["noise"] = params.noise;
    doc["instances"] = nlohmann::ordered_json::array();
    for (const InstanceRecord &r : manifest.instances) {
        nlohmann::ordered_json inst;
        inst["path"] = r.path;
        inst["domain"] = r.domain;
        inst["goal"] = r.goal_index;
        inst["observability"] = r.observability;
        inst["sequence"] = r.sequence_index;
        inst["seed"] = r.seed;
        doc["instances"].push_back(inst);
    }
    doc["skipped"] = manifest.skipped;
    detail::write_file(out_dir / "manifest.json", doc.dump(2) + "\n");
    return manifest;
}

/// Load a domain directory: every *.sas / *.json task with a sibling
/// <stem>.hyps file becomes one DomainTask.
inline std::vector<DomainTask> load_domain_dir(const fs::path &dir) {
    std::vector<DomainTask> domains;
    if (!fs::is_directory(dir))
        raise(ErrorKind::InvalidArgument,
              "'" + dir.string() + "' is not a directory");
    std::vector<fs::path> files;
    for (const auto &entry : fs::directory_iterator(dir))
        files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const fs::path &file : files) {
        std::string ext = file.extension().string();
        if (ext != ".sas" && ext != ".json")
            continue;
        fs::path hyps_file = file;
        hyps_file.replace_extension(".hyps");
        if (!fs::exists(hyps_file))
            raise(ErrorKind::DatasetFormatError,
                  "missing hypothesis file '" + hyps_file.string() + "'");
        DomainTask domain;
        domain.name = file.stem().string();
        domain.task = load_task_file(file.string());
        if (domain.task.goal)
            raise(ErrorKind::DatasetFormatError,
                  "domain task '" + file.string() + "' must be goal-less");
        domain.hypotheses =
            parse_hypotheses(domain.task, read_text_file(hyps_file.string()),
                             &domain.hypothesis_lines);
        domains.push_back(std::move(domain));
    }
    if (domains.empty())
        raise(ErrorKind::DatasetFormatError,
              "no task files in '" + dir.string() + "'");
    return domains;
}

struct BenchmarkRow {
    std::string domain;
    int observability = 0;
    int instances = 0;
    double agr = 0.0;
    double avg_h_omega_ref = 0.0; // reference-goal h_omega, finite cases
    double avg_rows = 0.0;
    double total_time_ms = 0.0;
    double lp_time_ms = 0.0;
};

struct BenchmarkReport {
    std::vector<BenchmarkRow> rows; // per (domain, observability), sorted
    double mean_agr = 0.0;
    int instances = 0;
};

struct BenchOptions {
    HeuristicKind heuristic = HeuristicKind::Improved;
    NoiseSpec eps;
    SolveMode mode = SolveMode::LP;
    bool use_noisy = false; // read obs_noisy.txt instead of obs.txt
};

/*
  Replay a generated dataset: recognize every instance, score against
  solution.txt with the agreement ratio, aggregate per (domain, level).
  Instance order is sorted-by-path, so aggregation is order-independent by
  construction and reports are reproducible.
*/
inline BenchmarkReport run_benchmark(const fs::path &dataset,
                                     const BenchOptions &options) {
    if (!fs::is_directory(dataset))
        raise(ErrorKind::DatasetFormatError,
              "'" + dataset.string() + "' is not a dataset directory");
    std::vector<fs::path> instance_dirs;
    for (const auto &entry : fs::recursive_directory_iterator(dataset))
        if (entry.is_regular_file() && entry.path().filename() == "task.sas")
            instance_dirs.push_back(entry.path().parent_path());
    std::sort(instance_dirs.begin(), instance_dirs.end());
    if (instance_dirs.empty())
        raise(ErrorKind::DatasetFormatError, "dataset has no instances");

    struct Accum {
        int instances = 0;
        double agr = 0.0;
        double h_omega_ref = 0.0;
        int h_omega_ref_count = 0;
        double rows = 0.0;
        double total_ms = 0.0;
        double lp_ms = 0.0;
    };
    std::map<std::pair<std::string, int>, Accum> groups;
    double agr_sum = 0.0;
    int count = 0;

    for (const fs::path &dir : instance_dirs) {
        Task task = parse_sas(read_text_file((dir / "task.sas").string()));
        std::vector<std::string> hyp_lines;
        std::vector<PartialState> hyps = parse_hypotheses(
            task, read_text_file((dir / "hyps.txt").string()), &hyp_lines);
        std::string obs_name = options.use_noisy ? "obs_noisy.txt" : "obs.txt";
        if (options.use_noisy && !fs::exists(dir / obs_name))
            raise(ErrorKind::DatasetFormatError,
                  "no noisy observations in '" + dir.string() + "'");
        ObservationSequence omega =
            parse_observations(read_text_file((dir / obs_name).string()));
        std::set<std::string> reference;
        {
            std::istringstream in(read_text_file((dir / "solution.txt").string()));
            std::string line;
            while (std::getline(in, line)) {
                if (!line.empty() && line.back() == '\r')
                    line.pop_back();
                if (!line.empty())
                    reference.insert(line);
            }
        }
        std::string real_goal_line;
        {
            std::string text = read_text_file((dir / "real_goal.txt").string());
            std::istringstream in(text);
            std::getline(in, real_goal_line);
            while (!real_goal_line.empty() &&
                   (real_goal_line.back() == '\r' || real_goal_line.back() == ' '))
                real_goal_line.pop_back();
        }

        RecognitionResult result = recognize(task, hyps, omega, options.eps,
                                             options.heuristic, options.mode);
        std::set<std::string> answer;
        for (int idx : result.solution)
            answer.insert(hyp_lines[idx]);
        double agr = agreement_ratio(reference, answer);

        // Parse the instance coordinates back out of the path layout.
        fs::path rel = fs::relative(dir, dataset);
        auto it = rel.begin();
        std::string domain = it->string();
        int level = 0;
        for (const auto &part : rel)
            if (part.string().rfind("obs", 0) == 0)
                level = std::stoi(part.string().substr(3));

        Accum &acc = groups[{domain, level}];
        ++acc.instances;
        acc.agr += agr;
        double rows_sum = 0.0;
        for (const GoalReport &gr : result.per_goal) {
            rows_sum += gr.rows;
            acc.lp_ms += gr.lp_time_ms;
        }
        acc.rows += rows_sum / (double)result.per_goal.size();
        acc.total_ms += result.total_time_ms;
        for (std::size_t i = 0; i < hyp_lines.size(); ++i) {
            if (hyp_lines[i] == real_goal_line &&
                !std::isinf(result.per_goal[i].h_omega)) {
                acc.h_omega_ref += result.per_goal[i].h_omega;
                ++acc.h_omega_ref_count;
            }
        }
        agr_sum += agr;
        ++count;
    }

    BenchmarkReport report;
    for (const auto &[key, acc] : groups) {
        BenchmarkRow row;
        row.domain = key.first;
        row.observability = key.second;
        row.instances = acc.instances;
        row.agr = acc.agr / acc.instances;
        row.avg_h_omega_ref = acc.h_omega_ref_count
                                  ? acc.h_omega_ref / acc.h_omega_ref_count
                                  : 0.0;
        row.avg_rows = acc.rows / acc.instances;
        row.total_time_ms = acc.total_ms;
        row.lp_time_ms = acc.lp_ms;
        report.rows.push_back(std::move(row));
    }
    report.instances = count;
    report.mean_agr = count ? agr_sum / count : 0.0;
    return report;
}

/// Deterministic CSV (no timing columns; those live in the JSON report).
inline std::string benchmark_csv(const BenchmarkReport &report) {
    std::ostringstream out;
    out << "domain,observability,instances,agr,avg_h_omega_ref,avg_rows\n";
    char buf[160];
    for (const BenchmarkRow &row : report.rows) {
        std::snprintf(buf, sizeof(buf), "%s,%d,%d,%.6f,%.6f,%.6f\n",
                      row.domain.c_str(), row.observability, row.instances,
                      row.agr, row.avg_h_omega_ref, row.avg_rows);
        out << buf;
    }
    return out.str();
}

inline std::string benchmark_json(const BenchmarkReport &report) {
    nlohmann::ordered_json doc;
    doc["schema"] = "ocgr.benchmark.v1";
    doc["instances"] = report.instances;
    doc["mean_agr"] = report.mean_agr;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const BenchmarkRow &row : report.rows) {
        nlohmann::ordered_json r;
        r["domain"] = row.domain;
        r["observability"] = row.observability;
        r["instances"] = row.instances;
        r["agr"] = row.agr;
        r["avg_h_omega_ref"] = row.avg_h_omega_ref;
        r["avg_rows"] = row.avg_rows;
        r["total_time_ms"] = row.total_time_ms;
        r["lp_time_ms"] = row.lp_time_ms;
        doc["rows"].push_back(r);
    }
    return doc.dump(2) + "\n";
}

} // namespace ocgr

#endif

#ifndef OCGR_SAS_IO_HPP
#define OCGR_SAS_IO_HPP

#include "ocgr/errors.hpp"
#include "ocgr/task.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace ocgr {

namespace detail {

class LineReader {
public:
    explicit LineReader(const std::string &text) : in_(text) {}

    std::string next(const char *expect_context) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            return line;
        }
        raise(ErrorKind::SyntaxError,
              std::string("unexpected end of SAS file while reading ") +
                  expect_context);
    }

    void expect(const std::string &literal) {
        std::string line = next(literal.c_str());
        if (line != literal)
            raise(ErrorKind::SyntaxError, "expected '" + literal + "' at line " +
                                              std::to_string(line_no_) +
                                              ", got '" + line + "'");
    }

    int next_int(const char *context) {
        std::string line = next(context);
        try {
            std::size_t pos = 0;
            int value = std::stoi(line, &pos);
            if (pos != line.size())
                throw std::invalid_argument(line);
            return value;
        } catch (const std::exception &) {
            raise(ErrorKind::SyntaxError,
                  std::string("expected integer for ") + context + " at line " +
                      std::to_string(line_no_) + ", got '" + line + "'");
        }
    }

    int line_no() const { return line_no_; }

private:
    std::istringstream in_;
    int line_no_ = 0;
};

inline std::vector<int> split_ints(const std::string &line, int expected,
                                   const char *context) {
    std::istringstream in(line);
    std::vector<int> out;
    int v;
    while (in >> v)
        out.push_back(v);
    if (expected >= 0 && (int)out.size() != expected)
        raise(ErrorKind::SyntaxError,
              std::string("expected ") + std::to_string(expected) +
                  " integers for " + context + ", got '" + line + "'");
    return out;
}

} // namespace detail

/*
  Parser for the Fast Downward translator output format, version 3.
  Supported sections: version, metric, variables, mutex groups (skipped),
  initial state, goal, operators. Axioms and conditional effects are
  rejected. In strict mode (the default) any non-unit operator cost is
  rejected as well; otherwise costs are stored as given.
*/
inline Task parse_sas(const std::string &text, bool strict_unit_costs = true) {
    detail::LineReader in(text);
    Task task;

    in.expect("begin_version");
    int version = in.next_int("version");
    if (version != 3)
        raise(ErrorKind::UnsupportedFeature,
              "unsupported SAS version " + std::to_string(version));
    in.expect("end_version");

    in.expect("begin_metric");
    int metric = in.next_int("metric");
    if (metric != 0 && metric != 1)
        raise(ErrorKind::SyntaxError, "metric must be 0 or 1");
    in.expect("end_metric");

    int num_vars = in.next_int("variable count");
    for (int v = 0; v < num_vars; ++v) {
        in.expect("begin_variable");
        Variable var;
        var.name = in.next("variable name");
        int axiom_layer = in.next_int("axiom layer");
        if (axiom_layer != -1)
            raise(ErrorKind::UnsupportedFeature,
                  "derived variable '" + var.name + "' (axioms unsupported)");
        int domain = in.next_int("domain size");
        for (int d = 0; d < domain; ++d)
            var.value_names.push_back(in.next("value name"));
        in.expect("end_variable");
        task.variables.push_back(std::move(var));
    }

    int num_mutexes = in.next_int("mutex group count");
    for (int m = 0; m < num_mutexes; ++m) {
        in.expect("begin_mutex_group");
        int size = in.next_int("mutex group size");
        for (int i = 0; i < size; ++i)
            in.next("mutex entry");
        in.expect("end_mutex_group");
    }

    in.expect("begin_state");
    for (int v = 0; v < num_vars; ++v)
        task.initial_state.push_back(in.next_int("initial state value"));
    in.expect("end_state");

    in.expect("begin_goal");
    int goal_size = in.next_int("goal size");
    if (goal_size > 0) {
        std::vector<Atom> atoms;
        for (int i = 0; i < goal_size; ++i) {
            auto pair = detail::split_ints(in.next("goal atom"), 2, "goal atom");
            atoms.push_back({pair[0], pair[1]});
        }
        task.goal = PartialState(std::move(atoms));
    }
    // A 0-atom goal section denotes a task without a goal condition
    // (the recognition module's taskP); see docs/formats.md.
    in.expect("end_goal");

    int num_ops = in.next_int("operator count");
    for (int o = 0; o < num_ops; ++o) {
        in.expect("begin_operator");
        Operator op;
        op.label = normalize_label(in.next("operator name"));
        std::vector<Atom> pre;
        std::vector<Atom> eff;
        int num_prevail = in.next_int("prevail count");
        for (int i = 0; i < num_prevail; ++i) {
            auto pair = detail::split_ints(in.next("prevail"), 2, "prevail");
            pre.push_back({pair[0], pair[1]});
        }
        int num_effects = in.next_int("effect count");
        if (num_effects == 0)
            raise(ErrorKind::SyntaxError,
                  "operator '" + op.label + "' has no effects");
        for (int i = 0; i < num_effects; ++i) {
            auto nums = detail::split_ints(in.next("effect"), -1, "effect");
            if (nums.size() < 4)
                raise(ErrorKind::SyntaxError,
                      "malformed effect line for '" + op.label + "'");
            if (nums[0] != 0)
                raise(ErrorKind::UnsupportedFeature,
                      "conditional effect in operator '" + op.label + "'");
            int var = nums[1], pre_val = nums[2], post_val = nums[3];
            if (pre_val != -1)
                pre.push_back({var, pre_val});
            eff.push_back({var, post_val});
        }
        int cost = in.next_int("operator cost");
        op.cost = metric == 1 ? cost : 1;
        in.expect("end_operator");
        op.preconditions = PartialState(std::move(pre));
        op.effects = PartialState(std::move(eff));
        task.operators.push_back(std::move(op));
    }

    int num_axioms = in.next_int("axiom count");
    if (num_axioms != 0)
        raise(ErrorKind::UnsupportedFeature, "axioms are not supported");

    task.validate(strict_unit_costs);
    return task;
}

/// Serialize back to the SAS v3 subset parse_sas accepts. Round-tripping
/// yields a structurally equal task.
inline std::string serialize_sas(const Task &task) {
    std::ostringstream out;
    bool unit = true;
    for (const Operator &op : task.operators)
        if (op.cost != 1)
            unit = false;
    out << "begin_version\n3\nend_version\n";
    out << "begin_metric\n" << (unit ? 0 : 1) << "\nend_metric\n";
    out << task.num_variables() << "\n";
    for (const Variable &var : task.variables) {
        out << "begin_variable\n" << var.name << "\n-1\n"
            << var.domain_size() << "\n";
        for (const std::string &value : var.value_names)
            out << value << "\n";
        out << "end_variable\n";
    }
    out << "0\n"; // no mutex groups
    out << "begin_state\n";
    for (std::int32_t v : task.initial_state)
        out << v << "\n";
    out << "end_state\n";
    out << "begin_goal\n";
    if (task.goal) {
        out << task.goal->size() << "\n";
        for (const Atom &a : task.goal->atoms())
            out << a.var << " " << a.value << "\n";
    } else {
        out << 0 << "\n";
    }
    out << "end_goal\n";
    out << task.num_operators() << "\n";
    for (const Operator &op : task.operators) {
        out << "begin_operator\n" << op.label << "\n";
        // Preconditions on variables without an effect become prevail
        // conditions; the rest are folded into the effect lines.
        std::vector<Atom> prevail;
        for (const Atom &p : op.preconditions.atoms())
            if (!op.effects.value_of(p.var))
                prevail.push_back(p);
        out << prevail.size() << "\n";
        for (const Atom &p : prevail)
            out << p.var << " " << p.value << "\n";
        out << op.effects.size() << "\n";
        for (const Atom &e : op.effects.atoms()) {
            auto pre_val = op.preconditions.value_of(e.var);
            out << 0 << " " << e.var << " " << (pre_val ? *pre_val : -1) << " "
                << e.value << "\n";
        }
        out << op.cost << "\n";
        out << "end_operator\n";
    }
    out << "0\n"; // no axioms
    return out.str();
}

/*
  JSON task schema, the secondary input format for hand-written fixtures
  (see docs/formats.md):

    {"name": "...",
     "variables": [{"name": "pos", "values": ["c0", "c1"]}],
     "initial": {"pos": "c0"},
     "goal": {"pos": "c1"} | null,
     "operators": [{"label": "move", "pre": {"pos": "c0"},
                    "eff": {"pos": "c1"}, "cost": 1}]}
*/
inline Task parse_task_json(const std::string &text,
                            bool strict_unit_costs = true) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        raise(ErrorKind::SyntaxError, std::string("bad task JSON: ") + e.what());
    }
    Task task;
    try {
        task.name = doc.value("name", "");
        std::unordered_map<std::string, int> var_index;
        for (const auto &v : doc.at("variables")) {
            Variable var;
            var.name = v.at("name").get<std::string>();
            for (const auto &val : v.at("values"))
                var.value_names.push_back(val.get<std::string>());
            var_index[var.name] = (int)task.variables.size();
            task.variables.push_back(std::move(var));
        }
        auto lookup_atom = [&](const std::string &var_name,
                               const std::string &value_name) -> Atom {
            auto it = var_index.find(var_name);
            if (it == var_index.end())
                raise(ErrorKind::SyntaxError, "unknown variable '" + var_name + "'");
            const Variable &var = task.variables[it->second];
            for (int d = 0; d < var.domain_size(); ++d)
                if (var.value_names[d] == value_name)
                    return {it->second, d};
            raise(ErrorKind::SyntaxError, "unknown value '" + value_name +
                                              "' of variable '" + var_name + "'");
        };
        auto parse_partial = [&](const nlohmann::json &obj) -> PartialState {
            std::vector<Atom> atoms;
            for (auto it = obj.begin(); it != obj.end(); ++it)
                atoms.push_back(lookup_atom(it.key(), it.value().get<std::string>()));
            return PartialState(std::move(atoms));
        };
        task.initial_state.assign(task.variables.size(), -1);
        const auto &init = doc.at("initial");
        for (auto it = init.begin(); it != init.end(); ++it) {
            Atom a = lookup_atom(it.key(), it.value().get<std::string>());
            task.initial_state[a.var] = a.value;
        }
        for (std::size_t v = 0; v < task.variables.size(); ++v)
            if (task.initial_state[v] < 0)
                raise(ErrorKind::SyntaxError,
                      "initial state misses variable '" +
                          task.variables[v].name + "'");
        if (doc.contains("goal") && !doc.at("goal").is_null())
            task.goal = parse_partial(doc.at("goal"));
        for (const auto &o : doc.at("operators")) {
            Operator op;
            op.label = normalize_label(o.at("label").get<std::string>());
            op.preconditions = o.contains("pre") ? parse_partial(o.at("pre"))
                                                 : PartialState();
            op.effects = parse_partial(o.at("eff"));
            op.cost = o.value("cost", 1);
            task.operators.push_back(std::move(op));
        }
    } catch (const nlohmann::json::exception &e) {
        raise(ErrorKind::SyntaxError, std::string("bad task JSON: ") + e.what());
    }
    task.validate(strict_unit_costs);
    return task;
}

inline std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        raise(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// Dispatch on extension: .sas vs .json.
inline Task load_task_file(const std::string &path,
                           bool strict_unit_costs = true) {
    std::string text = read_text_file(path);
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
        return parse_task_json(text, strict_unit_costs);
    return parse_sas(text, strict_unit_costs);
}

} // namespace ocgr

#endif

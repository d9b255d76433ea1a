#include "modsys/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>

#include <CLI11.hpp>
#include <json.hpp>

#include "modsys/io.hpp"
#include "modsys/model.hpp"

namespace modsys {

namespace {

using ojson = nlohmann::ordered_json;

constexpr std::string_view error_prefix = "modsys: error: ";

/// Raised for problems the user has to fix in the model or the request (exit code 1).
struct Failed {
    std::vector<std::string> lines;
};

struct Settings {
    std::string model_path;
    bool json = false;
    std::string metric = "cumL1";
    std::size_t limit = default_composition_limit;
    bool warn_monotone = false;

    std::string composition;
    std::string method;
    std::string reduce;
    std::vector<std::string> subset;
    bool all = false;
    std::string scale;
    std::string dot;
    int nu = 0;
};

std::string resolve_path(const std::string& given)
{
    namespace fs = std::filesystem;
    for (const auto& candidate : {given, given + ".model.json", "models/" + given + ".model.json"}) {
        if (fs::is_regular_file(candidate)) {
            return candidate;
        }
    }
    throw Failed{{"model file '" + given + "' not found"}};
}

Model load(const Settings& s)
{
    const auto result = load_model(resolve_path(s.model_path));
    if (!result.ok()) {
        Failed f;
        for (const auto& e : result.errors) {
            f.lines.push_back(e.describe());
        }
        throw f;
    }
    return *result.model;
}

ValidationOptions validation_options(const Settings& s) { return {!s.warn_monotone}; }

EvalOptions eval_options(const Settings& s)
{
    return {s.metric == "hasse" ? MultisetMetric::HassePath : MultisetMetric::CumulativeL1};
}

/// Models with validation errors are refused before evaluation.
void require_valid(const Model& model, const Settings& s)
{
    const auto report = validate_model(model, validation_options(s));
    if (!report.ok()) {
        const auto& v = *std::find_if(report.violations.begin(), report.violations.end(),
                                      [](const Violation& x) { return !x.warning; });
        throw Failed{{"invalid model: " + v.path + ": " + v.message + " (" + std::to_string(report.errors()) +
                      " error(s); run `modsys validate`)"}};
    }
}

Composition find_composition(const Model& model, const std::string& name, std::size_t limit)
{
    if (const auto* c = model.find_composition(name)) {
        return *c;
    }
    for (auto& c : enumerate_compositions(model, limit).compositions) {
        if (c.name == name) {
            return c;
        }
    }
    throw Failed{{"unknown composition '" + name + "'"}};
}

int cmd_validate(const Settings& s, std::ostream& out)
{
    const auto model = load(s);
    const auto report = validate_model(model, validation_options(s));
    if (s.json) {
        ojson vs = ojson::array();
        for (const auto& v : report.violations) {
            vs.push_back({{"path", v.path}, {"message", v.message}, {"severity", v.warning ? "warning" : "error"}});
        }
        out << ojson{{"model", model.name}, {"ok", report.ok()}, {"violations", std::move(vs)}}.dump(2) << "\n";
    } else {
        for (const auto& v : report.violations) {
            out << (v.warning ? "warning: " : "error: ") << v.path << ": " << v.message << "\n";
        }
        if (report.ok()) {
            out << "ok: " << model.name << "\n";
        }
    }
    if (!report.ok()) {
        throw Failed{{"model '" + model.name + "' has " + std::to_string(report.errors()) + " error(s)"}};
    }
    return exit_code::ok;
}

int cmd_evaluate(const Settings& s, std::ostream& out)
{
    const auto model = load(s);
    require_valid(model, s);
    const auto method = parse_method(s.method);
    const auto comp = find_composition(model, s.composition, s.limit);
    const auto value = evaluate(model, comp, method, eval_options(s));
    if (s.json) {
        out << ojson{{"composition", comp.name}, {"method", s.method}, {"value", format_eval(value)}}.dump(2) << "\n";
    } else {
        out << "e(" << comp.name << ")=" << format_eval(value) << "\n";
    }
    return exit_code::ok;
}

int cmd_rank(const Settings& s, std::ostream& out)
{
    const auto model = load(s);
    require_valid(model, s);
    RankOptions options;
    options.eval = eval_options(s);
    options.subset = s.subset;
    options.all = s.all;
    options.limit = s.limit;
    const auto report = rank(model, parse_method(s.method), parse_reduction(s.reduce), options);
    out << (s.json ? render_rank_json(report) : render_rank(report, model));
    return exit_code::ok;
}

int cmd_poset(const Settings& s, std::ostream& out)
{
    const auto model = load(s);
    const auto* scale = model.scales.find(s.scale);
    if (scale == nullptr) {
        throw Failed{{"unknown scale '" + s.scale + "'"}};
    }
    std::string text;
    std::size_t elements = 0, covers = 0;
    int layers = 0;
    auto take = [&](const auto& view) {
        text = export_dot(view, s.scale);
        elements = view.size();
        covers = view.covers.size();
        for (int l : view.layer_of) {
            layers = std::max(layers, l);
        }
    };
    if (const auto* ms = std::get_if<MultisetScale>(&scale->kind)) {
        if (s.nu > 0) {
            take(compat_extended_poset(*ms, s.nu));
        } else {
            take(ScalePoset(*ms).view());
        }
    } else if (const auto* cs = std::get_if<CountPosetScale>(&scale->kind)) {
        if (s.nu > 0) {
            throw Failed{{"--nu applies to multiset scales only"}};
        }
        take(make_poset_view(enumerate_counts(*cs), dominates_counts));
    } else {
        throw Failed{{"scale '" + s.scale + "' is " + std::string(kind_name(scale->kind)) +
                      "; poset export needs a count-poset or multiset scale"}};
    }

    if (s.dot == "-") {
        out << text;
        return exit_code::ok;
    }
    if (!s.dot.empty()) {
        std::ofstream file(s.dot, std::ios::binary);
        if (!file || !(file << text)) {
            throw Failed{{"cannot write '" + s.dot + "'"}};
        }
    }
    if (s.json) {
        out << ojson{{"scale", s.scale}, {"elements", elements}, {"covers", covers}, {"layers", layers}}.dump(2)
            << "\n";
    } else {
        out << "scale " << s.scale << ": " << elements << " elements, " << covers << " covers, " << layers
            << " layers\n";
    }
    return exit_code::ok;
}

int cmd_tables_check(const Settings& s, std::ostream& out)
{
    const auto model = load(s);
    std::size_t bad = 0;
    ojson records = ojson::array();
    for (const auto& [id, table] : model.tables) {
        const auto violations = table.monotonicity_violations();
        bad += violations.empty() ? 0 : 1;
        if (s.json) {
            ojson vs = ojson::array();
            for (const auto& v : violations) {
                vs.push_back(v.describe());
            }
            records.push_back({{"table", id}, {"monotone", violations.empty()}, {"violations", std::move(vs)}});
            continue;
        }
        if (violations.empty()) {
            out << "table " << id << ": monotone (" << table.cells().size() << " cells)\n";
        }
        for (const auto& v : violations) {
            out << (s.warn_monotone ? "warning: " : "error: ") << "table " << id << ": " << v.describe() << "\n";
        }
    }
    if (s.json) {
        out << records.dump(2) << "\n";
    }
    if (bad > 0 && !s.warn_monotone) {
        throw Failed{{std::to_string(bad) + " table(s) not monotone"}};
    }
    return exit_code::ok;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Settings s;
    CLI::App app{"Evaluate and rank hierarchical modular systems", "modsys"};
    app.require_subcommand(1);
    app.add_flag("--json", s.json, "Structured output");
    app.add_option("--metric", s.metric, "Multiset distance")->check(CLI::IsMember({"cumL1", "hasse"}));
    app.add_option("--limit", s.limit, "Composition enumeration limit")->check(CLI::PositiveNumber);
    auto* strict = app.add_flag("--strict-monotone", "Non-monotone tables are errors (default)");
    app.add_flag("--warn-monotone", s.warn_monotone, "Non-monotone tables are warnings")->excludes(strict);

    auto model_arg = [&](CLI::App* sub) {
        sub->add_option("model", s.model_path, "Model file or bundled model name")->required();
    };

    auto* validate = app.add_subcommand("validate", "Check a model file");
    model_arg(validate);

    auto* eval = app.add_subcommand("evaluate", "Evaluate one composition");
    model_arg(eval);
    eval->add_option("--composition", s.composition, "Composition name")->required();
    eval->add_option("--method", s.method, "Integration method")->required();

    auto* rank_cmd = app.add_subcommand("rank", "Rank compositions");
    model_arg(rank_cmd);
    rank_cmd->add_option("--method", s.method, "Integration method")->required();
    rank_cmd->add_option("--reduce", s.reduce, "Reduction")
        ->required()
        ->check(CLI::IsMember({"layers", "labelD", "closeness"}));
    rank_cmd->add_option("--composition", s.subset, "Rank only these named compositions");
    rank_cmd->add_flag("--all", s.all, "Rank every enumerated composition");

    auto* poset = app.add_subcommand("poset", "Export a scale poset");
    model_arg(poset);
    poset->add_option("--scale", s.scale, "Scale id")->required();
    poset->add_option("--dot", s.dot, "DOT output path, '-' for stdout");
    poset->add_option("--nu", s.nu, "Extend a multiset scale with compatibility levels 1..nu")
        ->check(CLI::PositiveNumber);

    auto* tables = app.add_subcommand("tables", "Integration table tools");
    tables->require_subcommand(1);
    auto* check = tables->add_subcommand("check", "Check table monotonicity");
    model_arg(check);

    for (auto* sub : {validate, eval, rank_cmd, poset, check}) {
        sub->fallthrough();
    }

    // CLI11 consumes its argument vector from the back.
    std::vector<std::string> reversed;
    if (args.size() > 1) {
        reversed.assign(args.rbegin(), args.rend() - 1);
    }
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_code::ok;
    } catch (const CLI::ParseError& e) {
        err << error_prefix << e.what() << "\n" << app.help();
        return exit_code::usage;
    }

    try {
        if (*validate) {
            return cmd_validate(s, out);
        }
        if (*eval) {
            return cmd_evaluate(s, out);
        }
        if (*rank_cmd) {
            return cmd_rank(s, out);
        }
        if (*poset) {
            return cmd_poset(s, out);
        }
        return cmd_tables_check(s, out);
    } catch (const Failed& f) {
        for (const auto& line : f.lines) {
            err << error_prefix << line << "\n";
        }
    } catch (const Error& e) {
        err << error_prefix << e.what() << "\n";
    }
    return exit_code::failure;
}

} // namespace modsys

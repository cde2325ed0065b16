#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <sstream>

#include "mgb/cli.hpp"

namespace mgb::cli {

namespace {

using nlohmann::json;

const std::map<std::string, std::vector<FieldSpec>>& schema() {
    static const FieldSpec output{"output", FieldType::String, "write the report to this file instead of stdout"};
    static const FieldSpec model{"model", FieldType::Object, "increment model definition"};
    static const FieldSpec trials{"trials", FieldType::Integer, "Monte Carlo trials per cell"};
    static const FieldSpec seed{"seed", FieldType::Integer, "master seed for per-trial substreams"};
    static const FieldSpec delta{"delta", FieldType::Number, "one-sided confidence failure probability"};
    static const FieldSpec workers{"workers", FieldType::Integer, "worker threads"};

    static const std::map<std::string, std::vector<FieldSpec>> table{
        {"bound",
         {{"kind", FieldType::String, "b0 | b1 | b2 | theorem2 | selfnorm"},
          {"x", FieldType::Number, "tail threshold"},
          {"y", FieldType::Number, "truncation level (default 0)"},
          {"v", FieldType::Number, "budget scale (default 1)"},
          {"beta", FieldType::Number, "exponent for theorem2 / selfnorm"},
          {"constant", FieldType::String, "selfnorm constant: paper | derived (default derived)"}}},
        {"curve",
         {{"variant", FieldType::String, "bennett | cosh | beta"},
          {"x", FieldType::Number, "tail threshold"},
          {"y", FieldType::Number, "truncation level (default 0)"},
          {"v", FieldType::Number, "budget scale (default 1)"},
          {"beta", FieldType::Number, "exponent for the beta variant"},
          {"lambda_max", FieldType::Number, "right end of the lambda grid (default 3 lambda*)"},
          {"points", FieldType::Integer, "grid points (default 101)"},
          output}},
        {"simulate", {model, {"cells", FieldType::Array, "event cells"}, trials, seed, delta, workers, output}},
        {"verify",
         {model,
          {"cells", FieldType::Array, "event cells, each with a bound"},
          trials,
          seed,
          delta,
          workers,
          output,
          {"falsify", FieldType::Boolean, "divide every bound by 10 (harness check)"}}},
        {"tightness",
         {{"x", FieldType::Number, "tail threshold (default 1)"},
          {"y", FieldType::Number, "two-point level (default 1)"},
          {"v", FieldType::Number, "budget scale (default 1)"},
          {"n_list", FieldType::Array, "horizons (default [100, 1000, 10000])"},
          {"grid_points", FieldType::Integer, "lambda grid resolution (default 2001)"},
          output}},
        {"selfnorm",
         {model,
          {"beta", FieldType::Number, "self-normalization exponent in (1, 2]"},
          {"x_grid", FieldType::Array, "thresholds (default [1, 2, 3])"},
          {"n", FieldType::Integer, "horizon (default 100)"},
          trials,
          seed,
          delta,
          workers,
          output}},
        {"lemmas",
         {{"models", FieldType::Integer, "random finite-support models (default 1000)"},
          seed,
          {"lambdas", FieldType::Array, "lambda grid"},
          {"levels", FieldType::Array, "truncation levels"},
          {"betas", FieldType::Array, "beta grid"},
          output}},
    };
    return table;
}

bool scalar(FieldType t) {
    return t == FieldType::Number || t == FieldType::Integer || t == FieldType::String || t == FieldType::Boolean;
}

bool type_matches(FieldType t, const json& v) {
    switch (t) {
        case FieldType::Number: return v.is_number();
        case FieldType::Integer: return v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0);
        case FieldType::String: return v.is_string();
        case FieldType::Boolean: return v.is_boolean();
        case FieldType::Object: return v.is_object();
        case FieldType::Array: return v.is_array();
    }
    return false;
}

const char* type_label(FieldType t) {
    switch (t) {
        case FieldType::Number: return "a number";
        case FieldType::Integer: return "a non-negative integer";
        case FieldType::String: return "a string";
        case FieldType::Boolean: return "a boolean";
        case FieldType::Object: return "an object";
        case FieldType::Array: return "an array";
    }
    return "?";
}

std::string flag_name(const std::string& field) {
    std::string out = field;
    for (char& c : out) {
        if (c == '_') c = '-';
    }
    return out;
}

json parse_flag_value(const FieldSpec& field, const std::string& text) {
    std::size_t used = 0;
    try {
        switch (field.type) {
            case FieldType::Number: {
                const double v = std::stod(text, &used);
                if (used == text.size()) return v;
                break;
            }
            case FieldType::Integer: {
                if (!text.empty() && text[0] != '-') {
                    const unsigned long long v = std::stoull(text, &used);
                    if (used == text.size()) return v;
                }
                break;
            }
            case FieldType::String:
                return text;
            default:
                break;
        }
    } catch (const std::exception&) {
    }
    throw ConfigError("--" + flag_name(field.name) + " expects " + type_label(field.type) + ", got '" + text + "'");
}

json load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"bound", "curve", "simulate", "verify", "tightness", "selfnorm", "lemmas"};
    return names;
}

const std::vector<FieldSpec>& command_fields(const std::string& command) {
    const auto it = schema().find(command);
    if (it == schema().end()) throw ConfigError("unknown command '" + command + "'");
    return it->second;
}

void validate_config(const std::string& command, const json& config) {
    const auto& fields = command_fields(command);
    if (!config.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, value] : config.items()) {
        if (key == "command") {
            if (!value.is_string() || value.get<std::string>() != command) {
                throw ConfigError("config 'command' does not match subcommand '" + command + "'");
            }
            continue;
        }
        const auto it = std::find_if(fields.begin(), fields.end(), [&](const FieldSpec& f) { return f.name == key; });
        if (it == fields.end()) throw ConfigError(command + ": unknown config key '" + key + "'");
        if (!type_matches(it->type, value)) throw ConfigError(command + ": '" + key + "' must be " + type_label(it->type));
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Martingale tail bounds: evaluation and Monte Carlo verification", "mgbounds"};
    app.require_subcommand(1);

    struct Pending {
        FieldSpec field;
        std::string text;
        bool flag = false;
        CLI::Option* option = nullptr;
    };
    std::map<std::string, std::vector<Pending>> pending;
    std::map<std::string, std::string> config_paths;

    for (const auto& name : command_names()) {
        CLI::App* sub = app.add_subcommand(name, "run the " + name + " command");
        sub->add_option("--config", config_paths[name], "JSON config document");
        auto& list = pending[name];
        for (const auto& field : command_fields(name)) {
            if (scalar(field.type)) list.push_back({field, {}, false, nullptr});
        }
        for (auto& p : list) {
            const std::string opt = "--" + flag_name(p.field.name);
            if (p.field.type == FieldType::Boolean) {
                p.option = sub->add_flag(opt, p.flag, p.field.help);
            } else {
                p.option = sub->add_option(opt, p.text, p.field.help);
            }
        }
    }

    std::ostringstream help_out;
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitSuccess;
    } catch (const CLI::ParseError& e) {
        err << "mgbounds: " << e.what() << "\n";
        return kExitUsage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        json config = json::object();
        if (!config_paths[command].empty()) config = load_document(config_paths[command]);
        validate_config(command, config);
        for (const auto& p : pending[command]) {
            if (p.option->count() == 0) continue;
            config[p.field.name] = p.field.type == FieldType::Boolean ? json(p.flag) : parse_flag_value(p.field, p.text);
        }
        return run_command(command, config, out, err);
    } catch (const std::exception& e) {
        err << "mgbounds " << command << ": " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace mgb::cli

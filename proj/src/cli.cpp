#include "ladder/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "ladder/duration_solver.hpp"
#include "ladder/exact_solvers.hpp"
#include "ladder/montecarlo.hpp"
#include "ladder/recurrence_analysis.hpp"
#include "ladder/report.hpp"
#include "ladder/validation.hpp"

namespace ladder::cli {
namespace {

struct HelpRequested {
    std::string text;
};

// Flag names accepted on the command line and as keys of the JSON config.
const char* const kFlags[] = {"p",     "r",      "s",        "lower", "upper",  "x",
                              "method", "k",     "tol",      "trials", "horizon", "horizons",
                              "seed",  "format", "max-k",    "workers", "output"};

using RawFlags = std::map<std::string, std::string>;

RawFlags read_command_line(const std::vector<std::string>& args, std::string& command,
                           std::string& config_path) {
    CLI::App app{"Exact solvers and simulation for ladder chains L(r,s,p)", "ladder"};
    app.add_option("command", command, "ruin | duration | simulate | recurrence | validate")
        ->required()
        ->check(CLI::IsMember({"ruin", "duration", "simulate", "recurrence", "validate"}));
    app.add_option("--config", config_path, "JSON file with flag values; flags override it");

    std::map<std::string, std::string> values;
    for (const char* name : kFlags) {
        app.add_option(std::string("--") + name, values[name]);
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    RawFlags given;
    for (const char* name : kFlags) {
        if (app.count(std::string("--") + name) > 0) given[name] = values[name];
    }
    return given;
}

void merge_config_file(const std::string& path, RawFlags& flags) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    Json doc;
    try {
        in >> doc;
    } catch (const Json::exception& e) {
        throw UsageError("config file '" + path + "' is not valid JSON");
    }
    if (!doc.is_object()) throw UsageError("config file must contain a JSON object");
    for (const auto& [key, value] : doc.items()) {
        std::string name = key;
        std::replace(name.begin(), name.end(), '_', '-');
        if (std::find_if(std::begin(kFlags), std::end(kFlags),
                         [&](const char* f) { return name == f; }) == std::end(kFlags)) {
            throw UsageError("unknown key '" + key + "' in config file");
        }
        if (flags.count(name)) continue;  // command line wins
        if (value.is_string()) {
            flags[name] = value.get<std::string>();
        } else if (value.is_array()) {
            std::string joined;
            for (const auto& item : value) {
                if (!joined.empty()) joined += ',';
                joined += item.is_string() ? item.get<std::string>() : item.dump();
            }
            flags[name] = joined;
        } else {
            flags[name] = value.dump();
        }
    }
}

std::int64_t parse_integer(const std::string& name, const std::string& text) {
    std::int64_t value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw UsageError("invalid integer for --" + name + ": '" + text + "'");
    }
    return value;
}

// Non-negative integer; scientific literals such as 1e5 are accepted when integral.
std::uint64_t parse_count(const std::string& name, const std::string& text) {
    std::uint64_t value = 0;
    const auto* end = text.data() + text.size();
    if (const auto [ptr, ec] = std::from_chars(text.data(), end, value);
        ec == std::errc{} && ptr == end) {
        return value;
    }
    try {
        if (is_exact_literal(text)) {
            const Rational r = parse_rational(text);
            if (r >= 0 && r.get_den() == 1 && r.get_num().fits_ulong_p()) {
                return r.get_num().get_ui();
            }
        }
    } catch (const Error&) {
    }
    throw UsageError("invalid count for --" + name + ": '" + text + "'");
}

double parse_real(const std::string& name, const std::string& text) {
    try {
        return parse_rational(text).get_d();
    } catch (const Error&) {
        throw UsageError("invalid number for --" + name + ": '" + text + "'");
    }
}

Command parse_command(const std::string& text) {
    if (text == "ruin") return Command::ruin;
    if (text == "duration") return Command::duration;
    if (text == "simulate") return Command::simulate;
    if (text == "recurrence") return Command::recurrence;
    return Command::validate;
}

const char* command_name(Command c) {
    switch (c) {
        case Command::ruin: return "ruin";
        case Command::duration: return "duration";
        case Command::simulate: return "simulate";
        case Command::recurrence: return "recurrence";
        case Command::validate: return "validate";
    }
    return "unknown";
}

void require(const RawFlags& flags, const char* name, Command command) {
    if (!flags.count(name)) {
        throw UsageError(std::string("missing required flag --") + name + " for '" +
                         command_name(command) + "'");
    }
}

void validate_config(const RunConfig& c) {
    if (c.p <= 0 || c.p >= 1) throw UsageError("p must be in (0,1)");
    if (c.r < 2) throw UsageError("r must be >= 2");
    if (c.s < 2) throw UsageError("s must be >= 2");
    const bool exact = c.command == Command::ruin || c.command == Command::duration;
    if (exact || c.command == Command::simulate) {
        if (*c.lower >= *c.upper) throw UsageError("lower must be < upper");
    }
    if (exact) {
        if (*c.upper - *c.lower < 4) throw UsageError("upper - lower must be >= 4 for exact methods");
        if (c.x && (*c.x < *c.lower || *c.x > *c.upper)) throw UsageError("x must lie in [lower, upper]");
        if (c.method == MethodKind::fixed_point && !(c.tol > 0.0)) throw UsageError("tol must be > 0");
        if (c.k < 0) throw UsageError("k must be >= 0");
    }
    if (c.command != Command::simulate && (c.r != 2 || c.s != 2)) {
        throw UsageError(std::string("'") + command_name(c.command) +
                         "' supports only r = s = 2; use 'simulate' for general chains");
    }
    if (c.command == Command::simulate && (*c.x < *c.lower || *c.x > *c.upper)) {
        throw UsageError("x must lie in [lower, upper]");
    }
    if ((c.command == Command::simulate || c.command == Command::recurrence) && c.trials == 0) {
        throw UsageError("trials must be >= 1");
    }
    if (c.command == Command::validate && (c.max_k < 0 || c.max_k > 24)) {
        throw UsageError("max-k must be in [0, 24]");
    }
}

void emit(const RunConfig& config, std::ostream& out, const std::string& text) {
    if (config.output_path) {
        std::ofstream file(*config.output_path);
        if (!file) throw UsageError("cannot write output file '" + *config.output_path + "'");
        file << text;
    } else {
        out << text;
    }
}

std::string render(const Json& doc) { return doc.dump(2) + "\n"; }

template <typename Report>
std::string as_csv(const Report& report) {
    std::ostringstream os;
    write_csv(os, report);
    return os.str();
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
    std::string command_text, config_path;
    RawFlags flags = read_command_line(args, command_text, config_path);
    if (!config_path.empty()) merge_config_file(config_path, flags);

    RunConfig c;
    c.command = parse_command(command_text);
    require(flags, "p", c.command);
    c.p_text = flags.at("p");
    try {
        c.p = parse_rational(c.p_text);
    } catch (const Error&) {
        throw UsageError("invalid number for --p: '" + c.p_text + "'");
    }
    if (flags.count("r")) c.r = static_cast<int>(parse_integer("r", flags.at("r")));
    if (flags.count("s")) c.s = static_cast<int>(parse_integer("s", flags.at("s")));

    const bool barrier_command = c.command == Command::ruin || c.command == Command::duration ||
                                 c.command == Command::simulate;
    if (barrier_command) {
        require(flags, "lower", c.command);
        require(flags, "upper", c.command);
    }
    if (c.command == Command::simulate) require(flags, "x", c.command);
    if (flags.count("lower")) c.lower = parse_integer("lower", flags.at("lower"));
    if (flags.count("upper")) c.upper = parse_integer("upper", flags.at("upper"));
    if (flags.count("x")) c.x = parse_integer("x", flags.at("x"));

    if (flags.count("method")) {
        try {
            c.method = parse_method(flags.at("method"));
        } catch (const InvalidArgument& e) {
            throw UsageError(e.what());
        }
    }
    if (c.method == MethodKind::finite_horizon &&
        (c.command == Command::ruin || c.command == Command::duration)) {
        require(flags, "k", c.command);
    }
    if (flags.count("k")) c.k = static_cast<int>(parse_integer("k", flags.at("k")));
    if (flags.count("tol")) c.tol = parse_real("tol", flags.at("tol"));
    if (flags.count("trials")) c.trials = parse_count("trials", flags.at("trials"));
    if (flags.count("horizon")) c.horizon = parse_count("horizon", flags.at("horizon"));
    if (flags.count("horizons")) {
        std::stringstream list(flags.at("horizons"));
        for (std::string item; std::getline(list, item, ',');) {
            c.horizons.push_back(parse_count("horizons", item));
        }
    }
    if (flags.count("seed")) c.seed = parse_count("seed", flags.at("seed"));
    if (flags.count("max-k")) c.max_k = static_cast<int>(parse_integer("max-k", flags.at("max-k")));
    if (flags.count("workers")) {
        c.workers = static_cast<unsigned>(parse_count("workers", flags.at("workers")));
    }
    if (flags.count("format")) {
        const auto& f = flags.at("format");
        if (f == "json") c.format = Format::json;
        else if (f == "csv") c.format = Format::csv;
        else throw UsageError("format must be json or csv");
    }
    if (flags.count("output")) c.output_path = flags.at("output");

    validate_config(c);
    return c;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const bool json = config.format == Format::json;
    const auto params = make_params(config.r, config.s, config.p);
    Json doc{{"command", command_name(config.command)}, {"params", params_json(params)}};

    switch (config.command) {
        case Command::ruin: {
            const Barriers barriers{*config.lower, *config.upper};
            const auto solution =
                solve_ruin(params, barriers, {config.method, config.k, config.tol});
            if (!json) {
                emit(config, out, as_csv(solution));
                return kExitOk;
            }
            doc.update(Json(solution));
            if (config.x) {
                doc["at_x"] = {{"x", *config.x},
                               {"alpha", solution.alpha_at(*config.x)},
                               {"beta", solution.beta_at(*config.x)}};
            }
            break;
        }
        case Command::duration: {
            const Barriers barriers{*config.lower, *config.upper};
            const auto solution =
                solve_duration(params, barriers, {config.method, config.k, config.tol});
            if (!json) {
                emit(config, out, as_csv(solution));
                return kExitOk;
            }
            doc.update(Json(solution));
            if (config.x) {
                doc["at_x"] = {{"x", *config.x},
                               {"m", solution.m_at(*config.x)},
                               {"bound", solution.bound_at(*config.x)}};
            }
            break;
        }
        case Command::simulate: {
            const Barriers barriers{*config.lower, *config.upper};
            const MCConfig mc{config.trials,
                              config.horizon ? config.horizon : kDefaultBarrierHorizon,
                              config.seed, config.workers};
            const auto estimates = simulate_barrier(params, barriers, *config.x, mc);
            if (!json) {
                emit(config, out, as_csv(estimates));
                return kExitOk;
            }
            doc.update(Json{{"lower", barriers.lower},
                            {"upper", barriers.upper},
                            {"x", *config.x},
                            {"seed", mc.seed},
                            {"trials", mc.trials},
                            {"horizon", mc.horizon},
                            {"censored", estimates.duration.censored},
                            {"alpha", estimates.alpha},
                            {"beta", estimates.beta},
                            {"duration", estimates.duration}});
            break;
        }
        case Command::recurrence: {
            auto horizons = config.horizons;
            if (horizons.empty()) {
                horizons = config.horizon ? std::vector<std::uint64_t>{config.horizon}
                                          : std::vector<std::uint64_t>{100, 1'000, 10'000,
                                                                       kDefaultReturnHorizon};
            }
            const auto report =
                recurrence_probe(params, horizons, config.trials, config.seed, config.workers);
            if (!json) {
                emit(config, out, as_csv(report));
                return kExitOk;
            }
            doc.update(Json(report));
            doc["seed"] = config.seed;
            doc["trials"] = config.trials;
            break;
        }
        case Command::validate: {
            const auto report = validate(params, config.max_k);
            if (json) {
                doc.update(Json(report));
                emit(config, out, render(doc));
            } else {
                emit(config, out, as_csv(report));
            }
            if (!report.passed()) {
                err << "validate: " << std::count_if(report.checks.begin(), report.checks.end(),
                                                     [](const auto& c) { return !c.pass; })
                    << " check(s) failed\n";
                return kExitFailure;
            }
            return kExitOk;
        }
    }
    emit(config, out, render(doc));
    return kExitOk;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig config;
    try {
        config = parse_args(args);
    } catch (const HelpRequested& help) {
        out << help.text;
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    const auto fail = [&](const char* kind, const Error& e, int code) {
        Json doc{{"error", {{"kind", kind}, {"message", e.what()}}}};
        try {
            emit(config, out, render(doc));
        } catch (const Error&) {
            out << render(doc);
        }
        err << "error: " << e.what() << '\n';
        return code;
    };
    try {
        return run(config, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidArgument& e) {
        return fail("invalid_argument", e, kExitUsage);
    } catch (const ConsistencyError& e) {
        return fail("consistency", e, kExitFailure);
    } catch (const ConvergenceError& e) {
        return fail("convergence", e, kExitFailure);
    }
}

}  // namespace ladder::cli

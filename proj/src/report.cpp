#include "ladder/report.hpp"

#include <ostream>

namespace ladder {
namespace {

std::vector<std::int64_t> grid_of(const Json& j, std::int64_t& lower, std::int64_t& upper) {
    auto grid = j.at("grid").get<std::vector<std::int64_t>>();
    if (grid.empty()) throw InvalidArgument("empty grid in report");
    lower = grid.front();
    upper = grid.back();
    return grid;
}

}  // namespace

void to_json(Json& j, const MethodInfo& m) {
    j = Json{{"kind", std::string(to_string(m.kind))},
             {"k", m.k},
             {"tol", m.tol},
             {"iterations", m.iterations}};
}

void from_json(const Json& j, MethodInfo& m) {
    m.kind = parse_method(j.at("kind").get<std::string>());
    m.k = j.at("k").get<int>();
    m.tol = j.at("tol").get<double>();
    m.iterations = j.at("iterations").get<std::uint64_t>();
}

void to_json(Json& j, const RuinSolution& s) {
    j = Json{{"grid", s.grid()},
             {"alpha", s.alpha},
             {"beta", s.beta},
             {"method", std::string(to_string(s.method.kind))},
             {"method_detail", s.method},
             {"residual", s.residual},
             {"complement_residual", complement_residual(s)}};
}

void from_json(const Json& j, RuinSolution& s) {
    grid_of(j, s.lower, s.upper);
    s.alpha = j.at("alpha").get<std::vector<double>>();
    s.beta = j.at("beta").get<std::vector<double>>();
    s.method = j.at("method_detail").get<MethodInfo>();
    s.residual = j.at("residual").get<double>();
}

void to_json(Json& j, const DurationSolution& s) {
    j = Json{{"grid", s.grid()},
             {"m", s.m},
             {"bound", s.bound},
             {"method", std::string(to_string(s.method.kind))},
             {"method_detail", s.method},
             {"residual", s.residual}};
}

void from_json(const Json& j, DurationSolution& s) {
    grid_of(j, s.lower, s.upper);
    s.m = j.at("m").get<std::vector<double>>();
    s.bound = j.at("bound").get<std::vector<double>>();
    s.method = j.at("method_detail").get<MethodInfo>();
    s.residual = j.at("residual").get<double>();
}

void to_json(Json& j, const MCEstimate& e) {
    j = Json{{"estimate", e.estimate}, {"std_error", e.std_error}, {"trials", e.trials},
             {"censored", e.censored}, {"horizon", e.horizon},     {"seed", e.seed}};
}

void from_json(const Json& j, MCEstimate& e) {
    e.estimate = j.at("estimate").get<double>();
    e.std_error = j.at("std_error").get<double>();
    e.trials = j.at("trials").get<std::uint64_t>();
    e.censored = j.at("censored").get<std::uint64_t>();
    e.horizon = j.at("horizon").get<std::uint64_t>();
    e.seed = j.at("seed").get<std::uint64_t>();
}

void to_json(Json& j, const RecurrenceReport& r) {
    j = Json{{"p", r.p},
             {"drift", r.drift},
             {"estimates", r.estimates},
             {"nondecreasing", r.nondecreasing},
             {"classification", std::string(to_string(r.classification))}};
}

void from_json(const Json& j, RecurrenceReport& r) {
    r.p = j.at("p").get<double>();
    r.drift = j.at("drift").get<double>();
    r.estimates = j.at("estimates").get<std::vector<MCEstimate>>();
    r.nondecreasing = j.at("nondecreasing").get<bool>();
    const auto c = j.at("classification").get<std::string>();
    if (c == to_string(RecurrenceClass::consistent_with_recurrence)) {
        r.classification = RecurrenceClass::consistent_with_recurrence;
    } else if (c == to_string(RecurrenceClass::no_classification)) {
        r.classification = RecurrenceClass::no_classification;
    } else {
        throw InvalidArgument("unknown classification '" + c + "'");
    }
}

void to_json(Json& j, const ValidationCheck& c) {
    j = Json{{"name", c.name},
             {"instance", c.instance},
             {"max_abs_diff", c.max_abs_diff},
             {"tolerance", c.tolerance},
             {"pass", c.pass}};
}

void from_json(const Json& j, ValidationCheck& c) {
    c.name = j.at("name").get<std::string>();
    c.instance = j.at("instance").get<std::string>();
    c.max_abs_diff = j.at("max_abs_diff").get<double>();
    c.tolerance = j.at("tolerance").get<double>();
    c.pass = j.at("pass").get<bool>();
}

void to_json(Json& j, const ValidationReport& r) {
    j = Json{{"p", r.p}, {"max_k", r.max_k}, {"passed", r.passed()}, {"checks", r.checks}};
}

Json params_json(const ChainParams& params) {
    return Json{{"r", params.r()}, {"s", params.s()}, {"p", params.p()}};
}

std::string format_number(double value) { return Json(value).dump(); }

void write_csv(std::ostream& out, const RuinSolution& s) {
    out << "x,alpha,beta\n";
    for (auto x = s.lower; x <= s.upper; ++x) {
        out << x << ',' << format_number(s.alpha_at(x)) << ',' << format_number(s.beta_at(x))
            << '\n';
    }
}

void write_csv(std::ostream& out, const DurationSolution& s) {
    out << "x,m,bound\n";
    for (auto x = s.lower; x <= s.upper; ++x) {
        out << x << ',' << format_number(s.m_at(x)) << ',' << format_number(s.bound_at(x))
            << '\n';
    }
}

void write_csv(std::ostream& out, const BarrierEstimates& e) {
    out << "quantity,estimate,std_error,trials,censored,horizon,seed\n";
    const std::pair<const char*, const MCEstimate*> rows[] = {
        {"alpha", &e.alpha}, {"beta", &e.beta}, {"duration", &e.duration}};
    for (const auto& [name, est] : rows) {
        out << name << ',' << format_number(est->estimate) << ','
            << format_number(est->std_error) << ',' << est->trials << ',' << est->censored << ','
            << est->horizon << ',' << est->seed << '\n';
    }
}

void write_csv(std::ostream& out, const RecurrenceReport& r) {
    out << "horizon,estimate,std_error,trials,censored,seed\n";
    for (const auto& est : r.estimates) {
        out << est.horizon << ',' << format_number(est.estimate) << ','
            << format_number(est.std_error) << ',' << est.trials << ',' << est.censored << ','
            << est.seed << '\n';
    }
}

void write_csv(std::ostream& out, const ValidationReport& r) {
    out << "check,instance,max_abs_diff,tolerance,pass\n";
    for (const auto& c : r.checks) {
        out << c.name << ",\"" << c.instance << "\"," << format_number(c.max_abs_diff) << ','
            << format_number(c.tolerance) << ',' << (c.pass ? "true" : "false") << '\n';
    }
}

}  // namespace ladder

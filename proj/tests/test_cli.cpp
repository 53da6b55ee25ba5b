#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ladder/cli.hpp"
#include "ladder/report.hpp"

using namespace ladder;
using namespace ladder::cli;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = main_entry(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("ladder_cli_test_" + name);
}

std::vector<std::string> csv_column(const std::string& csv, std::size_t column) {
    std::vector<std::string> cells;
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line)) {
        std::istringstream fields(line);
        std::string cell;
        for (std::size_t i = 0; i <= column; ++i) std::getline(fields, cell, ',');
        cells.push_back(cell);
    }
    return cells;
}

}  // namespace

TEST_CASE("parse_args examples") {
    const auto c = parse_args({"ruin", "--p", "0.5", "--lower", "-4", "--upper", "4", "--method",
                               "linear_solve"});
    CHECK(c.command == Command::ruin);
    CHECK(c.p == Rational(1, 2));
    CHECK(*c.lower == -4);
    CHECK(*c.upper == 4);
    CHECK(c.method == MethodKind::linear_solve);

    const auto v = parse_args({"validate", "--p", "1/2", "--max-k", "12"});
    CHECK(v.command == Command::validate);
    CHECK(v.max_k == 12);

    const auto s = parse_args({"simulate", "--p", "0.3", "--r", "3", "--s", "5", "--lower", "-5",
                               "--upper", "5", "--x", "0", "--trials", "1e3", "--seed", "9"});
    CHECK(s.r == 3);
    CHECK(s.s == 5);
    CHECK(s.trials == 1000);

    const auto h = parse_args({"recurrence", "--p", "sqrt(2)-1", "--horizons", "10,100"});
    CHECK(h.horizons == std::vector<std::uint64_t>{10, 100});
    CHECK(parse_args({"ruin", "--p", "0.5", "--lower=-4", "--upper", "4", "--method",
                      "fixed-point"})
              .method == MethodKind::fixed_point);
}

TEST_CASE("usage errors exit 2 with a one-line message") {
    const auto bad_p = invoke({"ruin", "--p", "1.5", "--lower", "-4", "--upper", "4"});
    CHECK(bad_p.code == kExitUsage);
    CHECK(bad_p.err.find("p must be in (0,1)") != std::string::npos);
    CHECK(bad_p.out.empty());

    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"ruin", "--p", "0.5", "--lower", "-4"},
          {"ruin", "--p", "0.5", "--lower", "-4", "--upper", "4", "--bogus", "1"},
          {"explode", "--p", "0.5"},
          {"ruin", "--lower", "-4", "--upper", "4"},
          {"ruin", "--p", "0.5", "--lower", "-1", "--upper", "2"},
          {"ruin", "--p", "0.5", "--r", "3", "--lower", "-4", "--upper", "4"},
          {"ruin", "--p", "0.5", "--lower", "-4", "--upper", "4", "--method", "guess"},
          {"ruin", "--p", "0.5", "--lower", "-4", "--upper", "4", "--method", "finite_horizon"},
          {"ruin", "--p", "abc", "--lower", "-4", "--upper", "4"},
          {"ruin", "--p", "0", "--lower", "-4", "--upper", "4"},
          {"simulate", "--p", "0.5", "--lower", "-4", "--upper", "4", "--x", "9"},
          {"simulate", "--p", "0.5", "--lower", "-4", "--upper", "4", "--x", "0", "--trials", "0"},
          {"duration", "--p", "0.5", "--lower", "-4", "--upper", "4", "--format", "xml"}}) {
        const auto r = invoke(args);
        INFO(args[0], " ", r.err);
        CHECK(r.code == kExitUsage);
        CHECK(!r.err.empty());
        CHECK(r.err.find('\n') == r.err.size() - 1);
    }
}

TEST_CASE("ruin JSON schema") {
    const auto r = invoke({"ruin", "--p", "0.5", "--lower", "-4", "--upper", "4", "--x", "0"});
    REQUIRE(r.code == kExitOk);
    const auto doc = Json::parse(r.out);
    for (const char* key : {"command", "params", "grid", "alpha", "beta", "method", "residual",
                            "complement_residual", "at_x"}) {
        CHECK(doc.contains(key));
    }
    CHECK(doc["method"] == "linear_solve");
    CHECK(doc["grid"].size() == 9);
    CHECK(doc["params"]["p"] == 0.5);
    CHECK(doc["at_x"]["beta"].get<double>() == doctest::Approx(0.7079107505070994));

    const auto solution = doc.get<RuinSolution>();
    CHECK(solution.lower == -4);
    CHECK(solution.beta_at(4) == 1.0);
}

TEST_CASE("simulate echoes its configuration") {
    const std::vector<std::string> args{"simulate", "--p", "0.5", "--lower", "-4", "--upper",
                                        "4", "--x", "0", "--trials", "5000", "--seed", "17"};
    const auto r = invoke(args);
    REQUIRE(r.code == kExitOk);
    const auto doc = Json::parse(r.out);
    CHECK(doc["seed"] == 17);
    CHECK(doc["trials"] == 5000);
    CHECK(doc["horizon"] == 10000);
    CHECK(doc["censored"] == 0);
    const auto beta = doc["beta"].get<MCEstimate>();
    CHECK(beta.trials == 5000);
    CHECK(beta.seed == 17);

    CHECK(invoke(args).out == r.out);
    auto eight = args;
    eight.insert(eight.end(), {"--workers", "8"});
    CHECK(invoke(eight).out == r.out);
}

TEST_CASE("CSV and JSON carry identical numbers") {
    const std::vector<std::string> base{"duration", "--p", "sqrt(2)-1", "--lower", "-5",
                                        "--upper", "6"};
    const auto json = invoke(base);
    auto csv_args = base;
    csv_args.insert(csv_args.end(), {"--format", "csv"});
    const auto csv = invoke(csv_args);
    REQUIRE(json.code == kExitOk);
    REQUIRE(csv.code == kExitOk);
    CHECK(csv.out.rfind("x,m,bound\n", 0) == 0);

    const auto doc = Json::parse(json.out);
    const auto m_cells = csv_column(csv.out, 1);
    REQUIRE(m_cells.size() == doc["m"].size());
    for (std::size_t i = 0; i < m_cells.size(); ++i) {
        CHECK(m_cells[i] == doc["m"][i].dump());
        CHECK(std::stod(m_cells[i]) == doc["m"][i].get<double>());
    }
}

TEST_CASE("JSON round trip is lossless") {
    const auto r = invoke({"ruin", "--p", "0.3", "--lower", "-7", "--upper", "5", "--method",
                           "fixed_point", "--tol", "1e-12"});
    REQUIRE(r.code == kExitOk);
    const auto doc = Json::parse(r.out);
    const auto solution = doc.get<RuinSolution>();
    CHECK(solution.method.kind == MethodKind::fixed_point);
    CHECK(solution.method.tol == 1e-12);
    Json again = solution;
    for (const char* key : {"grid", "alpha", "beta", "residual", "method_detail"}) {
        CHECK(again[key] == doc[key]);
    }
}

TEST_CASE("config file and output path") {
    const auto cfg = temp_file("config.json");
    {
        std::ofstream f(cfg);
        f << R"({"p": "1/2", "lower": -4, "upper": 4, "method": "finite_horizon", "k": 3})";
    }
    const auto from_file = parse_args({"ruin", "--config", cfg.string()});
    CHECK(from_file.k == 3);
    CHECK(from_file.method == MethodKind::finite_horizon);
    CHECK(*from_file.lower == -4);

    const auto overridden = parse_args({"ruin", "--config", cfg.string(), "--k", "7"});
    CHECK(overridden.k == 7);

    {
        std::ofstream f(cfg);
        f << R"({"p": 0.5, "nonsense": 1})";
    }
    CHECK(invoke({"ruin", "--config", cfg.string()}).code == kExitUsage);
    CHECK(invoke({"ruin", "--config", (cfg.string() + ".missing")}).code == kExitUsage);

    const auto out = temp_file("out.csv");
    const auto r = invoke({"ruin", "--p", "0.5", "--lower", "-4", "--upper", "4", "--format",
                           "csv", "--output", out.string()});
    CHECK(r.code == kExitOk);
    CHECK(r.out.empty());
    std::ifstream written(out);
    std::string header;
    std::getline(written, header);
    CHECK(header == "x,alpha,beta");
    std::filesystem::remove(cfg);
    std::filesystem::remove(out);
}

TEST_CASE("validate and recurrence commands") {
    const auto v = invoke({"validate", "--p", "1/2", "--max-k", "12"});
    CHECK(v.code == kExitOk);
    const auto doc = Json::parse(v.out);
    CHECK(doc["passed"] == true);
    CHECK(!doc["checks"].empty());

    const auto rec = invoke({"recurrence", "--p", "sqrt(2)-1", "--horizons", "10,100",
                             "--trials", "2000", "--seed", "4"});
    REQUIRE(rec.code == kExitOk);
    const auto rdoc = Json::parse(rec.out);
    CHECK(rdoc["estimates"].size() == 2);
    CHECK(rdoc.contains("classification"));
    CHECK(rdoc["seed"] == 4);
}

TEST_CASE("module errors produce an error document") {
    const auto r = invoke({"ruin", "--p", "0.5", "--lower", "-4", "--upper", "4", "--method",
                           "fixed_point", "--tol", "1e-300"});
    CHECK(r.code == kExitFailure);
    const auto doc = Json::parse(r.out);
    CHECK(doc["error"]["kind"] == "convergence");
    CHECK(!doc["error"]["message"].get<std::string>().empty());
    CHECK(!r.err.empty());
}

TEST_CASE("help") {
    const auto r = invoke({"--help"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("ruin") != std::string::npos);
}

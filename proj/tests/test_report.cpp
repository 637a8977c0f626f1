#include "doctest.h"

#include "rootdens/report.hpp"

#include "json.hpp"

#include <cstdio>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace rootdens;
using nlohmann::json;

namespace {

ProblemSpec multi_35() {
    ProblemSpec s;
    s.kind = ProblemKind::multi;
    s.generators = {Rat(3), Rat(5)};
    return s;
}

struct CommandResult {
    std::string output;
    int exit_code = -1;
};

CommandResult run_cli(const std::string& args) {
    std::string cmd = std::string(ROOTDENS_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CommandResult res;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.output.append(buf, got);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

long line_count(const std::string& s) {
    long n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

} // namespace

TEST_CASE("rational strings round-trip") {
    for (const Rat& x : {Rat(20, 19), Rat(-3, 7), Rat(5), Rat(0), Rat(1, 1000000)})
        CHECK(parse_rational(rational_string(x)) == x);
}

TEST_CASE("problem strings") {
    CHECK(problem_string(multi_35()) == "multi for generators 3, 5");
    ProblemSpec sc;
    sc.kind = ProblemKind::schinzel;
    sc.generators = {Rat(5)};
    sc.split_primes = {Int(13)};
    CHECK(problem_string(sc) == "schinzel for generators 5 with split primes 13");
    sc.generators.clear();
    sc.split_primes.clear();
    CHECK(problem_string(sc) == "schinzel for generators (none) with split primes (none)");
}

TEST_CASE("density report serialization") {
    auto rep = total_density(multi_35(), 20);

    json j = json::parse(render_density_report(rep, OutputFormat::json));
    CHECK(j["problem"] == "multi for generators 3, 5");
    CHECK(j["verdict"] == "positive");
    CHECK(j["constant_name"] == "D_2");
    CHECK(parse_rational(j["rho"].get<std::string>()) == Rat(1));
    Rat e = make_rational(Int(j["entanglement_num"].get<std::string>(), 10),
                          Int(j["entanglement_den"].get<std::string>(), 10));
    CHECK(e == Rat(100, 91));
    CHECK(j["total"].get<std::string>().substr(0, 12) == "0.1619224175");
    CHECK(j["digits"] == 20);
    CHECK(j["witnesses"]["odd_square_subset"].empty());

    std::string text = render_density_report(rep, OutputFormat::text);
    CHECK(text.find("100/91") != std::string::npos);
    CHECK(text.find("D_2") != std::string::npos);

    std::string csv = render_density_report(rep, OutputFormat::csv);
    CHECK(csv.substr(0, 10) == "key,value\n");
    // The problem cell contains a comma, so it must be quoted.
    CHECK(csv.find("\"multi for generators 3, 5\"") != std::string::npos);

    // Witnesses survive the round trip.
    ProblemSpec bad;
    bad.kind = ProblemKind::multi;
    bad.generators = {Rat(2), Rat(3), Rat(6)};
    auto v = vanishing_verdict(resolve_problem(bad));
    json w = json::parse(render_vanishing_report(bad, v, OutputFormat::json));
    CHECK(w["verdict"] == "naive_zero");
    CHECK(w["witnesses"]["odd_square_subset"] == json::array({0, 1, 2}));
}

TEST_CASE("model report serialization") {
    auto spec = multi_35();
    auto md = finite_model_density(spec);
    Rat restricted = restricted_density(spec, md.primes);
    json j = json::parse(render_model_report(spec, md, restricted, OutputFormat::json));
    CHECK(j["total_states"] == "28800");
    CHECK(j["model_density"] == "13/72");
    CHECK(j["match"] == true);
    std::string text = render_model_report(spec, md, restricted, OutputFormat::text);
    CHECK(text.find("exact") != std::string::npos);
}

TEST_CASE("constants table shapes") {
    std::string csv = render_constants_table(7, 20, OutputFormat::csv);
    CHECK(line_count(csv) == 8); // header plus one row per rank
    std::istringstream is(csv);
    std::string header;
    std::getline(is, header);
    CHECK(header == "rank,surjectivity,simultaneous");
    std::string row;
    std::getline(is, row);
    CHECK(row.substr(0, 2) == "1,");
    long commas = 0;
    for (char c : row)
        if (c == ',') ++commas;
    CHECK(commas == 2);

    json j = json::parse(render_constants_table(2, 10, OutputFormat::json));
    REQUIRE(j.size() == 2);
    CHECK(j[0]["rank"] == 1);
    CHECK(j[0]["surjectivity"] == j[0]["simultaneous"]);

    bool all_ok = false;
    std::string ref = render_reference_check(OutputFormat::text, all_ok);
    CHECK(all_ok);
    CHECK(ref.find("FAIL") == std::string::npos);
}

TEST_CASE("self-test serialization") {
    auto rep = run_self_tests(3, 11);
    json j = json::parse(render_self_test(rep, OutputFormat::json));
    CHECK(j["all_pass"] == true);
    CHECK(j["trials"] == 3);
    CHECK(j["checks"].size() == rep.checks.size());
    std::string text = render_self_test(rep, OutputFormat::text);
    CHECK(text.find("FAIL") == std::string::npos);
}

TEST_CASE("command-line round trip") {
    auto res = run_cli("density --problem rank-r --gens 5 --digits 25 --format json");
    REQUIRE(res.exit_code == 0);
    json j = json::parse(res.output);
    CHECK(j["rho"] == "1/1");
    CHECK(j["entanglement_num"] == "20");
    CHECK(j["entanglement_den"] == "19");
    CHECK(j["constant_name"] == "C_1");

    // The serialized decimal equals the library's own rendering exactly.
    ProblemSpec spec;
    spec.kind = ProblemKind::rank_r;
    spec.generators = {Rat(5)};
    auto rep = total_density(spec, 25);
    CHECK(j["total"] == format_real(rep.total.value, 25));

    auto vanish = run_cli("vanish --gens 5,-15,600,1029 --format json");
    REQUIRE(vanish.exit_code == 0);
    json w = json::parse(vanish.output);
    CHECK(w["verdict"] == "entanglement_zero");
    CHECK(w["witnesses"]["minus_three_subset"] == json::array({0, 1}));

    auto table = run_cli("table --max-rank 7 --digits 12");
    REQUIRE(table.exit_code == 0);
    CHECK(line_count(table.output) == 8);

    CHECK(run_cli("density --gens 0").exit_code == 2);
    CHECK(run_cli("oracle --gens 3,5,7 --problem multi --bound 100").exit_code == 3);
    CHECK(run_cli("bogus-subcommand").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);
}

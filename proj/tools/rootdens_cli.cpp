// rootdens -- exact densities of primitive-root problems, with empirical and
// brute-force crosschecks.
#include "rootdens/errors.hpp"
#include "rootdens/rank1.hpp"
#include "rootdens/report.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace rootdens;

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t comma = s.find(',', start);
        if (comma == std::string::npos) comma = s.size();
        parts.push_back(s.substr(start, comma - start));
        start = comma + 1;
    }
    return parts;
}

std::vector<Rat> parse_generators(const std::string& s) {
    std::vector<Rat> gens;
    for (const auto& part : split_list(s)) gens.push_back(parse_rational(part));
    return gens;
}

std::vector<Int> parse_primes(const std::string& s) {
    std::vector<Int> primes;
    for (const auto& part : split_list(s)) {
        Rat r = parse_rational(part);
        if (r.get_den() != 1) throw invalid_input_error("not an integer: " + part);
        primes.push_back(r.get_num());
    }
    return primes;
}

// Options shared by the subcommands that take a problem description.
struct ProblemOptions {
    std::string kind = "rank-r";
    std::string gens;
    std::string split;
    long factor_bound = default_trial_division_bound;

    void attach(CLI::App* sub) {
        sub->add_option("--problem", kind,
                        "problem kind: rank-r (the group generates everything), "
                        "multi (every generator a primitive root), or schinzel "
                        "(primitive roots plus split primes)")
            ->capture_default_str();
        sub->add_option("--gens", gens,
                        "comma-separated generators, integers or fractions "
                        "(write --gens=-3,5 when the first one is negative)");
        sub->add_option("--split", split, "comma-separated split primes (schinzel only)");
        sub->add_option("--factor-bound", factor_bound,
                        "trial-division bound for factoring the generators")
            ->capture_default_str();
    }

    ProblemSpec spec() const {
        ProblemSpec s;
        s.kind = parse_problem_kind(kind);
        if (!gens.empty()) s.generators = parse_generators(gens);
        if (!split.empty()) s.split_primes = parse_primes(split);
        s.factor_bound = factor_bound;
        validate(s);
        return s;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and empirical densities of primitive-root problems"};
    app.require_subcommand(1);

    long digits = 20;
    std::string format = "text";
    auto add_digits = [&](CLI::App* sub) {
        sub->add_option("--digits", digits, "decimal digits for numerical output")
            ->envname("ROOTDENS_DIGITS")
            ->capture_default_str();
    };
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "output format: text, json, or csv")
            ->capture_default_str();
    };

    // density: the full exact report, optionally compared against a sieve.
    auto* density_cmd = app.add_subcommand(
        "density", "exact density: naive part, correction, assembled value");
    ProblemOptions density_problem;
    density_problem.attach(density_cmd);
    add_digits(density_cmd);
    add_format(density_cmd);
    std::uint64_t sieve_bound = 0;
    long threads = 1;
    long segment_size = default_segment_size;
    density_cmd->add_option("--sieve", sieve_bound,
                            "also sieve all primes up to this bound and compare");
    density_cmd->add_option("--threads", threads, "worker threads for the sieve")
        ->capture_default_str();
    density_cmd->add_option("--segment-size", segment_size, "sieve segment length")
        ->capture_default_str();

    // vanish: just the verdict and its witnesses.
    auto* vanish_cmd =
        app.add_subcommand("vanish", "vanishing verdict with explicit witnesses");
    ProblemOptions vanish_problem;
    vanish_problem.kind = "multi";
    vanish_problem.attach(vanish_cmd);
    add_format(vanish_cmd);

    // oracle: brute-force finite model against the exact restricted density.
    auto* oracle_cmd = app.add_subcommand(
        "oracle", "brute-force finite model vs the exact restricted density");
    ProblemOptions oracle_problem;
    oracle_problem.attach(oracle_cmd);
    add_format(oracle_cmd);
    std::string oracle_primes;
    long state_bound = default_model_bound;
    oracle_cmd->add_option("--primes", oracle_primes,
                           "comma-separated levels to enumerate (must contain "
                           "every critical prime; default exactly those)");
    oracle_cmd->add_option("--bound", state_bound, "largest state space to enumerate")
        ->capture_default_str();

    // constants: the universal constants, or a check of the reference table.
    auto* constants_cmd =
        app.add_subcommand("constants", "universal constants to high precision");
    long max_rank = 7;
    bool check = false;
    constants_cmd->add_option("--max-rank", max_rank, "largest rank to tabulate")
        ->capture_default_str();
    add_digits(constants_cmd);
    add_format(constants_cmd);
    constants_cmd->add_flag("--check", check,
                            "recompute the embedded twenty-digit reference table "
                            "and verify every row");

    // table: same values, comma-separated by default.
    auto* table_cmd =
        app.add_subcommand("table", "constants table, comma-separated by default");
    table_cmd->add_option("--max-rank", max_rank, "largest rank to tabulate")
        ->capture_default_str();
    add_digits(table_cmd);
    table_cmd->add_option("--format", format, "output format: text, json, or csv");

    // verify: randomized identity and invariance checks.
    auto* verify_cmd =
        app.add_subcommand("verify", "randomized identity and invariance checks");
    long trials = 100;
    unsigned long seed = 1;
    verify_cmd->add_option("--trials", trials, "instances per check")
        ->capture_default_str();
    verify_cmd->add_option("--seed", seed, "random seed")->capture_default_str();
    verify_cmd->add_option("--bound", state_bound, "largest state space to enumerate")
        ->capture_default_str();
    add_format(verify_cmd);

    // rank1: the truncated inclusion-exclusion sum over field degrees.
    auto* rank1_cmd = app.add_subcommand(
        "rank1", "inclusion-exclusion over field degrees for one integer generator");
    std::string rank1_gen = "2";
    long n_max = 10000;
    rank1_cmd->add_option("--gen", rank1_gen, "squarefree integer generator > 1")
        ->capture_default_str();
    rank1_cmd->add_option("--terms", n_max, "number of inclusion-exclusion terms")
        ->capture_default_str();
    add_digits(rank1_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        OutputFormat fmt = parse_output_format(format);
        if (density_cmd->parsed()) {
            auto spec = density_problem.spec();
            auto rep = total_density(spec, digits);
            if (sieve_bound > 0) {
                auto emp = empirical_density(spec, sieve_bound, threads, segment_size);
                std::cout << render_density_report(rep, fmt, &emp);
            } else {
                std::cout << render_density_report(rep, fmt);
            }
        } else if (vanish_cmd->parsed()) {
            auto spec = vanish_problem.spec();
            auto v = vanishing_verdict(resolve_problem(spec));
            std::cout << render_vanishing_report(spec, v, fmt);
        } else if (oracle_cmd->parsed()) {
            auto spec = oracle_problem.spec();
            std::vector<Int> primes;
            if (!oracle_primes.empty()) primes = parse_primes(oracle_primes);
            auto rp = resolve_problem(spec);
            auto md = finite_model_density(rp, primes, state_bound);
            Rat restricted = restricted_density(rp, md.primes);
            std::cout << render_model_report(spec, md, restricted, fmt);
            if (md.density != restricted) return 1;
        } else if (constants_cmd->parsed()) {
            if (check) {
                bool all_ok = false;
                std::cout << render_reference_check(fmt, all_ok);
                if (!all_ok) return 1;
            } else {
                std::cout << render_constants_table(max_rank, digits, fmt);
            }
        } else if (table_cmd->parsed()) {
            OutputFormat table_fmt =
                table_cmd->count("--format") ? fmt : OutputFormat::csv;
            std::cout << render_constants_table(max_rank, digits, table_fmt);
        } else if (verify_cmd->parsed()) {
            auto rep = run_self_tests(trials, seed, state_bound);
            std::cout << render_self_test(rep, fmt);
            if (!rep.all_pass) return 1;
        } else if (rank1_cmd->parsed()) {
            Rat gen = parse_rational(rank1_gen);
            if (gen.get_den() != 1)
                throw invalid_input_error("the generator must be an integer");
            auto sum = rank1_inclusion_exclusion(gen.get_num(), n_max);
            PrecisionGuard guard(static_cast<unsigned>(digits) + 5);
            std::cout << "truncated sum: " << format_real(sum.value, digits) << "\n"
                      << "tail bound:    " << sum.tail_bound << "\n";
        }
    } catch (const invalid_input_error& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    } catch (const budget_error& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << std::endl;
        return 1;
    }
    return 0;
}

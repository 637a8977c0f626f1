#include "rootdens/report.hpp"

#include "rootdens/errors.hpp"

#include "json.hpp"

#include <array>
#include <iomanip>
#include <sstream>

namespace rootdens {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string csv_row(std::initializer_list<std::string> cells) {
    std::string row;
    bool first = true;
    for (const auto& cell : cells) {
        if (!first) row += ',';
        row += csv_escape(cell);
        first = false;
    }
    row += '\n';
    return row;
}

std::string sci_string(const Real& x) {
    return x.str(2, std::ios_base::scientific);
}

std::string double_string(double x) {
    std::ostringstream os;
    os << std::setprecision(10) << x;
    return os.str();
}

std::string generators_string(const std::vector<Rat>& gens) {
    std::ostringstream os;
    for (std::size_t i = 0; i < gens.size(); ++i) os << (i ? ", " : "") << gens[i];
    return os.str();
}

std::string primes_string(const std::vector<Int>& primes) {
    std::ostringstream os;
    for (std::size_t i = 0; i < primes.size(); ++i) os << (i ? ", " : "") << primes[i];
    return os.str();
}

ordered_json witnesses_json(const VanishingReport& v) {
    ordered_json w;
    w["odd_square_subset"] = v.odd_square_subset;
    w["minus_three_subset"] = v.minus_three_subset;
    w["rank3"] = v.rank3;
    w["cube_generator"] = v.cube_generator;
    w["exhaustive_check"] = v.exhaustive_check;
    return w;
}

void witness_text(std::ostringstream& os, const VanishingReport& v) {
    if (v.verdict == Verdict::naive_zero && !v.odd_square_subset.empty()) {
        os << "witness:        generators {";
        for (std::size_t i = 0; i < v.odd_square_subset.size(); ++i)
            os << (i ? ", " : "") << v.odd_square_subset[i];
        os << "} (odd-size subset with square product)\n";
    }
    if (v.verdict == Verdict::entanglement_zero) {
        os << "witness:        generators {";
        for (std::size_t i = 0; i < v.minus_three_subset.size(); ++i)
            os << (i ? ", " : "") << v.minus_three_subset[i];
        os << "} multiply into the square class of -3\n";
        os << "cube rank:      " << v.rank3 << (v.cube_generator ? ", with a cube generator" : "")
           << (v.exhaustive_check ? ", confirmed by functional enumeration" : "") << "\n";
    }
}

void witness_csv(std::ostringstream& os, const VanishingReport& v) {
    std::ostringstream odd, three;
    for (std::size_t i = 0; i < v.odd_square_subset.size(); ++i)
        odd << (i ? " " : "") << v.odd_square_subset[i];
    for (std::size_t i = 0; i < v.minus_three_subset.size(); ++i)
        three << (i ? " " : "") << v.minus_three_subset[i];
    os << csv_row({"odd_square_subset", odd.str()});
    os << csv_row({"minus_three_subset", three.str()});
    os << csv_row({"rank3", std::to_string(v.rank3)});
    os << csv_row({"cube_generator", v.cube_generator ? "true" : "false"});
    os << csv_row({"exhaustive_check", v.exhaustive_check ? "true" : "false"});
}

ordered_json empirical_json(const EmpiricalReport& emp) {
    ordered_json e;
    e["bound"] = emp.bound;
    e["eligible"] = emp.eligible;
    e["qualifying"] = emp.qualifying;
    e["observed"] = emp.observed;
    e["predicted"] = emp.predicted;
    e["deviation"] = emp.deviation;
    e["heuristic_sigma"] = emp.heuristic_sigma;
    return e;
}

} // namespace

OutputFormat parse_output_format(const std::string& name) {
    if (name == "text") return OutputFormat::text;
    if (name == "json") return OutputFormat::json;
    if (name == "csv") return OutputFormat::csv;
    throw invalid_input_error("unknown output format: " + name);
}

std::string problem_string(const ProblemSpec& spec) {
    std::ostringstream os;
    os << problem_kind_name(spec.kind) << " for generators "
       << (spec.generators.empty() ? "(none)" : generators_string(spec.generators));
    if (spec.kind == ProblemKind::schinzel)
        os << " with split primes "
           << (spec.split_primes.empty() ? "(none)" : primes_string(spec.split_primes));
    return os.str();
}

std::string render_density_report(const DensityReport& rep, OutputFormat format,
                                  const EmpiricalReport* emp) {
    const std::string constant_value = format_real(rep.constant.value, rep.digits);
    const std::string total_value = format_real(rep.total.value, rep.digits);
    const std::string error_value = sci_string(rep.total.error_bound);
    switch (format) {
    case OutputFormat::json: {
        ordered_json j;
        j["problem"] = problem_string(rep.spec);
        j["verdict"] = verdict_name(rep.vanishing.verdict);
        j["rho"] = rational_string(rep.naive.rho);
        j["constant_name"] = rep.naive.family.name;
        j["constant"] = constant_value;
        j["entanglement_num"] = rep.correction.get_num().get_str();
        j["entanglement_den"] = rep.correction.get_den().get_str();
        j["total"] = total_value;
        j["error_bound"] = error_value;
        j["digits"] = rep.digits;
        j["witnesses"] = witnesses_json(rep.vanishing);
        if (emp) j["empirical"] = empirical_json(*emp);
        return j.dump(2) + "\n";
    }
    case OutputFormat::csv: {
        std::ostringstream os;
        os << csv_row({"key", "value"});
        os << csv_row({"problem", problem_string(rep.spec)});
        os << csv_row({"verdict", verdict_name(rep.vanishing.verdict)});
        os << csv_row({"rho", rational_string(rep.naive.rho)});
        os << csv_row({"constant_name", rep.naive.family.name});
        os << csv_row({"constant", constant_value});
        os << csv_row({"entanglement_num", rep.correction.get_num().get_str()});
        os << csv_row({"entanglement_den", rep.correction.get_den().get_str()});
        os << csv_row({"total", total_value});
        os << csv_row({"error_bound", error_value});
        witness_csv(os, rep.vanishing);
        if (emp) {
            os << csv_row({"sieve_bound", std::to_string(emp->bound)});
            os << csv_row({"eligible", std::to_string(emp->eligible)});
            os << csv_row({"qualifying", std::to_string(emp->qualifying)});
            os << csv_row({"observed", double_string(emp->observed)});
            os << csv_row({"predicted", double_string(emp->predicted)});
            os << csv_row({"deviation", double_string(emp->deviation)});
            os << csv_row({"heuristic_sigma", double_string(emp->heuristic_sigma)});
        }
        return os.str();
    }
    case OutputFormat::text:
        break;
    }
    std::ostringstream os;
    os << "problem:        " << problem_string(rep.spec) << "\n";
    os << "verdict:        " << verdict_name(rep.vanishing.verdict) << "\n";
    witness_text(os, rep.vanishing);
    os << "naive density:  " << rational_string(rep.naive.rho) << " * " << rep.naive.family.name
       << "\n";
    os << "constant:       " << rep.naive.family.name << " = " << constant_value << "\n";
    os << "correction E:   " << rational_string(rep.correction) << "\n";
    os << "total density:  " << total_value << "  (error bound " << error_value << ")\n";
    if (emp) {
        os << "sieve bound:    " << emp->bound << "\n";
        os << "eligible:       " << emp->eligible << "\n";
        os << "qualifying:     " << emp->qualifying << "\n";
        os << "observed:       " << double_string(emp->observed) << "\n";
        os << "predicted:      " << double_string(emp->predicted) << "\n";
        os << "deviation:      " << double_string(emp->deviation) << " ("
           << double_string(emp->heuristic_sigma) << " heuristic sigma)\n";
    }
    return os.str();
}

std::string render_vanishing_report(const ProblemSpec& spec, const VanishingReport& v,
                                    OutputFormat format) {
    switch (format) {
    case OutputFormat::json: {
        ordered_json j;
        j["problem"] = problem_string(spec);
        j["verdict"] = verdict_name(v.verdict);
        j["witnesses"] = witnesses_json(v);
        return j.dump(2) + "\n";
    }
    case OutputFormat::csv: {
        std::ostringstream os;
        os << csv_row({"key", "value"});
        os << csv_row({"problem", problem_string(spec)});
        os << csv_row({"verdict", verdict_name(v.verdict)});
        witness_csv(os, v);
        return os.str();
    }
    case OutputFormat::text:
        break;
    }
    std::ostringstream os;
    os << "problem:        " << problem_string(spec) << "\n";
    os << "verdict:        " << verdict_name(v.verdict) << "\n";
    witness_text(os, v);
    return os.str();
}

std::string render_model_report(const ProblemSpec& spec, const ModelDensity& md,
                                const Rat& restricted, OutputFormat format) {
    const bool match = md.density == restricted;
    switch (format) {
    case OutputFormat::json: {
        ordered_json j;
        j["problem"] = problem_string(spec);
        j["primes"] = primes_string(md.primes);
        j["total_states"] = int_string(md.total_states);
        j["kernel_states"] = int_string(md.kernel_states);
        j["qualifying_states"] = int_string(md.qualifying_states);
        j["model_density"] = rational_string(md.density);
        j["restricted_density"] = rational_string(restricted);
        j["match"] = match;
        return j.dump(2) + "\n";
    }
    case OutputFormat::csv: {
        std::ostringstream os;
        os << csv_row({"key", "value"});
        os << csv_row({"problem", problem_string(spec)});
        os << csv_row({"primes", primes_string(md.primes)});
        os << csv_row({"total_states", int_string(md.total_states)});
        os << csv_row({"kernel_states", int_string(md.kernel_states)});
        os << csv_row({"qualifying_states", int_string(md.qualifying_states)});
        os << csv_row({"model_density", rational_string(md.density)});
        os << csv_row({"restricted_density", rational_string(restricted)});
        os << csv_row({"match", match ? "true" : "false"});
        return os.str();
    }
    case OutputFormat::text:
        break;
    }
    std::ostringstream os;
    os << "problem:            " << problem_string(spec) << "\n";
    os << "levels:             " << primes_string(md.primes) << "\n";
    os << "states:             " << int_string(md.total_states) << "\n";
    os << "kernel states:      " << int_string(md.kernel_states) << "\n";
    os << "qualifying states:  " << int_string(md.qualifying_states) << "\n";
    os << "model density:      " << rational_string(md.density) << "\n";
    os << "restricted density: " << rational_string(restricted) << "\n";
    os << "agreement:          " << (match ? "exact" : "MISMATCH") << "\n";
    return os.str();
}

std::string render_constants_table(long max_rank, long digits, OutputFormat format) {
    if (max_rank < 1 || max_rank > 64)
        throw invalid_input_error("table rank out of range");
    std::vector<std::array<std::string, 3>> rows;
    for (long r = 1; r <= max_rank; ++r) {
        auto c = surjectivity_constant(r, digits);
        auto d = simultaneous_constant(r, digits);
        rows.push_back({std::to_string(r), format_real(c.value, digits),
                        format_real(d.value, digits)});
    }
    switch (format) {
    case OutputFormat::json: {
        ordered_json j = ordered_json::array();
        for (const auto& row : rows) {
            ordered_json entry;
            entry["rank"] = std::stol(row[0]);
            entry["surjectivity"] = row[1];
            entry["simultaneous"] = row[2];
            j.push_back(entry);
        }
        return j.dump(2) + "\n";
    }
    case OutputFormat::csv: {
        std::ostringstream os;
        os << csv_row({"rank", "surjectivity", "simultaneous"});
        for (const auto& row : rows) os << csv_row({row[0], row[1], row[2]});
        return os.str();
    }
    case OutputFormat::text:
        break;
    }
    std::ostringstream os;
    std::size_t width = 12;
    for (const auto& row : rows) width = std::max({width, row[1].size(), row[2].size()});
    os << std::left << std::setw(6) << "rank" << std::setw(width + 2) << "surjectivity"
       << "simultaneous" << "\n";
    for (const auto& row : rows)
        os << std::left << std::setw(6) << row[0] << std::setw(width + 2) << row[1] << row[2]
           << "\n";
    return os.str();
}

std::string render_reference_check(OutputFormat format, bool& all_ok) {
    auto checks = check_reference_table();
    all_ok = true;
    for (const auto& c : checks) all_ok = all_ok && c.ok;
    switch (format) {
    case OutputFormat::json: {
        ordered_json j;
        j["checks"] = ordered_json::array();
        for (const auto& c : checks) {
            ordered_json entry;
            entry["name"] = c.name;
            entry["expected"] = c.expected;
            entry["computed"] = c.computed;
            entry["ok"] = c.ok;
            j["checks"].push_back(entry);
        }
        j["all_ok"] = all_ok;
        return j.dump(2) + "\n";
    }
    case OutputFormat::csv: {
        std::ostringstream os;
        os << csv_row({"name", "expected", "computed", "ok"});
        for (const auto& c : checks)
            os << csv_row({c.name, c.expected, c.computed, c.ok ? "true" : "false"});
        return os.str();
    }
    case OutputFormat::text:
        break;
    }
    std::ostringstream os;
    for (const auto& c : checks)
        os << (c.ok ? "PASS " : "FAIL ") << std::left << std::setw(5) << c.name
           << " reference " << c.expected << "  computed " << c.computed << "\n";
    os << (all_ok ? "all reference values reproduced" : "REFERENCE MISMATCH") << "\n";
    return os.str();
}

std::string render_self_test(const SelfTestReport& rep, OutputFormat format) {
    switch (format) {
    case OutputFormat::json: {
        ordered_json j;
        j["seed"] = rep.seed;
        j["trials"] = rep.trials;
        j["checks"] = ordered_json::array();
        for (const auto& c : rep.checks) {
            ordered_json entry;
            entry["name"] = c.name;
            entry["instances"] = c.instances;
            entry["pass"] = c.pass;
            entry["detail"] = c.detail;
            j["checks"].push_back(entry);
        }
        j["all_pass"] = rep.all_pass;
        return j.dump(2) + "\n";
    }
    case OutputFormat::csv: {
        std::ostringstream os;
        os << csv_row({"name", "instances", "pass", "detail"});
        for (const auto& c : rep.checks)
            os << csv_row({c.name, std::to_string(c.instances), c.pass ? "true" : "false",
                           c.detail});
        return os.str();
    }
    case OutputFormat::text:
        break;
    }
    std::ostringstream os;
    os << "seed " << rep.seed << ", " << rep.trials << " trials per check\n";
    for (const auto& c : rep.checks) {
        os << (c.pass ? "PASS " : "FAIL ") << c.name << " [" << c.instances << " instances]";
        if (!c.detail.empty()) os << "  counterexample: " << c.detail;
        os << "\n";
    }
    os << (rep.all_pass ? "all checks passed" : "CHECKS FAILED") << "\n";
    return os.str();
}

} // namespace rootdens

// report.hpp -- serialization of the computed reports: text for humans, JSON
// with stable keys for machines, CSV for the constants table.
#pragma once

#include "rootdens/density.hpp"
#include "rootdens/model.hpp"
#include "rootdens/selftest.hpp"
#include "rootdens/sieve.hpp"

#include <string>

namespace rootdens {

enum class OutputFormat { text, json, csv };

OutputFormat parse_output_format(const std::string& name);

// One-line summary of the problem (kind plus generators).
std::string problem_string(const ProblemSpec& spec);

// The full density report; `emp` appends the empirical sieve comparison.
std::string render_density_report(const DensityReport& rep, OutputFormat format,
                                  const EmpiricalReport* emp = nullptr);

// Vanishing verdict with witnesses.
std::string render_vanishing_report(const ProblemSpec& spec, const VanishingReport& v,
                                    OutputFormat format);

// Finite-model oracle result side by side with the exact restricted density.
std::string render_model_report(const ProblemSpec& spec, const ModelDensity& md,
                                const Rat& restricted, OutputFormat format);

// The constants C_r / D_r for r = 1..max_rank at the given precision.  CSV
// has one data row per rank with three columns.
std::string render_constants_table(long max_rank, long digits, OutputFormat format);

// Recomputation of the embedded twenty-digit reference table; `all_ok`
// receives the conjunction of the per-row checks.
std::string render_reference_check(OutputFormat format, bool& all_ok);

// Self-test outcome.
std::string render_self_test(const SelfTestReport& rep, OutputFormat format);

} // namespace rootdens

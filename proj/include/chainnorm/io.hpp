#pragma once

#include "chainnorm/chain.hpp"
#include "chainnorm/complex.hpp"
#include "chainnorm/forms.hpp"
#include "chainnorm/lebesgue.hpp"
#include "chainnorm/norm_bounds.hpp"

#include <json.hpp>

#include <string>
#include <variant>
#include <vector>

namespace chainnorm {

using Json = nlohmann::ordered_json;

/// Serializes with insertion-ordered keys and numbers at 17 significant
/// digits, so identical inputs produce byte-identical files.
std::string dump_json17(const Json& value, int indent = 0);

std::string format_double17(double v);

// ---- shared file formats ---------------------------------------------------

// { "n": int, "m": int, "terms": [ { "coef": number, "vertices": [[x,...], ...] } ] }
Json chain_to_json(const SimplicialChain& chain);
SimplicialChain chain_from_json(const Json& j);

// { "degree": n, "ambient": m, "components": { "1,3": [ { "coef": c, "powers": [e...] } ] } }
// component keys are 1-based increasing axis tuples
Json form_to_json(const PolynomialForm& form);
PolynomialForm form_from_json(const Json& j);

// { "lambda": number, "planes": [ { "chain": <chain>, "children": [...] } ] }
Json witness_to_json(const SpanningWitness& witness);
SpanningWitness witness_from_json(const Json& j);

// { "pieces": [ { "a": number, "b": number, "v": number } ] }
Json step_to_json(const StepFunction& f);
StepFunction step_from_json(const Json& j);

// { "m": int, "base_dim": int, "cells": { "<dim>": [ [[x,...],...], ... ] } }
Json complex_to_json(const SpanningComplex& complex);
SpanningComplex complex_from_json(const Json& j);

// ---- experiment reports ----------------------------------------------------

using ReportValue = std::variant<double, std::string, bool>;
using ReportRow = std::vector<std::pair<std::string, ReportValue>>;

struct ExperimentReport {
    std::string name;
    std::vector<std::pair<std::string, ReportValue>> parameters;
    std::vector<ReportRow> rows;
    std::string verdict;  // pass | fail | diverged
    std::vector<std::pair<std::string, double>> tolerances;

    std::string to_json_text() const;
    static ExperimentReport from_json_text(const std::string& text);

    /// CSV of the rows (header from the first row's keys).
    std::string to_csv() const;
};

// ---- files -----------------------------------------------------------------

/// Parses a JSON file; parse errors carry the 1-based line number.
Json read_json_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace chainnorm

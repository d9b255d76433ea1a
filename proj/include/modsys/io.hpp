#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "modsys/model.hpp"
#include "modsys/poset.hpp"

namespace modsys {

struct ParseError {
    enum class Kind { Syntax, Schema, Reference };
    Kind kind;
    /// 1-based line/column for syntax errors; 0 otherwise.
    int line = 0;
    int column = 0;
    /// JSON pointer for schema and reference errors.
    std::string path;
    std::string message;

    std::string describe() const;
};

struct ParseResult {
    std::optional<Model> model;
    std::vector<ParseError> errors;

    bool ok() const noexcept { return model.has_value(); }
};

/// JSON model text (// comments allowed) -> model, or every error found. Never partial.
ParseResult parse_model(std::string_view text);
ParseResult load_model(const std::string& path);

/// Canonical JSON text of a model.
std::string serialize_model(const Model& model);

std::string export_dot(const PosetView<CountVector>& poset, std::string_view name = "poset");
std::string export_dot(const PosetView<QualityVector>& poset, std::string_view name = "poset");

/// Line-oriented rank report.
std::string render_rank(const RankReport& report, const Model& model);
std::string render_rank_json(const RankReport& report);

} // namespace modsys

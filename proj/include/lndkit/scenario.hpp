#pragma once

#include "lndkit/errors.hpp"
#include "lndkit/report.hpp"
#include "lndkit/runner.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lndkit {

// Syntax or reference error in a scenario file, with 1-based line and column.
class ScenarioError : public Error {
public:
    ScenarioError(const std::string& message, int line, int column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
          line_(line), column_(column)
    {
    }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

struct ScenarioToken {
    enum class Kind { Word, Number, String, Punct };
    Kind kind;
    std::string text;
    int line = 0;
    int column = 0;
};

struct SchemeDecl {
    std::string name;
    std::vector<std::string> vars;
    std::vector<std::string> params;
    std::vector<std::string> inverted;
    std::optional<std::pair<std::string, unsigned>> roots;
    std::vector<std::string> relations;
};

struct DerivationDecl {
    std::string name;
    std::string scheme;
    std::vector<std::pair<std::string, std::string>> images;
};

struct MorphismDecl {
    std::string name;
    std::string source;
    std::string target;
    std::vector<std::pair<std::string, std::string>> images;
};

struct TransitionDecl {
    std::size_t i = 0;
    std::size_t j = 0;
    std::string numerator;
    std::string overlap;
    unsigned pole = 1;
};

struct CoverDecl {
    std::string name;
    std::string scheme;
    std::vector<std::string> charts;  // localizing elements
    std::vector<TransitionDecl> transitions;
};

struct CheckDecl {
    std::string kind;
    std::vector<std::string> targets;  // declared names or construction name and integers
    std::vector<std::string> strings;  // quoted polynomial arguments
    std::map<std::string, std::string> options;
    int line = 0;
};

// A parsed scenario: declarations plus checks in file order. `lines` keeps the
// token stream and comment of every line for formatting.
struct Scenario {
    std::vector<SchemeDecl> schemes;
    std::vector<DerivationDecl> derivations;
    std::vector<MorphismDecl> morphisms;
    std::vector<CoverDecl> covers;
    std::vector<CheckDecl> checks;

    struct Line {
        std::vector<ScenarioToken> tokens;
        std::string comment;  // text after '#'
        bool has_comment = false;
    };
    std::vector<Line> lines;

    const SchemeDecl* scheme(std::string_view name) const;
    const DerivationDecl* derivation(std::string_view name) const;
    const MorphismDecl* morphism(std::string_view name) const;
    const CoverDecl* cover(std::string_view name) const;
};

// Throws ScenarioError.
Scenario parse_scenario(std::string_view source);

// One report per check, in file order.
std::vector<Report> run_scenario(const Scenario& s, const RunOptions& options = {});

// Canonical text of a scenario; parse_scenario(format_scenario(s)) is equivalent
// to s and formatting is idempotent.
std::string format_scenario(const Scenario& s);

}  // namespace lndkit

#pragma once

// ============================================================================
// Workspace files: one conformal algebra (referred to as T), one bimodule
// over it (U), an optional twist 2-cochain (the `cocycle` block, H), plus
// named auxiliary maps (cochains between powers of T/U) and elements.
//
// Two interchangeable encodings share one polynomial grammar (MPoly::parse /
// MPoly::str):
//   * a line-oriented text form made of blocks terminated by `end`, with
//     `#` comments and 1-based `keyword indices... : poly ; poly ; ...`
//     table lines (missing entries are zero);
//   * a JSON mirror with the same field names; the loader sniffs a leading
//     '{' to pick the decoder.
// Parse and shape problems throw ParseError with file:line context (text
// form) or a path description (JSON form).
// ============================================================================

#include <ccalg/linf.hpp>

#include <json.hpp>

#include <map>
#include <stdexcept>
#include <string>

namespace ccalg {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A named cochain between powers of the two spaces: `from`/`to` are "T" or
// "U". Operators are the arity-1 maps with from = "U", to = "T".
struct NamedMap {
    std::string from = "U";
    std::string to = "T";
    Cochain c;
};

struct NamedElement {
    std::string space = "T";
    Element v;
};

struct Workspace {
    ConformalAlgebra algebra;  // T
    ConformalBimodule bimodule; // U (over T)
    Cochain cocycle;           // H: arity 2, T-arguments, U-values; zero if absent
    std::map<std::string, NamedMap> maps;
    std::map<std::string, NamedElement> elements;
    bool has_algebra = false;
    bool has_bimodule = false;
    bool has_cocycle = false;

    int rank_of(const std::string& space) const;
    const std::vector<std::string>& names_of(const std::string& space) const;

    // The bundled (T, U, H) context; requires algebra and bimodule blocks.
    SumSpace sum() const;

    // Lookups that throw ParseError naming the missing entry.
    const NamedMap& map_named(const std::string& name) const;
    const NamedElement& element_named(const std::string& name) const;
};

// Decoders. `display_name` prefixes diagnostics (usually the file name).
Workspace parse_workspace(const std::string& content, const std::string& display_name);
Workspace workspace_from_json(const nlohmann::json& j, const std::string& display_name);
Workspace load_workspace(const std::string& path);

// Encoders (deterministic: sorted names, index order, canonical polynomials).
std::string workspace_to_text(const Workspace& w);
nlohmann::json workspace_to_json(const Workspace& w);

// Sparse JSON object {"i j ...": ["poly", ...]} of a cochain's table.
nlohmann::json cochain_values_json(const Cochain& c);

// Human-readable table listing, one `f(args) = sum` line per nonzero entry.
std::string cochain_to_text(const Cochain& c, const std::string& name,
                            const std::vector<std::string>& src_names,
                            const std::vector<std::string>& tgt_names);

struct ValidationReport {
    CheckResult algebra;  // conformal associativity of T
    CheckResult bimodule; // the three bimodule axioms of U
    CheckResult cocycle;  // the 2-cocycle condition on H
    bool ok = false;
};

ValidationReport validate_workspace(const Workspace& w);

} // namespace ccalg

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rigidconv/fuchsian.hpp"

namespace rigidconv {

/// A Fuchsian system plus optional metadata, as stored on disk.
struct SystemDocument {
    FuchsianSystem system;
    std::string name;
    std::string description;
};

/// Parses and validates a system document. Errors carry the JSON field
/// path of the offending value ("points[1]", "residues[0][1][0]", ...).
SystemDocument parse_document(const std::string& text);
FuchsianSystem parse_system(const std::string& text);

/// Canonical emission: lowest terms, "a/b" strings, fixed key order.
nlohmann::json document_json(const SystemDocument& doc);
nlohmann::json system_json(const FuchsianSystem& f);
std::string emit_document(const SystemDocument& doc);

/// Rank-2 rigid family: mc_lambda of the rank-one system with exponent e0
/// at 0 and e1 at 1. Exponents 0 and e_i + lambda at the finite points,
/// -(e0+e1+lambda) and -lambda at infinity.
FuchsianSystem hypergeometric_family(const Rational& e0, const Rational& e1,
                                     const Rational& lambda);

/// Shipped example corpus (every acceptance fixture references an entry).
const std::vector<SystemDocument>& corpus();
const SystemDocument& corpus_get(const std::string& name);
std::vector<std::string> corpus_names();

} // namespace rigidconv

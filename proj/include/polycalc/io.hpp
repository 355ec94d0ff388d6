#pragma once

/// @file io.hpp
/// JSON file formats for every domain type (documented in docs/formats.md).
///
/// Every document carries a "kind". Label-keyed maps use the compact JSON
/// text of the label as the key, so `"a"` is keyed `"\"a\""` and `[0,1]` is
/// keyed `"[0,1]"`. Serialization is canonical: sorted keys, FinSet order
/// for arrays, two-space indentation, trailing newline.

#include <functional>
#include <optional>
#include <string>

#include <json.hpp>

#include "polycalc/bicomodule.hpp"
#include "polycalc/coalgebra.hpp"
#include "polycalc/comonoid.hpp"
#include "polycalc/fincat.hpp"
#include "polycalc/finset.hpp"
#include "polycalc/poly.hpp"
#include "polycalc/presheaf.hpp"

namespace polycalc::io {

using Json = nlohmann::json;

/// Canonical text of a document.
std::string dump(const Json& j);
/// Parses JSON text; syntax errors become SchemaError at path "/".
Json parse(const std::string& text);
Json read_file(const std::string& path);
void write_file(const std::string& path, const Json& j);

/// Loads the document a reference names. References are file paths relative
/// to the directory of the referring file.
using Resolver = std::function<Json(const std::string& ref)>;
/// Resolver reading files relative to `base_dir`.
Resolver file_resolver(const std::string& base_dir);
/// Resolver that rejects every reference.
Resolver no_references();

/// Kind tag of a document; SchemaError when absent.
std::string kind_of(const Json& j);

Json to_json(const Label& l);
Label label_from_json(const Json& j, const std::string& path = "");
/// Map key of a label.
std::string key_of(const Label& l);

Json to_json(const FinSet& s);
FinSet finset_from_json(const Json& j, const std::string& path = "");
Json to_json(const FinFn& f);
FinFn finfn_from_json(const Json& j, const std::string& path = "");
Json to_json(const FinCat& c);
/// A composable pair without an entry is a SchemaError naming the pair.
/// With `check`, failing category laws are a DomainError.
FinCat fincat_from_json(const Json& j, const std::string& path = "", bool check = true);
Json to_json(const psh::Presheaf& x);
/// With `check`, failing functoriality is a DomainError.
psh::Presheaf presheaf_from_json(const Json& j, const std::string& path = "", bool check = true);
/// Both presheaves must share the base; naturality is checked.
Json to_json(const psh::PshMor& f);
psh::PshMor pshmor_from_json(const Json& j, const std::string& path = "");

/// Symbolic products are written out in full.
Json to_json(const Poly& p);
Poly poly_from_json(const Json& j, const std::string& path = "");
Json to_json(const PolyMor& m);
PolyMor polymor_from_json(const Json& j, const std::string& path = "");

/// Shape-checked only; the comonoid laws are left to comonoid_check.
Json to_json(const Comonoid& c);
Comonoid comonoid_from_json(const Json& j, const std::string& path = "", const Resolver& resolve = no_references());

/// Comonoid fields may be inline documents or references. The comonoids and
/// the bicomodule are validated after resolution.
Json to_json(const Bicomodule& b);
Bicomodule bicomodule_from_json(const Json& j, const std::string& path = "",
                                const Resolver& resolve = no_references());

Json to_json(const TypedPoly& t);
TypedPoly typed_from_json(const Json& j, const std::string& path = "");

/// The comonoid may be a reference; it and the coalgebra are not law-checked here.
Json to_json(const Coalgebra& x);
Coalgebra coalgebra_from_json(const Json& j, const std::string& path = "", const Resolver& resolve = no_references());

/// Decodes a document of any kind and serializes it again. References stay
/// references, so canonical files come back byte-identical.
Json roundtrip(const Json& j, const Resolver& resolve = no_references());

}  // namespace polycalc::io

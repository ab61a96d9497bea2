#pragma once

#include <string>
#include <variant>

#include "fibrato/algebra.hpp"
#include "fibrato/fincat.hpp"
#include "fibrato/geometry.hpp"
#include "fibrato/hierarchy.hpp"
#include "fibrato/twogroup.hpp"

namespace fibrato {

enum class DocumentKind {
  Category,
  Group,
  Action,
  CatValuedAction,
  SetValuedAction,
  Hierarchy,
  Klein,
  GroupoidGeometry
};

std::string kind_name(DocumentKind k);

/// A parsed, validated input file. Parsing runs the owning module's
/// validator, so a Document in hand is always law-abiding.
struct Document {
  DocumentKind kind = DocumentKind::Category;
  std::variant<FinCat, PermGroup, GroupAction, CatValuedAction,
               SetValuedAction, HierarchySpec, KleinPair, GroupoidGeometry>
      payload;

  friend bool operator==(const Document &, const Document &) = default;
};

enum class InputFormat { Json, Dsl };

/// Throws Error("SyntaxError") with line/column for malformed input,
/// Error("SchemaError") with a field path for structural problems, and
/// Error("ValidationError") (or the module's own error kind) when the
/// payload fails its validator.
Document parse(const std::string &text, InputFormat format);

/// Canonical JSON text: fixed key order, sorted tables, identity-involving
/// compose entries omitted. Byte-identical across runs for equal documents.
std::string serialize(const Document &doc);

/// Lowers the line-oriented sugar (obj/mor/cmp/gen) to document JSON.
std::string dsl_to_json(const std::string &text);

std::string emit_dot(const FinCat &c, bool include_identities = false);
std::string emit_dot(const NaturalitySquare &sq);

} // namespace fibrato

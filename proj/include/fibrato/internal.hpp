#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fibrato/fincat.hpp"

namespace fibrato {

/// Groupoid presented by its structure maps inside an ambient category of
/// finite sets: objects G0, arrows G1, domain/codomain d0/d1, identity
/// section e, multiplication m on the fibered product {(g,f): d0(g)=d1(f)},
/// and inversion i.
struct InternalGroupoidData {
  std::vector<std::string> g0;
  std::vector<std::string> g1;
  std::map<std::string, std::string> d0;
  std::map<std::string, std::string> d1;
  std::map<std::string, std::string> e;
  std::map<std::pair<std::string, std::string>, std::string> m;
  std::map<std::string, std::string> i;
};

/// Checks every structure diagram: identity section endpoints, d0/d1
/// compatibility of m, unit laws, associativity over composable triples, and
/// the inverse laws. Throws Error("DomainMismatch") when m has an entry off
/// the fibered product and Error("IncompleteTable") when a required entry is
/// missing.
ValidationReport check_internal_groupoid(const InternalGroupoidData &t);

/// Reads the structure maps off a groupoid presentation.
InternalGroupoidData category_to_internal(const FinCat &c);

/// |G2|: number of composable pairs. With a single object this is |G1|^2
/// (the pullback degenerates to a product).
std::size_t fibered_product_size(const InternalGroupoidData &t);

} // namespace fibrato

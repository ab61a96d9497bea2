#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fibrato/fincat.hpp"
#include "fibrato/grothendieck.hpp"

namespace fibrato {

/// Natural isomorphism between two 1-cells, stored by index into
/// TwoGroup::one_cells with one component morphism per object.
struct TwoCell {
  std::size_t from = 0;
  std::size_t to = 0;
  std::map<std::string, std::string> component;

  friend bool operator==(const TwoCell &, const TwoCell &) = default;
};

/// Automorphism 2-group of a category: all invertible endofunctors and all
/// natural isomorphisms between them. Composition tables are materialised
/// when small; the compose helpers below compute directly otherwise.
struct TwoGroup {
  FinCat base_object;
  std::vector<FinFunctor> one_cells;
  std::vector<TwoCell> cells;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>>
      two_cells; // (from, to) -> cell indices
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> one_cell_compose;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> vertical;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> horizontal;
  bool tables_stored = false;
};

struct AutBudget {
  std::size_t max_objects = 4;
  std::size_t max_morphisms = 24;
  std::size_t max_nodes = 5'000'000;

  /// An explicit node budget lifts the size caps.
  static AutBudget nodes(std::size_t n) {
    return {static_cast<std::size_t>(-1), static_cast<std::size_t>(-1), n};
  }
};

/// Exhaustive search for the automorphism 2-group. Endofunctors are found by
/// backtracking over object bijections and hom-set assignments; 2-cells by
/// object-by-object component choice with early naturality pruning.
TwoGroup aut_2group(const FinCat &c, AutBudget budget = {});

ValidationReport check_two_group(const TwoGroup &t);

std::size_t one_cell_index(const TwoGroup &t, const FinFunctor &f);
std::size_t compose_one_cells(const TwoGroup &t, std::size_t g_after,
                              std::size_t f);
std::size_t inverse_one_cell(const TwoGroup &t, std::size_t i);
std::optional<std::size_t> find_cell(const TwoGroup &t, const TwoCell &cell);
std::optional<std::size_t> vertical_compose(const TwoGroup &t,
                                            std::size_t second,
                                            std::size_t first);
std::optional<std::size_t> horizontal_compose(const TwoGroup &t,
                                              std::size_t left,
                                              std::size_t right);

/// Commuting square generated by a 2-cell component pair and one morphism:
/// top and bottom edges are the two functor images of f, the verticals are
/// the components at f's endpoints.
struct NaturalitySquare {
  std::string gamma_x, gamma_y;               // corners along the top
  std::string gamma_primed_x, gamma_primed_y; // corners along the bottom
  std::string top, bottom, left, right;       // edge morphisms
  std::pair<std::string, std::string> cell;   // (component at x, at y)
  bool commutes = false;
};

NaturalitySquare naturality_square(const FinCat &c, const FinFunctor &gamma,
                                   const FinFunctor &gamma_primed,
                                   const std::map<std::string, std::string> &component,
                                   const std::string &f);
NaturalitySquare naturality_square(const TwoGroup &t, std::size_t cell_index,
                                   const std::string &f);

/// Re-reads a fiber square as a square of the total category over `node`:
/// corners gain the (node, -) prefix, edges the (id_node, -) prefix, and the
/// commuting composite is recomputed there. Throws Error("FiberMismatch")
/// when the square does not live in that fiber.
NaturalitySquare embed_square_at_node(const NaturalitySquare &sq,
                                      const FibredCategory &total,
                                      const std::string &node);

/// Fundamental square of the outermost 2-group acting on a hierarchy total.
NaturalitySquare outer_square(const TwoGroup &t_outer, std::size_t cell_index,
                              const std::string &total_morphism);

} // namespace fibrato

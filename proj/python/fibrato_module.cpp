#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fibrato/cli.hpp"
#include "fibrato/document.hpp"
#include "fibrato/errors.hpp"
#include "fibrato/internal.hpp"

#include <sstream>

namespace py = pybind11;
using namespace fibrato;

namespace {

PermGroup make_standard_group(const std::string &kind, std::size_t n) {
  if (kind == "cyclic")
    return standard_group(StandardGroupKind::Cyclic, n);
  if (kind == "dihedral")
    return standard_group(StandardGroupKind::Dihedral, n);
  if (kind == "symmetric")
    return standard_group(StandardGroupKind::Symmetric, n);
  throw Error("InvalidArgument", "unknown group kind " + kind);
}

CompletionVariant variant_from(const std::string &name) {
  if (name == "abs-left")
    return CompletionVariant::AbstractLeft;
  if (name == "abs-right")
    return CompletionVariant::AbstractRight;
  if (name == "con-left")
    return CompletionVariant::ConcreteLeft;
  if (name == "con-right")
    return CompletionVariant::ConcreteRight;
  throw Error("InvalidArgument", "unknown variant " + name);
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "finite base-structured category workbench";

  py::register_exception<Error>(m, "FibratoError");

  py::class_<MorphismDecl>(m, "MorphismDecl")
      .def_readonly("name", &MorphismDecl::name)
      .def_readonly("src", &MorphismDecl::src)
      .def_readonly("tgt", &MorphismDecl::tgt);

  py::class_<FinCat>(m, "FinCat")
      .def_readonly("objects", &FinCat::objects)
      .def_readonly("morphisms", &FinCat::morphisms)
      .def("hom", &FinCat::hom)
      .def("composed", &FinCat::composed)
      .def("__repr__", [](const FinCat &c) {
        std::ostringstream os;
        os << "FinCat(" << c.objects.size() << " objects, "
           << c.morphisms.size() << " morphisms)";
        return os.str();
      });

  py::class_<Violation>(m, "Violation")
      .def_readonly("law", &Violation::law)
      .def_readonly("witness", &Violation::witness);

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("ok", &ValidationReport::ok)
      .def_readonly("violations", &ValidationReport::violations)
      .def("summary", &ValidationReport::summary);

  py::class_<FinFunctor>(m, "FinFunctor")
      .def_readonly("object_map", &FinFunctor::object_map)
      .def_readonly("morphism_map", &FinFunctor::morphism_map);

  py::class_<PermGroup>(m, "PermGroup")
      .def_property_readonly("order", &PermGroup::order)
      .def_readonly("degree", &PermGroup::degree)
      .def("element_names", [](const PermGroup &g) {
        std::vector<std::string> names;
        for (const auto &e : g.elements)
          names.push_back(e.name);
        return names;
      });

  py::class_<GroupAction>(m, "GroupAction")
      .def_readonly("carrier", &GroupAction::carrier)
      .def("apply", &GroupAction::apply);

  py::class_<FibredCategory>(m, "FibredCategory")
      .def_readonly("total", &FibredCategory::total)
      .def_readonly("base", &FibredCategory::base)
      .def_readonly("projection", &FibredCategory::projection);

  py::class_<IsoReport>(m, "IsoReport")
      .def_readonly("isomorphic", &IsoReport::isomorphic)
      .def_readonly("left_counts", &IsoReport::left_counts)
      .def_readonly("right_counts", &IsoReport::right_counts);

  py::class_<PresentationStats>(m, "PresentationStats")
      .def_readonly("objects", &PresentationStats::objects)
      .def_readonly("morphisms", &PresentationStats::morphisms)
      .def_readonly("composable_pairs", &PresentationStats::composable_pairs);

  py::class_<ComparisonReport>(m, "ComparisonReport")
      .def_readonly("group_model", &ComparisonReport::group_model)
      .def_readonly("groupoid_model", &ComparisonReport::groupoid_model)
      .def_readonly("notes", &ComparisonReport::notes);

  py::class_<TwoGroup>(m, "TwoGroup")
      .def_property_readonly(
          "one_cell_count",
          [](const TwoGroup &t) { return t.one_cells.size(); })
      .def_property_readonly(
          "two_cell_count", [](const TwoGroup &t) { return t.cells.size(); });

  py::class_<NaturalitySquare>(m, "NaturalitySquare")
      .def_readonly("top", &NaturalitySquare::top)
      .def_readonly("bottom", &NaturalitySquare::bottom)
      .def_readonly("left", &NaturalitySquare::left)
      .def_readonly("right", &NaturalitySquare::right)
      .def_readonly("commutes", &NaturalitySquare::commutes);

  py::class_<KleinPair>(m, "KleinPair")
      .def_readonly("g", &KleinPair::g)
      .def_readonly("h", &KleinPair::h);

  py::class_<KleinReport>(m, "KleinReport")
      .def_readonly("transitive", &KleinReport::transitive)
      .def_readonly("vertex_group_order_at_basepoint",
                    &KleinReport::vertex_group_order_at_basepoint)
      .def_readonly("h_order", &KleinReport::h_order)
      .def_readonly("completion_counts", &KleinReport::completion_counts)
      .def_readonly("groupoid_counts", &KleinReport::groupoid_counts)
      .def_readonly("completion_components",
                    &KleinReport::completion_components)
      .def_readonly("vertex_group_matches_h",
                    &KleinReport::vertex_group_matches_h)
      .def_property_readonly("iso_probe", [](const KleinReport &r) {
        return r.iso_probe.isomorphic;
      });

  // Core constructions.
  m.def("discrete_category", &discrete_category);
  m.def("codiscrete_groupoid", &codiscrete_groupoid);
  m.def("opposite", &opposite);
  m.def("product", &product);
  m.def("coproduct", &coproduct);
  m.def("check_category", &check_category);
  m.def("is_groupoid", &is_groupoid);
  m.def("connected_components", &connected_components);
  m.def("vertex_group", &vertex_group);
  m.def(
      "find_isomorphism",
      [](const FinCat &c, const FinCat &d, std::size_t budget) {
        return find_isomorphism(c, d, IsoBudget{budget});
      },
      py::arg("c"), py::arg("d"), py::arg("budget") = IsoBudget{}.max_nodes);

  // Groups and actions.
  m.def("standard_group", &make_standard_group);
  m.def("direct_product", &direct_product);
  m.def("wreath_product", &wreath_product, py::arg("g"), py::arg("top"),
        py::arg("budget") = 0);
  m.def("preserves_blocks", &preserves_blocks);
  m.def("group_as_category", &group_as_category);
  m.def("natural_action", &natural_action);
  m.def("check_action", &check_action);
  m.def("orbit_sizes", [](const GroupAction &a) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto &os : orbits_stabilizers(a))
      out.push_back({os.orbit.size(), os.stabilizer.order()});
    return out;
  });

  // Completions.
  m.def("transformation_groupoid", &transformation_groupoid);
  m.def("complete_set_action",
        [](const SetValuedAction &a, const std::string &variant) {
          return grothendieck_complete(a, variant_from(variant));
        });
  m.def("check_split_fibration", &check_split_fibration);
  m.def("check_transformation_equals_completion",
        [](const GroupAction &a) {
          return check_transformation_equals_completion(a);
        });
  m.def("is_cartesian",
        [](const FibredCategory &fc, const std::string &m) {
          return is_cartesian(fc, m);
        });

  // Hierarchy-level reports.
  m.def("presentation_stats", &presentation_stats);
  m.def("compare_models", &compare_models);
  m.def("classify_base", [](const FinCat &b, const std::string &kind) {
    auto r = classify_base(b, kind == "cat" ? CodomainKind::Cat
                                            : CodomainKind::Set);
    return std::make_pair(base_class_name(r.cls), r.induced_label);
  });

  // 2-groups.
  m.def(
      "aut_2group",
      [](const FinCat &c, std::size_t nodes) {
        return nodes == 0 ? aut_2group(c) : aut_2group(c, AutBudget::nodes(nodes));
      },
      py::arg("c"), py::arg("budget") = 0);
  m.def("naturality_square",
        [](const TwoGroup &t, std::size_t cell, const std::string &f) {
          return naturality_square(t, cell, f);
        });

  // Geometry.
  m.def("klein_pair", [](const PermGroup &g, const PermGroup &h) {
    KleinPair k{g, h};
    auto report = check_klein_pair(k);
    if (!report.ok)
      throw Error("NotASubgroup", report.summary());
    return k;
  });
  m.def("subgroup_from_elements", &subgroup_from_elements);
  m.def("check_klein",
        [](const KleinPair &k) { return check_klein(k); });

  // Documents and rendering.
  m.def("parse_document", [](const std::string &text, const std::string &fmt) {
    Document d =
        parse(text, fmt == "dsl" ? InputFormat::Dsl : InputFormat::Json);
    return std::make_pair(kind_name(d.kind), serialize(d));
  });
  m.def("emit_dot",
        [](const FinCat &c, bool ids) { return emit_dot(c, ids); },
        py::arg("c"), py::arg("include_identities") = false);
  m.def("run_cli", [](const std::vector<std::string> &args) {
    std::ostringstream out, err;
    int code = run(args, out, err);
    return std::make_tuple(code, out.str(), err.str());
  });
}

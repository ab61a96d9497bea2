#include "fibrato/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fibrato/document.hpp"
#include "fibrato/errors.hpp"
#include "fibrato/internal.hpp"

namespace fibrato {

namespace {

using json = nlohmann::ordered_json;

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw CLI::ValidationError("cannot read file " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Document load(const std::string &path, bool force_dsl) {
  bool dsl_ext = path.size() > 4 && path.substr(path.size() - 4) == ".dsl";
  InputFormat format =
      force_dsl || dsl_ext ? InputFormat::Dsl : InputFormat::Json;
  return parse(read_file(path), format);
}

const FinCat &as_category(const Document &doc) {
  if (doc.kind != DocumentKind::Category)
    throw Error("SchemaError", "$.kind: expected a category document");
  return std::get<FinCat>(doc.payload);
}

const PermGroup &as_group(const Document &doc) {
  if (doc.kind != DocumentKind::Group)
    throw Error("SchemaError", "$.kind: expected a group document");
  return std::get<PermGroup>(doc.payload);
}

const GroupAction &as_action(const Document &doc) {
  if (doc.kind != DocumentKind::Action)
    throw Error("SchemaError", "$.kind: expected an action document");
  return std::get<GroupAction>(doc.payload);
}

json category_payload(const FinCat &c) {
  Document doc{DocumentKind::Category, c};
  return json::parse(serialize(doc));
}

std::size_t env_budget(std::size_t fallback) {
  const char *env = std::getenv("FIBRATO_BUDGET");
  if (env == nullptr)
    return fallback;
  char *end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || v == 0)
    return fallback;
  return static_cast<std::size_t>(v);
}

struct Ctx {
  std::ostream &out;
  bool as_json = false;

  void emit(const json &j, const std::string &text) {
    if (as_json)
      out << j.dump(2) << "\n";
    else
      out << text << "\n";
  }
};

std::string describe_connectivity(const FinCat &c) {
  std::size_t n = connected_components(c).size();
  if (n == 1)
    return "connected";
  return std::to_string(n) + " components";
}

std::string square_text(const NaturalitySquare &sq) {
  std::ostringstream os;
  os << "corners: " << sq.gamma_x << ", " << sq.gamma_y << ", "
     << sq.gamma_primed_x << ", " << sq.gamma_primed_y << "\n"
     << "top:     " << sq.top << "\n"
     << "bottom:  " << sq.bottom << "\n"
     << "left:    " << sq.left << "\n"
     << "right:   " << sq.right << "\n"
     << "commutes: " << (sq.commutes ? "yes" : "no");
  return os.str();
}

json square_json(const NaturalitySquare &sq) {
  return json{{"corners", {sq.gamma_x, sq.gamma_y, sq.gamma_primed_x,
                           sq.gamma_primed_y}},
              {"top", sq.top},
              {"bottom", sq.bottom},
              {"left", sq.left},
              {"right", sq.right},
              {"cell", {sq.cell.first, sq.cell.second}},
              {"commutes", sq.commutes}};
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
  CLI::App app{"fibrato: a workbench for finite base-structured categories"};
  app.require_subcommand(1);

  std::string format = "text";
  std::function<int(Ctx &)> action;

  // Shared option state.
  struct {
    std::string file, second_file, inner, outer, variant, morphism, blocks;
    std::size_t budget = 0;
    std::size_t two_cell = 0;
    bool dsl = false, identities = false, dot = false, verify = false;
  } opt;

  auto add_format = [&](CLI::App *cmd) {
    cmd->add_option("--format", format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
  };

  auto *check_cmd = app.add_subcommand("check", "validate a document");
  check_cmd->add_option("file", opt.file, "input file")->required();
  check_cmd->add_flag("--dsl", opt.dsl, "treat input as DSL");
  add_format(check_cmd);
  check_cmd->callback([&] {
    action = [&](Ctx &ctx) {
      Document doc = load(opt.file, opt.dsl);
      ctx.emit(json{{"ok", true}, {"kind", kind_name(doc.kind)}},
               "ok: valid " + kind_name(doc.kind) + " document");
      return 0;
    };
  });

  auto *stats_cmd = app.add_subcommand("stats", "presentation size counters");
  stats_cmd->add_option("file", opt.file)->required();
  stats_cmd->add_flag("--dsl", opt.dsl);
  add_format(stats_cmd);
  stats_cmd->callback([&] {
    action = [&](Ctx &ctx) {
      auto s = presentation_stats(as_category(load(opt.file, opt.dsl)));
      ctx.emit(json{{"objects", s.objects},
                    {"morphisms", s.morphisms},
                    {"composable_pairs", s.composable_pairs}},
               std::to_string(s.objects) + " objects, " +
                   std::to_string(s.morphisms) + " morphisms, " +
                   std::to_string(s.composable_pairs) + " composable pairs");
      return 0;
    };
  });

  auto *dot_cmd = app.add_subcommand("dot", "emit a DOT diagram");
  dot_cmd->add_option("file", opt.file)->required();
  dot_cmd->add_flag("--dsl", opt.dsl);
  dot_cmd->add_flag("--identities", opt.identities, "include identity loops");
  dot_cmd->callback([&] {
    action = [&](Ctx &ctx) {
      ctx.out << emit_dot(as_category(load(opt.file, opt.dsl)),
                          opt.identities);
      return 0;
    };
  });

  auto *iso_cmd = app.add_subcommand("iso", "search for an isomorphism");
  iso_cmd->add_option("file", opt.file)->required();
  iso_cmd->add_option("other", opt.second_file)->required();
  iso_cmd->add_option("--budget", opt.budget, "search node budget");
  add_format(iso_cmd);
  iso_cmd->callback([&] {
    action = [&](Ctx &ctx) {
      const FinCat c = as_category(load(opt.file, false));
      const FinCat d = as_category(load(opt.second_file, false));
      IsoBudget budget;
      budget.max_nodes = opt.budget ? opt.budget : env_budget(budget.max_nodes);
      auto witness = find_isomorphism(c, d, budget);
      json j{{"isomorphic", witness.has_value()},
             {"left", {c.objects.size(), c.morphisms.size()}},
             {"right", {d.objects.size(), d.morphisms.size()}}};
      if (witness) {
        json maps;
        for (const auto &[k, v] : witness->first.object_map)
          maps["objects"][k] = v;
        for (const auto &[k, v] : witness->first.morphism_map)
          maps["morphisms"][k] = v;
        j["witness"] = std::move(maps);
      }
      ctx.emit(j, witness ? "isomorphic" : "not isomorphic");
      return 0;
    };
  });

  auto *transform_cmd =
      app.add_subcommand("transform", "action to transformation groupoid");
  transform_cmd->add_option("file", opt.file)->required();
  add_format(transform_cmd);
  transform_cmd->callback([&] {
    action = [&](Ctx &ctx) {
      FinCat xg = transformation_groupoid(as_action(load(opt.file, false)));
      ctx.emit(json{{"objects", xg.objects.size()},
                    {"morphisms", xg.morphisms.size()},
                    {"components", connected_components(xg).size()},
                    {"groupoid", is_groupoid(xg)},
                    {"category", category_payload(xg)}},
               std::to_string(xg.objects.size()) + " objects, " +
                   std::to_string(xg.morphisms.size()) + " morphisms, " +
                   describe_connectivity(xg));
      return 0;
    };
  });

  auto *complete_cmd =
      app.add_subcommand("complete", "Grothendieck completion of an action");
  complete_cmd->add_option("file", opt.file)->required();
  complete_cmd
      ->add_option("--variant", opt.variant,
                   "abs-left, abs-right, con-left or con-right")
      ->required()
      ->check(CLI::IsMember({"abs-left", "abs-right", "con-left", "con-right"}));
  add_format(complete_cmd);
  complete_cmd->callback([&] {
    action = [&](Ctx &ctx) {
      Document doc = load(opt.file, false);
      CompletionVariant variant = opt.variant == "abs-left"
                                      ? CompletionVariant::AbstractLeft
                                  : opt.variant == "abs-right"
                                      ? CompletionVariant::AbstractRight
                                  : opt.variant == "con-left"
                                      ? CompletionVariant::ConcreteLeft
                                      : CompletionVariant::ConcreteRight;
      FibredCategory fc;
      if (doc.kind == DocumentKind::SetValuedAction)
        fc = grothendieck_complete(std::get<SetValuedAction>(doc.payload),
                                   variant);
      else if (doc.kind == DocumentKind::CatValuedAction)
        fc = grothendieck_complete(std::get<CatValuedAction>(doc.payload),
                                   variant);
      else
        throw Error("SchemaError",
                    "$.kind: expected a set_valued_action or "
                    "cat_valued_action document");
      auto split = check_split_fibration(fc);
      ctx.emit(json{{"variant", variant_name(variant)},
                    {"objects", fc.total.objects.size()},
                    {"morphisms", fc.total.morphisms.size()},
                    {"split_ok", split.ok},
                    {"total", category_payload(fc.total)}},
               variant_name(variant) + " total: " +
                   std::to_string(fc.total.objects.size()) + " objects, " +
                   std::to_string(fc.total.morphisms.size()) +
                   " morphisms; split fibration: " +
                   (split.ok ? "ok" : split.summary()));
      return split.ok ? 0 : 1;
    };
  });

  auto *wreath_cmd = app.add_subcommand("wreath", "imprimitive wreath product");
  wreath_cmd->add_option("--inner", opt.inner, "inner group file")->required();
  wreath_cmd->add_option("--outer", opt.outer, "outer group file")->required();
  add_format(wreath_cmd);
  wreath_cmd->callback([&] {
    action = [&](Ctx &ctx) {
      const PermGroup g = as_group(load(opt.inner, false));
      const PermGroup top = as_group(load(opt.outer, false));
      PermGroup w = wreath_product(g, top);
      bool blocks = preserves_blocks(w, g.degree);
      ctx.emit(json{{"order", w.order()},
                    {"degree", w.degree},
                    {"preserves_blocks", blocks}},
               "order " + std::to_string(w.order()) + " on " +
                   std::to_string(w.degree) + " points; blocks of size " +
                   std::to_string(g.degree) +
                   (blocks ? " preserved" : " not preserved"));
      return 0;
    };
  });

  auto *hier_cmd =
      app.add_subcommand("hierarchy", "build a 2-level completion and check "
                                      "the composite fibration");
  hier_cmd->add_option("file", opt.file)->required();
  add_format(hier_cmd);
  hier_cmd->callback([&] {
    action = [&](Ctx &ctx) {
      Document doc = load(opt.file, false);
      if (doc.kind != DocumentKind::Hierarchy)
        throw Error("SchemaError", "$.kind: expected a hierarchy document");
      Hierarchy h = build_hierarchy(std::get<HierarchySpec>(doc.payload));
      auto composite = check_composite_fibration(h.p, h.q);
      ctx.emit(
          json{{"outer_total",
                {h.outer.total.objects.size(), h.outer.total.morphisms.size()}},
               {"inner_total",
                {h.inner.total.objects.size(), h.inner.total.morphisms.size()}},
               {"composite_fibration_ok", composite.ok}},
          "outer total: " + std::to_string(h.outer.total.objects.size()) +
              " objects, " + std::to_string(h.outer.total.morphisms.size()) +
              " morphisms; inner total: " +
              std::to_string(h.inner.total.objects.size()) + " objects, " +
              std::to_string(h.inner.total.morphisms.size()) +
              " morphisms; composite fibration: " +
              (composite.ok ? "ok" : composite.summary()));
      return composite.ok ? 0 : 1;
    };
  });

  auto *compare_cmd = app.add_subcommand(
      "compare-models", "wreath-group model vs groupoid hierarchy");
  compare_cmd->add_option("--inner", opt.inner, "inner group file")->required();
  compare_cmd->add_option("--outer", opt.outer, "outer group file")->required();
  compare_cmd
      ->add_option("--blocks", opt.blocks,
                   "semicolon-separated comma lists, e.g. 1,2,3;4,5,6")
      ->required();
  add_format(compare_cmd);
  compare_cmd->callback([&] {
    action = [&](Ctx &ctx) {
      std::vector<std::vector<std::string>> blocks;
      std::istringstream stream(opt.blocks);
      std::string block;
      while (std::getline(stream, block, ';')) {
        std::vector<std::string> points;
        std::istringstream bs(block);
        std::string point;
        while (std::getline(bs, point, ','))
          if (!point.empty())
            points.push_back(point);
        blocks.push_back(std::move(points));
      }
      auto report = compare_models(blocks, as_group(load(opt.inner, false)),
                                   as_group(load(opt.outer, false)));
      json notes = json::array();
      for (const auto &n : report.notes)
        notes.push_back(n);
      ctx.emit(
          json{{"group_model",
                {{"objects", report.group_model.objects},
                 {"morphisms", report.group_model.morphisms},
                 {"composable_pairs", report.group_model.composable_pairs}}},
               {"groupoid_model",
                {{"objects", report.groupoid_model.objects},
                 {"morphisms", report.groupoid_model.morphisms},
                 {"composable_pairs",
                  report.groupoid_model.composable_pairs}}},
               {"notes", notes}},
          "group model: " + std::to_string(report.group_model.morphisms) +
              " morphisms / " + std::to_string(report.group_model.objects) +
              " objects; groupoid model: " +
              std::to_string(report.groupoid_model.morphisms) +
              " morphisms / " + std::to_string(report.groupoid_model.objects) +
              " objects");
      return 0;
    };
  });

  auto *aut_cmd = app.add_subcommand("aut2", "automorphism 2-group");
  aut_cmd->add_option("file", opt.file)->required();
  aut_cmd->add_option("--budget", opt.budget, "search node budget");
  aut_cmd->add_flag("--verify", opt.verify, "run the 2-group law checks");
  add_format(aut_cmd);
  aut_cmd->callback([&] {
    action = [&](Ctx &ctx) {
      AutBudget budget;
      std::size_t nodes = opt.budget ? opt.budget : env_budget(0);
      if (nodes != 0)
        budget = AutBudget::nodes(nodes);
      TwoGroup t = aut_2group(as_category(load(opt.file, false)), budget);
      bool ok = true;
      if (opt.verify)
        ok = check_two_group(t).ok;
      ctx.emit(json{{"one_cells", t.one_cells.size()},
                    {"two_cells", t.cells.size()},
                    {"verified", opt.verify ? json(ok) : json()}},
               std::to_string(t.one_cells.size()) + " one-cells, " +
                   std::to_string(t.cells.size()) + " two-cells" +
                   (opt.verify ? (ok ? "; laws ok" : "; laws violated") : ""));
      return ok ? 0 : 1;
    };
  });

  auto *square_cmd =
      app.add_subcommand("square", "naturality square of a 2-cell");
  square_cmd->add_option("file", opt.file)->required();
  square_cmd->add_option("--two-cell", opt.two_cell, "2-cell index")
      ->required();
  square_cmd->add_option("--morphism", opt.morphism, "base morphism name")
      ->required();
  square_cmd->add_option("--budget", opt.budget, "search node budget");
  square_cmd->add_flag("--dot", opt.dot, "emit the square as DOT");
  add_format(square_cmd);
  square_cmd->callback([&] {
    action = [&](Ctx &ctx) {
      AutBudget budget;
      std::size_t nodes = opt.budget ? opt.budget : env_budget(0);
      if (nodes != 0)
        budget = AutBudget::nodes(nodes);
      TwoGroup t = aut_2group(as_category(load(opt.file, false)), budget);
      if (opt.two_cell >= t.cells.size())
        throw Error("DanglingReference",
                    "2-cell index out of range (have " +
                        std::to_string(t.cells.size()) + ")");
      NaturalitySquare sq = naturality_square(t, opt.two_cell, opt.morphism);
      if (opt.dot) {
        ctx.out << emit_dot(sq);
        return 0;
      }
      ctx.emit(square_json(sq), square_text(sq));
      return 0;
    };
  });

  auto *klein_cmd = app.add_subcommand("klein", "finite Klein pair report");
  klein_cmd->add_option("file", opt.file)->required();
  add_format(klein_cmd);
  klein_cmd->callback([&] {
    action = [&](Ctx &ctx) {
      Document doc = load(opt.file, false);
      if (doc.kind != DocumentKind::Klein)
        throw Error("SchemaError", "$.kind: expected a klein document");
      KleinReport r = check_klein(std::get<KleinPair>(doc.payload));
      ctx.emit(
          json{{"transitive", r.transitive},
               {"components", r.components_of_x_mod_g},
               {"vertex_group_order", r.vertex_group_order_at_basepoint},
               {"vertex_group_matches_h", r.vertex_group_matches_h},
               {"h_order", r.h_order},
               {"x_mod_g", {r.groupoid_counts.first, r.groupoid_counts.second}},
               {"h_completion",
                {r.completion_counts.first, r.completion_counts.second}},
               {"h_completion_components", r.completion_components},
               {"iso_probe", r.iso_probe.isomorphic}},
          std::string("transitive: ") + (r.transitive ? "yes" : "no") +
              "; vertex group order " +
              std::to_string(r.vertex_group_order_at_basepoint) + " (H order " +
              std::to_string(r.h_order) + "); X//G " +
              std::to_string(r.groupoid_counts.first) + " objects / " +
              std::to_string(r.groupoid_counts.second) +
              " morphisms; H completion " +
              std::to_string(r.completion_counts.first) + " objects / " +
              std::to_string(r.completion_counts.second) + " morphisms (" +
              std::to_string(r.completion_components) +
              " components); iso probe: " +
              (r.iso_probe.isomorphic ? "isomorphic" : "not isomorphic"));
      return 0;
    };
  });

  auto *geom_cmd =
      app.add_subcommand("geometry", "groupoid geometry report");
  geom_cmd->add_option("file", opt.file)->required();
  add_format(geom_cmd);
  geom_cmd->callback([&] {
    action = [&](Ctx &ctx) {
      Document doc = load(opt.file, false);
      if (doc.kind != DocumentKind::GroupoidGeometry)
        throw Error("SchemaError",
                    "$.kind: expected a groupoid_geometry document");
      auto r = check_groupoid_geometry(std::get<GroupoidGeometry>(doc.payload));
      json blocks = json::array();
      for (auto s : r.component_sizes)
        blocks.push_back(s);
      ctx.emit(json{{"ok", r.validation.ok},
                    {"coset_points", r.coset_points},
                    {"basepoints", r.basepoints},
                    {"component_sizes", blocks},
                    {"stabilizers_match_vertex_groups",
                     r.stabilizers_match_vertex_groups},
                    {"completion",
                     {r.completion_counts.first, r.completion_counts.second}}},
               std::to_string(r.coset_points) + " coset points, " +
                   std::to_string(r.basepoints) + " basepoints, " +
                   std::to_string(r.component_sizes.size()) +
                   " coproduct blocks; stabilizers match vertex groups: " +
                   (r.stabilizers_match_vertex_groups ? "yes" : "no"));
      return r.validation.ok ? 0 : 1;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError &e) {
    err << e.what() << "\n";
    return 2;
  }

  Ctx ctx{out, format == "json"};
  try {
    return action(ctx);
  } catch (const Error &e) {
    err << e.what() << "\n";
    return e.kind() == "SyntaxError" || e.kind() == "SchemaError" ? 2 : 1;
  } catch (const CLI::ValidationError &e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

} // namespace fibrato

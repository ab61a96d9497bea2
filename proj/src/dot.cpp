#include <algorithm>
#include <sstream>
#include <vector>

#include "fibrato/document.hpp"

namespace fibrato {

namespace {

std::string quoted(const std::string &s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\')
      out += '\\';
    out += ch;
  }
  return out + "\"";
}

} // namespace

std::string emit_dot(const FinCat &c, bool include_identities) {
  std::vector<std::string> nodes = c.objects;
  std::sort(nodes.begin(), nodes.end());
  std::vector<const MorphismDecl *> edges;
  for (const auto &m : c.morphisms) {
    if (!include_identities && c.is_identity(m.name))
      continue;
    edges.push_back(&m);
  }
  std::sort(edges.begin(), edges.end(),
            [](const MorphismDecl *a, const MorphismDecl *b) {
              return a->name < b->name;
            });
  std::ostringstream os;
  os << "digraph category {\n  rankdir=LR;\n";
  for (const auto &n : nodes)
    os << "  " << quoted(n) << ";\n";
  for (const auto *e : edges)
    os << "  " << quoted(e->src) << " -> " << quoted(e->tgt)
       << " [label=" << quoted(e->name) << "];\n";
  os << "}\n";
  return os.str();
}

std::string emit_dot(const NaturalitySquare &sq) {
  std::ostringstream os;
  os << "digraph naturality_square {\n";
  os << "  label=" << quoted("cell (" + sq.cell.first + ", " + sq.cell.second +
                             "); commutes: " + (sq.commutes ? "yes" : "no"))
     << ";\n";
  std::vector<std::string> corners = {sq.gamma_x, sq.gamma_y,
                                      sq.gamma_primed_x, sq.gamma_primed_y};
  std::sort(corners.begin(), corners.end());
  corners.erase(std::unique(corners.begin(), corners.end()), corners.end());
  for (const auto &corner : corners)
    os << "  " << quoted(corner) << ";\n";
  os << "  " << quoted(sq.gamma_x) << " -> " << quoted(sq.gamma_y)
     << " [label=" << quoted(sq.top) << "];\n";
  os << "  " << quoted(sq.gamma_primed_x) << " -> " << quoted(sq.gamma_primed_y)
     << " [label=" << quoted(sq.bottom) << "];\n";
  os << "  " << quoted(sq.gamma_x) << " -> " << quoted(sq.gamma_primed_x)
     << " [label=" << quoted(sq.left) << "];\n";
  os << "  " << quoted(sq.gamma_y) << " -> " << quoted(sq.gamma_primed_y)
     << " [label=" << quoted(sq.right) << "];\n";
  os << "}\n";
  return os.str();
}

} // namespace fibrato

#include "fixtures.hpp"

#include <stdexcept>
#include <string>

namespace fixtures {

using spdi::Region;
using spdi::Vertex;

spdi::Spdi hcorridor() {
  std::vector<Vertex> v{{1, {0, 0}}, {2, {1, 0}}, {3, {2, 0}}, {4, {0, 1}}, {5, {1, 1}}, {6, {2, 1}}};
  std::vector<Region> r(2);
  r[0].id = 1;
  r[0].vertex_ids = {1, 2, 5, 4};
  r[0].dyn_l = r[0].dyn_r = {1, 0};
  r[1].id = 2;
  r[1].vertex_ids = {2, 3, 6, 5};
  r[1].dyn_l = r[1].dyn_r = {1, 0};
  return spdi::Spdi::build(v, r);
}

spdi::Spdi spinbox() {
  std::vector<Vertex> v{{1, {0, 0}}, {2, {1, 0}}, {3, {1, 1}}, {4, {0, 1}}, {5, {0.5, 0.5}}};
  std::vector<Region> r(4);
  spdi::Vector2 d{1.0, 0.2};
  const spdi::VertexId loops[4][3] = {{1, 2, 5}, {2, 3, 5}, {3, 4, 5}, {4, 1, 5}};
  for (int i = 0; i < 4; ++i) {
    r[i].id = i + 1;
    r[i].vertex_ids.assign(loops[i], loops[i] + 3);
    r[i].dyn_l = r[i].dyn_r = d;
    d = {-d.dy, d.dx};
  }
  return spdi::Spdi::build(v, r);
}

spdi::Spdi unit_square(spdi::Vector2 dyn_l, spdi::Vector2 dyn_r) {
  std::vector<Vertex> v{{1, {0, 0}}, {2, {1, 0}}, {3, {1, 1}}, {4, {0, 1}}};
  std::vector<Region> r(1);
  r[0].id = 1;
  r[0].vertex_ids = {1, 2, 3, 4};
  r[0].dyn_l = dyn_l;
  r[0].dyn_r = dyn_r;
  return spdi::Spdi::build(v, r);
}

spdi::EdgeId edge(const spdi::Spdi& s, const char* name) {
  auto e = s.find_edge(name);
  if (!e) throw std::runtime_error(std::string("fixture has no edge ") + name);
  return *e;
}

}  // namespace fixtures

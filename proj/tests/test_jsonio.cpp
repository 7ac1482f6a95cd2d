#include <cstdlib>
#include <string>

#include "doctest.h"
#include "opf/barratt_eccles.hpp"
#include "opf/errors.hpp"
#include "opf/homotopy.hpp"
#include "opf/json_io.hpp"
#include "opf/operad.hpp"
#include "opf/wconstruction.hpp"

using opf::Rational;
using opf::io::json;
namespace io = opf::io;
namespace wc = opf::wcons;

namespace {

std::string fixture(const char* name) {
  const char* dir = std::getenv("FIXTURE_DIR");
  REQUIRE(dir != nullptr);
  return std::string(dir) + "/" + name;
}

}  // namespace

TEST_CASE("operad specs build every kind") {
  CHECK(io::operad_from_spec(io::parse_json(R"({"kind":"obm","rmax":2})"))
            ->size(2) == 16);
  CHECK(io::operad_from_spec(io::parse_json(R"({"kind":"point","rmax":3})"))
            ->total_size() == 4);
  auto pr = io::operad_from_spec(io::parse_json(
      R"({"kind":"product","left":{"kind":"obm","rmax":2},
          "right":{"kind":"selector","rmax":2}})"));
  CHECK(pr->size(1) == 12);
  auto tr = io::operad_from_spec(io::parse_json(
      R"({"kind":"truncate","base":{"kind":"obm","rmax":3},"k":2})"));
  CHECK(tr->max_arity() == 2);
  CHECK(tr->truncation() == std::optional<int>(2));
  auto un = io::operad_from_spec(io::parse_json(
      R"({"kind":"unitarize","base":{"kind":"selector","rmax":2}})"));
  CHECK(un->is_unitary());
  CHECK_THROWS_AS(io::operad_from_spec(io::parse_json(R"({"kind":"x"})")),
                  opf::ParseError);
}

TEST_CASE("operads rebuilt from their own spec match") {
  auto p = opf::be::obm_operad(3);
  auto q = io::operad_from_spec(p->spec());
  CHECK(q->total_size() == p->total_size());
  for (int r = 0; r <= 3; ++r) CHECK(q->size(r) == p->size(r));
}

TEST_CASE("element serialization round-trips") {
  auto p = opf::be::obm_operad(2);
  for (int r = 0; r <= 2; ++r) {
    for (std::int32_t i = 0; i < p->size(r); ++i) {
      opf::ops::Elem e{static_cast<std::int16_t>(r), i};
      CHECK(io::elem_from_json(*p, io::elem_to_json(*p, e)) == e);
    }
  }
}

TEST_CASE("decorated trees round-trip through JSON") {
  auto w = io::welement_from_json(io::load_json_file(fixture("paper_tree.json")));
  CHECK(w.arity() == 3);
  CHECK(w.shape.vertex_count() == 6);
  CHECK(w.variant == wc::Variant::TauWPrime);
  wc::validate_raw(w);
  auto j = io::welement_to_json(w);
  auto w2 = io::welement_from_json(j);
  CHECK(w2.shape == w.shape);
  CHECK(w2.labels == w.labels);
  CHECK(w2.lengths == w.lengths);
  CHECK(io::welement_to_json(w2) == j);
}

TEST_CASE("the zero-length fixture normalizes to one vertex") {
  auto w = io::welement_from_json(
      io::load_json_file(fixture("two_vertex_zero_length.json")));
  auto n = wc::normalize(w);
  CHECK(n.shape.vertex_count() == 1);
  CHECK(n.labels[0] == w.ops->compose(w.labels[0], 2, w.labels[1]));
}

TEST_CASE("the reducible fixture loses its hanging subtree") {
  auto w = io::welement_from_json(
      io::load_json_file(fixture("tau_reducible.json")));
  auto n = wc::normalize(w);
  CHECK(n.shape.vertex_count() == 2);
  CHECK(n.labels[1] == w.ops->nought());
}

TEST_CASE("malformed input reports a parse error") {
  CHECK_THROWS_AS(io::load_json_file(fixture("bad_malformed.json")),
                  opf::ParseError);
  CHECK_THROWS_AS(io::load_json_file(fixture("no_such_file.json")),
                  opf::ParseError);
  // structurally bad: root points past the node list
  auto j = io::parse_json(
      R"({"operad":{"kind":"obm","rmax":2},"variant":"W","k":null,
          "arity":1,"root":5,"nodes":[{"id":0,"slots":[{"leaf":1}]}],
          "labels":{"0":"x1"},"lengths":{"0":"0"}})");
  CHECK_THROWS_AS(io::welement_from_json(j), opf::ParseError);
}

TEST_CASE("morphism files load and check out") {
  auto f = io::morphism_from_json(
      io::load_json_file(fixture("selector_to_endo2.json")));
  CHECK(f.dom->size(2) == 4);
  CHECK(f.cod->label() == "endo2");
  CHECK(f.cod->is_unitary());
  CHECK(opf::ops::check_morphism(f).empty());
  CHECK(opf::ops::check_axioms(*f.cod).pass());
}

TEST_CASE("graphviz output mentions every vertex") {
  auto w = io::welement_from_json(io::load_json_file(fixture("paper_tree.json")));
  auto dot = io::to_dot(w);
  CHECK(dot.find("digraph") != std::string::npos);
  for (int v = 0; v < 6; ++v)
    CHECK(dot.find("v" + std::to_string(v)) != std::string::npos);
  CHECK(dot.find("1/4") != std::string::npos);
}

#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "polycalc/bicomodule.hpp"
#include "polycalc/corpus.hpp"
#include "polycalc/error.hpp"
#include "polycalc/harness.hpp"
#include "polycalc/io.hpp"
#include "polycalc/monoidal.hpp"
#include "polycalc/poly_ops.hpp"

using namespace polycalc;
using io::Json;

namespace {

std::string canonical(const Json& j) { return io::dump(j); }

// Serialize, reparse from text, decode and serialize again.
template <class T, class Load>
void check_bytes(const T& value, Load load) {
  const std::string text = canonical(io::to_json(value));
  const std::string again = canonical(io::to_json(load(io::parse(text))));
  CHECK(text == again);
  CHECK(canonical(io::roundtrip(io::parse(text))) == text);
}

std::string schema_path(const std::function<void()>& f) {
  try {
    f();
  } catch (const SchemaError& e) {
    return e.path() + " | " + e.what();
  }
  return "no error";
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("polycalc-io-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name, const Json& j) const {
    const std::string p = (path / name).string();
    io::write_file(p, j);
    return p;
  }
};

}  // namespace

TEST_SUITE("polycalc-cli") {

TEST_CASE("every document kind serializes canonically and reparses to the same bytes") {
  corpus::Rng rng(7);
  Poly p = Poly::parse("y^2 + 2y + 1");
  check_bytes(p, [](const Json& j) { return io::poly_from_json(j); });
  check_bytes(compose_tri(Poly::parse("y^2"), Poly::parse("2y")),
              [](const Json& j) { return io::poly_from_json(j); });
  for (const PolyMor& m : hom_enumerate(Poly::parse("y^2 + y"), Poly::parse("2y + 1"))) {
    check_bytes(m, [](const Json& j) { return io::polymor_from_json(j); });
  }
  check_bytes(FinSet::of({"a", 1, Label::pair("b", 2)}), [](const Json& j) { return io::finset_from_json(j); });
  check_bytes(FinFn(FinSet::range(3), FinSet::of({"x", "y"}), {1, 0, 1}),
              [](const Json& j) { return io::finfn_from_json(j); });
  for (const FinCat& c : corpus::category_corpus(3, 12)) {
    check_bytes(c, [](const Json& j) { return io::fincat_from_json(j); });
  }
  auto base = std::make_shared<const FinCat>(FinCat::parallel_pair());
  psh::Presheaf x = corpus::random_presheaf(rng, base, 2);
  check_bytes(x, [](const Json& j) { return io::presheaf_from_json(j); });
  psh::Polynomial pp = corpus::random_psh_poly(rng, base, 2);
  check_bytes(pp.proj, [](const Json& j) { return io::pshmor_from_json(j); });
  Comonoid c = cat_to_comonoid(FinCat::walking_arrow());
  check_bytes(c, [](const Json& j) { return io::comonoid_from_json(j); });
  check_bytes(identity_bicomodule(c), [](const Json& j) { return io::bicomodule_from_json(j); });
  TypedPoly t = corpus::random_typed(rng, FinSet::range(2), FinSet::range(2), 2, 2);
  check_bytes(t, [](const Json& j) { return io::typed_from_json(j); });
  Coalgebra co = corpus::random_coalgebra(rng, c, 2);
  check_bytes(co, [](const Json& j) { return io::coalgebra_from_json(j); });
}

TEST_CASE("poly file with bare-string keys and reordered fields canonicalizes") {
  Json j = io::parse(R"({"directions":{"0":[1,0]},"positions":[0],"kind":"poly"})");
  Poly p = io::poly_from_json(j);
  CHECK(p.arities() == std::vector<std::size_t>{2});
  CHECK(canonical(io::roundtrip(j)) == canonical(io::to_json(p)));
}

TEST_CASE("fincat with a missing composition entry names the pair") {
  Json j = io::to_json(FinCat::walking_arrow());
  Json kept = Json::array();
  for (const Json& t : j["compose"])
    if (!(t[0] == "id_b" && t[1] == "f")) kept.push_back(t);
  j["compose"] = kept;
  const std::string msg = schema_path([&] { io::fincat_from_json(j); });
  CHECK(msg.find("/compose") == 0);
  CHECK(msg.find("missing entry for the composable pair") != std::string::npos);
  CHECK(msg.find(R"(["id_b","f"])") != std::string::npos);
}

TEST_CASE("schema errors carry a JSON Pointer to the offending field") {
  Json poly = io::to_json(Poly::parse("y^2 + y"));
  poly["extra"] = 1;
  CHECK(schema_path([&] { io::poly_from_json(poly); }).find("/extra | ") == 0);

  Json mor = io::to_json(hom_enumerate(Poly::parse("y"), Poly::parse("y^2"))[0]);
  mor["on_direction"]["0"].erase("1");
  CHECK(schema_path([&] { io::polymor_from_json(mor); }).find("/on_direction/0/1 | ") == 0);

  Json set = io::parse(R"({"kind":"finset","elements":[1,{"x":2}]})");
  CHECK(schema_path([&] { io::finset_from_json(set); }).find("/elements/1 | ") == 0);

  Json key = io::parse(R"({"kind":"finset","elements":["a/b","c~d"]})");
  Json fn{{"kind", "finfn"}, {"dom", key["elements"]}, {"cod", Json::array({0})}, {"map", {{"\"a/b\"", 0}, {"\"c~d\"", 0}, {"e", 0}}}};
  CHECK(schema_path([&] { io::finfn_from_json(fn); }).find("/map/e | ") == 0);
  fn["map"].erase("e");
  fn["map"].erase("\"c~d\"");
  CHECK(schema_path([&] { io::finfn_from_json(fn); }).find("/map/\"c~0d\" | ") == 0);

  CHECK(schema_path([] { io::parse("{\"kind\":"); }).find("/ | ") == 0);
  CHECK(schema_path([] { io::kind_of(Json::object()); }).find("/kind | ") == 0);
}

TEST_CASE("a fincat that fails the category laws is a domain error, not a schema error") {
  Json j = io::to_json(FinCat::walking_arrow());
  for (Json& t : j["compose"])
    if (t[0] == "id_b" && t[1] == "f") t[2] = "id_a";
  CHECK_THROWS_AS(io::fincat_from_json(j), DomainError);
  CHECK_NOTHROW(io::fincat_from_json(j, "", false));
  CHECK_FALSE(io::fincat_from_json(j, "", false).validate().ok());
}

TEST_CASE("bicomodule files resolve external comonoid references and revalidate") {
  TempDir dir;
  Comonoid c = cat_to_comonoid(FinCat::walking_arrow());
  dir.file("arrow.json", io::to_json(c));
  Json b = io::to_json(identity_bicomodule(c));
  b["left"] = "arrow.json";
  b["right"] = "arrow.json";
  const std::string path = dir.file("id.json", b);

  Json read = io::read_file(path);
  Bicomodule loaded = io::bicomodule_from_json(read, "", io::file_resolver(dir.path.string()));
  CHECK(loaded.c.carrier == c.carrier);
  CHECK(loaded.m == c.carrier);
  CHECK(bicomodule_check(loaded).ok());
  CHECK(canonical(io::roundtrip(read, io::file_resolver(dir.path.string()))) == canonical(b));

  // Without a resolver the reference is rejected; a broken referent is a domain error.
  CHECK_THROWS_AS(io::bicomodule_from_json(read), SchemaError);
  dir.file("arrow.json", io::to_json(harness::mutant_comonoid()));
  CHECK_THROWS_AS(io::bicomodule_from_json(read, "", io::file_resolver(dir.path.string())), DomainError);
  b["left"] = "missing.json";
  const std::string msg = schema_path([&] { io::bicomodule_from_json(b, "", io::file_resolver(dir.path.string())); });
  CHECK(msg.find("/left") == 0);
}

TEST_CASE("coalgebra files may reference their comonoid") {
  TempDir dir;
  Comonoid c = cat_to_comonoid(FinCat::walking_arrow());
  dir.file("arrow.json", io::to_json(c));
  corpus::Rng rng(3);
  Coalgebra x = corpus::random_coalgebra(rng, c, 2);
  Json j = io::to_json(x);
  j["comonoid"] = "arrow.json";
  Coalgebra y = io::coalgebra_from_json(j, "", io::file_resolver(dir.path.string()));
  CHECK(y.S == x.S);
  CHECK(y.kappa1 == x.kappa1);
  CHECK(y.kappa_sharp == x.kappa_sharp);
}

}  // TEST_SUITE

#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "polycalc/bicomodule.hpp"
#include "polycalc/corpus.hpp"
#include "polycalc/harness.hpp"
#include "polycalc/io.hpp"
#include "polycalc/monoidal.hpp"
#include "polycalc/poly_ops.hpp"
#include "polycalc/structures.hpp"

using namespace polycalc;
using io::Json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct Workdir {
  std::filesystem::path path;
  Workdir() {
    path = std::filesystem::temp_directory_path() /
           ("polycalc-cli-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    std::filesystem::create_directories(path);
  }
  ~Workdir() { std::filesystem::remove_all(path); }
  template <class T>
  std::string put(const std::string& name, const T& value) const {
    return put_json(name, io::to_json(value));
  }
  std::string put_json(const std::string& name, const Json& j) const {
    const std::string p = (path / name).string();
    io::write_file(p, j);
    return p;
  }
};

std::vector<Json> lines(const std::string& text) {
  std::vector<Json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(Json::parse(line));
  return out;
}

}  // namespace

TEST_SUITE("polycalc-cli") {

TEST_CASE("the dispatch table reaches every library operation from exactly one subcommand") {
  CHECK(cli::self_test() == "");
  Run r = run({"--self-test"});
  CHECK(r.code == 0);
  CHECK(r.out.find("54 operations") != std::string::npos);
  std::size_t entries = 0;
  for (const cli::Route& route : cli::routes()) entries += route.entries.size();
  CHECK(entries >= cli::library_ops().size());
}

TEST_CASE("compose y^2 with 2y gives 4y^2") {
  Workdir w;
  Run r = run({"compose", w.put("p.json", Poly::parse("y^2")), w.put("q.json", Poly::parse("2y"))});
  REQUIRE(r.code == 0);
  Poly out = io::poly_from_json(io::parse(r.out));
  CHECK(out.arities() == std::vector<std::size_t>{2, 2, 2, 2});
  CHECK(out == compose_tri(Poly::parse("y^2"), Poly::parse("2y")).materialized());
}

TEST_CASE("homs --count-only prints |Hom(y^2, 2y)| = 4, matching the enumeration") {
  Workdir w;
  const std::string p = w.put("p.json", Poly::parse("y^2")), q = w.put("q.json", Poly::parse("2y"));
  Run r = run({"homs", p, q, "--count-only"});
  CHECK(r.code == 0);
  CHECK(r.out == "4\n");
  Run all = run({"homs", p, q});
  CHECK(io::parse(all.out)["morphisms"].size() == 4);
}

TEST_CASE("migrate along the representable at a returns X(a)") {
  Workdir w;
  Comonoid c = cat_to_comonoid(FinCat::walking_arrow());
  w.put("arrow.json", c);
  Json m = io::to_json(bicomod_from_coalgebra(representable_coalgebra(c, "a")));
  m["right"] = "arrow.json";
  const std::string mpath = w.put_json("yoneda.json", m);
  corpus::Rng rng(11);
  for (int k = 0; k < 5; ++k) {
    Coalgebra x = corpus::random_coalgebra(rng, c, 3);
    Json xj = io::to_json(x);
    xj["comonoid"] = "arrow.json";
    Run r = run({"migrate", mpath, w.put_json("x.json", xj)});
    REQUIRE(r.code == 0);
    Json out = io::parse(r.out);
    CHECK(out["elements"].size() == x.kappa1.fiber(c.carrier.positions().index_of("a")).size());
  }
}

TEST_CASE("transposes survive a trip through files") {
  Workdir w;
  Poly p = Poly::parse("y + 1"), q = Poly::parse("y^2"), r = Poly::parse("2y");
  const std::string pf = w.put("p.json", p), qf = w.put("q.json", q), rf = w.put("r.json", r);
  for (const PolyMor& phi : hom_enumerate(tensor(p, q).materialized(), r)) {
    Run t = run({"closure", "--transpose", w.put("phi.json", phi), pf, qf});
    REQUIRE(t.code == 0);
    CHECK(io::parse(t.out) == io::to_json(closure_transpose(phi, p, q)));
    Run back = run({"closure", "--untranspose", w.put_json("psi.json", io::parse(t.out)), qf, rf});
    REQUIRE(back.code == 0);
    CHECK(io::polymor_from_json(io::parse(back.out)) == phi);
  }
  for (const PolyMor& psi : hom_enumerate(p, compose_tri(q, r))) {
    Run t = run({"frown", "--transpose", w.put("psi.json", psi), qf, rf});
    REQUIRE(t.code == 0);
    Json tj = io::parse(t.out);
    Run back = run({"frown", "--untranspose", pf, w.put_json("f.json", tj["f"]), qf, w.put_json("m.json", tj["map"])});
    REQUIRE(back.code == 0);
    CHECK(io::parse(back.out) == io::to_json(psi));
  }
}

TEST_CASE("opfibration and coalgebra files convert back and forth") {
  Workdir w;
  Comonoid c = cat_to_comonoid(FinCat::walking_arrow());
  corpus::Rng rng(5);
  Coalgebra x = corpus::random_coalgebra(rng, c, 2);
  Run o = run({"opfib", w.put("x.json", x)});
  REQUIRE(o.code == 0);
  Run back = run({"opfib", "--inverse", w.put_json("o.json", io::parse(o.out))});
  REQUIRE(back.code == 0);
  CHECK(io::parse(back.out) == io::to_json(x));
}

TEST_CASE("check subcommands report and exit 1 on a failed law") {
  Workdir w;
  Run good = run({"com2cat", "--check", w.put("c.json", cat_to_comonoid(FinCat::walking_arrow()))});
  CHECK(good.code == 0);
  CHECK(io::parse(good.out)["ok"] == true);
  Run bad = run({"com2cat", "--check", w.put("m.json", harness::mutant_comonoid())});
  CHECK(bad.code == 1);
  CHECK(io::parse(bad.out)["violations"].size() >= 1);
  CHECK(run({"com2cat", w.path.string() + "/m.json"}).code == 1);

  Comonoid c = cat_to_comonoid(FinCat::walking_arrow());
  Json x = io::to_json(representable_coalgebra(c, "a"));
  CHECK(run({"coalg-check", w.put_json("x.json", x)}).code == 0);
  // Send id_a somewhere else: the counit law breaks.
  for (auto& [s, row] : x["action"].items())
    if (row.contains("\"id_a\"")) row["\"id_a\""] = io::to_json(Label("f"));
  Run broken = run({"coalg-check", w.put_json("x.json", x)});
  CHECK(broken.code == 1);
  CHECK_FALSE(io::parse(broken.out)["violations"].empty());
}

TEST_CASE("usage errors exit 2 and domain errors exit 1 with a located message") {
  Workdir w;
  const std::string p = w.put("p.json", Poly::parse("y"));
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"compose", p}).code == 2);
  CHECK(run({"closure", "--eval", "--pair", p, p}).code == 2);
  CHECK(run({"laws", "--budget", "0"}).code == 2);

  Json broken = io::to_json(Poly::parse("y"));
  broken["positions"] = "nope";
  Run r = run({"compose", w.put_json("bad.json", broken), p});
  CHECK(r.code == 1);
  CHECK(r.err.find("bad.json:/positions") != std::string::npos);
  CHECK(run({"compose", (w.path / "absent.json").string(), p}).code == 1);
  CHECK(run({"laws", "--suites", "nope"}).code == 1);
}

TEST_CASE("roundtrip reproduces canonical files byte for byte") {
  Workdir w;
  const std::string path = w.put("p.json", Poly::parse("y^3 + 2y + 1"));
  Run r = run({"roundtrip", path});
  CHECK(r.code == 0);
  CHECK(r.out == io::dump(io::read_file(path)));
}

TEST_CASE("a tiny budget turns enumerations into skipped-budget records without failing") {
  Run r = run({"laws", "--budget", "10", "--suites", "closure,presheaf"});
  CHECK(r.code == 0);
  auto recs = lines(r.out);
  REQUIRE(recs.size() > 1);
  std::size_t skipped = 0;
  for (std::size_t i = 0; i + 1 < recs.size(); ++i) skipped += recs[i]["status"] == "skipped-budget";
  CHECK(skipped > 0);
  CHECK(recs.back()["summary"]["skipped-budget"] == skipped);
  CHECK(recs.back()["summary"]["fail"] == 0);
}

TEST_CASE("the mutant fixture yields exactly one failure with a replayable witness") {
  Run r = run({"laws", "--suites", "comonoid", "--mutant"});
  CHECK(r.code == 1);
  auto recs = lines(r.out);
  std::vector<Json> fails;
  for (std::size_t i = 0; i + 1 < recs.size(); ++i)
    if (recs[i]["status"] == "fail") fails.push_back(recs[i]);
  REQUIRE(fails.size() == 1);
  const Json& w = fails[0]["witness"];
  CHECK(w["case"] == "comonoid/mutant/0000");
  CHECK(w["seed"] == 0);
  CHECK_FALSE(w["law"].get<std::string>().empty());
  CHECK_FALSE(w["detail"].get<std::string>().empty());
  // The serialized inputs are themselves a loadable comonoid that fails its laws.
  CHECK_FALSE(comonoid_check(io::comonoid_from_json(w["inputs"]["comonoid"])).ok());

  Run replay = run({"laws", "--mutant", "--only", "comonoid/mutant/0000"});
  auto again = lines(replay.out);
  REQUIRE(again.size() == 2);
  CHECK(again[0] == fails[0]);
}

TEST_CASE("reports are identical across runs and across serial and parallel execution") {
  Run a = run({"laws", "--suites", "duoidal,typed,migrate", "--seed", "3"});
  Run b = run({"laws", "--suites", "duoidal,typed,migrate", "--seed", "3", "--serial"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  Run c = run({"laws", "--suites", "duoidal,typed,migrate", "--seed", "4"});
  CHECK(lines(c.out).back()["corpus_digest"] != lines(a.out).back()["corpus_digest"]);
}

}  // TEST_SUITE

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "fk/cli.hpp"
#include "fk/examples.hpp"
#include "fk/simpl.hpp"
#include "json.hpp"

using namespace fk;
using namespace fk::cli;

namespace {

std::string fixture_path(const std::string& name) { return std::string(FK_SOURCE_DIR) + "/tests/fixtures/" + name; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Report run(const std::string& fixture, const std::string& command, Options opt = {}) {
  std::string text = read_file(fixture_path(fixture));
  opt.command = command;
  opt.spec_path = fixture;
  return run_report(parse_spec(text), text, opt);
}

std::string error_of(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

std::filesystem::path fresh_dir(const std::string& tag) {
  auto d = std::filesystem::temp_directory_path() / ("fusionkit_test_" + tag);
  std::filesystem::remove_all(d);
  return d;
}

int call_main(std::vector<std::string> args) {
  args.insert(args.begin(), "fusionkit");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return main_cli(int(argv.size()), argv.data());
}

const std::vector<std::string> kFixtures{"d8_s4.fk", "z9.fk", "dihedral.fk", "a4_s4.fk"};

}  // namespace

TEST_CASE("parse the fixtures") {
  SpecDocument d = parse_spec(read_file(fixture_path("d8_s4.fk")));
  CHECK(d.of_kind("group").size() == 2);
  CHECK(d.of_kind("fusion").size() == 1);
  const Block* F = d.find("F");
  REQUIRE(F);
  CHECK(F->find("ambient")->value.text == "S4");
  CHECK(F->find("p")->value.kind == Value::Kind::Int);

  SpecDocument z = parse_spec(read_file(fixture_path("z9.fk")));
  const Stmt* m = z.find("F")->find("morphism");
  REQUIRE(m);
  CHECK(m->has_block);
  CHECK(m->children[0].value.items[0].text == "(1 4 7)(2 5 8)(3 6 9)");

  SpecDocument di = parse_spec(read_file(fixture_path("dihedral.fk")));
  CHECK(di.of_kind("family").size() == 2);
  const Value& v = di.find("small")->stmts[10].value.items[1];
  CHECK(v.kind == Value::Kind::Elt);
  CHECK(v.text == "t(1/16)(1 2)");
}

TEST_CASE("empty and comment-only files give empty documents") {
  CHECK(parse_spec("").blocks.empty());
  CHECK(parse_spec("  # nothing\n\n# here\n").blocks.empty());
  CHECK(render_spec(parse_spec("")).empty());
}

TEST_CASE("parse errors carry line and column") {
  CHECK(error_of("group G { perm (1 2) }\nfusion F { ambient=H p=2 }\n") ==
        "line 2, column 20: undefined reference 'H'");
  CHECK(error_of("group G { perm (1 2) }\ngroup G { perm (1 2) }").find("line 2, column 1: duplicate name") == 0);
  CHECK(error_of("group G { perm (1 2); colour=3 }").find("line 1, column 23: unknown key 'colour'") == 0);
  CHECK(error_of("group G { perm (1 2)").find("line 1, column 21: expected '}'") == 0);
  CHECK(error_of("group G {\n  perm (1 2) $\n}").find("line 2, column 14: unexpected character") == 0);
  CHECK(error_of("widget W { }").find("line 1, column 1: unknown block kind") == 0);
  CHECK(error_of("group G { perm (1 2) }\nfamily x { over=G }").find("line 2, column 17: 'G' is a group block") == 0);
  CHECK(error_of("group G { perm=3 }").find("'perm' expects a permutation") != std::string::npos);
  CHECK(error_of("fusion F { p=2 }").find("needs 'ambient' or 'over'") != std::string::npos);
  CHECK(error_of("pair P { p=2 }").find("needs 'ambient'") != std::string::npos);
  CHECK(error_of("ptoral T { p=2 rank=1 pi=[(1 2)] }\nfusion F { over=T morphism { src=[t(1/2)] } L=3 }")
            .find("unknown key 'L'") != std::string::npos);
}

TEST_CASE("render round-trips the fixtures") {
  for (const auto& f : kFixtures) {
    CAPTURE(f);
    SpecDocument d = parse_spec(read_file(fixture_path(f)));
    std::string r = render_spec(d);
    CHECK(parse_spec(r) == d);
    CHECK(render_spec(parse_spec(r)) == r);
  }
}

TEST_CASE("render round-trips random documents") {
  std::mt19937_64 rng(20261016);
  auto pick = [&](int n) { return int(rng() % std::uint64_t(n)); };
  auto perm = [&] {
    std::string s;
    int k = 1 + pick(3);
    std::vector<int> pts{1, 2, 3, 4, 5, 6, 7};
    std::shuffle(pts.begin(), pts.end(), rng);
    for (int c = 0, at = 0; c < k && at + 1 < 7; ++c) {
      int len = 2 + pick(2);
      if (at + len > 7) break;
      s += "(";
      for (int i = 0; i < len; ++i) s += (i ? " " : "") + std::to_string(pts[at++]);
      s += ")";
    }
    return s.empty() ? std::string("()") : s;
  };
  auto elt = [&] {
    std::string s = "t(" + std::to_string(pick(9) - 4) + "/" + std::to_string(1 << pick(5)) + ")";
    if (pick(2)) s += perm();
    return s;
  };
  for (int trial = 0; trial < 50; ++trial) {
    std::ostringstream os;
    os << "group G" << trial << " {";
    for (int i = 0, n = pick(4); i < n; ++i) os << (pick(2) ? "\n  perm " : " perm ") << perm() << ";";
    os << " }\nptoral T { p=2 rank=1 pi=[" << perm() << "] act=[[" << (pick(2) ? -1 : 1) << "]] }\n";
    os << "fusion F { over=T";
    for (int i = 0, n = pick(3); i < n; ++i)
      os << "\n  morphism { src=[" << elt() << "] img=[" << elt() << "] src_div=[[" << pick(5) << "]] L=[[-1]] }";
    os << " }\nfamily fam { over=F\n";
    for (int i = 0, n = pick(5); i < n; ++i) {
      switch (pick(4)) {
        case 0: os << "  sub torus\n"; break;
        case 1: os << "  sub [" << elt() << ", " << elt() << "]\n"; break;
        case 2: os << "  sub { gens=[" << elt() << "] div=[[1]] }\n"; break;
        default: os << "  all\n";
      }
    }
    os << "}\n";
    CAPTURE(os.str());
    SpecDocument d = parse_spec(os.str());
    CHECK(parse_spec(render_spec(d)) == d);
  }
}

TEST_CASE("saturation reports") {
  Report d8 = run("d8_s4.fk", "saturation");
  CHECK(d8.exit_code == 0);
  CHECK(d8.json["results"][0]["saturated"] == true);
  CHECK(d8.json["results"][0]["witnesses"].empty());
  CHECK(d8.json["schema"] == kSchema);

  Report z9 = run("z9.fk", "saturation");
  CHECK(z9.exit_code == 1);
  CHECK(z9.json["results"][0]["saturated"] == false);
  CHECK(z9.json["violations"].size() >= 1);
  bool receptive = false;
  for (const auto& w : z9.json["results"][0]["witnesses"])
    if (w["kind"].get<std::string>().find("receptive") != std::string::npos &&
        w["subgroup"].get<std::string>().find("order (0,3)") != std::string::npos)
      receptive = true;
  CHECK(receptive);
}

TEST_CASE("centric-radical and bullet reports") {
  Report cr = run("d8_s4.fk", "centric-radical");
  CHECK(cr.exit_code == 0);
  CHECK(cr.json["results"][0]["centric"].size() == 4);
  CHECK(cr.json["results"][0]["centric_radical"].size() == 2);

  Options o;
  o.family = "so3";
  Report b = run("dihedral.fk", "bullet", o);
  CHECK(b.exit_code == 0);
  CHECK(b.json["results"].size() == 1);
  CHECK(b.json["results"][0]["f_bullet_classes"].size() == 8);
  CHECK(b.json["results"][0]["W_order"] == 2);

  // Without a family block an infinite Sylow subgroup is refused.
  CHECK_THROWS_AS(run_report(parse_spec("ptoral T { p=2 rank=1 pi=[(1 2)] act=[[-1]] }\nfusion F { over=T }"), "",
                             Options{"saturation"}),
                  InputError);
}

TEST_CASE("normalizer, extension and transporter reports") {
  Report n = run("d8_s4.fk", "normalizer");
  CHECK(n.exit_code == 0);
  CHECK(n.json["results"][0]["subsystems_checked"].get<int>() > 0);

  Report e = run("a4_s4.fk", "extension");
  CHECK(e.exit_code == 0);
  CHECK(e.json["results"][0]["claims"].size() >= 4);
  for (const auto& c : e.json["results"][0]["claims"]) CHECK(c["ok"] == true);
  CHECK(e.json["results"][0]["LU_morphisms"].get<int>() == 2 * e.json["results"][0]["L_morphisms"].get<int>());

  Report t = run("d8_s4.fk", "transporter-axioms");
  CHECK(t.exit_code == 0);
  for (const auto& v : t.json["results"][0]["transporter"]) CHECK(v["ok"] == true);
  CHECK_THROWS_AS(run("a4_s4.fk", "transporter-axioms"), InputError);
  CHECK_THROWS_AS(run("d8_s4.fk", "extension"), InputError);
}

TEST_CASE("twisting report at low truncation") {
  Options o;
  o.truncation = 2;
  Report t = run("a4_s4.fk", "twisting", o);
  CHECK(t.exit_code == 0);
  CHECK(t.json["results"][0]["level_sizes"] == nlohmann::ordered_json::array({1, 24, 576}));
}

TEST_CASE("dumps match the library") {
  auto dir = fresh_dir("dump");
  Options o;
  o.out_dir = dir.string();
  o.truncation = 3;
  o.what = {"linking", "nerve", "transporter"};
  Report r = run("d8_s4.fk", "dump", o);
  CHECK(r.exit_code == 0);
  CHECK(r.json["results"].size() == 3);

  FiniteGroup G = examples::s4();
  ElemSet S = examples::d8_in_s4(G);
  TransporterSystem T = transporter_of(G, S, centric_objects(G, S, 2), 2);
  LinkingQuotient L = linking_quotient(T);
  auto linking = nlohmann::json::parse(read_file((dir / "F.linking.json").string()));
  CHECK(linking["morphisms"].size() == std::size_t(L.L.cat.num_morphisms()));
  CHECK(read_file((dir / "F.linking.json").string()) == L.L.cat.to_json() + "\n");
  auto nj = nlohmann::json::parse(read_file((dir / "F.nerve.json").string()));
  CHECK(nj["sizes"] == nlohmann::json(nerve(L.L.cat, 3).X.size));

  o.what = {"lu"};
  Report lu = run("a4_s4.fk", "dump", o);
  CHECK(lu.json["results"][0]["morphisms"] == 24);

  auto empty = fresh_dir("empty");
  o.out_dir = empty.string();
  o.what = {};
  Report none = run("d8_s4.fk", "dump", o);
  CHECK(none.exit_code == 0);
  CHECK(!std::filesystem::exists(empty));

  o.what = {"widgets"};
  CHECK_THROWS_AS(run("d8_s4.fk", "dump", o), InputError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("reports are deterministic") {
  for (const char* cmd : {"saturation", "centric-radical", "normalizer", "transporter-axioms"}) {
    Report a = run("d8_s4.fk", cmd), b = run("d8_s4.fk", cmd);
    CHECK(a.json.dump() == b.json.dump());
    CHECK(a.table == b.table);
  }
  Report a = run("z9.fk", "saturation"), b = run("z9.fk", "saturation");
  CHECK(a.json.dump() == b.json.dump());
}

TEST_CASE("command line exit codes") {
  auto dir = fresh_dir("main");
  std::filesystem::create_directories(dir);
  std::string out = (dir / "r.json").string();
  CHECK(call_main({"saturation", "--spec", fixture_path("d8_s4.fk"), "--json", out}) == 0);
  auto j = nlohmann::ordered_json::parse(read_file(out));
  CHECK(j["exit_code"] == 0);
  CHECK(j["command"] == "saturation");
  CHECK(call_main({"saturation", "--spec", fixture_path("z9.fk")}) == 1);
  CHECK(call_main({"saturation", "--spec", (dir / "missing.fk").string()}) == 2);
  CHECK(call_main({"nonsense", "--spec", fixture_path("d8_s4.fk")}) == 2);
  CHECK(call_main({"saturation"}) == 2);
  {
    std::ofstream bad(dir / "bad.fk");
    bad << "group G { perm (1 2) }\nfusion F { ambient=H p=2 }\n";
  }
  CHECK(call_main({"saturation", "--spec", (dir / "bad.fk").string()}) == 2);
  CHECK(call_main({"bullet", "--spec", fixture_path("d8_s4.fk"), "--truncation", "x"}) == 2);
  setenv("FUSIONKIT_BOUNDS", "max_simplices=100", 1);
  CHECK(call_main({"twisting", "--spec", fixture_path("a4_s4.fk")}) == 3);
  setenv("FUSIONKIT_BOUNDS", "no_such_bound=1", 1);
  CHECK(call_main({"saturation", "--spec", fixture_path("d8_s4.fk")}) == 2);
  unsetenv("FUSIONKIT_BOUNDS");
  bounds() = Bounds::from_env();
  CHECK(bounds().max_simplices == Bounds{}.max_simplices);
  std::filesystem::remove_all(dir);
}

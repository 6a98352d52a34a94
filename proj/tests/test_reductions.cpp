#include "doctest.h"

#include "corpus.hpp"
#include "kg2/errors.hpp"
#include "kg2/reductions.hpp"
#include "kg2/tableau.hpp"

using namespace kg2;

namespace {

std::vector<Formula> classical_corpus(std::uint64_t seed, std::size_t n) {
  kg2::testing::FormulaShape shape;
  shape.max_size = 7;
  shape.max_modalities = 2;
  shape.sugar = false;
  shape.constants = false;
  std::vector<Formula> out;
  for (const auto& f : kg2::testing::corpus(seed, 4 * n, shape)) {
    // Keep the classical fragment; turn !x into x -> 0.
    std::function<std::optional<Formula>(const Formula&)> conv = [&](const Formula& g) -> std::optional<Formula> {
      switch (g.op()) {
        case Op::Atom:
          return g;
        case Op::Neg: {
          auto a = conv(g.arg());
          if (!a) return std::nullopt;
          return Formula::impl(*a, Formula::bot());
        }
        case Op::Box:
        case Op::Dia: {
          auto a = conv(g.arg());
          if (!a) return std::nullopt;
          return Formula::unary(g.op(), *a);
        }
        case Op::And:
        case Op::Impl: {
          auto a = conv(g.lhs()), b = conv(g.rhs());
          if (!a || !b) return std::nullopt;
          return Formula::binary(g.op(), *a, *b);
        }
        default:
          return std::nullopt;
      }
    };
    if (auto c = conv(f)) out.push_back(*c);
    if (out.size() == n) break;
  }
  return out;
}

ClassicalModel random_classical(std::mt19937_64& rng, int n) {
  ClassicalModel m;
  for (int i = 0; i < n; ++i) m.worlds.push_back("w" + std::to_string(i));
  std::bernoulli_distribution coin(0.5);
  for (const auto& a : m.worlds)
    for (const auto& b : m.worlds)
      if (coin(rng)) m.rel.insert({a, b});
  for (const char* at : {"p", "q"})
    for (const auto& w : m.worlds)
      if (coin(rng)) m.val[at].insert(w);
  return m;
}

}  // namespace

TEST_CASE("satisfiability and falsifiability wrappers") {
  CHECK(print(sat_falsif_reduce(parse("p"), ReduceMode::SatToFalsif)) == "~~(p -< 0)");
  CHECK(print(sat_falsif_reduce(parse("p"), ReduceMode::FalsifToSat)) == "~~(1 -< p)");
}

TEST_CASE("the double-negation wrappers read only part of the value") {
  // phi -< 0 has the value of phi, so ~~(phi -< 0) fails exactly where v1 = 0 or v2 = 1,
  // and ~~(1 -< phi) is (1,0) exactly where v1 < 1 and v2 > 0.
  std::mt19937_64 rng(90);
  for (const auto& f : kg2::testing::corpus(89, 60)) {
    Model m = kg2::testing::random_model(rng, {});
    for (const auto& w : m.worlds) {
      TruthPair v = eval(m, w, f);
      TruthPair a = eval(m, w, sat_falsif_reduce(f, ReduceMode::SatToFalsif));
      TruthPair b = eval(m, w, sat_falsif_reduce(f, ReduceMode::FalsifToSat));
      CHECK((a != TruthPair{1, 0}) == (v.pos == 0 || v.neg == 1));
      CHECK((b == TruthPair{1, 0}) == (v.pos < 1 && v.neg > 0));
    }
  }
  // 1 is satisfiable, yet ~~(1 -< 0) is valid; q -< 1 is unsatisfiable, yet ~~((q -< 1) -< 0) is not valid.
  CHECK(check_sat(parse("1")).sat);
  CHECK(prove_valid(sat_falsif_reduce(parse("1"), ReduceMode::SatToFalsif)).valid);
  CHECK_FALSE(check_sat(parse("q -< 1")).sat);
  CHECK_FALSE(prove_valid(sat_falsif_reduce(parse("q -< 1"), ReduceMode::SatToFalsif)).valid);
}

TEST_CASE("undesignated swaps satisfiability and falsifiability") {
  CHECK(undesignated(parse("p")) == parse("~(^p & ~!p)"));
  std::mt19937_64 rng(92);
  for (const auto& f : kg2::testing::corpus(91, 150)) {
    Model m = kg2::testing::random_model(rng, {});
    for (const auto& w : m.worlds) {
      bool designated = eval(m, w, f) == TruthPair{1, 0};
      CHECK(eval(m, w, undesignated(f)) == (designated ? TruthPair{0, 1} : TruthPair{1, 0}));
    }
    Formula u = undesignated(f);
    CHECK(check_sat(f).sat == !prove_valid(u).valid);
    CHECK(!prove_valid(f).valid == check_sat(u).sat);
  }
}

TEST_CASE("nabla and triangle shapes") {
  CHECK(nabla_transform(parse("p")) == parse("~~p"));
  CHECK(nabla_transform(parse("[]p")) == parse("~~([] ~~p)"));
  CHECK(nabla_transform(parse("p -> 0")) == parse("~~(~~p -> ~~0)"));
  CHECK(triangle_transform(parse("p -> q")) == parse("^q -< ^p"));
  CHECK(triangle_transform(parse("[]p")) == parse("<>^p"));
  CHECK(triangle_transform(parse("p & q")) == parse("^p | ^q"));
  CHECK(triangle_transform(parse("p | <>q")) == parse("^p & []^q"));
  CHECK(triangle_transform(parse("0")) == parse("1"));
  for (const char* bad : {"!p", "~p", "^p", "p -< q", "1"}) {
    CHECK_THROWS_AS(nabla_transform(parse(bad)), IllegalConnective);
    CHECK_THROWS_AS(triangle_transform(parse(bad)), IllegalConnective);
  }
  CHECK(prove_valid(nabla_transform(parse("p -> p"))).valid);
}

TEST_CASE("classical evaluation") {
  ClassicalModel lone;
  lone.worlds = {"w"};
  CHECK(k_eval(lone, "w", parse("[]0")));
  CHECK_FALSE(k_eval(lone, "w", parse("<>(p | (p -> 0))")));
  ClassicalModel two;
  two.worlds = {"w", "v"};
  two.rel = {{"w", "v"}};
  two.val["p"] = {"v"};
  CHECK(k_eval(two, "w", parse("<>p")));
  CHECK_FALSE(k_eval(two, "v", parse("<>p")));
  CHECK_THROWS_AS(k_eval(two, "u", parse("p")), UnknownWorld);
}

TEST_CASE("bounded classical search") {
  CHECK_FALSE(k_countermodel_search(parse("p -> p"), 2).counter);
  auto r = k_countermodel_search(parse("[]p -> p"), 2);
  REQUIRE(r.counter);
  CHECK_FALSE(k_eval(*r.model, r.world, parse("[]p -> p")));
  CHECK_FALSE(r.model->rel.count({r.world, r.world}));
  CHECK_FALSE(k_countermodel_search(parse("[](p & q) -> []p"), 2).counter);
  CHECK_THROWS_AS(k_countermodel_search(parse("[](p & q) -> []p"), 3, 10), BudgetExceeded);
}

TEST_CASE("embedding") {
  ClassicalModel m;
  m.worlds = {"w"};
  m.rel = {{"w", "w"}};
  m.val["p"] = {"w"};
  Model e = embed_classical(m, EmbedSide::Positive);
  CHECK(e.crisp());
  CHECK(e.get_rel(Sign::Plus, "w", "w") == 1);
  CHECK(e.get_rel(Sign::Minus, "w", "w") == 1);
  CHECK(eval(e, "w", parse("p")) == TruthPair{1, 1});
}

TEST_CASE("countermodel of []p -> p embeds into witnesses for both translations") {
  Formula f = parse("[]p -> p");
  auto r = k_countermodel_search(f, 2);
  REQUIRE(r.counter);
  CHECK(eval(embed_classical(*r.model, EmbedSide::Positive), r.world, nabla_transform(f)).pos < 1);
  CHECK(eval(embed_classical(*r.model, EmbedSide::Negative), r.world, Formula::coimpl(Formula::top(), triangle_transform(f))).neg > 0);
}

TEST_CASE("embedded models evaluate the translations like classical K") {
  std::mt19937_64 rng(93);
  auto fs = classical_corpus(94, 150);
  REQUIRE(fs.size() == 150);
  for (int i = 0; i < 40; ++i) {
    ClassicalModel m = random_classical(rng, 1 + i % 3);
    Model pos = embed_classical(m, EmbedSide::Positive), neg = embed_classical(m, EmbedSide::Negative);
    for (const auto& f : fs) {
      Formula n = nabla_transform(f), t = Formula::coimpl(Formula::top(), triangle_transform(f));
      for (const auto& w : m.worlds) {
        bool k = k_eval(m, w, f);
        CHECK(k == (eval(pos, w, n).pos == 1));
        CHECK(k == (eval(neg, w, t).neg == 0));
      }
    }
  }
}

TEST_CASE("classical model documents") {
  std::mt19937_64 rng(95);
  for (int i = 0; i < 20; ++i) {
    ClassicalModel m = random_classical(rng, 3);
    ClassicalModel back = classical_from_json(classical_to_json(m));
    CHECK(back.worlds == m.worlds);
    CHECK(back.rel == m.rel);
    CHECK(back.val == m.val);
  }
  CHECK_THROWS_AS(classical_from_json(Json::parse(R"({"worlds": ["a"], "val": {"p": {"a": "1/2"}}})")), FormatError);
  CHECK_THROWS_AS(classical_from_json(Json::parse(R"({"worlds": ["a"], "rel": [["a", "b"]]})")), FormatError);
  CHECK_THROWS_AS(classical_from_json(Json::parse(R"({"worlds": ["a"], "rplus": []})")), FormatError);
}

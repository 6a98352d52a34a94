#include "doctest.h"

#include <sstream>

#include "kg2/cli.hpp"
#include "kg2/model_io.hpp"
#include "kg2/semantics.hpp"

using namespace kg2;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
  Json doc() const { return Json::parse(out); }
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(KG2_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("prove") {
  auto a = call({"prove", "p -> p"});
  CHECK(a.code == kExitOk);
  CHECK(a.doc()["verdict"] == "Valid");
  CHECK(a.err.find("Valid") != std::string::npos);

  auto b = call({"prove", "[]p -> []!<>p"});
  CHECK(b.code == kExitOk);
  Json d = b.doc();
  CHECK(d["verdict"] == "Invalid");
  Model m = model_from_json(d["countermodel"]);
  CHECK(m.worlds.size() == 3);
  CHECK(d["countermodel"]["world"] == "w0");
  CHECK(d["countermodel"]["side"] == 1);
  CHECK(eval(m, "w0", parse("[]p -> []!<>p")).pos == 0);
  CHECK(model_to_json(m).dump() == [&] {
    Json j = d["countermodel"];
    j.erase("world");
    j.erase("side");
    return j.dump();
  }());
}

TEST_CASE("identical invocations print identical documents") {
  for (std::vector<std::string> args : {std::vector<std::string>{"prove", "<>~~p -> ~~<>p"},
                                        {"sat", "~(1 -< ([]p -> []!<>p))"},
                                        {"labelled", "<>p & <>!p", "--denominator", "3"}}) {
    CHECK(call(args).out == call(args).out);
  }
}

TEST_CASE("sat, oracle and labelled") {
  CHECK(call({"sat", "p & !p"}).doc()["verdict"] == "Unsat");
  auto s = call({"sat", "p"});
  CHECK(s.doc()["verdict"] == "Sat");
  CHECK(s.doc()["model"]["world"] == "w0");

  auto o = call({"oracle", "valid", "(p & !p) -> q", "--max-worlds", "1", "--denominator", "1"});
  CHECK(o.code == kExitOk);
  CHECK(o.doc()["verdict"] == "Invalid");
  CHECK(call({"oracle", "sat", "p & !p", "--max-worlds", "1"}).doc()["verdict"] == "UnsatWithin");
  CHECK(call({"oracle", "valid", "p -> p"}).doc()["verdict"] == "ValidWithin");

  auto l = call({"labelled", "p", "--denominator", "1"});
  CHECK(l.doc()["verdict"] == "Sat");
  CHECK(call({"labelled", "p & !p", "--denominator", "2"}).doc()["verdict"] == "Unsat");
}

TEST_CASE("eval") {
  auto r = call({"eval", "--model", data("four_worlds.json"), "--world", "w0", "[]p"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "(3/5, 3/4)\n");
  CHECK(call({"eval", "--model", data("four_worlds.json"), "--world", "w0", "<>p"}).out == "(4/5, 1/2)\n");
  CHECK(call({"eval", "--model", data("four_worlds.json"), "--world", "nowhere", "p"}).code == kExitUsage);
}

TEST_CASE("transform") {
  CHECK(call({"transform", "nabla", "[]p"}).doc()["output"] == "~~[]~~p");
  CHECK(call({"transform", "triangle", "p -> q"}).doc()["output"] == "^q -< ^p");
  CHECK(call({"transform", "sat2fal", "p"}).doc()["output"] == "~~(p -< 0)");
  CHECK(call({"transform", "fal2sat", "p"}).doc()["output"] == "~~(1 -< p)");
  CHECK(call({"transform", "nabla", "!p"}).code == kExitUsage);
}

TEST_CASE("frame commands") {
  auto c = call({"frame", "check", "--frame", data("half_edge_frame.json")});
  CHECK(c.code == kExitOk);
  CHECK(c.doc()["crisp_plus"] == false);
  CHECK(c.doc()["mono_relational"] == true);
  CHECK(c.doc()["witnesses"]["crisp_plus"] == Json::array({"w", "v"}));

  auto s = call({"frame", "check", "--frame", data("half_edge_frame.json"), "--samples", "20", "--seed", "4"});
  CHECK(s.doc()["definability"]["seed"] == 4);
  CHECK(s.doc()["definability"]["formulas"].size() == 5);

  auto cm = call({"frame", "countermodel", "crisp+", "--frame", data("half_edge_frame.json")});
  CHECK(cm.code == kExitOk);
  CHECK(cm.doc()["formula"] == "^[]p -> []^p");
  Model m = model_from_json(cm.doc()["countermodel"]);
  CHECK(eval(m, "w", parse("^[]p -> []^p")) != TruthPair{1, 0});

  CHECK(call({"frame", "countermodel", "crisp-", "--frame", data("half_edge_frame.json"), "--edge", "w,v"}).code == kExitOk);
  CHECK(call({"frame", "countermodel", "mono", "--frame", data("half_edge_frame.json")}).code == kExitUsage);
  CHECK(call({"frame", "countermodel", "crisp+", "--frame", data("half_edge_frame.json"), "--edge", "w"}).code ==
        kExitUsage);
}

TEST_CASE("model commands") {
  auto st = call({"model", "star", "--model", data("four_worlds.json")});
  CHECK(st.code == kExitOk);
  Model s = model_from_json(st.doc());
  CHECK(eval(s, "w0", parse("[]p")) == TruthPair{Rational(1) / 4, Rational(2) / 5});

  auto sp = call({"model", "split", "--model", data("four_worlds.json")});
  CHECK(sp.code == kExitOk);
  Model m = model_from_json(sp.doc()["model"]);
  for (const auto& w : sp.doc()["correspondence"]["w0"])
    CHECK(eval(m, w.get<std::string>(), parse("[]p")) == TruthPair{Rational(3) / 5, Rational(3) / 4});

  CHECK(call({"model", "star", "--model", data("half_edge_frame.json")}).code == kExitUsage);
}

TEST_CASE("dot output") {
  auto r = call({"prove", "[]p -> []!<>p", "--format", "dot"});
  CHECK(r.out.rfind("digraph model {", 0) == 0);
  CHECK(r.out.find("label=\"+:1\"") != std::string::npos);
  CHECK(r.out.find("label=\"-:1\"") != std::string::npos);
}

TEST_CASE("trace goes to the error stream") {
  auto r = call({"prove", "p -> p", "--trace"});
  CHECK(r.err.find("imp_1_lt") != std::string::npos);
  CHECK(r.out.find("imp_1_lt") == std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(call({"prove", "p ->"}).code == kExitUsage);
  CHECK(call({"prove"}).code == kExitUsage);
  CHECK(call({}).code == kExitUsage);
  CHECK(call({"frobnicate"}).code == kExitUsage);
  CHECK(call({"prove", "p", "--max-states", "0"}).code == kExitUsage);
  CHECK(call({"prove", "[]p -> []!<>p", "--max-states", "1"}).code == kExitLimit);
  CHECK(call({"oracle", "valid", "[](p & q) -> []p", "--max-worlds", "3", "--denominator", "4", "--max-models", "100"}).code == kExitLimit);
  CHECK(call({"eval", "--model", data("bad_value.json"), "--world", "w0", "p"}).code == kExitBadFile);
  CHECK(call({"eval", "--model", data("missing.json"), "--world", "w0", "p"}).code == kExitBadFile);
  CHECK(call({"prove", "--formula-file", data("missing.txt")}).code == kExitBadFile);
  CHECK(call({"--help"}).code == kExitOk);
}

#include <doctest.h>

#include <sstream>

#include "qvla/cli.hpp"
#include "qvla/examples.hpp"
#include "qvla/phi_modules.hpp"

using namespace qvla;

namespace {

const std::string dir = SPEC_DIR;

int run(std::vector<std::string> args, std::string* out = nullptr, std::string* err = nullptr) {
  std::ostringstream o, e;
  int rc = cli::run(args, o, e);
  if (out) *out = o.str();
  if (err) *err = e.str();
  return rc;
}

bool same_entries(const std::vector<StructureEntry>& a, const std::vector<StructureEntry>& b) {
  if (a.size() != b.size()) return false;
  for (const auto& x : a) {
    bool found = false;
    for (const auto& y : b)
      found = found || (x.alpha == y.alpha && x.beta == y.beta && x.i == y.i && x.j == y.j && x.value == y.value);
    if (!found) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("qheis transcription equals the built-in constructor") {
  QVLA f = cli::parse_spec_file(dir + "/qheis.qvla");
  QVLA q = q_heisenberg();
  CHECK(f.epsilon == q.epsilon);
  CHECK(f.spec.T == q.spec.T);
  CHECK(f.spec.k == q.spec.k);
  auto gens = q.window_generators();
  REQUIRE(f.window_generators() == gens);
  for (const auto& a : gens) {
    CHECK(f.is_central(a) == q.is_central(a));
    for (const auto& b : gens) {
      CHECK(same_entries(f.entries(a, b), q.entries(a, b)));
      GroupElem g = GroupElem::param(q.spec, 0);
      for (const auto& beta : {q.one(), g, g.inv()}) {
        auto x = current_bracket(f, a, q.one(), b, beta), y = current_bracket(q, a, q.one(), b, beta);
        REQUIRE(x.size() == y.size());
        for (size_t i = 0; i < x.size(); ++i) CHECK(x[i].str() == y[i].str());
      }
    }
    auto rf = f.rules_for(a), rq = q.rules_for(a);
    REQUIRE(rf.size() == rq.size());
    for (size_t i = 0; i < rf.size(); ++i) {
      CHECK(rf[i].source == rq[i].source);
      CHECK(rf[i].expr == rq[i].expr);
    }
    for (int m = -4; m <= 4; ++m) CHECK(f.in_g_basis(GMode{a, m}) == q.in_g_basis(GMode{a, m}));
  }
  CHECK(run({"validate", "--spec", dir + "/qheis.qvla", "--window", "4"}) == 0);
}

TEST_CASE("minimal abelian file") {
  QVLA f = cli::parse_spec_file(dir + "/abelian.qvla");
  GeneratorIndex h{"h", {}};
  CHECK(f.entries(h, h).empty());
  CHECK(current_bracket(f, h, f.one(), h, f.one()).empty());
  CHECK(run({"validate", "--spec", dir + "/abelian.qvla"}) == 0);
}

TEST_CASE("parse errors carry line and column") {
  auto err_of = [](const std::string& text) {
    try {
      cli::parse_spec(text, "t");
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  const std::string head = "qvla-spec v1\nfield T=1 params=1\nfamily a\n";
  CHECK(err_of(head + "entry a a alpha=1 beta=q2 : a\n").rfind("t:4:", 0) == 0);  // beta outside Gamma
  CHECK(err_of(head + "entry a b : a\n").find("undeclared family 'b'") != std::string::npos);
  CHECK(err_of(head + "entry a a : 2 * b\n").find("t:4:") == 0);
  CHECK(err_of(head + "rule r : a@q1 - a@q1\n").find("cancels") != std::string::npos);
  CHECK(err_of("qvla-spec v2\n").rfind("t:1:1", 0) == 0);
  CHECK(err_of(head + "bogus\n").rfind("t:4:1", 0) == 0);
  CHECK(err_of("qvla-spec v1\nfamily a\n").find("before the field line") != std::string::npos);
  // a parameter window generates every tuple
  QVLA w = cli::parse_spec("qvla-spec v1\nfield T=2 params=0\nfamily x arity=2 window=-1..1\n", "w");
  CHECK(w.families[0].window.size() == 9);
}

TEST_CASE("exit codes") {
  std::string out, err;
  CHECK(run({"validate", "--example", "qheis", "--window", "4"}) == 0);
  CHECK(run({"validate", "--spec", dir + "/broken.qvla"}, &out) == 1);
  CHECK(out.find("FAIL skew") != std::string::npos);
  CHECK(out.find("mode 0 of") != std::string::npos);  // residual witness
  CHECK(run({"validate", "--example", "nope"}, &out, &err) == 2);
  CHECK(err.find("unknown example") != std::string::npos);
  CHECK(run({"frobnicate"}) == 2);
  CHECK(run({"validate", "--spec", dir + "/missing.qvla"}) == 2);
  CHECK(run({"iso-check", "--example", "zzz"}) == 2);
  CHECK(run({"--help"}, &out) == 0);
  CHECK(out.find("module-check") != std::string::npos);
  CHECK(run({"validate", "--help"}, &out) == 0);
  CHECK(out.find("--window INT [4]") != std::string::npos);
}

TEST_CASE("bracket prints the two virasoro-like entries") {
  std::string out;
  CHECK(run({"bracket", "--example", "vlike", "--bound", "2"}, &out) == 0);
  // (m+n) L[m+n] at i=1, m L[m+n] at j=1, for m=2, n=-1
  CHECK(out.find("[L[2], L[-1]] alpha=1 beta=1 i=1 j=0 : L[1]\n") != std::string::npos);
  CHECK(out.find("[L[2], L[-1]] alpha=1 beta=1 i=0 j=1 : 2*L[1]\n") != std::string::npos);
  size_t n = 0;
  for (size_t p = out.find("[L[2], L[-1]] alpha"); p != std::string::npos; p = out.find("[L[2], L[-1]] alpha", p + 1)) ++n;
  CHECK(n == 2);
}

TEST_CASE("output is byte identical across runs") {
  for (std::vector<std::string> args : {std::vector<std::string>{"zeta", "--example", "qheis", "--zeta", "1"},
                                        {"bracket", "--example", "affine", "--json"},
                                        {"module-check", "--example", "qheis", "--window", "2", "--order", "2"}}) {
    std::string a, b;
    int ra = run(args, &a), rb = run(args, &b);
    CHECK(ra == rb);
    CHECK(a == b);
    CHECK(!a.empty());
  }
}

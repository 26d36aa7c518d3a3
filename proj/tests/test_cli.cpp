#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "oct/cli.hpp"
#include "oct/closure.hpp"
#include "oct/incremental.hpp"
#include "oct/text.hpp"
#include "support/generators.hpp"

namespace fs = std::filesystem;
using oct::RatMode;

namespace {

struct CliResult {
  int rc;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream o, e;
  int rc = oct::run_cli(args, o, e);
  return {rc, o.str(), e.str()};
}

// Content written to a unique temp path, removed on scope exit.
class TmpFile {
 public:
  explicit TmpFile(const std::string& content) {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("octclose-test-" + std::to_string(++counter) + ".txt");
    std::ofstream(path_) << content;
  }
  ~TmpFile() {
    std::error_code ec;
    fs::remove(path_, ec);
  }
  std::string str() const { return path_.string(); }

 private:
  fs::path path_;
};

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

const char* unsat_system() { return "vars 1\nx0 <= 0\n-x0 <= -1\n"; }

}  // namespace

TEST_CASE("close emits the pinned matrices for the known system") {
  TmpFile in(ts::known_system_text());

  auto fw = run({"close", in.str(), "--algo", "fw"});
  CHECK(fw.rc == 0);
  CHECK(fw.out == ts::known_closed_csv());

  auto strong = run({"close", in.str()});  // --algo defaults to strong
  CHECK(strong.rc == 0);
  CHECK(strong.out == ts::known_strong_csv());

  // Every bound of this system is even, so its tight form is the strong one.
  auto tight = run({"close", in.str(), "--algo", "tight", "--mode", "int"});
  CHECK(tight.rc == 0);
  CHECK(tight.out == ts::known_strong_csv());

  auto packed = run({"close", in.str(), "--algo", "fw", "--backend", "codbm"});
  CHECK(packed.rc == 0);
  CHECK(packed.out == fw.out);
}

TEST_CASE("close reports unsatisfiable systems with exit code 2") {
  TmpFile in(unsat_system());
  auto r = run({"close", in.str(), "--algo", "fw"});
  CHECK(r.rc == 2);
  CHECK(r.out == "UNSAT\n");
}

TEST_CASE("tight closure outside int mode is a usage error") {
  TmpFile in(ts::known_system_text());
  auto r = run({"close", in.str(), "--algo", "tight"});
  CHECK(r.rc == 1);
  CHECK(contains(r.err, "requires --mode int"));

  auto ri = run({"incr", in.str(), "x0 <= 1", "--algo", "tight", "--mode", "f64"});
  CHECK(ri.rc == 1);
  CHECK(contains(ri.err, "requires --mode int"));

  auto rb = run({"bench", "--algos", "tight", "--trials", "1"});
  CHECK(rb.rc == 1);
  CHECK(contains(rb.err, "requires --mode int"));
}

TEST_CASE("incr dumps the updated matrix and its min count") {
  TmpFile in(ts::known_system_text());

  auto closed = ts::oracle_closure(oct::from_constraints<RatMode>(2, ts::known_system<RatMode>()));
  REQUIRE(closed.is_closed());
  auto o = oct::translate(oct::parse_constraint_line<RatMode>(2, "x0 - x1 <= 0")).front();
  auto want = oct::incr(closed.dbm(), o);
  REQUIRE(want.is_closed());

  auto r = run({"incr", in.str(), "x0 - x1 <= 0", "--count-mins"});
  CHECK(r.rc == 0);
  CHECK(r.out == oct::dump_csv<RatMode>(want.dbm()) + "min_ops=64\n");

  auto rs = run({"incr", in.str(), "x0 - x1 <= 0", "--algo", "strong", "--count-mins"});
  CHECK(rs.rc == 0);
  CHECK(contains(rs.out, "min_ops=76\n"));

  auto rp = run({"incr", in.str(), "x0 - x1 <= 0", "--backend", "codbm"});
  CHECK(rp.rc == 0);
  CHECK(rp.out == oct::dump_csv<RatMode>(want.dbm()));
}

TEST_CASE("incr refuses an unsatisfiable base and reports a fast cut") {
  TmpFile bad(unsat_system());
  auto r = run({"incr", bad.str(), "x0 <= 5"});
  CHECK(r.rc == 2);
  CHECK(contains(r.err, "PreconditionError"));

  TmpFile ok("vars 1\nx0 <= 0\n");
  // A constraint starting with '-' needs the standard end-of-options marker.
  auto cut = run({"incr", "--count-mins", ok.str(), "--", "-x0 <= -1"});
  CHECK(cut.rc == 2);
  CHECK(cut.out == "UNSAT\nmin_ops=0\n");
}

TEST_CASE("in-place incr matches the out-of-place run") {
  TmpFile in(ts::known_system_text());
  auto want = run({"incr", in.str(), "x0 + x1 <= 1"});
  REQUIRE(want.rc == 0);

  for (const char* order : {"rowmajor", "random:7", "random:99"}) {
    auto got = run({"incr", in.str(), "x0 + x1 <= 1", "--in-place", "--order", order});
    CHECK(got.rc == 0);
    CHECK(got.out == want.out);
  }

  auto strong = run({"incr", in.str(), "x0 + x1 <= 1", "--algo", "strong"});
  auto strong_in_place = run({"incr", in.str(), "x0 + x1 <= 1", "--algo", "strong", "--in-place",
                              "--order", "random:3"});
  REQUIRE(strong.rc == 0);
  CHECK(strong_in_place.rc == 0);
  CHECK(strong_in_place.out == strong.out);

  auto no_form = run({"incr", in.str(), "x0 <= 1", "--algo", "mine", "--in-place"});
  CHECK(no_form.rc == 1);
  CHECK(contains(no_form.err, "no in-place form"));

  auto bad_order = run({"incr", in.str(), "x0 <= 1", "--in-place", "--order", "spiral"});
  CHECK(bad_order.rc == 1);

  auto packed_mine = run({"incr", in.str(), "x0 <= 1", "--algo", "hoist", "--backend", "codbm"});
  CHECK(packed_mine.rc == 1);
  CHECK(contains(packed_mine.err, "no compact-backend form"));
}

TEST_CASE("check prints one flag per closure property") {
  TmpFile strong_csv(ts::known_strong_csv());
  auto r = run({"check", strong_csv.str()});
  CHECK(r.rc == 0);
  CHECK(contains(r.out, "coherent: true\n"));
  CHECK(contains(r.out, "consistent: true\n"));
  CHECK(contains(r.out, "closed: true\n"));
  CHECK(contains(r.out, "strongly_closed: true\n"));
  CHECK(contains(r.out, "weakly_closed: true\n"));
  CHECK(contains(r.out, "tightly_closed: false\n"));
  CHECK(contains(r.out, "warning: tight closure is undefined in this numeric mode"));

  auto ri = run({"check", strong_csv.str(), "--mode", "int"});
  CHECK(ri.rc == 0);
  CHECK(contains(ri.out, "tightly_closed: true\n"));
  CHECK_FALSE(contains(ri.out, "warning:"));

  TmpFile closed_csv(ts::known_closed_csv());
  auto rc = run({"check", closed_csv.str()});
  CHECK(rc.rc == 0);
  CHECK(contains(rc.out, "closed: true\n"));
  CHECK(contains(rc.out, "strongly_closed: false\n"));
}

TEST_CASE("gen is deterministic and its output feeds back into close") {
  std::vector<std::string> args{"gen", "--vars", "3", "--constraints", "5",
                                "--seed", "9", "--trial", "2"};
  auto a = run(args);
  auto b = run(args);
  CHECK(a.rc == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("vars 3\n", 0) == 0);
  CHECK(contains(a.out, "# extra: "));

  TmpFile sys(a.out);  // the extra stays a comment, so close sees the system
  auto closed = run({"close", sys.str(), "--mode", "int", "--algo", "fw"});
  CHECK(closed.rc == 0);
}

TEST_CASE("bench emits the CSV protocol with medians appended") {
  auto r = run({"bench", "--trials", "2", "--vars", "2", "--constraints", "5",
                "--mode", "int", "--seed", "3"});
  CHECK(r.rc == 0);
  CHECK(r.out.rfind("algo,n,trial,wall_nanos,min_ops,outcome,checksum\n", 0) == 0);
  CHECK(contains(r.out, "# median,incr,"));
  CHECK(contains(r.out, "# median,tight,"));

  auto rl = run({"bench", "--trials", "2", "--vars", "2", "--algos", "incr,hoist"});
  CHECK(rl.rc == 0);
  CHECK(contains(rl.out, "# median,hoist,"));
}

TEST_CASE("file output lands in the requested paths") {
  TmpFile in(ts::known_system_text());
  TmpFile out_file("");
  auto r = run({"close", in.str(), "--algo", "fw", "--out", out_file.str()});
  CHECK(r.rc == 0);
  CHECK(r.out.empty());
  std::ifstream f(out_file.str());
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == ts::known_closed_csv());
}

TEST_CASE("malformed input and usage mistakes exit with code 1") {
  TmpFile bad("vars 2\nx0 <= \n");
  auto r = run({"close", bad.str()});
  CHECK(r.rc == 1);
  CHECK(contains(r.err, "error:"));

  CHECK(run({"close", "/nonexistent/no-such-file"}).rc == 1);
  CHECK(run({"close"}).rc == 1);
  CHECK(run({"frobnicate"}).rc == 1);
  CHECK(run({}).rc == 1);

  TmpFile in(ts::known_system_text());
  CHECK(run({"close", in.str(), "--bogus"}).rc == 1);
  CHECK(run({"close", in.str(), "--algo", "warp"}).rc == 1);
  CHECK(run({"close", in.str(), "--mode", "hex"}).rc == 1);

  auto help = run({"--help"});
  CHECK(help.rc == 0);
  CHECK(contains(help.out, "close"));
  CHECK(contains(help.out, "bench"));
}

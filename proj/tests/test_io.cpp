#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "qd/cli.hpp"
#include "qd/discord.hpp"
#include "qd/entropy.hpp"
#include "qd/errors.hpp"
#include "qd/rng.hpp"
#include "qd/state_io.hpp"

using namespace qd;

namespace {

struct CliRun {
  int exit_code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run_command(args, out, err);
  return CliRun{code, out.str(), err.str()};
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / "qdiscord_test";
    std::filesystem::create_directories(path);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

DensityMatrix bell_state() {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
  return DensityMatrix(std::move(m), {2, 2});
}

}  // namespace

TEST_CASE("serialize/parse round-trips the maximally mixed qubit") {
  const DensityMatrix rho(CMatrix(CMatrix::Identity(2, 2) * 0.5), {2});
  const std::string text = serialize_state(rho);
  const DensityMatrix parsed = parse_state(text);
  CHECK(parsed.dims() == std::vector<int>{2});
  CHECK(max_abs(parsed.matrix() - rho.matrix()) == 0.0);
}

TEST_CASE("canonical form is a fixed point of parse-then-serialize") {
  SeededRng rng(3);
  const DensityMatrix flat = random_density(6, 4, rng);
  const DensityMatrix rho(flat.matrix(), {2, 3});
  StateFile file = to_state_file(rho, {{"kind", "test"}, {"note", "round trip"}});
  const std::string text = serialize_state_file(file);
  const std::string again = serialize_state_file(parse_state_file(text));
  CHECK(text == again);
  CHECK(text.back() == '\n');

  // values survive exactly (0 ulps)
  const DensityMatrix parsed = parse_state(text);
  CHECK(max_abs(parsed.matrix() - rho.matrix()) == 0.0);

  // metadata survives the round trip
  CHECK(parse_state_file(text).metadata.at("note") == "round trip");
}

TEST_CASE("equal states serialize identically") {
  SeededRng rng1(9), rng2(9);
  const DensityMatrix a = random_density(3, 3, rng1);
  const DensityMatrix b = random_density(3, 3, rng2);
  CHECK(serialize_state(a) == serialize_state(b));
}

TEST_CASE("parse errors carry position or invariant details") {
  CHECK_THROWS_WITH_AS(parse_state("{\"dims\": [2,"), doctest::Contains("syntax error"),
                       ValidationError);

  // trace 0.9 must name the unit-trace invariant and the deviation
  const DensityMatrix rho(CMatrix(CMatrix::Identity(2, 2) * 0.5), {2});
  StateFile file = to_state_file(rho);
  file.matrix_re[1][1] = 0.4;
  const std::string text = serialize_state_file(file);
  try {
    parse_state(text);
    FAIL("expected validation error");
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    CHECK(what.find("unit-trace") != std::string::npos);
    CHECK(what.find("0.1") != std::string::npos);
  }

  // dims/shape mismatch
  StateFile bad = to_state_file(rho);
  bad.dims = {3};
  CHECK_THROWS_AS(parse_state_file(serialize_state_file(bad)), ValidationError);
}

TEST_CASE("digest is stable and content sensitive") {
  CHECK(content_digest("") == "fnv1a64:cbf29ce484222325");
  CHECK(content_digest("a") != content_digest("b"));
}

TEST_CASE("swap_bipartite exchanges the subsystems") {
  SeededRng rng(12);
  const DensityMatrix a = random_density(2, 2, rng);
  const DensityMatrix b = random_density(3, 3, rng);
  const DensityMatrix ab = tensor(a, b);
  const DensityMatrix ba = swap_bipartite(ab);
  CHECK(ba.dims() == std::vector<int>{3, 2});
  CHECK(max_abs(ba.matrix() - tensor(b, a).matrix()) < 1e-12);
}

TEST_CASE("cli gen/entropy/discord pipeline on the Bell state") {
  TempDir tmp;
  const std::string bell = tmp.file("bell.qst");
  const CliRun gen = run({"gen", "--kind", "bell", "--dims", "2,2", "--out", bell});
  CHECK(gen.exit_code == 0);
  CHECK(gen.out.find("output_digest: fnv1a64:") != std::string::npos);

  const auto parse_field = [](const std::string& text, const std::string& key) {
    const std::size_t pos = text.find(key + ": ");
    REQUIRE(pos != std::string::npos);
    return std::stod(text.substr(pos + key.size() + 2));
  };

  const CliRun entropy = run({"entropy", "--state", bell});
  CHECK(entropy.exit_code == 0);
  CHECK(std::abs(parse_field(entropy.out, "von_neumann_entropy")) < 1e-9);
  CHECK(parse_field(entropy.out, "mutual_information") == doctest::Approx(2.0).epsilon(1e-9));

  const CliRun disc = run({"discord", "--state", bell, "--starts", "8"});
  CHECK(disc.exit_code == 0);
  CHECK(disc.out.find("command: discord") != std::string::npos);
  CHECK(parse_field(disc.out, "discord") == doctest::Approx(1.0).epsilon(1e-6));

  const CliRun oracle = run({"oracle", "--state", bell, "--grid", "64"});
  CHECK(oracle.exit_code == 0);
  const std::string key = "min_measured_conditional_entropy: ";
  const std::size_t pos = oracle.out.find(key);
  REQUIRE(pos != std::string::npos);
  const double oracle_min = std::stod(oracle.out.substr(pos + key.size()));
  CHECK(std::abs(oracle_min) < 1e-9);
}

TEST_CASE("cli certify distinguishes generated kinds") {
  TempDir tmp;
  const std::string cq = tmp.file("cq.qst");
  CHECK(run({"gen", "--kind", "zero-discord", "--dims", "3,2", "--seed", "4", "--out", cq})
            .exit_code == 0);
  const CliRun accept = run({"certify", "--state", cq});
  CHECK(accept.exit_code == 0);
  CHECK(accept.out.find("verdict: accepted") != std::string::npos);

  const std::string rand = tmp.file("rand.qst");
  CHECK(run({"gen", "--kind", "random", "--dims", "2,2", "--seed", "5", "--out", rand})
            .exit_code == 0);
  const CliRun reject = run({"certify", "--state", rand});
  CHECK(reject.exit_code == 0);
  CHECK(reject.out.find("verdict: rejected") != std::string::npos);
}

TEST_CASE("cli ssa and extend/verify-proof work end to end") {
  TempDir tmp;
  const std::string bell = tmp.file("bell2.qst");
  REQUIRE(run({"gen", "--kind", "bell", "--dims", "2,2", "--out", bell}).exit_code == 0);

  const std::string ext = tmp.file("bell_ext.qst");
  const CliRun extend =
      run({"extend", "--state", bell, "--basis", "computational", "--out", ext});
  CHECK(extend.exit_code == 0);
  CHECK(extend.out.find("output_dims: 2,2,2") != std::string::npos);

  const auto parse_field = [](const std::string& text, const std::string& key) {
    const std::size_t pos = text.find(key + ": ");
    REQUIRE(pos != std::string::npos);
    return std::stod(text.substr(pos + key.size() + 2));
  };

  const CliRun ssa = run({"ssa", "--state", ext});
  CHECK(ssa.exit_code == 0);
  CHECK(ssa.out.find("classification: quantum_positive") != std::string::npos);
  CHECK(parse_field(ssa.out, "ssa_quantity") == doctest::Approx(1.0).epsilon(1e-9));

  const CliRun verify =
      run({"verify-proof", "--state", bell, "--basis", "computational"});
  CHECK(verify.exit_code == 0);
  CHECK(parse_field(verify.out, "ssa_gap") == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(parse_field(verify.out, "max_deviation") <= 1e-8);

  const std::string classical = tmp.file("classical.qst");
  REQUIRE(run({"gen", "--kind", "classical", "--dims", "2,2,2", "--seed", "7", "--out",
               classical})
              .exit_code == 0);
  const CliRun ssa2 = run({"ssa", "--state", classical});
  CHECK(ssa2.exit_code == 0);
}

TEST_CASE("cli --swap computes discord of the exchanged state") {
  TempDir tmp;
  const std::string path = tmp.file("asym.qst");
  REQUIRE(run({"gen", "--kind", "random", "--dims", "2,3", "--seed", "11", "--out", path})
              .exit_code == 0);
  const CliRun swapped = run({"discord", "--state", path, "--swap", "--starts", "8"});
  CHECK(swapped.exit_code == 0);

  // cross-check against the library on the manually swapped state
  const DensityMatrix rho = parse_state(read_text_file(path));
  OptimizerConfig cfg;
  cfg.starts = 8;
  const DiscordResult direct = discord(swap_bipartite(rho), cfg);
  char expect[64];
  std::snprintf(expect, sizeof expect, "discord: %.17g", direct.discord);
  CHECK(swapped.out.find(expect) != std::string::npos);
}

TEST_CASE("cli reports are byte-identical across reruns") {
  TempDir tmp;
  const std::string path = tmp.file("det.qst");
  REQUIRE(run({"gen", "--kind", "random", "--dims", "2,2", "--seed", "21", "--out", path})
              .exit_code == 0);
  const std::string first_file = read_text_file(path);
  REQUIRE(run({"gen", "--kind", "random", "--dims", "2,2", "--seed", "21", "--out", path})
              .exit_code == 0);
  CHECK(first_file == read_text_file(path));

  for (const std::vector<std::string> cmd :
       {std::vector<std::string>{"discord", "--state", path, "--seed", "3", "--starts", "8"},
        std::vector<std::string>{"certify", "--state", path, "--seed", "3"},
        std::vector<std::string>{"entropy", "--state", path, "--json"}}) {
    const CliRun a = run(cmd);
    const CliRun b = run(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("cli error paths use the documented exit codes") {
  const CliRun unknown = run({"frobnicate"});
  CHECK(unknown.exit_code == 1);
  CHECK(unknown.err.find("Usage") != std::string::npos);

  const CliRun missing = run({"entropy", "--state", "/nonexistent/nope.qst"});
  CHECK(missing.exit_code == 1);
  CHECK(missing.err.find("input error") != std::string::npos);

  const CliRun badflag = run({"entropy", "--bogus"});
  CHECK(badflag.exit_code == 1);

  TempDir tmp;
  const std::string bad = tmp.file("bad.qst");
  write_text_file(bad, "{\"dims\": [2], \"matrix_re\": [[0.5, 0], [0, 0.4]], "
                       "\"matrix_im\": [[0, 0], [0, 0]]}\n");
  const CliRun invalid = run({"entropy", "--state", bad});
  CHECK(invalid.exit_code == 1);
  CHECK(invalid.err.find("unit-trace") != std::string::npos);
}

TEST_CASE("json reports parse and mirror the text fields") {
  TempDir tmp;
  const std::string bell = tmp.file("bell3.qst");
  REQUIRE(run({"gen", "--kind", "bell", "--dims", "2,2", "--out", bell}).exit_code == 0);
  const CliRun json = run({"entropy", "--state", bell, "--json"});
  CHECK(json.exit_code == 0);
  CHECK(json.out.find("\"command\": \"entropy\"") != std::string::npos);
  const std::string key = "\"mutual_information\": ";
  const std::size_t pos = json.out.find(key);
  REQUIRE(pos != std::string::npos);
  CHECK(std::stod(json.out.substr(pos + key.size())) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("serialized bell state parses back to the library constant") {
  TempDir tmp;
  const std::string bell = tmp.file("bell4.qst");
  REQUIRE(run({"gen", "--kind", "bell", "--dims", "2,2", "--out", bell}).exit_code == 0);
  const DensityMatrix parsed = parse_state(read_text_file(bell));
  CHECK(max_abs(parsed.matrix() - bell_state().matrix()) == 0.0);
}

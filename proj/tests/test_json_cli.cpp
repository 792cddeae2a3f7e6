#include <catch2/catch_amalgamated.hpp>

#include "mwkit/json_io.hpp"
#include "mwkit/sampling.hpp"
#include "mwkit/verify.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mwkit;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() /
                 ("mwkit_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::string& args) {
  const fs::path out = scratch_dir() / "stdout.txt";
  const fs::path err = scratch_dir() / "stderr.txt";
  const std::string cmd = std::string(MWKIT_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  return {WEXITSTATUS(status), read_file(out), read_file(err)};
}

}  // namespace

TEST_CASE("JSON round trips preserve every value bit") {
  Rng rng(2);
  SECTION("free generator") {
    for (int n : {1, 2, 3}) {
      const FreeGenerator g = random_free_generator(rng, n);
      const FreeGenerator back = generator_from_json(generator_to_json(g));
      REQUIRE(max_abs(back.P() - g.P()) == 0.0);
      REQUIRE(max_abs(back.L() - g.L()) == 0.0);
      REQUIRE(max_abs(back.Q() - g.Q()) == 0.0);
      REQUIRE(back.m() == g.m());
    }
  }
  SECTION("gaussian state") {
    const GaussianState g = random_gaussian(rng, 2);
    const GaussianState back = gaussian_from_json(gaussian_to_json(g));
    REQUIRE(state_param_distance(back, g) == 0.0);
  }
  SECTION("grid function") {
    const GridFunction f =
        GridFunction::sample(GaussianState::standard(1), GridSpec(1, 6.0, 16));
    const GridFunction back = grid_from_json(grid_to_json(f));
    REQUIRE(max_abs_diff(back, f) == 0.0);
  }
  SECTION("symplectic matrix") {
    const SymplecticMatrix S = random_symplectic(rng, 2);
    REQUIRE(max_abs(matrix_from_json(matrix_to_json(S.entries(), 2)) - S.entries()) ==
            0.0);
  }
  SECTION("free pair") {
    const FreePair pair = factor_free_pair(random_symplectic(rng, 1), 5);
    const FreePair back = pair_from_json(pair_to_json(pair));
    REQUIRE(max_abs(back.first.P() - pair.first.P()) == 0.0);
    REQUIRE(back.lambda == pair.lambda);
  }
  SECTION("cocycle result") {
    const SymplecticMatrix J(standard_J(1));
    const Json j = cocycle_to_json(cocycle_sign(J, J, 3, 3, 3));
    REQUIRE(j.at("sign").get<int>() == 1);
    REQUIRE(std::abs(j.at("ratio_re").get<double>() - 1.0) <= 1e-12);
  }
}

TEST_CASE("malformed JSON is reported as usage errors") {
  REQUIRE_THROWS_AS(mat_from_rows(Json::array()), UsageError);
  REQUIRE_THROWS_AS(mat_from_rows(Json{{1.0, 2.0}, Json::array({3.0})}), UsageError);
  Json j = generator_to_json(
      FreeGenerator(Mat::Zero(1, 1), Mat::Identity(1, 1), Mat::Zero(1, 1), 0));
  j["n"] = 2;
  REQUIRE_THROWS_AS(generator_from_json(j), UsageError);
}

TEST_CASE("verification report is deterministic for a fixed seed") {
  const VerificationReport a = run_verification(7, {1});
  const VerificationReport b = run_verification(7, {1});
  REQUIRE(report_to_json(a).dump() == report_to_json(b).dump());
  REQUIRE(a.overall);
}

TEST_CASE("cli: maslov") {
  const fs::path good = scratch_dir() / "gen.json";
  write_file(good, R"({"n":1,"P":[[0]],"L":[[1]],"Q":[[0]],"m":0})");
  const CliResult ok = run_cli("maslov --input " + good.string());
  REQUIRE(ok.exit_code == 0);
  REQUIRE(Json::parse(ok.out) == Json({{"m", 0}, {"inert", 1}, {"nu", 3}}));

  const fs::path shifted = scratch_dir() / "gen2.json";
  write_file(shifted, R"({"n":1,"P":[[0]],"L":[[1]],"Q":[[0]],"m":2})");
  REQUIRE(Json::parse(run_cli("maslov --input " + shifted.string()).out) ==
          Json({{"m", 2}, {"inert", 1}, {"nu", 1}}));

  const fs::path degen = scratch_dir() / "gen3.json";
  write_file(degen, R"({"n":1,"P":[[1]],"L":[[1]],"Q":[[1]],"m":0})");
  const CliResult bad = run_cli("maslov --input " + degen.string());
  REQUIRE(bad.exit_code == 1);
  REQUIRE(bad.err.find("det(P+Q-L-L^T)=0") != std::string::npos);

  REQUIRE(run_cli("maslov --input /nonexistent.json").exit_code == 2);
}

TEST_CASE("cli: cayley") {
  const fs::path mj = scratch_dir() / "J.json";
  write_file(mj, R"({"n":1,"rows":[[0,1],[-1,0]]})");
  const CliResult r = run_cli("cayley --input " + mj.string());
  REQUIRE(r.exit_code == 0);
  const Mat M = matrix_from_json(Json::parse(r.out));
  REQUIRE(max_abs(M - 0.5 * Mat::Identity(2, 2)) <= 1e-12);

  const fs::path bad = scratch_dir() / "shear.json";
  write_file(bad, R"({"n":1,"rows":[[1,1],[0,1]]})");
  REQUIRE(run_cli("cayley --input " + bad.string()).exit_code == 1);
}

TEST_CASE("cli: decompose") {
  const fs::path shear = scratch_dir() / "shear_in.json";
  write_file(shear, R"({"n":1,"rows":[[1,1],[0,1]]})");
  const fs::path out = scratch_dir() / "pair.json";
  const CliResult r =
      run_cli("decompose --input " + shear.string() + " --out " + out.string());
  REQUIRE(r.exit_code == 0);
  const Json j = Json::parse(read_file(out));
  REQUIRE(j.at("residual").get<double>() <= 1e-10);
  REQUIRE(j.contains("first_maslov"));
  REQUIRE(j.contains("second_maslov"));
  const FreePair pair = pair_from_json(j);
  Mat want(2, 2);
  want << 1, 1, 0, 1;
  REQUIRE(max_abs(pair_product(pair) - want) <= 1e-10);

  const fs::path notsym = scratch_dir() / "notsym.json";
  write_file(notsym, R"({"n":1,"rows":[[2,0],[0,2]]})");
  const CliResult bad = run_cli("decompose --input " + notsym.string());
  REQUIRE(bad.exit_code == 1);
  REQUIRE(bad.err.find("not symplectic") != std::string::npos);
}

TEST_CASE("cli: apply") {
  const GaussianState g0 = GaussianState::standard(1);
  const fs::path state = scratch_dir() / "g0.json";
  write_file(state, gaussian_to_json(g0).dump());

  SECTION("hw with z0 = 0 echoes the state") {
    const fs::path params = scratch_dir() / "z0.json";
    write_file(params, R"({"x":[0.0],"p":[0.0]})");
    const CliResult r = run_cli("apply --op hw --params " + params.string() +
                                " --state " + state.string());
    REQUIRE(r.exit_code == 0);
    REQUIRE(state_param_distance(gaussian_from_json(Json::parse(r.out)), g0) == 0.0);
  }
  SECTION("swm with the modified Fourier generator") {
    const fs::path params = scratch_dir() / "genJ.json";
    write_file(params, R"({"n":1,"P":[[0]],"L":[[1]],"Q":[[0]],"m":0})");
    const CliResult r = run_cli("apply --op swm --params " + params.string() +
                                " --state " + state.string());
    REQUIRE(r.exit_code == 0);
    const GaussianState out = gaussian_from_json(Json::parse(r.out));
    REQUIRE(std::abs(out.amp() / g0.amp() - std::exp(Complex(0, -kPi / 4))) <= 1e-12);
  }
  SECTION("mw on a parity target") {
    const fs::path params = scratch_dir() / "mw.json";
    write_file(params, R"({"n":1,"rows":[[-1,0],[0,-1]],"nu":0})");
    const CliResult r = run_cli("apply --op mw --params " + params.string() +
                                " --state " + state.string());
    REQUIRE(r.exit_code == 0);
    REQUIRE(state_param_distance(gaussian_from_json(Json::parse(r.out)), g0) <= 1e-12);
  }
  SECTION("mw with eigenvalue one fails mathematically") {
    const fs::path params = scratch_dir() / "mw_bad.json";
    write_file(params, R"({"n":1,"rows":[[1,1],[0,1]],"nu":0})");
    const CliResult r = run_cli("apply --op mw --params " + params.string() +
                                " --state " + state.string());
    REQUIRE(r.exit_code == 1);
    REQUIRE(r.err.find("det(S - I) = 0") != std::string::npos);
  }
  SECTION("hw on a grid state") {
    const GridFunction f = GridFunction::sample(g0, GridSpec(1, 6.0, 32));
    const fs::path grid = scratch_dir() / "grid.json";
    write_file(grid, grid_to_json(f).dump());
    const fs::path params = scratch_dir() / "z1.json";
    write_file(params, R"({"x":[0.375],"p":[1.0]})");
    const CliResult r = run_cli("apply --op hw --params " + params.string() +
                                " --state " + grid.string());
    REQUIRE(r.exit_code == 0);
    const GridFunction out = grid_from_json(Json::parse(r.out));
    REQUIRE(out.spec().N == 32);
  }
  SECTION("unknown operator is a usage error") {
    const fs::path params = scratch_dir() / "z2.json";
    write_file(params, R"({"x":[0.0],"p":[0.0]})");
    REQUIRE(run_cli("apply --op qft --params " + params.string() + " --state " +
                    state.string())
                .exit_code == 2);
  }
}

TEST_CASE("cli: verify") {
  const fs::path report1 = scratch_dir() / "report1.json";
  const fs::path report2 = scratch_dir() / "report2.json";
  REQUIRE(run_cli("verify --seed 11 --dims 1 --report " + report1.string()).exit_code ==
          0);
  REQUIRE(run_cli("verify --seed 11 --dims 1 --report " + report2.string()).exit_code ==
          0);
  REQUIRE(read_file(report1) == read_file(report2));  // bit-identical rerun
  const Json j = Json::parse(read_file(report1));
  REQUIRE(j.at("overall").get<bool>());
  REQUIRE(j.at("seed").get<std::uint64_t>() == 11);
  for (const auto& c : j.at("cases"))
    REQUIRE(c.at("passed").get<bool>() ==
            (c.at("max_error").get<double>() <= c.at("tolerance").get<double>()));

  // unwritable report path
  REQUIRE(run_cli("verify --seed 11 --dims 1 --report /nonexistent_dir/x.json")
              .exit_code == 2);

  // dims outside {1,2,3} are malformed requests
  REQUIRE(run_cli("verify --seed 11 --dims 5").exit_code == 2);
}

// mwkit command-line tool: verification suite, index computation, matrix
// factorization, operator application, and the Cayley-type parametrization.
//
// Exit codes: 0 success, 1 mathematical failure (degenerate input, violated
// precondition), 2 I/O error or malformed input.

#include "mwkit/mwkit.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace mwkit;

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw UsageError("write to " + path + " failed");
}

int cmd_verify(std::uint64_t seed, const std::vector<int>& dims,
               const std::string& report_path) {
  const VerificationReport report = run_verification(seed, dims);
  for (const auto& c : report.cases)
    std::printf("[%s] %-32s instances=%5d max_error=%.3e tolerance=%.1e\n",
                c.passed ? "PASS" : "FAIL", c.property_id.c_str(), c.instances,
                c.max_error, c.tolerance);
  std::printf("overall: %s\n", report.overall ? "PASS" : "FAIL");
  if (!report_path.empty())
    write_text_file(report_path, report_to_json(report).dump(2) + "\n");
  return report.overall ? 0 : 1;
}

int cmd_maslov(const std::string& input) {
  const FreeGenerator g = generator_from_json(read_json_file(input));
  std::cout << maslov_to_json(mw_index(g)).dump() << "\n";
  return 0;
}

int cmd_cayley(const std::string& input) {
  const Json j = read_json_file(input);
  const SymplecticMatrix S(matrix_from_json(j), kTolStructural * tol_scale());
  std::cout << matrix_to_json(cayley_ms(S), S.dof()).dump() << "\n";
  return 0;
}

int cmd_decompose(const std::string& input, const std::string& out_path,
                  std::uint64_t seed) {
  const Json j = read_json_file(input);
  const Mat m = matrix_from_json(j);
  if (!is_symplectic(m, kTolStructural * tol_scale()))
    throw InvalidParameterError("decompose: input is not symplectic (S^T J S != J)");
  const SymplecticMatrix S(m, kTolStructural * tol_scale());
  const FreePair pair = factor_free_pair(S, seed);
  Json out = pair_to_json(pair);
  out["first_maslov"] = maslov_to_json(mw_index(pair.first));
  out["second_maslov"] = maslov_to_json(mw_index(pair.second));
  out["residual"] = max_abs(pair_product(pair) - S.entries());
  const std::string text = out.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    write_text_file(out_path, text);
  return 0;
}

int cmd_apply(const std::string& op, const std::string& params_path,
              const std::string& state_path, const std::string& out_path) {
  const Json params = read_json_file(params_path);
  const Json state = read_json_file(state_path);
  const bool gaussian = state.contains("gamma_re");
  const bool grid = state.contains("spec");
  if (gaussian == grid)
    throw UsageError("apply: state must be a Gaussian state or a grid function");

  Json out;
  if (op == "hw") {
    PhaseSpacePoint z0{vec_from_json(params.at("x")), vec_from_json(params.at("p"))};
    out = gaussian ? gaussian_to_json(gauss_hw(z0, gaussian_from_json(state)))
                   : grid_to_json(hw_apply(z0, grid_from_json(state)));
  } else if (op == "swm") {
    const FreeGenerator gen = generator_from_json(params);
    out = gaussian ? gaussian_to_json(gauss_quad_fourier(gen, gaussian_from_json(state)))
                   : grid_to_json(quad_fourier_grid(gen, grid_from_json(state)));
  } else if (op == "mw") {
    if (!gaussian)
      throw UsageError(
          "apply: the twisted-symbol operator acts on Gaussian states in closed "
          "form; grid verification goes through matrix elements");
    const SymplecticMatrix S(matrix_from_json(params), kTolStructural * tol_scale());
    const MWDescriptor desc = make_descriptor(S, params.at("nu").get<int>());
    out = gaussian_to_json(mw_apply_gaussian(desc, gaussian_from_json(state)));
  } else {
    throw UsageError("apply: unknown operator '" + op + "' (expected mw, swm, or hw)");
  }

  const std::string text = out.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    write_text_file(out_path, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metaplectic operator toolkit"};
  app.require_subcommand(1);

  std::uint64_t seed = 42;
  std::vector<int> dims = {1, 2, 3};
  std::string report_path, input_path, out_path, op_name, params_path, state_path;

  auto* verify = app.add_subcommand("verify", "run every property suite");
  verify->add_option("--seed", seed, "RNG seed");
  verify->add_option("--dims", dims, "degrees of freedom to test (subset of 1 2 3)")
      ->delimiter(',');
  verify->add_option("--report", report_path, "write the JSON report here");

  auto* maslov = app.add_subcommand("maslov", "index data of a free generator");
  maslov->add_option("--input", input_path, "FreeGenerator JSON")->required();

  auto* cayley = app.add_subcommand("cayley", "print M_S of a symplectic matrix");
  cayley->add_option("--input", input_path, "matrix JSON")->required();

  auto* decompose =
      app.add_subcommand("decompose", "factor a symplectic matrix into two free factors");
  decompose->add_option("--input", input_path, "matrix JSON")->required();
  decompose->add_option("--out", out_path, "output path (stdout when omitted)");
  decompose->add_option("--seed", seed, "seed for the fallback candidate draws");

  auto* apply = app.add_subcommand("apply", "apply an operator to a state");
  apply->add_option("--op", op_name, "one of mw, swm, hw")->required();
  apply->add_option("--params", params_path, "operator parameter JSON")->required();
  apply->add_option("--state", state_path, "state JSON (Gaussian or grid)")->required();
  apply->add_option("--out", out_path, "output path (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return cmd_verify(seed, dims, report_path);
    if (maslov->parsed()) return cmd_maslov(input_path);
    if (cayley->parsed()) return cmd_cayley(input_path);
    if (decompose->parsed()) return cmd_decompose(input_path, out_path, seed);
    if (apply->parsed()) return cmd_apply(op_name, params_path, state_path, out_path);
  } catch (const MathError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

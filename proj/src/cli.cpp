#include "qd/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "qd/discord.hpp"
#include "qd/entropy.hpp"
#include "qd/errors.hpp"
#include "qd/state_io.hpp"
#include "qd/structure.hpp"
#include "qd/version.hpp"

namespace qd::cli {

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Deterministic report with a fixed key order, emitted as plain text or
/// JSON. No timestamps anywhere, so identical runs are byte-identical.
class Report {
 public:
  explicit Report(const std::string& command) { add("command", command); add("library_version", kVersion); }

  void add(const std::string& key, const std::string& value) {
    text_ += key + ": " + value + "\n";
    json_[key] = value;
  }
  void add(const std::string& key, const char* value) { add(key, std::string(value)); }
  void add(const std::string& key, double value) {
    text_ += key + ": " + fmt17(value) + "\n";
    json_[key] = value;
  }
  void add(const std::string& key, bool value) {
    text_ += key + ": " + (value ? "true" : "false") + "\n";
    json_[key] = value;
  }
  void add(const std::string& key, std::int64_t value) {
    text_ += key + ": " + std::to_string(value) + "\n";
    json_[key] = value;
  }
  void add_u64(const std::string& key, std::uint64_t value) {
    text_ += key + ": " + std::to_string(value) + "\n";
    json_[key] = value;
  }
  void add(const std::string& key, const CMatrix& m) {
    std::string flat;
    nlohmann::ordered_json re = nlohmann::ordered_json::array();
    nlohmann::ordered_json im = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      nlohmann::ordered_json re_row = nlohmann::ordered_json::array();
      nlohmann::ordered_json im_row = nlohmann::ordered_json::array();
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (!flat.empty()) flat += ' ';
        flat += fmt17(m(i, j).real());
        flat += ' ';
        flat += fmt17(m(i, j).imag());
        re_row.push_back(m(i, j).real());
        im_row.push_back(m(i, j).imag());
      }
      re.push_back(std::move(re_row));
      im.push_back(std::move(im_row));
    }
    text_ += key + ": " + flat + "\n";
    json_[key] = nlohmann::ordered_json{{"re", std::move(re)}, {"im", std::move(im)}};
  }
  void add(const std::string& key, const std::vector<double>& v) {
    std::string flat;
    for (double x : v) {
      if (!flat.empty()) flat += ' ';
      flat += fmt17(x);
    }
    text_ += key + ": " + flat + "\n";
    json_[key] = v;
  }
  void add(const std::string& key, const std::vector<int>& v) {
    std::string flat;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) flat += ',';
      flat += std::to_string(v[i]);
    }
    text_ += key + ": " + flat + "\n";
    json_[key] = v;
  }

  void emit(std::ostream& out, bool as_json) const {
    if (as_json)
      out << json_.dump(2) << "\n";
    else
      out << text_;
  }

 private:
  std::string text_;
  nlohmann::ordered_json json_ = nlohmann::ordered_json::object();
};

struct CommonOptions {
  std::string state_path;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  bool as_json = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool needs_state = true) {
  auto* state = cmd->add_option("--state", opts.state_path, "input .qst state file");
  if (needs_state) state->required();
  cmd->add_option("--seed", opts.seed, "random seed (default 0)");
  cmd->add_option("--tol", opts.tol,
                  "validation / decision tolerance (default 1e-8)");
  cmd->add_flag("--json", opts.as_json, "emit the report as JSON");
}

struct LoadedState {
  DensityMatrix rho;
  std::string digest;
};

LoadedState load_state(const CommonOptions& opts) {
  const std::string text = read_text_file(opts.state_path);
  const StateFile file = parse_state_file(text);
  return LoadedState{to_density(file, opts.tol), content_digest(text)};
}

CMatrix load_basis(const std::string& source, int d_b) {
  if (source == "computational") return CMatrix::Identity(d_b, d_b);
  const StateFile file = parse_state_file(read_text_file(source));
  const int side = product_of_dims(file.dims);
  if (side != d_b)
    throw ValidationError("basis: dimension " + std::to_string(side) +
                          " does not match subsystem B (" + std::to_string(d_b) + ")");
  CMatrix m(side, side);
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j)
      m(i, j) = std::complex<double>(
          file.matrix_re[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
          file.matrix_im[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  return m;
}

void echo_input(Report& report, const CommonOptions& opts, const LoadedState& loaded) {
  report.add("input", opts.state_path);
  report.add("input_digest", loaded.digest);
  report.add("dims", loaded.rho.dims());
  report.add_u64("seed", opts.seed);
  report.add("tol", opts.tol);
}

void run_entropy(const CommonOptions& opts, std::ostream& out) {
  const LoadedState loaded = load_state(opts);
  Report report("entropy");
  echo_input(report, opts, loaded);
  report.add("von_neumann_entropy", von_neumann(loaded.rho));
  if (loaded.rho.num_subsystems() == 2) {
    report.add("entropy_a", von_neumann(partial_trace(loaded.rho, {0})));
    report.add("entropy_b", von_neumann(partial_trace(loaded.rho, {1})));
    report.add("conditional_entropy", conditional_entropy(loaded.rho));
    report.add("mutual_information", mutual_information(loaded.rho));
  }
  report.emit(out, opts.as_json);
}

void run_discord(const CommonOptions& opts, int starts, bool povm_mode, int outcomes,
                 bool swap, std::ostream& out) {
  LoadedState loaded = load_state(opts);
  if (swap) loaded.rho = swap_bipartite(loaded.rho);

  OptimizerConfig cfg;
  cfg.starts = starts;
  cfg.seed = opts.seed;
  if (outcomes > 0)
    cfg.outcome_count = outcomes;
  else if (povm_mode)
    cfg.outcome_count = loaded.rho.dim(1) * loaded.rho.dim(1);

  const DiscordResult result = discord(loaded.rho, cfg);

  Report report("discord");
  echo_input(report, opts, loaded);
  report.add("swap", swap);
  report.add("starts", static_cast<std::int64_t>(cfg.starts));
  report.add("max_iterations", static_cast<std::int64_t>(cfg.max_iterations));
  report.add("outcome_count",
             static_cast<std::int64_t>(result.optimal_povm.outcome_count()));
  report.add("mutual_information", result.mutual_information);
  report.add("classical_correlations", result.classical_correlations);
  report.add("discord", result.discord);
  report.add("min_measured_conditional_entropy", result.min_measured_conditional_entropy);
  report.add("converged", result.converged);
  report.add("starts_used", static_cast<std::int64_t>(result.starts_used));
  report.add("residual_spread", result.residual_spread);
  for (int i = 0; i < result.optimal_povm.outcome_count(); ++i)
    report.add("optimal_povm_element_" + std::to_string(i),
               result.optimal_povm.elements()[static_cast<std::size_t>(i)]);
  report.emit(out, opts.as_json);
}

void run_oracle(const CommonOptions& opts, int grid, std::ostream& out) {
  const LoadedState loaded = load_state(opts);
  const auto [min_h, povm] = brute_force_min_conditional_entropy(loaded.rho, grid);
  Report report("oracle");
  echo_input(report, opts, loaded);
  report.add("grid_resolution", static_cast<std::int64_t>(grid));
  report.add("min_measured_conditional_entropy", min_h);
  for (int i = 0; i < povm.outcome_count(); ++i)
    report.add("povm_element_" + std::to_string(i),
               povm.elements()[static_cast<std::size_t>(i)]);
  report.emit(out, opts.as_json);
}

void run_certify(const CommonOptions& opts, std::ostream& out) {
  const LoadedState loaded = load_state(opts);
  const ZeroDiscordCertificate cert =
      certify_zero_discord(loaded.rho, opts.tol, SeededRng(opts.seed));
  Report report("certify");
  echo_input(report, opts, loaded);
  report.add("verdict", cert.accepted ? "accepted" : "rejected");
  report.add("residual", cert.residual);
  report.add("commuting_family_residual", cert.commuting_family_residual);
  if (cert.accepted) {
    report.add("pointer_basis", *cert.pointer_basis);
    report.add("weights", cert.weights->probs());
    for (std::size_t j = 0; j < cert.conditional_states.size(); ++j)
      report.add("conditional_state_" + std::to_string(j),
                 cert.conditional_states[j].matrix());
  }
  report.emit(out, opts.as_json);
}

void run_extend(const CommonOptions& opts, const std::string& basis_spec,
                const std::string& out_path, bool verify_only, std::ostream& out) {
  const LoadedState loaded = load_state(opts);
  if (loaded.rho.num_subsystems() != 2)
    throw ValidationError("extend: state must have exactly two subsystems");
  const CMatrix basis = load_basis(basis_spec, loaded.rho.dim(1));

  if (verify_only) {
    const ProofIdentityReport identities = verify_proof_identities(loaded.rho, basis);
    Report report("verify-proof");
    echo_input(report, opts, loaded);
    report.add("basis", basis_spec);
    report.add("h_abc", identities.h_abc);
    report.add("h_ab_reduced", identities.h_ab_reduced);
    report.add("h_bc_reduced", identities.h_bc_reduced);
    report.add("h_b_reduced", identities.h_b_reduced);
    report.add("target_h_rho_ab", identities.target_h_rho_ab);
    report.add("target_ensemble", identities.target_ensemble);
    report.add("target_h_rho_b", identities.target_h_rho_b);
    report.add("target_h_p", identities.target_h_p);
    report.add("max_deviation", identities.max_deviation);
    report.add("ssa_gap", identities.ssa_gap);
    report.emit(out, opts.as_json);
    return;
  }

  const ApparatusExtension ext = extend_with_apparatus(loaded.rho, basis);
  const std::string text = serialize_state(ext.rho_abc);
  write_text_file(out_path, text);
  Report report("extend");
  echo_input(report, opts, loaded);
  report.add("basis", basis_spec);
  report.add("output", out_path);
  report.add("output_digest", content_digest(text));
  report.add("output_dims", ext.rho_abc.dims());
  report.emit(out, opts.as_json);
}

void run_ssa(const CommonOptions& opts, std::ostream& out) {
  const LoadedState loaded = load_state(opts);
  const double q = ssa_quantity(loaded.rho);
  const CorrelationClass verdict = classify_correlations(loaded.rho, opts.tol);
  Report report("ssa");
  echo_input(report, opts, loaded);
  report.add("ssa_quantity", q);
  report.add("classification", verdict == CorrelationClass::classical_zero
                                   ? "classical_zero"
                                   : "quantum_positive");
  report.emit(out, opts.as_json);
}

void run_gen(const CommonOptions& opts, const std::string& kind,
             const std::string& dims_text, int rank, const std::string& out_path,
             std::ostream& out) {
  std::vector<int> dims;
  {
    std::string token;
    for (char c : dims_text + ",") {
      if (c == ',') {
        if (token.empty()) throw ValidationError("gen: malformed --dims");
        dims.push_back(std::stoi(token));
        token.clear();
      } else {
        token += c;
      }
    }
  }
  if (dims.empty() || dims.size() > 3)
    throw ValidationError("gen: --dims takes 1 to 3 comma-separated dimensions");
  const int side = product_of_dims(dims);
  SeededRng rng(opts.seed);

  std::optional<DensityMatrix> rho;
  if (kind == "random") {
    const int r = (rank > 0) ? rank : side;
    const DensityMatrix base = random_density(side, r, rng);
    rho.emplace(base.matrix(), dims, 1e-10);
  } else if (kind == "pure") {
    const DensityMatrix base = random_density(side, 1, rng);
    rho.emplace(base.matrix(), dims, 1e-10);
  } else if (kind == "zero-discord") {
    if (dims.size() != 2) throw ValidationError("gen: zero-discord needs --dims dA,dB");
    rho = generate_zero_discord(dims[0], dims[1], rng);
  } else if (kind == "bell") {
    if (dims.size() != 2 || dims[0] != 2 || dims[1] != 2)
      throw ValidationError("gen: bell needs --dims 2,2");
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
    rho.emplace(std::move(m), dims, 1e-10);
  } else if (kind == "classical") {
    const std::vector<double> p = rng.dirichlet_flat(side);
    CMatrix m = CMatrix::Zero(side, side);
    for (int i = 0; i < side; ++i) m(i, i) = p[static_cast<std::size_t>(i)];
    rho.emplace(std::move(m), dims, 1e-10);
  } else {
    throw ValidationError("gen: unknown kind '" + kind +
                          "' (expected random|pure|zero-discord|bell|classical)");
  }

  std::map<std::string, std::string> metadata{{"kind", kind},
                                              {"seed", std::to_string(opts.seed)}};
  const std::string text = serialize_state_file(to_state_file(*rho, std::move(metadata)));
  write_text_file(out_path, text);

  Report report("gen");
  report.add("kind", kind);
  report.add("dims", dims);
  report.add("rank", static_cast<std::int64_t>(rank));
  report.add_u64("seed", opts.seed);
  report.add("output", out_path);
  report.add("output_digest", content_digest(text));
  report.emit(out, opts.as_json);
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"quantum discord and classical-quantum structure toolkit"};
  app.name("qdiscord");
  app.require_subcommand(1);

  CommonOptions entropy_opts;
  auto* entropy_cmd = app.add_subcommand("entropy", "von Neumann entropies of a state");
  add_common(entropy_cmd, entropy_opts);

  CommonOptions discord_opts;
  int starts = 32, outcomes = 0;
  bool povm_mode = false, swap = false;
  auto* discord_cmd =
      app.add_subcommand("discord", "quantum discord via measurement optimization");
  add_common(discord_cmd, discord_opts);
  discord_cmd->add_option("--starts", starts, "optimizer starts (default 32)");
  discord_cmd->add_flag("--povm", povm_mode, "search dim(B)^2-outcome rank-1 POVMs");
  discord_cmd->add_option("--outcomes", outcomes, "explicit POVM outcome count");
  discord_cmd->add_flag("--swap", swap, "swap subsystems first (computes D(B:A))");

  CommonOptions oracle_opts;
  int grid = 256;
  auto* oracle_cmd =
      app.add_subcommand("oracle", "brute-force qubit measurement sweep (dim(B) = 2)");
  add_common(oracle_cmd, oracle_opts);
  oracle_cmd->add_option("--grid", grid, "grid resolution per angle (default 256)");

  CommonOptions certify_opts;
  auto* certify_cmd =
      app.add_subcommand("certify", "zero-discord (classical-quantum) certificate");
  add_common(certify_cmd, certify_opts);

  CommonOptions extend_opts;
  std::string basis_spec = "computational", extend_out;
  auto* extend_cmd =
      app.add_subcommand("extend", "write the measurement-apparatus extension state");
  add_common(extend_cmd, extend_opts);
  extend_cmd->add_option("--basis", basis_spec, "basis file or 'computational'");
  extend_cmd->add_option("--out", extend_out, "output .qst path")->required();

  CommonOptions verify_opts;
  std::string verify_basis = "computational";
  auto* verify_cmd =
      app.add_subcommand("verify-proof", "entropy identities of the apparatus extension");
  add_common(verify_cmd, verify_opts);
  verify_cmd->add_option("--basis", verify_basis, "basis file or 'computational'");

  CommonOptions ssa_opts;
  auto* ssa_cmd =
      app.add_subcommand("ssa", "strong-subadditivity quantity of a tripartite state");
  add_common(ssa_cmd, ssa_opts);

  CommonOptions gen_opts;
  std::string kind, dims_text, gen_out;
  int rank = 0;
  auto* gen_cmd = app.add_subcommand("gen", "generate a state file");
  add_common(gen_cmd, gen_opts, /*needs_state=*/false);
  gen_cmd->add_option("--kind", kind, "random|pure|zero-discord|bell|classical")->required();
  gen_cmd->add_option("--dims", dims_text, "subsystem dimensions, e.g. 2,3")->required();
  gen_cmd->add_option("--rank", rank, "rank for --kind random (default full)");
  gen_cmd->add_option("--out", gen_out, "output .qst path")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));

    if (*entropy_cmd) run_entropy(entropy_opts, out);
    if (*discord_cmd) run_discord(discord_opts, starts, povm_mode, outcomes, swap, out);
    if (*oracle_cmd) run_oracle(oracle_opts, grid, out);
    if (*certify_cmd) run_certify(certify_opts, out);
    if (*extend_cmd) run_extend(extend_opts, basis_spec, extend_out, false, out);
    if (*verify_cmd) run_extend(verify_opts, verify_basis, "", true, out);
    if (*ssa_cmd) run_ssa(ssa_opts, out);
    if (*gen_cmd) run_gen(gen_opts, kind, dims_text, rank, gen_out, out);
    return 0;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  } catch (const ValidationError& e) {
    err << "input error: " << e.what() << "\n";
    return 1;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace qd::cli

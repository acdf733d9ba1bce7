#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "tempus/io.hpp"
#include "tempus/signal.hpp"

namespace {

using namespace tempus;

int log_level() {
  const char* v = std::getenv("TEMPUS_LOG");
  if (!v) return 0;
  std::string s(v);
  if (s == "debug") return 2;
  if (s == "info") return 1;
  return 0;
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[info] " << msg << "\n";
}

void emit(const std::string& output_path, const std::string& text) {
  if (output_path.empty()) {
    std::cout << text << "\n";
  } else {
    save_text(output_path, text);
  }
}

void emit_json(const std::string& output_path, const Json& j) {
  emit(output_path, j.dump(2));
}

AnyClock load_any(const std::string& path) {
  AnyClock c = clock_from_json(load_json(path));
  auto rep = c.is_quantum ? validate_clock(c.quantum)
                          : validate_classical(c.classical);
  if (!rep.ok())
    throw std::invalid_argument(path + ": clock fails validation");
  return c;
}

QuantumClock load_quantum(const std::string& path) {
  AnyClock c = load_any(path);
  if (!c.is_quantum)
    throw std::invalid_argument(path + ": expected a quantum clock");
  return c.quantum;
}

int run_fisher(const std::string& clock_path, const std::string& out) {
  AnyClock c = clock_from_json(load_json(clock_path));
  double f = c.is_quantum ? quantum_fisher(c.quantum)
                          : classical_fisher(c.classical);
  emit_json(out, Json{{"F", f}});
  return 0;
}

int run_order(const std::string& resource_path, const std::string& target_path,
              double tol, int max_iter, const std::string& out) {
  AnyClock r = load_any(resource_path);
  AnyClock t = load_any(target_path);
  if (r.is_quantum != t.is_quantum)
    throw std::invalid_argument("order: mixed quantum/classical pair");
  if (r.is_quantum) {
    auto v = order_feasible(r.quantum, t.quantum, tol, max_iter);
    log_info("order verdict after " + std::to_string(v.iterations) +
             " iterations");
    emit_json(out, verdict_to_json(v));
  } else {
    auto v = classical_order(r.classical, t.classical,
                             tol > 0.0 ? tol : 1e-7);
    emit_json(out, classical_verdict_to_json(v));
  }
  return 0;
}

int run_prep_fidelity(const std::string& resource_path,
                      const std::string& target_path, double tol, int max_iter,
                      const std::string& out) {
  QuantumClock resource = load_quantum(resource_path);
  QuantumClock target = load_quantum(target_path);
  CMat rho = target.rho;
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(rho));
  if (es.eigenvalues().maxCoeff() < 1.0 - 1e-8)
    throw std::invalid_argument("prep-fidelity: target is not pure");
  auto res = max_prep_fidelity(resource,
                               es.eigenvectors().col(target.dim() - 1),
                               target.hamiltonian, tol, max_iter);
  Json j;
  j["fidelity"] = res.fidelity;
  j["iterations"] = res.iterations;
  j["witness"] = choi_to_json(res.witness);
  emit_json(out, j);
  return 0;
}

int run_transfer(const std::string& clock_path, const std::string& seed_path,
                 int grid_n, const std::string& out) {
  AnyClock c = clock_from_json(load_json(clock_path));
  if (c.is_quantum) {
    auto povm = canonical_phase_povm(c.quantum.dim(), grid_n);
    emit_json(out, clock_to_json(q2c_transfer(c.quantum, povm)));
  } else {
    if (seed_path.empty())
      throw std::invalid_argument(
          "transfer: classical input needs --seed-clock");
    QuantumClock seed = load_quantum(seed_path);
    emit_json(out, clock_to_json(c2q_prepare(c.classical, seed)));
  }
  return 0;
}

int run_clone_bound(const std::string& resource_path,
                    const std::string& channel_path, const std::string& h1_path,
                    const std::string& h2_path, long seed, int samples,
                    const std::string& out) {
  QuantumClock resource = load_quantum(resource_path);
  HamiltonianSpec h1 = hamiltonian_from_json(load_json(h1_path));
  HamiltonianSpec h2 = hamiltonian_from_json(load_json(h2_path));
  double f_res = quantum_fisher(resource);
  Json reports = Json::array();
  bool all_pass = true;
  if (!channel_path.empty()) {
    GradedKraus gk = kraus_from_json(load_json(channel_path));
    auto inst = make_broadcast_instance(resource, h1, h2, kraus_to_choi(gk));
    auto rep = clone_bound_check(inst, f_res);
    all_pass = rep.pass && rep.pure_pass;
    reports.push_back(bound_report_to_json(rep));
  } else {
    Rng rng(static_cast<uint64_t>(seed));
    HamiltonianSpec h12 = tensor_hamiltonian(h1, h2);
    for (int s = 0; s < samples; ++s) {
      GradedKraus gk =
          random_covariant_channel(resource.hamiltonian, h12, rng);
      auto inst = make_broadcast_instance(resource, h1, h2, kraus_to_choi(gk));
      auto rep = clone_bound_check(inst, f_res);
      all_pass = all_pass && rep.pass && rep.pure_pass;
      reports.push_back(bound_report_to_json(rep));
    }
  }
  emit_json(out, Json{{"resource_fisher", f_res},
                      {"all_pass", all_pass},
                      {"reports", std::move(reports)}});
  return 0;
}

int run_broadcast_search(const std::string& resource_path,
                         const std::string& h1_path, const std::string& h2_path,
                         long seed, int restarts, const std::string& out) {
  QuantumClock resource = load_quantum(resource_path);
  HamiltonianSpec h1 = hamiltonian_from_json(load_json(h1_path));
  HamiltonianSpec h2 = hamiltonian_from_json(load_json(h2_path));
  Rng rng(static_cast<uint64_t>(seed));
  auto inst = broadcast_search(resource, h1, h2, rng, restarts);
  auto rep = clone_bound_check(inst, quantum_fisher(resource));
  Json j;
  j["f1"] = inst.f1;
  j["f2"] = inst.f2;
  j["objective"] = std::min(inst.f1, inst.f2);
  j["e_mean"] = inst.e_mean;
  j["e2_mean"] = inst.e2_mean;
  j["bound"] = bound_report_to_json(rep);
  j["lower_bound_only"] = true;
  emit_json(out, j);
  return 0;
}

int run_sync(const std::string& state_path, const std::string& target_path,
             double tol, const std::string& out) {
  Synchronism s1 = synchronism_from_json(load_json(state_path));
  if (target_path.empty()) {
    Json j;
    j["validation"] = report_to_json(validate_synchronism(s1));
    j["relative_fisher"] = relative_fisher(s1);
    emit_json(out, j);
  } else {
    Synchronism s2 = synchronism_from_json(load_json(target_path));
    emit_json(out, verdict_to_json(sync_order(s1, s2, tol)));
  }
  return 0;
}

int run_signal_split(const std::vector<double>& energies, double de,
                     int grid_n, double dx, const std::string& out) {
  std::ostringstream csv;
  csv << "E,dE,input_F,f1_est,f2_est,correlation,purity1,norm_residual\n";
  for (double e : energies) {
    auto psi = gaussian_wavepacket(grid_n, dx, e, de);
    auto joint = split(psi);
    auto est = output_timing_info(joint);
    csv << e << "," << de << "," << input_timing_info(psi) << ","
        << est.f1_est << "," << est.f2_est << "," << est.correlation << ","
        << est.purity1 << "," << est.norm_residual << "\n";
  }
  std::string text = csv.str();
  text.pop_back();  // emit() appends the final newline on stdout
  emit(out, text);
  return 0;
}

int run_validate(const std::string& input_path, const std::string& out) {
  Json j = load_json(input_path);
  ValidationReport rep;
  std::string kind;
  if (j.contains("type")) {
    AnyClock c = clock_from_json(j);
    kind = c.is_quantum ? "quantum_clock" : "classical_clock";
    rep = c.is_quantum ? validate_clock(c.quantum)
                       : validate_classical(c.classical);
  } else if (j.contains("kraus")) {
    kind = "channel";
    rep = validate_graded_kraus(kraus_from_json(j));
  } else if (j.contains("outcomes")) {
    kind = "povm";
    rep = validate_povm(povm_from_json(j));
  } else if (j.contains("h_a")) {
    kind = "synchronism";
    rep = validate_synchronism(synchronism_from_json(j));
  } else {
    throw std::runtime_error(input_path + ": unrecognized object");
  }
  Json outj = report_to_json(rep);
  outj["kind"] = kind;
  emit_json(out, outj);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical toolkit for quantum and classical clocks"};
  app.require_subcommand(1);

  std::string clock_path, resource_path, target_path, seed_path, channel_path;
  std::string h1_path, h2_path, state_path, input_path, output_path;
  double tol = 1e-6, prep_tol = 1e-4, de = 1.0, dx = 1.0 / 16.0;
  long seed = 1;
  int max_iter = 50000, grid_n = 256, samples = 1, restarts = 50;
  std::vector<double> energies;

  auto* fisher = app.add_subcommand("fisher", "Fisher timing information");
  fisher->add_option("--clock", clock_path)->required();

  auto* order = app.add_subcommand("order", "clock quasi-order verdict");
  order->add_option("--resource", resource_path)->required();
  order->add_option("--target", target_path)->required();
  order->add_option("--tol", tol);
  order->add_option("--max-iter", max_iter);

  auto* prep = app.add_subcommand("prep-fidelity",
                                  "max covariant preparation fidelity");
  prep->add_option("--resource", resource_path)->required();
  prep->add_option("--target", target_path)->required();
  prep->add_option("--tol", prep_tol);
  prep->add_option("--max-iter", max_iter);

  auto* transfer = app.add_subcommand(
      "transfer", "quantum->classical measurement or classical->quantum "
                  "preparation");
  transfer->add_option("--clock", clock_path)->required();
  transfer->add_option("--seed-clock", seed_path);
  transfer->add_option("--grid-n", grid_n);

  auto* clone = app.add_subcommand("clone-bound", "timing-copy bound report");
  clone->add_option("--resource", resource_path)->required();
  clone->add_option("--channel", channel_path);
  clone->add_option("--h1", h1_path)->required();
  clone->add_option("--h2", h2_path)->required();
  clone->add_option("--seed", seed);
  clone->add_option("--samples", samples);

  auto* search = app.add_subcommand("broadcast-search",
                                    "heuristic max-min broadcast search");
  search->add_option("--resource", resource_path)->required();
  search->add_option("--h1", h1_path)->required();
  search->add_option("--h2", h2_path)->required();
  search->add_option("--seed", seed);
  search->add_option("--restarts", restarts);

  auto* sync = app.add_subcommand("sync", "synchronism analysis / order");
  sync->add_option("--state", state_path)->required();
  sync->add_option("--target", target_path);
  sync->add_option("--tol", tol);

  auto* split = app.add_subcommand("signal-split",
                                   "splitting-isometry sweep (CSV)");
  split->add_option("--energy", energies)->required();
  split->add_option("--de", de);
  split->add_option("--grid-n", grid_n)->default_val(1024);
  split->add_option("--dx", dx);

  auto* validate = app.add_subcommand("validate", "validate a JSON object");
  validate->add_option("--input", input_path)->required();

  for (auto* sub : {fisher, order, prep, transfer, clone, search, sync, split,
                    validate})
    sub->add_option("--output", output_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (fisher->parsed()) return run_fisher(clock_path, output_path);
    if (order->parsed())
      return run_order(resource_path, target_path, tol, max_iter, output_path);
    if (prep->parsed())
      return run_prep_fidelity(resource_path, target_path, prep_tol, max_iter,
                               output_path);
    if (transfer->parsed())
      return run_transfer(clock_path, seed_path, grid_n, output_path);
    if (clone->parsed())
      return run_clone_bound(resource_path, channel_path, h1_path, h2_path,
                             seed, samples, output_path);
    if (search->parsed())
      return run_broadcast_search(resource_path, h1_path, h2_path, seed,
                                  restarts, output_path);
    if (sync->parsed())
      return run_sync(state_path, target_path, tol, output_path);
    if (split->parsed())
      return run_signal_split(energies, de, grid_n, dx, output_path);
    if (validate->parsed()) return run_validate(input_path, output_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

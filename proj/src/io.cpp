#include "tempus/io.hpp"

#include <fstream>
#include <sstream>

namespace tempus {

namespace {

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  return Complex(j.at(0).get<double>(), j.at(1).get<double>());
}

Json finite_or_string(double v) {
  if (std::isinf(v)) return v > 0 ? Json("inf") : Json("-inf");
  return Json(v);
}

}  // namespace

Json matrix_to_json(const CMat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMat matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j.at(0).is_array())
    throw std::runtime_error("matrix: expected array of rows");
  const int r = int(j.size()), c = int(j.at(0).size());
  CMat m(r, c);
  for (int i = 0; i < r; ++i) {
    if (int(j.at(size_t(i)).size()) != c)
      throw std::runtime_error("matrix: ragged rows");
    for (int k = 0; k < c; ++k)
      m(i, k) = complex_from_json(j.at(size_t(i)).at(size_t(k)));
  }
  return m;
}

Json cvec_to_json(const CVec& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(complex_to_json(v[i]));
  return a;
}

CVec cvec_from_json(const Json& j) {
  CVec v(long(j.size()));
  for (size_t i = 0; i < j.size(); ++i) v[long(i)] = complex_from_json(j.at(i));
  return v;
}

Json rvec_to_json(const RVec& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

RVec rvec_from_json(const Json& j) {
  RVec v(long(j.size()));
  for (size_t i = 0; i < j.size(); ++i) v[long(i)] = j.at(i).get<double>();
  return v;
}

Json hamiltonian_to_json(const HamiltonianSpec& h) {
  Json j;
  j["eigenvalues"] = rvec_to_json(h.eigenvalues);
  if (h.has_basis()) j["basis"] = matrix_to_json(h.basis);
  return j;
}

HamiltonianSpec hamiltonian_from_json(const Json& j) {
  HamiltonianSpec h;
  h.eigenvalues = rvec_from_json(j.at("eigenvalues"));
  if (j.contains("basis")) h.basis = matrix_from_json(j.at("basis"));
  return h;
}

Json clock_to_json(const QuantumClock& c) {
  Json j;
  j["type"] = "quantum";
  j["rho"] = matrix_to_json(c.rho);
  j["eigenvalues"] = rvec_to_json(c.hamiltonian.eigenvalues);
  if (c.hamiltonian.has_basis())
    j["basis"] = matrix_to_json(c.hamiltonian.basis);
  return j;
}

Json clock_to_json(const ClassicalCircleClock& c) {
  Json j;
  j["type"] = "classical";
  j["density"] = rvec_to_json(c.density);
  j["omega"] = c.omega;
  return j;
}

AnyClock clock_from_json(const Json& j) {
  AnyClock c;
  std::string type = j.at("type").get<std::string>();
  if (type == "quantum") {
    c.is_quantum = true;
    c.quantum.rho = matrix_from_json(j.at("rho"));
    c.quantum.hamiltonian.eigenvalues = rvec_from_json(j.at("eigenvalues"));
    if (j.contains("basis"))
      c.quantum.hamiltonian.basis = matrix_from_json(j.at("basis"));
  } else if (type == "classical") {
    c.is_quantum = false;
    c.classical.density = rvec_from_json(j.at("density"));
    c.classical.omega = j.value("omega", 2.0 * kPi);
  } else {
    throw std::runtime_error("clock: unknown type '" + type + "'");
  }
  return c;
}

Json povm_to_json(const DiscretePOVM& p) {
  Json j;
  j["outcomes"] = p.outcomes;
  Json effects = Json::array();
  for (const auto& e : p.effects) effects.push_back(matrix_to_json(e));
  j["effects"] = std::move(effects);
  return j;
}

DiscretePOVM povm_from_json(const Json& j) {
  DiscretePOVM p;
  p.outcomes = j.at("outcomes").get<std::vector<double>>();
  for (const auto& e : j.at("effects")) p.effects.push_back(matrix_from_json(e));
  return p;
}

Json covariant_povm_to_json(const CovariantPOVM& p) {
  Json effects = Json::array();
  for (const auto& e : p.effects) effects.push_back(matrix_to_json(e));
  return Json{{"effects", std::move(effects)}};
}

CovariantPOVM covariant_povm_from_json(const Json& j) {
  CovariantPOVM p;
  for (const auto& e : j.at("effects")) p.effects.push_back(matrix_from_json(e));
  return p;
}

Json kraus_to_json(const GradedKraus& k) {
  Json ops = Json::array();
  for (const auto& op : k.ops)
    ops.push_back(Json{{"shift", op.shift}, {"matrix", matrix_to_json(op.op)}});
  return Json{{"kraus", std::move(ops)},
              {"h_in", hamiltonian_to_json(k.h_in)},
              {"h_out", hamiltonian_to_json(k.h_out)}};
}

GradedKraus kraus_from_json(const Json& j) {
  GradedKraus k;
  k.h_in = hamiltonian_from_json(j.at("h_in"));
  k.h_out = hamiltonian_from_json(j.at("h_out"));
  for (const auto& op : j.at("kraus"))
    k.ops.push_back(
        {op.at("shift").get<long>(), matrix_from_json(op.at("matrix"))});
  return k;
}

Json choi_to_json(const CovariantChoi& c) {
  return Json{{"choi", matrix_to_json(c.dense())},
              {"h_in", hamiltonian_to_json(c.h_in)},
              {"h_out", hamiltonian_to_json(c.h_out)}};
}

CovariantChoi choi_from_json(const Json& j) {
  HamiltonianSpec h_in = hamiltonian_from_json(j.at("h_in"));
  HamiltonianSpec h_out = hamiltonian_from_json(j.at("h_out"));
  return choi_blocks_from_dense(matrix_from_json(j.at("choi")), h_in, h_out,
                                nullptr);
}

Json synchronism_to_json(const Synchronism& s) {
  return Json{{"rho", matrix_to_json(s.joint_rho)},
              {"h_a", hamiltonian_to_json(s.h_a)},
              {"h_b", hamiltonian_to_json(s.h_b)}};
}

Synchronism synchronism_from_json(const Json& j) {
  return make_synchronism(matrix_from_json(j.at("rho")),
                          hamiltonian_from_json(j.at("h_a")),
                          hamiltonian_from_json(j.at("h_b")));
}

Json report_to_json(const ValidationReport& r) {
  Json items = Json::array();
  for (const auto& it : r.items)
    items.push_back(Json{{"name", it.name},
                         {"residual", it.residual},
                         {"tol", it.tol},
                         {"pass", it.pass}});
  return Json{{"ok", r.ok()}, {"items", std::move(items)}};
}

Json verdict_to_json(const OrderVerdict& v, bool include_witness) {
  Json j;
  j["feasible"] = v.feasible;
  j["fidelity_achieved"] = v.fidelity_achieved;
  j["iterations"] = v.iterations;
  j["residual"] = v.residual;
  j["residuals"] = report_to_json(v.residuals);
  if (include_witness && v.has_witness) j["witness"] = choi_to_json(v.witness);
  return j;
}

Json classical_verdict_to_json(const ClassicalOrderVerdict& v) {
  Json j;
  j["feasible"] = v.feasible;
  j["residual"] = v.residual;
  j["residuals"] = report_to_json(v.residuals);
  j["kernel"] = rvec_to_json(v.kernel);
  return j;
}

Json bound_report_to_json(const BoundReport& r) {
  Json j;
  j["lhs"] = r.lhs_infinite ? Json("inf") : finite_or_string(r.lhs);
  j["rhs"] = r.rhs_infinite ? Json("inf") : finite_or_string(r.rhs);
  j["slack"] = finite_or_string(r.slack);
  j["pass"] = r.pass;
  if (r.has_pure_bound)
    j["pure_state_bound"] = Json{{"lhs", finite_or_string(r.pure_lhs)},
                                 {"rhs", finite_or_string(r.pure_rhs)},
                                 {"slack", finite_or_string(r.pure_slack)},
                                 {"pass", r.pure_pass}};
  return j;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    std::string msg = e.what();
    for (auto& ch : msg)
      if (ch == '\n') ch = ' ';
    throw std::runtime_error("parse error in " + path + ": " + msg);
  }
  return j;
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace tempus

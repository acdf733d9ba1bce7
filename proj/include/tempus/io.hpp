#pragma once

#include <json.hpp>

#include "tempus/cloning.hpp"
#include "tempus/fisher.hpp"
#include "tempus/order.hpp"
#include "tempus/sync.hpp"

namespace tempus {

using Json = nlohmann::json;

// Matrices are row-major arrays of [re, im] pairs.
Json matrix_to_json(const CMat& m);
CMat matrix_from_json(const Json& j);
Json cvec_to_json(const CVec& v);
CVec cvec_from_json(const Json& j);
Json rvec_to_json(const RVec& v);
RVec rvec_from_json(const Json& j);

Json hamiltonian_to_json(const HamiltonianSpec& h);
HamiltonianSpec hamiltonian_from_json(const Json& j);

// {"type":"quantum",...} or {"type":"classical",...}
struct AnyClock {
  bool is_quantum = true;
  QuantumClock quantum;
  ClassicalCircleClock classical;
};

Json clock_to_json(const QuantumClock& c);
Json clock_to_json(const ClassicalCircleClock& c);
AnyClock clock_from_json(const Json& j);

Json povm_to_json(const DiscretePOVM& p);
DiscretePOVM povm_from_json(const Json& j);

Json covariant_povm_to_json(const CovariantPOVM& p);
CovariantPOVM covariant_povm_from_json(const Json& j);

Json kraus_to_json(const GradedKraus& k);
GradedKraus kraus_from_json(const Json& j);

Json choi_to_json(const CovariantChoi& c);
CovariantChoi choi_from_json(const Json& j);

Json synchronism_to_json(const Synchronism& s);
Synchronism synchronism_from_json(const Json& j);

Json report_to_json(const ValidationReport& r);
Json verdict_to_json(const OrderVerdict& v, bool include_witness = true);
Json classical_verdict_to_json(const ClassicalOrderVerdict& v);
Json bound_report_to_json(const BoundReport& r);

// Throws std::runtime_error with a one-line message on I/O/parse failure.
Json load_json(const std::string& path);
void save_text(const std::string& path, const std::string& text);

}  // namespace tempus

#pragma once

#include <iosfwd>
#include <string>

#include "oscsim/bqp.hpp"
#include "oscsim/spring_network.hpp"

namespace oscsim::io {

// Network schema: {"n": int, "masses": [...], "springs": [[j, k, kappa]...],
// "d": int} with 1-based j <= k. Readers accept unsorted springs (and
// reversed pairs) and normalize; writers emit the sorted form.
SpringNetwork read_network(std::istream& in);
SpringNetwork read_network_file(const std::string& path);
std::string network_to_json(const SpringNetwork& net);

// Circuit schema: {"q": int, "gates": [["H"], ["X", t], ["Toffoli", c1, c2, t]]}
bqp::CircuitSpec read_circuit(std::istream& in);
bqp::CircuitSpec read_circuit_file(const std::string& path);

// One float, 17 significant digits, as used in every CSV this project emits.
std::string csv_double(double value);

} // namespace oscsim::io

#include "oscsim/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace oscsim::io {

namespace {

nlohmann::json parse_stream(std::istream& in, const char* what) {
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& err) {
        throw std::invalid_argument(std::string(what) + ": " + err.what());
    }
    return doc;
}

std::ifstream open_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    return in;
}

} // namespace

SpringNetwork read_network(std::istream& in) {
    const nlohmann::json doc = parse_stream(in, "network json");
    try {
        const int n = doc.at("n").get<int>();
        const auto masses = doc.at("masses").get<std::vector<double>>();
        const int d = doc.at("d").get<int>();
        std::vector<Spring> springs;
        for (const auto& entry : doc.at("springs")) {
            if (!entry.is_array() || entry.size() != 3)
                throw std::invalid_argument("network json: spring entries are [j, k, kappa]");
            int j = entry.at(0).get<int>();
            int k = entry.at(1).get<int>();
            const double kappa = entry.at(2).get<double>();
            if (j > k) std::swap(j, k);
            springs.push_back({j - 1, k - 1, kappa});
        }
        return SpringNetwork(n, masses, std::move(springs), d);
    } catch (const nlohmann::json::exception& err) {
        throw std::invalid_argument(std::string("network json: ") + err.what());
    }
}

SpringNetwork read_network_file(const std::string& path) {
    std::ifstream in = open_file(path);
    return read_network(in);
}

std::string network_to_json(const SpringNetwork& net) {
    nlohmann::json doc;
    doc["n"] = net.size();
    doc["masses"] = net.masses();
    doc["d"] = net.sparsity();
    nlohmann::json springs = nlohmann::json::array();
    for (const Spring& s : net.springs())
        springs.push_back({s.j + 1, s.k + 1, s.kappa});
    doc["springs"] = std::move(springs);
    return doc.dump();
}

bqp::CircuitSpec read_circuit(std::istream& in) {
    const nlohmann::json doc = parse_stream(in, "circuit json");
    bqp::CircuitSpec circuit;
    try {
        circuit.qubits = doc.at("q").get<int>();
        for (const auto& entry : doc.at("gates")) {
            if (!entry.is_array() || entry.empty())
                throw std::invalid_argument("circuit json: gates are non-empty arrays");
            const std::string kind = entry.at(0).get<std::string>();
            bqp::Gate gate;
            if (kind == "H") {
                gate.kind = bqp::GateKind::hadamard;
                gate.target = circuit.qubits;
            } else if (kind == "X") {
                gate.kind = bqp::GateKind::pauli_x;
                gate.target = entry.at(1).get<int>();
            } else if (kind == "Toffoli") {
                gate.kind = bqp::GateKind::toffoli;
                gate.control1 = entry.at(1).get<int>();
                gate.control2 = entry.at(2).get<int>();
                gate.target = entry.at(3).get<int>();
            } else {
                throw std::invalid_argument("circuit json: unknown gate kind " + kind);
            }
            circuit.gates.push_back(gate);
        }
    } catch (const nlohmann::json::exception& err) {
        throw std::invalid_argument(std::string("circuit json: ") + err.what());
    }
    bqp::validate_circuit(circuit);
    return circuit;
}

bqp::CircuitSpec read_circuit_file(const std::string& path) {
    std::ifstream in = open_file(path);
    return read_circuit(in);
}

std::string csv_double(double value) {
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

} // namespace oscsim::io

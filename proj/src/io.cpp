// Copyright 2026 The Contractis Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "contractis/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "contractis/error.hpp"

namespace contractis::io {

namespace {

using Index = Eigen::Index;

[[noreturn]] void fail(const std::string& field, const std::string& message) {
    throw InputError(field + ": " + message);
}

const Json& member(const Json& j, const char* key, const std::string& field) {
    if (!j.is_object()) fail(field, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) fail(field, std::string("missing field \"") + key + "\"");
    return *it;
}

double number(const Json& j, const std::string& field) {
    if (!j.is_number()) fail(field, "expected a number");
    return j.get<double>();
}

std::size_t count(const Json& j, const std::string& field) {
    if (!j.is_number_integer() || j.get<long long>() < 0) fail(field, "expected a nonnegative integer");
    return j.get<std::size_t>();
}

const Json& array(const Json& j, const std::string& field) {
    if (!j.is_array()) fail(field, "expected an array");
    return j;
}

Complex scalar(const Json& j, const std::string& field) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    fail(field, "expected a number or [re, im]");
}

// entries this small are rounding residue of exact zeros
double chop(double x) { return std::abs(x) < 1e-14 ? 0.0 : x; }

std::string at(const std::string& field, std::size_t i) { return field + "[" + std::to_string(i) + "]"; }

std::vector<ComplexMatrix> matrix_list(const Json& j, const std::string& field) {
    std::vector<ComplexMatrix> out;
    for (std::size_t i = 0; i < array(j, field).size(); ++i) out.push_back(matrix_from_json(j[i], at(field, i)));
    if (out.empty()) fail(field, "expected at least one matrix");
    return out;
}

void check_dim(const ComplexMatrix& m, std::size_t dim, const std::string& field) {
    if (static_cast<std::size_t>(m.rows()) != dim || static_cast<std::size_t>(m.cols()) != dim) {
        fail(field, "expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix, got " +
                        std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

Eigen::Vector3d real3(const Json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 3) fail(field, "expected an array of 3 numbers");
    return {number(j[0], at(field, 0)), number(j[1], at(field, 1)), number(j[2], at(field, 2))};
}

std::vector<QuantumChannel> channel_list(const Json& j, const std::string& field) {
    std::vector<QuantumChannel> out;
    for (std::size_t i = 0; i < array(j, field).size(); ++i) out.push_back(channel_from_json(j[i], at(field, i)));
    if (out.empty()) fail(field, "expected at least one channel");
    return out;
}

std::string type_of(const Json& j, const std::string& field) {
    const Json& t = member(j, "type", field);
    if (!t.is_string()) fail(field + ".type", "expected a string");
    return t.get<std::string>();
}

}  // namespace

Json load_json(const std::string& source, const std::string& what) {
    const auto first = source.find_first_not_of(" \t\r\n");
    std::string text;
    if (first != std::string::npos && (source[first] == '{' || source[first] == '[')) {
        text = source;
    } else {
        std::ifstream in(source, std::ios::binary);
        if (!in) throw InputError(what + ": cannot read file '" + source + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(what + ": invalid JSON (" + e.what() + ")");
    }
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& field) {
    const std::size_t rows = array(j, field).size();
    if (rows == 0) fail(field, "expected a nonempty matrix");
    const std::size_t cols = array(j[0], at(field, 0)).size();
    ComplexMatrix m(static_cast<Index>(rows), static_cast<Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        const std::string row_field = at(field, r);
        if (array(j[r], row_field).size() != cols) fail(row_field, "rows have different lengths");
        for (std::size_t c = 0; c < cols; ++c) {
            m(static_cast<Index>(r), static_cast<Index>(c)) = scalar(j[r][c], at(row_field, c));
        }
    }
    return m;
}

Json matrix_to_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Index c = 0; c < m.cols(); ++c) row.push_back({round12(chop(m(r, c).real())), round12(chop(m(r, c).imag()))});
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexVector vector_from_json(const Json& j, const std::string& field) {
    ComplexVector v(static_cast<Index>(array(j, field).size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = scalar(j[i], at(field, i));
    if (v.size() == 0) fail(field, "expected a nonempty vector");
    return v;
}

DensityOperator state_from_json(const Json& j, const std::string& field) {
    if (j.is_object() && j.contains("type")) {
        const std::string type = type_of(j, field);
        if (type == "pure") return pure_state(vector_from_json(member(j, "vector", field), field + ".vector"));
        if (type == "maximally_mixed") return maximally_mixed(count(member(j, "dim", field), field + ".dim"));
        fail(field + ".type", "unknown state type '" + type + "' (expected pure or maximally_mixed)");
    }
    const ComplexMatrix m = matrix_from_json(member(j, "matrix", field), field + ".matrix");
    if (j.contains("dim")) check_dim(m, count(j["dim"], field + ".dim"), field + ".matrix");
    if (m.rows() != m.cols()) fail(field + ".matrix", "expected a square matrix");
    return DensityOperator(m);
}

Json state_to_json(const DensityOperator& rho) {
    Json j;
    j["dim"] = rho.dim();
    j["matrix"] = matrix_to_json(rho.matrix());
    return j;
}

QuantumChannel channel_from_json(const Json& j, const std::string& field) {
    if (!j.is_object()) fail(field, "expected a channel object");
    if (!j.contains("type")) {
        std::vector<ComplexMatrix> left = matrix_list(member(j, "kraus", field), field + ".kraus");
        const std::size_t dim = j.contains("dim") ? count(j["dim"], field + ".dim") : static_cast<std::size_t>(left[0].rows());
        for (std::size_t i = 0; i < left.size(); ++i) check_dim(left[i], dim, at(field + ".kraus", i));
        if (!j.contains("kraus_right")) return QuantumChannel::from_kraus(std::move(left));
        std::vector<ComplexMatrix> right = matrix_list(j["kraus_right"], field + ".kraus_right");
        if (right.size() != left.size()) fail(field + ".kraus_right", "must have as many entries as kraus");
        for (std::size_t i = 0; i < right.size(); ++i) check_dim(right[i], dim, at(field + ".kraus_right", i));
        return QuantumChannel::from_operator_pairs(std::move(left), std::move(right));
    }

    const std::string type = type_of(j, field);
    if (type == "depolarizing") {
        return depolarizing(count(member(j, "dim", field), field + ".dim"), number(member(j, "p", field), field + ".p"));
    }
    if (type == "identity") return identity_channel(count(member(j, "dim", field), field + ".dim"));
    if (type == "qubit_canonical") {
        QubitCanonicalForm form;
        form.v = real3(member(j, "v", field), field + ".v");
        form.t = real3(member(j, "t", field), field + ".t");
        if (j.contains("u")) {
            form.u = matrix_from_json(j["u"], field + ".u");
            check_dim(form.u, 2, field + ".u");
        }
        if (j.contains("vmat")) {
            form.v_unitary = matrix_from_json(j["vmat"], field + ".vmat");
            check_dim(form.v_unitary, 2, field + ".vmat");
        }
        return qubit_canonical(form);
    }
    if (type == "constant") return constant_channel(state_from_json(member(j, "sigma", field), field + ".sigma"));
    if (type == "unitary") {
        const ComplexMatrix u = matrix_from_json(member(j, "u", field), field + ".u");
        if (u.rows() != u.cols()) fail(field + ".u", "expected a square matrix");
        return unitary_channel(u);
    }
    if (type == "compose") {
        const auto parts = channel_list(member(j, "channels", field), field + ".channels");
        // [A, B, C] is A ∘ B ∘ C: the last entry acts first
        QuantumChannel out = parts.back();
        for (std::size_t i = parts.size() - 1; i-- > 0;) out = compose(parts[i], out);
        return out;
    }
    if (type == "tensor") {
        const auto parts = channel_list(member(j, "channels", field), field + ".channels");
        QuantumChannel out = parts.front();
        for (std::size_t i = 1; i < parts.size(); ++i) out = tensor(out, parts[i]);
        return out;
    }
    if (type == "mix") {
        const std::string cf = field + ".components";
        const Json& comps = array(member(j, "components", field), cf);
        if (comps.empty()) fail(cf, "expected at least one component");
        std::vector<std::pair<double, QuantumChannel>> parts;
        for (std::size_t i = 0; i < comps.size(); ++i) {
            const std::string f = at(cf, i);
            parts.emplace_back(number(member(comps[i], "weight", f), f + ".weight"),
                               channel_from_json(member(comps[i], "channel", f), f + ".channel"));
        }
        return mix(parts);
    }
    fail(field + ".type", "unknown channel type '" + type +
                              "' (expected depolarizing, identity, qubit_canonical, constant, unitary, compose, mix or tensor)");
}

Json channel_to_json(const QuantumChannel& channel) {
    Json j;
    j["dim"] = channel.dim();
    Json kraus = Json::array();
    for (const auto& k : channel.kraus()) kraus.push_back(matrix_to_json(k));
    j["kraus"] = std::move(kraus);
    if (!channel.is_kraus_form()) {
        Json right = Json::array();
        for (const auto& k : channel.right_operators()) right.push_back(matrix_to_json(k));
        j["kraus_right"] = std::move(right);
    }
    return j;
}

ComplexMatrix gate_from_json(const Json& j, std::size_t dim, const std::string& field) {
    ComplexMatrix g;
    if (j.is_array()) {
        g = matrix_from_json(j, field);
    } else if (j.is_object() && j.contains("gate")) {
        const Json& name = j["gate"];
        if (!name.is_string()) fail(field + ".gate", "expected a string");
        std::vector<std::size_t> qubits;
        for (std::size_t i = 0; i < array(member(j, "qubits", field), field + ".qubits").size(); ++i) {
            qubits.push_back(count(j["qubits"][i], at(field + ".qubits", i)));
        }
        g = named_gate(name.get<std::string>(), qubits, dim);
    } else if (j.is_object() && j.contains("u")) {
        g = matrix_from_json(j["u"], field + ".u");
    } else {
        fail(field, "expected a matrix, {\"u\": matrix} or {\"gate\": name, \"qubits\": [...]}");
    }
    check_dim(g, dim, field);
    return g;
}

ExperimentConfig experiment_from_json(const Json& j) {
    const std::string field = "config";
    ExperimentConfig cfg{channel_from_json(member(j, "channel", field), "config.channel"), {}, {}, 0};
    const std::size_t dim = cfg.channel.dim();
    if (j.contains("gates")) {
        const Json& gates = array(j["gates"], "config.gates");
        for (std::size_t i = 0; i < gates.size(); ++i) {
            cfg.gates.push_back(gate_from_json(gates[i], dim, at("config.gates", i)));
        }
    }
    const Json& initial = member(j, "initial", field);
    if (initial.is_array()) {
        if (initial.empty() || initial.size() > 2) fail("config.initial", "expected one state or a list of two");
        for (std::size_t i = 0; i < initial.size(); ++i) {
            cfg.initial.push_back(state_from_json(initial[i], at("config.initial", i)));
        }
    } else {
        cfg.initial.push_back(state_from_json(initial, "config.initial"));
    }
    for (std::size_t i = 0; i < cfg.initial.size(); ++i) {
        if (cfg.initial[i].dim() != dim) fail("config.initial", "state dimension does not match the channel");
    }
    if (j.contains("steps")) cfg.steps = count(j["steps"], "config.steps");
    return cfg;
}

ComplexMatrix code_basis_from_json(const Json& j, const std::string& field) {
    const Json& vectors = j.is_object() ? member(j, "vectors", field) : j;
    const std::string vf = j.is_object() ? field + ".vectors" : field;
    if (array(vectors, vf).empty()) fail(vf, "expected at least one vector");
    const ComplexVector first = vector_from_json(vectors[0], at(vf, 0));
    ComplexMatrix basis(first.size(), static_cast<Index>(vectors.size()));
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        const ComplexVector v = vector_from_json(vectors[i], at(vf, i));
        if (v.size() != first.size()) fail(at(vf, i), "vectors have different lengths");
        basis.col(static_cast<Index>(i)) = v;
    }
    if (j.is_object() && j.contains("dim") && count(j["dim"], field + ".dim") != static_cast<std::size_t>(first.size())) {
        fail(field + ".dim", "does not match the vector length");
    }
    return basis;
}

std::string format12(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

double round12(double x) {
    if (!std::isfinite(x)) return x;
    const std::string s = format12(x);
    double out = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), out);
    // avoid printing -0
    return out == 0.0 ? 0.0 : out;
}

}  // namespace contractis::io

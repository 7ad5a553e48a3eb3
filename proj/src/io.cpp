#include "mgd/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "mgd/errors.hpp"

namespace mgd {
namespace {

using nlohmann::json;

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& err) {
        throw validation_error("invalid JSON in " + path + ": " + err.what());
    }
    if (!j.is_object()) throw validation_error(path + ": top level must be an object");
    return j;
}

int read_dim(const json& j, const std::string& path) {
    if (!j.contains("dim") || !j["dim"].is_number_integer())
        throw validation_error(path + ": missing integer \"dim\"");
    const int d = j["dim"].get<int>();
    if (d < 1) throw validation_error(path + ": \"dim\" must be positive");
    return d;
}

// Row-major complex matrix: rows of [re, im] pairs.
ComplexMatrix parse_matrix(const json& j, int d, const std::string& where) {
    if (!j.is_array() || static_cast<int>(j.size()) != d)
        throw validation_error(where + " must be an array of " + std::to_string(d) + " rows");
    ComplexMatrix m(d);
    for (int r = 0; r < d; ++r) {
        const json& row = j[static_cast<size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != d)
            throw validation_error(where + " row " + std::to_string(r) + " must have " +
                                   std::to_string(d) + " entries");
        for (int c = 0; c < d; ++c) {
            const json& cell = row[static_cast<size_t>(c)];
            if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() || !cell[1].is_number())
                throw validation_error(where + " entry (" + std::to_string(r) + "," +
                                       std::to_string(c) + ") must be a [re, im] pair");
            m(r, c) = cplx(cell[0].get<double>(), cell[1].get<double>());
        }
    }
    return m;
}

// States and POVM elements must arrive hermitian; the constructor's
// symmetrization must not mask a bad file.
HermitianOperator parse_hermitian(const json& j, int d, const std::string& where) {
    const ComplexMatrix m = parse_matrix(j, d, where);
    const ComplexMatrix diff = m - m.adjoint();
    if (diff.frobenius_norm() > 1e-9 * std::max(1.0, m.frobenius_norm()))
        throw validation_error(where + " is not hermitian");
    return HermitianOperator(m);
}

std::vector<HermitianOperator> parse_povm_array(const json& j, int d, const std::string& path) {
    if (!j.is_array() || j.empty()) throw validation_error(path + ": \"povm\" must be a nonempty array");
    std::vector<HermitianOperator> ops;
    ops.reserve(j.size());
    for (size_t k = 0; k < j.size(); ++k)
        ops.push_back(parse_hermitian(j[k], d, path + ": povm[" + std::to_string(k) + "]"));
    return ops;
}

GeoUniformSpec parse_group_spec(const json& j, int d, const std::string& path) {
    if (!j.contains("rho0")) throw validation_error(path + ": \"group\" requires \"rho0\"");
    const HermitianOperator rho0 = parse_hermitian(j["rho0"], d, path + ": rho0");
    const json& g = j["group"];
    if (!g.is_array() || g.empty()) throw validation_error(path + ": \"group\" must be a nonempty array");
    std::vector<ComplexMatrix> elems;
    elems.reserve(g.size());
    for (size_t k = 0; k < g.size(); ++k)
        elems.push_back(parse_matrix(g[k], d, path + ": group[" + std::to_string(k) + "]"));
    return GeoUniformSpec{rho0, UnitaryGroup::create(std::move(elems))};
}

json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.dim(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.dim(); ++c) row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw validation_error("cannot write file: " + path);
    out << j.dump(2) << '\n';
    if (!out) throw validation_error("write failed: " + path);
}

} // namespace

ProblemFile load_problem(const std::string& path) {
    const json j = read_json(path);
    const int d = read_dim(j, path);
    const bool has_states = j.contains("states");
    const bool has_group = j.contains("group");
    if (has_states == has_group)
        throw validation_error(path + ": exactly one of \"states\" or \"group\" is required");

    ProblemFile out;
    if (has_states) {
        const json& st = j["states"];
        if (!st.is_array() || st.empty())
            throw validation_error(path + ": \"states\" must be a nonempty array");
        std::vector<double> probs;
        std::vector<HermitianOperator> states;
        probs.reserve(st.size());
        states.reserve(st.size());
        for (size_t i = 0; i < st.size(); ++i) {
            const json& item = st[i];
            const std::string where = path + ": states[" + std::to_string(i) + "]";
            if (!item.is_object() || !item.contains("p") || !item.contains("rho"))
                throw validation_error(where + " must be an object with \"p\" and \"rho\"");
            if (!item["p"].is_number()) throw validation_error(where + ".p must be a number");
            probs.push_back(item["p"].get<double>());
            states.push_back(parse_hermitian(item["rho"], d, where + ".rho"));
        }
        out.ensemble = Ensemble::create(std::move(probs), std::move(states));
    } else {
        GeoUniformSpec spec = parse_group_spec(j, d, path);
        out.ensemble = generate_ensemble(spec);
        out.group_spec = std::move(spec);
    }
    if (j.contains("povm")) out.povm = Povm::create(parse_povm_array(j["povm"], d, path));
    return out;
}

Povm load_povm(const std::string& path) {
    const json j = read_json(path);
    const int d = read_dim(j, path);
    if (!j.contains("povm")) throw validation_error(path + ": missing \"povm\"");
    return Povm::create(parse_povm_array(j["povm"], d, path));
}

OptimalityFile load_optimality_check(const std::string& path) {
    const json j = read_json(path);
    const int d = read_dim(j, path);
    for (const char* key : {"rho0", "group", "pi0", "V"})
        if (!j.contains(key)) throw validation_error(path + ": missing \"" + std::string(key) + "\"");
    OptimalityFile out{parse_group_spec(j, d, path),
                       parse_hermitian(j["pi0"], d, path + ": pi0"),
                       parse_matrix(j["V"], d, path + ": V")};
    return out;
}

void save_problem(const std::string& path, const Ensemble& e, const Povm* povm) {
    json j;
    j["dim"] = e.dim();
    json st = json::array();
    for (int i = 0; i < e.size(); ++i) {
        json item;
        item["p"] = e.prob(i);
        item["rho"] = matrix_to_json(e.state(i).matrix());
        st.push_back(std::move(item));
    }
    j["states"] = std::move(st);
    if (povm) {
        json arr = json::array();
        for (const auto& op : povm->ops()) arr.push_back(matrix_to_json(op.matrix()));
        j["povm"] = std::move(arr);
    }
    write_json(path, j);
}

void save_povm(const std::string& path, const Povm& povm) {
    json j;
    j["dim"] = povm.dim();
    json arr = json::array();
    for (const auto& op : povm.ops()) arr.push_back(matrix_to_json(op.matrix()));
    j["povm"] = std::move(arr);
    write_json(path, j);
}

} // namespace mgd

// Writes the bundled problem files.  Usage: mgd-make-fixtures [out_dir]
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

#include "mgd/fixtures.hpp"
#include "mgd/geo_uniform.hpp"
#include "mgd/io.hpp"

using nlohmann::json;

namespace {

json matrix_json(const mgd::ComplexMatrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.dim(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.dim(); ++c) row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

void write(const std::string& path, const json& j) {
    std::ofstream out(path);
    out << j.dump(2) << '\n';
    std::printf("wrote %s\n", path.c_str());
}

} // namespace

int main(int argc, char** argv) {
    const std::string dir = argc > 1 ? argv[1] : "fixtures";
    std::filesystem::create_directories(dir);

    const auto spec = mgd::fixtures::trine_spec();
    mgd::save_problem(dir + "/trine.json", mgd::fixtures::trine());
    mgd::save_povm(dir + "/trine_povm_e.json", mgd::fixtures::trine_povm_e());
    mgd::save_povm(dir + "/trine_povm_g.json", mgd::fixtures::trine_povm_g());
    mgd::save_problem(dir + "/basis_complement.json", mgd::fixtures::basis_complement());
    mgd::save_problem(dir + "/geometric_tail.json", mgd::fixtures::geometric_tail(30));
    mgd::save_problem(dir + "/helstrom_pair.json", mgd::fixtures::helstrom_pair());
    mgd::save_problem(dir + "/identical_states.json", mgd::fixtures::identical_states());

    // group-presented form of the trine
    {
        json j;
        j["dim"] = 2;
        j["rho0"] = matrix_json(spec.rho0.matrix());
        json g = json::array();
        for (const auto& u : spec.group.elements()) g.push_back(matrix_json(u));
        j["group"] = std::move(g);
        write(dir + "/trine_group.json", j);
    }

    // symmetric-measurement optimality input for the trine
    {
        json j;
        j["dim"] = 2;
        j["rho0"] = matrix_json(spec.rho0.matrix());
        json g = json::array();
        for (const auto& u : spec.group.elements()) g.push_back(matrix_json(u));
        j["group"] = std::move(g);
        j["pi0"] = matrix_json(mgd::fixtures::trine_pi0().matrix());
        j["V"] = matrix_json(mgd::fixtures::trine_optimal_rotation());
        write(dir + "/trine_optimality.json", j);
    }
    return 0;
}

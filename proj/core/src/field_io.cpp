#include "sngs/field_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "sngs/error.hpp"

namespace sngs {

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::vector<std::vector<double>> read_table(const std::string& path, const std::string& header, std::size_t cols) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != header)
        throw Error(ErrorCode::IoError, path + ": expected header '" + header + "'");
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(cell, &used));
                if (used != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw Error(ErrorCode::IoError, path + ": bad number '" + cell + "'");
            }
        }
        if (row.size() != cols) throw Error(ErrorCode::IoError, path + ": wrong column count");
        rows.push_back(std::move(row));
    }
    return rows;
}

GridPtr grid_from_rows(const std::vector<std::vector<double>>& rows, const std::string& path) {
    if (rows.size() < kMinNodes) throw Error(ErrorCode::IoError, path + ": too few rows");
    GridPtr g = make_grid(rows.back()[0], rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (std::abs(rows[i][0] - g->node(i)) > 1e-12 * g->r_max())
            throw Error(ErrorCode::IoError, path + ": nodes are not a uniform grid from 0");
    return g;
}

void open_out(std::ofstream& out, const std::string& path) {
    out.open(path, std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
}

}  // namespace

void write_field_csv(const std::string& path, const RadialField& f) {
    std::ofstream out;
    open_out(out, path);
    out << "r,value\n";
    for (std::size_t i = 0; i < f.size(); ++i)
        out << format_double(f.grid()->node(i)) << ',' << format_double(f[i]) << '\n';
    if (!out) throw Error(ErrorCode::IoError, "write failed: " + path);
}

RadialField read_field_csv(const std::string& path) {
    const auto rows = read_table(path, "r,value", 2);
    GridPtr g = grid_from_rows(rows, path);
    std::vector<double> v(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) v[i] = rows[i][1];
    const Parity par = v[0] == 0.0 ? Parity::odd : Parity::even;
    return RadialField(g, std::move(v), par);
}

void write_state_csv(const std::string& path, const GroundState& state) {
    std::ofstream out;
    open_out(out, path);
    out << "r,u,v\n";
    const auto& g = *state.grid();
    for (std::size_t i = 0; i < g.n(); ++i)
        out << format_double(g.node(i)) << ',' << format_double(state.u[i]) << ',' << format_double(state.v[i])
            << '\n';
    if (!out) throw Error(ErrorCode::IoError, "write failed: " + path);
}

std::pair<RadialField, RadialField> read_state_csv(const std::string& path) {
    const auto rows = read_table(path, "r,u,v", 3);
    GridPtr g = grid_from_rows(rows, path);
    std::vector<double> u(rows.size()), v(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        u[i] = rows[i][1];
        v[i] = rows[i][2];
    }
    double mass = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) mass += g->weights_r2dr()[i] * u[i] * u[i];
    return {RadialField(g, std::move(u)), RadialField(g, std::move(v), Parity::even, FarField::coulomb(mass))};
}

}  // namespace sngs

#include "curvforge/numerics/field.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace curvforge::numerics {

void write_csv(std::ostream& os, const ScalarField& field) {
    os << "x,y,value\n";
    char buf[96];
    for (std::size_t k = 0; k < field.size(); ++k) {
        const Complex z = field.grid().node(k);
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", z.real(), z.imag(), field[k]);
        os << buf;
    }
}

ScalarField read_csv(std::istream& is, GridPtr grid) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("x,y,value", 0) != 0) {
        throw ConfigError("field CSV must start with the header x,y,value");
    }
    std::vector<double> values;
    values.reserve(grid->size());
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        double parsed[3];
        for (double& p : parsed) {
            if (!std::getline(row, cell, ',')) throw ConfigError("malformed CSV row: " + line);
            p = std::stod(cell);
        }
        const std::size_t k = values.size();
        if (k >= grid->size() || std::abs(Complex(parsed[0], parsed[1]) - grid->node(k)) > 1e-12) {
            throw ConfigError("CSV rows do not match the grid's node order");
        }
        values.push_back(parsed[2]);
    }
    return ScalarField(std::move(grid), std::move(values));
}

}  // namespace curvforge::numerics

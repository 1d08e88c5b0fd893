#include "projcoords/io.hpp"

#include "projcoords/errors.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace projcoords {

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw InvalidInput("write to '" + path + "' failed");
}

namespace {

bool parse_row(const std::string& line, std::vector<double>& row) {
    row.clear();
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        if (b == std::string::npos) return false;
        cell = cell.substr(b, e - b + 1);
        std::size_t used = 0;
        try {
            row.push_back(std::stod(cell, &used));
        } catch (const std::exception&) {
            return false;
        }
        if (used != cell.size()) return false;
    }
    return !row.empty();
}

} // namespace

Eigen::MatrixXd parse_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream is(text);
    std::string line;
    std::vector<double> row;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (!parse_row(line, row)) {
            if (rows.empty() && lineno == 1) continue;  // header
            throw InvalidInput("csv line " + std::to_string(lineno) + " is not numeric");
        }
        if (!rows.empty() && row.size() != rows[0].size())
            throw InvalidInput("csv line " + std::to_string(lineno) + " has " + std::to_string(row.size()) + " fields, expected " +
                               std::to_string(rows[0].size()));
        rows.push_back(row);
    }
    if (rows.empty()) return Eigen::MatrixXd(0, 0);
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

Eigen::MatrixXd read_csv(const std::string& path) { return parse_csv(read_text(path)); }

std::string format_csv(const Eigen::MatrixXd& m, const std::vector<std::string>& header) {
    std::ostringstream os;
    os << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    if (!header.empty()) os << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
        os << '\n';
    }
    return os.str();
}

void write_csv(const std::string& path, const Eigen::MatrixXd& m, const std::vector<std::string>& header) {
    write_text(path, format_csv(m, header));
}

Eigen::MatrixXd cloud_to_rows(const ProjectiveCloud& Y) {
    const Eigen::Index n1 = Y.points.rows();
    if (Y.field == Field::real) return Y.points.real().transpose();
    Eigen::MatrixXd out(Y.points.cols(), 2 * n1);
    for (Eigen::Index j = 0; j < Y.points.cols(); ++j) {
        for (Eigen::Index i = 0; i < n1; ++i) {
            out(j, 2 * i) = Y.points(i, j).real();
            out(j, 2 * i + 1) = Y.points(i, j).imag();
        }
    }
    return out;
}

ProjectiveCloud cloud_from_rows(const Eigen::MatrixXd& rows, Field field) {
    if (field == Field::real) return ProjectiveCloud::from_real_rows(rows);
    if (rows.cols() % 2 != 0) throw InvalidInput("complex coordinates need an even number of columns");
    const Eigen::Index n1 = rows.cols() / 2;
    Eigen::MatrixXcd cols(n1, rows.rows());
    for (Eigen::Index j = 0; j < rows.rows(); ++j)
        for (Eigen::Index i = 0; i < n1; ++i) cols(i, j) = {rows(j, 2 * i), rows(j, 2 * i + 1)};
    return ProjectiveCloud::from_columns(Field::complex, std::move(cols));
}

nlohmann::json cochain_to_json(const Cochain& c) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto& [s, v] : c.values) {
        nlohmann::json e;
        e["simplex"] = s;
        if (c.coefficients.kind == Coefficients::Kind::real) e["value"] = v;
        else e["value"] = static_cast<long long>(std::llround(v));
        arr.push_back(e);
    }
    return arr;
}

Cochain cochain_from_json(const nlohmann::json& j, int dim, Coefficients coeff) {
    if (!j.is_array()) throw InvalidInput("cochain json must be an array");
    Cochain c(dim, coeff);
    for (auto& e : j) {
        if (!e.contains("simplex") || !e.contains("value")) throw InvalidInput("cochain entry needs simplex and value");
        c.set(e.at("simplex").get<Simplex>(), e.at("value").get<double>());
    }
    return c;
}

nlohmann::json barcode_to_json(const Barcode& b) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto& iv : b.intervals) {
        nlohmann::json e;
        e["dim"] = iv.dim;
        e["birth"] = iv.birth;
        e["death"] = iv.death ? nlohmann::json(*iv.death) : nlohmann::json(nullptr);
        e["representative"] = cochain_to_json(iv.representative);
        arr.push_back(e);
    }
    return arr;
}

Barcode barcode_from_json(const nlohmann::json& j, Coefficients coeff) {
    if (!j.is_array()) throw InvalidInput("barcode json must be an array");
    Barcode b;
    try {
        for (auto& e : j) {
            Interval iv;
            iv.dim = e.at("dim").get<int>();
            iv.birth = e.at("birth").get<double>();
            if (!e.at("death").is_null()) iv.death = e.at("death").get<double>();
            iv.representative = cochain_from_json(e.at("representative"), iv.dim, coeff);
            b.intervals.push_back(std::move(iv));
        }
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidInput(std::string("malformed barcode json: ") + ex.what());
    }
    return b;
}

} // namespace projcoords

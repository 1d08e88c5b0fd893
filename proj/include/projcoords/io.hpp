#pragma once

#include "projcoords/cohomology.hpp"
#include "projcoords/ppca.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <string>
#include <vector>

namespace projcoords {

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

// Comma separated, one row per line; a non-numeric first line is treated as a header.
Eigen::MatrixXd read_csv(const std::string& path);
Eigen::MatrixXd parse_csv(const std::string& text);
std::string format_csv(const Eigen::MatrixXd& m, const std::vector<std::string>& header = {});
void write_csv(const std::string& path, const Eigen::MatrixXd& m, const std::vector<std::string>& header = {});

// Real clouds: n+1 columns; complex clouds: 2(n+1) columns, re/im interleaved.
Eigen::MatrixXd cloud_to_rows(const ProjectiveCloud& Y);
ProjectiveCloud cloud_from_rows(const Eigen::MatrixXd& rows, Field field);

nlohmann::json cochain_to_json(const Cochain& c);
Cochain cochain_from_json(const nlohmann::json& j, int dim, Coefficients coeff);

nlohmann::json barcode_to_json(const Barcode& b);
Barcode barcode_from_json(const nlohmann::json& j, Coefficients coeff);

} // namespace projcoords

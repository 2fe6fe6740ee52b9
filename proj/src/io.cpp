#include "xsb/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace xsb {

std::string sidecar_path(const std::string& csv_path) {
  const auto dot = csv_path.find_last_of('.');
  const auto slash = csv_path.find_last_of("/\\");
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return csv_path + ".json";
  return csv_path.substr(0, dot) + ".json";
}

void dump_field_csv(const SpaceTimeField& f, const std::string& csv_path) {
  {
    CsvWriter w(csv_path);
    w.row({"t_index", "x_index", "re", "im"});
    for (int j = 0; j < f.grid.t_points; ++j)
      for (int k = 0; k < f.grid.x_points; ++k) {
        const cplx v = f.at(j, k);
        w.row({std::to_string(j), std::to_string(k), CsvWriter::num(v.real()),
               CsvWriter::num(v.imag())});
      }
  }
  nlohmann::json meta;
  meta["x_points"] = f.grid.x_points;
  meta["t_points"] = f.grid.t_points;
  meta["x_length"] = f.grid.x_length;
  meta["t_length"] = f.grid.t_length;
  meta["normalization"] = "unitary";
  std::ofstream out(sidecar_path(csv_path));
  if (!out) throw std::runtime_error("cannot write sidecar for " + csv_path);
  out << meta.dump(2) << "\n";
}

SpaceTimeField load_field_csv(const std::string& csv_path) {
  std::ifstream meta_in(sidecar_path(csv_path));
  if (!meta_in)
    throw std::runtime_error("missing JSON sidecar for " + csv_path);
  nlohmann::json meta = nlohmann::json::parse(meta_in);
  const Grid grid(meta.at("x_points").get<int>(), meta.at("t_points").get<int>(),
                  meta.at("x_length").get<double>(), meta.at("t_length").get<double>());
  SpaceTimeField f(grid);
  std::ifstream in(csv_path);
  if (!in) throw std::runtime_error("cannot open " + csv_path);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string cell;
    int j = -1, k = -1;
    double re = 0, im = 0;
    for (int c = 0; std::getline(ss, cell, ','); ++c) {
      switch (c) {
        case 0: j = std::stoi(cell); break;
        case 1: k = std::stoi(cell); break;
        case 2: re = std::stod(cell); break;
        case 3: im = std::stod(cell); break;
        default: throw std::runtime_error("malformed field CSV row: " + line);
      }
    }
    if (j < 0 || j >= grid.t_points || k < 0 || k >= grid.x_points)
      throw std::runtime_error("field CSV index out of range: " + line);
    f.at(j, k) = cplx(re, im);
  }
  return f;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path) {
  if (!out_) throw std::runtime_error("cannot write " + path);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::string cell = cells[i];
    if (cell.find_first_of(",\"\n") != std::string::npos) {
      std::string quoted = "\"";
      for (char ch : cell) {
        if (ch == '"') quoted += '"';
        quoted += ch;
      }
      quoted += '"';
      cell = quoted;
    }
    out_ << cell << ((i + 1 < cells.size()) ? "," : "\n");
  }
}

std::string CsvWriter::num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string CsvWriter::num12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace xsb

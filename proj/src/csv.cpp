#include "snlm/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace snlm {

std::string csv_num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_int(long long v) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%lld", v);
  return buf;
}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size())
    throw std::invalid_argument("csv row width does not match the header");
  rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
  std::string out;
  auto join = [&out](const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  join(header_);
  for (const auto& row : rows_) join(row);
  return out;
}

void CsvTable::write(const std::string& path) const { write_text(path, str()); }

void Metadata::set(const std::string& key, std::string value) {
  for (auto& e : entries_)
    if (e.first == key) {
      e.second = std::move(value);
      return;
    }
  entries_.emplace_back(key, std::move(value));
}

std::string Metadata::str() const {
  std::string out;
  for (const auto& [k, v] : entries_) {
    out += k;
    out += " = ";
    out += v;
    out += '\n';
  }
  return out;
}

void Metadata::write(const std::string& path) const { write_text(path, str()); }

std::string convergence_csv(const ErrorReport& rep) {
  CsvTable t({"scheme", "cells", "h", "error", "order", "iterations", "dofs", "reduced_dim",
              "status"});
  for (const auto& r : rep.rows)
    t.add_row({space_name(r.scheme), csv_int(r.cells), csv_num(r.h), csv_num(r.error),
               std::isnan(r.order) ? "" : csv_num(r.order), csv_int(r.iterations),
               csv_int(r.dofs), csv_int(r.reduced_dim), r.status});
  return t.str();
}

std::string profile_csv(const ProfileData& prof) {
  const auto& mesh = prof.mesh;
  if (mesh.dim == 1) {
    CsvTable t({"x", "scalar_flux"});
    for (int p = 0; p < mesh.n_cells(); ++p)
      t.add_row({csv_num(mesh.center(p)[0]), csv_num(prof.scalar[p])});
    return t.str();
  }
  CsvTable t({"x", "y", "scalar_flux"});
  for (int p = 0; p < mesh.n_cells(); ++p) {
    auto c = mesh.center(p);
    t.add_row({csv_num(c[0]), csv_num(c[1]), csv_num(prof.scalar[p])});
  }
  return t.str();
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace snlm

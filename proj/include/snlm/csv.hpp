#pragma once

#include <string>
#include <vector>

#include "snlm/benchmarks.hpp"

namespace snlm {

// Stable numeric formatting so identical runs produce identical bytes.
std::string csv_num(double v);
std::string csv_int(long long v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void add_row(std::vector<std::string> cells);
  std::string str() const;
  void write(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// key = value sidecar, keys in insertion order.
class Metadata {
 public:
  void set(const std::string& key, std::string value);
  void set_num(const std::string& key, double v) { set(key, csv_num(v)); }
  void set_int(const std::string& key, long long v) { set(key, csv_int(v)); }
  std::string str() const;
  void write(const std::string& path) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

std::string convergence_csv(const ErrorReport& rep);
std::string profile_csv(const ProfileData& prof);

void write_text(const std::string& path, const std::string& content);

}  // namespace snlm

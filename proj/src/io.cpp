#include "newton_ensemble/io.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace newton_ensemble {

LatticePolytope load_polytope_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("polytope JSON parse error: ") + e.what());
  }
  if (!doc.contains("vertices") || !doc["vertices"].is_array() || doc["vertices"].empty())
    throw ConfigError("polytope JSON needs a nonempty \"vertices\" array");
  const auto& verts = doc["vertices"];
  const int rows = static_cast<int>(verts.size());
  const int cols = static_cast<int>(verts[0].size());
  MatrixXi points(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(verts[r].size()) != cols)
      throw ConfigError("polytope vertices have inconsistent dimensions");
    for (int c = 0; c < cols; ++c) {
      if (!verts[r][c].is_number_integer())
        throw ConfigError("polytope vertices must be integers");
      points(r, c) = verts[r][c].get<int>();
    }
  }
  const int p_override = doc.value("p", -1);
  return LatticePolytope::from_vertices(points, p_override);
}

LatticePolytope load_polytope_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open polytope file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_polytope_json(buffer.str());
}

namespace {

std::string timestamp_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[64];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void write_header_lines(std::ostream& out, const Provenance& prov) {
  out << "# tool: " << prov.tool << " " << prov.version << "\n";
  if (!prov.config.empty()) out << "# config: " << prov.config << "\n";
  if (prov.seed) out << "# seed: " << *prov.seed << "\n";
  if (!prov.deterministic) out << "# timestamp: " << timestamp_now() << "\n";
}

}  // namespace

CsvWriter::CsvWriter(std::ostream& out, const Provenance& prov,
                     const std::vector<std::string>& columns)
    : out_(out), columns_(static_cast<int>(columns.size())) {
  write_header_lines(out_, prov);
  for (std::size_t i = 0; i < columns.size(); ++i)
    out_ << (i ? "," : "") << columns[i];
  out_ << "\n";
  out_ << std::setprecision(17);
}

void CsvWriter::row(const std::vector<double>& values) {
  if (static_cast<int>(values.size()) != columns_)
    throw ConfigError("CSV row width mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << values[i];
  out_ << "\n";
  ++rows_;
}

void CsvWriter::raw_row(const std::vector<std::string>& values) {
  if (static_cast<int>(values.size()) != columns_)
    throw ConfigError("CSV row width mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << values[i];
  out_ << "\n";
  ++rows_;
}

int validate_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot reopen emitted CSV: " + path);
  std::string line;
  int columns = -1;
  int rows = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!saw_header) {
      columns = static_cast<int>(fields.size());
      saw_header = true;
      continue;
    }
    if (static_cast<int>(fields.size()) != columns)
      throw ConfigError("CSV validation: ragged row in " + path);
    for (const auto& f : fields) {
      std::size_t pos = 0;
      try {
        (void)std::stod(f, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      // Non-numeric columns (labels, hex ids) are allowed but must be nonempty.
      if (f.empty()) throw ConfigError("CSV validation: empty field in " + path);
      (void)pos;
    }
    ++rows;
  }
  if (!saw_header) throw ConfigError("CSV validation: missing header in " + path);
  return rows;
}

std::string provenance_json(const Provenance& prov) {
  nlohmann::json j;
  j["tool"] = prov.tool;
  j["version"] = prov.version;
  j["config"] = prov.config;
  if (prov.seed) j["seed"] = *prov.seed;
  if (!prov.deterministic) j["timestamp"] = timestamp_now();
  return j.dump();
}

}  // namespace newton_ensemble

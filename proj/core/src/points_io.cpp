#include "jroc/points_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "jroc/errors.hpp"
#include "jroc/format.hpp"
#include "jroc/plot_emitter.hpp"

namespace jroc {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    out.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double_or_throw(const std::string& s, const char* what, std::size_t line_no) {
  double v;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("line " + std::to_string(line_no) + ": bad " + what + " value '" + s +
                     "'");
  return v;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

}  // namespace

std::string points_to_csv(std::span<const CostPoint> points) {
  std::string out = "# schema=1\nmodel_id,config_bitstring,tc,mc\n";
  for (const CostPoint& p : points) {
    out += p.model_id;
    out += ',';
    out += p.config.bitstring();
    out += ',';
    out += format_double(p.tc);
    out += ',';
    out += format_double(p.mc);
    out += '\n';
  }
  return out;
}

std::vector<CostPoint> points_from_csv(const std::string& text) {
  std::vector<CostPoint> points;
  std::stringstream ss(text);
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(ss, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;  // column header
      continue;
    }
    const auto cells = split_csv_line(line);
    if (cells.size() != 4)
      throw ParseError("line " + std::to_string(line_no) +
                       ": points rows need 4 cells (model_id,config_bitstring,tc,mc)");
    CostPoint p;
    p.model_id = cells[0];
    p.config = FeatureConfig::from_bitstring(cells[1]);
    p.tc = parse_double_or_throw(cells[2], "tc", line_no);
    p.mc = parse_double_or_throw(cells[3], "mc", line_no);
    points.push_back(std::move(p));
  }
  if (points.empty()) throw ParseError("points file contains no data rows");
  return points;
}

void write_points_csv(const std::filesystem::path& path, std::span<const CostPoint> points) {
  write_file_atomic(path, points_to_csv(points));
}

std::vector<CostPoint> read_points_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open points file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return points_from_csv(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string mdat_to_csv(const MethodResultMatrix& mrm) {
  std::string out = "# schema=1\nmethod";
  for (const auto& label : mrm.labels) {
    out += ',';
    out += label.dataset;
    out += ":a";
    out += format_double(label.alpha);
    out += ":r";
    out += std::to_string(label.repetition);
  }
  out += '\n';
  for (std::size_t method = 0; method < 5; ++method) {
    out += kMethodNames[method];
    for (const auto& column : mrm.columns) {
      out += ',';
      out += format_double(column[method]);
    }
    out += '\n';
  }
  return out;
}

std::string aggregates_to_csv(const std::vector<AggregateRow>& rows,
                              const std::string& key_column) {
  std::string out = "# schema=1\n" + key_column + ",method,mean,sd\n";
  for (const auto& row : rows) {
    for (std::size_t method = 0; method < 5; ++method) {
      out += row.key;
      out += ',';
      out += kMethodNames[method];
      out += ',';
      out += format_double(row.mean[method]);
      out += ',';
      out += format_double(row.sd[method]);
      out += '\n';
    }
  }
  return out;
}

std::string cells_to_csv(const CellTable& table) {
  std::string out = "# schema=1\ndataset,alpha,Full,BMC,BTC,BJC,RND\n";
  for (const auto& row : table.rows) {
    out += row.dataset;
    out += ',';
    out += format_double(row.alpha);
    for (double v : row.means) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  out += "Avg,";
  for (double v : table.avg_row) {
    out += ',';
    out += format_double(v);
  }
  out += '\n';
  return out;
}

CellsFile read_cells_csv(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  CellsFile file;
  bool header_seen = false;
  std::size_t line_no = 0;
  for (const auto& line : lines) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split_csv_line(line);
    if (!header_seen) {
      if (cells.size() < 3)
        throw ParseError("cells header needs dataset,alpha and method columns");
      file.method_names.assign(cells.begin() + 2, cells.end());
      header_seen = true;
      continue;
    }
    if (cells[0] == "Avg") continue;
    if (cells.size() != file.method_names.size() + 2)
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(file.method_names.size() + 2) + " cells");
    file.row_labels.push_back(cells[0] + ":" + cells[1]);
    std::vector<double> row;
    row.reserve(file.method_names.size());
    for (std::size_t i = 2; i < cells.size(); ++i)
      row.push_back(parse_double_or_throw(cells[i], "cell", line_no));
    file.values.push_back(std::move(row));
  }
  if (!header_seen || file.values.empty())
    throw ParseError("cells file contains no data rows: " + path.string());
  return file;
}

}  // namespace jroc

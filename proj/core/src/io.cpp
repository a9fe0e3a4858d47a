#include "graphquad/io.hpp"

#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "graphquad/errors.hpp"

namespace graphquad {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream stream(line);
  std::string tok;
  while (stream >> tok) tokens.push_back(tok);
  return tokens;
}

double parse_double(const std::string& token, int line_no) {
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size() || errno == ERANGE)
    throw io_error("line " + std::to_string(line_no) + ": cannot parse number '" + token + "'");
  return value;
}

long parse_long(const std::string& token, int line_no) {
  errno = 0;
  char* end = nullptr;
  const long value = std::strtol(token.c_str(), &end, 10);
  if (end != token.c_str() + token.size() || errno == ERANGE)
    throw io_error("line " + std::to_string(line_no) + ": cannot parse integer '" + token + "'");
  return value;
}

bool blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

template <typename Fn>
void to_file(const std::string& path, Fn&& fn) {
  std::ofstream os(path);
  if (!os) throw io_error("cannot open '" + path + "' for writing");
  fn(os);
  os.flush();
  if (!os) throw io_error("failed while writing '" + path + "'");
}

template <typename Fn>
auto from_file(const std::string& path, Fn&& fn) {
  std::ifstream is(path);
  if (!is) throw io_error("cannot open '" + path + "' for reading");
  try {
    return fn(is);
  } catch (const io_error& e) {
    throw io_error(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw io_error(path + ": " + e.what());
  }
}

}  // namespace

std::string format_g17(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_edge_list(std::ostream& os, const WeightedGraph& g,
                     std::span<const std::pair<std::string, std::string>> metadata) {
  for (const auto& [key, value] : metadata) os << "# " << key << ' ' << value << '\n';
  os << "n " << g.vertex_count() << '\n';
  for (const Edge& e : g.edges())
    os << e.u << ' ' << e.v << ' ' << format_g17(e.weight) << '\n';
}

WeightedGraph read_edge_list(std::istream& is) {
  std::string line;
  int line_no = 0;
  int n = -1;
  std::vector<Edge> edges;
  while (std::getline(is, line)) {
    ++line_no;
    if (blank_or_comment(line)) continue;
    const std::vector<std::string> tokens = tokenize(line);
    if (n < 0) {
      if (tokens.size() != 2 || tokens[0] != "n")
        throw io_error("line " + std::to_string(line_no) +
                       ": expected header 'n <count>' before any edge");
      n = static_cast<int>(parse_long(tokens[1], line_no));
      continue;
    }
    if (tokens.size() != 3)
      throw io_error("line " + std::to_string(line_no) + ": expected 'u v w'");
    edges.push_back({static_cast<int>(parse_long(tokens[0], line_no)),
                     static_cast<int>(parse_long(tokens[1], line_no)),
                     parse_double(tokens[2], line_no)});
  }
  if (n < 0) throw io_error("missing 'n <count>' header");
  return WeightedGraph::from_edge_list(n, edges);
}

void write_edge_list_file(const std::string& path, const WeightedGraph& g,
                          std::span<const std::pair<std::string, std::string>> metadata) {
  to_file(path, [&](std::ostream& os) { write_edge_list(os, g, metadata); });
}

WeightedGraph read_edge_list_file(const std::string& path) {
  return from_file(path, [](std::istream& is) { return read_edge_list(is); });
}

void write_rule(std::ostream& os, const QuadratureRule& rule) {
  for (std::size_t i = 0; i < rule.vertices.size(); ++i)
    os << rule.vertices[i] << ' ' << format_g17(rule.weights[static_cast<Eigen::Index>(i)])
       << '\n';
}

QuadratureRule read_rule(std::istream& is) {
  QuadratureRule rule;
  std::vector<double> weights;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (blank_or_comment(line)) continue;
    const std::vector<std::string> tokens = tokenize(line);
    if (tokens.size() != 2)
      throw io_error("line " + std::to_string(line_no) + ": expected 'vertex_id weight'");
    rule.vertices.push_back(static_cast<int>(parse_long(tokens[0], line_no)));
    weights.push_back(parse_double(tokens[1], line_no));
  }
  if (rule.vertices.empty()) throw io_error("rule file contains no entries");
  rule.weights = Eigen::Map<const Eigen::VectorXd>(weights.data(),
                                                   static_cast<Eigen::Index>(weights.size()));
  return rule;
}

void write_rule_file(const std::string& path, const QuadratureRule& rule) {
  to_file(path, [&](std::ostream& os) { write_rule(os, rule); });
}

QuadratureRule read_rule_file(const std::string& path) {
  return from_file(path, [](std::istream& is) { return read_rule(is); });
}

void write_vertex_list(std::ostream& os, std::span<const int> vertices) {
  for (int v : vertices) os << v << '\n';
}

std::vector<int> read_vertex_list(std::istream& is) {
  std::vector<int> out;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (blank_or_comment(line)) continue;
    const std::vector<std::string> tokens = tokenize(line);
    if (tokens.size() != 1)
      throw io_error("line " + std::to_string(line_no) + ": expected one vertex id");
    out.push_back(static_cast<int>(parse_long(tokens[0], line_no)));
  }
  if (out.empty()) throw io_error("vertex list is empty");
  return out;
}

void write_vertex_list_file(const std::string& path, std::span<const int> vertices) {
  to_file(path, [&](std::ostream& os) { write_vertex_list(os, vertices); });
}

std::vector<int> read_vertex_list_file(const std::string& path) {
  return from_file(path, [](std::istream& is) { return read_vertex_list(is); });
}

void write_spectrum(std::ostream& os, const Spectrum& s) {
  for (int k = 0; k < s.pairs(); ++k) {
    os << format_g17(s.eigenvalues[k]);
    for (int v = 0; v < s.vertex_count(); ++v) os << ' ' << format_g17(s.eigenvectors(v, k));
    os << '\n';
  }
}

Spectrum read_spectrum(std::istream& is) {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (blank_or_comment(line)) continue;
    const std::vector<std::string> tokens = tokenize(line);
    if (tokens.size() < 2)
      throw io_error("line " + std::to_string(line_no) + ": expected 'lambda c_1 ... c_n'");
    if (!vectors.empty() && tokens.size() - 1 != vectors.front().size())
      throw io_error("line " + std::to_string(line_no) + ": inconsistent eigenvector length");
    values.push_back(parse_double(tokens[0], line_no));
    std::vector<double> coeffs;
    for (std::size_t i = 1; i < tokens.size(); ++i)
      coeffs.push_back(parse_double(tokens[i], line_no));
    vectors.push_back(std::move(coeffs));
  }
  if (values.empty()) throw io_error("spectrum file contains no eigenpairs");
  Spectrum s;
  const auto n = static_cast<Eigen::Index>(vectors.front().size());
  const auto k = static_cast<Eigen::Index>(values.size());
  s.eigenvalues = Eigen::Map<const Eigen::VectorXd>(values.data(), k);
  s.eigenvectors.resize(n, k);
  for (Eigen::Index j = 0; j < k; ++j)
    s.eigenvectors.col(j) =
        Eigen::Map<const Eigen::VectorXd>(vectors[static_cast<std::size_t>(j)].data(), n);
  return s;
}

void write_spectrum_file(const std::string& path, const Spectrum& s) {
  to_file(path, [&](std::ostream& os) { write_spectrum(os, s); });
}

Spectrum read_spectrum_file(const std::string& path) {
  return from_file(path, [](std::istream& is) { return read_spectrum(is); });
}

void write_gram(std::ostream& os, const GramMatrix& m) {
  os << 'W';
  for (int v : m.vertices) os << ' ' << v;
  os << " ell " << m.ell << '\n';
  for (Eigen::Index i = 0; i < m.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.values.cols(); ++j) {
      if (j) os << ' ';
      os << format_g17(m.values(i, j));
    }
    os << '\n';
  }
}

GramMatrix read_gram(std::istream& is) {
  std::string line;
  int line_no = 0;
  GramMatrix m;
  bool have_header = false;
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    ++line_no;
    if (blank_or_comment(line)) continue;
    const std::vector<std::string> tokens = tokenize(line);
    if (!have_header) {
      if (tokens.size() < 4 || tokens.front() != "W" || tokens[tokens.size() - 2] != "ell")
        throw io_error("line " + std::to_string(line_no) + ": expected 'W <ids> ell <l>'");
      for (std::size_t i = 1; i + 2 < tokens.size(); ++i)
        m.vertices.push_back(static_cast<int>(parse_long(tokens[i], line_no)));
      m.ell = static_cast<int>(parse_long(tokens.back(), line_no));
      have_header = true;
      continue;
    }
    std::vector<double> row;
    for (const std::string& tok : tokens) row.push_back(parse_double(tok, line_no));
    if (row.size() != m.vertices.size())
      throw io_error("line " + std::to_string(line_no) + ": expected " +
                     std::to_string(m.vertices.size()) + " entries");
    rows.push_back(std::move(row));
  }
  if (!have_header) throw io_error("missing gram header");
  if (rows.size() != m.vertices.size())
    throw io_error("expected " + std::to_string(m.vertices.size()) + " matrix rows");
  const auto k = static_cast<Eigen::Index>(rows.size());
  m.values.resize(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j)
      m.values(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

void write_gram_file(const std::string& path, const GramMatrix& m) {
  to_file(path, [&](std::ostream& os) { write_gram(os, m); });
}

GramMatrix read_gram_file(const std::string& path) {
  return from_file(path, [](std::istream& is) { return read_gram(is); });
}

void write_point_cloud(std::ostream& os, const PointCloud& cloud, bool labeled) {
  if (labeled && !cloud.labeled())
    throw std::invalid_argument("cloud carries no labels to write");
  for (int i = 0; i < cloud.size(); ++i) {
    for (int d = 0; d < cloud.dimension(); ++d) {
      if (d) os << ',';
      os << format_g17(cloud.points(i, d));
    }
    if (labeled) os << ',' << cloud.labels[static_cast<std::size_t>(i)];
    os << '\n';
  }
}

PointCloud read_point_cloud(std::istream& is, bool labeled) {
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (blank_or_comment(line)) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) fields.push_back(field);
    if (fields.size() < (labeled ? 2u : 1u))
      throw io_error("line " + std::to_string(line_no) + ": too few columns");
    const std::size_t coords = fields.size() - (labeled ? 1 : 0);
    if (!rows.empty() && coords != rows.front().size())
      throw io_error("line " + std::to_string(line_no) + ": inconsistent column count");
    std::vector<double> row;
    for (std::size_t i = 0; i < coords; ++i) row.push_back(parse_double(fields[i], line_no));
    rows.push_back(std::move(row));
    if (labeled) labels.push_back(static_cast<int>(parse_long(fields.back(), line_no)));
  }
  if (rows.empty()) throw io_error("point cloud is empty");
  PointCloud cloud;
  cloud.points.resize(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t d = 0; d < rows.front().size(); ++d)
      cloud.points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d)) = rows[i][d];
  cloud.labels = std::move(labels);
  return cloud;
}

void write_point_cloud_file(const std::string& path, const PointCloud& cloud, bool labeled) {
  to_file(path, [&](std::ostream& os) { write_point_cloud(os, cloud, labeled); });
}

PointCloud read_point_cloud_file(const std::string& path, bool labeled) {
  return from_file(path, [labeled](std::istream& is) { return read_point_cloud(is, labeled); });
}

void write_vector(std::ostream& os, const Eigen::VectorXd& values) {
  for (Eigen::Index i = 0; i < values.size(); ++i) os << format_g17(values[i]) << '\n';
}

Eigen::VectorXd read_vector(std::istream& is) {
  std::vector<double> values;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (blank_or_comment(line)) continue;
    const std::vector<std::string> tokens = tokenize(line);
    if (tokens.size() != 1)
      throw io_error("line " + std::to_string(line_no) + ": expected one value per line");
    values.push_back(parse_double(tokens[0], line_no));
  }
  if (values.empty()) throw io_error("vector file is empty");
  return Eigen::Map<const Eigen::VectorXd>(values.data(),
                                           static_cast<Eigen::Index>(values.size()));
}

void write_vector_file(const std::string& path, const Eigen::VectorXd& values) {
  to_file(path, [&](std::ostream& os) { write_vector(os, values); });
}

Eigen::VectorXd read_vector_file(const std::string& path) {
  return from_file(path, [](std::istream& is) { return read_vector(is); });
}

void write_experiment(std::ostream& os, const ExperimentResult& result) {
  for (const auto& [key, value] : result.header) os << "# " << key << ' ' << value << '\n';
  for (std::size_t i = 0; i < result.columns.size(); ++i) {
    if (i) os << ' ';
    os << result.columns[i];
  }
  os << '\n';
  for (const std::vector<double>& row : result.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ' ';
      os << format_g17(row[i]);
    }
    os << '\n';
  }
}

void write_experiment_csv(std::ostream& os, const ExperimentResult& result) {
  for (std::size_t i = 0; i < result.columns.size(); ++i) {
    if (i) os << ',';
    os << result.columns[i];
  }
  os << '\n';
  for (const std::vector<double>& row : result.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << format_g17(row[i]);
    }
    os << '\n';
  }
}

void write_experiment_file(const std::string& path, const ExperimentResult& result, bool csv) {
  to_file(path, [&](std::ostream& os) {
    csv ? write_experiment_csv(os, result) : write_experiment(os, result);
  });
}

}  // namespace graphquad

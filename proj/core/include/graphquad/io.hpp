#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "graphquad/builders.hpp"
#include "graphquad/eval.hpp"
#include "graphquad/graph.hpp"
#include "graphquad/heatball.hpp"
#include "graphquad/spectral.hpp"
#include "graphquad/weights.hpp"

namespace graphquad {

/// Shortest decimal form that round-trips the double (17 significant digits).
std::string format_g17(double value);

// Edge list: optional `# key value` comment lines, a required `n <count>`
// header as the first non-comment line, then one `u v w` edge per line with
// 0-based ids.
void write_edge_list(std::ostream& os, const WeightedGraph& g,
                     std::span<const std::pair<std::string, std::string>> metadata = {});
WeightedGraph read_edge_list(std::istream& is);
void write_edge_list_file(const std::string& path, const WeightedGraph& g,
                          std::span<const std::pair<std::string, std::string>> metadata = {});
WeightedGraph read_edge_list_file(const std::string& path);

// Rule: one `vertex_id weight` line per point; round-trips bit-exactly.
void write_rule(std::ostream& os, const QuadratureRule& rule);
QuadratureRule read_rule(std::istream& is);
void write_rule_file(const std::string& path, const QuadratureRule& rule);
QuadratureRule read_rule_file(const std::string& path);

// Vertex list: one id per line.
void write_vertex_list(std::ostream& os, std::span<const int> vertices);
std::vector<int> read_vertex_list(std::istream& is);
void write_vertex_list_file(const std::string& path, std::span<const int> vertices);
std::vector<int> read_vertex_list_file(const std::string& path);

// Spectrum: one `λ c_1 ... c_n` line per eigenpair in |λ|-sorted order.
void write_spectrum(std::ostream& os, const Spectrum& s);
Spectrum read_spectrum(std::istream& is);
void write_spectrum_file(const std::string& path, const Spectrum& s);
Spectrum read_spectrum_file(const std::string& path);

// Gram matrix: header `W <id list> ell <ℓ>`, then the k x k values row-major.
void write_gram(std::ostream& os, const GramMatrix& m);
GramMatrix read_gram(std::istream& is);
void write_gram_file(const std::string& path, const GramMatrix& m);
GramMatrix read_gram_file(const std::string& path);

// Point cloud CSV: one point per line, comma-separated coordinates; when
// labeled, a final integer label column.
void write_point_cloud(std::ostream& os, const PointCloud& cloud, bool labeled);
PointCloud read_point_cloud(std::istream& is, bool labeled);
void write_point_cloud_file(const std::string& path, const PointCloud& cloud, bool labeled);
PointCloud read_point_cloud_file(const std::string& path, bool labeled);

// Function vector: one value per line.
void write_vector(std::ostream& os, const Eigen::VectorXd& values);
Eigen::VectorXd read_vector(std::istream& is);
void write_vector_file(const std::string& path, const Eigen::VectorXd& values);
Eigen::VectorXd read_vector_file(const std::string& path);

// Experiment table: `# key value` header lines, a column-name line, then one
// space-separated numeric row per entry. The CSV variant emits the bare table.
void write_experiment(std::ostream& os, const ExperimentResult& result);
void write_experiment_csv(std::ostream& os, const ExperimentResult& result);
void write_experiment_file(const std::string& path, const ExperimentResult& result, bool csv);

}  // namespace graphquad

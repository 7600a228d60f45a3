#include "hyperdisc/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "hyperdisc/error.hpp"
#include "hyperdisc/kernels.hpp"

namespace hyperdisc {

// ---------------------------------------------------------------- VertexSet

VertexSet::VertexSet(std::size_t size, bool all) : size_(size), words_(words_for(size), 0) {
  if (all) {
    std::fill(words_.begin(), words_.end(), ~std::uint64_t{0});
    if (size % kWordBits != 0) words_.back() = (std::uint64_t{1} << (size % kWordBits)) - 1;
  }
}

std::size_t VertexSet::count() const noexcept {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::vector<std::size_t> VertexSet::indices() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits) {
      out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

// --------------------------------------------------------------- Hypergraph

Hypergraph::Hypergraph(std::size_t n, std::size_t m)
    : n_(n), m_(m), wpr_(words_for(n)), bits_(m * words_for(n), 0) {}

Hypergraph Hypergraph::from_edges(std::size_t n, const std::vector<std::vector<std::size_t>>& edges) {
  Hypergraph h(n, edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (auto v : edges[i]) {
      if (v >= n) throw Error(errc::kIndexOutOfRange, "vertex " + std::to_string(v) + " out of range");
      if (h.contains(i, v)) throw Error(errc::kInvalidParameter, "vertex repeated within an edge");
      h.set(i, v);
    }
  }
  return h;
}

void Hypergraph::set(std::size_t edge, std::size_t vertex) {
  bits_[edge * wpr_ + vertex / kWordBits] |= std::uint64_t{1} << (vertex % kWordBits);
}

std::size_t Hypergraph::edge_size(std::size_t i) const noexcept {
  std::size_t c = 0;
  for (auto w : row(i)) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::vector<std::size_t> Hypergraph::edge_vertices(std::size_t i) const {
  std::vector<std::size_t> out;
  const auto r = row(i);
  for (std::size_t w = 0; w < r.size(); ++w) {
    std::uint64_t bits = r[w];
    while (bits) {
      out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

std::size_t Hypergraph::total_incidences() const noexcept {
  std::size_t c = 0;
  for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

void Hypergraph::push_row(const Hypergraph& other, std::size_t i) {
  const auto r = other.row(i);
  bits_.insert(bits_.end(), r.begin(), r.end());
  ++m_;
}

// ---------------------------------------------------------------- Colouring

Colouring::Colouring(std::vector<int> values) : values_(std::move(values)) {
  for (int v : values_) {
    if (v != 1 && v != -1) throw Error(errc::kInvalidParameter, "colouring entries must be -1 or +1");
  }
}

Colouring Colouring::negated() const {
  Colouring c = *this;
  for (auto& v : c.values_) v = -v;
  return c;
}

VertexSet Colouring::positive_mask() const {
  VertexSet s(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] > 0) s.set(i);
  }
  return s;
}

std::string Colouring::to_string() const {
  std::string s;
  s.reserve(values_.size());
  for (int v : values_) s.push_back(v > 0 ? '+' : '-');
  return s;
}

FractionalColouring::FractionalColouring(std::vector<double> values) : values_(std::move(values)) {
  for (double& v : values_) {
    if (!(std::abs(v) <= 1.0 + kRangeTolerance)) {
      throw Error(errc::kInvalidParameter, "fractional colouring entry outside [-1, 1]");
    }
    v = std::clamp(v, -1.0, 1.0);
  }
}

FractionalColouring::FractionalColouring(const Colouring& c)
    : values_(c.values().begin(), c.values().end()) {}

void FractionalColouring::set(std::size_t i, double v) noexcept { values_[i] = std::clamp(v, -1.0, 1.0); }

// --------------------------------------------------------------- operations

namespace {

void check_edge(const Hypergraph& h, std::size_t i) {
  if (i >= h.num_edges()) {
    throw Error(errc::kIndexOutOfRange, "edge index " + std::to_string(i) + " out of range");
  }
}

void check_length(const Hypergraph& h, std::size_t len) {
  if (len != h.num_vertices()) {
    throw Error(errc::kLengthMismatch, "colouring length " + std::to_string(len) +
                                           " does not match vertex count " +
                                           std::to_string(h.num_vertices()));
  }
}

}  // namespace

double edge_sum(const Hypergraph& h, const FractionalColouring& psi, std::size_t i) {
  check_edge(h, i);
  check_length(h, psi.size());
  double s = 0.0;
  const auto r = h.row(i);
  for (std::size_t w = 0; w < r.size(); ++w) {
    std::uint64_t bits = r[w];
    while (bits) {
      s += psi[w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits))];
      bits &= bits - 1;
    }
  }
  return s;
}

long edge_sum(const Hypergraph& h, const Colouring& psi, std::size_t i) {
  check_edge(h, i);
  check_length(h, psi.size());
  const VertexSet pos = psi.positive_mask();
  const auto r = h.row(i);
  const auto p = pos.words();
  long plus = 0;
  long total = 0;
  for (std::size_t w = 0; w < r.size(); ++w) {
    plus += std::popcount(r[w] & p[w]);
    total += std::popcount(r[w]);
  }
  return 2 * plus - total;
}

long colouring_discrepancy(const Hypergraph& h, const Colouring& psi) {
  check_length(h, psi.size());
  return kernels::omp::max_abs_edge_sum(h, psi.positive_mask());
}

std::vector<std::size_t> degree_profile(const Hypergraph& h) { return kernels::omp::column_counts(h); }

Restriction restrict_to(const Hypergraph& h, const VertexSet& active) {
  if (active.size() != h.num_vertices()) {
    throw Error(errc::kLengthMismatch, "active set width does not match vertex count");
  }
  Restriction out;
  out.original = active.indices();
  const std::size_t n2 = out.original.size();
  out.graph = Hypergraph(n2, h.num_edges());
  for (std::size_t i = 0; i < h.num_edges(); ++i) {
    for (std::size_t k = 0; k < n2; ++k) {
      if (h.contains(i, out.original[k])) out.graph.set(i, k);
    }
  }
  return out;
}

Hypergraph remove_small_edges(const Hypergraph& h, double threshold) {
  if (!(threshold >= 0.0)) throw Error(errc::kInvalidParameter, "threshold must be non-negative");
  Hypergraph out(h.num_vertices(), 0);
  for (std::size_t i = 0; i < h.num_edges(); ++i) {
    if (static_cast<double>(h.edge_size(i)) > threshold) out.push_row(h, i);
  }
  return out;
}

bool has_odd_edge(const Hypergraph& h) {
  for (std::size_t i = 0; i < h.num_edges(); ++i) {
    if (h.edge_size(i) % 2 == 1) return true;
  }
  return false;
}

// ------------------------------------------------------------------ HDG v1

void write_hdg(std::ostream& out, const Hypergraph& h) {
  out << h.num_vertices() << ' ' << h.num_edges() << '\n';
  for (std::size_t i = 0; i < h.num_edges(); ++i) {
    bool first = true;
    for (auto v : h.edge_vertices(i)) {
      if (!first) out << ' ';
      out << v;
      first = false;
    }
    out << '\n';
  }
}

std::string to_hdg(const Hypergraph& h) {
  std::ostringstream os;
  write_hdg(os, h);
  return os.str();
}

Hypergraph read_hdg(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(errc::kParse, "HDG: missing header line");
  std::istringstream header(line);
  long long n = -1;
  long long m = -1;
  if (!(header >> n >> m) || n < 0 || m < 0) throw Error(errc::kParse, "HDG: header must be 'n m'");
  std::string rest;
  if (header >> rest) throw Error(errc::kParse, "HDG: trailing tokens in header");

  Hypergraph h(static_cast<std::size_t>(n), static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!std::getline(in, line)) {
      throw Error(errc::kParse, "HDG: expected " + std::to_string(m) + " edge lines, got " + std::to_string(i));
    }
    std::istringstream row(line);
    long long v = 0;
    long long prev = -1;
    while (row >> v) {
      if (v < 0 || v >= n) throw Error(errc::kParse, "HDG: vertex index out of range on edge line " + std::to_string(i));
      if (v <= prev) throw Error(errc::kParse, "HDG: vertex indices must be strictly ascending");
      h.set(static_cast<std::size_t>(i), static_cast<std::size_t>(v));
      prev = v;
    }
    if (!row.eof()) throw Error(errc::kParse, "HDG: malformed token on edge line " + std::to_string(i));
  }
  return h;
}

Hypergraph parse_hdg(const std::string& text) {
  std::istringstream is(text);
  return read_hdg(is);
}

Hypergraph load_hdg(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(errc::kIo, "cannot open " + path);
  return read_hdg(in);
}

void save_hdg(const std::string& path, const Hypergraph& h) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(errc::kIo, "cannot write " + path);
  write_hdg(out, h);
  if (!out) throw Error(errc::kIo, "write failed for " + path);
}

}  // namespace hyperdisc

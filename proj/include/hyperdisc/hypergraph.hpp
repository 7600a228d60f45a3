#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace hyperdisc {

inline constexpr std::size_t kWordBits = 64;

inline constexpr std::size_t words_for(std::size_t bits) {
  return (bits + kWordBits - 1) / kWordBits;
}

// Fixed-width packed bitset over vertex indices [0, size).
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t size, bool all = false);

  std::size_t size() const noexcept { return size_; }
  bool test(std::size_t i) const noexcept {
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
  }
  void set(std::size_t i) noexcept { words_[i / kWordBits] |= std::uint64_t{1} << (i % kWordBits); }
  void reset(std::size_t i) noexcept { words_[i / kWordBits] &= ~(std::uint64_t{1} << (i % kWordBits)); }
  std::size_t count() const noexcept;
  std::vector<std::size_t> indices() const;

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

// m x n incidence matrix, one packed row per edge. Bits past column n are
// always zero, so popcounts over whole words are exact.
class Hypergraph {
 public:
  Hypergraph() = default;
  Hypergraph(std::size_t n, std::size_t m);

  // Edges given as vertex lists; order within an edge is irrelevant,
  // repeated vertices within one edge are rejected.
  static Hypergraph from_edges(std::size_t n, const std::vector<std::vector<std::size_t>>& edges);

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return m_; }
  std::size_t words_per_row() const noexcept { return wpr_; }

  std::span<const std::uint64_t> row(std::size_t i) const noexcept {
    return {bits_.data() + i * wpr_, wpr_};
  }
  bool contains(std::size_t edge, std::size_t vertex) const noexcept {
    return (bits_[edge * wpr_ + vertex / kWordBits] >> (vertex % kWordBits)) & 1u;
  }
  void set(std::size_t edge, std::size_t vertex);

  std::size_t edge_size(std::size_t i) const noexcept;
  std::vector<std::size_t> edge_vertices(std::size_t i) const;
  std::size_t total_incidences() const noexcept;

  // Appends a copy of row `i` of `other` (same vertex count).
  void push_row(const Hypergraph& other, std::size_t i);

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::size_t wpr_ = 0;
  std::vector<std::uint64_t> bits_;
};

// vertex -> {-1, +1}
class Colouring {
 public:
  Colouring() = default;
  explicit Colouring(std::vector<int> values);
  static Colouring all_plus(std::size_t n) { return Colouring(std::vector<int>(n, 1)); }

  std::size_t size() const noexcept { return values_.size(); }
  int operator[](std::size_t i) const noexcept { return values_[i]; }
  const std::vector<int>& values() const noexcept { return values_; }
  void flip(std::size_t i) noexcept { values_[i] = -values_[i]; }
  Colouring negated() const;

  // Bit j set iff vertex j is coloured +1.
  VertexSet positive_mask() const;
  // "+-+-..." rendering used by the CLI.
  std::string to_string() const;

  friend bool operator==(const Colouring&, const Colouring&) = default;

 private:
  std::vector<int> values_;
};

// vertex -> [-1, 1]; entries are clamped after every arithmetic update.
class FractionalColouring {
 public:
  static constexpr double kRangeTolerance = 1e-9;

  FractionalColouring() = default;
  explicit FractionalColouring(std::vector<double> values);
  explicit FractionalColouring(const Colouring& c);
  static FractionalColouring zeros(std::size_t n) { return FractionalColouring(std::vector<double>(n, 0.0)); }

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  const std::vector<double>& values() const noexcept { return values_; }
  void set(std::size_t i, double v) noexcept;

 private:
  std::vector<double> values_;
};

double edge_sum(const Hypergraph& h, const FractionalColouring& psi, std::size_t i);
long edge_sum(const Hypergraph& h, const Colouring& psi, std::size_t i);

long colouring_discrepancy(const Hypergraph& h, const Colouring& psi);

std::vector<std::size_t> degree_profile(const Hypergraph& h);

struct Restriction {
  Hypergraph graph;
  std::vector<std::size_t> original;  // new vertex index -> old vertex index
};

Restriction restrict_to(const Hypergraph& h, const VertexSet& active);

Hypergraph remove_small_edges(const Hypergraph& h, double threshold);

bool has_odd_edge(const Hypergraph& h);

// HDG v1 text format: "n m" then one line per edge with ascending 0-based
// vertex indices separated by single spaces (empty line for an empty edge).
void write_hdg(std::ostream& out, const Hypergraph& h);
std::string to_hdg(const Hypergraph& h);
Hypergraph read_hdg(std::istream& in);
Hypergraph parse_hdg(const std::string& text);
Hypergraph load_hdg(const std::string& path);
void save_hdg(const std::string& path, const Hypergraph& h);

}  // namespace hyperdisc

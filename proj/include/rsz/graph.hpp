#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rsz {

using Vertex = std::uint32_t;

/// Largest vertex count a Graph may have. Bit rows cost n^2/8 bytes.
inline constexpr std::size_t kMaxVertices = 4096;

inline std::size_t words_for(std::size_t n) { return (n + 63) / 64; }

/// Membership mask over the vertices of a host graph.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::size_t universe_n) : n_(universe_n), bits_(words_for(universe_n), 0) {}
    VertexSet(std::size_t universe_n, std::span<const Vertex> members);
    VertexSet(std::size_t universe_n, std::initializer_list<Vertex> members)
        : VertexSet(universe_n, std::span<const Vertex>(members.begin(), members.size())) {}

    static VertexSet full(std::size_t universe_n);

    std::size_t universe() const noexcept { return n_; }
    std::size_t count() const noexcept;
    bool empty() const noexcept { return count() == 0; }

    bool contains(Vertex v) const { return v < n_ && ((bits_[v >> 6] >> (v & 63)) & 1u); }
    void insert(Vertex v);
    void erase(Vertex v);

    std::vector<Vertex> members() const;

    std::span<const std::uint64_t> words() const noexcept { return bits_; }
    std::span<std::uint64_t> words() noexcept { return bits_; }

    bool intersects(const VertexSet& other) const;
    VertexSet operator&(const VertexSet& other) const;
    VertexSet operator|(const VertexSet& other) const;
    VertexSet operator-(const VertexSet& other) const;

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// Immutable simple undirected graph stored as adjacency bit rows.
class Graph {
public:
    Graph() = default;

    /// Builds from an edge list; rejects loops, duplicates and out-of-range
    /// endpoints with ParameterError.
    Graph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges);

    std::size_t order() const noexcept { return n_; }
    std::uint64_t edge_count() const noexcept { return edge_count_; }

    bool adjacent(Vertex u, Vertex v) const {
        return (row(u)[v >> 6] >> (v & 63)) & 1u;
    }
    std::span<const std::uint64_t> row(Vertex v) const {
        return {rows_.data() + static_cast<std::size_t>(v) * words_, words_};
    }
    std::size_t words_per_row() const noexcept { return words_; }

    std::size_t degree(Vertex v) const;
    std::vector<std::pair<Vertex, Vertex>> edges() const;

    Graph complement() const;
    /// G[s] with vertices relabelled 0..|s|-1 in increasing id order.
    Graph induced(const VertexSet& s) const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    friend class GraphBuilder;
    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> rows_;
    std::uint64_t edge_count_ = 0;
};

/// Mutable staging area; produces an immutable Graph.
class GraphBuilder {
public:
    explicit GraphBuilder(std::size_t n);
    /// Adds edge uv; returns false if it was already present.
    bool add_edge(Vertex u, Vertex v);
    bool has_edge(Vertex u, Vertex v) const;
    std::size_t order() const noexcept { return g_.n_; }
    Graph build() &&;

private:
    Graph g_;
};

/// Non-negative integer vertex weights.
class WeightFn {
public:
    WeightFn() = default;
    explicit WeightFn(std::vector<std::int64_t> weights);
    static WeightFn zeros(std::size_t n) { return WeightFn(std::vector<std::int64_t>(n, 0)); }

    std::size_t size() const noexcept { return weights_.size(); }
    std::int64_t operator[](Vertex v) const { return weights_[v]; }
    bool is_injective() const noexcept { return injective_; }
    std::int64_t total() const noexcept { return total_; }
    std::span<const std::int64_t> values() const noexcept { return weights_; }

private:
    std::vector<std::int64_t> weights_;
    bool injective_ = true;
    std::int64_t total_ = 0;
};

struct WeightedGraph {
    WeightedGraph(Graph g, WeightFn w);
    explicit WeightedGraph(Graph g) : WeightedGraph(std::move(g), WeightFn{}) {}

    Graph graph;
    WeightFn omega;
};

// Elementary counts. All throw DimensionError on universe mismatch or an
// out-of-range vertex.
std::uint64_t induced_edge_count(const Graph& g, const VertexSet& s);
std::uint64_t degree_in(const Graph& g, Vertex v, const VertexSet& s);
std::uint64_t symdiff_degree(const Graph& g, Vertex u, Vertex v, const VertexSet& s);
std::int64_t omega_size(const WeightedGraph& wg, const VertexSet& s);
std::int64_t omega_degree_in(const WeightedGraph& wg, Vertex v, const VertexSet& s);

// Generators.
Graph gnp(std::size_t n, double p, std::uint64_t seed);
Graph paley(std::size_t q);
Graph complete_graph(std::size_t n);
Graph empty_graph(std::size_t n);
Graph cycle_graph(std::size_t n);

/// Edge-list text format: "n m" then m lines "u v", u < v, lexicographic.
Graph parse_graph(std::string_view text);
std::string serialize_graph(const Graph& g);

/// Brute-force isomorphism test for tiny graphs (n <= 10).
bool isomorphic_small(const Graph& a, const Graph& b);

} // namespace rsz

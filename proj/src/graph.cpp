#include "rsz/graph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "rsz/errors.hpp"
#include "rsz/rng.hpp"

namespace rsz {

namespace {

std::size_t popcount_and(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    std::size_t total = 0;
    for (std::size_t i = 0; i < a.size(); ++i) total += std::popcount(a[i] & b[i]);
    return total;
}

void check_universe(const Graph& g, const VertexSet& s) {
    if (s.universe() != g.order())
        throw DimensionError("vertex set universe " + std::to_string(s.universe()) +
                             " does not match graph order " + std::to_string(g.order()));
}

void check_vertex(const Graph& g, Vertex v) {
    if (v >= g.order())
        throw DimensionError("vertex " + std::to_string(v) + " out of range for order " +
                             std::to_string(g.order()));
}

} // namespace

// ---------------------------------------------------------------- VertexSet

VertexSet::VertexSet(std::size_t universe_n, std::span<const Vertex> members) : VertexSet(universe_n) {
    for (Vertex v : members) insert(v);
}

VertexSet VertexSet::full(std::size_t universe_n) {
    VertexSet s(universe_n);
    for (std::size_t w = 0; w < s.bits_.size(); ++w) s.bits_[w] = ~std::uint64_t{0};
    if (universe_n % 64 != 0 && !s.bits_.empty())
        s.bits_.back() = (std::uint64_t{1} << (universe_n % 64)) - 1;
    return s;
}

std::size_t VertexSet::count() const noexcept {
    std::size_t total = 0;
    for (auto w : bits_) total += std::popcount(w);
    return total;
}

void VertexSet::insert(Vertex v) {
    if (v >= n_) throw DimensionError("vertex " + std::to_string(v) + " outside universe " + std::to_string(n_));
    bits_[v >> 6] |= std::uint64_t{1} << (v & 63);
}

void VertexSet::erase(Vertex v) {
    if (v >= n_) throw DimensionError("vertex " + std::to_string(v) + " outside universe " + std::to_string(n_));
    bits_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
}

std::vector<Vertex> VertexSet::members() const {
    std::vector<Vertex> out;
    for (std::size_t w = 0; w < bits_.size(); ++w) {
        std::uint64_t word = bits_[w];
        while (word) {
            out.push_back(static_cast<Vertex>(w * 64 + std::countr_zero(word)));
            word &= word - 1;
        }
    }
    return out;
}

bool VertexSet::intersects(const VertexSet& other) const {
    if (other.n_ != n_) throw DimensionError("vertex set universes differ");
    for (std::size_t w = 0; w < bits_.size(); ++w)
        if (bits_[w] & other.bits_[w]) return true;
    return false;
}

VertexSet VertexSet::operator&(const VertexSet& other) const {
    if (other.n_ != n_) throw DimensionError("vertex set universes differ");
    VertexSet out(n_);
    for (std::size_t w = 0; w < bits_.size(); ++w) out.bits_[w] = bits_[w] & other.bits_[w];
    return out;
}

VertexSet VertexSet::operator|(const VertexSet& other) const {
    if (other.n_ != n_) throw DimensionError("vertex set universes differ");
    VertexSet out(n_);
    for (std::size_t w = 0; w < bits_.size(); ++w) out.bits_[w] = bits_[w] | other.bits_[w];
    return out;
}

VertexSet VertexSet::operator-(const VertexSet& other) const {
    if (other.n_ != n_) throw DimensionError("vertex set universes differ");
    VertexSet out(n_);
    for (std::size_t w = 0; w < bits_.size(); ++w) out.bits_[w] = bits_[w] & ~other.bits_[w];
    return out;
}

// -------------------------------------------------------------------- Graph

GraphBuilder::GraphBuilder(std::size_t n) {
    if (n > kMaxVertices)
        throw ParameterError("graph order " + std::to_string(n) + " exceeds cap " + std::to_string(kMaxVertices));
    g_.n_ = n;
    g_.words_ = words_for(n);
    g_.rows_.assign(n * g_.words_, 0);
}

bool GraphBuilder::has_edge(Vertex u, Vertex v) const {
    return u < g_.n_ && v < g_.n_ && g_.adjacent(u, v);
}

bool GraphBuilder::add_edge(Vertex u, Vertex v) {
    if (u >= g_.n_ || v >= g_.n_)
        throw DimensionError("edge endpoint out of range for order " + std::to_string(g_.n_));
    if (u == v) throw ParameterError("loop at vertex " + std::to_string(u));
    if (g_.adjacent(u, v)) return false;
    g_.rows_[u * g_.words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
    g_.rows_[v * g_.words_ + (u >> 6)] |= std::uint64_t{1} << (u & 63);
    ++g_.edge_count_;
    return true;
}

Graph GraphBuilder::build() && { return std::move(g_); }

Graph::Graph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges) {
    GraphBuilder b(n);
    for (auto [u, v] : edges)
        if (!b.add_edge(u, v))
            throw ParameterError("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    *this = std::move(b).build();
}

std::size_t Graph::degree(Vertex v) const {
    std::size_t d = 0;
    for (auto w : row(v)) d += std::popcount(w);
    return d;
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < n_; ++u) {
        auto r = row(u);
        for (std::size_t w = (u + 1) >> 6; w < words_; ++w) {
            std::uint64_t word = r[w];
            if (w == ((u + 1) >> 6)) word &= ~std::uint64_t{0} << ((u + 1) & 63);
            while (word) {
                out.emplace_back(u, static_cast<Vertex>(w * 64 + std::countr_zero(word)));
                word &= word - 1;
            }
        }
    }
    return out;
}

Graph Graph::complement() const {
    GraphBuilder b(n_);
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v = u + 1; v < n_; ++v)
            if (!adjacent(u, v)) b.add_edge(u, v);
    return std::move(b).build();
}

Graph Graph::induced(const VertexSet& s) const {
    check_universe(*this, s);
    const auto ids = s.members();
    GraphBuilder b(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j)
            if (adjacent(ids[i], ids[j])) b.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
    return std::move(b).build();
}

// ------------------------------------------------------------ WeightedGraph

WeightFn::WeightFn(std::vector<std::int64_t> weights) : weights_(std::move(weights)) {
    for (auto w : weights_) {
        if (w < 0) throw ParameterError("vertex weights must be non-negative");
        total_ += w;
    }
    auto sorted = weights_;
    std::sort(sorted.begin(), sorted.end());
    injective_ = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

WeightedGraph::WeightedGraph(Graph g, WeightFn w) : graph(std::move(g)), omega(std::move(w)) {
    if (omega.size() == 0 && graph.order() != 0) omega = WeightFn::zeros(graph.order());
    if (omega.size() != graph.order())
        throw DimensionError("weight function length " + std::to_string(omega.size()) +
                             " does not match graph order " + std::to_string(graph.order()));
}

// ------------------------------------------------------------------- counts

std::uint64_t induced_edge_count(const Graph& g, const VertexSet& s) {
    check_universe(g, s);
    std::uint64_t twice = 0;
    for (Vertex v : s.members()) twice += popcount_and(g.row(v), s.words());
    return twice / 2;
}

std::uint64_t degree_in(const Graph& g, Vertex v, const VertexSet& s) {
    check_vertex(g, v);
    check_universe(g, s);
    return popcount_and(g.row(v), s.words());
}

std::uint64_t symdiff_degree(const Graph& g, Vertex u, Vertex v, const VertexSet& s) {
    check_vertex(g, u);
    check_vertex(g, v);
    check_universe(g, s);
    auto ru = g.row(u), rv = g.row(v);
    auto sw = s.words();
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < ru.size(); ++i) total += std::popcount((ru[i] ^ rv[i]) & sw[i]);
    return total;
}

std::int64_t omega_size(const WeightedGraph& wg, const VertexSet& s) {
    auto total = static_cast<std::int64_t>(induced_edge_count(wg.graph, s));
    for (Vertex v : s.members()) total += wg.omega[v];
    return total;
}

std::int64_t omega_degree_in(const WeightedGraph& wg, Vertex v, const VertexSet& s) {
    return static_cast<std::int64_t>(degree_in(wg.graph, v, s)) + wg.omega[v];
}

// --------------------------------------------------------------- generators

Graph gnp(std::size_t n, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("gnp: p must lie in [0, 1]");
    GraphBuilder b(n);
    Rng rng(seed);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (rng.uniform01() < p) b.add_edge(u, v);
    return std::move(b).build();
}

Graph paley(std::size_t q) {
    auto is_prime = [](std::size_t x) {
        if (x < 2) return false;
        for (std::size_t d = 2; d * d <= x; ++d)
            if (x % d == 0) return false;
        return true;
    };
    if (!is_prime(q) || q % 4 != 1) throw ParameterError("paley: q must be a prime congruent to 1 mod 4");
    std::vector<bool> residue(q, false);
    for (std::size_t x = 1; x < q; ++x) residue[(x * x) % q] = true;
    GraphBuilder b(q);
    for (Vertex u = 0; u < q; ++u)
        for (Vertex v = u + 1; v < q; ++v)
            if (residue[(v - u) % q]) b.add_edge(u, v);
    return std::move(b).build();
}

Graph complete_graph(std::size_t n) {
    GraphBuilder b(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) b.add_edge(u, v);
    return std::move(b).build();
}

Graph empty_graph(std::size_t n) { return std::move(GraphBuilder(n)).build(); }

Graph cycle_graph(std::size_t n) {
    if (n < 3) throw ParameterError("cycle: n must be at least 3");
    GraphBuilder b(n);
    for (Vertex u = 0; u < n; ++u) b.add_edge(u, static_cast<Vertex>((u + 1) % n));
    return std::move(b).build();
}

// ------------------------------------------------------------------- format

namespace {

bool parse_uint_fields(std::string_view line, std::uint64_t& a, std::uint64_t& b) {
    auto sp = line.find(' ');
    if (sp == std::string_view::npos || sp == 0) return false;
    auto first = line.substr(0, sp), second = line.substr(sp + 1);
    if (second.empty()) return false;
    auto r1 = std::from_chars(first.data(), first.data() + first.size(), a);
    auto r2 = std::from_chars(second.data(), second.data() + second.size(), b);
    return r1.ec == std::errc{} && r1.ptr == first.data() + first.size() && r2.ec == std::errc{} &&
           r2.ptr == second.data() + second.size();
}

} // namespace

Graph parse_graph(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    if (lines.empty()) throw ParseError(1, "missing header \"n m\"");

    std::uint64_t n = 0, m = 0;
    if (!parse_uint_fields(lines[0], n, m)) throw ParseError(1, "malformed header, expected \"n m\"");
    if (n > kMaxVertices) throw ParseError(1, "order exceeds cap " + std::to_string(kMaxVertices));
    if (lines.size() < m + 1)
        throw ParseError(lines.size() + 1, "missing edge line (header declares " + std::to_string(m) + " edges)");
    if (lines.size() > m + 1) throw ParseError(m + 2, "unexpected line after the declared edges");

    GraphBuilder b(n);
    std::uint64_t prev_u = 0, prev_v = 0;
    for (std::size_t i = 1; i <= m; ++i) {
        std::uint64_t u = 0, v = 0;
        if (!parse_uint_fields(lines[i], u, v)) throw ParseError(i + 1, "malformed edge line");
        if (u == v) throw ParseError(i + 1, "loop at vertex " + std::to_string(u));
        if (u >= n || v >= n) throw ParseError(i + 1, "endpoint out of range");
        if (b.has_edge(static_cast<Vertex>(u), static_cast<Vertex>(v))) throw ParseError(i + 1, "duplicate edge");
        if (u > v) throw ParseError(i + 1, "malformed edge line, expected u < v");
        if (i > 1 && std::pair(u, v) <= std::pair(prev_u, prev_v))
            throw ParseError(i + 1, "edges not in increasing lexicographic order");
        b.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
        prev_u = u;
        prev_v = v;
    }
    return std::move(b).build();
}

std::string serialize_graph(const Graph& g) {
    std::ostringstream out;
    out << g.order() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
    return out.str();
}

bool isomorphic_small(const Graph& a, const Graph& b) {
    if (a.order() != b.order() || a.edge_count() != b.edge_count()) return false;
    if (a.order() > 10) throw ParameterError("isomorphic_small supports n <= 10");
    std::vector<Vertex> perm(a.order());
    std::iota(perm.begin(), perm.end(), 0u);
    do {
        bool ok = true;
        for (Vertex u = 0; u < a.order() && ok; ++u)
            for (Vertex v = u + 1; v < a.order() && ok; ++v)
                ok = a.adjacent(u, v) == b.adjacent(perm[u], perm[v]);
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

} // namespace rsz

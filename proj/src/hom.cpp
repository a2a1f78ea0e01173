#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "rsz/analysis.hpp"

namespace rsz {

namespace {

using Words = std::vector<std::uint64_t>;

struct BudgetExceeded {};

// Smallest-last (degeneracy) order, reversed so the densest core comes first.
std::vector<Vertex> degeneracy_order(const Graph& g) {
    const std::size_t n = g.order();
    std::vector<std::size_t> deg(n);
    for (Vertex v = 0; v < n; ++v) deg[v] = g.degree(v);
    std::vector<bool> removed(n, false);
    std::vector<Vertex> order;
    order.reserve(n);
    for (std::size_t step = 0; step < n; ++step) {
        Vertex best = 0;
        std::size_t best_deg = SIZE_MAX;
        for (Vertex v = 0; v < n; ++v)
            if (!removed[v] && deg[v] < best_deg) {
                best = v;
                best_deg = deg[v];
            }
        removed[best] = true;
        order.push_back(best);
        for (Vertex u = 0; u < n; ++u)
            if (!removed[u] && g.adjacent(best, u)) --deg[u];
    }
    std::reverse(order.begin(), order.end());
    return order;
}

class CliqueSolver {
public:
    CliqueSolver(const Graph& g, std::uint64_t cap) : cap_(cap) {
        n_ = g.order();
        words_ = words_for(n_);
        order_ = degeneracy_order(g);
        std::vector<std::size_t> pos(n_);
        for (std::size_t i = 0; i < n_; ++i) pos[order_[i]] = i;
        adj_.assign(n_ * words_, 0);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (i != j && g.adjacent(order_[i], order_[j])) adj_[i * words_ + (j >> 6)] |= 1ULL << (j & 63);
    }

    void run() {
        if (n_ == 0) return;
        Words p(words_, 0);
        for (std::size_t i = 0; i < n_; ++i) p[i >> 6] |= 1ULL << (i & 63);
        best_.assign(1, 0);
        expand(p);
    }

    std::vector<Vertex> best_original() const {
        std::vector<Vertex> out;
        for (auto i : best_) out.push_back(order_[i]);
        std::sort(out.begin(), out.end());
        return out;
    }
    std::uint64_t nodes() const { return nodes_; }

private:
    const std::uint64_t* nbr(std::size_t v) const { return adj_.data() + v * words_; }

    static bool any(const Words& w) {
        return std::any_of(w.begin(), w.end(), [](std::uint64_t x) { return x != 0; });
    }

    void color(const Words& p, std::vector<std::size_t>& verts, std::vector<std::size_t>& colors) {
        Words uncolored = p;
        const long kmin_raw = static_cast<long>(best_.size()) - static_cast<long>(current_.size()) + 1;
        const std::size_t kmin = kmin_raw < 1 ? 1 : static_cast<std::size_t>(kmin_raw);
        std::size_t k = 0;
        Words q(words_);
        while (any(uncolored)) {
            ++k;
            q = uncolored;
            for (std::size_t w = 0; w < words_; ++w) {
                while (q[w]) {
                    const std::size_t v = w * 64 + std::countr_zero(q[w]);
                    uncolored[w] &= ~(1ULL << (v & 63));
                    q[w] &= ~(1ULL << (v & 63));
                    const auto* nv = nbr(v);
                    for (std::size_t x = w; x < words_; ++x) q[x] &= ~nv[x];
                    if (k >= kmin) {
                        verts.push_back(v);
                        colors.push_back(k);
                    }
                }
            }
        }
    }

    void expand(Words& p) {
        std::vector<std::size_t> verts, colors;
        color(p, verts, colors);
        for (std::size_t idx = verts.size(); idx-- > 0;) {
            if (current_.size() + colors[idx] <= best_.size()) return;
            if (++nodes_ > cap_) throw BudgetExceeded{};
            const std::size_t v = verts[idx];
            current_.push_back(v);
            Words next(words_);
            const auto* nv = nbr(v);
            for (std::size_t w = 0; w < words_; ++w) next[w] = p[w] & nv[w];
            if (!any(next)) {
                if (current_.size() > best_.size()) best_ = current_;
            } else {
                expand(next);
            }
            current_.pop_back();
            p[v >> 6] &= ~(1ULL << (v & 63));
        }
    }

    std::size_t n_ = 0, words_ = 0;
    std::uint64_t cap_;
    std::uint64_t nodes_ = 0;
    std::vector<Vertex> order_;
    Words adj_;
    std::vector<std::size_t> current_, best_;

public:
    std::size_t best_size() const { return best_.size(); }
};

bool is_clique(const Graph& g, const std::vector<Vertex>& vs) {
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (!g.adjacent(vs[i], vs[j])) return false;
    return true;
}

bool is_independent(const Graph& g, const std::vector<Vertex>& vs) {
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (g.adjacent(vs[i], vs[j])) return false;
    return true;
}

} // namespace

CliqueSearch max_clique(const Graph& g, std::uint64_t node_cap) {
    CliqueSolver solver(g, node_cap);
    try {
        solver.run();
    } catch (const BudgetExceeded&) {
        throw HomBudgetError(solver.best_size(), 0);
    }
    return {solver.best_original(), solver.nodes()};
}

HomResult hom(const Graph& g, std::uint64_t node_cap) {
    const std::size_t n = g.order();
    if (n == 0) throw ParameterError("hom: graph must have at least one vertex");

    CliqueSolver clique_solver(g, node_cap);
    CliqueSolver indep_solver(g.complement(), node_cap);
    bool clique_done = false;
    try {
        clique_solver.run();
        clique_done = true;
        indep_solver.run();
    } catch (const BudgetExceeded&) {
        throw HomBudgetError(clique_solver.best_size(), clique_done ? indep_solver.best_size() : 0);
    }

    HomResult r;
    const auto clique = clique_solver.best_original();
    const auto indep = indep_solver.best_original();
    r.clique_size = clique.size();
    r.indep_size = indep.size();
    r.hom = std::max(r.clique_size, r.indep_size);
    r.witness_clique = VertexSet(n, clique);
    r.witness_indep = VertexSet(n, indep);
    r.search_nodes = clique_solver.nodes() + indep_solver.nodes();

    if (!is_clique(g, clique)) throw IntegrityError("hom: clique witness is not a clique");
    if (!is_independent(g, indep)) throw IntegrityError("hom: independent witness has an edge");
    if (static_cast<double>(r.hom) < std::log2(static_cast<double>(n)) / 2.0)
        throw IntegrityError("hom: result violates the log2(n)/2 lower bound");
    return r;
}

bool is_c_ramsey(const HomResult& h, std::size_t n, double C) {
    if (n < 2) throw ParameterError("is_c_ramsey: n must be at least 2");
    if (!(C > 0)) throw ParameterError("is_c_ramsey: C must be positive");
    return static_cast<double>(h.hom) <= C * std::log2(static_cast<double>(n));
}

bool is_c_ramsey(const Graph& g, double C, std::uint64_t node_cap) {
    if (g.order() < 2) throw ParameterError("is_c_ramsey: n must be at least 2");
    return is_c_ramsey(hom(g, node_cap), g.order(), C);
}

double edge_density(const Graph& g) {
    const std::size_t n = g.order();
    if (n < 2) throw ParameterError("edge_density: n must be at least 2");
    return static_cast<double>(g.edge_count()) / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

} // namespace rsz

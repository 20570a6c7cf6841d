#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace circlerep {

// Simple graph with optional loops, at most 16 vertices.  Vertices are kept
// in sorted label order, which fixes the iteration order of every operation.
class LoopedGraph {
public:
    LoopedGraph() = default;

    explicit LoopedGraph(std::vector<std::string> labels) {
        std::sort(labels.begin(), labels.end());
        if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
            throw std::invalid_argument("duplicate vertex label");
        if (labels.size() > 16) throw std::out_of_range("vertex count exceeds 16");
        labels_ = std::move(labels);
        adj_.assign(labels_.size(), 0);
    }

    std::size_t vertex_count() const { return labels_.size(); }
    const std::vector<std::string>& vertex_labels() const { return labels_; }
    bool has_vertex(const std::string& v) const {
        return std::binary_search(labels_.begin(), labels_.end(), v);
    }

    std::size_t index_of(const std::string& v) const {
        auto it = std::lower_bound(labels_.begin(), labels_.end(), v);
        if (it == labels_.end() || *it != v) throw std::out_of_range("no such vertex: " + v);
        return static_cast<std::size_t>(it - labels_.begin());
    }

    void add_edge(const std::string& a, const std::string& b) {
        std::size_t i = index_of(a), j = index_of(b);
        if (i == j) throw std::invalid_argument("self-edge; use set_loop");
        adj_[i] |= 1u << j;
        adj_[j] |= 1u << i;
    }

    void remove_edge(const std::string& a, const std::string& b) {
        std::size_t i = index_of(a), j = index_of(b);
        adj_[i] &= ~(1u << j);
        adj_[j] &= ~(1u << i);
    }

    void set_loop(const std::string& a, bool on = true) {
        std::size_t i = index_of(a);
        if (on) loops_ |= 1u << i;
        else loops_ &= ~(1u << i);
    }

    bool has_edge(const std::string& a, const std::string& b) const {
        return adj_[index_of(a)] >> index_of(b) & 1;
    }
    bool has_loop(const std::string& a) const { return loops_ >> index_of(a) & 1; }

    bool edge_at(std::size_t i, std::size_t j) const { return adj_[i] >> j & 1; }
    bool loop_at(std::size_t i) const { return loops_ >> i & 1; }
    std::uint32_t adjacency_row(std::size_t i) const { return adj_[i]; }

    std::vector<std::string> neighbors(const std::string& a) const {
        std::vector<std::string> out;
        std::uint32_t row = adj_[index_of(a)];
        for (std::size_t j = 0; j < labels_.size(); ++j)
            if (row >> j & 1) out.push_back(labels_[j]);
        return out;
    }

    std::size_t degree(const std::string& a) const {
        return static_cast<std::size_t>(__builtin_popcount(adj_[index_of(a)]));
    }

    std::size_t edge_count() const {
        std::size_t total = 0;
        for (auto row : adj_) total += __builtin_popcount(row);
        return total / 2;
    }

    std::size_t loop_count() const { return static_cast<std::size_t>(__builtin_popcount(loops_)); }

    std::vector<std::pair<std::string, std::string>> edges() const {
        std::vector<std::pair<std::string, std::string>> out;
        for (std::size_t i = 0; i < labels_.size(); ++i)
            for (std::size_t j = i + 1; j < labels_.size(); ++j)
                if (edge_at(i, j)) out.emplace_back(labels_[i], labels_[j]);
        return out;
    }

    LoopedGraph loop_complement(const std::string& v) const {
        LoopedGraph g = *this;
        g.loops_ ^= 1u << index_of(v);
        return g;
    }

    // Toggles every pair of neighbours of v; in nonsimple mode also toggles
    // the neighbours' loops.
    LoopedGraph local_complement(const std::string& v, bool nonsimple = false) const {
        LoopedGraph g = *this;
        std::size_t vi = index_of(v);
        std::uint32_t nb = adj_[vi];
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (!(nb >> i & 1)) continue;
            g.adj_[i] ^= nb & ~(1u << i);
        }
        if (nonsimple) g.loops_ ^= nb;
        return g;
    }

    LoopedGraph delete_vertices(const std::set<std::string>& victims) const {
        std::vector<std::string> keep;
        for (const auto& l : labels_)
            if (!victims.count(l)) keep.push_back(l);
        for (const auto& v : victims) index_of(v); // validate
        LoopedGraph g(keep);
        for (std::size_t i = 0; i < keep.size(); ++i) {
            std::size_t oi = index_of(keep[i]);
            if (loop_at(oi)) g.loops_ |= 1u << i;
            for (std::size_t j = i + 1; j < keep.size(); ++j)
                if (edge_at(oi, index_of(keep[j]))) {
                    g.adj_[i] |= 1u << j;
                    g.adj_[j] |= 1u << i;
                }
        }
        return g;
    }

    LoopedGraph induced(const std::vector<std::string>& keep) const {
        std::set<std::string> victims(labels_.begin(), labels_.end());
        for (const auto& k : keep) {
            index_of(k);
            victims.erase(k);
        }
        return delete_vertices(victims);
    }

    bool operator==(const LoopedGraph& o) const {
        return labels_ == o.labels_ && adj_ == o.adj_ && loops_ == o.loops_;
    }
    bool operator!=(const LoopedGraph& o) const { return !(*this == o); }

private:
    std::vector<std::string> labels_;
    std::vector<std::uint32_t> adj_;
    std::uint32_t loops_ = 0;
};

// W5/W7: wheels with hub "1"; BW3: the three-spoke wheel with every rim edge
// subdivided once; also C<n>, K<n>, path<n>.
inline LoopedGraph named_graph(const std::string& name) {
    auto wheel = [](std::size_t rim) {
        std::vector<std::string> labels;
        for (std::size_t i = 1; i <= rim + 1; ++i) labels.push_back(std::to_string(i));
        LoopedGraph g(labels);
        for (std::size_t i = 2; i <= rim + 1; ++i) {
            g.add_edge("1", std::to_string(i));
            g.add_edge(std::to_string(i), std::to_string(i == rim + 1 ? 2 : i + 1));
        }
        return g;
    };
    if (name == "W5") return wheel(5);
    if (name == "W7") return wheel(7);
    if (name == "BW3") {
        LoopedGraph g(std::vector<std::string>{"h", "s1", "s2", "s3", "r1", "r2", "r3"});
        for (int i = 1; i <= 3; ++i) {
            g.add_edge("h", "s" + std::to_string(i));
            g.add_edge("s" + std::to_string(i), "r" + std::to_string(i));
            g.add_edge("r" + std::to_string(i), "s" + std::to_string(i % 3 + 1));
        }
        return g;
    }
    auto numbered = [](std::size_t n) {
        std::vector<std::string> labels;
        for (std::size_t i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
        return LoopedGraph(labels);
    };
    auto tail_number = [&](std::size_t skip) -> std::size_t {
        std::size_t n = std::stoul(name.substr(skip));
        if (n < 1 || n > 16) throw std::invalid_argument("bad graph size in name: " + name);
        return n;
    };
    try {
        if (name.size() > 1 && name[0] == 'C') {
            std::size_t n = tail_number(1);
            if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
            LoopedGraph g = numbered(n);
            for (std::size_t i = 1; i <= n; ++i)
                g.add_edge(std::to_string(i), std::to_string(i == n ? 1 : i + 1));
            return g;
        }
        if (name.size() > 1 && name[0] == 'K') {
            std::size_t n = tail_number(1);
            LoopedGraph g = numbered(n);
            for (std::size_t i = 1; i <= n; ++i)
                for (std::size_t j = i + 1; j <= n; ++j) g.add_edge(std::to_string(i), std::to_string(j));
            return g;
        }
        if (name.size() > 4 && name.compare(0, 4, "path") == 0) {
            std::size_t n = tail_number(4);
            LoopedGraph g = numbered(n);
            for (std::size_t i = 1; i < n; ++i) g.add_edge(std::to_string(i), std::to_string(i + 1));
            return g;
        }
    } catch (const std::logic_error&) {
        throw std::invalid_argument("unknown named graph: " + name);
    }
    throw std::invalid_argument("unknown named graph: " + name);
}

} // namespace circlerep

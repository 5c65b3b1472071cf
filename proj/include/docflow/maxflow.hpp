#pragma once

#include <cstdint>
#include <vector>

namespace docflow {

/// Max-flow / min-cut on a directed graph with terminal links, solved with
/// Boykov-Kolmogorov style search trees and augmenting paths. Capacities are
/// doubles; terminal capacities accumulate across add_tweights calls.
class MaxFlow {
public:
    MaxFlow(int node_count, int arc_count_hint = 0);

    int node_count() const { return static_cast<int>(nodes_.size()); }

    /// cap_source: capacity source -> node; cap_sink: node -> sink.
    void add_tweights(int node, double cap_source, double cap_sink);

    /// Arc pair node i -> j with cap and j -> i with rev_cap.
    void add_edge(int i, int j, double cap, double rev_cap);

    double solve();

    /// After solve: true when the node sits on the source side of the cut.
    /// Nodes reached by neither tree default to the sink side.
    bool in_source_side(int node) const { return nodes_[node].tree == Tree::Source; }

private:
    enum class Tree : std::uint8_t { Free, Source, Sink };
    static constexpr int kNoArc = -1;
    static constexpr int kTerminal = -2;
    static constexpr int kOrphan = -3;

    struct Node {
        int first_arc = kNoArc;
        int parent = kNoArc;  // arc from this node to its parent, or kTerminal/kOrphan
        int ts = 0;
        int dist = 0;
        double tr_cap = 0;  // >0: residual from source, <0: residual to sink
        Tree tree = Tree::Free;
        bool active = false;
    };
    struct Arc {
        int head;
        int next;
        double r_cap;
    };

    void activate(int i);
    int grow(int& active_node);
    void augment(int connecting_arc);
    void adopt();
    void process_orphan(int i);

    std::vector<Node> nodes_;
    std::vector<Arc> arcs_;
    std::vector<int> active_;
    std::vector<int> orphans_;
    std::size_t active_head_ = 0;
    std::size_t orphan_head_ = 0;
    int time_ = 0;
    double flow_ = 0;
};

}  // namespace docflow

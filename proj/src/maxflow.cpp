#include "docflow/maxflow.hpp"

#include <limits>
#include <stdexcept>

namespace docflow {

namespace {
constexpr int kInfDist = std::numeric_limits<int>::max();
}

MaxFlow::MaxFlow(int node_count, int arc_count_hint) {
    nodes_.resize(static_cast<std::size_t>(node_count));
    if (arc_count_hint > 0) arcs_.reserve(static_cast<std::size_t>(arc_count_hint) * 2);
}

void MaxFlow::add_tweights(int node, double cap_source, double cap_sink) {
    nodes_[static_cast<std::size_t>(node)].tr_cap += cap_source - cap_sink;
}

void MaxFlow::add_edge(int i, int j, double cap, double rev_cap) {
    const int a = static_cast<int>(arcs_.size());
    arcs_.push_back(Arc{j, nodes_[static_cast<std::size_t>(i)].first_arc, cap});
    nodes_[static_cast<std::size_t>(i)].first_arc = a;
    arcs_.push_back(Arc{i, nodes_[static_cast<std::size_t>(j)].first_arc, rev_cap});
    nodes_[static_cast<std::size_t>(j)].first_arc = a + 1;
}

void MaxFlow::activate(int i) {
    Node& n = nodes_[static_cast<std::size_t>(i)];
    if (!n.active) {
        n.active = true;
        active_.push_back(i);
    }
}

double MaxFlow::solve() {
    active_.clear();
    active_head_ = 0;
    orphans_.clear();
    orphan_head_ = 0;
    time_ = 0;
    flow_ = 0;

    for (int i = 0; i < node_count(); ++i) {
        Node& n = nodes_[static_cast<std::size_t>(i)];
        n.ts = 0;
        if (n.tr_cap > 0) {
            n.tree = Tree::Source;
            n.parent = kTerminal;
            n.dist = 1;
            activate(i);
        } else if (n.tr_cap < 0) {
            n.tree = Tree::Sink;
            n.parent = kTerminal;
            n.dist = 1;
            activate(i);
        } else {
            n.tree = Tree::Free;
            n.parent = kNoArc;
        }
    }

    int current = -1;
    while (true) {
        if (current < 0) {
            if (active_head_ > (1u << 20) && active_head_ * 2 > active_.size()) {
                active_.erase(active_.begin(),
                              active_.begin() + static_cast<std::ptrdiff_t>(active_head_));
                active_head_ = 0;
            }
            while (active_head_ < active_.size()) {
                const int cand = active_[active_head_++];
                Node& n = nodes_[static_cast<std::size_t>(cand)];
                n.active = false;
                if (n.tree != Tree::Free) {
                    current = cand;
                    break;
                }
            }
            if (current < 0) break;
        }
        const int connect = grow(current);
        ++time_;
        if (connect == kNoArc) {
            current = -1;
            continue;
        }
        augment(connect);
        adopt();
        if (nodes_[static_cast<std::size_t>(current)].tree == Tree::Free) current = -1;
    }
    return flow_;
}

int MaxFlow::grow(int& active_node) {
    Node& n = nodes_[static_cast<std::size_t>(active_node)];
    const bool src = n.tree == Tree::Source;
    for (int a = n.first_arc; a != kNoArc; a = arcs_[static_cast<std::size_t>(a)].next) {
        const double cap = src ? arcs_[static_cast<std::size_t>(a)].r_cap
                               : arcs_[static_cast<std::size_t>(a ^ 1)].r_cap;
        if (cap <= 0) continue;
        const int j = arcs_[static_cast<std::size_t>(a)].head;
        Node& nj = nodes_[static_cast<std::size_t>(j)];
        if (nj.tree == Tree::Free) {
            nj.tree = n.tree;
            nj.parent = a ^ 1;
            nj.ts = n.ts;
            nj.dist = n.dist + 1;
            activate(j);
        } else if (nj.tree != n.tree) {
            return src ? a : (a ^ 1);
        } else if (nj.ts <= n.ts && nj.dist > n.dist) {
            // heuristic: shorter path to the terminal through the current node
            nj.parent = a ^ 1;
            nj.ts = n.ts;
            nj.dist = n.dist + 1;
        }
    }
    return kNoArc;
}

void MaxFlow::augment(int connecting_arc) {
    Arc& mid = arcs_[static_cast<std::size_t>(connecting_arc)];
    const int u = arcs_[static_cast<std::size_t>(connecting_arc ^ 1)].head;
    const int v = mid.head;

    double delta = mid.r_cap;
    for (int x = u;;) {
        const int a = nodes_[static_cast<std::size_t>(x)].parent;
        if (a == kTerminal) {
            delta = std::min(delta, nodes_[static_cast<std::size_t>(x)].tr_cap);
            break;
        }
        delta = std::min(delta, arcs_[static_cast<std::size_t>(a ^ 1)].r_cap);
        x = arcs_[static_cast<std::size_t>(a)].head;
    }
    for (int x = v;;) {
        const int a = nodes_[static_cast<std::size_t>(x)].parent;
        if (a == kTerminal) {
            delta = std::min(delta, -nodes_[static_cast<std::size_t>(x)].tr_cap);
            break;
        }
        delta = std::min(delta, arcs_[static_cast<std::size_t>(a)].r_cap);
        x = arcs_[static_cast<std::size_t>(a)].head;
    }

    mid.r_cap -= delta;
    arcs_[static_cast<std::size_t>(connecting_arc ^ 1)].r_cap += delta;

    for (int x = u;;) {
        Node& nx = nodes_[static_cast<std::size_t>(x)];
        const int a = nx.parent;
        if (a == kTerminal) {
            nx.tr_cap -= delta;
            if (nx.tr_cap <= 0) {
                nx.parent = kOrphan;
                orphans_.push_back(x);
            }
            break;
        }
        arcs_[static_cast<std::size_t>(a)].r_cap += delta;
        arcs_[static_cast<std::size_t>(a ^ 1)].r_cap -= delta;
        if (arcs_[static_cast<std::size_t>(a ^ 1)].r_cap <= 0) {
            nx.parent = kOrphan;
            orphans_.push_back(x);
        }
        x = arcs_[static_cast<std::size_t>(a)].head;
    }
    for (int x = v;;) {
        Node& nx = nodes_[static_cast<std::size_t>(x)];
        const int a = nx.parent;
        if (a == kTerminal) {
            nx.tr_cap += delta;
            if (nx.tr_cap >= 0) {
                nx.parent = kOrphan;
                orphans_.push_back(x);
            }
            break;
        }
        arcs_[static_cast<std::size_t>(a ^ 1)].r_cap += delta;
        arcs_[static_cast<std::size_t>(a)].r_cap -= delta;
        if (arcs_[static_cast<std::size_t>(a)].r_cap <= 0) {
            nx.parent = kOrphan;
            orphans_.push_back(x);
        }
        x = arcs_[static_cast<std::size_t>(a)].head;
    }
    flow_ += delta;
}

void MaxFlow::adopt() {
    while (orphan_head_ < orphans_.size()) {
        const int x = orphans_[orphan_head_++];
        if (nodes_[static_cast<std::size_t>(x)].parent == kOrphan) process_orphan(x);
    }
    orphans_.clear();
    orphan_head_ = 0;
}

void MaxFlow::process_orphan(int x) {
    Node& nx = nodes_[static_cast<std::size_t>(x)];
    const bool src = nx.tree == Tree::Source;
    int best_arc = kNoArc;
    int d_min = kInfDist;

    for (int a0 = nx.first_arc; a0 != kNoArc; a0 = arcs_[static_cast<std::size_t>(a0)].next) {
        const double cap = src ? arcs_[static_cast<std::size_t>(a0 ^ 1)].r_cap
                               : arcs_[static_cast<std::size_t>(a0)].r_cap;
        if (cap <= 0) continue;
        int j = arcs_[static_cast<std::size_t>(a0)].head;
        if (nodes_[static_cast<std::size_t>(j)].tree != nx.tree) continue;

        // walk to the terminal to verify the candidate's origin
        int d = 0;
        int k = j;
        while (true) {
            Node& nk = nodes_[static_cast<std::size_t>(k)];
            if (nk.ts == time_) {
                d += nk.dist;
                break;
            }
            const int a = nk.parent;
            ++d;
            if (a == kTerminal) {
                nk.ts = time_;
                nk.dist = 1;
                break;
            }
            if (a == kOrphan || a == kNoArc) {
                d = kInfDist;
                break;
            }
            k = arcs_[static_cast<std::size_t>(a)].head;
        }
        if (d == kInfDist) continue;
        if (d < d_min) {
            best_arc = a0;
            d_min = d;
        }
        // cache distances along the verified path
        for (k = j; nodes_[static_cast<std::size_t>(k)].ts != time_;
             k = arcs_[static_cast<std::size_t>(nodes_[static_cast<std::size_t>(k)].parent)].head) {
            nodes_[static_cast<std::size_t>(k)].ts = time_;
            nodes_[static_cast<std::size_t>(k)].dist = d--;
        }
    }

    if (best_arc != kNoArc) {
        nx.parent = best_arc;
        nx.ts = time_;
        nx.dist = d_min + 1;
        return;
    }

    // no parent found: the node leaves its tree
    for (int a0 = nx.first_arc; a0 != kNoArc; a0 = arcs_[static_cast<std::size_t>(a0)].next) {
        const int j = arcs_[static_cast<std::size_t>(a0)].head;
        Node& nj = nodes_[static_cast<std::size_t>(j)];
        if (nj.tree != nx.tree) continue;
        const double cap = src ? arcs_[static_cast<std::size_t>(a0 ^ 1)].r_cap
                               : arcs_[static_cast<std::size_t>(a0)].r_cap;
        if (cap > 0) activate(j);
        const int pj = nj.parent;
        if (pj >= 0 && arcs_[static_cast<std::size_t>(pj)].head == x) {
            nj.parent = kOrphan;
            orphans_.push_back(j);
        }
    }
    nx.tree = Tree::Free;
    nx.parent = kNoArc;
}

}  // namespace docflow

#include "robinson/twosat.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace robinson {

void TwoSatInstance::add_equal(int a, int b) {
  add_clause({a, true}, {b, false});
  add_clause({a, false}, {b, true});
}

void TwoSatInstance::add_not_equal(int a, int b) {
  add_clause({a, true}, {b, true});
  add_clause({a, false}, {b, false});
}

std::string TwoSatInstance::to_dimacs() const {
  std::ostringstream os;
  os << "p cnf " << var_count << ' ' << clauses.size() << '\n';
  for (const auto& [a, b] : clauses)
    os << (a.positive ? a.var + 1 : -(a.var + 1)) << ' '
       << (b.positive ? b.var + 1 : -(b.var + 1)) << " 0\n";
  return os.str();
}

bool Assignment::satisfies(const TwoSatInstance& inst) const {
  for (const auto& [a, b] : inst.clauses) {
    bool va = value[a.var] == (a.positive ? 1 : 0);
    bool vb = value[b.var] == (b.positive ? 1 : 0);
    if (!va && !vb) return false;
  }
  return true;
}

namespace {

// Literal node ids: 2*var for positive, 2*var+1 for negated.
inline int node(Literal l) { return 2 * l.var + (l.positive ? 0 : 1); }
inline int negation(int u) { return u ^ 1; }

struct Tarjan {
  const std::vector<std::vector<int>>& adj;
  std::vector<int> index, low, comp;
  std::vector<int> stack;
  std::vector<char> on_stack;
  int counter = 0, comp_count = 0;

  explicit Tarjan(const std::vector<std::vector<int>>& a)
      : adj(a),
        index(a.size(), -1),
        low(a.size(), 0),
        comp(a.size(), -1),
        on_stack(a.size(), 0) {}

  // Iterative DFS; formulas can outgrow the C stack otherwise.
  void run(int root) {
    struct Frame {
      int v;
      std::size_t next;
    };
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      auto& [v, next] = frames.back();
      if (next < adj[v].size()) {
        int w = adj[v][next++];
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      } else {
        if (low[v] == index[v]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp[w] = comp_count;
            if (w == v) break;
          }
          ++comp_count;
        }
        int finished = v;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().v] = std::min(low[frames.back().v], low[finished]);
      }
    }
  }
};

}  // namespace

std::optional<Assignment> solve(const TwoSatInstance& inst) {
  const int n = inst.var_count;
  std::vector<std::vector<int>> adj(2 * n);
  for (const auto& [a, b] : inst.clauses) {
    if (a.var < 0 || a.var >= n || b.var < 0 || b.var >= n)
      throw std::invalid_argument("twosat: literal out of range");
    adj[negation(node(a))].push_back(node(b));
    adj[negation(node(b))].push_back(node(a));
  }

  Tarjan t(adj);
  for (int v = 0; v < 2 * n; ++v)
    if (t.index[v] == -1) t.run(v);

  Assignment out;
  out.value.assign(n, 0);
  for (int v = 0; v < n; ++v) {
    if (t.comp[2 * v] == t.comp[2 * v + 1]) return std::nullopt;
    // Tarjan numbers components in reverse topological order, so the literal
    // whose component finishes earlier is implied by the other.
    out.value[v] = t.comp[2 * v] < t.comp[2 * v + 1] ? 1 : 0;
  }

  // Deterministic bias: flip variables to false wherever the clauses allow.
  for (int v = 0; v < n; ++v) {
    if (out.value[v] == 0) continue;
    out.value[v] = 0;
    if (!out.satisfies(inst)) out.value[v] = 1;
  }
  return out;
}

}  // namespace robinson

#include "tdlab/minor.hpp"

#include <functional>

#include "tdlab/connectivity.hpp"

namespace tdlab {

bool validate_minor_model(const Graph& host, const Graph& pattern,
                          const MinorModel& model) {
  VertexSet used;
  for (int p : pattern.vertices()) {
    auto it = model.find(p);
    if (it == model.end() || it->second.empty()) return false;
    const VertexSet& S = it->second;
    if (!set_subset(S, host.vertices())) return false;
    if (!is_connected(host.induced(S))) return false;
    for (int v : S) used.push_back(v);
  }
  if (make_set(used).size() != used.size()) return false;
  for (auto [p, q] : pattern.edges()) {
    const VertexSet& A = model.at(p);
    const VertexSet& B = model.at(q);
    bool touched = false;
    for (int v : A) {
      for (int w : host.neighbors(v))
        if (set_contains(B, w)) {
          touched = true;
          break;
        }
      if (touched) break;
    }
    if (!touched) return false;
  }
  return true;
}

namespace {

struct Reduction {
  int v, a, b;      // suppressed vertex with its two neighbors; a=b=-1: deleted
  bool added_edge;  // suppression introduced edge ab missing from the host
};

// Low-degree host simplifications that preserve minor containment exactly,
// gated on the pattern's minimum degree.
Graph reduce_host(Graph h, int pattern_min_deg, std::vector<Reduction>& steps) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v : h.vertices()) {
      int d = h.degree(v);
      if ((d == 0 && pattern_min_deg >= 1) || (d <= 1 && pattern_min_deg >= 2)) {
        steps.push_back({v, -1, -1, false});
        h = h.minus_vertex(v);
        changed = true;
        break;
      }
      if (d == 2 && pattern_min_deg >= 3) {
        int a = h.neighbors(v)[0], b = h.neighbors(v)[1];
        bool added = !h.has_edge(a, b);
        Graph h2 = h.minus_vertex(v);
        if (added) h2 = h2.with_edge(a, b);
        steps.push_back({v, a, b, added});
        h = std::move(h2);
        changed = true;
        break;
      }
    }
  }
  return h;
}

// Pulls a model found in the reduced host back through the reductions.
MinorModel lift_model(MinorModel model, const std::vector<Reduction>& steps) {
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    if (it->a < 0 || !it->added_edge) continue;  // deletions need no fix-up
    int hold_ab = -1, hold_a = -1;
    for (auto& [p, S] : model) {
      bool ha = set_contains(S, it->a), hb = set_contains(S, it->b);
      if (ha && hb) hold_ab = p;
      else if (ha) hold_a = p;
    }
    // The virtual edge ab stood for the path a-v-b; reinsert v wherever it
    // keeps the set connected or supplies the missing cross adjacency.
    if (hold_ab >= 0)
      model[hold_ab] = set_union(model[hold_ab], {it->v});
    else if (hold_a >= 0)
      model[hold_a] = set_union(model[hold_a], {it->v});
  }
  return model;
}

struct Searcher {
  const Graph& H;
  const Graph& P;
  std::vector<int> order;       // pattern placement order
  std::vector<int> twin_prev;   // per order index: earlier order index of a
                                // twin pattern vertex, or -1
  std::map<int, int> hidx;      // host id -> compact index
  std::vector<int> hid;         // compact index -> host id
  std::vector<char> avail;
  std::map<int, VertexSet> placed;
  long long budget, expansions = 0;
  bool truncated = false;
  MinorModel found;

  Searcher(const Graph& h, const Graph& p, long long b) : H(h), P(p), budget(b) {
    for (int v : H.vertices()) {
      hidx[v] = static_cast<int>(hid.size());
      hid.push_back(v);
    }
    avail.assign(hid.size(), 1);
    build_order();
  }

  void build_order() {
    auto deg_desc = [&](int a, int b) {
      return P.degree(a) != P.degree(b) ? P.degree(a) > P.degree(b) : a < b;
    };
    std::vector<int> rest = P.vertices();
    std::sort(rest.begin(), rest.end(), deg_desc);
    std::vector<char> seen(P.max_vertex_id() + 1, 0);
    while (!rest.empty()) {
      int root = -1;
      for (int v : rest)
        if (!seen[v]) {
          root = v;
          break;
        }
      if (root < 0) break;
      std::vector<int> q{root};
      seen[root] = 1;
      for (size_t qi = 0; qi < q.size(); ++qi) {
        order.push_back(q[qi]);
        std::vector<int> nb = P.neighbors(q[qi]);
        std::sort(nb.begin(), nb.end(), deg_desc);
        for (int w : nb)
          if (!seen[w]) {
            seen[w] = 1;
            q.push_back(w);
          }
      }
      rest.erase(std::remove_if(rest.begin(), rest.end(),
                                [&](int v) { return seen[v]; }),
                 rest.end());
    }
    // Pairwise-twin groups: swapping two twins is a pattern automorphism,
    // so branch sets of a group may be forced into increasing-minimum order.
    auto twin = [&](int u, int w) {
      return set_diff(P.neighbors(u), {w}) == set_diff(P.neighbors(w), {u});
    };
    twin_prev.assign(order.size(), -1);
    std::vector<int> group(order.size(), -1);
    int next_group = 0;
    for (size_t i = 0; i < order.size(); ++i) {
      if (group[i] >= 0) continue;
      group[i] = next_group;
      for (size_t j = i + 1; j < order.size(); ++j) {
        if (group[j] >= 0 || !twin(order[i], order[j])) continue;
        bool all = true;
        for (size_t k = 0; k < j && all; ++k)
          if (group[k] == next_group) all = twin(order[k], order[j]);
        if (all) group[j] = next_group;
      }
      ++next_group;
    }
    for (size_t i = 0; i < order.size(); ++i)
      for (size_t j = 0; j < i; ++j)
        if (group[j] == group[i]) twin_prev[i] = static_cast<int>(j);
  }

  int avail_count() const {
    int c = 0;
    for (char a : avail) c += a;
    return c;
  }

  bool cross_adjacent(const VertexSet& S, const VertexSet& R) const {
    for (int v : S)
      for (int w : H.neighbors(v))
        if (set_contains(R, w)) return true;
    return false;
  }

  // Placed sets must each retain enough available attachment vertices for
  // their unplaced pattern neighbors.
  bool prune_ok(size_t next_oi) const {
    if (avail_count() < static_cast<int>(order.size() - next_oi)) return false;
    for (size_t k = 0; k < next_oi; ++k) {
      int q = order[k];
      int unplaced_nb = 0;
      for (int w : P.neighbors(q))
        if (!placed.count(w)) ++unplaced_nb;
      if (unplaced_nb == 0) continue;
      VertexSet frontier;
      for (int v : placed.at(q))
        for (int w : H.neighbors(v))
          if (avail[hidx.at(w)]) frontier.push_back(w);
      if (static_cast<int>(make_set(std::move(frontier)).size()) < unplaced_nb)
        return false;
    }
    return true;
  }

  enum Step { FOUND, EXHAUSTED, ABORT };

  // Enumerates connected subsets of exactly `want` allowed vertices
  // containing everything in S, each subset exactly once: candidates are
  // consumed in ascending order and banned for later branches.
  Step grow(std::vector<int>& S, std::vector<char>& banned, int want,
            const std::function<Step(const std::vector<int>&)>& sink) {
    if (static_cast<int>(S.size()) == want) return sink(S);
    std::vector<int> cand;
    for (int v : S)
      for (int w : H.neighbors(v)) {
        int wi = hidx.at(w);
        if (avail[wi] && !banned[wi] &&
            std::find(S.begin(), S.end(), w) == S.end())
          cand.push_back(w);
      }
    cand = make_set(std::move(cand));
    std::vector<int> newly_banned;
    Step res = EXHAUSTED;
    for (int x : cand) {
      if (banned[hidx.at(x)]) continue;
      S.push_back(x);
      res = grow(S, banned, want, sink);
      S.pop_back();
      if (res != EXHAUSTED) break;
      banned[hidx.at(x)] = 1;
      newly_banned.push_back(x);
    }
    for (int x : newly_banned) banned[hidx.at(x)] = 0;
    return res;
  }

  Step place(size_t oi) {
    if (oi == order.size()) {
      for (auto& [p, S] : placed) found[p] = S;
      return FOUND;
    }
    int p = order[oi];
    std::vector<VertexSet> required;
    for (int w : P.neighbors(p))
      if (placed.count(w)) required.push_back(placed.at(w));
    int min_floor = -1;
    if (twin_prev[oi] >= 0)
      min_floor = placed.at(order[twin_prev[oi]]).front();

    VertexSet anchor;
    if (required.empty()) {
      for (size_t i = 0; i < hid.size(); ++i)
        if (avail[i]) anchor.push_back(hid[i]);
    } else {
      for (int v : required[0])
        for (int w : H.neighbors(v))
          if (avail[hidx.at(w)]) anchor.push_back(w);
      anchor = make_set(std::move(anchor));
    }
    int max_size = avail_count() - static_cast<int>(order.size() - oi - 1);

    for (int want = 1; want <= max_size; ++want) {
      std::vector<char> banned(hid.size(), 0);
      for (int seed : anchor) {
        std::vector<int> S{seed};
        auto sink = [&](const std::vector<int>& raw) -> Step {
          VertexSet set = make_set(raw);
          ++expansions;
          if (budget >= 0 && expansions > budget) {
            truncated = true;
            return ABORT;
          }
          if (set.front() <= min_floor) return EXHAUSTED;
          for (size_t r = 1; r < required.size(); ++r)
            if (!cross_adjacent(set, required[r])) return EXHAUSTED;
          placed[p] = set;
          for (int v : set) avail[hidx.at(v)] = 0;
          Step res = EXHAUSTED;
          if (prune_ok(oi + 1)) res = place(oi + 1);
          for (int v : set) avail[hidx.at(v)] = 1;
          placed.erase(p);
          return res;
        };
        Step res = grow(S, banned, want, sink);
        if (res != EXHAUSTED) return res;
        banned[hidx.at(seed)] = 1;  // later seeds skip sets containing it
      }
    }
    return EXHAUSTED;
  }
};

}  // namespace

MinorSearch find_minor_model(const Graph& host, const Graph& pattern,
                             long long budget) {
  MinorSearch out;
  if (pattern.n() == 0) {
    out.result = MinorResult::Found;
    return out;
  }
  int pmin = pattern.n() > 0 ? pattern.degree(pattern.vertices()[0]) : 0;
  for (int v : pattern.vertices()) pmin = std::min(pmin, pattern.degree(v));
  std::vector<Reduction> steps;
  Graph h = reduce_host(host, pmin, steps);
  if (h.n() < pattern.n() || h.m() < pattern.m()) {
    out.result = MinorResult::NoMinor;
    return out;
  }
  Searcher s(h, pattern, budget);
  Searcher::Step res = s.place(0);
  out.expansions = s.expansions;
  if (res == Searcher::FOUND) {
    out.result = MinorResult::Found;
    out.model = lift_model(s.found, steps);
    if (!validate_minor_model(host, pattern, out.model))
      throw std::logic_error("minor model lift failed validation");
  } else if (s.truncated) {
    out.result = MinorResult::Inconclusive;
  } else {
    out.result = MinorResult::NoMinor;
  }
  return out;
}

MinorModel compose_minor_models(const MinorModel& model_outer,
                                const MinorModel& model_inner) {
  MinorModel out;
  for (const auto& [p, mids] : model_inner) {
    VertexSet S;
    for (int m : mids) S = set_union(S, model_outer.at(m));
    out[p] = S;
  }
  return out;
}

MinorModel restrict_model(const MinorModel& model, const VertexSet& keep) {
  MinorModel out;
  for (const auto& [p, S] : model)
    if (set_contains(keep, p)) out[p] = S;
  return out;
}

}  // namespace tdlab

#include "cssdec/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cssdec {

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimum: return "optimum";
    case SolveStatus::satisfiable_bound: return "satisfiable-bound";
    case SolveStatus::hard_unsat: return "hard-unsat";
    case SolveStatus::timeout: return "timeout";
  }
  return "unknown";
}

namespace {

constexpr double kTieEps = 1e-12;

// Literal encoding: variable v with sign -> index 2v (positive) / 2v+1
// (negative). values[] holds 0=false, 1=true, 2=unassigned.
inline int lit_index(int lit) { return lit > 0 ? 2 * lit : -2 * lit + 1; }

// Indexed max-heap over variable activities; equal activities order by
// ascending variable id, which is also the cold-start order.
class VarOrder {
 public:
  void init(int nvars, const std::vector<double>* activity) {
    act_ = activity;
    pos_.assign(nvars + 1, -1);
    heap_.clear();
  }

  bool contains(int v) const { return pos_[v] >= 0; }
  bool empty() const { return heap_.empty(); }

  void insert(int v) {
    if (contains(v)) return;
    pos_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    up(pos_[v]);
  }

  // Registers a variable id one past the current capacity.
  void insert_new(int v) {
    pos_.resize(v + 1, -1);
    insert(v);
  }

  void update(int v) {
    if (contains(v)) up(pos_[v]);
  }

  int pop_max() {
    int v = heap_[0];
    pos_[v] = -1;
    heap_[0] = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
      pos_[heap_[0]] = 0;
      down(0);
    }
    return v;
  }

 private:
  bool before(int a, int b) const {
    double aa = (*act_)[a], ab = (*act_)[b];
    return aa > ab || (aa == ab && a < b);
  }
  void up(int i) {
    int v = heap_[i];
    while (i > 0) {
      int parent = (i - 1) / 2;
      if (!before(v, heap_[parent])) break;
      heap_[i] = heap_[parent];
      pos_[heap_[i]] = i;
      i = parent;
    }
    heap_[i] = v;
    pos_[v] = i;
  }
  void down(int i) {
    int v = heap_[i];
    const int n = static_cast<int>(heap_.size());
    while (true) {
      int child = 2 * i + 1;
      if (child >= n) break;
      if (child + 1 < n && before(heap_[child + 1], heap_[child])) ++child;
      if (!before(heap_[child], v)) break;
      heap_[i] = heap_[child];
      pos_[heap_[i]] = i;
      i = child;
    }
    heap_[i] = v;
    pos_[v] = i;
  }

  const std::vector<double>* act_ = nullptr;
  std::vector<int> heap_;
  std::vector<int> pos_;
};

// Exact branch and bound over the hard clauses with conflict-driven clause
// learning, activity-ordered decisions and Luby restarts. Values are tried
// false first (the no-error bias); the lower bound is the weight of already-
// violated soft clauses. Exceeding the incumbent turns the violated soft
// clauses into a learnable conflict, so cost reasoning accumulates across
// the search the same way hard-clause reasoning does.
class BnbSolver {
 public:
  BnbSolver(const WcnfFormula& f, const SolverBudget& budget, const SolveOptions& options)
      : formula_(f), budget_(budget), options_(options), nvars_(f.num_vars),
        nvars_int_(f.num_vars) {
    values_.assign(nvars_ + 1, 2);
    reason_.assign(nvars_ + 1, -1);
    level_.assign(nvars_ + 1, 0);
    seen_.assign(nvars_ + 1, false);
    activity_.assign(nvars_ + 1, 0.0);
    saved_phase_.assign(nvars_ + 1, 0);
    watches_.assign(2 * nvars_ + 2, {});
    soft_occ_.assign(2 * nvars_ + 2, {});
    build();
    order_.init(nvars_, &activity_);
    for (int v = 1; v <= nvars_; ++v)
      if (branchable_[v]) order_.insert(v);
  }

  Assignment run() {
    Assignment result;
    start_ = std::chrono::steady_clock::now();

    if (options_.warm_start) seed_incumbent(*options_.warm_start);
    build_totalizer();

    for (int lit : root_units_) {
      int v = std::abs(lit);
      if (values_[v] != 2) {
        if (value_of_lit(lit) != 1) return finish(result, true);
        continue;
      }
      enqueue(lit, -1);
    }
    if (!propagate().empty()) return finish(result, true);
    if (have_incumbent_ && !assert_cost_facts()) return finish(result, false);

    search();
    return finish(result, false);
  }

 private:
  struct Cls {
    std::vector<int> lits;
    bool learned = false;
    bool deleted = false;
  };
  struct Component {
    std::vector<int> vars;
    std::vector<int> clause_ids;
  };
  struct SoftClause {
    std::vector<int> lits;
    double weight = 0.0;
    int false_count = 0;
  };

  // ---- setup ----

  void build() {
    in_hard_.assign(nvars_ + 1, false);
    for (const auto& c : formula_.hard) {
      if (c.lits.empty()) throw std::invalid_argument("solve_exact: empty hard clause");
      for (int lit : c.lits) {
        if (lit == 0 || std::abs(lit) > nvars_)
          throw std::invalid_argument("solve_exact: literal out of range");
        in_hard_[std::abs(lit)] = true;
      }
      if (c.lits.size() == 1) {
        root_units_.push_back(c.lits[0]);
        continue;
      }
      attach_clause({c.lits, false, false});
    }
    for (const auto& [w, c] : formula_.soft) {
      if (w <= 0) throw std::invalid_argument("solve_exact: non-positive soft weight");
      if (c.lits.empty()) throw std::invalid_argument("solve_exact: empty soft clause");
      for (int lit : c.lits)
        if (lit == 0 || std::abs(lit) > nvars_)
          throw std::invalid_argument("solve_exact: literal out of range");
      soft_.push_back({c.lits, w, 0});
      int sid = static_cast<int>(soft_.size()) - 1;
      // soft_occ_[i] lists the soft clauses containing the literal with
      // index i; assignments falsify the complementary index.
      for (int lit : c.lits) soft_occ_[lit_index(lit)].push_back(sid);
    }
    build_completion_components();
    build_budget_index();
  }

  // Per-variable cost of flipping away from the preferred polarity, taken
  // from unit soft clauses. Feeds the budget propagator.
  void build_budget_index() {
    unit_pref_.assign(nvars_ + 1, 0);
    unit_weight_.assign(nvars_ + 1, 0.0);
    for (const auto& sc : soft_) {
      if (sc.lits.size() != 1) continue;
      int lit = sc.lits[0];
      int v = std::abs(lit);
      if (unit_pref_[v] != 0 && unit_pref_[v] != lit) {
        unit_weight_[v] = 0.0;  // both polarities penalized: stay out of it
        continue;
      }
      unit_pref_[v] = lit;
      unit_weight_[v] += sc.weight;
    }
    for (int v = 1; v <= nvars_; ++v)
      if (branchable_[v] && unit_weight_[v] > 0.0) budget_vars_.push_back(v);
    std::sort(budget_vars_.begin(), budget_vars_.end(), [this](int a, int b) {
      return unit_weight_[a] > unit_weight_[b] || (unit_weight_[a] == unit_weight_[b] && a < b);
    });
  }

  int attach_clause(Cls cls) {
    int cid = static_cast<int>(db_.size());
    watches_[lit_index(cls.lits[0])].push_back(cid);
    watches_[lit_index(cls.lits[1])].push_back(cid);
    if (cls.learned) ++live_learned_;
    db_.push_back(std::move(cls));
    return cid;
  }

  // Variables outside every hard clause never need branching: once the
  // branchable variables are assigned, each connected component of soft
  // clauses over such variables is minimized exhaustively. Padding
  // auxiliaries of 3-SAT soft gadgets fall out this way.
  void build_completion_components() {
    branchable_ = in_hard_;
    std::vector<int> comp_of(nvars_ + 1, -1);
    for (std::size_t sid = 0; sid < soft_.size(); ++sid) {
      int target = -1;
      for (int lit : soft_[sid].lits) {
        int v = std::abs(lit);
        if (in_hard_[v] || comp_of[v] < 0) continue;
        target = comp_of[v];
        break;
      }
      if (target < 0) {
        bool any_free = false;
        for (int lit : soft_[sid].lits)
          if (!in_hard_[std::abs(lit)]) any_free = true;
        if (!any_free) continue;
        target = static_cast<int>(components_.size());
        components_.push_back({});
      }
      Component& comp = components_[target];
      comp.clause_ids.push_back(static_cast<int>(sid));
      for (int lit : soft_[sid].lits) {
        int v = std::abs(lit);
        if (in_hard_[v]) continue;
        if (comp_of[v] == -1) {
          comp_of[v] = target;
          comp.vars.push_back(v);
        } else if (comp_of[v] != target) {
          Component& old = components_[comp_of[v]];
          for (int u : old.vars) comp_of[u] = target;
          comp.vars.insert(comp.vars.end(), old.vars.begin(), old.vars.end());
          comp.clause_ids.insert(comp.clause_ids.end(), old.clause_ids.begin(),
                                 old.clause_ids.end());
          old.vars.clear();
          old.clause_ids.clear();
        }
      }
    }
    std::vector<Component> kept;
    for (auto& comp : components_) {
      if (comp.vars.empty()) continue;
      if (comp.vars.size() > 16) {
        // oversized: leave those variables to the branching search
        for (int v : comp.vars) branchable_[v] = true;
        continue;
      }
      std::sort(comp.vars.begin(), comp.vars.end());
      std::sort(comp.clause_ids.begin(), comp.clause_ids.end());
      comp.clause_ids.erase(std::unique(comp.clause_ids.begin(), comp.clause_ids.end()),
                            comp.clause_ids.end());
      kept.push_back(std::move(comp));
    }
    components_ = std::move(kept);
  }

  // ---- assignment plumbing ----

  int value_of_lit(int lit) const {
    int v = std::abs(lit);
    std::uint8_t val = values_[v];
    if (val == 2) return 2;
    return (lit > 0) == (val == 1) ? 1 : 0;
  }

  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  void enqueue(int lit, int reason) {
    int v = std::abs(lit);
    values_[v] = lit > 0 ? 1 : 0;
    reason_[v] = reason;
    level_[v] = decision_level();
    trail_.push_back(lit);
    for (int sid : soft_occ_[lit_index(lit) ^ 1]) {
      SoftClause& sc = soft_[sid];
      if (++sc.false_count == static_cast<int>(sc.lits.size())) violated_ += sc.weight;
    }
  }

  void cancel_until(int lvl) {
    if (decision_level() <= lvl) return;
    std::size_t mark = trail_lim_[lvl];
    while (trail_.size() > mark) {
      int lit = trail_.back();
      trail_.pop_back();
      for (int sid : soft_occ_[lit_index(lit) ^ 1]) {
        SoftClause& sc = soft_[sid];
        if (sc.false_count-- == static_cast<int>(sc.lits.size())) violated_ -= sc.weight;
      }
      int v = std::abs(lit);
      saved_phase_[v] = values_[v];
      values_[v] = 2;
      reason_[v] = -1;
      if (branchable_[v]) order_.insert(v);
    }
    trail_lim_.resize(lvl);
    qhead_ = std::min(qhead_, trail_.size());
  }

  void bump(int v) {
    activity_[v] += act_inc_;
    if (activity_[v] > 1e100) {
      for (int u = 1; u <= nvars_int_; ++u) activity_[u] *= 1e-100;
      act_inc_ *= 1e-100;
    }
    order_.update(v);
  }

  // Returns the conflicting clause literals, or an empty vector.
  std::vector<int> propagate() {
    while (qhead_ < trail_.size()) {
      int lit = trail_[qhead_++];
      int false_idx = lit_index(lit) ^ 1;
      int false_lit = (false_idx & 1) ? -(false_idx >> 1) : (false_idx >> 1);
      auto& wl = watches_[false_idx];
      std::size_t keep = 0;
      for (std::size_t wi = 0; wi < wl.size(); ++wi) {
        int cid = wl[wi];
        Cls& cls = db_[cid];
        if (cls.deleted) continue;
        if (cls.lits[0] == false_lit) std::swap(cls.lits[0], cls.lits[1]);
        if (value_of_lit(cls.lits[0]) == 1) {
          wl[keep++] = cid;
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < cls.lits.size(); ++k) {
          if (value_of_lit(cls.lits[k]) != 0) {
            std::swap(cls.lits[1], cls.lits[k]);
            watches_[lit_index(cls.lits[1])].push_back(cid);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        wl[keep++] = cid;
        int v0 = value_of_lit(cls.lits[0]);
        if (v0 == 0) {
          for (std::size_t rest = wi + 1; rest < wl.size(); ++rest) wl[keep++] = wl[rest];
          wl.resize(keep);
          return cls.lits;
        }
        if (v0 == 2) enqueue(cls.lits[0], cid);
      }
      wl.resize(keep);
    }
    return {};
  }

  // ---- conflict analysis (first UIP) ----

  // Consumes a clause whose literals are all false; learns an asserting
  // clause, backjumps and enqueues the asserting literal. Returns false when
  // the conflict is terminal (level 0).
  bool resolve_conflict(std::vector<int> conflict) {
    ++conflicts_;
    ++conflicts_since_restart_;
    act_inc_ /= 0.95;
    int max_lvl = 0;
    for (int lit : conflict) max_lvl = std::max(max_lvl, level_[std::abs(lit)]);
    if (max_lvl == 0) return false;
    cancel_until(max_lvl);

    std::vector<int> learnt;
    learnt.push_back(0);  // slot for the asserting literal
    int path = 0;
    std::size_t index = trail_.size();
    int p = 0;
    std::vector<int> pending = std::move(conflict);
    while (true) {
      for (int q : pending) {
        int v = std::abs(q);
        if (v == std::abs(p)) continue;
        if (seen_[v] || level_[v] == 0) continue;
        seen_[v] = true;
        bump(v);
        if (level_[v] >= decision_level())
          ++path;
        else
          learnt.push_back(q);
      }
      while (index > 0 && !seen_[std::abs(trail_[index - 1])]) --index;
      if (index == 0) break;  // defensive; cannot happen with path >= 1
      p = trail_[--index];
      int v = std::abs(p);
      seen_[v] = false;
      --path;
      if (path == 0) break;
      pending = db_[reason_[v]].lits;
    }
    learnt[0] = -p;

    // Local minimization: a literal whose reason lies entirely inside the
    // learned clause (or level 0) is redundant.
    std::vector<int> to_clear;
    for (std::size_t i = 1; i < learnt.size(); ++i) to_clear.push_back(std::abs(learnt[i]));
    std::size_t keep = 1;
    for (std::size_t i = 1; i < learnt.size(); ++i) {
      int v = std::abs(learnt[i]);
      int r = reason_[v];
      bool redundant = false;
      if (r >= 0) {
        redundant = true;
        for (int q : db_[r].lits) {
          int u = std::abs(q);
          if (u == v || level_[u] == 0 || seen_[u]) continue;
          redundant = false;
          break;
        }
      }
      if (!redundant) learnt[keep++] = learnt[i];
    }
    learnt.resize(keep);
    for (int v : to_clear) seen_[v] = false;

    int bj_level = 0;
    std::size_t swap_pos = 1;
    for (std::size_t i = 1; i < learnt.size(); ++i) {
      int lvl = level_[std::abs(learnt[i])];
      if (lvl > bj_level) {
        bj_level = lvl;
        swap_pos = i;
      }
    }
    cancel_until(bj_level);
    if (learnt.size() == 1) {
      if (value_of_lit(learnt[0]) == 0) return false;  // contradicts a root fact
      if (values_[std::abs(learnt[0])] == 2) enqueue(learnt[0], -1);
      return true;
    }
    std::swap(learnt[1], learnt[swap_pos]);
    int cid = attach_clause({std::move(learnt), true, false});
    enqueue(db_[cid].lits[0], cid);
    return true;
  }

  // ---- counting network ----
  //
  // A generalized totalizer over the penalized literals gives unit
  // propagation and clause learning access to counting arguments: node
  // output "cost reaches s" is implied upward from the leaves, and bound
  // facts at the root exclude sums at or above the incumbent. Definitional
  // clauses are unconditionally sound; only the root facts depend on the
  // incumbent-improvement invariant.

  struct TotNode {
    std::vector<double> sums;  // ascending
    std::vector<int> lits;     // literal true when the subtree cost reaches sums[i]
  };

  void build_totalizer() {
    if (budget_vars_.empty()) return;
    double cap = 0.0;
    if (have_incumbent_ && std::isfinite(ub_)) {
      cap = ub_;
    } else {
      for (int v : budget_vars_) cap += unit_weight_[v];
    }
    if (cap <= 0.0) return;

    std::vector<TotNode> layer;
    std::vector<int> leaf_vars = budget_vars_;
    std::sort(leaf_vars.begin(), leaf_vars.end());
    for (int v : leaf_vars) layer.push_back({{unit_weight_[v]}, {-unit_pref_[v]}});

    // Estimate guard: capped pairwise merges stay quadratic in the worst
    // case; bail out rather than drown in definitional clauses.
    const std::size_t clause_cap = 200000;
    std::size_t emitted = 0;

    while (layer.size() > 1) {
      std::vector<TotNode> next;
      for (std::size_t i = 0; i + 1 < layer.size(); i += 2) {
        TotNode merged = merge_nodes(layer[i], layer[i + 1], cap, emitted);
        if (emitted > clause_cap) return;  // definitional clauses stay; facts still sound
        next.push_back(std::move(merged));
      }
      if (layer.size() & 1) next.push_back(std::move(layer.back()));
      layer = std::move(next);
    }
    root_ = std::move(layer[0]);
    have_totalizer_ = true;
  }

  int fresh_var() {
    int v = ++nvars_int_;
    values_.push_back(2);
    reason_.push_back(-1);
    level_.push_back(0);
    seen_.push_back(false);
    activity_.push_back(0.0);
    saved_phase_.push_back(0);
    branchable_.push_back(true);
    in_hard_.push_back(true);
    watches_.push_back({});
    watches_.push_back({});
    soft_occ_.push_back({});
    soft_occ_.push_back({});
    order_.insert_new(v);
    return v;
  }

  TotNode merge_nodes(const TotNode& a, const TotNode& b, double cap, std::size_t& emitted) {
    TotNode out;
    auto clip = [cap](double s) { return std::min(s, cap); };
    auto slot = [&out, this](double s) {
      auto it = std::lower_bound(out.sums.begin(), out.sums.end(), s - 1e-12);
      if (it != out.sums.end() && std::abs(*it - s) < 1e-9)
        return out.lits[it - out.sums.begin()];
      int v = fresh_var();
      std::size_t pos = it - out.sums.begin();
      out.sums.insert(out.sums.begin() + pos, s);
      out.lits.insert(out.lits.begin() + pos, v);
      return v;
    };
    // singles: child sum alone reaches s
    for (std::size_t i = 0; i < a.sums.size(); ++i) {
      int o = slot(clip(a.sums[i]));
      attach_clause({{-a.lits[i], o}, false, false});
      ++emitted;
    }
    for (std::size_t j = 0; j < b.sums.size(); ++j) {
      int o = slot(clip(b.sums[j]));
      attach_clause({{-b.lits[j], o}, false, false});
      ++emitted;
    }
    // pairs
    for (std::size_t i = 0; i < a.sums.size(); ++i) {
      for (std::size_t j = 0; j < b.sums.size(); ++j) {
        int o = slot(clip(a.sums[i] + b.sums[j]));
        attach_clause({{-a.lits[i], -b.lits[j], o}, false, false});
        ++emitted;
      }
    }
    return out;
  }

  // Excludes every root sum at or above the incumbent; returns false when
  // that already contradicts level-0 facts (the incumbent is optimal).
  bool assert_cost_facts() {
    if (!have_totalizer_) return true;
    for (std::size_t i = 0; i < root_.sums.size(); ++i) {
      if (root_.sums[i] < ub_ - kTieEps) continue;
      int lit = -root_.lits[i];
      int v = std::abs(lit);
      if (values_[v] != 2) {
        if (value_of_lit(lit) == 0) return false;
        continue;
      }
      enqueue(lit, -1);
    }
    return !propagate_conflicts_to_failure();
  }

  bool propagate_conflicts_to_failure() {
    std::vector<int> conflict = propagate();
    return !conflict.empty();  // top-level conflict: nothing better exists
  }

  // Luby sequence for restart scheduling.
  static std::uint64_t luby(std::uint64_t i) {
    std::uint64_t k = 1;
    while ((std::uint64_t(1) << k) - 1 < i + 1) ++k;
    while ((std::uint64_t(1) << (k - 1)) - 1 != i) {
      i -= (std::uint64_t(1) << (k - 1)) - 1;
      k = 1;
      while ((std::uint64_t(1) << k) - 1 < i + 1) ++k;
    }
    return std::uint64_t(1) << (k - 1);
  }

  // ---- the bound layer ----

  void seed_incumbent(const std::vector<std::uint8_t>& hint) {
    if (static_cast<int>(hint.size()) != nvars_ + 1) return;
    auto [ok, obj] = check_assignment(formula_, hint);
    if (!ok) return;
    best_values_ = hint;
    ub_ = obj;
    have_incumbent_ = true;
  }

  // Violated soft clauses whose weights already cover the incumbent become a
  // conflict clause: any assignment falsifying all their literals costs at
  // least the incumbent. Sound because the incumbent only improves.
  std::vector<int> bound_conflict_clause() {
    std::vector<std::pair<double, int>> violated;
    for (std::size_t sid = 0; sid < soft_.size(); ++sid)
      if (soft_[sid].false_count == static_cast<int>(soft_[sid].lits.size()))
        violated.push_back({soft_[sid].weight, static_cast<int>(sid)});
    std::sort(violated.begin(), violated.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<int> clause;
    double sum = 0.0;
    for (auto [w, sid] : violated) {
      for (int lit : soft_[sid].lits) {
        int v = std::abs(lit);
        if (seen_[v]) continue;
        seen_[v] = true;
        clause.push_back(lit);
      }
      sum += w;
      if (sum >= ub_ - kTieEps) break;
    }
    for (int lit : clause) seen_[std::abs(lit)] = false;
    return clause;
  }

  // All branchable variables are assigned: minimize the soft-only components
  // exhaustively, adopt the completed assignment when it improves, and build
  // the covering conflict from the violated softs plus the assigned literals
  // responsible for unavoidable completion cost.
  std::vector<int> leaf_conflict_clause() {
    double extra = 0.0;
    completion_bits_.clear();
    std::vector<int> cause_lits;
    for (const auto& comp : components_) {
      const std::size_t k = comp.vars.size();
      double best = std::numeric_limits<double>::infinity();
      std::uint32_t best_mask = 0;
      for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << k); ++mask) {
        double cost = 0.0;
        for (int sid : comp.clause_ids) {
          const SoftClause& sc = soft_[sid];
          bool satisfied = false;
          for (int lit : sc.lits) {
            int v = std::abs(lit);
            int val;
            if (values_[v] != 2) {
              val = values_[v];
            } else {
              std::size_t pos = std::lower_bound(comp.vars.begin(), comp.vars.end(), v) -
                                comp.vars.begin();
              val = (mask >> pos) & 1;
            }
            if ((lit > 0) == (val == 1)) {
              satisfied = true;
              break;
            }
          }
          if (!satisfied) cost += sc.weight;
        }
        if (cost < best) {
          best = cost;
          best_mask = mask;
        }
      }
      extra += best;
      for (std::size_t i = 0; i < k; ++i)
        completion_bits_.push_back(
            {comp.vars[i], static_cast<std::uint8_t>((best_mask >> i) & 1)});
      if (best > 0.0) {
        // assigned literals of the clauses not satisfied by assigned vars
        for (int sid : comp.clause_ids) {
          const SoftClause& sc = soft_[sid];
          bool satisfied_by_assigned = false;
          for (int lit : sc.lits)
            if (values_[std::abs(lit)] != 2 && value_of_lit(lit) == 1)
              satisfied_by_assigned = true;
          if (satisfied_by_assigned) continue;
          for (int lit : sc.lits)
            if (values_[std::abs(lit)] != 2) cause_lits.push_back(lit);
        }
      }
    }

    double candidate = violated_ + extra;
    if (candidate < ub_ - kTieEps) {
      best_values_.assign(values_.begin(), values_.end());
      for (auto [v, b] : completion_bits_) best_values_[v] = b;
      for (int v = 1; v <= nvars_int_; ++v)
        if (best_values_[v] == 2) best_values_[v] = 0;  // untouched free variables
      ub_ = candidate;
      have_incumbent_ = true;
      facts_pending_ = true;
    }

    std::vector<int> clause = bound_conflict_clause();
    for (int lit : cause_lits) {
      int v = std::abs(lit);
      if (seen_[v]) continue;
      seen_[v] = true;
      clause.push_back(lit);
    }
    for (int lit : clause) seen_[std::abs(lit)] = false;
    return clause;
  }

  // Selected violated soft clauses whose weights add up past `needed`; the
  // union of their (currently false) literals is a globally valid premise.
  std::vector<int> violated_premise(double needed) {
    std::vector<std::pair<double, int>> violated;
    for (std::size_t sid = 0; sid < soft_.size(); ++sid)
      if (soft_[sid].false_count == static_cast<int>(soft_[sid].lits.size()))
        violated.push_back({soft_[sid].weight, static_cast<int>(sid)});
    std::sort(violated.begin(), violated.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<int> premise;
    double sum = 0.0;
    for (auto [w, sid] : violated) {
      if (sum >= needed) break;
      for (int lit : soft_[sid].lits) {
        int v = std::abs(lit);
        if (seen_[v]) continue;
        seen_[v] = true;
        premise.push_back(lit);
      }
      sum += w;
    }
    for (int lit : premise) seen_[std::abs(lit)] = false;
    return premise;
  }

  // Forces the cheap polarity of every variable whose flip no longer fits in
  // the gap to the incumbent. Each forced literal gets a materialized reason
  // clause so conflict analysis can resolve across cost reasoning.
  bool budget_propagate() {
    if (!have_incumbent_ || budget_vars_.empty() || std::isinf(ub_)) return false;
    double slack = ub_ - kTieEps - violated_;
    std::vector<int> forced;
    double min_w = 0.0;
    for (int v : budget_vars_) {
      if (unit_weight_[v] <= slack) break;
      if (values_[v] != 2) continue;
      forced.push_back(v);
      min_w = unit_weight_[v];
    }
    if (forced.empty()) return false;
    std::vector<int> premise = violated_premise(ub_ - kTieEps - min_w);
    for (int v : forced) {
      std::vector<int> lits;
      lits.reserve(premise.size() + 1);
      lits.push_back(unit_pref_[v]);
      for (int lit : premise) lits.push_back(lit);
      if (lits.size() == 1) {
        if (values_[v] == 2) enqueue(lits[0], -1);  // level-0 strength fact
        continue;
      }
      int cid = attach_clause({std::move(lits), true, false});
      if (values_[v] == 2) enqueue(db_[cid].lits[0], cid);
    }
    return true;
  }

  bool out_of_budget() {
    if (budget_.node_limit && decisions_ >= *budget_.node_limit) return true;
    if (budget_.wall_seconds && ((decisions_ + conflicts_) & 0x3ff) == 0) {
      double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
      if (elapsed >= *budget_.wall_seconds) return true;
    }
    return false;
  }

  void reduce_learned() {
    if (live_learned_ < 60000) return;
    for (std::size_t cid = 0; cid < db_.size(); ++cid) {
      Cls& cls = db_[cid];
      if (!cls.learned || cls.deleted || cls.lits.size() <= 6) continue;
      bool locked = false;
      for (int lit : cls.lits) {
        int v = std::abs(lit);
        if (values_[v] != 2 && reason_[v] == static_cast<int>(cid)) locked = true;
      }
      if (locked) continue;
      cls.deleted = true;
      --live_learned_;
    }
    for (auto& wl : watches_) {
      std::size_t keep = 0;
      for (int cid : wl)
        if (!db_[cid].deleted) wl[keep++] = cid;
      wl.resize(keep);
    }
  }

  void search() {
    std::uint64_t restart_budget = 100 * luby(restarts_);
    while (true) {
      std::vector<int> conflict = propagate();
      if (!conflict.empty()) {
        if (!resolve_conflict(std::move(conflict))) return;
        reduce_learned();
        continue;
      }
      if (out_of_budget()) {
        stopped_ = true;
        return;
      }
      if (have_incumbent_ && violated_ >= ub_ - kTieEps) {
        std::vector<int> bound = bound_conflict_clause();
        if (bound.empty() || !resolve_conflict(std::move(bound))) return;
        continue;
      }
      if (facts_pending_) {
        facts_pending_ = false;
        cancel_until(0);
        if (!assert_cost_facts()) return;  // nothing beats the incumbent
        continue;
      }
      if (budget_propagate()) {
        reduce_learned();
        continue;
      }
      if (conflicts_since_restart_ >= restart_budget) {
        conflicts_since_restart_ = 0;
        restart_budget = 100 * luby(++restarts_);
        cancel_until(0);
        continue;
      }
      int var = 0;
      while (!order_.empty()) {
        int cand = order_.pop_max();
        if (values_[cand] == 2 && branchable_[cand]) {
          var = cand;
          break;
        }
      }
      if (var == 0) {
        std::vector<int> leaf = leaf_conflict_clause();
        if (leaf.empty() || !resolve_conflict(std::move(leaf))) return;
        continue;
      }
      ++decisions_;
      trail_lim_.push_back(trail_.size());
      // Error literals always try their cost-free polarity first (the
      // no-error bias); other variables keep their last phase.
      int lit;
      if (unit_pref_.size() > static_cast<std::size_t>(var) && unit_pref_[var] != 0)
        lit = unit_pref_[var];
      else
        lit = saved_phase_[var] == 1 ? var : -var;
      enqueue(lit, -1);
    }
  }

  Assignment finish(Assignment& result, bool root_conflict) {
    result.nodes = decisions_ + conflicts_;
    if (root_conflict) {
      result.status = SolveStatus::hard_unsat;
      return result;
    }
    if (stopped_) {
      if (have_incumbent_) {
        result.status = SolveStatus::satisfiable_bound;
        result.values = best_values_;
        result.values.resize(nvars_ + 1, 0);
        result.objective = ub_;
      } else {
        result.status = SolveStatus::timeout;
      }
      return result;
    }
    if (!have_incumbent_) {
      result.status = SolveStatus::hard_unsat;
      return result;
    }
    result.status = SolveStatus::optimum;
    result.values = best_values_;
    result.values.resize(nvars_ + 1, 0);  // drop internal counting variables
    result.objective = ub_;
    return result;
  }

  const WcnfFormula& formula_;
  SolverBudget budget_;
  SolveOptions options_;
  int nvars_;      // formula variables
  int nvars_int_;  // including counting-network variables
  TotNode root_;
  bool have_totalizer_ = false;
  bool facts_pending_ = false;

  std::vector<Cls> db_;
  std::vector<SoftClause> soft_;
  std::vector<int> root_units_;
  std::vector<std::vector<int>> watches_;
  std::vector<std::vector<int>> soft_occ_;
  std::vector<bool> in_hard_;
  std::vector<bool> branchable_;
  std::vector<Component> components_;
  std::vector<std::pair<int, std::uint8_t>> completion_bits_;
  std::vector<int> unit_pref_;
  std::vector<double> unit_weight_;
  std::vector<int> budget_vars_;

  std::vector<std::uint8_t> values_;
  std::vector<int> reason_;
  std::vector<int> level_;
  std::vector<int> trail_;
  std::vector<std::size_t> trail_lim_;
  std::vector<bool> seen_;
  std::vector<double> activity_;
  std::vector<std::uint8_t> saved_phase_;
  VarOrder order_;
  double act_inc_ = 1.0;
  std::size_t qhead_ = 0;
  double violated_ = 0.0;
  std::size_t live_learned_ = 0;
  std::uint64_t restarts_ = 0;
  std::uint64_t conflicts_since_restart_ = 0;

  double ub_ = std::numeric_limits<double>::infinity();
  bool have_incumbent_ = false;
  std::vector<std::uint8_t> best_values_;

  std::uint64_t decisions_ = 0;
  std::uint64_t conflicts_ = 0;
  bool stopped_ = false;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

Assignment solve_exact(const WcnfFormula& formula, const SolverBudget& budget,
                       const SolveOptions& options) {
  if (formula.num_vars == 0) {
    Assignment a;
    a.status = formula.hard.empty() ? SolveStatus::optimum : SolveStatus::hard_unsat;
    a.values.assign(1, 0);
    return a;
  }
  BnbSolver solver(formula, budget, options);
  return solver.run();
}

std::pair<bool, double> check_assignment(const WcnfFormula& formula,
                                         const std::vector<std::uint8_t>& values) {
  auto lit_true = [&values](int lit) {
    int var = std::abs(lit);
    if (var >= static_cast<int>(values.size())) return false;
    return lit > 0 ? values[var] != 0 : values[var] == 0;
  };
  bool hard_ok = true;
  for (const auto& c : formula.hard) {
    bool sat = false;
    for (int lit : c.lits)
      if (lit_true(lit)) {
        sat = true;
        break;
      }
    if (!sat) {
      hard_ok = false;
      break;
    }
  }
  double objective = 0.0;
  for (const auto& [w, c] : formula.soft) {
    bool sat = false;
    for (int lit : c.lits)
      if (lit_true(lit)) {
        sat = true;
        break;
      }
    if (!sat) objective += w;
  }
  return {hard_ok, objective};
}

}  // namespace cssdec

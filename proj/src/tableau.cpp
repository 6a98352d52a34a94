#include "kg2/tableau.hpp"
#include "kg2/errors.hpp"

#include <algorithm>
#include <functional>

namespace kg2 {

// ---------------------------------------------------------------------------
// Pool and structures

int FormulaPool::intern(const Formula& f) { return intern_core(desugar(f)); }

int FormulaPool::intern_core(const Formula& f) {
  if (auto it = index_.find(f); it != index_.end()) return it->second;
  Entry e{f.op(), -1, -1, {}};
  if (f.op() == Op::Atom) e.atom = f.name();
  if (is_unary(f.op()) || is_binary(f.op())) e.a = intern_core(f.arg());
  if (is_binary(f.op())) e.b = intern_core(f.rhs());
  int id = static_cast<int>(entries_.size());
  entries_.push_back(std::move(e));
  formulas_.push_back(f);
  index_.emplace(f, id);
  return id;
}

Structure Structure::at(const FormulaPool& pool, int world, int side, int fid) {
  Op op = pool.at(fid).op;
  if (op == Op::Top) return constant(side == 1 ? 1 : 0);
  if (op == Op::Bot) return constant(side == 1 ? 0 : 1);
  return {Kind::At, static_cast<std::uint8_t>(side), world, fid};
}

// ---------------------------------------------------------------------------
// Branch

Branch::Branch(std::shared_ptr<FormulaPool> pool) : pool_(std::move(pool)) {}

bool Branch::trivial(const Constraint& c) {
  if (c.strict) return c.lhs.is_const(0) && c.rhs.is_const(1);
  return c.lhs == c.rhs || c.lhs.is_const(0) || c.rhs.is_const(1);
}

void Branch::note_rel(const Structure& s) {
  if (s.is_rel() && rel_set_.insert(s).second) rels_.push_back(s);
}

bool Branch::add(const Constraint& c) {
  if (trivial(c) || !set_.insert(c).second) return false;
  cons_.push_back(c);
  note_rel(c.lhs);
  note_rel(c.rhs);
  return true;
}

int Branch::new_world(int parent) {
  parents_.push_back(parent);
  return worlds_++;
}

std::optional<int> Branch::witness(int world, int side, int fid) const {
  auto it = witnesses_.find({world, side, fid});
  if (it == witnesses_.end()) return std::nullopt;
  return it->second;
}

int Branch::ensure_witness(int world, int side, int fid) {
  if (auto w = witness(world, side, fid)) return *w;
  int w = new_world(world);
  witnesses_[{world, side, fid}] = w;
  return w;
}

bool Branch::expanded(const RuleInstance& r) const {
  return expanded_.count({r.rule, r.trigger, r.role, r.rel_target}) > 0;
}

void Branch::mark_expanded(const RuleInstance& r) { expanded_.insert({r.rule, r.trigger, r.role, r.rel_target}); }

std::string Branch::show(const Structure& s) const {
  auto world = [](int w) { return w < 0 ? std::string("w''") : "w" + std::to_string(w); };
  switch (s.kind) {
    case Structure::Kind::Const: return s.tag ? "1" : "0";
    case Structure::Kind::At:
      return world(s.a) + ":" + std::to_string(s.tag) + ":" + print(pool_->formula(s.b));
    case Structure::Kind::Rel: return world(s.a) + (s.tag == 0 ? " R+ " : " R- ") + world(s.b);
  }
  return "?";
}

std::string Branch::show(const Constraint& c) const {
  return show(c.lhs) + (c.strict ? " < " : " <= ") + show(c.rhs);
}

// ---------------------------------------------------------------------------
// Rules

namespace {

constexpr int kFresh = -1;

Constraint le(Structure a, Structure b) { return {a, false, b}; }
Constraint lt(Structure a, Structure b) { return {a, true, b}; }

const Structure kZero = Structure::constant(0);
const Structure kOne = Structure::constant(1);

// Per-structure facts used by the side condition that prefers X < X' over X < 1 and 0 < X'.
struct SideFacts {
  std::unordered_set<Structure, StructureHash> strict_below_other;  // F with F < Y, Y != 1
  std::unordered_set<Structure, StructureHash> strict_above_other;  // F with Y < F, Y != 0
};

SideFacts side_facts(const Branch& b) {
  SideFacts f;
  for (const auto& c : b.constraints()) {
    if (!c.strict) continue;
    if (!c.rhs.is_const(1)) f.strict_below_other.insert(c.lhs);
    if (!c.lhs.is_const(0)) f.strict_above_other.insert(c.rhs);
  }
  return f;
}

// Emits every rule instance with premise constraint `idx` in role `role`
// (0: the decomposed formula is the lhs, 1: the rhs).
void instances_for(const Branch& b, std::size_t idx, int role, const std::function<void(RuleInstance&&)>& emit) {
  const Constraint& c = b.constraints()[idx];
  const Structure& F = role == 0 ? c.lhs : c.rhs;
  const Structure& X = role == 0 ? c.rhs : c.lhs;
  if (F.kind != Structure::Kind::At) return;
  const FormulaPool& pool = b.pool();
  const auto& e = pool.at(F.b);
  if (e.op == Op::Atom) return;

  const int w = F.a;
  const int i = F.tag;
  const bool strict = c.strict;
  const bool upper = role == 0;  // F <~ X
  auto at = [&](int world, int side, int fid) { return Structure::at(pool, world, side, fid); };
  // Same relation as the premise, with F replaced by G.
  auto same = [&](Structure G) { return upper ? Constraint{G, strict, X} : Constraint{X, strict, G}; };

  auto make = [&](std::string rule, int priority, std::vector<std::vector<Constraint>> alts) {
    RuleInstance r;
    r.rule = std::move(rule);
    r.priority = priority;
    r.trigger = idx;
    r.role = role;
    r.alternatives = std::move(alts);
    return r;
  };
  auto witness = [&](RuleInstance r) {
    r.witness_key = std::make_tuple(w, i, F.b);
    return r;
  };
  const std::string side = std::to_string(i);
  const std::string dir = upper ? "le" : "ge";

  switch (e.op) {
    case Op::Neg:
      emit(make("neg_" + side + "_" + dir, 0, {{same(at(w, 3 - i, e.a))}}));
      return;

    case Op::And: {
      Structure A = at(w, i, e.a), B = at(w, i, e.b);
      bool both = (i == 1) != upper;  // min bounded below or max bounded above
      if (both)
        emit(make("and_" + side + "_" + dir, 0, {{same(A), same(B)}}));
      else
        emit(make("and_" + side + "_" + dir, 1, {{same(A)}, {same(B)}}));
      return;
    }

    case Op::Impl: {
      Structure A = at(w, i, e.a), B = at(w, i, e.b);
      if (i == 1) {
        if (upper && !strict)
          emit(make("imp_1_leq", 1, {{le(kOne, X)}, {lt(X, kOne), le(B, X), lt(B, A)}}));
        else if (upper)
          emit(make("imp_1_lt", 0, {{lt(B, X), lt(B, A)}}));
        else
          emit(make("imp_1_ge", 1, {{le(A, B)}, {same(B)}}));
      } else {
        if (!upper && !strict)
          emit(make("imp_2_geq", 1, {{le(X, kZero)}, {lt(kZero, X), le(X, B), lt(A, B)}}));
        else if (!upper)
          emit(make("imp_2_gt", 0, {{lt(X, B), lt(A, B)}}));
        else
          emit(make("imp_2_le", 1, {{le(B, A)}, {same(B)}}));
      }
      return;
    }

    case Op::Box:
    case Op::Dia: {
      const bool box = e.op == Op::Box;
      const Sign sign = i == 1 ? Sign::Plus : Sign::Minus;
      const std::string name = std::string(box ? "box_" : "dia_") + side + "_";
      // Box on side 1 and diamond on side 2 are infima of residua; the others suprema of minima.
      const bool inf_of_residua = box == (i == 1);
      Structure Wpsi = at(kFresh, i, e.a);
      Structure Wrel = Structure::rel(sign, w, kFresh);
      if (inf_of_residua) {
        if (upper && !strict) {
          emit(witness(make(name + "leq", 2, {{le(kOne, X)}, {lt(X, kOne), lt(Wpsi, Wrel), le(Wpsi, X)}})));
        } else if (upper) {
          emit(witness(make(name + "lt", 2, {{lt(Wpsi, Wrel), lt(Wpsi, X)}})));
        } else {
          for (const auto& r : b.rel_terms()) {
            if (r.tag != (sign == Sign::Plus ? 0 : 1) || r.a != w) continue;
            Structure psi = at(r.b, i, e.a);
            RuleInstance ri = make(name + "ge", 3, {{same(psi)}, {le(r, psi)}});
            ri.rel_target = r.b;
            emit(std::move(ri));
          }
        }
      } else {
        if (!upper) {
          emit(witness(make(name + "ge", 2, {{same(Wrel), same(Wpsi)}})));
        } else {
          for (const auto& r : b.rel_terms()) {
            if (r.tag != (sign == Sign::Plus ? 0 : 1) || r.a != w) continue;
            RuleInstance ri = make(name + "le", 3, {{same(at(r.b, i, e.a))}, {same(r)}});
            ri.rel_target = r.b;
            emit(std::move(ri));
          }
        }
      }
      return;
    }

    default:
      throw InternalError("non-core connective on a tableau branch");
  }
}

Structure resolve(const Structure& s, int fresh) {
  if (s.kind == Structure::Kind::At && s.a == kFresh) return {s.kind, s.tag, fresh, s.b};
  if (s.kind == Structure::Kind::Rel && s.b == kFresh) return {s.kind, s.tag, s.a, fresh};
  return s;
}

bool uses_fresh(const std::vector<Constraint>& alt) {
  for (const auto& c : alt)
    for (const auto* s : {&c.lhs, &c.rhs})
      if ((s->kind == Structure::Kind::At && s->a == kFresh) || (s->kind == Structure::Kind::Rel && s->b == kFresh))
        return true;
  return false;
}

bool trivially_true(const Constraint& c) {
  if (c.strict) return c.lhs.is_const(0) && c.rhs.is_const(1);
  return c.lhs == c.rhs || c.lhs.is_const(0) || c.rhs.is_const(1);
}

// An alternative is already present when each of its conclusions is on the branch or trivially true.
bool alternative_present(const Branch& b, const RuleInstance& r, const std::vector<Constraint>& alt) {
  int fresh = kFresh;
  if (uses_fresh(alt)) {
    auto [w, i, fid] = *r.witness_key;
    auto existing = b.witness(w, i, fid);
    if (!existing) return false;
    fresh = *existing;
  }
  for (const auto& c : alt) {
    Constraint d{resolve(c.lhs, fresh), c.strict, resolve(c.rhs, fresh)};
    if (!trivially_true(d) && !b.contains(d)) return false;
  }
  return true;
}

void apply_alternative(Branch& b, const RuleInstance& r, std::size_t k) {
  const auto& alt = r.alternatives[k];
  int fresh = kFresh;
  if (uses_fresh(alt)) {
    auto [w, i, fid] = *r.witness_key;
    fresh = b.ensure_witness(w, i, fid);
  }
  for (const auto& c : alt) b.add({resolve(c.lhs, fresh), c.strict, resolve(c.rhs, fresh)});
}

// Visits unexpanded instances in trigger order, role order, relational-term order.
void for_each_instance(const Branch& b, const std::function<bool(RuleInstance&&)>& visit) {
  SideFacts facts = side_facts(b);
  bool stop = false;
  const auto& cons = b.constraints();
  for (std::size_t idx = 0; idx < cons.size() && !stop; ++idx) {
    const Constraint& c = cons[idx];
    for (int role = 0; role < 2 && !stop; ++role) {
      if (c.strict && role == 0 && c.rhs.is_const(1) && facts.strict_below_other.count(c.lhs)) continue;
      if (c.strict && role == 1 && c.lhs.is_const(0) && facts.strict_above_other.count(c.rhs)) continue;
      instances_for(b, idx, role, [&](RuleInstance&& r) {
        if (stop || b.expanded(r)) return;
        if (!visit(std::move(r))) stop = true;
      });
    }
  }
}

std::optional<RuleInstance> next_instance(const Branch& b) {
  std::optional<RuleInstance> best;
  for_each_instance(b, [&](RuleInstance&& r) {
    if (!best || r.priority < best->priority) best = std::move(r);
    return best->priority > 0;
  });
  return best;
}

// ---------------------------------------------------------------------------
// Constraint graph

struct Graph {
  std::vector<Structure> nodes;
  std::unordered_map<Structure, int, StructureHash> index;
  std::vector<std::vector<std::pair<int, bool>>> out;  // (target, strict)

  int node(const Structure& s) {
    auto [it, fresh] = index.emplace(s, static_cast<int>(nodes.size()));
    if (fresh) {
      nodes.push_back(s);
      out.emplace_back();
    }
    return it->second;
  }

  explicit Graph(const Branch& b) {
    node(kZero);
    node(kOne);
    for (const auto& c : b.constraints()) {
      int u = node(c.lhs), v = node(c.rhs);
      out[u].push_back({v, c.strict});
    }
  }
};

// Tarjan's algorithm; returns the component id of every node.
std::vector<int> components(const std::vector<std::vector<std::pair<int, bool>>>& out) {
  const int n = static_cast<int>(out.size());
  std::vector<int> idx(n, -1), low(n, 0), comp(n, -1), stack;
  std::vector<char> on(n, 0);
  int counter = 0, ncomp = 0;
  struct Frame {
    int v;
    std::size_t edge;
  };
  for (int s = 0; s < n; ++s) {
    if (idx[s] != -1) continue;
    std::vector<Frame> call = {{s, 0}};
    idx[s] = low[s] = counter++;
    stack.push_back(s);
    on[s] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.edge < out[f.v].size()) {
        int w = out[f.v][f.edge++].first;
        if (idx[w] == -1) {
          idx[w] = low[w] = counter++;
          stack.push_back(w);
          on[w] = 1;
          call.push_back({w, 0});
        } else if (on[w]) {
          low[f.v] = std::min(low[f.v], idx[w]);
        }
        continue;
      }
      int v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == idx[v]) {
        int x;
        do {
          x = stack.back();
          stack.pop_back();
          on[x] = 0;
          comp[x] = ncomp;
        } while (x != v);
        ++ncomp;
      }
    }
  }
  return comp;
}

}  // namespace

std::vector<RuleInstance> applicable_rules(const Branch& b) {
  std::vector<RuleInstance> out;
  for_each_instance(b, [&](RuleInstance&& r) {
    out.push_back(std::move(r));
    return true;
  });
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.priority < y.priority; });
  return out;
}

bool is_closed(const Branch& b) {
  Graph g(b);
  const int zero = 0, one = 1;
  auto out = g.out;
  for (int v = 2; v < static_cast<int>(out.size()); ++v) {
    out[zero].push_back({v, false});
    out[v].push_back({one, false});
  }
  out[zero].push_back({one, true});
  auto comp = components(out);
  for (int u = 0; u < static_cast<int>(out.size()); ++u)
    for (auto [v, strict] : out[u])
      if (strict && comp[u] == comp[v]) return true;
  return false;
}

Branch init_tableau(GoalKind goal, const Formula& phi) {
  auto pool = std::make_shared<FormulaPool>();
  int fid = pool->intern(phi);
  Branch b(pool);
  int w0 = b.new_world(-1);
  switch (goal) {
    case GoalKind::Falsify1: b.add(lt(Structure::at(*pool, w0, 1, fid), kOne)); break;
    case GoalKind::Falsify2: b.add(lt(kZero, Structure::at(*pool, w0, 2, fid))); break;
    case GoalKind::Satisfy:
      b.add(le(kOne, Structure::at(*pool, w0, 1, fid)));
      b.add(le(Structure::at(*pool, w0, 2, fid), kZero));
      break;
  }
  return b;
}

// ---------------------------------------------------------------------------
// Saturation

namespace {

struct SearchContext {
  const TableauLimits& limits;
  std::chrono::steady_clock::time_point start;
  std::string where;
  bool tracing;
  SaturationStats stats;
  std::vector<std::string> trace;
};

void check_limits(SearchContext& ctx, const Branch& b) {
  if (ctx.stats.states > ctx.limits.max_states) throw LimitExceeded(LimitExceeded::Resource::States, ctx.where);
  if (b.constraints().size() > ctx.limits.max_constraints)
    throw LimitExceeded(LimitExceeded::Resource::Constraints, ctx.where);
  if ((ctx.stats.states & 63) == 0) {
    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - ctx.start;
    if (dt.count() > ctx.limits.max_seconds) throw LimitExceeded(LimitExceeded::Resource::Time, ctx.where);
  }
}

void note(SearchContext& ctx, const Branch& b, const RuleInstance& r, std::size_t k, const char* extra = "") {
  if (!ctx.tracing) return;
  std::string trig = b.show(b.constraints()[r.trigger]);
  if (r.rel_target >= 0) trig += " ; via w" + std::to_string(r.rel_target);
  ctx.trace.push_back(r.rule + " | " + trig + " | alt " + std::to_string(k + 1) + "/" +
                      std::to_string(r.alternatives.size()) + extra);
}

bool search(Branch& b, SearchContext& ctx, std::optional<Branch>& found) {
  for (;;) {
    ctx.stats.max_constraints = std::max(ctx.stats.max_constraints, b.constraints().size());
    if (is_closed(b)) {
      b.set_status(Branch::Status::Closed);
      ++ctx.stats.branches_closed;
      if (ctx.tracing) ctx.trace.push_back("closed");
      return false;
    }
    auto inst = next_instance(b);
    if (!inst) {
      b.set_status(Branch::Status::CompleteOpen);
      found = b;
      if (ctx.tracing) ctx.trace.push_back("complete open");
      return true;
    }
    ++ctx.stats.states;
    check_limits(ctx, b);
    const RuleInstance& r = *inst;

    std::optional<std::size_t> present;
    for (std::size_t k = 0; k < r.alternatives.size() && !present; ++k)
      if (alternative_present(b, r, r.alternatives[k])) present = k;
    if (present) {
      b.mark_expanded(r);
      note(ctx, b, r, *present, " (present)");
      continue;
    }
    if (r.alternatives.size() == 1) {
      b.mark_expanded(r);
      note(ctx, b, r, 0);
      apply_alternative(b, r, 0);
      continue;
    }
    for (std::size_t k = 0; k < r.alternatives.size(); ++k) {
      Branch child = b;
      child.mark_expanded(r);
      note(ctx, child, r, k);
      apply_alternative(child, r, k);
      if (search(child, ctx, found)) return true;
    }
    b.set_status(Branch::Status::Closed);
    return false;
  }
}

}  // namespace

SaturationResult saturate(const Branch& b, const TableauLimits& limits, bool trace) {
  SearchContext ctx{limits, std::chrono::steady_clock::now(), "", trace, {}, {}};
  Branch work = b;
  SaturationResult out;
  out.closed = !search(work, ctx, out.open);
  out.stats = ctx.stats;
  out.trace = std::move(ctx.trace);
  return out;
}

// ---------------------------------------------------------------------------
// Extraction

namespace {

struct ValueOf {
  const Model& m;
  const Branch& b;
  Evaluator ev;

  ValueOf(const Model& model, const Branch& br) : m(model), b(br), ev(model) {}

  Rational operator()(const Structure& s) {
    switch (s.kind) {
      case Structure::Kind::Const: return s.tag;
      case Structure::Kind::Rel:
        return m.get_rel(s.tag == 0 ? Sign::Plus : Sign::Minus, "w" + std::to_string(s.a), "w" + std::to_string(s.b));
      case Structure::Kind::At: {
        TruthPair v = ev.eval(static_cast<std::size_t>(s.a), b.pool().formula(s.b));
        return s.tag == 1 ? v.pos : v.neg;
      }
    }
    return 0;
  }
};

bool atomic(const FormulaPool& pool, const Structure& s) {
  return s.kind == Structure::Kind::Rel || (s.kind == Structure::Kind::At && pool.at(s.b).op == Op::Atom);
}

}  // namespace

bool realises(const Model& m, const Branch& b) {
  ValueOf val(m, b);
  for (const auto& c : b.constraints()) {
    Rational l = val(c.lhs), r = val(c.rhs);
    if (c.strict ? !(l < r) : !(l <= r)) return false;
  }
  return true;
}

Extraction extract_model(const Branch& b) {
  Graph g(b);
  const int n = static_cast<int>(g.nodes.size());
  const int zero = 0, one = 1;

  // reach[x][y]: 0 none, 1 via non-strict edges only, 2 via a path with a strict edge.
  std::vector<std::vector<std::uint8_t>> reach(n, std::vector<std::uint8_t>(n, 0));
  for (int s = 0; s < n; ++s) {
    std::vector<std::uint8_t>& r = reach[s];
    std::vector<std::pair<int, std::uint8_t>> stack;
    for (auto [v, strict] : g.out[s]) stack.push_back({v, strict ? 2 : 1});
    while (!stack.empty()) {
      auto [v, k] = stack.back();
      stack.pop_back();
      if (r[v] >= k) continue;
      r[v] = k;
      for (auto [u, strict] : g.out[v]) stack.push_back({u, strict ? std::uint8_t(2) : k});
    }
  }
  auto path = [&](int x, int y) { return reach[x][y] > 0; };
  auto strict_path = [&](int x, int y) { return reach[x][y] == 2; };

  std::vector<char> in_zero(n, 0), in_top(n, 0);
  for (int x = 0; x < n; ++x) in_zero[x] = x == zero || path(x, zero);
  for (int x = 0; x < n; ++x) {
    bool top = x == one || path(one, x);
    if (!top && g.nodes[x].is_rel() && !in_zero[x]) {
      top = true;
      for (int y = 0; y < n && top; ++y) top = !strict_path(x, y);
    }
    in_top[x] = top;
  }
  std::vector<int> tops;
  for (int x = 0; x < n; ++x)
    if (in_top[x]) tops.push_back(x);
  for (int t : tops)
    for (int y = 0; y < n; ++y)
      if (path(t, y)) in_top[y] = 1;
  for (int x = 0; x < n; ++x)
    if (in_top[x] && in_zero[x]) throw InternalError("extraction forces a structure to both 0 and 1");

  // A structure must be positive iff some path into it carries a strict edge
  // (every structure is implicitly bounded below by 0).
  std::vector<char> strict_in(n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n && !strict_in[x]; ++y) strict_in[x] = strict_path(y, x);

  const FormulaPool& pool = b.pool();
  std::vector<int> middle;
  std::size_t atomic_count = 0;
  for (int x = 0; x < n; ++x) {
    if (!atomic(pool, g.nodes[x])) continue;
    ++atomic_count;
    if (in_top[x] || in_zero[x]) continue;
    if (strict_in[x])
      middle.push_back(x);
    else
      in_zero[x] = 1;
  }

  // Order classes of the remaining atomic structures, ranked above 0 and below 1.
  std::vector<int> cls(n, -1);
  int nclasses = 0;
  for (std::size_t i = 0; i < middle.size(); ++i) {
    int x = middle[i];
    if (cls[x] != -1) continue;
    cls[x] = nclasses;
    for (std::size_t j = i + 1; j < middle.size(); ++j) {
      int y = middle[j];
      if (cls[y] == -1 && path(x, y) && path(y, x)) cls[y] = nclasses;
    }
    ++nclasses;
  }
  std::vector<std::vector<char>> below(nclasses, std::vector<char>(nclasses, 0));
  for (int x : middle)
    for (int y : middle)
      if (cls[x] != cls[y] && path(x, y)) below[cls[x]][cls[y]] = 1;
  const int denom = nclasses + 1;
  std::vector<Rational> rank(nclasses);
  for (int c = 0; c < nclasses; ++c) {
    int k = 1;
    for (int d = 0; d < nclasses; ++d) k += below[d][c];
    rank[c] = Rational(k) / denom;
  }

  Extraction out;
  for (int w = 0; w < b.world_count(); ++w) out.model.worlds.push_back("w" + std::to_string(w));
  out.root = "w0";
  for (int x = 0; x < n; ++x) {
    const Structure& s = g.nodes[x];
    if (!atomic(pool, s)) continue;
    Rational v = in_top[x] ? Rational(1) : in_zero[x] ? Rational(0) : rank[cls[x]];
    if (s.is_rel())
      out.model.set_rel(s.tag == 0 ? Sign::Plus : Sign::Minus, out.model.worlds[s.a], out.model.worlds[s.b], v);
    else
      out.model.set_val(s.tag, pool.at(s.b).atom, out.model.worlds[s.a], v);
  }
  out.class_count = static_cast<std::size_t>(denom);
  out.atomic_structures = atomic_count;

  ValueOf val(out.model, b);
  for (const auto& c : b.constraints()) {
    Rational l = val(c.lhs), r = val(c.rhs);
    if (c.strict ? !(l < r) : !(l <= r))
      throw InternalError("extracted model does not realise " + b.show(c) + " (" + to_string(l) + " vs " +
                          to_string(r) + ")");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Entry points

namespace {

SaturationResult run_goal(GoalKind goal, const Formula& phi, const TableauLimits& limits, bool trace,
                          const char* where) {
  Branch b = init_tableau(goal, phi);
  try {
    return saturate(b, limits, trace);
  } catch (const LimitExceeded& e) {
    throw LimitExceeded(e.resource, where);
  }
}

}  // namespace

ProveResult prove_valid(const Formula& phi, const TableauLimits& limits, bool trace) {
  ProveResult out;
  const GoalKind goals[2] = {GoalKind::Falsify1, GoalKind::Falsify2};
  const char* names[2] = {"falsify-1 tableau", "falsify-2 tableau"};
  for (int k = 0; k < 2; ++k) {
    SaturationResult r = run_goal(goals[k], phi, limits, trace, names[k]);
    out.stats[k] = r.stats;
    for (auto& line : r.trace) out.trace.push_back(std::string(k == 0 ? "[1] " : "[2] ") + line);
    if (r.closed) continue;
    Extraction x = extract_model(*r.open);
    TruthPair v = eval(x.model, x.root, phi);
    if (k == 0 ? !(v.pos < 1) : !(v.neg > 0))
      throw InternalError("extracted countermodel does not falsify the formula");
    out.model = std::move(x.model);
    out.world = x.root;
    out.side = k + 1;
    return out;
  }
  out.valid = true;
  return out;
}

SatResult check_sat(const Formula& phi, const TableauLimits& limits, bool trace) {
  SatResult out;
  SaturationResult r = run_goal(GoalKind::Satisfy, phi, limits, trace, "satisfiability tableau");
  out.stats = r.stats;
  out.trace = std::move(r.trace);
  if (r.closed) return out;
  Extraction x = extract_model(*r.open);
  if (eval(x.model, x.root, phi) != TruthPair{1, 0})
    throw InternalError("extracted model does not satisfy the formula");
  out.sat = true;
  out.model = std::move(x.model);
  out.world = x.root;
  return out;
}

}  // namespace kg2

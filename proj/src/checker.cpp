#include "tickcheck/checker.hpp"

#include <algorithm>
#include <exception>
#include <thread>
#include <unordered_map>

namespace tickcheck {

const char* to_string(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Satisfied:
      return "satisfied";
    case Verdict::Kind::Counterexample:
      return "counterexample";
    case Verdict::Kind::BoundReached:
      return "bound reached";
    case Verdict::Kind::PreconditionFailed:
      return "precondition failed";
  }
  return "?";
}

namespace {

struct Node {
  GlobalState state;
  std::size_t parent;
  std::string label;
  TimeValue duration;
  std::optional<std::size_t> rule;
  std::size_t depth = 0;
  std::size_t zero_run = 0;
};

TimedPath path_to(const std::vector<Node>& nodes, std::size_t i) {
  std::vector<std::size_t> chain;
  for (std::size_t k = i; k != 0; k = nodes[k].parent) chain.push_back(k);
  TimedPath path;
  path.initial = nodes[0].state;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    const Node& n = nodes[*it];
    path.steps.push_back(Step{n.label, n.duration, n.state, n.rule});
  }
  return path;
}

// Successors of every frontier state, computed on up to `jobs` threads and
// returned in frontier order.
std::vector<std::vector<Step>> expand(const Model& model, const std::vector<Node>& nodes,
                                      const std::vector<std::size_t>& frontier, const SearchOptions& opts,
                                      const StateCheck& check) {
  std::vector<std::vector<Step>> out(frontier.size());
  std::vector<std::exception_ptr> errors(frontier.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      try {
        const GlobalState& s = nodes[frontier[k]].state;
        if (check) {
          if (auto msg = check(s)) throw InternalError(*msg);
        }
        out[k] = successors(model, s, opts.strategy);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  std::size_t jobs = std::max<std::size_t>(1, opts.jobs);
  if (jobs == 1 || frontier.size() < 2 * jobs) {
    work(0, frontier.size());
  } else {
    std::vector<std::thread> threads;
    std::size_t chunk = (frontier.size() + jobs - 1) / jobs;
    for (std::size_t b = 0; b < frontier.size(); b += chunk) {
      threads.emplace_back(work, b, std::min(frontier.size(), b + chunk));
    }
    for (auto& t : threads) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::string stats(std::size_t states, std::size_t depth, std::size_t frontier) {
  return std::to_string(states) + " states explored, depth " + std::to_string(depth) + ", frontier " +
         std::to_string(frontier);
}

}  // namespace

SearchResult search(const Model& model, const GlobalState& init, const std::function<bool(const GlobalState&)>& goal,
                    std::size_t n, const SearchOptions& opts, const TickMonitor& monitor, const StateCheck& check) {
  SearchResult result;
  std::vector<Node> nodes;
  std::unordered_map<std::string, std::size_t> index;
  nodes.push_back(Node{init, 0, "", 0, std::nullopt, 0, 0});
  index.emplace(init.config.key(), 0);
  auto finish = [&](Verdict::Kind kind, std::size_t depth, std::size_t frontier) {
    result.kind = kind;
    result.states = nodes.size();
    result.depth = depth;
    result.frontier = frontier;
    if (result.message.empty()) result.message = stats(nodes.size(), depth, frontier);
    return result;
  };
  if (n > 0 && goal(init)) {
    result.matches.push_back(path_to(nodes, 0));
    if (result.matches.size() >= n) return finish(Verdict::Kind::Counterexample, 0, 0);
  }
  bool bounded = false;
  std::vector<std::size_t> frontier{0};
  std::size_t depth = 0;
  while (!frontier.empty()) {
    if (opts.step_bound && depth >= *opts.step_bound) {
      bounded = true;
      break;
    }
    auto succ = expand(model, nodes, frontier, opts, check);
    std::vector<std::size_t> next;
    for (std::size_t k = 0; k < frontier.size(); ++k) {
      std::size_t from = frontier[k];
      for (auto& step : succ[k]) {
        if (opts.time_bound && step.target.elapsed > *opts.time_bound) {
          bounded = true;
          continue;
        }
        if (step.is_tick() && monitor) {
          if (auto msg = monitor(nodes[from].state, step.target)) {
            result.witness = path_to(nodes, from);
            result.witness.steps.push_back(step);
            result.message = *msg;
            return finish(Verdict::Kind::PreconditionFailed, depth, frontier.size());
          }
        }
        std::size_t zero_run = step.duration.is_zero() ? nodes[from].zero_run + 1 : 0;
        if (zero_run > opts.zeno_limit) {
          result.witness = path_to(nodes, from);
          result.witness.steps.push_back(step);
          result.message = "more than " + std::to_string(opts.zeno_limit) + " consecutive zero-duration steps";
          return finish(Verdict::Kind::PreconditionFailed, depth, frontier.size());
        }
        std::string key = step.target.config.key();
        auto it = index.find(key);
        if (it != index.end()) {
          // With a time bound a state reached earlier in time may explore further.
          Node& old = nodes[it->second];
          if (opts.time_bound && step.target.elapsed < old.state.elapsed) {
            old = Node{std::move(step.target), from, step.label, step.duration, step.rule, depth + 1, zero_run};
            next.push_back(it->second);
          }
          continue;
        }
        std::size_t id = nodes.size();
        nodes.push_back(Node{std::move(step.target), from, step.label, step.duration, step.rule, depth + 1, zero_run});
        index.emplace(std::move(key), id);
        next.push_back(id);
        if (n > 0 && goal(nodes[id].state)) {
          result.matches.push_back(path_to(nodes, id));
          if (result.matches.size() >= n) return finish(Verdict::Kind::Counterexample, depth + 1, next.size());
        }
        if (opts.state_bound && nodes.size() >= *opts.state_bound) {
          return finish(Verdict::Kind::BoundReached, depth + 1, next.size());
        }
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    frontier = std::move(next);
    if (!frontier.empty()) ++depth;
  }
  return finish(bounded ? Verdict::Kind::BoundReached : Verdict::Kind::Satisfied, depth, frontier.size());
}

SearchResult search(const Model& model, const GlobalState& init, const std::string& predicate, std::size_t n,
                    const SearchOptions& opts) {
  ExprPtr pred = parse_predicate(model, predicate);
  auto goal = [&](const GlobalState& s) {
    EvalContext ctx;
    ctx.model = &model;
    ctx.config = &s.config;
    return evaluate_bool(*pred, {}, ctx);
  };
  return search(model, init, goal, n, opts);
}

TickMonitor tick_invariance_monitor(const Model& model, std::vector<Proposition> props) {
  return [&model, props = std::move(props)](const GlobalState& from,
                                            const GlobalState& to) -> std::optional<std::string> {
    for (const auto& p : props) {
      bool before = holds(model, from.config, p);
      bool after = holds(model, to.config, p);
      if (before != after) {
        return "proposition " + p.str() + " changes from " + (before ? "true" : "false") + " to " +
               (after ? "true" : "false") + " on a tick step";
      }
    }
    return std::nullopt;
  };
}

namespace {

Verdict from_search(SearchResult r) {
  Verdict v;
  v.kind = r.kind;
  v.message = std::move(r.message);
  v.states = r.states;
  v.depth = r.depth;
  v.frontier = r.frontier;
  if (r.kind == Verdict::Kind::Counterexample) {
    v.path = std::move(r.matches.front());
  } else if (r.kind == Verdict::Kind::PreconditionFailed) {
    v.path = std::move(r.witness);
  }
  return v;
}

}  // namespace

Verdict check_instrumented(const TransformResult& t, const SearchOptions& opts) {
  std::vector<Proposition> props{t.p};
  if (t.kind == TransformResult::Kind::BoundedResponse && !(t.q == t.p)) props.push_back(t.q);
  TickMonitor monitor;
  if (opts.monitor_tick_invariance) monitor = tick_invariance_monitor(t.model, props);
  StateCheck check;
  if (opts.assert_exclusivity) {
    check = [&t](const GlobalState& s) { return check_exclusivity(t, s.config); };
  }
  auto goal = [&t](const GlobalState& s) { return clock_violation(t, s.config); };
  return from_search(search(t.model, GlobalState{t.init, 0}, goal, 1, opts, monitor, check));
}

Verdict check_bounded_response(const Model& model, const Configuration& init, const Proposition& p,
                               const Proposition& q, const TimeValue& r, const SearchOptions& opts,
                               bool with_liveness) {
  TransformResult t = br_transform(model, init, p, q, r);
  Verdict v = check_instrumented(t, opts);
  if (v.kind != Verdict::Kind::Satisfied || !with_liveness) return v;
  Verdict live = check_response_liveness(model, init, p, q, opts);
  return live.kind == Verdict::Kind::Satisfied ? v : live;
}

Verdict check_min_separation(const Model& model, const Configuration& init, const Proposition& p, const TimeValue& r,
                             const SearchOptions& opts) {
  return check_instrumented(ms_transform(model, init, p, r), opts);
}

namespace {

struct Edge {
  std::size_t to;
  std::size_t step;  // index into the source's successor list
};

struct Graph {
  std::vector<Node> nodes;
  std::vector<std::vector<Step>> succ;
  std::vector<std::vector<Edge>> edges;
  bool bounded = false;
};

Graph explore(const Model& model, const GlobalState& init, const SearchOptions& opts) {
  Graph g;
  std::unordered_map<std::string, std::size_t> index;
  g.nodes.push_back(Node{init, 0, "", 0, std::nullopt, 0, 0});
  index.emplace(init.config.key(), 0);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (opts.step_bound && g.nodes[i].depth >= *opts.step_bound) {
      g.bounded = true;
      g.succ.emplace_back();
      g.edges.emplace_back();
      continue;
    }
    g.succ.push_back(successors(model, g.nodes[i].state, opts.strategy));
    g.edges.emplace_back();
    const auto& succ = g.succ.back();
    for (std::size_t k = 0; k < succ.size(); ++k) {
      const Step& s = succ[k];
      if (opts.time_bound && s.target.elapsed > *opts.time_bound) {
        g.bounded = true;
        continue;
      }
      std::string key = s.target.config.key();
      auto [it, fresh] = index.emplace(key, g.nodes.size());
      if (fresh) {
        g.nodes.push_back(Node{s.target, i, s.label, s.duration, s.rule, g.nodes[i].depth + 1, 0});
        if (opts.state_bound && g.nodes.size() > *opts.state_bound) {
          g.bounded = true;
          return g;
        }
      }
      g.edges[i].push_back(Edge{it->second, k});
    }
  }
  return g;
}

// Tarjan's algorithm restricted to `inside` nodes; returns component ids.
std::vector<std::size_t> components(const Graph& g, const std::vector<bool>& inside) {
  const std::size_t n = g.nodes.size();
  const std::size_t none = std::size_t(-1);
  std::vector<std::size_t> idx(n, none), low(n, 0), comp(n, none);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0, ncomp = 0;
  struct Frame {
    std::size_t v;
    std::size_t next;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (!inside[root] || idx[root] != none) continue;
    std::vector<Frame> call{{root, 0}};
    idx[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      const auto& out = g.edges[f.v];
      if (f.next < out.size()) {
        std::size_t w = out[f.next++].to;
        if (!inside[w]) continue;
        if (idx[w] == none) {
          idx[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], idx[w]);
        }
        continue;
      }
      std::size_t v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == idx[v]) {
        while (true) {
          std::size_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = ncomp;
          if (w == v) break;
        }
        ++ncomp;
      }
    }
  }
  return comp;
}

// BFS inside one component from `start`; returns the edge sequence of a
// shortest cycle back to `start`.
std::vector<std::pair<std::size_t, std::size_t>> cycle_in(const Graph& g, const std::vector<std::size_t>& comp,
                                                          std::size_t start) {
  const std::size_t none = std::size_t(-1);
  std::vector<std::pair<std::size_t, std::size_t>> via(g.nodes.size(), {none, none});
  std::vector<std::size_t> queue{start};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    std::size_t v = queue[qi];
    for (const auto& e : g.edges[v]) {
      if (comp[e.to] != comp[start]) continue;
      if (e.to == start) {
        std::vector<std::pair<std::size_t, std::size_t>> out{{v, e.step}};
        for (std::size_t u = v; u != start; u = via[u].first) out.push_back(via[u]);
        std::reverse(out.begin(), out.end());
        return out;
      }
      if (via[e.to].first != none) continue;
      via[e.to] = {v, e.step};
      queue.push_back(e.to);
    }
  }
  return {};
}

}  // namespace

Verdict check_response_liveness(const Model& model, const Configuration& init, const Proposition& p,
                                const Proposition& q, const SearchOptions& opts) {
  Graph g = explore(model, GlobalState{init, 0}, opts);
  Verdict v;
  v.states = g.nodes.size();
  if (g.bounded) {
    v.kind = Verdict::Kind::BoundReached;
    v.message = "reachable graph not exhausted (" + std::to_string(g.nodes.size()) + " states)";
    return v;
  }
  const std::size_t n = g.nodes.size();
  std::vector<bool> not_q(n), is_p(n);
  for (std::size_t i = 0; i < n; ++i) {
    not_q[i] = !holds(model, g.nodes[i].state.config, q);
    is_p[i] = holds(model, g.nodes[i].state.config, p);
  }
  auto comp = components(g, not_q);
  std::vector<std::size_t> comp_size;
  for (std::size_t i = 0; i < n; ++i) {
    if (!not_q[i]) continue;
    if (comp[i] >= comp_size.size()) comp_size.resize(comp[i] + 1, 0);
    ++comp_size[comp[i]];
  }
  // A ¬q state is "trapped" if it lies on a ¬q cycle or is a deadlock.
  std::vector<bool> trapped(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (!not_q[i]) continue;
    bool self = g.edges[i].empty();
    for (const auto& e : g.edges[i]) self = self || e.to == i;
    trapped[i] = self || comp_size[comp[i]] > 1;
  }
  // Backward reachability to trapped states within ¬q, remembering the hop.
  const std::size_t none = std::size_t(-1);
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> rev(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& e : g.edges[i]) {
      if (not_q[i] && not_q[e.to]) rev[e.to].push_back({i, e.step});
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> hop(n, {none, none});
  std::vector<bool> doomed(n, false);
  std::vector<std::size_t> queue;
  for (std::size_t i = 0; i < n; ++i) {
    if (trapped[i]) {
      doomed[i] = true;
      queue.push_back(i);
    }
  }
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    std::size_t w = queue[qi];
    for (const auto& [u, step] : rev[w]) {
      if (doomed[u]) continue;
      doomed[u] = true;
      hop[u] = {w, step};
      queue.push_back(u);
    }
  }
  std::size_t start = none;
  for (std::size_t i = 0; i < n && start == none; ++i) {
    if (is_p[i] && doomed[i]) start = i;
  }
  if (start == none) {
    v.kind = Verdict::Kind::Satisfied;
    v.message = std::to_string(n) + " states, no p-state can avoid q forever";
    return v;
  }
  TimedPath path = path_to(g.nodes, start);
  auto append = [&](std::size_t from, std::size_t step) {
    Step s = g.succ[from][step];
    s.target.elapsed = path.last().elapsed + s.duration;
    path.steps.push_back(std::move(s));
  };
  std::size_t cur = start;
  while (!trapped[cur]) {
    auto [next, step] = hop[cur];
    append(cur, step);
    cur = next;
  }
  v.kind = Verdict::Kind::Counterexample;
  v.loop_start = path.steps.size();
  bool self = false;
  for (const auto& e : g.edges[cur]) self = self || e.to == cur;
  if (g.edges[cur].empty()) {
    path.end = TimedPath::End::Deadlocked;
    v.message = "a p-state reaches a deadlock without q";
  } else {
    auto cyc = self ? std::vector<std::pair<std::size_t, std::size_t>>{} : cycle_in(g, comp, cur);
    if (self) {
      for (const auto& e : g.edges[cur]) {
        if (e.to == cur) {
          cyc.push_back({cur, e.step});
          break;
        }
      }
    }
    for (const auto& [from, step] : cyc) append(from, step);
    v.message = "a p-state reaches a cycle of states without q";
  }
  v.path = std::move(path);
  return v;
}

std::vector<ReplayStep> record(const Model& model, const TimedPath& path, const SamplingStrategy& strategy) {
  std::vector<ReplayStep> out;
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    const Step& step = path.steps[i];
    std::string key = step.target.config.key();
    std::size_t choice = 0;
    bool found = false;
    for (const auto& s : successors(model, path.state(i), strategy)) {
      if (s.label != step.label || s.duration != step.duration) continue;
      if (s.target.config.key() == key) {
        found = true;
        break;
      }
      ++choice;
    }
    if (!found) throw IntegrityError("step " + std::to_string(i + 1) + " (" + step.label + ") is not a successor");
    out.push_back(ReplayStep{step.label, step.duration, choice});
  }
  return out;
}

TimedPath replay(const Model& model, const GlobalState& init, const std::vector<ReplayStep>& steps,
                 const SamplingStrategy& strategy) {
  TimedPath path;
  path.initial = init;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const ReplayStep& rs = steps[i];
    std::size_t seen = 0;
    bool done = false;
    for (auto& s : successors(model, path.last(), strategy)) {
      if (s.label != rs.label || s.duration != rs.duration) continue;
      if (seen++ == rs.choice) {
        path.steps.push_back(std::move(s));
        done = true;
        break;
      }
    }
    if (!done) {
      throw IntegrityError("replay diverges at step " + std::to_string(i + 1) + ": no successor " + rs.label + " of duration " +
                           rs.duration.str() + " with choice " + std::to_string(rs.choice));
    }
  }
  return path;
}

}  // namespace tickcheck

#include "pampac/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <numeric>
#include <optional>
#include <ostream>
#include <thread>

#include "pampac/io/dot.hpp"
#include "pampac/kernels.hpp"
#include "pampac/worker_pool.hpp"

namespace pampac {

std::string_view termination_name(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::reached_lambda_max: return "REACHED_LAMBDA_MAX";
    case TerminationReason::step_underflow: return "STEP_UNDERFLOW";
    case TerminationReason::iteration_budget: return "ITERATION_BUDGET";
    case TerminationReason::evaluation_failure: return "EVALUATION_FAILURE";
  }
  return "UNKNOWN";
}

BootstrapResult bootstrap(const ProblemDefinition& problem, const RunParams& params,
                          std::span<const double> initial_point) {
  if (params.delta_lambda == 0.0 || !std::isfinite(params.delta_lambda)) {
    throw std::invalid_argument("bootstrap: DELTA_LAMBDA must be nonzero");
  }
  const auto r0 = residual_norm(problem, initial_point);
  if (!r0) throw BootstrapError("bootstrap: residual at the initial point is not finite");
  if (*r0 > params.tol_residual) {
    throw std::invalid_argument("bootstrap: initial point is not converged (residual " + std::to_string(*r0) + ")");
  }

  const auto li = static_cast<std::size_t>(problem.lambda_index);
  const Direction axis = Direction::axis(initial_point.size(), li);
  Vector zeta(initial_point.begin(), initial_point.end());
  zeta[li] += params.delta_lambda;

  auto r = residual_norm(problem, zeta);
  for (int k = 0; k < params.max_iter && !(r && *r <= params.tol_residual); ++k) {
    auto next = corrector_step(problem, zeta, axis, initial_point, params.delta_lambda);
    if (!next) throw BootstrapError("bootstrap: corrector step failed at the shifted parameter");
    zeta = std::move(*next);
    r = residual_norm(problem, zeta);
  }
  if (!r || *r > params.tol_residual) {
    throw BootstrapError("bootstrap: neighbour point did not converge within MAX_ITER steps");
  }

  auto secant = Direction::secant(initial_point, zeta);
  if (!secant) throw BootstrapError("bootstrap: neighbour point coincides with the initial point");
  if (((*secant)[li] < 0.0) != (params.h_init < 0.0)) secant = secant->negated();
  return {CurvePoint{Vector(initial_point.begin(), initial_point.end()), *r0}, *secant};
}

namespace {

template <class Fn>
void for_each_bfs(TreeNode& root, Fn&& fn) {
  std::deque<std::pair<TreeNode*, int>> queue{{&root, 0}};
  while (!queue.empty()) {
    auto [node, depth] = queue.front();
    queue.pop_front();
    fn(*node, depth);
    for (auto& c : node->children) queue.emplace_back(c.get(), depth + 1);
  }
}

}  // namespace

std::size_t occupied_slots(const Tree& tree) { return tree.root ? tree.root->subtree_size() - 1 : 0; }

std::size_t spawn_round(Tree& tree, const RunParams& params, std::size_t budget) {
  std::vector<std::pair<TreeNode*, int>> leaves;
  for_each_bfs(*tree.root, [&](TreeNode& n, int depth) {
    if (n.is_leaf() && depth < params.max_depth) leaves.emplace_back(&n, depth);
  });

  std::vector<double> scalings = params.scalings;
  std::sort(scalings.begin(), scalings.end());

  std::size_t spawned = 0;
  for (auto [leaf, depth] : leaves) {
    if (spawned == budget) break;
    const Direction dir = leaf == tree.root.get() ? tree.root_tangent
                                                  : secant_direction(*leaf).value_or(leaf->t_init);
    for (double t : scalings) {
      if (spawned == budget) break;
      const double h = t * leaf->h_base;
      if (h > params.h_max) continue;
      leaf->add_child(std::make_unique<TreeNode>(leaf->zeta, dir, h, leaf->nu, h));
      ++spawned;
    }
  }
  return spawned;
}

namespace {

struct StepOutcome {
  std::optional<Vector> zeta;
  double residual = 0.0;
  std::optional<double> residual_before;
};

}  // namespace

RoundStats corrector_round(Tree& tree, const ProblemDefinition& problem, const RunParams& params, WorkerPool& pool) {
  std::vector<TreeNode*> active;
  for_each_bfs(*tree.root, [&](TreeNode& n, int) {
    if (n.color == Color::red || n.color == Color::yellow) active.push_back(&n);
  });

  RoundStats stats;
  stats.steps = active.size();
  std::vector<StepOutcome> outcomes(active.size());
  std::atomic<std::size_t> in_flight{0};
  std::atomic<std::size_t> peak{0};

  pool.run(active.size(), [&](std::size_t i) {
    const std::size_t now = in_flight.fetch_add(1) + 1;
    std::size_t seen = peak.load();
    while (now > seen && !peak.compare_exchange_weak(seen, now)) {
    }
    const TreeNode& node = *active[i];
    StepOutcome& out = outcomes[i];
    bool ok = true;
    if (node.nu == 0) {
      out.residual_before = residual_norm(problem, node.zeta);
      ok = out.residual_before.has_value();
    }
    if (ok) {
      out.zeta = corrector_step(problem, node.zeta, node.t_init, node.z_init, node.h_init);
      if (out.zeta) {
        const auto r = residual_norm(problem, *out.zeta);
        if (r) {
          out.residual = *r;
        } else {
          out.zeta.reset();
        }
      }
    }
    in_flight.fetch_sub(1);
  });
  stats.max_in_flight = peak.load();

  for (std::size_t i = 0; i < active.size(); ++i) {
    TreeNode& node = *active[i];
    StepOutcome& out = outcomes[i];
    const std::optional<double> previous = node.nu == 0 ? out.residual_before : node.residual_norm_current;
    ++node.nu;
    if (!out.zeta) {
      node.color = Color::black;
      ++stats.failures;
      continue;
    }
    node.zeta = std::move(*out.zeta);
    node.residual_norm_previous = previous;
    node.residual_norm_current = out.residual;
    node.color = assign_color(node, params);
    if (node.color == Color::yellow && yellow_stalled(node.nu, node.residual_norm_current, previous, params)) {
      node.color = Color::black;
    }
    if (node.color == Color::black) ++stats.failures;
  }
  return stats;
}

namespace {

bool can_advance(const Tree& tree) {
  return tree.root->children.size() == 1 && tree.root->children.front()->color == Color::green;
}

void advance_once(Tree& tree, const PointSink& sink) {
  std::unique_ptr<TreeNode> child = std::move(tree.root->children.front());
  if (sink) sink(CurvePoint{tree.root->zeta, tree.root->residual_norm_current});
  tree.root_tangent = Direction::secant(tree.root->zeta, child->zeta).value_or(child->t_init);
  tree.root = std::move(child);
}

}  // namespace

std::size_t advance_root(Tree& tree, const PointSink& sink) {
  std::size_t emitted = 0;
  while (can_advance(tree)) {
    advance_once(tree, sink);
    ++emitted;
  }
  return emitted;
}

namespace {

class Run {
 public:
  Run(const ProblemDefinition& problem, const RunParams& params, const PointSink& sink, const EngineOptions& options)
      : problem_(problem), params_(params), sink_(sink), options_(options) {}

  ContinuationResult execute(std::span<const double> initial_point);

 private:
  bool emit(const CurvePoint& p);
  bool crossed(const TreeNode& node) const;
  void log_round(std::size_t spawned, const RoundStats& stats) const;
  std::size_t thread_count() const;

  const ProblemDefinition& problem_;
  const RunParams& params_;
  const PointSink& sink_;
  const EngineOptions& options_;
  ContinuationResult result_;
  bool emission_failed_ = false;
};

bool Run::emit(const CurvePoint& p) {
  const auto r = residual_norm(problem_, p.z);
  if (!r || *r > params_.tol_residual) {
    emission_failed_ = true;
    return false;
  }
  CurvePoint fresh{p.z, *r};
  if (sink_) sink_(fresh);
  result_.accepted_points.push_back(std::move(fresh));
  return true;
}

bool Run::crossed(const TreeNode& node) const {
  const double lambda = problem_.lambda(node.zeta);
  if (params_.h_init > 0.0) return lambda >= params_.lambda_max || lambda < params_.lambda_min;
  return lambda <= params_.lambda_min || lambda > params_.lambda_max;
}

std::size_t Run::thread_count() const {
  std::size_t threads = options_.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  return std::min<std::size_t>(threads, static_cast<std::size_t>(params_.worker_budget));
}

void Run::log_round(std::size_t spawned, const RoundStats& stats) const {
  if (options_.diagnostics == nullptr || params_.verbose < 1) return;
  *options_.diagnostics << "round " << result_.rounds_executed << ": spawned " << spawned << ", steps "
                        << stats.steps << ", failed " << stats.failures << ", accepted "
                        << result_.accepted_points.size() << '\n';
}

ContinuationResult Run::execute(std::span<const double> initial_point) {
  if (static_cast<int>(initial_point.size()) != problem_.n_dim) {
    throw std::invalid_argument("run_continuation: initial point has wrong length");
  }
  if (std::abs(params_.h_init) < params_.h_min) {
    emit(CurvePoint{Vector(initial_point.begin(), initial_point.end()), 0.0});
    result_.termination_reason =
        emission_failed_ ? TerminationReason::evaluation_failure : TerminationReason::step_underflow;
    return result_;
  }
  validate(params_);
  validate(problem_);
  if (params_.n_dim != problem_.n_dim || params_.lambda_index != problem_.lambda_index) {
    throw std::invalid_argument("run_continuation: parameters disagree with the problem dimensions");
  }

  BootstrapResult start = bootstrap(problem_, params_, initial_point);
  Tree tree{TreeNode::make_root(start.point.z, start.direction, std::abs(params_.h_init), start.point.residual_norm),
            start.direction};

  WorkerPool pool(thread_count());
  const auto budget = static_cast<std::size_t>(params_.worker_budget);
  const PointSink emit_sink = [this](const CurvePoint& p) { emit(p); };

  TerminationReason reason = TerminationReason::iteration_budget;
  bool done = crossed(*tree.root);
  if (done) reason = TerminationReason::reached_lambda_max;

  while (!done && result_.rounds_executed < options_.max_rounds) {
    const std::size_t occupied = occupied_slots(tree);
    const std::size_t spawned = spawn_round(tree, params_, occupied < budget ? budget - occupied : 0);
    result_.nodes_spawned += spawned;

    const RoundStats stats = corrector_round(tree, problem_, params_, pool);
    if (stats.steps == 0 && spawned == 0) {
      if (options_.diagnostics) *options_.diagnostics << "no node can be spawned or corrected; stopping\n";
      break;
    }
    ++result_.rounds_executed;
    result_.corrector_steps_total += stats.steps;
    result_.nodes_failed += stats.failures;
    result_.max_in_flight = std::max(result_.max_in_flight, stats.max_in_flight);

    if (params_.verbose >= 2 && !options_.dot_dir.empty()) {
      export_dot(*tree.root, result_.rounds_executed, options_.dot_dir, params_.verbose);
    }

    const PruneReport report = prune_tree(*tree.root, params_);
    for (TreeNode* node : report.exhausted) {
      reduce_base_step(*node, params_.scalings);
      ++result_.base_step_reductions;
    }
    if (tree.root->h_base < params_.h_min) {
      reason = TerminationReason::step_underflow;
      done = true;
    }

    while (!done && can_advance(tree)) {
      advance_once(tree, emit_sink);
      if (emission_failed_) {
        reason = TerminationReason::evaluation_failure;
        done = true;
      } else if (crossed(*tree.root)) {
        reason = TerminationReason::reached_lambda_max;
        done = true;
      }
    }
    log_round(spawned, stats);
  }

  if (!emission_failed_ && !emit(CurvePoint{tree.root->zeta, tree.root->residual_norm_current})) {
    reason = TerminationReason::evaluation_failure;
  }
  result_.termination_reason = reason;
  return result_;
}

}  // namespace

ContinuationResult run_continuation(const ProblemDefinition& problem, const RunParams& params,
                                    std::span<const double> initial_point, const PointSink& sink,
                                    const EngineOptions& options) {
  Run run(problem, params, sink, options);
  return run.execute(initial_point);
}

}  // namespace pampac

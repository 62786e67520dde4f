#pragma once
// Parallel adaptive pseudo-arclength continuation driver.

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "pampac/params.hpp"
#include "pampac/problem.hpp"
#include "pampac/tree.hpp"

namespace pampac {

class WorkerPool;

enum class TerminationReason { reached_lambda_max, step_underflow, iteration_budget, evaluation_failure };

std::string_view termination_name(TerminationReason reason);

struct ContinuationResult {
  std::vector<CurvePoint> accepted_points;
  TerminationReason termination_reason = TerminationReason::iteration_budget;
  std::size_t rounds_executed = 0;
  std::size_t corrector_steps_total = 0;
  std::size_t nodes_spawned = 0;
  std::size_t nodes_failed = 0;  // coloured BLACK
  std::size_t base_step_reductions = 0;
  std::size_t max_in_flight = 0;
};

using PointSink = std::function<void(const CurvePoint&)>;

struct EngineOptions {
  /// Physical threads; 0 picks min(worker_budget, hardware concurrency).
  std::size_t threads = 0;
  std::size_t max_rounds = 1'000'000;
  std::ostream* diagnostics = nullptr;  // progress lines when VERBOSE >= 1
  std::filesystem::path dot_dir;        // tree_<round>.dot when VERBOSE >= 2
};

struct Tree {
  std::unique_ptr<TreeNode> root;
  Direction root_tangent;
};

class BootstrapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BootstrapResult {
  CurvePoint point;
  Direction direction;
};

/// Converges a neighbour at lambda + DELTA_LAMBDA with lambda held fixed and
/// returns the unit secant, its lambda component carrying the sign of H_INIT.
BootstrapResult bootstrap(const ProblemDefinition& problem, const RunParams& params,
                          std::span<const double> initial_point);

/// Spawns children under leaves shallower than MAX_DEPTH, breadth-first,
/// until `budget` new nodes were created.  Returns the number spawned.
std::size_t spawn_round(Tree& tree, const RunParams& params, std::size_t budget);

struct RoundStats {
  std::size_t steps = 0;
  std::size_t failures = 0;
  std::size_t max_in_flight = 0;
};

/// One concurrent corrector step on every RED and YELLOW node, then recolouring.
RoundStats corrector_round(Tree& tree, const ProblemDefinition& problem, const RunParams& params, WorkerPool& pool);

/// Replaces the root by its only child while that child is GREEN, emitting
/// each retired root.  Returns the number of points emitted.
std::size_t advance_root(Tree& tree, const PointSink& sink);

/// Number of nodes excluding the root, i.e. occupied worker slots.
std::size_t occupied_slots(const Tree& tree);

ContinuationResult run_continuation(const ProblemDefinition& problem, const RunParams& params,
                                    std::span<const double> initial_point, const PointSink& sink = {},
                                    const EngineOptions& options = {});

}  // namespace pampac

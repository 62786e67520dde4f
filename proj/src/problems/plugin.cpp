#include "pampac/problems/plugin.hpp"

#include <dlfcn.h>

#include <limits>
#include <memory>
#include <string>

namespace pampac {
namespace {

using IntFn = int (*)();
using ResidualC = int (*)(const double*, double*);
using JacobianC = int (*)(const double*, double*);
using CorrectorC = int (*)(const double*, const double*, const double*, double, double*);

struct Library {
  void* handle = nullptr;
  ~Library() {
    if (handle != nullptr) dlclose(handle);
  }
};

template <class Fn>
Fn lookup(void* handle, const char* name) {
  return reinterpret_cast<Fn>(dlsym(handle, name));
}

}  // namespace

ProblemDefinition load_plugin_problem(const std::filesystem::path& library) {
  auto lib = std::make_shared<Library>();
  lib->handle = dlopen(library.c_str(), RTLD_NOW | RTLD_LOCAL);
  if (lib->handle == nullptr) {
    const char* err = dlerror();
    throw PluginError("cannot load " + library.string() + ": " + (err ? err : "unknown error"));
  }

  const auto n_dim_fn = lookup<IntFn>(lib->handle, "pampac_n_dim");
  const auto lambda_fn = lookup<IntFn>(lib->handle, "pampac_lambda_index");
  const auto residual = lookup<ResidualC>(lib->handle, "pampac_residual");
  const auto jacobian = lookup<JacobianC>(lib->handle, "pampac_jacobian");
  const auto corrector = lookup<CorrectorC>(lib->handle, "pampac_corrector");
  if (!n_dim_fn || !lambda_fn || !residual) {
    throw PluginError(library.string() + ": missing pampac_n_dim, pampac_lambda_index or pampac_residual");
  }
  if (!jacobian && !corrector) {
    throw PluginError(library.string() + ": needs pampac_jacobian or pampac_corrector");
  }

  const int n = n_dim_fn();
  const int li = lambda_fn();
  const auto nu = static_cast<std::size_t>(n > 0 ? n : 0);

  ResidualFn res = [lib, residual, nu](std::span<const double> z) {
    Vector r(nu - 1);
    if (residual(z.data(), r.data()) != 0) r.assign(nu - 1, std::numeric_limits<double>::quiet_NaN());
    return r;
  };
  JacobianFn jac;
  if (jacobian) {
    jac = [lib, jacobian, nu](std::span<const double> z) {
      Matrix m(nu - 1, nu);
      if (jacobian(z.data(), m.data()) != 0) m = Matrix(nu - 1, nu, std::numeric_limits<double>::quiet_NaN());
      return m;
    };
  }

  ProblemDefinition p = jac ? make_newton_problem(n, li, std::move(res), std::move(jac))
                            : ProblemDefinition{n, li, std::move(res), {}, {}};
  if (corrector) {
    p.corrector = [lib, corrector, nu](std::span<const double> zeta, const Direction& t,
                                       std::span<const double> z_base, double h) -> std::optional<Vector> {
      Vector out(nu);
      if (corrector(zeta.data(), t.values().data(), z_base.data(), h, out.data()) != 0) return std::nullopt;
      return out;
    };
  }
  validate(p);
  return p;
}

}  // namespace pampac

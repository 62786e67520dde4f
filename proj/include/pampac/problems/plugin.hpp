#pragma once
// Problems loaded from a shared library exporting these C symbols:
//
//   int pampac_n_dim(void);
//   int pampac_lambda_index(void);
//   int pampac_residual(const double* z, double* r);                 /* r has n_dim - 1 entries */
//   int pampac_jacobian(const double* z, double* jac);               /* optional, row-major */
//   int pampac_corrector(const double* zeta, const double* tangent,  /* optional */
//                        const double* z_base, double h, double* out);
//
// Callbacks return 0 on success.  At least one of pampac_jacobian and
// pampac_corrector must be present; without a corrector the bordered Newton
// step over pampac_jacobian is used.  Callbacks must be thread-safe.

#include <filesystem>
#include <stdexcept>

#include "pampac/problem.hpp"

namespace pampac {

class PluginError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ProblemDefinition load_plugin_problem(const std::filesystem::path& library);

}  // namespace pampac

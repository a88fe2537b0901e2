#pragma once

#include <span>
#include <vector>

namespace asd::detail {

/// |DFT_n(kernel)|^2 for a kernel wrapped onto a length-n circle.
std::vector<double> kernel_power_spectrum(std::span<const double> kernel, int n);

/// Solves (ab * S + (1 - ab) I) v = d on an h x w torus, where S is the
/// stationary covariance with eigenvalues scale * ph[u] * pw[v]. `field` is
/// row-major h x w and is overwritten with v. Thread-safe.
void solve_stationary(std::span<double> field, int h, int w, std::span<const double> ph,
                      std::span<const double> pw, double scale, double alpha_bar);

}  // namespace asd::detail

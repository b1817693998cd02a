#include "coagkit/kernel.hpp"

#include <cmath>

#include "coagkit/errors.hpp"

namespace coagkit {

Kernel Kernel::constant() {
  return Kernel(KernelKind::Constant, 0.0, "constant", {});
}

Kernel Kernel::multiplicative() {
  return Kernel(KernelKind::Multiplicative, 2.0, "multiplicative", {});
}

Kernel Kernel::user(std::function<double(double, double)> fn,
                    double homogeneity_degree) {
  return Kernel(KernelKind::User, homogeneity_degree, "user", std::move(fn));
}

double Kernel::evaluate(double x, double y) const {
  if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
    throw DomainError("kernel arguments must be finite and positive");
  }
  switch (kind_) {
    case KernelKind::Constant:
      return 1.0;
    case KernelKind::Multiplicative:
      return x * y;
    case KernelKind::User:
      return fn_(x, y);
  }
  return 0.0;  // unreachable
}

Kernel kernel_from_name(const std::string& name) {
  if (name == "constant") return Kernel::constant();
  if (name == "multiplicative") return Kernel::multiplicative();
  throw ConfigError("unknown kernel name: " + name);
}

}  // namespace coagkit

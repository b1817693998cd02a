#pragma once

#include <functional>
#include <string>

namespace coagkit {

enum class KernelKind { Constant, Multiplicative, User };

// Aggregation rate K_A(x, y): positive, symmetric, homogeneous of degree m.
// The two closed-form kernels dispatch on kind() inside the scheme
// assemblies; user kernels go through the generic quadrature path.
class Kernel {
 public:
  static Kernel constant();
  static Kernel multiplicative();
  // fn must be symmetric and positive for x, y > 0.
  static Kernel user(std::function<double(double, double)> fn,
                     double homogeneity_degree);

  // Throws DomainError for non-positive or non-finite arguments.
  double evaluate(double x, double y) const;

  double homogeneity_degree() const { return degree_; }
  KernelKind kind() const { return kind_; }
  const std::string& name() const { return name_; }

 private:
  Kernel(KernelKind kind, double degree, std::string name,
         std::function<double(double, double)> fn)
      : kind_(kind), degree_(degree), name_(std::move(name)),
        fn_(std::move(fn)) {}

  KernelKind kind_;
  double degree_;
  std::string name_;
  std::function<double(double, double)> fn_;
};

// Maps the config-file names "constant" / "multiplicative".
Kernel kernel_from_name(const std::string& name);

}  // namespace coagkit

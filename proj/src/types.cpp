#include "autoseries/types.hpp"

#include <thread>

namespace autoseries {

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::Auto:
      return "auto";
    case Method::Naive:
      return "naive";
    case Method::OddDecomposition:
      return "odd-decomposition";
    case Method::FunctionalEquation:
      return "functional-equation";
    case Method::EulerMaclaurin:
      return "euler-maclaurin";
  }
  return "unknown";
}

std::optional<Method> method_from_string(std::string_view name) noexcept {
  if (name == "auto") return Method::Auto;
  if (name == "naive") return Method::Naive;
  if (name == "odd" || name == "odd-decomposition") return Method::OddDecomposition;
  if (name == "fe" || name == "functional-equation") return Method::FunctionalEquation;
  if (name == "em" || name == "euler-maclaurin") return Method::EulerMaclaurin;
  return std::nullopt;
}

unsigned Config::worker_count() const noexcept {
  if (threads != 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void validate(const Config& config) {
  if (config.precision_bits < kMinPrecisionBits || config.precision_bits > kMaxPrecisionBits) {
    throw UsageError("precision bits must be between " + std::to_string(kMinPrecisionBits) +
                     " and " + std::to_string(kMaxPrecisionBits));
  }
  if (config.max_terms == 0) throw UsageError("max terms must be positive");
  if (config.fe_depth < 1 || config.fe_depth > 1000) {
    throw UsageError("functional-equation depth must be between 1 and 1000");
  }
}

}  // namespace autoseries

#include "relcalc/limits.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <string>

#include "relcalc/errors.hpp"

namespace relcalc {
namespace {

template <class T>
void override_from(const char* name, T& value) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return;
  T parsed{};
  const char* end = raw + std::strlen(raw);
  auto [ptr, ec] = std::from_chars(raw, end, parsed);
  if (ec != std::errc{} || ptr != end) {
    throw InputError(std::string("invalid value for ") + name + ": '" + raw + "'");
  }
  value = parsed;
}

}  // namespace

Limits Limits::from_environment() {
  Limits limits;
  override_from("RELCALC_ENUM_CAP", limits.product_space_points);
  override_from("RELCALC_CLASSICAL_WIDTH", limits.classical_width);
  override_from("RELCALC_CAP_TERMS", limits.simplified_terms);
  override_from("RELCALC_BRUTEFORCE_CAP", limits.bruteforce_tuples);
  return limits;
}

}  // namespace relcalc

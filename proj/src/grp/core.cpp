#include "fk/core.hpp"

#include <cstdlib>
#include <sstream>

namespace fk {

void Bounds::apply(const std::string& spec) {
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("FUSIONKIT_BOUNDS: expected key=value, got '" + item + "'");
    std::string key = item.substr(0, eq);
    int value = 0;
    try {
      value = std::stoi(item.substr(eq + 1));
    } catch (...) {
      throw InputError("FUSIONKIT_BOUNDS: bad value in '" + item + "'");
    }
    if (value <= 0) throw InputError("FUSIONKIT_BOUNDS: value must be positive in '" + item + "'");
    if (key == "max_group_order") max_group_order = value;
    else if (key == "max_pi0") max_pi0 = value;
    else if (key == "torsion_exponent") torsion_exponent = value;
    else if (key == "max_denominator_exp") max_denominator_exp = value;
    else if (key == "composite_length") composite_length = value;
    else if (key == "bullet_cap") bullet_cap = value;
    else if (key == "functor_search") functor_search = value;
    else if (key == "max_quotient") max_quotient = value;
    else if (key == "max_simplices") max_simplices = value;
    else throw InputError("FUSIONKIT_BOUNDS: unknown key '" + key + "'");
  }
}

Bounds Bounds::from_env() {
  Bounds b;
  if (const char* env = std::getenv("FUSIONKIT_BOUNDS")) b.apply(env);
  return b;
}

Bounds& bounds() {
  static Bounds b = Bounds::from_env();
  return b;
}

}  // namespace fk

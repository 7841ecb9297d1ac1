// Build the unions profile of the numerical monoid <3,5> and print the
// CSV table together with the invariant report.

#include <iostream>

#include "lengths/family.hpp"
#include "lengths/numerical_monoid.hpp"
#include "lengths/profile.hpp"
#include "lengths/serialize.hpp"

int main() {
  lengths::LengthSystem system =
      lengths::LengthSystem::from_numerical(lengths::NumericalMonoid({3, 5}));
  system.fit_limits(20);
  lengths::UnionsProfile profile = lengths::UnionsProfile::build(system, 20);

  std::cout << lengths::profile_csv(profile);
  std::cout << lengths::dump_json(lengths::invariants_json(system, profile));
  return 0;
}

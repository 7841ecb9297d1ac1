// Produce structure and period certificates for the block monoid over Z/3
// with full non-zero support, print them, and re-check both with the
// independent verifiers.

#include <iostream>
#include <variant>

#include "lengths/abelian_group.hpp"
#include "lengths/block_monoid.hpp"
#include "lengths/certificates.hpp"
#include "lengths/family.hpp"
#include "lengths/invariants.hpp"
#include "lengths/profile.hpp"
#include "lengths/serialize.hpp"

int main() {
  lengths::FiniteAbelianGroup group({3});
  lengths::LengthSystem system =
      lengths::LengthSystem::from_block(lengths::BlockMonoid(group, {1, 2}));
  system.fit_limits(20);
  lengths::UnionsProfile profile = lengths::UnionsProfile::build(system, 20);

  auto structure = lengths::certify_structure(profile, lengths::delta_report(system, profile));
  if (std::holds_alternative<lengths::StructureCertificate>(structure)) {
    const auto& cert = std::get<lengths::StructureCertificate>(structure);
    std::cout << lengths::dump_json(lengths::certificate_json(cert));
    lengths::VerifyResult check = lengths::verify_structure(profile, cert);
    std::cout << "structure verifier: " << (check.ok ? "OK" : check.reason) << "\n";
  } else {
    std::cout << lengths::dump_json(lengths::certificate_json(
        std::get<lengths::StructureRefusal>(structure), profile.k_horizon));
  }

  auto period = lengths::certify_period(profile, 3);
  if (std::holds_alternative<lengths::PeriodCertificate>(period)) {
    const auto& cert = std::get<lengths::PeriodCertificate>(period);
    std::cout << lengths::dump_json(lengths::certificate_json(cert));
    lengths::VerifyResult check = lengths::verify_period(profile, cert);
    std::cout << "period verifier: " << (check.ok ? "OK" : check.reason) << "\n";
  } else {
    std::cout << lengths::dump_json(lengths::certificate_json(
        std::get<lengths::PeriodRefusal>(period), profile.k_horizon, 3));
  }
  return 0;
}

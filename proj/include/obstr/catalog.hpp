#pragma once
/**
 * @file catalog.hpp
 * @brief Named cyclic-by-p groups used by property suites and the GM study.
 */

#include <string>
#include <vector>

#include "obstr/group.hpp"

namespace obstr {

struct CatalogGroup {
  std::string name;
  GroupPtr G;
  int p = 0;
};

/// Cyclic, dihedral, quaternion, semidihedral, A4, SL2(3) and semidirect
/// products of elementary abelian groups by cyclic groups, all of order <= 200.
std::vector<CatalogGroup> property_catalog();

/// The ordered catalog of cyclic-by-p groups of order <= 400 used for the
/// comparison of the two GM characterisations.
std::vector<CatalogGroup> gm_catalog();

/// (Z/p)^d x| C_m where the generator acts by the given matrix.
GroupPtr linear_semidirect(int p, int m, const std::vector<std::vector<int>>& matrix);
/// (Z/n)^d x| C_m where the generator acts on column vectors by the matrix mod n.
GroupPtr module_semidirect(int n, int m, const std::vector<std::vector<int>>& matrix);

}  // namespace obstr

#pragma once

#include <string>
#include <vector>

// Family ids shared by the property suites. Orders stay small enough that
// every suite runs in seconds.
inline const std::vector<std::string>& small_corpus() {
  static const std::vector<std::string> c = {
      "cyclic:1",      "cyclic:2",       "cyclic:7",        "abelian:2:2",     "abelian:2:2:2",
      "abelian:4:2",   "symmetric:3",    "dihedral:8",      "quaternion:8",    "dihedral:10",
      "alternating:4", "dihedral:12",    "quaternion:12",   "dihedral:14",     "dihedral:16",
      "quaternion:16", "dihedral:18",    "frobenius:5:4",   "frobenius:7:3",   "frobenius:5:2",
      "dihedral:20",   "quaternion:20",  "symmetric:4",     "dihedral:24",     "quaternion:24",
  };
  return c;
}

// Larger groups for checks that do not need brute force.
inline const std::vector<std::string>& wide_corpus() {
  static const std::vector<std::string> c = {
      "heisenberg:3",  "dihedral_product:6:6", "alternating:5", "psl2:4",      "psl2:5",
      "psl2:7",        "psl2:8",               "dihedral:60",   "quaternion:60", "frobenius:8:7",
      "frobenius:9:4", "dihedral_product:6:10", "heisenberg:5", "symmetric:5",
  };
  return c;
}

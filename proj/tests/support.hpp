#pragma once

#include <random>

#include "jetreduce/bicomplex.hpp"

namespace jrtest {

using namespace jetreduce;

// Point particle in R^3 with an uninterpreted potential V(q1, q2, q3).
inline JetSpace particle_space(int jet_order = 4) {
  JetSpace s({"t"}, {"q1", "q2", "q3"}, jet_order);
  s.add_function("V", {Atom::field(0), Atom::field(1), Atom::field(2)});
  return s;
}

inline ScalarExpr q(int i, int order = 0) {
  MultiIndex I;
  I.e[0] = static_cast<std::uint8_t>(order);
  return ScalarExpr::field(i, I);
}

inline MultiIndex mi(std::initializer_list<int> seq) { return MultiIndex::from_sequence(seq); }

inline Generator dq(int i, int order = 0) {
  MultiIndex I;
  I.e[0] = static_cast<std::uint8_t>(order);
  return Generator::delta(i, I);
}


}  // namespace jrtest

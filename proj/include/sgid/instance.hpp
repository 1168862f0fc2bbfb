#pragma once

#include "sgid/pattern.hpp"

namespace sgid {

/** A fixed observation setup: the group, the center set C, the read shape K,
 *  and the alphabet size.  CK and the stabilizer of C are derived once at
 *  construction and shared by everything downstream. */
struct Instance {
  GroupCtx ctx;
  Shape C;
  Shape K;
  int alphabet = 2;
  Shape CK;   // set_product(C, K)
  Shape G_C;  // stabilizer of C
};

inline Instance make_instance(GroupCtx ctx, Shape C, Shape K, int alphabet) {
  if (C.empty() || K.empty()) throw std::invalid_argument("make_instance: C and K must be nonempty");
  if (alphabet < 2 || alphabet > kMaxAlphabet)
    throw std::invalid_argument("make_instance: alphabet size must be in [2, 255]");
  Instance inst;
  inst.CK = set_product(ctx, C, K);
  inst.G_C = stabilizer(ctx, C);
  inst.ctx = std::move(ctx);
  inst.C = std::move(C);
  inst.K = std::move(K);
  inst.alphabet = alphabet;
  return inst;
}

}  // namespace sgid

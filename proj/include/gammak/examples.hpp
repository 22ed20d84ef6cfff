#pragma once

#include "gammak/spec_io.hpp"

namespace gammak::examples {

/* Two-object group-like category: e, x discrete with x.x = e. */
CategorySpec c2();

/* Idempotent walking-arrow category: objects e, x; one non-identity t:x->x
 * with t.t = t; x.x = x and t.t = t.id = id.t = t under tensor. */
CategorySpec x1();

/* Three-element cyclic group as a discrete category: e, g, h with g.g = h,
 * g.h = e. */
CategorySpec m3();

/* Pointed sets of total size <= 3 (p0 = {*}, p1, p2) with every pointed map:
 * injections as cofibrations, bijections as weak equivalences, wedges where
 * the sizes fit. Carries no tensor block. */
CategorySpec pointed_sets();

/* The spec of plus_category(elaborate_permutative(base)). */
CategorySpec plus_of(const CategorySpec& base);

}  // namespace gammak::examples

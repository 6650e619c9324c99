// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <utility>
#include <vector>

#include "ssrs/field.hpp"

namespace ssrs::poly {

// Coefficients low degree first; the zero polynomial is empty.
using Poly = std::vector<elem_t>;

void trim(Poly& a);
long degree(const Poly& a);
Poly add(const Field& F, const Poly& a, const Poly& b);
Poly sub(const Field& F, const Poly& a, const Poly& b);
Poly mul(const Field& F, const Poly& a, const Poly& b);
Poly scale(const Field& F, const Poly& a, elem_t c);
std::pair<Poly, Poly> divmod(const Field& F, const Poly& a, const Poly& b);
elem_t eval(const Field& F, const Poly& a, elem_t x);
Poly from_roots(const Field& F, std::span<const elem_t> roots);
// Unique polynomial of degree < n through (xs[i], ys[i]).
Poly interpolate(const Field& F, std::span<const elem_t> xs, std::span<const elem_t> ys);

}  // namespace ssrs::poly

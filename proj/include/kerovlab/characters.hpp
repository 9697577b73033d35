#pragma once

#include "kerovlab/partition.hpp"

namespace kerovlab {

/// Dimension of the irreducible representation lambda (hook length formula).
Integer dimension(const Partition& lambda);

/// chi^lambda at cycle type mu, by the Murnaghan-Nakayama rule. Strips the
/// largest part of mu first; results are memoized per process.
Integer mn_character(const Partition& lambda, const Partition& mu);

/// (n)_r chi^lambda_{(r,1^{n-r})} / dim lambda.
Rational normalized_character(const Partition& lambda, int r);

}  // namespace kerovlab

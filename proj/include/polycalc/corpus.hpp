#pragma once

/// @file corpus.hpp
/// Seeded generators for law checking. All randomness is mt19937_64 driven
/// by explicit seeds, so a corpus is a pure function of its seed.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "polycalc/bicomodule.hpp"
#include "polycalc/coalgebra.hpp"
#include "polycalc/fincat.hpp"
#include "polycalc/poly.hpp"
#include "polycalc/presheaf.hpp"
#include "polycalc/psh_poly.hpp"

namespace polycalc::corpus {

using Rng = std::mt19937_64;

/// Every polynomial with at most `max_positions` positions and at most
/// `max_dirs` directions each, one per isomorphism class, arities descending.
std::vector<Poly> small_polys(std::size_t max_positions = 3, std::size_t max_dirs = 3);
Poly random_poly(Rng& rng, std::size_t max_positions = 3, std::size_t max_dirs = 3);

/// Free category on a DAG over objects 0..n-1 (edges need source < target).
/// Morphisms are paths [source, [edge ids]], composed by concatenation.
FinCat free_category(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);
/// Preorder generated by a relation; morphisms [i, j] for i ≤ j.
FinCat preorder(std::size_t n, std::vector<std::vector<bool>> le);
/// A category with at most 3 objects and 8 morphisms: a preorder, a free
/// category on a DAG, or one of the small monoids Z/2, Z/3, {1, 0}.
FinCat random_category(Rng& rng);
/// `count` categories: terminal, walking arrow, ⇉, discrete 3 and the three monoids first, then random ones.
std::vector<FinCat> category_corpus(std::uint64_t seed, std::size_t count);

/// Presheaf with at most `max_size` elements per object; actions are drawn at
/// random and rejected until functorial (immediate on free bases).
psh::Presheaf random_presheaf(Rng& rng, const FinCatPtr& base, std::size_t max_size);
/// A polynomial P_* → P: random presheaves and a uniformly chosen map between them.
psh::Polynomial random_psh_poly(Rng& rng, const FinCatPtr& base, std::size_t max_size);

/// A coalgebra for c from a random copresheaf with at most `max_size` elements per object.
Coalgebra random_coalgebra(Rng& rng, const Comonoid& c, std::size_t max_size);
/// A typed polynomial from D to C with uniformly random types.
TypedPoly random_typed(Rng& rng, const FinSet& C, const FinSet& D, std::size_t max_positions, std::size_t max_dirs);

}  // namespace polycalc::corpus

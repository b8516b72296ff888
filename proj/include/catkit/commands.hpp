// The catkit command line as a library call.
//
//   validate FILE                       law checks for every section
//   compose-prof FILE P Q               the composite profunctor P . Q
//   kleisli FILE [M]                    Kleisli category of a profunctor monad
//   free-monoidal FILE [M] --bound L    F(M) on lists up to length L
//   classify-lax FILE M D --bound L     lax morphisms M -> R(D) against functors F(M) -> D
//   delta --max N                       hom sizes of the simplex category against F(R(1))
//   monoids FILE [D] --bound L          monoids in D against functors Delta -> D
//   strictify FILE [C] --bound L        strict model and equivalence certificate
//   tree realize|compose|graft|calculus
//   groth build|representable|lifts FILE [B]
//
// Exit status: 0 when every check passes, 1 on a law violation (each failed
// instance is listed), 2 on structural, parse or usage errors and exhausted
// bounds. Output depends only on the arguments and the input files.
#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace catkit {

/// Seed of the randomized commands when --seed is absent.
inline constexpr std::uint32_t kDefaultSeed = 20240229;

/// `args` excludes the program name. Reports go to `out`.
int run(const std::vector<std::string>& args, std::ostream& out);

}  // namespace catkit

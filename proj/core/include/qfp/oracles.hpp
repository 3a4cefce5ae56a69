#pragma once

// Brute-force reference implementations. They share no code paths with the
// engines they check beyond the matrix types and the von Mangoldt table.

#include "qfp/arcs.hpp"
#include "qfp/arith.hpp"
#include "qfp/counting.hpp"
#include "qfp/structure.hpp"

#include <cstdint>

namespace qfp::oracle {

/// Full enumeration over prime-power n-tuples, no coordinate solving.
CountResult count_solutions(const ProblemInstance& inst, std::uint64_t X);

/// Full enumeration over (x, y).
std::uint64_t count_bilinear(const BilinearSystem& sys, std::uint64_t X);

/// Full enumeration over (x, y) pairs.
PairedCount count_paired_system(const RationalMatrix& c, const RationalMatrix& h, std::uint64_t X, bool weighted);

/// #{h in ((Z/q)^x)^n : h^T A h = t mod q} by direct enumeration.
std::uint64_t residue_count(const SymmetricIntMatrix& a, std::uint64_t q, const Integer& t);

/// Term-by-term evaluation of C(q, a) with one exponential per vector h.
Complex gauss_sum(const SymmetricIntMatrix& a, std::uint64_t q, std::uint64_t r);

/// The defining n-fold sum of S(alpha).
Complex s_alpha(const SymmetricIntMatrix& a, std::uint64_t X, Weights weights, double alpha);

/// Exhaustive search for any valid quintuple.
bool rank1_quintuple_exists(const Rank1Form& f);
bool case22_quintuple_exists(const Rank2Form22& f);

}  // namespace qfp::oracle

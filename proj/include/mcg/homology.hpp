#pragma once

#include <optional>
#include <vector>

#include "mcg/word.hpp"

namespace mcg {

using IntVec = std::vector<long long>;
using IntMat = std::vector<IntVec>;

IntMat identity_matrix(int n);
IntMat matmul(const IntMat& a, const IntMat& b);
IntMat transpose(const IntMat& m);
bool is_zero(const IntMat& m);
long long det(IntMat m);  // exact, fraction-free

// H1 lattice with a skew-symmetric integer intersection form.
struct H1Lattice {
    IntMat form;  // J

    int rank() const { return static_cast<int>(form.size()); }
    long long pair(const IntVec& u, const IntVec& v) const;
    bool is_skew() const;
};

// Transvection x -> x + <x,c> c as a matrix.
IntMat transvection(const H1Lattice& lat, const IntVec& c);
bool is_symplectic(const H1Lattice& lat, const IntMat& m);

// Exact rank of an integer matrix (columns = vectors).
int int_rank(IntMat m);

// Inverse of a matrix with determinant +-1.
IntMat int_inverse(const IntMat& m);

// Integer solution of a x = b, if one exists.
std::optional<IntVec> solve_integer(const IntMat& a, const IntVec& b);

// Basis of the integer kernel {x : m x = 0}.
std::vector<IntVec> int_kernel(const IntMat& m);

// Is target an integer linear combination of the given vectors?
bool in_integer_span(const std::vector<IntVec>& vecs, const IntVec& target);

// Smallest prefix with an integer dependence, plus primitive coefficients.
struct DependenceCertificate {
    int length = 0;             // l: number of classes used
    std::vector<long long> coefficients;  // n_1..n_l, last one nonzero
};
std::optional<DependenceCertificate> dependence_certificate(const std::vector<IntVec>& classes);

long long surface_square(const DependenceCertificate& cert);

// b2^- lower bound  m s + floor(m n / (2g+1)).
long long b2minus_lower_bound(long long m, long long n, long long s, long long g);

// Meyer cocycle of two symplectic matrices.
int meyer_cocycle(const H1Lattice& lat, const IntMat& a, const IntMat& b);

// Signature of an integer symmetric matrix (exact congruence diagonalization).
int symmetric_signature(IntMat m);

// Explicit Lefschetz fibration data for signature computation.
struct FactorizationData {
    H1Lattice lattice;
    std::vector<IntVec> cycle_classes;    // vanishing cycle classes, in order
    std::vector<bool> separating;        // per cycle
    // base torus: commutator monodromies; base sphere: leave empty
    std::optional<std::pair<IntMat, IntMat>> commutator;  // (gamma, delta)
};

// Signature of the total space; throws if the factorization does not
// multiply to its target in Sp.
int signature_of_factorization(const FactorizationData& f);

}  // namespace mcg

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mcg/homology.hpp"
#include "mcg/rewrite.hpp"
#include "mcg/surface.hpp"

namespace mcg {

// Homology-only model of a closed surface: lattice plus named curve classes.
struct ClosedHomologyModel {
    int genus = 0;
    H1Lattice lattice;
    std::map<std::string, IntVec> classes;
};
ClosedHomologyModel load_homology_model(const std::string& path);
// Cap with a twice-punctured genus-(g - base) surface: pad the lattice with
// hyperbolic pairs that pair trivially with everything named.
ClosedHomologyModel pad_to_genus(const ClosedHomologyModel& base, int genus);

IntMat homology_rep(const ClosedHomologyModel& m, const TwistWord& w);

enum class VerifyMode { Pi1, Homology, Replay, Commutator };

struct RelationEntry {
    std::string name;
    std::string model;  // sigma_2_2 | sigma_2_1 | sigma_3_0
    VerifyMode mode = VerifyMode::Pi1;
    TwistWord lhs, rhs;
    std::string lhs_expr;  // conjugate notation; expanded at verification time
    std::string script;    // replay mode
    int genus = 0;         // homology mode: pad the closed model to this genus
};

struct RelationOutcome {
    std::string name;
    bool verified = false;
    std::string detail;
};

// Positive factorization: ordered conjugates of positive twists.
struct Factor {
    std::string base;
    TwistWord conjugator;  // factor = conjugator . t_base . conjugator^-1
};
struct Factorization {
    std::vector<Factor> factors;
    TwistWord target;
};

MappingClass factor_eval(const SurfaceModel& m, const Factor& f);
MappingClass factorization_eval(const SurfaceModel& m, const Factorization& f);

// Elementary Hurwitz move at 1 <= i < length (1-based); forward sends
// (t_i, t_{i+1}) to (t_i t_{i+1} t_i^-1, t_i).  Throws on bad index; the
// product is preserved by construction and revalidated against the target.
Factorization hurwitz_move(const SurfaceModel& m, const Factorization& f, int i, bool forward);

// Rotate the first j factors to the end; their product must commute with the
// evaluated target.
Factorization cyclic_permute(const SurfaceModel& m, const Factorization& f, int j);

// Conjugate-notation expressions like "[3]^(2 1a 1b 2)^-1 [2]^(4 3 3 4) delta1".
TwistWord expand_conjugate_notation(const std::string& expr);

struct DataSet {
    std::string dir;
    SurfaceModel sigma22;
    SurfaceModel sigma21;
    ClosedHomologyModel sigma3;
    std::vector<RelationEntry> entries;
    std::vector<RewriteScript> scripts;
};
DataSet load_data(const std::string& dir);

RelationOutcome verify_relation(const DataSet& ds, const RelationEntry& e);
std::vector<RelationOutcome> verify_all(const DataSet& ds);
const RelationEntry* find_entry(const DataSet& ds, const std::string& name);

// The lifted Baykur-Korkmaz factorization with its separating census.
struct BKResult {
    bool verified = false;
    int nonseparating = 0;
    int separating = 0;
    Factorization factorization;
    std::string detail;
};
BKResult derive_baykur_korkmaz(const DataSet& ds);

// Commutator presentation of the closed genus-3 fibration:
// x3 x4 y1 y2 y3 = [delta0 x2^-1, psi], checked symbolically (certified
// replay over declared rules) and homologically (explicit symplectic psi).
struct CommutatorResult {
    bool prechecks_ok = false;
    bool symbolic_ok = false;
    bool homology_ok = false;
    IntMat psi;
    std::string detail;
};
CommutatorResult commutator_presentation_check(const DataSet& ds);

}  // namespace mcg

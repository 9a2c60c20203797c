#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mcg/homology.hpp"
#include "mcg/word.hpp"

namespace mcg {

// Mapping class acting on pi1 plus the transport of a reference arc from the
// basepoint boundary to the far boundary ("defect").  Boundary twists away
// from the basepoint act trivially on based pi1, so the defect is what keeps
// the representation faithful.  The inverse tables travel along so that
// inverses never require free-group automorphism inversion.
struct MappingClass {
    FreeGroupAut aut;
    Word defect;
    FreeGroupAut iaut;
    Word idefect;

    static MappingClass identity(int rank);
    MappingClass inverse() const { return {iaut, idefect, aut, defect}; }
    MappingClass pow(int n) const;
    bool same_as(const MappingClass& o) const { return aut == o.aut && defect == o.defect; }
};

// a o b: b acts first.
MappingClass compose(const MappingClass& a, const MappingClass& b);

struct NamedCurve {
    std::string name;
    Word word;
    IntVec h1;
    bool separating = false;
};

// Arc from the basepoint to one of the two lifts of the far-boundary base
// position; parity selects the endpoint, word is the pi1 part.
struct NamedArc {
    std::string name;
    Word word;
    int parity = 0;
};

struct TwistGenerator {
    std::string curve;
    MappingClass action;
};

// One word-level or pair-level validation outcome.
struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<Check> checks;
    bool all_pass() const;
    std::string summary() const;
};

// Symbolic twist word: (twist name, exponent) pairs.
using TwistWord = std::vector<std::pair<std::string, int>>;
TwistWord parse_twist_word(const std::string& text);
std::string format_twist_word(const TwistWord& w);
TwistWord invert_twist_word(const TwistWord& w);

enum class Fixedness { FixedOriented, FixedUnoriented, Moved };
const char* to_string(Fixedness f);

struct ArcFixedness {
    bool fixed = false;
    bool strict = false;  // fixed without endpoint slides
};

enum class BasepointMode { Boundary, Interior };

class SurfaceModel {
public:
    std::string name;
    int genus = 0;
    int boundaries = 0;
    Alphabet alphabet;
    BasepointMode basepoint = BasepointMode::Boundary;
    std::map<std::string, Word> boundary_words;
    FreeGroupAut deck;  // covering involution on pi1 (up to inner)
    H1Lattice lattice;
    std::vector<NamedCurve> curves;
    std::vector<NamedArc> arcs;
    std::vector<TwistGenerator> twists;
    std::map<std::pair<std::string, std::string>, int> intersections;

    const NamedCurve* find_curve(const std::string& n) const;
    const TwistGenerator* find_twist(const std::string& n) const;
    const NamedArc* find_arc(const std::string& n) const;
    int intersection(const std::string& a, const std::string& b) const;

    MappingClass evaluate(const TwistWord& w) const;
    MappingClass evaluate(const std::string& text) const { return evaluate(parse_twist_word(text)); }

    bool is_identity(const MappingClass& m) const;
    bool is_identity(const TwistWord& w) const { return is_identity(evaluate(w)); }

    Word image_of_curve(const MappingClass& m, const std::string& curve) const;
    Fixedness fixed_up_to_isotopy(const MappingClass& m, const std::string& curve) const;

    // strict image of an arc under a mapping class: (word, parity unchanged)
    Word arc_image(const MappingClass& m, const NamedArc& a) const;
    ArcFixedness arc_fixed(const MappingClass& m, const std::string& arc) const;

    bool is_separating(const std::string& curve) const;

    ValidationReport validate() const;

    SurfaceModel cap_disk(const std::string& boundary) const;
};

// CurveSystemDocument I/O (UTF-8 JSON; see data/sigma_2_2.json).
SurfaceModel load_curve_system(const std::string& path);
SurfaceModel load_curve_system_text(const std::string& json_text);
std::string save_curve_system(const SurfaceModel& m);

}  // namespace mcg

#pragma once

#include <string>
#include <vector>

#include "mcg/surface.hpp"

namespace mcg {

// Oriented equation between words of twist symbols.
struct RewriteRule {
    std::string id;
    TwistWord lhs, rhs;
};

struct RuleSet {
    std::vector<RewriteRule> rules;

    const RewriteRule* find(const std::string& id) const;
    void add(RewriteRule r);
};

// One certified step: apply `rule` at letter position `pos`.  forward
// replaces lhs by rhs; inverted applies the rule to the inverse instance.
// The built-in rules "cancel" (drop an adjacent inverse pair) and
// "insert" (insert symbol^{+1} symbol^{-1}, or the reverse when inverted)
// need no declaration.
struct ScriptStep {
    std::string rule;
    int pos = 0;
    bool forward = true;
    bool inverted = false;
    std::string symbol;  // for insert
    TwistWord result;
};

struct RewriteScript {
    std::string name;
    TwistWord start, target;
    std::vector<RewriteRule> local_rules;  // user-declared axioms
    bool register_as_rule = false;         // expose start = target as a rule
    std::vector<ScriptStep> steps;
};

struct ReplayReport {
    bool verified = false;
    int failed_step = -1;  // 0-based; -1 when all steps check out
    std::string message;
};

// Flatten exponents so each letter carries sign +-1.
TwistWord flatten(const TwistWord& w);
TwistWord sym_reduce(const TwistWord& w);

ReplayReport replay_script(const RewriteScript& script, const RuleSet& rules);

// Braid/commutation rules read off a model's intersection table.
RuleSet model_rule_set(const SurfaceModel& m);

std::vector<RewriteScript> load_scripts(const std::string& path);

}  // namespace mcg

#include "mcg/rewrite.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mcg {

using nlohmann::json;

const RewriteRule* RuleSet::find(const std::string& id) const {
    for (const auto& r : rules)
        if (r.id == id) return &r;
    return nullptr;
}

void RuleSet::add(RewriteRule r) {
    if (find(r.id)) throw error("rules", "duplicate rule id " + r.id);
    rules.push_back(std::move(r));
}

TwistWord flatten(const TwistWord& w) {
    TwistWord out;
    for (const auto& [s, e] : w) {
        int n = e < 0 ? -e : e, sg = e < 0 ? -1 : 1;
        for (int i = 0; i < n; ++i) out.emplace_back(s, sg);
    }
    return out;
}

TwistWord sym_reduce(const TwistWord& w) {
    TwistWord out;
    for (const auto& l : flatten(w)) {
        if (!out.empty() && out.back().first == l.first && out.back().second == -l.second)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

namespace {

TwistWord sym_invert(const TwistWord& w) {
    TwistWord out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.emplace_back(it->first, -it->second);
    return out;
}

bool matches_at(const TwistWord& w, const TwistWord& pat, size_t pos) {
    if (pos + pat.size() > w.size()) return false;
    for (size_t i = 0; i < pat.size(); ++i)
        if (w[pos + i] != pat[i]) return false;
    return true;
}

TwistWord splice(const TwistWord& w, size_t pos, size_t len, const TwistWord& repl) {
    TwistWord out(w.begin(), w.begin() + pos);
    out.insert(out.end(), repl.begin(), repl.end());
    out.insert(out.end(), w.begin() + pos + len, w.end());
    return out;
}

}  // namespace

ReplayReport replay_script(const RewriteScript& script, const RuleSet& rules) {
    ReplayReport rep;
    RuleSet all = rules;
    for (const auto& r : script.local_rules) {
        if (!all.find(r.id)) all.add(r);
    }
    TwistWord cur = flatten(script.start);
    for (size_t si = 0; si < script.steps.size(); ++si) {
        const ScriptStep& st = script.steps[si];
        size_t pos = static_cast<size_t>(st.pos);
        TwistWord next;
        if (st.rule == "cancel") {
            if (pos + 1 >= cur.size() || cur[pos].first != cur[pos + 1].first ||
                cur[pos].second != -cur[pos + 1].second) {
                rep.failed_step = static_cast<int>(si);
                rep.message = "cancel does not apply at position " + std::to_string(st.pos);
                return rep;
            }
            next = splice(cur, pos, 2, {});
        } else if (st.rule == "insert") {
            if (pos > cur.size()) {
                rep.failed_step = static_cast<int>(si);
                rep.message = "insert position out of range";
                return rep;
            }
            int sg = st.inverted ? -1 : 1;
            next = splice(cur, pos, 0, {{st.symbol, sg}, {st.symbol, -sg}});
        } else {
            const RewriteRule* r = all.find(st.rule);
            if (!r) {
                rep.failed_step = static_cast<int>(si);
                rep.message = "rule not in set: " + st.rule;
                return rep;
            }
            TwistWord from = flatten(st.forward ? r->lhs : r->rhs);
            TwistWord to = flatten(st.forward ? r->rhs : r->lhs);
            if (st.inverted) {
                from = sym_invert(from);
                to = sym_invert(to);
            }
            if (!matches_at(cur, from, pos)) {
                rep.failed_step = static_cast<int>(si);
                rep.message = "rule " + st.rule + " does not match at position " +
                              std::to_string(st.pos);
                return rep;
            }
            next = splice(cur, pos, from.size(), to);
        }
        if (flatten(st.result) != next) {
            rep.failed_step = static_cast<int>(si);
            rep.message = "step result mismatch at step " + std::to_string(si);
            return rep;
        }
        cur = std::move(next);
    }
    if (sym_reduce(cur) != sym_reduce(script.target)) {
        rep.message = "final expression does not match the target";
        return rep;
    }
    rep.verified = true;
    return rep;
}

RuleSet model_rule_set(const SurfaceModel& m) {
    RuleSet rs;
    std::vector<std::string> names;
    for (const auto& t : m.twists) names.push_back(t.curve);
    for (size_t i = 0; i < names.size(); ++i)
        for (size_t j = i + 1; j < names.size(); ++j) {
            const std::string &a = names[i], &b = names[j];
            int cnt = m.intersection(a, b);
            if (cnt == 0) {
                rs.add({"comm:" + a + "," + b, {{a, 1}, {b, 1}}, {{b, 1}, {a, 1}}});
            } else if (cnt == 1) {
                rs.add({"braid:" + a + "," + b,
                        {{a, 1}, {b, 1}, {a, 1}},
                        {{b, 1}, {a, 1}, {b, 1}}});
            }
        }
    return rs;
}

namespace {

TwistWord parse_flat(const std::string& s) { return flatten(parse_twist_word(s)); }

}  // namespace

std::vector<RewriteScript> load_scripts(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("io", "cannot open " + path);
    json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw error("parse", e.what());
    }
    std::vector<RewriteScript> out;
    for (const auto& js : doc.at("scripts")) {
        RewriteScript sc;
        sc.name = js.at("name").get<std::string>();
        sc.start = parse_flat(js.at("start").get<std::string>());
        sc.target = parse_flat(js.at("target").get<std::string>());
        sc.register_as_rule = js.value("register_as_rule", false);
        for (const auto& jr : js.value("rules", json::array())) {
            RewriteRule r;
            r.id = jr.at("id").get<std::string>();
            r.lhs = parse_flat(jr.at("lhs").get<std::string>());
            r.rhs = parse_flat(jr.at("rhs").get<std::string>());
            sc.local_rules.push_back(std::move(r));
        }
        for (const auto& jt : js.at("steps")) {
            ScriptStep st;
            st.rule = jt.at("rule").get<std::string>();
            st.pos = jt.value("pos", 0);
            st.forward = jt.value("forward", true);
            st.inverted = jt.value("inverted", false);
            st.symbol = jt.value("symbol", "");
            st.result = parse_flat(jt.at("result").get<std::string>());
            sc.steps.push_back(std::move(st));
        }
        out.push_back(std::move(sc));
    }
    return out;
}

}  // namespace mcg

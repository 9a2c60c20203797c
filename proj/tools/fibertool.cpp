// Command-line front end: batch verification of the relation catalog,
// feasibility enumeration, N(g,1) bounds, and curve-image queries.

#include <chrono>
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcg/geography.hpp"
#include "mcg/relations.hpp"

using nlohmann::json;

namespace {

std::string resolve_data_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("FIBERTOOL_DATA")) return env;
    return "data";
}

int cmd_verify(const std::string& data_dir, const std::string& name, bool all, bool as_json) {
    mcg::DataSet ds;
    try {
        ds = mcg::load_data(resolve_data_dir(data_dir));
    } catch (const std::exception& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    }

    std::vector<mcg::RelationOutcome> outcomes;
    auto t0 = std::chrono::steady_clock::now();
    if (all) {
        // model validation first, then every catalog entry
        auto rep = ds.sigma22.validate();
        outcomes.push_back({"twist-tables", rep.all_pass(), rep.summary()});
        auto rep1 = ds.sigma21.validate();
        outcomes.push_back({"twist-tables-capped", rep1.all_pass(), rep1.summary()});
        for (auto& o : mcg::verify_all(ds)) outcomes.push_back(std::move(o));
    } else {
        const mcg::RelationEntry* e = mcg::find_entry(ds, name);
        if (!e) {
            std::cerr << "unknown relation: " << name << "\n";
            return 2;
        }
        outcomes.push_back(mcg::verify_relation(ds, *e));
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();

    bool ok = true;
    if (as_json) {
        json out;
        out["elapsed_ms"] = ms;
        out["results"] = json::array();
        for (const auto& o : outcomes) {
            out["results"].push_back(
                {{"name", o.name}, {"verified", o.verified}, {"detail", o.detail}});
            ok = ok && o.verified;
        }
        out["all_verified"] = ok;
        std::cout << out.dump(1) << "\n";
    } else {
        for (const auto& o : outcomes) {
            std::cout << (o.verified ? "[ ok ] " : "[FAIL] ") << o.name;
            if (!o.detail.empty()) std::cout << "  (" << o.detail << ")";
            std::cout << "\n";
            ok = ok && o.verified;
        }
        std::cout << outcomes.size() << " checks in " << ms << " ms\n";
    }
    return ok ? 0 : 3;
}

json report_to_json(const mcg::FeasibilityReport& rep) {
    json out;
    out["input"] = {{"g", rep.g}, {"h", rep.h}, {"k", rep.k}};
    out["tuples"] = json::array();
    for (const auto& t : rep.tuples) {
        json jt = {{"n", t.n}, {"s", t.s}, {"survives", t.survives}};
        if (t.sigma_listed) jt["sigma"] = t.sigma;
        jt["verdicts"] = json::array();
        for (const auto& v : t.verdicts)
            jt["verdicts"].push_back({{"id", v.id},
                                      {"applicable", v.applicable},
                                      {"pass", v.pass},
                                      {"witness", v.witness}});
        out["tuples"].push_back(std::move(jt));
    }
    out["survivors"] = json::array();
    for (const auto& s : rep.survivors)
        out["survivors"].push_back({{"n", s[0]}, {"s", s[1]}, {"sigma", s[2]}});
    out["provenance"] = "constraint enumeration (C1-C3, almost-complex divisibility, "
                        "mapping class group abelianization)";
    return out;
}

int cmd_feasible(int g, int h, long long k, bool as_json) {
    mcg::FeasibilityReport rep;
    try {
        rep = mcg::feasible_tuples(g, h, k);
    } catch (const std::exception& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    }
    if (as_json) {
        std::cout << report_to_json(rep).dump(1) << "\n";
        return 0;
    }
    std::cout << "g=" << g << " h=" << h << " k=" << k << "\n";
    for (const auto& t : rep.tuples) {
        std::cout << "  (n=" << t.n << ", s=" << t.s;
        if (t.sigma_listed) std::cout << ", sigma=" << t.sigma;
        std::cout << ") " << (t.survives ? "survives" : "excluded");
        for (const auto& v : t.verdicts)
            if (v.applicable && !v.pass) std::cout << " [" << v.id << "]";
        std::cout << "\n";
    }
    if (rep.survivors.empty())
        std::cout << "no feasible tuples\n";
    else {
        std::cout << "survivors:";
        for (const auto& s : rep.survivors)
            std::cout << " (" << s[0] << "," << s[1] << "," << s[2] << ")";
        std::cout << "\n";
    }
    return 0;
}

int cmd_bounds(int gmax, bool as_json) {
    std::vector<mcg::BoundsRow> rows;
    try {
        rows = mcg::n_bounds_table(gmax);
    } catch (const std::exception& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    }
    if (as_json) {
        json out = json::array();
        for (const auto& r : rows)
            out.push_back({{"g", r.g},
                           {"lower", r.lo},
                           {"upper", r.hi},
                           {"lower_provenance", r.lo_provenance},
                           {"upper_provenance", r.hi_provenance}});
        std::cout << out.dump(1) << "\n";
        return 0;
    }
    std::cout << "N(g,1) bounds\n";
    for (const auto& r : rows) {
        std::cout << "  g=" << r.g << ": [" << r.lo << ", " << r.hi << "]   (lower: "
                  << r.lo_provenance << "; upper: " << r.hi_provenance << ")\n";
    }
    return 0;
}

int cmd_act(const std::string& data_dir, const std::string& word, const std::string& curve,
            const std::string& arc, const std::string& model_name, bool as_json) {
    mcg::DataSet ds;
    try {
        ds = mcg::load_data(resolve_data_dir(data_dir));
    } catch (const std::exception& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    }
    const mcg::SurfaceModel& m = model_name == "sigma_2_1" ? ds.sigma21 : ds.sigma22;
    try {
        mcg::MappingClass mc = m.evaluate(word);
        json out;
        out["word"] = word;
        if (!curve.empty()) {
            mcg::Word img = m.image_of_curve(mc, curve);
            out["curve"] = curve;
            out["image"] = mcg::format_word(m.alphabet, img);
            out["status"] = mcg::to_string(m.fixed_up_to_isotopy(mc, curve));
        }
        if (!arc.empty()) {
            auto af = m.arc_fixed(mc, arc);
            out["arc"] = arc;
            out["fixed"] = af.fixed;
            out["strict"] = af.strict;
        }
        if (as_json) {
            std::cout << out.dump(1) << "\n";
        } else {
            if (out.contains("curve"))
                std::cout << "curve " << curve << " -> " << out["image"].get<std::string>()
                          << "   [" << out["status"].get<std::string>() << "]\n";
            if (out.contains("arc")) {
                bool fixed = out["fixed"].get<bool>(), strict = out["strict"].get<bool>();
                std::cout << "arc " << arc
                          << (!fixed ? ": moved"
                              : strict ? ": fixed (strict)"
                                       : ": fixed (up to boundary slides)")
                          << "\n";
            }
        }
        return 0;
    } catch (const mcg::error& e) {
        if (e.kind() == "unknown-twist" || e.kind() == "unknown-curve" ||
            e.kind() == "unknown-arc" || e.kind() == "parse") {
            std::cerr << "usage error: " << e.what() << "\n";
            return 2;
        }
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification toolkit for torus Lefschetz fibration monodromy"};
    app.require_subcommand(1);
    std::string data_dir;
    app.add_option("--data", data_dir, "data directory (default: $FIBERTOOL_DATA or ./data)");

    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");

    auto* verify = app.add_subcommand("verify", "verify catalog relations");
    std::string rel_name;
    bool all = false;
    verify->add_option("name", rel_name, "relation name");
    verify->add_flag("--all", all, "verify everything");

    auto* feasible = app.add_subcommand("feasible", "enumerate feasible (n,s,sigma) tuples");
    int fg = 2, fh = 1;
    long long fk = 1;
    feasible->set_help_flag("--help", "print help");  // frees -h for the base genus
    feasible->add_option("-g", fg, "fiber genus")->required();
    feasible->add_option("-h", fh, "base genus")->required();
    feasible->add_option("-k", fk, "number of singular fibers")->required();

    auto* bounds = app.add_subcommand("bounds", "N(g,1) interval table");
    int gmax = 6;
    bounds->add_option("--gmax", gmax, "largest fiber genus")->required();

    auto* act = app.add_subcommand("act", "image and fixedness of a curve or arc");
    std::string word, curve, arc, model_name = "sigma_2_2";
    act->add_option("--word", word, "twist word")->required();
    act->add_option("--curve", curve, "curve name");
    act->add_option("--arc", arc, "arc name");
    act->add_option("--model", model_name, "sigma_2_2 (default) or sigma_2_1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    if (verify->parsed()) {
        if (!all && rel_name.empty()) {
            std::cerr << "verify needs a relation name or --all\n";
            return 2;
        }
        return cmd_verify(data_dir, rel_name, all, as_json);
    }
    if (feasible->parsed()) return cmd_feasible(fg, fh, fk, as_json);
    if (bounds->parsed()) return cmd_bounds(gmax, as_json);
    if (act->parsed()) {
        if (curve.empty() && arc.empty()) {
            std::cerr << "act needs --curve or --arc\n";
            return 2;
        }
        return cmd_act(data_dir, word, curve, arc, model_name, as_json);
    }
    return 2;
}

#include "mcg/surface.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mcg {

using nlohmann::json;

MappingClass MappingClass::identity(int rank) {
    return {FreeGroupAut::identity(rank), Word(), FreeGroupAut::identity(rank), Word()};
}

MappingClass compose(const MappingClass& a, const MappingClass& b) {
    MappingClass c;
    c.aut = compose(a.aut, b.aut);
    c.defect = a.aut.apply(b.defect) * a.defect;
    c.iaut = compose(b.iaut, a.iaut);
    c.idefect = b.iaut.apply(a.idefect) * b.idefect;
    return c;
}

MappingClass MappingClass::pow(int n) const {
    MappingClass base = n < 0 ? inverse() : *this;
    int k = n < 0 ? -n : n;
    MappingClass r = MappingClass::identity(aut.rank());
    for (int i = 0; i < k; ++i) r = compose(r, base);
    return r;
}

bool ValidationReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string ValidationReport::summary() const {
    int bad = 0;
    for (const auto& c : checks)
        if (!c.pass) ++bad;
    std::ostringstream ss;
    ss << checks.size() << " checks, " << bad << " failing";
    return ss.str();
}

TwistWord parse_twist_word(const std::string& text) {
    TwistWord w;
    std::istringstream ss(text);
    std::string tok;
    while (ss >> tok) {
        int exp = 1;
        std::string name = tok;
        if (auto p = tok.find('^'); p != std::string::npos) {
            name = tok.substr(0, p);
            exp = std::stoi(tok.substr(p + 1));
        }
        if (name.empty()) throw error("parse", "empty twist symbol");
        w.emplace_back(name, exp);
    }
    return w;
}

std::string format_twist_word(const TwistWord& w) {
    std::string out;
    for (const auto& [s, e] : w) {
        if (e == 0) continue;
        if (!out.empty()) out += ' ';
        out += s;
        if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
}

TwistWord invert_twist_word(const TwistWord& w) {
    TwistWord out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.emplace_back(it->first, -it->second);
    return out;
}

const char* to_string(Fixedness f) {
    switch (f) {
        case Fixedness::FixedOriented: return "fixed-oriented";
        case Fixedness::FixedUnoriented: return "fixed-unoriented";
        default: return "moved";
    }
}

const NamedCurve* SurfaceModel::find_curve(const std::string& n) const {
    for (const auto& c : curves)
        if (c.name == n) return &c;
    return nullptr;
}

const TwistGenerator* SurfaceModel::find_twist(const std::string& n) const {
    for (const auto& t : twists)
        if (t.curve == n) return &t;
    return nullptr;
}

const NamedArc* SurfaceModel::find_arc(const std::string& n) const {
    for (const auto& a : arcs)
        if (a.name == n) return &a;
    return nullptr;
}

int SurfaceModel::intersection(const std::string& a, const std::string& b) const {
    if (a == b) return 0;
    auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    auto it = intersections.find(key);
    if (it == intersections.end()) throw error("intersections", "missing pair " + a + "," + b);
    return it->second;
}

MappingClass SurfaceModel::evaluate(const TwistWord& w) const {
    MappingClass m = MappingClass::identity(alphabet.rank());
    for (const auto& [name, exp] : w) {
        const TwistGenerator* t = find_twist(name);
        if (!t) throw error("unknown-twist", name);
        m = compose(m, t->action.pow(exp));
    }
    return m;
}

bool SurfaceModel::is_identity(const MappingClass& m) const {
    if (basepoint == BasepointMode::Boundary) return m.aut.is_identity() && m.defect.empty();
    // interior basepoint: identity up to the point-push recorded in the defect
    for (int i = 1; i <= alphabet.rank(); ++i) {
        Word target = m.defect * Word::letter(i) * m.defect.inverse();
        if (!(m.aut.images[i - 1] == target)) return false;
    }
    return true;
}

Word SurfaceModel::image_of_curve(const MappingClass& m, const std::string& curve) const {
    const NamedCurve* c = find_curve(curve);
    if (!c) throw error("unknown-curve", curve);
    return m.aut.apply(c->word);
}

Fixedness SurfaceModel::fixed_up_to_isotopy(const MappingClass& m, const std::string& curve) const {
    const NamedCurve* c = find_curve(curve);
    if (!c) throw error("unknown-curve", curve);
    Word img = m.aut.apply(c->word);
    if (conjugate_equal(img, c->word)) return Fixedness::FixedOriented;
    if (conjugate_equal(img, c->word.inverse())) return Fixedness::FixedUnoriented;
    return Fixedness::Moved;
}

Word SurfaceModel::arc_image(const MappingClass& m, const NamedArc& a) const {
    // image of (w, parity) is (aut(w) . deck^parity(defect), parity)
    Word d = m.defect;
    if (a.parity) d = deck.apply(d);
    return m.aut.apply(a.word) * d;
}

ArcFixedness SurfaceModel::arc_fixed(const MappingClass& m, const std::string& arc) const {
    const NamedArc* a = find_arc(arc);
    if (!a) throw error("unknown-arc", arc);
    Word img = arc_image(m, *a);
    ArcFixedness out;
    if (img == a->word) {
        out.fixed = out.strict = true;
        return out;
    }
    // endpoint slides: img == d0^k . word . S^m with S the far-boundary loop
    // at the arc's endpoint lift
    auto it0 = boundary_words.begin();
    if (boundary_words.empty()) return out;
    Word d0 = it0->second;
    const TwistGenerator* t2 = find_twist("delta2");
    if (!t2) return out;
    Word s = t2->action.defect;
    if (a->parity) s = deck.apply(s);
    long long bound = static_cast<long long>(img.size() + a->word.size()) + 2;
    long long kmax = d0.empty() ? 0 : bound / static_cast<long long>(d0.size()) + 1;
    long long mmax = s.empty() ? 0 : bound / static_cast<long long>(s.size()) + 1;
    for (long long k = -kmax; k <= kmax; ++k)
        for (long long mm = -mmax; mm <= mmax; ++mm) {
            if (d0.pow(static_cast<int>(k)) * a->word * s.pow(static_cast<int>(mm)) == img) {
                out.fixed = true;
                return out;
            }
        }
    return out;
}

bool SurfaceModel::is_separating(const std::string& curve) const {
    const NamedCurve* c = find_curve(curve);
    if (!c) throw error("unknown-curve", curve);
    std::vector<IntVec> bnd;
    for (const auto& [nm, w] : boundary_words) bnd.push_back(w.abelianization(alphabet.rank()));
    return in_integer_span(bnd, c->h1);
}

ValidationReport SurfaceModel::validate() const {
    ValidationReport rep;
    auto add = [&](std::string nm, bool ok, std::string detail = "") {
        rep.checks.push_back({std::move(nm), ok, std::move(detail)});
    };

    add("intersection-form", lattice.is_skew());

    for (const auto& t : twists) {
        const std::string& n = t.curve;
        MappingClass fwd{t.action.aut, t.action.defect, t.action.iaut, t.action.idefect};
        bool inv_ok = compose(fwd, fwd.inverse()).same_as(MappingClass::identity(alphabet.rank())) &&
                      compose(fwd.inverse(), fwd).same_as(MappingClass::identity(alphabet.rank()));
        add("inverse-table:" + n, inv_ok);

        const NamedCurve* c = find_curve(n);
        add("own-curve:" + n, c && conjugate_equal(t.action.aut.apply(c->word), c->word));

        if (c) {
            add("h1-class:" + n, c->word.abelianization(alphabet.rank()) == c->h1);
            add("separating-flag:" + n, is_separating(n) == c->separating);
            IntMat tv = transvection(lattice, c->h1);
            add("transvection:" + n, t.action.aut.abelianization() == tv);
        }
    }

    // commute when disjoint, braid when meeting once
    std::vector<std::string> names;
    for (const auto& t : twists) names.push_back(t.curve);
    std::sort(names.begin(), names.end());
    for (size_t i = 0; i < names.size(); ++i)
        for (size_t j = i + 1; j < names.size(); ++j) {
            int cnt = intersection(names[i], names[j]);
            MappingClass a = find_twist(names[i])->action;
            MappingClass b = find_twist(names[j])->action;
            if (cnt == 0) {
                add("commute:" + names[i] + "," + names[j],
                    compose(a, b).same_as(compose(b, a)));
            } else if (cnt == 1) {
                add("braid:" + names[i] + "," + names[j],
                    compose(compose(a, b), a).same_as(compose(compose(b, a), b)));
            }
        }

    for (const auto& [nm, w] : boundary_words) {
        std::vector<IntVec> others;
        for (const auto& [nm2, w2] : boundary_words)
            if (nm2 != nm) others.push_back(w2.abelianization(alphabet.rank()));
        if (!others.empty())
            add("boundary-class:" + nm,
                in_integer_span(others, w.abelianization(alphabet.rank())) ||
                    in_integer_span(others, Word(w).inverse().abelianization(alphabet.rank())));
    }
    return rep;
}

// ------------------------------------------------------------------ capping

SurfaceModel SurfaceModel::cap_disk(const std::string& boundary) const {
    auto bit = boundary_words.find(boundary);
    if (bit == boundary_words.end()) throw error("unknown-boundary", boundary);
    const Word& w = bit->second;
    int rank = alphabet.rank();

    // the boundary word must contain some generator exactly once
    int gen = 0, where = -1, sign = 0;
    for (int g = 1; g <= rank && !gen; ++g) {
        int count = 0, pos = -1;
        for (size_t i = 0; i < w.letters().size(); ++i)
            if (std::abs(w.letters()[i]) == g) {
                ++count;
                pos = static_cast<int>(i);
            }
        if (count == 1) {
            gen = g;
            where = pos;
            sign = w.letters()[pos] > 0 ? 1 : -1;
        }
    }
    if (!gen) throw error("cap", "boundary word not solvable for a single generator");

    // w = p g^sign q = 1  =>  g^sign = p^-1 q^-1
    Word p = Word::reduce(std::span<const int>(w.letters().data(), where));
    Word q = Word::reduce(std::span<const int>(w.letters().data() + where + 1,
                                               w.letters().size() - where - 1));
    Word sol = p.inverse() * q.inverse();
    if (sign < 0) sol = sol.inverse();

    // substitution endomorphism, then delete generator `gen`
    FreeGroupAut subst = FreeGroupAut::identity(rank);
    subst.images[gen - 1] = sol;
    auto strip = [&](const Word& u) {
        std::vector<int> out;
        for (int l : subst.apply(u).letters()) {
            int g = l > 0 ? l : -l;
            if (g == gen) throw error("cap", "substitution failed to eliminate generator");
            out.push_back(l > 0 ? (g > gen ? l - 1 : l) : (g > gen ? l + 1 : l));
        }
        return Word::reduce(out);
    };

    SurfaceModel m;
    m.name = name + ":cap(" + boundary + ")";
    m.genus = genus;
    m.boundaries = boundaries - 1;
    for (int g = 1; g <= rank; ++g)
        if (g != gen) m.alphabet.names.push_back(alphabet.names[g - 1]);

    bool capped_basepoint = (basepoint == BasepointMode::Boundary &&
                             boundary_words.begin()->first == boundary);
    m.basepoint = capped_basepoint ? BasepointMode::Interior : basepoint;

    // homology: elimination is valid here because the capped class is the
    // eliminated generator's class and pairs trivially
    IntVec bclass = w.abelianization(rank);
    for (int i = 0; i < rank; ++i) {
        long long expect = (i == gen - 1) ? sign : 0;
        if (bclass[i] != expect) throw error("cap", "boundary class not reduced to the generator");
        if (lattice.form[gen - 1][i] != 0) throw error("cap", "eliminated class pairs nontrivially");
    }
    for (int i = 0; i < rank; ++i) {
        if (i == gen - 1) continue;
        IntVec row;
        for (int j = 0; j < rank; ++j)
            if (j != gen - 1) row.push_back(lattice.form[i][j]);
        m.lattice.form.push_back(std::move(row));
    }

    for (const auto& [nm, bw] : boundary_words)
        if (nm != boundary) m.boundary_words[nm] = strip(bw);

    m.deck.images.clear();
    for (int g = 1; g <= rank; ++g)
        if (g != gen) m.deck.images.push_back(strip(deck.images[g - 1]));

    for (const auto& c : curves) {
        if (c.name == boundary) continue;
        NamedCurve nc;
        nc.name = c.name;
        nc.word = strip(c.word);
        nc.h1 = nc.word.abelianization(m.alphabet.rank());
        m.curves.push_back(std::move(nc));
    }
    for (auto& nc : m.curves) {
        std::vector<IntVec> bnd;
        for (const auto& [nm2, w2] : m.boundary_words)
            bnd.push_back(w2.abelianization(m.alphabet.rank()));
        nc.separating = in_integer_span(bnd, nc.h1);
    }

    bool keep_defects = capped_basepoint;  // capping delta2 makes defects moot
    for (const auto& t : twists) {
        if (t.curve == boundary) continue;
        TwistGenerator nt;
        nt.curve = t.curve;
        nt.action.aut.images.clear();
        nt.action.iaut.images.clear();
        for (int g = 1; g <= rank; ++g) {
            if (g == gen) continue;
            nt.action.aut.images.push_back(strip(t.action.aut.images[g - 1]));
            nt.action.iaut.images.push_back(strip(t.action.iaut.images[g - 1]));
        }
        if (keep_defects) {
            nt.action.defect = strip(t.action.defect);
            nt.action.idefect = strip(t.action.idefect);
        }
        m.twists.push_back(std::move(nt));
    }

    for (const auto& [key, cnt] : intersections)
        if (key.first != boundary && key.second != boundary) m.intersections[key] = cnt;

    // arcs ran between the two boundary components; they do not survive
    return m;
}

// ---------------------------------------------------------------- document

namespace {

Word parse_or_throw(const Alphabet& ab, const json& j, const std::string& what) {
    if (!j.is_string()) throw error("parse", what + " is not a string");
    return parse_word(ab, j.get<std::string>());
}

}  // namespace

SurfaceModel load_curve_system_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const std::exception& e) {
        throw error("parse", e.what());
    }
    SurfaceModel m;
    try {
        m.name = doc.value("name", "");
        m.genus = doc.at("surface").at("genus").get<int>();
        m.boundaries = doc.at("surface").at("boundaries").get<int>();
        for (const auto& n : doc.at("pi1").at("generators"))
            m.alphabet.names.push_back(n.get<std::string>());
        int expected = 2 * m.genus + m.boundaries - 1;
        if (m.alphabet.rank() != expected)
            throw error("rank", "pi1 rank " + std::to_string(m.alphabet.rank()) +
                                    " does not match 2g+b-1 = " + std::to_string(expected));
        std::string bp = doc.at("pi1").value("basepoint", "boundary");
        m.basepoint = bp.rfind("interior", 0) == 0 ? BasepointMode::Interior : BasepointMode::Boundary;
        for (auto& [k, v] : doc.at("pi1").at("boundary_words").items())
            m.boundary_words[k] = parse_or_throw(m.alphabet, v, "boundary word " + k);

        if (doc.contains("deck")) {
            m.deck.images.assign(m.alphabet.rank(), Word());
            for (auto& [k, v] : doc.at("deck").items()) {
                int idx = m.alphabet.index_of(k);
                if (!idx) throw error("unknown-generator", k);
                m.deck.images[idx - 1] = parse_or_throw(m.alphabet, v, "deck image");
            }
        } else {
            m.deck = FreeGroupAut::identity(m.alphabet.rank());
        }

        for (const auto& row : doc.at("homology").at("intersection_matrix")) {
            IntVec r;
            for (const auto& x : row) r.push_back(x.get<long long>());
            m.lattice.form.push_back(std::move(r));
        }
        if (static_cast<int>(m.lattice.form.size()) != m.alphabet.rank())
            throw error("intersection-form", "matrix size mismatch");
        if (!m.lattice.is_skew()) throw error("intersection-form", "matrix not skew-symmetric");

        for (const auto& c : doc.at("curves")) {
            NamedCurve nc;
            nc.name = c.at("name").get<std::string>();
            nc.word = parse_or_throw(m.alphabet, c.at("word"), "curve " + nc.name);
            for (const auto& x : c.at("h1")) nc.h1.push_back(x.get<long long>());
            nc.separating = c.at("separating").get<bool>();
            if (nc.word.abelianization(m.alphabet.rank()) != nc.h1)
                throw error("h1-class", "curve " + nc.name);
            m.curves.push_back(std::move(nc));
        }

        for (const auto& a : doc.value("arcs", json::array())) {
            NamedArc na;
            na.name = a.at("name").get<std::string>();
            std::string w = a.at("word").get<std::string>();
            // the word ends in a connector symbol @0 or @1
            auto pos = w.rfind('@');
            if (pos == std::string::npos) throw error("parse", "arc without connector: " + na.name);
            na.parity = std::stoi(w.substr(pos + 1));
            na.word = parse_word(m.alphabet, w.substr(0, pos));
            m.arcs.push_back(std::move(na));
        }

        for (const auto& t : doc.at("twists")) {
            TwistGenerator tg;
            tg.curve = t.at("curve").get<std::string>();
            if (!t.contains("inverse_images"))
                throw error("missing-inverse", "twist " + tg.curve);
            tg.action.aut.images.assign(m.alphabet.rank(), Word());
            tg.action.iaut.images.assign(m.alphabet.rank(), Word());
            for (auto& [k, v] : t.at("images").items()) {
                int idx = m.alphabet.index_of(k);
                if (!idx) throw error("unknown-generator", k);
                tg.action.aut.images[idx - 1] = parse_or_throw(m.alphabet, v, "twist image");
            }
            for (auto& [k, v] : t.at("inverse_images").items()) {
                int idx = m.alphabet.index_of(k);
                if (!idx) throw error("unknown-generator", k);
                tg.action.iaut.images[idx - 1] = parse_or_throw(m.alphabet, v, "twist image");
            }
            tg.action.defect = parse_word(m.alphabet, t.value("defect", ""));
            tg.action.idefect = parse_word(m.alphabet, t.value("inverse_defect", ""));
            m.twists.push_back(std::move(tg));
        }

        for (const auto& e : doc.at("intersections")) {
            std::string a = e.at("a").get<std::string>(), b = e.at("b").get<std::string>();
            auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
            m.intersections[key] = e.at("count").get<int>();
        }
    } catch (const json::exception& e) {
        throw error("parse", e.what());
    }
    return m;
}

SurfaceModel load_curve_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("io", "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_curve_system_text(ss.str());
}

std::string save_curve_system(const SurfaceModel& m) {
    json doc;
    doc["name"] = m.name;
    doc["surface"] = {{"genus", m.genus}, {"boundaries", m.boundaries}};
    doc["pi1"]["generators"] = m.alphabet.names;
    doc["pi1"]["basepoint"] = m.basepoint == BasepointMode::Interior ? "interior" : "boundary";
    for (const auto& [k, v] : m.boundary_words)
        doc["pi1"]["boundary_words"][k] = format_word(m.alphabet, v);
    for (int i = 0; i < m.alphabet.rank(); ++i)
        doc["deck"][m.alphabet.names[i]] = format_word(m.alphabet, m.deck.images[i]);
    doc["homology"]["intersection_matrix"] = m.lattice.form;
    doc["curves"] = json::array();
    for (const auto& c : m.curves)
        doc["curves"].push_back({{"name", c.name},
                                 {"word", format_word(m.alphabet, c.word)},
                                 {"h1", c.h1},
                                 {"separating", c.separating}});
    doc["arcs"] = json::array();
    for (const auto& a : m.arcs) {
        std::string w = format_word(m.alphabet, a.word);
        if (!w.empty()) w += ' ';
        w += "@" + std::to_string(a.parity);
        doc["arcs"].push_back({{"name", a.name}, {"word", w}});
    }
    doc["twists"] = json::array();
    for (const auto& t : m.twists) {
        json jt;
        jt["curve"] = t.curve;
        for (int i = 0; i < m.alphabet.rank(); ++i) {
            jt["images"][m.alphabet.names[i]] = format_word(m.alphabet, t.action.aut.images[i]);
            jt["inverse_images"][m.alphabet.names[i]] =
                format_word(m.alphabet, t.action.iaut.images[i]);
        }
        jt["defect"] = format_word(m.alphabet, t.action.defect);
        jt["inverse_defect"] = format_word(m.alphabet, t.action.idefect);
        doc["twists"].push_back(std::move(jt));
    }
    doc["intersections"] = json::array();
    for (const auto& [key, cnt] : m.intersections)
        doc["intersections"].push_back({{"a", key.first}, {"b", key.second}, {"count", cnt}});
    return doc.dump(1);
}

}  // namespace mcg

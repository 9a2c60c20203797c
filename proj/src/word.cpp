#include "mcg/word.hpp"

#include <algorithm>
#include <sstream>

namespace mcg {

int Alphabet::index_of(const std::string& name) const {
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i) + 1;
    return 0;
}

Alphabet Alphabet::of(std::initializer_list<const char*> ns) {
    Alphabet ab;
    for (const char* n : ns) ab.names.emplace_back(n);
    for (size_t i = 0; i < ab.names.size(); ++i)
        for (size_t j = i + 1; j < ab.names.size(); ++j)
            if (ab.names[i] == ab.names[j]) throw error("alphabet", "duplicate generator name");
    return ab;
}

Word Word::reduce(std::span<const int> raw) {
    Word w;
    w.ls_.reserve(raw.size());
    for (int l : raw) {
        if (l == 0) throw error("word", "zero letter");
        if (!w.ls_.empty() && w.ls_.back() == -l)
            w.ls_.pop_back();
        else
            w.ls_.push_back(l);
    }
    return w;
}

Word Word::reduce(std::initializer_list<int> raw) {
    return reduce(std::span<const int>(raw.begin(), raw.size()));
}

Word Word::operator*(const Word& o) const {
    Word w;
    w.ls_ = ls_;
    for (int l : o.ls_) {
        if (!w.ls_.empty() && w.ls_.back() == -l)
            w.ls_.pop_back();
        else
            w.ls_.push_back(l);
    }
    return w;
}

Word Word::inverse() const {
    Word w;
    w.ls_.reserve(ls_.size());
    for (auto it = ls_.rbegin(); it != ls_.rend(); ++it) w.ls_.push_back(-*it);
    return w;
}

Word Word::pow(int n) const {
    Word base = n < 0 ? inverse() : *this;
    int k = n < 0 ? -n : n;
    Word r;
    for (int i = 0; i < k; ++i) r = r * base;
    return r;
}

Word Word::cyclic_reduced() const {
    size_t a = 0, b = ls_.size();
    while (b - a >= 2 && ls_[a] == -ls_[b - 1]) {
        ++a;
        --b;
    }
    Word w;
    w.ls_.assign(ls_.begin() + a, ls_.begin() + b);
    return w;
}

std::vector<long long> Word::abelianization(int rank) const {
    std::vector<long long> v(rank, 0);
    for (int l : ls_) {
        int i = l > 0 ? l : -l;
        if (i > rank) throw error("word", "letter outside alphabet");
        v[i - 1] += l > 0 ? 1 : -1;
    }
    return v;
}

Word parse_word(const Alphabet& ab, const std::string& text) {
    std::vector<int> raw;
    std::istringstream ss(text);
    std::string tok;
    while (ss >> tok) {
        int sign = 1;
        std::string name = tok;
        if (auto p = tok.find('^'); p != std::string::npos) {
            name = tok.substr(0, p);
            std::string exp = tok.substr(p + 1);
            if (exp != "-1") throw error("parse", "unsupported exponent '" + exp + "'");
            sign = -1;
        }
        int idx = ab.index_of(name);
        if (idx == 0) throw error("unknown-generator", name);
        raw.push_back(sign * idx);
    }
    return Word::reduce(raw);
}

std::string format_word(const Alphabet& ab, const Word& w) {
    std::string out;
    for (int l : w.letters()) {
        if (!out.empty()) out += ' ';
        out += ab.name_of(l > 0 ? l : -l);
        if (l < 0) out += "^-1";
    }
    return out;
}

bool conjugate_equal(const Word& u, const Word& v, bool unoriented) {
    Word cu = u.cyclic_reduced(), cv = v.cyclic_reduced();
    auto rotations_match = [](const Word& x, const Word& y) {
        if (x.size() != y.size()) return false;
        if (x.empty()) return true;
        // search y inside x·x (doubling trick)
        std::vector<int> xx = x.letters();
        xx.insert(xx.end(), x.letters().begin(), x.letters().end());
        const auto& yy = y.letters();
        return std::search(xx.begin(), xx.end(), yy.begin(), yy.end()) != xx.end();
    };
    if (rotations_match(cu, cv)) return true;
    if (unoriented) return rotations_match(cu.inverse(), cv);
    return false;
}

Word FreeGroupAut::apply(const Word& w) const {
    Word out;
    for (int l : w.letters()) {
        int i = l > 0 ? l : -l;
        if (i > rank()) throw error("aut", "letter outside alphabet");
        out = out * (l > 0 ? images[i - 1] : images[i - 1].inverse());
    }
    return out;
}

bool FreeGroupAut::is_identity() const {
    for (int i = 0; i < rank(); ++i)
        if (images[i].letters() != std::vector<int>{i + 1}) return false;
    return true;
}

std::vector<std::vector<long long>> FreeGroupAut::abelianization() const {
    int n = rank();
    std::vector<std::vector<long long>> m(n, std::vector<long long>(n, 0));
    for (int j = 0; j < n; ++j) {
        auto col = images[j].abelianization(n);
        for (int i = 0; i < n; ++i) m[i][j] = col[i];
    }
    return m;
}

FreeGroupAut FreeGroupAut::identity(int rank) {
    FreeGroupAut a;
    for (int i = 1; i <= rank; ++i) a.images.push_back(Word::letter(i));
    return a;
}

FreeGroupAut compose(const FreeGroupAut& a, const FreeGroupAut& b) {
    if (a.rank() != b.rank()) throw error("aut", "rank mismatch in composition");
    FreeGroupAut c;
    c.images.reserve(b.images.size());
    for (const Word& img : b.images) c.images.push_back(a.apply(img));
    return c;
}

}  // namespace mcg

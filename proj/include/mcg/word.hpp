#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcg {

// Error with a short machine-readable kind tag ("parse", "missing-inverse", ...).
class error : public std::runtime_error {
public:
    error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

// Ordered list of distinct generator names of a free group.
struct Alphabet {
    std::vector<std::string> names;

    int rank() const { return static_cast<int>(names.size()); }
    // 1-based index, 0 if the name is unknown.
    int index_of(const std::string& name) const;
    const std::string& name_of(int index) const { return names.at(index - 1); }
    bool operator==(const Alphabet&) const = default;

    static Alphabet of(std::initializer_list<const char*> ns);
};

// Freely reduced word; letters are signed 1-based generator indices.
class Word {
public:
    Word() = default;

    // Reduces an arbitrary letter sequence.  Letters must be nonzero.
    static Word reduce(std::span<const int> raw);
    static Word reduce(std::initializer_list<int> raw);
    static Word letter(int l) { return reduce({l}); }

    const std::vector<int>& letters() const { return ls_; }
    size_t size() const { return ls_.size(); }
    bool empty() const { return ls_.empty(); }
    bool operator==(const Word&) const = default;

    Word operator*(const Word& o) const;
    Word inverse() const;
    Word pow(int n) const;
    Word conjugated_by(const Word& y) const { return y * *this * y.inverse(); }

    // Cyclic reduction (strips w = a u a^-1 down to u).
    Word cyclic_reduced() const;

    std::vector<long long> abelianization(int rank) const;

private:
    std::vector<int> ls_;
};

// Textual form: whitespace-separated generator names, "^-1" suffix for inverses.
Word parse_word(const Alphabet& ab, const std::string& text);
std::string format_word(const Alphabet& ab, const Word& w);

// Conjugacy of u and v; with unoriented set, also compares against v^-1.
bool conjugate_equal(const Word& u, const Word& v, bool unoriented = false);

// Free group endomorphism given by generator images; invertible ones are
// automorphisms (|det| of the abelianization is a cheap necessary check).
struct FreeGroupAut {
    std::vector<Word> images;  // images[i] = image of generator i+1

    int rank() const { return static_cast<int>(images.size()); }
    Word apply(const Word& w) const;
    bool is_identity() const;
    bool operator==(const FreeGroupAut&) const = default;
    std::vector<std::vector<long long>> abelianization() const;

    static FreeGroupAut identity(int rank);
};

// Functional order: (a o b)(x) = a(b(x)); b is applied first.
FreeGroupAut compose(const FreeGroupAut& a, const FreeGroupAut& b);

}  // namespace mcg

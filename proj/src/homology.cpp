#include "mcg/homology.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <numeric>

namespace mcg {

IntMat identity_matrix(int n) {
    IntMat m(n, IntVec(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IntMat matmul(const IntMat& a, const IntMat& b) {
    size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    IntMat c(n, IntVec(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            long long av = a[i][l];
            if (!av) continue;
            for (size_t j = 0; j < m; ++j) c[i][j] += av * b[l][j];
        }
    return c;
}

IntMat transpose(const IntMat& m) {
    size_t r = m.size(), c = m.empty() ? 0 : m[0].size();
    IntMat t(c, IntVec(r, 0));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) t[j][i] = m[i][j];
    return t;
}

bool is_zero(const IntMat& m) {
    for (const auto& row : m)
        for (long long x : row)
            if (x) return false;
    return true;
}

long long H1Lattice::pair(const IntVec& u, const IntVec& v) const {
    long long s = 0;
    for (size_t i = 0; i < form.size(); ++i) {
        if (!u[i]) continue;
        for (size_t j = 0; j < form.size(); ++j) s += u[i] * form[i][j] * v[j];
    }
    return s;
}

bool H1Lattice::is_skew() const {
    for (size_t i = 0; i < form.size(); ++i)
        for (size_t j = 0; j < form.size(); ++j)
            if (form[i][j] != -form[j][i]) return false;
    return true;
}

IntMat transvection(const H1Lattice& lat, const IntVec& c) {
    int n = lat.rank();
    if (static_cast<int>(c.size()) != n) throw error("homology", "class dimension mismatch");
    // (Jc)_j gives <e_j, c>; T = I + c (Jc)^T
    IntVec jc(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) jc[i] += lat.form[i][j] * c[j];
    IntMat t = identity_matrix(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[i][j] += c[i] * jc[j];
    return t;
}

bool is_symplectic(const H1Lattice& lat, const IntMat& m) {
    return matmul(matmul(transpose(m), lat.form), m) == lat.form;
}

// ---------------------------------------------------------------- Smith form

namespace {

struct Smith {
    IntMat s, u, v;  // u * a * v = s, u and v unimodular
    int rank = 0;
};

Smith smith(IntMat a) {
    int rows = static_cast<int>(a.size());
    int cols = rows ? static_cast<int>(a[0].size()) : 0;
    Smith out;
    out.u = identity_matrix(rows);
    out.v = identity_matrix(cols);
    auto row_add = [&](int dst, int src, long long f) {
        for (int j = 0; j < cols; ++j) a[dst][j] += f * a[src][j];
        for (int j = 0; j < rows; ++j) out.u[dst][j] += f * out.u[src][j];
    };
    auto col_add = [&](int dst, int src, long long f) {
        for (int i = 0; i < rows; ++i) a[i][dst] += f * a[i][src];
        for (int i = 0; i < cols; ++i) out.v[i][dst] += f * out.v[i][src];
    };
    auto row_swap = [&](int x, int y) {
        std::swap(a[x], a[y]);
        std::swap(out.u[x], out.u[y]);
    };
    auto col_swap = [&](int x, int y) {
        for (int i = 0; i < rows; ++i) std::swap(a[i][x], a[i][y]);
        for (int i = 0; i < cols; ++i) std::swap(out.v[i][x], out.v[i][y]);
    };

    int t = 0;
    while (t < rows && t < cols) {
        // locate a minimal nonzero entry in the remaining block
        int pi = -1, pj = -1;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j)
                if (a[i][j] && (pi < 0 || std::llabs(a[i][j]) < std::llabs(a[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
        if (pi < 0) break;
        row_swap(t, pi);
        col_swap(t, pj);
        bool again = true;
        while (again) {
            again = false;
            for (int i = t + 1; i < rows; ++i) {
                if (!a[i][t]) continue;
                long long q = a[i][t] / a[t][t];
                row_add(i, t, -q);
                if (a[i][t]) {  // remainder smaller than pivot: swap and retry
                    row_swap(t, i);
                    again = true;
                }
            }
            for (int j = t + 1; j < cols; ++j) {
                if (!a[t][j]) continue;
                long long q = a[t][j] / a[t][t];
                col_add(j, t, -q);
                if (a[t][j]) {
                    col_swap(t, j);
                    again = true;
                }
            }
        }
        ++t;
    }
    out.rank = t;
    out.s = std::move(a);
    return out;
}

}  // namespace

int int_rank(IntMat m) { return smith(std::move(m)).rank; }

bool in_integer_span(const std::vector<IntVec>& vecs, const IntVec& target) {
    if (vecs.empty()) {
        for (long long x : target)
            if (x) return false;
        return true;
    }
    int dim = static_cast<int>(target.size());
    int n = static_cast<int>(vecs.size());
    IntMat a(dim, IntVec(n, 0));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < dim; ++i) a[i][j] = vecs[j][i];
    Smith sf = smith(a);
    // solve a x = target:  u a v y = u target, x = v y
    IntVec t(dim, 0);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) t[i] += sf.u[i][j] * target[j];
    for (int i = 0; i < dim; ++i) {
        if (i < sf.rank && i < n) {
            if (t[i] % sf.s[i][i]) return false;
        } else if (t[i]) {
            return false;
        }
    }
    return true;
}

std::optional<DependenceCertificate> dependence_certificate(const std::vector<IntVec>& classes) {
    if (classes.empty()) return std::nullopt;
    int dim = static_cast<int>(classes[0].size());
    for (int l = 1; l <= static_cast<int>(classes.size()); ++l) {
        IntMat a(dim, IntVec(l, 0));
        for (int j = 0; j < l; ++j)
            for (int i = 0; i < dim; ++i) a[i][j] = classes[j][i];
        Smith sf = smith(a);
        if (sf.rank == l) continue;
        // first l-1 columns independent by minimality, so the kernel is one
        // primitive vector: the last column of v beyond the rank
        DependenceCertificate cert;
        cert.length = l;
        cert.coefficients.assign(l, 0);
        for (int i = 0; i < l; ++i) cert.coefficients[i] = sf.v[i][sf.rank];
        long long g = 0;
        for (long long x : cert.coefficients) g = std::gcd(g, std::llabs(x));
        if (g > 1)
            for (auto& x : cert.coefficients) x /= g;
        // normalize: last nonzero coefficient positive
        for (int i = l - 1; i >= 0; --i)
            if (cert.coefficients[i]) {
                if (cert.coefficients[i] < 0)
                    for (auto& x : cert.coefficients) x = -x;
                break;
            }
        if (cert.coefficients[l - 1] == 0)
            throw error("homology", "dependence certificate with vanishing last coefficient");
        return cert;
    }
    return std::nullopt;
}

long long surface_square(const DependenceCertificate& cert) {
    long long s = 0;
    for (long long x : cert.coefficients) s -= x * x;
    return s;
}

long long b2minus_lower_bound(long long m, long long n, long long s, long long g) {
    if (m < 1) throw error("domain", "cover degree must be positive");
    if (n < 0 || s < 0 || g < 1) throw error("domain", "invalid (n,s,g)");
    return m * s + (m * n) / (2 * g + 1);
}

// ---------------------------------------------------------- Meyer cocycle

namespace {
long long det_ll(IntMat m);
}  // namespace

IntMat int_inverse(const IntMat& m) {
    int n = static_cast<int>(m.size());
    long long d = det_ll(m);
    if (d != 1 && d != -1) throw error("homology", "matrix not invertible over Z");
    // adjugate via cofactors (matrices here are tiny)
    IntMat inv(n, IntVec(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            IntMat minor(n - 1, IntVec(n - 1, 0));
            for (int r = 0, rr = 0; r < n; ++r) {
                if (r == j) continue;
                for (int c = 0, cc = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor[rr][cc++] = m[r][c];
                }
                ++rr;
            }
            long long cof = det_ll(minor);
            inv[i][j] = ((i + j) % 2 ? -cof : cof) * d;
        }
    return inv;
}

namespace {

long long det_ll(IntMat a) {
    // Bareiss fraction-free determinant
    int n = static_cast<int>(a.size());
    if (n == 0) return 1;
    long long prev = 1, sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i][k]) {
                    p = i;
                    break;
                }
            if (p < 0) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

}  // namespace

// integer kernel basis of an r x c matrix
std::vector<IntVec> int_kernel(const IntMat& m) {
    int rows = static_cast<int>(m.size());
    int cols = rows ? static_cast<int>(m[0].size()) : 0;
    Smith sf = smith(m);
    std::vector<IntVec> out;
    for (int j = sf.rank; j < cols; ++j) {
        IntVec k(cols, 0);
        for (int i = 0; i < cols; ++i) k[i] = sf.v[i][j];
        out.push_back(std::move(k));
    }
    (void)rows;
    return out;
}

std::optional<IntVec> solve_integer(const IntMat& a, const IntVec& b) {
    int rows = static_cast<int>(a.size());
    int cols = rows ? static_cast<int>(a[0].size()) : 0;
    Smith sf = smith(a);
    IntVec t(rows, 0);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < rows; ++j) t[i] += sf.u[i][j] * b[j];
    IntVec y(cols, 0);
    for (int i = 0; i < rows; ++i) {
        if (i < sf.rank && i < cols) {
            if (t[i] % sf.s[i][i]) return std::nullopt;
            y[i] = t[i] / sf.s[i][i];
        } else if (t[i]) {
            return std::nullopt;
        }
    }
    IntVec x(cols, 0);
    for (int i = 0; i < cols; ++i)
        for (int j = 0; j < cols; ++j) x[i] += sf.v[i][j] * y[j];
    return x;
}

long long det(IntMat m) { return det_ll(std::move(m)); }

int symmetric_signature(IntMat m) {
    int n = static_cast<int>(m.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (m[i][j] != m[j][i]) throw error("homology", "matrix not symmetric");
    int pos = 0, neg = 0;
    // scale basis vector i by 1/g: needs g | off-diagonal row entries and
    // g^2 | diagonal entry
    auto rescale = [&](int i) {
        long long g = 0;
        for (int j = 0; j < n; ++j)
            if (j != i) g = std::gcd(g, std::llabs(m[i][j]));
        if (g == 0) g = std::llabs(m[i][i]);
        while (g > 1 && m[i][i] % (g * g) != 0) {
            long long d = 2;
            while (g % d) ++d;
            g /= d;
        }
        if (g <= 1) return;
        for (int j = 0; j < n; ++j) m[i][j] /= g;
        for (int j = 0; j < n; ++j) m[j][i] /= g;
    };
    for (int k = 0; k < n; ++k) {
        if (m[k][k] == 0) {
            int jj = -1;
            for (int j = k + 1; j < n; ++j)
                if (m[k][j]) {
                    jj = j;
                    break;
                }
            if (jj < 0) continue;  // null direction
            // add row/col jj into k: new diagonal 2 m[k][jj] + m[jj][jj]
            for (int j = 0; j < n; ++j) m[k][j] += m[jj][j];
            for (int i = 0; i < n; ++i) m[i][k] += m[i][jj];
            if (m[k][k] == 0) {
                // had m[jj][jj] = -2 m[k][jj]: use the difference instead
                for (int j = 0; j < n; ++j) m[k][j] -= 2 * m[jj][j];
                for (int i = 0; i < n; ++i) m[i][k] -= 2 * m[i][jj];
            }
            if (m[k][k] == 0) throw error("homology", "signature pivot failure");
        }
        long long p = m[k][k];
        (p > 0 ? pos : neg)++;
        for (int i = k + 1; i < n; ++i) {
            if (!m[i][k]) continue;
            long long f = m[i][k];
            // congruence row_i := p row_i - f row_k, same on columns; the
            // complementary block scales by p^2 > 0, signature unchanged
            for (int j = 0; j < n; ++j) m[i][j] = p * m[i][j] - f * m[k][j];
            for (int j = 0; j < n; ++j) m[j][i] = p * m[j][i] - f * m[j][k];
            rescale(i);
        }
    }
    return pos - neg;
}

int meyer_cocycle(const H1Lattice& lat, const IntMat& a, const IntMat& b) {
    int n = lat.rank();
    if (!is_symplectic(lat, a) || !is_symplectic(lat, b))
        throw error("homology", "meyer cocycle needs symplectic arguments");
    IntMat ainv = int_inverse(a);
    // pair space: (x, y) with (A^{-1} - I) x + (B - I) y = 0
    IntMat sys(n, IntVec(2 * n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            sys[i][j] = ainv[i][j] - (i == j ? 1 : 0);
            sys[i][n + j] = b[i][j] - (i == j ? 1 : 0);
        }
    std::vector<IntVec> ker = int_kernel(sys);
    int d = static_cast<int>(ker.size());
    if (d == 0) return 0;
    // gram_{ij} = < x_i + y_i, (I - B) y_j >
    auto xpart = [&](const IntVec& k) { return IntVec(k.begin(), k.begin() + n); };
    auto ypart = [&](const IntVec& k) { return IntVec(k.begin() + n, k.end()); };
    IntMat gram(d, IntVec(d, 0));
    for (int i = 0; i < d; ++i) {
        IntVec xi = xpart(ker[i]), yi = ypart(ker[i]);
        IntVec s(n, 0);
        for (int t = 0; t < n; ++t) s[t] = xi[t] + yi[t];
        for (int j = 0; j < d; ++j) {
            IntVec yj = ypart(ker[j]);
            IntVec w(n, 0);
            for (int r = 0; r < n; ++r) {
                w[r] = yj[r];
                for (int c = 0; c < n; ++c) w[r] -= b[r][c] * yj[c];
            }
            gram[i][j] = lat.pair(s, w);
        }
    }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (gram[i][j] != gram[j][i]) throw error("homology", "meyer form not symmetric");
    return symmetric_signature(std::move(gram));
}

int signature_of_factorization(const FactorizationData& f) {
    const H1Lattice& lat = f.lattice;
    int n = lat.rank();
    std::vector<IntMat> hs;
    for (size_t i = 0; i < f.cycle_classes.size(); ++i) {
        hs.push_back(transvection(lat, f.cycle_classes[i]));
    }
    IntMat target = identity_matrix(n);
    if (f.commutator) {
        const auto& [g, d] = *f.commutator;
        target = matmul(matmul(g, d), matmul(int_inverse(g), int_inverse(d)));
        // append the commutator letters so the combined word closes up
        hs.push_back(g);
        hs.push_back(d);
        hs.push_back(int_inverse(g));
        hs.push_back(int_inverse(d));
    }
    // check the factorization multiplies to its target
    IntMat prod = identity_matrix(n);
    for (size_t i = 0; i < f.cycle_classes.size(); ++i) prod = matmul(prod, hs[i]);
    if (prod != target)
        throw error("factorization", "product does not equal the declared target");
    // Meyer cocycle sum over the closed-up word
    long long sum = 0;
    IntMat partial = hs[0];
    for (size_t j = 1; j < hs.size(); ++j) {
        sum += meyer_cocycle(lat, partial, hs[j]);
        partial = matmul(partial, hs[j]);
    }
    if (partial != identity_matrix(n))
        throw error("factorization", "closed-up word is not the identity");
    long long seps = 0;
    for (bool s : f.separating)
        if (s) ++seps;
    return static_cast<int>(-sum - seps);
}

}  // namespace mcg

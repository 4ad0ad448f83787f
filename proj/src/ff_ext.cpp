#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "ascurves/polyrat.hpp"

namespace ascurves {

namespace {

std::uint64_t modpow_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    if (m == 1) return 0;
    unsigned __int128 acc = 1, base = b % m;
    while (e > 0) {
        if (e & 1) acc = (acc * base) % m;
        base = (base * base) % m;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(acc);
}

// Solve A y = rhs over F_p; A given column-major, rows x cols. Returns one
// solution with free variables set to 0, or nullopt.
std::optional<std::vector<std::int64_t>> solve_mod_p(std::vector<std::vector<std::int64_t>> cols,
                                                     std::vector<std::int64_t> rhs, std::int64_t p) {
    std::size_t rows = rhs.size(), nc = cols.size();
    // build augmented row-major matrix
    std::vector<std::vector<std::int64_t>> m(rows, std::vector<std::int64_t>(nc + 1, 0));
    for (std::size_t c = 0; c < nc; ++c)
        for (std::size_t r = 0; r < rows; ++r) m[r][c] = cols[c][r] % p;
    for (std::size_t r = 0; r < rows; ++r) m[r][nc] = rhs[r] % p;
    auto inv_mod = [&](std::int64_t a) {
        std::int64_t t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
        while (nr != 0) {
            std::int64_t q = r / nr;
            std::swap(t -= q * nt, nt);
            std::swap(r -= q * nr, nr);
        }
        return ((t % p) + p) % p;
    };
    std::vector<int> pivot_col_of_row(rows, -1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < nc && row < rows; ++col) {
        std::size_t sel = row;
        while (sel < rows && m[sel][col] % p == 0) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[row]);
        std::int64_t iv = inv_mod(m[row][col]);
        for (std::size_t c = col; c <= nc; ++c) m[row][c] = (m[row][c] * iv) % p;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == row) continue;
            std::int64_t f = ((m[r][col] % p) + p) % p;
            if (f == 0) continue;
            for (std::size_t c = col; c <= nc; ++c)
                m[r][c] = (((m[r][c] - f * m[row][c]) % p) + p) % p;
        }
        pivot_col_of_row[row] = static_cast<int>(col);
        ++row;
    }
    for (std::size_t r = row; r < rows; ++r)
        if (((m[r][nc] % p) + p) % p != 0) return std::nullopt;
    std::vector<std::int64_t> y(nc, 0);
    for (std::size_t r = 0; r < row; ++r)
        y[static_cast<std::size_t>(pivot_col_of_row[r])] = ((m[r][nc] % p) + p) % p;
    return y;
}

}  // namespace

ExtensionMap make_extension(const FieldPtr& source, const FieldPtr& target) {
    if (source->characteristic() != target->characteristic())
        throw FieldMismatchError("extension across different characteristics");
    if (source->same_as(*target)) return ExtensionMap{source, target, ExtensionMap::identity(source).generator_image};
    if (target->degree() % source->degree() != 0)
        throw FieldMismatchError("source degree does not divide target degree");
    if (source->is_prime_field())
        return ExtensionMap{source, target, FieldElement::zero(target)};

    static std::mutex mu;
    static std::map<std::pair<std::string, std::string>, FieldElement> cache;
    auto key = std::make_pair(source->description(), target->description());
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return ExtensionMap{source, target, it->second};
    }
    Polynomial m = Polynomial::from_ints(target, source->modulus());
    auto roots = distinct_roots_in_field(m);
    if (roots.empty()) throw InternalError("source modulus has no root in target (unreachable)");
    FieldElement image = roots.front();  // roots are sorted, least first
    {
        std::lock_guard<std::mutex> lock(mu);
        cache.emplace(key, image);
    }
    return ExtensionMap{source, target, image};
}

CommonField common_field(const FieldPtr& a, const FieldPtr& b) {
    if (a->characteristic() != b->characteristic())
        throw FieldMismatchError("fields of different characteristic");
    if (a->same_as(*b)) return CommonField{a, ExtensionMap::identity(a), ExtensionMap::identity(a)};
    if (b->degree() % a->degree() == 0 && a->degree() != b->degree())
        return CommonField{b, make_extension(a, b), ExtensionMap::identity(b)};
    if (a->degree() % b->degree() == 0)
        return CommonField{a, ExtensionMap::identity(a), make_extension(b, a)};
    if (a->degree() == b->degree()) {
        // same degree, different moduli: go through the canonical field
        FieldPtr c = Field::canonical(a->characteristic(), a->degree());
        if (c->same_as(*a)) return CommonField{a, ExtensionMap::identity(a), make_extension(b, a)};
        if (c->same_as(*b)) return CommonField{b, make_extension(a, b), ExtensionMap::identity(b)};
        return CommonField{c, make_extension(a, c), make_extension(b, c)};
    }
    int l = std::lcm(a->degree(), b->degree());
    FieldPtr c = Field::canonical(a->characteristic(), l);
    return CommonField{c, make_extension(a, c), make_extension(b, c)};
}

std::optional<FieldElement> descend(const FieldElement& x, const FieldPtr& sub) {
    const FieldPtr& F = x.field();
    if (F->same_as(*sub)) return x;
    if (F->degree() % sub->degree() != 0) return std::nullopt;
    ExtensionMap emb = make_extension(sub, F);
    std::int64_t p = F->characteristic();
    int j = sub->degree();
    std::vector<std::vector<std::int64_t>> cols;
    cols.reserve(static_cast<std::size_t>(j));
    for (int i = 0; i < j; ++i) {
        std::vector<std::int64_t> e(static_cast<std::size_t>(j), 0);
        e[static_cast<std::size_t>(i)] = 1;
        cols.push_back(embed(FieldElement::from_coeffs(sub, e), emb).coeffs());
    }
    auto sol = solve_mod_p(cols, x.coeffs(), p);
    if (!sol) return std::nullopt;
    return FieldElement::from_coeffs(sub, *sol);
}

CanonicalKey canonical_key(const FieldElement& x) {
    int j = x.min_subfield_degree();
    const FieldPtr& F = x.field();
    if (j == F->degree() && Field::canonical(F->characteristic(), j)->same_as(*F))
        return CanonicalKey{j, x.coeffs()};
    FieldPtr sub = Field::canonical(F->characteristic(), j);
    if (sub->same_as(*F)) return CanonicalKey{j, x.coeffs()};
    auto y = descend(x, sub);
    if (!y) throw InternalError("canonical_key: descent to minimal subfield failed");
    return CanonicalKey{j, y->coeffs()};
}

FieldElement frobenius_inverse(const FieldElement& a) {
    return a.frobenius(a.field()->degree() - 1);
}

std::pair<FieldElement, ExtensionMap> nth_root(const FieldElement& a, std::int64_t n) {
    if (n < 1) throw Error(ErrorKind::Validation, "nth_root requires n >= 1");
    const FieldPtr& F = a.field();
    if (a.is_zero()) return {a, ExtensionMap::identity(F)};
    std::int64_t p = F->characteristic();
    std::int64_t n0 = n;
    FieldElement b = a;
    while (n0 % p == 0) {
        n0 /= p;
        b = frobenius_inverse(b);
    }
    if (n0 == 1) return {b, ExtensionMap::identity(F)};

    std::uint64_t ord = multiplicative_order(b);
    int k = F->degree();
    int found_m = 0;
    for (int m = 1; m <= 512; ++m) {
        std::uint64_t pm = modpow_u64(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(k) * m,
                                      static_cast<std::uint64_t>(n0));
        std::uint64_t qm1_mod_n0 = (pm + static_cast<std::uint64_t>(n0) - 1) % static_cast<std::uint64_t>(n0);
        std::uint64_t d = std::gcd<std::uint64_t>(static_cast<std::uint64_t>(n0), qm1_mod_n0);
        if (qm1_mod_n0 == 0) d = static_cast<std::uint64_t>(n0);
        if (d == 0) d = static_cast<std::uint64_t>(n0);
        if (ord > UINT64_MAX / d) throw InternalError("nth_root: order too large");
        std::uint64_t M = d * ord;
        if (modpow_u64(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(k) * m, M) == 1 % M) {
            found_m = m;
            break;
        }
    }
    if (found_m == 0) throw InternalError("nth_root: no containing extension found");

    FieldPtr target = F;
    ExtensionMap ext = ExtensionMap::identity(F);
    FieldElement bt = b;
    if (found_m > 1) {
        target = Field::canonical(p, k * found_m);
        ext = make_extension(F, target);
        bt = embed(b, ext);
    }
    Polynomial xe = Polynomial::monomial(FieldElement::one(target), static_cast<int>(n0)) -
                    Polynomial::constant(bt);
    auto roots = distinct_roots_in_field(xe);
    if (roots.empty()) throw InternalError("nth_root: no root in computed extension");
    return {roots.front(), ext};
}

std::pair<FieldElement, ExtensionMap> solve_wp(const FieldElement& u) {
    const FieldPtr& F = u.field();
    std::int64_t p = F->characteristic();
    int k = F->degree();
    // absolute trace
    FieldElement tr = FieldElement::zero(F);
    FieldElement it = u;
    for (int i = 0; i < k; ++i) {
        tr = tr + it;
        it = it.frobenius();
    }
    if (!tr.is_zero()) {
        FieldPtr big = Field::canonical(p, k * static_cast<int>(p));
        ExtensionMap ext = make_extension(F, big);
        auto [g, inner] = solve_wp(embed(u, ext));
        if (!inner.is_identity()) throw InternalError("solve_wp: trace did not vanish after one extension");
        return {g, ext};
    }
    // gamma^p - gamma is F_p-linear; solve the k x k system
    std::vector<std::vector<std::int64_t>> cols;
    cols.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        std::vector<std::int64_t> e(static_cast<std::size_t>(k), 0);
        e[static_cast<std::size_t>(i)] = 1;
        FieldElement basis = FieldElement::from_coeffs(F, e);
        cols.push_back((basis.frobenius() - basis).coeffs());
    }
    auto sol = solve_mod_p(cols, u.coeffs(), p);
    if (!sol) throw InternalError("solve_wp: no solution despite vanishing trace");
    FieldElement g0 = FieldElement::from_coeffs(F, *sol);
    // kernel is F_p; pick the least representative
    FieldElement best = g0;
    for (std::int64_t c = 0; c < p; ++c) {
        FieldElement cand = g0 + FieldElement::from_int(F, c);
        if (cand.coeffs() < best.coeffs()) best = cand;
    }
    return {best, ExtensionMap::identity(F)};
}

}  // namespace ascurves

#include "ascurves/ff.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace ascurves {

namespace {

// ---- residue polynomials over F_p (vector<int64>, constant first) ------
// Only what field construction needs: arithmetic mod p, powmod, gcd and a
// Rabin irreducibility test. Everything else goes through polyrat.

using RPoly = std::vector<std::int64_t>;

std::int64_t mod_pos(std::int64_t a, std::int64_t p) {
    a %= p;
    return a < 0 ? a + p : a;
}

void rp_trim(RPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

RPoly rp_mul(const RPoly& a, const RPoly& b, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    RPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = mod_pos(r[i + j] + a[i] * b[j], p);
    rp_trim(r);
    return r;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, newt = 1, r = p, newr = mod_pos(a, p);
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
    }
    return mod_pos(t, p);
}

// Remainder of a by m (any nonzero m).
RPoly rp_mod(RPoly a, const RPoly& m, std::int64_t p) {
    rp_trim(a);
    std::int64_t linv = inv_mod(m.back(), p);
    while (a.size() >= m.size()) {
        std::int64_t coef = mod_pos(a.back() * linv, p);
        std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i)
            a[shift + i] = mod_pos(a[shift + i] - coef * m[i], p);
        rp_trim(a);
    }
    return a;
}

RPoly rp_mulmod(const RPoly& a, const RPoly& b, const RPoly& m, std::int64_t p) {
    return rp_mod(rp_mul(a, b, p), m, p);
}

RPoly rp_gcd(RPoly a, RPoly b, std::int64_t p) {
    rp_trim(a);
    rp_trim(b);
    while (!b.empty()) {
        RPoly r = rp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        std::int64_t s = inv_mod(a.back(), p);
        for (auto& c : a) c = mod_pos(c * s, p);
    }
    return a;
}

// x^(p^steps) mod m via iterated p-th powers.
RPoly rp_frobenius_of_x(int steps, const RPoly& m, std::int64_t p) {
    RPoly x = rp_mod({0, 1}, m, p);
    RPoly r = x;
    for (int s = 0; s < steps; ++s) {
        // r <- r^p mod m
        RPoly acc = {1};
        RPoly base = r;
        std::int64_t e = p;
        while (e > 0) {
            if (e & 1) acc = rp_mulmod(acc, base, m, p);
            base = rp_mulmod(base, base, m, p);
            e >>= 1;
        }
        r = std::move(acc);
    }
    return r;
}

bool rp_is_irreducible(const RPoly& m, std::int64_t p) {
    int k = static_cast<int>(m.size()) - 1;
    if (k < 1) return false;
    if (k == 1) return true;
    // Rabin: x^(p^k) == x mod m, and gcd(x^(p^(k/l)) - x, m) == 1 for all
    // prime divisors l of k.
    RPoly x = rp_mod({0, 1}, m, p);
    RPoly top = rp_frobenius_of_x(k, m, p);
    if (top != x) return false;
    int rest = k;
    for (int l = 2; l * l <= rest || (rest > 1 && l > rest); ++l) {
        if (l * l > rest) break;
        if (rest % l != 0) continue;
        while (rest % l == 0) rest /= l;
        RPoly d = rp_frobenius_of_x(k / l, m, p);
        std::size_t n = std::max(d.size(), x.size());
        RPoly diff(n, 0);
        for (std::size_t i = 0; i < d.size(); ++i) diff[i] = d[i];
        for (std::size_t i = 0; i < x.size(); ++i) diff[i] = mod_pos(diff[i] - x[i], p);
        rp_trim(diff);
        if (!rp_gcd(diff, m, p).empty() && rp_gcd(diff, m, p).size() > 1) return false;
    }
    if (rest > 1) {
        RPoly d = rp_frobenius_of_x(k / rest, m, p);
        std::size_t n = std::max(d.size(), x.size());
        RPoly diff(n, 0);
        for (std::size_t i = 0; i < d.size(); ++i) diff[i] = d[i];
        for (std::size_t i = 0; i < x.size(); ++i) diff[i] = mod_pos(diff[i] - x[i], p);
        rp_trim(diff);
        if (rp_gcd(diff, m, p).size() > 1) return false;
    }
    return true;
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Least monic irreducible of degree k, coefficient sequences compared
// constant term first.
RPoly canonical_modulus(std::int64_t p, int k) {
    RPoly c(static_cast<std::size_t>(k), 0);
    c[0] = 1;  // constant 0 forces the factor t
    while (true) {
        RPoly m = c;
        m.push_back(1);
        if (rp_is_irreducible(m, p)) return m;
        // lexicographic successor: last coordinate moves fastest
        int i = k - 1;
        while (i >= 0) {
            if (++c[static_cast<std::size_t>(i)] < p) break;
            c[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) throw InternalError("no irreducible polynomial found (unreachable)");
    }
}

std::string rp_to_string(const RPoly& m, const std::string& gen) {
    if (m.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0)
            os << m[i];
        else {
            if (m[i] != 1) os << m[i] << "*";
            os << gen;
            if (i > 1) os << "^" << i;
        }
    }
    if (first) return "0";
    return os.str();
}

}  // namespace

// ---- Field --------------------------------------------------------------

Field::Field(std::int64_t p, int degree, std::vector<std::int64_t> modulus, std::string generator)
    : p_(p), degree_(degree), modulus_(std::move(modulus)), generator_(std::move(generator)) {}

FieldPtr Field::make(std::int64_t p, int degree, std::optional<std::vector<std::int64_t>> modulus,
                     std::string generator) {
    if (p == 2) throw EvenCharacteristicError("characteristic 2 is out of scope");
    if (!is_prime(p)) throw NotPrimeError("p = " + std::to_string(p) + " is not prime");
    if (degree < 1) throw Error(ErrorKind::Validation, "field degree must be >= 1");
    if (degree == 1) {
        if (modulus && modulus->size() > 2)
            throw Error(ErrorKind::Validation, "prime field takes no modulus");
        return FieldPtr(new Field(p, 1, {}, std::move(generator)));
    }
    RPoly m;
    if (modulus) {
        m = *modulus;
        for (auto& c : m) c = mod_pos(c, p);
        rp_trim(m);
        if (static_cast<int>(m.size()) != degree + 1 || m.back() != 1)
            throw NotIrreducibleError("modulus is not monic of degree " + std::to_string(degree));
        if (!rp_is_irreducible(m, p))
            throw NotIrreducibleError("modulus " + rp_to_string(m, generator) + " is reducible over F_" +
                                      std::to_string(p));
    } else {
        m = canonical_modulus(p, degree);
    }
    return FieldPtr(new Field(p, degree, std::move(m), std::move(generator)));
}

FieldPtr Field::canonical(std::int64_t p, int degree) {
    static std::mutex mu;
    static std::map<std::pair<std::int64_t, int>, FieldPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, degree);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    FieldPtr f = make(p, degree);
    cache.emplace(key, f);
    return f;
}

bool Field::same_as(const Field& other) const {
    return p_ == other.p_ && degree_ == other.degree_ && modulus_ == other.modulus_;
}

bool Field::size_fits_u64() const {
    unsigned __int128 q = 1;
    for (int i = 0; i < degree_; ++i) {
        q *= static_cast<unsigned __int128>(p_);
        if (q > static_cast<unsigned __int128>(UINT64_MAX)) return false;
    }
    return true;
}

std::uint64_t Field::size_u64() const {
    if (!size_fits_u64()) throw InternalError("field too large for u64 size");
    std::uint64_t q = 1;
    for (int i = 0; i < degree_; ++i) q *= static_cast<std::uint64_t>(p_);
    return q;
}

std::string Field::description() const {
    std::ostringstream os;
    os << p_ << "^" << degree_;
    if (degree_ > 1) os << ":" << rp_to_string(modulus_, generator_);
    return os.str();
}

FieldPtr make_field(std::int64_t p, int degree, std::optional<std::vector<std::int64_t>> modulus) {
    return Field::make(p, degree, std::move(modulus));
}

// ---- FieldElement -------------------------------------------------------

FieldElement FieldElement::zero(const FieldPtr& f) {
    return FieldElement(f, std::vector<std::int64_t>(static_cast<std::size_t>(f->degree()), 0));
}

FieldElement FieldElement::one(const FieldPtr& f) { return from_int(f, 1); }

FieldElement FieldElement::from_int(const FieldPtr& f, std::int64_t n) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(f->degree()), 0);
    c[0] = mod_pos(n, f->characteristic());
    return FieldElement(f, std::move(c));
}

FieldElement FieldElement::from_coeffs(const FieldPtr& f, std::vector<std::int64_t> coeffs) {
    std::int64_t p = f->characteristic();
    for (auto& c : coeffs) c = mod_pos(c, p);
    if (static_cast<int>(coeffs.size()) > f->degree()) {
        if (f->is_prime_field()) {
            rp_trim(coeffs);
            if (static_cast<int>(coeffs.size()) > 1)
                throw FieldMismatchError("coefficient sequence too long for prime field");
        } else {
            coeffs = rp_mod(coeffs, f->modulus(), p);
        }
    }
    coeffs.resize(static_cast<std::size_t>(f->degree()), 0);
    return FieldElement(f, std::move(coeffs));
}

FieldElement FieldElement::generator(const FieldPtr& f) {
    if (f->is_prime_field()) throw FieldMismatchError("prime field has no generator t");
    std::vector<std::int64_t> c(static_cast<std::size_t>(f->degree()), 0);
    c[1] = 1;
    return FieldElement(f, std::move(c));
}

bool FieldElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](std::int64_t v) { return v == 0; });
}

bool FieldElement::is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

void FieldElement::require_same_field(const FieldElement& o) const {
    if (!field_ || !o.field_ || !field_->same_as(*o.field_))
        throw FieldMismatchError("operands belong to different fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    require_same_field(o);
    std::vector<std::int64_t> r(c_.size());
    std::int64_t p = field_->characteristic();
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = mod_pos(c_[i] + o.c_[i], p);
    return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    require_same_field(o);
    std::vector<std::int64_t> r(c_.size());
    std::int64_t p = field_->characteristic();
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = mod_pos(c_[i] - o.c_[i], p);
    return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator-() const {
    std::vector<std::int64_t> r(c_.size());
    std::int64_t p = field_->characteristic();
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = mod_pos(-c_[i], p);
    return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    require_same_field(o);
    std::int64_t p = field_->characteristic();
    if (field_->is_prime_field())
        return FieldElement(field_, {mod_pos(c_[0] * o.c_[0], p)});
    RPoly r = rp_mod(rp_mul(c_, o.c_, p), field_->modulus(), p);
    r.resize(c_.size(), 0);
    return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::inv() const {
    if (is_zero()) throw DivisionByZeroError("inverse of zero");
    std::int64_t p = field_->characteristic();
    if (field_->is_prime_field()) return FieldElement(field_, {inv_mod(c_[0], p)});
    // extended Euclid on (element, modulus) over F_p
    RPoly r0 = field_->modulus(), r1 = c_;
    rp_trim(r1);
    RPoly s0 = {}, s1 = {1};
    while (!r1.empty()) {
        // divide r0 by r1
        RPoly q;
        RPoly rem = r0;
        rp_trim(rem);
        std::int64_t linv = inv_mod(r1.back(), p);
        if (rem.size() >= r1.size()) q.assign(rem.size() - r1.size() + 1, 0);
        while (rem.size() >= r1.size() && !rem.empty()) {
            std::int64_t coef = mod_pos(rem.back() * linv, p);
            std::size_t shift = rem.size() - r1.size();
            q[shift] = coef;
            for (std::size_t i = 0; i < r1.size(); ++i)
                rem[shift + i] = mod_pos(rem[shift + i] - coef * r1[i], p);
            rp_trim(rem);
        }
        // (r0, r1) <- (r1, rem); (s0, s1) <- (s1, s0 - q*s1)
        RPoly qs = rp_mul(q, s1, p);
        RPoly s2(std::max(s0.size(), qs.size()), 0);
        for (std::size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
        for (std::size_t i = 0; i < qs.size(); ++i) s2[i] = mod_pos(s2[i] - qs[i], p);
        rp_trim(s2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 = gcd (a unit, degree 0 since the modulus is irreducible)
    if (r0.size() != 1) throw InternalError("inverse: gcd with modulus not a unit");
    std::int64_t scale = inv_mod(r0[0], p);
    for (auto& v : s0) v = mod_pos(v * scale, p);
    s0.resize(c_.size(), 0);
    return FieldElement(field_, std::move(s0));
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inv(); }

FieldElement FieldElement::pow(std::int64_t e) const {
    if (e < 0) return inv().pow(-e);
    FieldElement acc = one(field_);
    FieldElement base = *this;
    std::int64_t k = e;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

FieldElement FieldElement::frobenius(int steps) const {
    FieldElement r = *this;
    for (int s = 0; s < steps; ++s) r = r.pow(field_->characteristic());
    return r;
}

bool FieldElement::operator==(const FieldElement& o) const {
    require_same_field(o);
    return c_ == o.c_;
}

bool FieldElement::in_subfield(int j) const {
    if (field_->degree() % j != 0) return false;
    return frobenius(j) == *this;
}

int FieldElement::min_subfield_degree() const {
    int k = field_->degree();
    for (int j = 1; j <= k; ++j)
        if (k % j == 0 && in_subfield(j)) return j;
    return k;
}

std::string FieldElement::to_string() const {
    return rp_to_string(c_, field_->generator_name());
}

// ---- ExtensionMap basics ------------------------------------------------

ExtensionMap ExtensionMap::identity(const FieldPtr& f) {
    return ExtensionMap{f, f, f->is_prime_field() ? FieldElement::zero(f) : FieldElement::generator(f)};
}

bool ExtensionMap::is_identity() const { return source->same_as(*target); }

FieldElement embed(const FieldElement& a, const ExtensionMap& via) {
    if (!a.field()->same_as(*via.source)) throw FieldMismatchError("element not in embedding source");
    if (via.is_identity() && a.field()->same_as(*via.target)) {
        if (a.field().get() == via.target.get()) return a;
        return FieldElement::from_coeffs(via.target, a.coeffs());
    }
    // Horner in the target field
    FieldElement r = FieldElement::zero(via.target);
    const auto& c = a.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) {
        r = r * via.generator_image + FieldElement::from_int(via.target, c[i]);
    }
    return r;
}

ExtensionMap compose(const ExtensionMap& a, const ExtensionMap& b) {
    if (!a.target->same_as(*b.source)) throw FieldMismatchError("embedding composition mismatch");
    if (a.source->is_prime_field()) return ExtensionMap{a.source, b.target, FieldElement::zero(b.target)};
    return ExtensionMap{a.source, b.target, embed(a.generator_image, b)};
}

namespace {
FieldElement pow_u64(const FieldElement& a, std::uint64_t e) {
    FieldElement acc = FieldElement::one(a.field());
    FieldElement base = a;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}
}  // namespace

std::uint64_t multiplicative_order(const FieldElement& a) {
    if (a.is_zero()) throw DivisionByZeroError("order of zero");
    if (!a.field()->size_fits_u64()) throw InternalError("field too large for order computation");
    std::uint64_t n = a.field()->size_u64() - 1;
    // factor n, then strip primes
    std::uint64_t ord = n;
    std::uint64_t m = n;
    std::vector<std::uint64_t> primes;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            primes.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) primes.push_back(m);
    for (std::uint64_t q : primes) {
        while (ord % q == 0 && pow_u64(a, ord / q).is_one()) ord /= q;
    }
    return ord;
}

}  // namespace ascurves

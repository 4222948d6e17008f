#include "charsense/galois.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace charsense {
namespace {

// Dense coefficient vectors (constant term first, no trailing zeros) back
// the table build and the primitivity checks; the hot path never sees them.
using Poly = std::vector<std::int32_t>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<std::int32_t>((r[i + j] + std::int64_t(a[i]) * b[j]) % p);
    trim(r);
    return r;
}

// Remainder of a by monic g.
Poly poly_mod(Poly a, const Poly& g, std::int64_t p) {
    const auto dg = g.size() - 1;
    trim(a);
    while (a.size() > dg) {
        const std::int64_t lead = a.back();
        const std::size_t shift = a.size() - 1 - dg;
        for (std::size_t i = 0; i < g.size(); ++i) {
            std::int64_t v = (a[shift + i] - lead * g[i]) % p;
            if (v < 0) v += p;
            a[shift + i] = static_cast<std::int32_t>(v);
        }
        trim(a);
    }
    return a;
}

Poly poly_powmod(Poly base, std::int64_t e, const Poly& g, std::int64_t p) {
    Poly r{1};
    base = poly_mod(std::move(base), g, p);
    while (e > 0) {
        if (e & 1) r = poly_mod(poly_mul(r, base, p), g, p);
        base = poly_mod(poly_mul(base, base, p), g, p);
        e >>= 1;
    }
    return r;
}

bool divides(const Poly& f, const Poly& g, std::int64_t p) {
    // f monic; true iff f | g
    Poly r = poly_mod(g, f, p);
    return r.empty();
}

// Trial division by every monic polynomial of degree 1..deg/2.
bool is_irreducible_bruteforce(const Poly& g, std::int64_t p) {
    const int deg = static_cast<int>(g.size()) - 1;
    for (int d = 1; d <= deg / 2; ++d) {
        std::int64_t count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (std::int64_t enc = 0; enc < count; ++enc) {
            Poly f(static_cast<std::size_t>(d) + 1, 0);
            std::int64_t rest = enc;
            for (int i = 0; i < d; ++i) {
                f[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(rest % p);
                rest /= p;
            }
            f[static_cast<std::size_t>(d)] = 1;
            if (divides(f, g, p)) return false;
        }
    }
    return true;
}

std::vector<std::int64_t> prime_divisors(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t f = 2; f * f <= n; ++f) {
        if (n % f == 0) {
            out.push_back(f);
            while (n % f == 0) n /= f;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Order of x in F_p[x]/(g) equals p^m - 1 iff g is primitive. Checks
// x^(q-1) = 1 plus x^((q-1)/ell) != 1 for each prime ell | q-1, which
// avoids enumerating the full order.
bool is_primitive(const Poly& g, std::int64_t p, std::int64_t q) {
    const Poly one{1};
    if (poly_powmod({0, 1}, q - 1, g, p) != one) return false;
    for (std::int64_t ell : prime_divisors(q - 1))
        if (poly_powmod({0, 1}, (q - 1) / ell, g, p) == one) return false;
    return true;
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t f = 2; f * f <= n; ++f)
        if (n % f == 0) return false;
    return true;
}

std::int64_t checked_pow(std::int64_t p, int m, std::int64_t cap) {
    std::int64_t q = 1;
    for (int i = 0; i < m; ++i) {
        if (q > cap / p)
            throw SizeError("field size p^m exceeds the configured cap of " +
                            std::to_string(cap));
        q *= p;
    }
    return q;
}

std::int64_t encode(const Poly& a, std::int64_t p) {
    std::int64_t idx = 0;
    for (std::size_t i = a.size(); i-- > 0;) idx = idx * p + a[i];
    return idx;
}

void validate_field_params(std::int64_t p, int m) {
    if (!is_prime(p) || p % 2 == 0)
        throw ValidationError("field characteristic must be an odd prime, got " +
                              std::to_string(p));
    if (m < 1) throw ValidationError("extension degree must be at least 1");
}

}  // namespace

PrimePoly::PrimePoly(std::int64_t p, std::vector<std::int32_t> coeffs)
    : p_(p), coeffs_(std::move(coeffs)) {
    if (p_ < 2) throw ValidationError("PrimePoly: modulus must be at least 2");
    if (coeffs_.size() < 2) throw ValidationError("PrimePoly: degree must be at least 1");
    if (coeffs_.back() != 1) throw ValidationError("PrimePoly: polynomial must be monic");
    for (auto c : coeffs_)
        if (c < 0 || c >= p_)
            throw ValidationError("PrimePoly: coefficients must lie in [0, p-1]");
}

PrimePoly PrimePoly::parse(std::int64_t p, std::string_view text) {
    std::vector<std::int32_t> coeffs;
    std::string token;
    std::istringstream in{std::string(text)};
    while (std::getline(in, token, ',')) {
        try {
            coeffs.push_back(static_cast<std::int32_t>(std::stol(token)));
        } catch (const std::exception&) {
            throw ValidationError("PrimePoly::parse: bad coefficient '" + token + "'");
        }
    }
    return PrimePoly(p, std::move(coeffs));
}

std::string PrimePoly::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(coeffs_[i]);
    }
    return out;
}

FieldElement FieldContext::add(FieldElement a, FieldElement b) const {
    check(a);
    check(b);
    std::int64_t x = a.index(), y = b.index(), out = 0, scale = 1;
    for (int i = 0; i < m_; ++i) {
        std::int64_t d = x % p_ + y % p_;
        if (d >= p_) d -= p_;
        out += d * scale;
        scale *= p_;
        x /= p_;
        y /= p_;
    }
    return FieldElement(out);
}

FieldElement FieldContext::neg(FieldElement a) const {
    check(a);
    std::int64_t x = a.index(), out = 0, scale = 1;
    for (int i = 0; i < m_; ++i) {
        const std::int64_t d = x % p_;
        out += (d == 0 ? 0 : p_ - d) * scale;
        scale *= p_;
        x /= p_;
    }
    return FieldElement(out);
}

FieldElement FieldContext::pow(FieldElement a, std::int64_t e) const {
    check(a);
    if (a.is_zero()) return e == 0 ? FieldElement(1) : FieldElement(0);
    const std::int64_t n = order();
    std::int64_t er = e % n;
    if (er < 0) er += n;
    return exp_[static_cast<std::size_t>((log_[a.index()] * er) % n)];
}

std::int64_t validate_field_parameters(std::int64_t p, int m, std::int64_t cap) {
    validate_field_params(p, m);
    return checked_pow(p, m, cap);
}

PrimePoly find_primitive_polynomial(std::int64_t p, int m, std::int64_t cap) {
    validate_field_params(p, m);
    const std::int64_t q = checked_pow(p, m, cap);
    std::int64_t count = q;  // p^m candidate lower parts
    for (std::int64_t enc = 0; enc < count; ++enc) {
        Poly g(static_cast<std::size_t>(m) + 1, 0);
        std::int64_t rest = enc;
        for (int i = 0; i < m; ++i) {
            g[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(rest % p);
            rest /= p;
        }
        g[static_cast<std::size_t>(m)] = 1;
        if (is_primitive(g, p, q)) return PrimePoly(p, g);
    }
    throw ValidationError("no primitive polynomial found (unreachable for prime p)");
}

FieldContext build_field(std::int64_t p, int m, std::optional<PrimePoly> modulus,
                         std::int64_t cap) {
    validate_field_params(p, m);
    const std::int64_t q = checked_pow(p, m, cap);
    PrimePoly g = modulus ? *modulus : find_primitive_polynomial(p, m, cap);
    if (g.p() != p) throw ValidationError("modulus is defined over a different prime field");
    if (g.degree() != m)
        throw ValidationError("modulus degree " + std::to_string(g.degree()) +
                              " does not match extension degree " + std::to_string(m));

    Poly gp(g.coeffs().begin(), g.coeffs().end());
    if (!is_primitive(gp, p, q)) {
        const bool irred = is_irreducible_bruteforce(gp, p);
        throw ValidationError("modulus " + g.to_string() +
                              (irred ? " is irreducible but not primitive (root order < p^m - 1)"
                                     : " is reducible over F_p"));
    }

    FieldContext ctx;
    ctx.p_ = p;
    ctx.m_ = m;
    ctx.q_ = q;
    ctx.modulus_ = g;

    // exp/log tables from successive multiplications by x.
    ctx.exp_.resize(static_cast<std::size_t>(q - 1));
    ctx.log_.assign(static_cast<std::size_t>(q), -1);
    Poly cur{1};
    for (std::int64_t i = 0; i < q - 1; ++i) {
        const std::int64_t idx = encode(cur, p);
        if (idx == 0 || ctx.log_[static_cast<std::size_t>(idx)] != -1)
            throw InvariantViolation("exp table is not a bijection; modulus check is broken");
        ctx.exp_[static_cast<std::size_t>(i)] = FieldElement(idx);
        ctx.log_[static_cast<std::size_t>(idx)] = i;
        cur = poly_mod(poly_mul(cur, {0, 1}, p), gp, p);
    }

    // Trace table: Tr(alpha^l) = sum_i alpha^{l p^i}; zero maps to zero.
    ctx.trace_.assign(static_cast<std::size_t>(q), 0);
    std::vector<std::int64_t> frob(static_cast<std::size_t>(m));  // p^i mod (q-1)
    std::int64_t pw = 1;
    for (int i = 0; i < m; ++i) {
        frob[static_cast<std::size_t>(i)] = pw % (q - 1);
        pw *= p;
    }
    for (std::int64_t l = 0; l < q - 1; ++l) {
        FieldElement acc(0);
        for (int i = 0; i < m; ++i)
            acc = ctx.add(acc, ctx.exp((l * frob[static_cast<std::size_t>(i)]) % (q - 1)));
        if (acc.index() >= p)
            throw InvariantViolation("trace left the prime field; table build is broken");
        ctx.trace_[static_cast<std::size_t>(ctx.exp_[static_cast<std::size_t>(l)].index())] =
            static_cast<std::int32_t>(acc.index());
    }

    ctx.roots_.resize(static_cast<std::size_t>(p));
    for (std::int64_t t = 0; t < p; ++t)
        ctx.roots_[static_cast<std::size_t>(t)] = std::exp(std::complex<double>(
            0.0, 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(p)));
    return ctx;
}

PrimePoly minimal_polynomial(const FieldContext& ctx, FieldElement x) {
    if (x.is_zero())
        throw ValidationError("minimal_polynomial: defined for nonzero elements only");
    const std::int64_t n = ctx.order();
    // Frobenius conjugate exponents l, l*p, l*p^2, ... mod (q-1).
    std::vector<std::int64_t> conj;
    std::int64_t l = ctx.log(x);
    do {
        conj.push_back(l);
        l = (l * ctx.p()) % n;
    } while (l != conj.front());

    // Product of (X - alpha^c) with coefficients in GF(p^m).
    std::vector<FieldElement> poly{FieldElement(1)};
    for (std::int64_t c : conj) {
        const FieldElement root = ctx.exp(c);
        std::vector<FieldElement> next(poly.size() + 1, FieldElement(0));
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] = ctx.add(next[i + 1], poly[i]);
            next[i] = ctx.sub(next[i], ctx.mul(poly[i], root));
        }
        poly = std::move(next);
    }

    std::vector<std::int32_t> coeffs(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i) {
        if (poly[i].index() >= ctx.p())
            throw InvariantViolation("minimal polynomial has a coefficient outside F_p");
        coeffs[i] = static_cast<std::int32_t>(poly[i].index());
    }
    return PrimePoly(ctx.p(), std::move(coeffs));
}

std::complex<double> character_sum(const FieldContext& ctx, const SparsePoly& f) {
    const auto& roots = ctx.unit_roots();
    std::complex<double> sum(0.0, 0.0);
    for (std::int64_t idx = 0; idx < ctx.size(); ++idx) {
        const FieldElement x(idx);
        FieldElement val(0);
        for (const auto& [e, c] : f) {
            if (c.is_zero()) continue;
            val = ctx.add(val, ctx.mul(c, ctx.pow(x, e)));
        }
        sum += roots[static_cast<std::size_t>(ctx.trace(val))];
    }
    return sum;
}

}  // namespace charsense

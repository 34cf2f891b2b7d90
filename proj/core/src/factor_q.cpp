// Irreducible factorization over Q for squarefree monic input: reduce to a
// monic integer polynomial, factor it modulo a small prime, lift the modular
// factors to a large prime power, and recombine subsets until every factor
// divides over Z.
#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "rp/upoly.hpp"

namespace rp {
namespace fq {

namespace {

// ---- arithmetic modulo a machine-word prime ----

using ZPoly = std::vector<std::int64_t>; // ascending, trailing zeros trimmed

std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t p) {
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % p);
}

std::int64_t mod_pow(std::int64_t a, std::int64_t e, std::int64_t p) {
    std::int64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mod_mul(r, a, p);
        a = mod_mul(a, a, p);
        e >>= 1;
    }
    return r;
}

std::int64_t mod_inv(std::int64_t a, std::int64_t p) { return mod_pow(a, p - 2, p); }

void zp_trim(ZPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int zp_deg(const ZPoly& f) { return static_cast<int>(f.size()) - 1; }

ZPoly zp_mul(const ZPoly& a, const ZPoly& b, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + mod_mul(a[i], b[j], p)) % p;
    zp_trim(r);
    return r;
}

ZPoly zp_sub(const ZPoly& a, const ZPoly& b, std::int64_t p) {
    ZPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::int64_t x = i < a.size() ? a[i] : 0;
        std::int64_t y = i < b.size() ? b[i] : 0;
        r[i] = ((x - y) % p + p) % p;
    }
    zp_trim(r);
    return r;
}

void zp_divmod(const ZPoly& a, const ZPoly& b, std::int64_t p, ZPoly& q, ZPoly& r) {
    r = a;
    q.assign(a.size() > b.size() - 1 ? a.size() - b.size() + 1 : 0, 0);
    const std::int64_t inv = mod_inv(b.back(), p);
    while (zp_deg(r) >= zp_deg(b)) {
        int shift = zp_deg(r) - zp_deg(b);
        std::int64_t c = mod_mul(r.back(), inv, p);
        q[static_cast<std::size_t>(shift)] = c;
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::size_t k = static_cast<std::size_t>(shift) + j;
            r[k] = ((r[k] - mod_mul(c, b[j], p)) % p + p) % p;
        }
        zp_trim(r);
    }
}

ZPoly zp_rem(const ZPoly& a, const ZPoly& b, std::int64_t p) {
    ZPoly q, r;
    zp_divmod(a, b, p, q, r);
    return r;
}

ZPoly zp_monic(ZPoly f, std::int64_t p) {
    if (f.empty()) return f;
    std::int64_t inv = mod_inv(f.back(), p);
    for (auto& c : f) c = mod_mul(c, inv, p);
    return f;
}

ZPoly zp_gcd(ZPoly a, ZPoly b, std::int64_t p) {
    while (!b.empty()) {
        ZPoly r = zp_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return zp_monic(std::move(a), p);
}

// Extended Euclid: s*a + t*b = 1 for coprime a, b.
void zp_bezout(const ZPoly& a, const ZPoly& b, std::int64_t p, ZPoly& s, ZPoly& t) {
    ZPoly r0 = a, r1 = b;
    ZPoly s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        ZPoly q, r2;
        zp_divmod(r0, r1, p, q, r2);
        ZPoly s2 = zp_sub(s0, zp_mul(q, s1, p), p);
        ZPoly t2 = zp_sub(t0, zp_mul(q, t1, p), p);
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (zp_deg(r0) != 0) throw internal_error("bezout of non-coprime modular polynomials");
    std::int64_t inv = mod_inv(r0[0], p);
    s = s0;
    t = t0;
    for (auto& c : s) c = mod_mul(c, inv, p);
    for (auto& c : t) c = mod_mul(c, inv, p);
}

ZPoly zp_derivative(const ZPoly& f, std::int64_t p) {
    ZPoly r;
    for (std::size_t i = 1; i < f.size(); ++i)
        r.push_back(mod_mul(f[i], static_cast<std::int64_t>(i % static_cast<std::size_t>(p)), p));
    zp_trim(r);
    return r;
}

ZPoly zp_powmod(const ZPoly& base, const Integer& e, const ZPoly& mod, std::int64_t p) {
    ZPoly r{1};
    ZPoly b = zp_rem(base, mod, p);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = zp_rem(zp_mul(r, r, p), mod, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = zp_rem(zp_mul(r, b, p), mod, p);
    }
    return r;
}

// Equal-degree splitting; every irreducible factor of f has degree d.
void zp_equal_degree(const ZPoly& f, int d, std::int64_t p, std::mt19937_64& rng,
                     std::vector<ZPoly>& out) {
    if (zp_deg(f) == d) {
        out.push_back(f);
        return;
    }
    Integer e = 1;
    for (int i = 0; i < d; ++i) e *= p;
    e = (e - 1) / 2;
    for (;;) {
        ZPoly r(static_cast<std::size_t>(zp_deg(f)), 0);
        for (auto& c : r) c = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p));
        zp_trim(r);
        if (zp_deg(r) < 1) continue;
        ZPoly g = zp_gcd(f, r, p);
        if (zp_deg(g) == 0) {
            ZPoly s = zp_powmod(r, e, f, p);
            if (s.empty()) continue;
            s[0] = ((s[0] - 1) % p + p) % p;
            zp_trim(s);
            g = zp_gcd(f, s, p);
        }
        if (zp_deg(g) > 0 && zp_deg(g) < zp_deg(f)) {
            ZPoly q, rr;
            zp_divmod(f, g, p, q, rr);
            zp_equal_degree(g, d, p, rng, out);
            zp_equal_degree(zp_monic(std::move(q), p), d, p, rng, out);
            return;
        }
    }
}

// Distinct-degree then equal-degree factorization of a squarefree monic f.
std::vector<ZPoly> zp_factor_squarefree(ZPoly f, std::int64_t p) {
    std::vector<ZPoly> out;
    std::mt19937_64 rng(0x5eed5eedULL);
    ZPoly x{0, 1};
    ZPoly h = x;
    int d = 1;
    while (zp_deg(f) >= 2 * d) {
        h = zp_powmod(h, Integer(p), f, p);
        ZPoly diff = zp_sub(h, x, p);
        ZPoly g = zp_gcd(f, diff, p);
        if (zp_deg(g) > 0) {
            zp_equal_degree(g, d, p, rng, out);
            ZPoly q, r;
            zp_divmod(f, g, p, q, r);
            f = zp_monic(std::move(q), p);
            h = zp_rem(h, f, p);
        }
        ++d;
    }
    if (zp_deg(f) > 0) out.push_back(f);
    return out;
}

// ---- integer polynomials and Hensel lifting ----

using IPoly = std::vector<Integer>; // ascending, trailing zeros trimmed

void ip_trim(IPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int ip_deg(const IPoly& f) { return static_cast<int>(f.size()) - 1; }

Integer nonneg_mod(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += m;
    return r;
}

IPoly ip_mod(IPoly f, const Integer& m) {
    for (auto& c : f) c = nonneg_mod(c, m);
    ip_trim(f);
    return f;
}

IPoly ip_mul(const IPoly& a, const IPoly& b, const Integer& m) {
    if (a.empty() || b.empty()) return {};
    IPoly r(a.size() + b.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return ip_mod(std::move(r), m);
}

IPoly ip_add(const IPoly& a, const IPoly& b, const Integer& m) {
    IPoly r(std::max(a.size(), b.size()), Integer(0));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] += b[i];
    }
    return ip_mod(std::move(r), m);
}

IPoly ip_sub(const IPoly& a, const IPoly& b, const Integer& m) {
    IPoly r(std::max(a.size(), b.size()), Integer(0));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] -= b[i];
    }
    return ip_mod(std::move(r), m);
}

// Division by a monic divisor, coefficients mod m.
void ip_divmod_monic(const IPoly& a, const IPoly& b, const Integer& m, IPoly& q, IPoly& r) {
    r = a;
    q.assign(a.size() > b.size() - 1 ? a.size() - b.size() + 1 : 0, Integer(0));
    while (ip_deg(r) >= ip_deg(b)) {
        int shift = ip_deg(r) - ip_deg(b);
        Integer c = r.back();
        q[static_cast<std::size_t>(shift)] = c;
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::size_t k = static_cast<std::size_t>(shift) + j;
            r[k] = nonneg_mod(r[k] - c * b[j], m);
        }
        ip_trim(r);
    }
    ip_trim(q);
}

struct LiftedPair {
    IPoly g, h, s, t;
};

// One quadratic Hensel step: from modulus m to m^2 (ceilinged at `target`).
LiftedPair hensel_step(const IPoly& f, const LiftedPair& in, const Integer& m,
                       const Integer& next) {
    LiftedPair out;
    IPoly e = ip_sub(ip_mod(f, next), ip_mul(in.g, in.h, next), next);
    IPoly q, r;
    ip_divmod_monic(ip_mul(in.t, e, next), in.g, next, q, r);
    out.g = ip_add(in.g, r, next);
    out.h = ip_add(in.h, ip_add(ip_mul(in.s, e, next), ip_mul(q, in.h, next), next), next);

    IPoly one{Integer(1)};
    IPoly b = ip_sub(ip_add(ip_mul(in.s, out.g, next), ip_mul(in.t, out.h, next), next), one, next);
    IPoly q2, r2;
    ip_divmod_monic(ip_mul(in.s, b, next), out.h, next, q2, r2);
    out.s = ip_sub(in.s, r2, next);
    out.t = ip_sub(in.t, ip_add(ip_mul(in.t, b, next), ip_mul(q2, out.g, next), next), next);
    (void)m;
    return out;
}

IPoly from_zp(const ZPoly& f) {
    IPoly r;
    r.reserve(f.size());
    for (auto c : f) r.emplace_back(c);
    return r;
}

// Lifts the modular factorization of monic f (given exactly over Z) from p to
// the modulus M = p^(2^j) >= target; factors come back monic mod M.
void hensel_tree(const IPoly& f, const std::vector<ZPoly>& parts, std::size_t lo, std::size_t hi,
                 std::int64_t p, const Integer& M, std::vector<IPoly>& out) {
    if (hi - lo == 1) {
        out.push_back(ip_mod(f, M));
        return;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    ZPoly gp{1}, hp{1};
    for (std::size_t i = lo; i < mid; ++i) gp = zp_mul(gp, parts[i], p);
    for (std::size_t i = mid; i < hi; ++i) hp = zp_mul(hp, parts[i], p);
    ZPoly sp, tp;
    zp_bezout(gp, hp, p, sp, tp);

    LiftedPair pair{from_zp(gp), from_zp(hp), from_zp(sp), from_zp(tp)};
    Integer m(p);
    while (m < M) {
        Integer next = m * m;
        pair = hensel_step(f, pair, m, next);
        m = next;
    }
    pair.g = ip_mod(pair.g, M);
    pair.h = ip_mod(pair.h, M);
    hensel_tree(pair.g, parts, lo, mid, p, M, out);
    hensel_tree(pair.h, parts, mid, hi, p, M, out);
}

Integer ip_height(const IPoly& f) {
    Integer h = 0;
    for (const auto& c : f) {
        Integer a = abs(c);
        if (a > h) h = a;
    }
    return h;
}

// Exact division test over Z for a monic candidate divisor.
bool ip_divides_exact(const IPoly& f, const IPoly& g, IPoly& quotient) {
    IPoly r = f;
    quotient.assign(f.size() > g.size() - 1 ? f.size() - g.size() + 1 : 0, Integer(0));
    while (ip_deg(r) >= ip_deg(g)) {
        int shift = ip_deg(r) - ip_deg(g);
        Integer c = r.back();
        quotient[static_cast<std::size_t>(shift)] = c;
        for (std::size_t j = 0; j < g.size(); ++j) {
            std::size_t k = static_cast<std::size_t>(shift) + j;
            r[k] -= c * g[j];
        }
        ip_trim(r);
    }
    return r.empty();
}

std::vector<IPoly> zassenhaus_monic(const IPoly& F) {
    const int n = ip_deg(F);
    if (n == 1) return {F};

    // A prime keeping F squarefree; F squarefree over Q guarantees one exists.
    Integer pz = 2;
    std::int64_t p = 0;
    for (;;) {
        mpz_nextprime(pz.get_mpz_t(), pz.get_mpz_t());
        std::int64_t cand = static_cast<std::int64_t>(pz.get_si());
        ZPoly fp;
        fp.reserve(F.size());
        for (const auto& c : F) fp.push_back(nonneg_mod(c, pz).get_si());
        zp_trim(fp);
        if (zp_deg(fp) != n) continue; // cannot happen for monic F, kept for safety
        if (zp_deg(zp_gcd(fp, zp_derivative(fp, cand), cand)) == 0) {
            p = cand;
            break;
        }
    }

    ZPoly fp;
    for (const auto& c : F) fp.push_back(nonneg_mod(c, Integer(p)).get_si());
    std::vector<ZPoly> parts = zp_factor_squarefree(fp, p);
    std::sort(parts.begin(), parts.end());
    if (parts.size() == 1) return {F};

    // Landau-Mignotte style bound on factor coefficients.
    Integer norm2 = 0;
    for (const auto& c : F) norm2 += c * c;
    Integer bound = (sqrt(norm2) + 1) * (Integer(1) << static_cast<unsigned>(n));
    Integer M(p);
    while (M <= 2 * bound) M *= M;

    std::vector<IPoly> lifted;
    hensel_tree(F, parts, 0, parts.size(), p, M, lifted);

    auto symmetric = [&M](IPoly f) {
        Integer half = M / 2;
        for (auto& c : f)
            if (c > half) c -= M;
        return f;
    };

    std::vector<IPoly> result;
    std::vector<std::size_t> pool(lifted.size());
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
    IPoly rem = F;

    auto next_combination = [](std::vector<std::size_t>& idx, std::size_t limit) {
        std::size_t size = idx.size();
        for (std::size_t k = size; k-- > 0;) {
            if (idx[k] + (size - k) < limit) {
                ++idx[k];
                for (std::size_t j = k + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
                return true;
            }
        }
        return false;
    };

    std::size_t size = 1;
    while (2 * size <= pool.size()) {
        bool found_any = false;
        std::vector<std::size_t> idx(size);
        for (std::size_t i = 0; i < size; ++i) idx[i] = i;
        do {
            IPoly cand{Integer(1)};
            for (std::size_t i = 0; i < size; ++i)
                cand = ip_mul(cand, lifted[pool[idx[i]]], M);
            cand = symmetric(std::move(cand));
            IPoly quotient;
            if (ip_height(cand) <= bound && ip_divides_exact(rem, cand, quotient)) {
                result.push_back(cand);
                rem = quotient;
                std::vector<std::size_t> next_pool;
                for (std::size_t i = 0, j = 0; i < pool.size(); ++i) {
                    if (j < size && idx[j] == i) {
                        ++j;
                        continue;
                    }
                    next_pool.push_back(pool[i]);
                }
                pool = std::move(next_pool);
                found_any = true;
                break;
            }
        } while (next_combination(idx, pool.size()));
        if (!found_any) ++size;
    }
    if (ip_deg(rem) > 0) result.push_back(rem);
    return result;
}

} // namespace

std::vector<Poly> factor_squarefree_rational(const Poly& p) {
    if (p.tower().depth() != 0) throw domain_error("rational factorization over a proper tower");
    if (p.degree() < 1) throw domain_error("rational factorization of a constant");
    if (p.degree() == 1) return {p.monic()};

    // Clear denominators, take the primitive part.
    Integer den = 1;
    for (int i = 0; i <= p.degree(); ++i)
        den = lcm(den, p.coeff(i).rational_value().get_den());
    IPoly F(static_cast<std::size_t>(p.degree()) + 1);
    for (int i = 0; i <= p.degree(); ++i) {
        Rational c = p.coeff(i).rational_value() * Rational(den);
        F[static_cast<std::size_t>(i)] = c.get_num();
    }
    Integer content = 0;
    for (const auto& c : F) content = gcd(content, c);
    for (auto& c : F) c /= content;

    // Monic transform: roots scale by the leading coefficient, so
    // coefficient i picks up b^(n-1-i) and the top one becomes 1.
    const Integer b = F.back();
    const int n = ip_deg(F);
    IPoly Fhat(F.size());
    Fhat[static_cast<std::size_t>(n)] = 1;
    Integer powb = 1;
    for (int i = n - 1; i >= 0; --i) {
        Fhat[static_cast<std::size_t>(i)] = F[static_cast<std::size_t>(i)] * powb;
        powb *= b;
    }

    std::vector<IPoly> hat_factors = zassenhaus_monic(Fhat);

    const ExtensionTower q_tower;
    std::vector<Poly> out;
    out.reserve(hat_factors.size());
    for (const auto& G : hat_factors) {
        // Undo the root scaling: X -> b X, then monic-normalize.
        std::vector<FieldElement> coeffs(G.size());
        Integer pw = 1;
        for (std::size_t i = 0; i < G.size(); ++i) {
            coeffs[i] = FieldElement(Rational(G[i] * pw));
            pw *= b;
        }
        Poly g = Poly::from_coeffs(q_tower, p.variable(), std::move(coeffs));
        out.push_back(g.monic());
    }
    std::sort(out.begin(), out.end(),
              [](const Poly& a, const Poly& b2) { return Poly::compare(a, b2) < 0; });
    return out;
}

} // namespace fq
} // namespace rp

#include "ctlab/ideals.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "ctlab/errors.hpp"

namespace ctlab {

Complex CMPoint::tau() const {
  return Complex(Real(-b) / (2 * a), sqrt(Real(3L)) / (2 * a));
}

namespace {

long modp(const mpz_class& x, long M) { return static_cast<long>(mpz_fdiv_ui(x.get_mpz_t(), M)); }

long inverse_mod(long x, long m) {
  mpz_class r, xx(x), mm(m);
  if (mpz_invert(r.get_mpz_t(), xx.get_mpz_t(), mm.get_mpz_t()) == 0)
    throw Error(ErrorKind::NotCoprime, std::to_string(x) + " not invertible mod " + std::to_string(m));
  return r.get_si();
}

// next prime p = 1 mod 3 after `after` that does not divide D
long next_split_prime(long after, long D) {
  for (long p = after + 1;; ++p) {
    if (p % 3 != 1 || D % p == 0) continue;
    if (is_prime(p)) return p;
  }
}

}  // namespace

ClassLabel class_label(const EisInt& k, long M) {
  mpz_class n = norm(k);
  long ninv = inverse_mod(modp(n, M), M);
  EisInt sq = k * k;
  return {modp(sq.a * ninv, M), modp(sq.b * ninv, M)};
}

bool classes_equivalent(const EisInt& k1, const EisInt& k2, long M) {
  long ninv = inverse_mod(modp(norm(k2), M), M);
  EisInt q = k1 * conj(k2);
  return modp(q.b * ninv, M) == 0;
}

long sqrt_minus3_mod(long M, bool require_div3) {
  if (M < 1) throw Error(ErrorKind::Validation, "modulus must be positive");
  struct Part {
    mpz_class mod;
    std::vector<mpz_class> roots;
  };
  std::vector<Part> parts;
  bool has3 = false;
  for (auto& [p, e] : factor_integer(M)) {
    mpz_class pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    if (p == 2) {
      if (e > 2) throw Error(ErrorKind::NoSolution, "8 divides the modulus");
      parts.push_back({2, {1}});
    } else if (p == 3) {
      if (e > 1) throw Error(ErrorKind::NoSolution, "9 divides the modulus");
      parts.push_back({3, {0}});
      has3 = true;
    } else if (p % 3 == 2) {
      throw Error(ErrorKind::NoSolution, "prime " + std::to_string(p) + " = 2 mod 3 divides the modulus");
    } else {
      mpz_class P(p), e3((p - 1) / 3), zeta;
      for (long g = 2;; ++g) {
        mpz_class G(g);
        mpz_powm(zeta.get_mpz_t(), G.get_mpz_t(), e3.get_mpz_t(), P.get_mpz_t());
        if (zeta != 1) break;
      }
      mpz_class s = (2 * zeta + 1) % P;
      // Hensel: s <- s - (s^2+3)/(2s)
      mpz_class mod = P;
      for (int i = 1; i < e; ++i) {
        mod *= p;
        mpz_class f = s * s + 3, d = 2 * s, dinv;
        mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), mod.get_mpz_t());
        s = s - f * dinv;
        mpz_fdiv_r(s.get_mpz_t(), s.get_mpz_t(), mod.get_mpz_t());
      }
      mpz_class s2 = pe - s;
      parts.push_back({pe, {s, s2}});
    }
  }
  if (require_div3 && !has3) parts.push_back({3, {0}});
  mpz_class total = 1;
  for (auto& pt : parts) total *= pt.mod;
  mpz_class best = 0;
  bool found = false;
  size_t combos = 1;
  for (auto& pt : parts) combos *= pt.roots.size();
  for (size_t c = 0; c < combos; ++c) {
    size_t idx = c;
    mpz_class x = 0, mod = 1;
    for (auto& pt : parts) {
      const mpz_class& r = pt.roots[idx % pt.roots.size()];
      idx /= pt.roots.size();
      // combine x mod `mod` with r mod pt.mod
      mpz_class inv, diff = r - x;
      mpz_invert(inv.get_mpz_t(), mod.get_mpz_t(), pt.mod.get_mpz_t());
      mpz_class t = diff * inv;
      mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), pt.mod.get_mpz_t());
      x += mod * t;
      mod *= pt.mod;
      mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
    }
    if (x == 0) x = total;
    if (!found || x < best) {
      best = x;
      found = true;
    }
  }
  mpz_class check = best * best + 3;
  if (!mpz_divisible_ui_p(check.get_mpz_t(), M)) throw Error(ErrorKind::AlgorithmStuck, "sqrt(-3) lift");
  return best.get_si();
}

long class_group_order(long D) {
  if (D < 1) throw Error(ErrorKind::Validation, "D must be positive");
  if (D % 3 == 0) throw Error(ErrorKind::NonCoprimeToThree, "D divisible by 3");
  long h = D;
  for (auto& [p, e] : factor_integer(D)) {
    long kron = (p == 2) ? -1 : (p % 3 == 1 ? 1 : -1);
    h = h / p * (p - kron);
  }
  return h;
}

long ideal_b(const EisInt& k) {
  mpz_class nz = norm(k);
  if (!nz.fits_slong_p()) throw Error(ErrorKind::Validation, "norm too large");
  long a = nz.get_si();
  if (a == 1) return 1;
  long A = modp(k.a, a), B = modp(k.b, a);
  long w = static_cast<long>((static_cast<__int128>(a - A) * inverse_mod(B, a)) % a);
  long b = (1 + 2 * w) % a;
  if (b % 2 == 0) b += a;
  if ((static_cast<__int128>(b) * b + 3) % (4 * a) != 0) throw Error(ErrorKind::AlgorithmStuck, "ideal_b");
  return b;
}

PrimitiveIdeal ideal_from_generator(const EisInt& k) {
  PrimitiveIdeal I;
  I.generator = k;
  I.a = norm(k).get_si();
  I.b = ideal_b(k);
  return I;
}

std::pair<mpz_class, mpz_class> lattice_coordinates(const EisInt& k, long a, long b) {
  mpz_class m = k.b;
  mpz_class rest = k.a - m * ((1 - b) / 2);
  if (!mpz_divisible_ui_p(rest.get_mpz_t(), a))
    throw Error(ErrorKind::Validation, k.to_string() + " is not in the lattice");
  return {rest / a, m};
}

ClassGroupReps enumerate_class_reps(long D, const EnumerationOptions& opt) {
  if (D < 1 || D % 3 == 0) throw Error(ErrorKind::Validation, "D must be positive and coprime to 3");
  ClassGroupReps out;
  out.D = D;
  out.modulus = 3 * D;
  long h = class_group_order(D);
  std::set<ClassLabel> seen;
  auto add = [&](const EisInt& k) {
    ClassLabel l = class_label(k, out.modulus);
    if (seen.count(l)) return false;
    seen.insert(l);
    out.reps.push_back(ideal_from_generator(k));
    out.labels.push_back(l);
    return true;
  };
  add(EisInt(1));
  long p = 1;
  int skipped = 0;
  std::mt19937_64 rng(opt.seed);
  while (static_cast<long>(out.reps.size()) < h) {
    p = next_split_prime(p, D);
    if (p > opt.prime_bound)
      throw Error(ErrorKind::ExhaustionFailure, "prime bound reached with " + std::to_string(out.reps.size()) +
                                                    " of " + std::to_string(h) + " classes");
    if (opt.strategy == RepStrategy::Alternate && skipped < 5) {
      ++skipped;
      continue;
    }
    bool flip = opt.strategy == RepStrategy::Alternate;
    if (opt.seed != 0) {
      std::uint64_t r = rng();
      if ((r & 1) && p < opt.prime_bound / 2) continue;
      flip ^= ((r >> 1) & 1) != 0;
    }
    EisInt pi = split_prime(p).pi;
    EisInt pib = primary_associate(conj(pi)).value;
    if (flip) std::swap(pi, pib);
    if (!add(pi)) add(pib);
  }
  return out;
}

std::pair<long, long> split_square_part(long D) {
  long D1 = 1, D2 = 1;
  for (auto& [p, e] : factor_integer(D)) {
    if (e == 1) D1 *= p;
    else if (e == 2) D2 *= p;
    else throw Error(ErrorKind::Validation, std::to_string(D) + " is not cube-free");
  }
  return {D1, D2};
}

Theorem2Reps reps_for_theorem2(long D, long b, const EnumerationOptions& opt) {
  auto [D1, D2] = split_square_part(D);
  long D0 = D1 * D2;
  for (auto& [p, e] : factor_integer(D0))
    if (p % 3 != 1) throw Error(ErrorKind::Validation, "D must be a product of primes = 1 mod 3");
  mpz_class bb(b), chk = bb * bb + 3;
  long m12 = 12 * D * D;
  if (!mpz_divisible_ui_p(chk.get_mpz_t(), m12) || b % 3 != 0)
    throw Error(ErrorKind::Validation, "b must satisfy b^2 = -3 mod 12D^2 with 3 | b");
  Theorem2Reps out;
  out.D = D;
  out.D0 = D0;
  out.b = b;
  long M = 3 * D0;
  long phi = class_group_order(D0);
  std::map<long, Theorem2Rep> by_s;
  {
    Theorem2Rep r;
    r.s = 1 % D0;
    r.ideal = ideal_from_generator(EisInt(1));
    r.b_lattice = b;
    r.n = 1;
    r.m = 0;
    by_s[r.s] = r;
  }
  long p = 1;
  int skipped = 0;
  while (static_cast<long>(by_s.size()) < phi) {
    p = next_split_prime(p, D);
    if (p > opt.prime_bound) throw Error(ErrorKind::ExhaustionFailure, "prime bound reached");
    if (opt.strategy == RepStrategy::Alternate && skipped < 5) {
      ++skipped;
      continue;
    }
    long s = p % D0;
    if (by_s.count(s)) continue;
    EisInt pi = split_prime(p).pi;
    EisInt pib = primary_associate(conj(pi)).value;
    if (opt.strategy == RepStrategy::Alternate) std::swap(pi, pib);
    for (const EisInt& k : {pi, pib}) {
      long ba = ideal_b(k);
      // b' = b mod 12D^2, b' = ba mod p
      mpz_class t = mpz_class(ba - b) * inverse_mod(m12 % p, p);
      mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), mpz_class(p).get_mpz_t());
      mpz_class bl = mpz_class(b) + mpz_class(m12) * t;
      auto [n, m] = lattice_coordinates(k, p, bl.get_si());
      if (modp(m, 3) != 0 || modp(n, M) != 1 % M) continue;
      Theorem2Rep r;
      r.s = s;
      r.ideal = ideal_from_generator(k);
      r.b_lattice = bl.get_si();
      r.n = n;
      r.m = m;
      by_s[s] = r;
      break;
    }
  }
  for (auto& [s, r] : by_s) out.reps.push_back(r);
  return out;
}

PiPair pi_dividing_tau(long D, long b) {
  auto [D1, D2] = split_square_part(D);
  EisInt t((1 - b) / 2, 1);
  PiPair out;
  for (auto& [p, e] : factor_integer(D1 * D2)) {
    SplitResult sp = split_prime(p);
    if (sp.kind != SplitKind::Split) throw Error(ErrorKind::Validation, std::to_string(p) + " does not split");
    EisInt pib = primary_associate(conj(sp.pi)).value;
    bool d1 = divides(sp.pi * sp.pi, t), d2 = divides(pib * pib, t);
    if (d1 == d2) throw Error(ErrorKind::AmbiguousDivisor, "prime above " + std::to_string(p));
    EisInt q = d1 ? sp.pi : pib;
    if (D1 % p == 0) out.pi1 = out.pi1 * q;
    else out.pi2 = out.pi2 * q;
  }
  return out;
}

}  // namespace ctlab

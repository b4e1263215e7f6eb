//! Dense univariate helpers used by the factorization engine: integer
//! polynomials, rational polynomials for squarefree decomposition, and
//! polynomials over a small prime field.
//!
//! Coefficient vectors are stored low degree first and kept trimmed (no
//! trailing zeros); the zero polynomial is the empty vector.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

pub(crate) type ZPoly = Vec<BigInt>;
pub(crate) type QPoly = Vec<BigRational>;
pub(crate) type FpPoly = Vec<u64>;

// --- integer polynomials -------------------------------------------------

pub(crate) fn z_trim(a: &mut ZPoly) {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
}

pub(crate) fn z_content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub(crate) fn z_primitive(a: &[BigInt]) -> ZPoly {
    let mut c = z_content(a);
    if c.is_zero() {
        return Vec::new();
    }
    if a.last().is_some_and(Signed::is_negative) {
        c = -c;
    }
    a.iter().map(|x| x / &c).collect()
}

pub(crate) fn z_mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    z_trim(&mut out);
    out
}

/// Exact quotient over Z, or `None` if `b` does not divide `a` in Z[t].
pub(crate) fn z_exact_div(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let (qc, rem) = r[dr].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let shift = dr - db;
        for (k, bk) in b.iter().enumerate() {
            r[k + shift] -= &qc * bk;
        }
        q[shift] = qc;
        z_trim(&mut r);
    }
    if r.is_empty() {
        z_trim(&mut q);
        Some(q)
    } else {
        None
    }
}

/// Euclidean norm rounded up.
fn z_norm2_ceil(a: &[BigInt]) -> BigInt {
    let s: BigInt = a.iter().map(|c| c * c).sum();
    s.sqrt() + BigInt::one()
}

// --- rational polynomials ------------------------------------------------

fn q_trim(a: &mut QPoly) {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
}

fn q_from_z(a: &[BigInt]) -> QPoly {
    a.iter().cloned().map(BigRational::from_integer).collect()
}

fn q_to_primitive_z(a: &[BigRational]) -> ZPoly {
    let den = a.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let z: ZPoly = a
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    z_primitive(&z)
}

fn q_divrem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    let inv = b[db].recip();
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let c = &r[dr] * &inv;
        let shift = dr - db;
        for (k, bk) in b.iter().enumerate() {
            r[k + shift] -= &c * bk;
        }
        q[shift] = c;
        q_trim(&mut r);
    }
    q_trim(&mut q);
    (q, r)
}

fn q_monic(a: &[BigRational]) -> QPoly {
    match a.last() {
        None => Vec::new(),
        Some(lc) => {
            let inv = lc.recip();
            a.iter().map(|c| c * &inv).collect()
        }
    }
}

fn q_gcd(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !b.is_empty() {
        let (_, r) = q_divrem(&a, &b);
        a = b;
        b = q_monic(&r);
    }
    q_monic(&a)
}

fn q_derivative(a: &[BigRational]) -> QPoly {
    let mut d: QPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    q_trim(&mut d);
    d
}

fn q_sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    let mut out: QPoly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    q_trim(&mut out);
    out
}

/// Yun's squarefree decomposition of a primitive integer polynomial of
/// positive degree: returns `(part, multiplicity)` with primitive parts.
pub(crate) fn squarefree_decomposition(f: &[BigInt]) -> Vec<(ZPoly, u32)> {
    if is_squarefree_fast(f) {
        return vec![(z_primitive(f), 1)];
    }
    let fq = q_from_z(f);
    let df = q_derivative(&fq);
    let b = q_gcd(&fq, &df);
    let mut c = q_divrem(&fq, &b).0;
    let mut d = q_sub(&q_divrem(&df, &b).0, &q_derivative(&c));
    let mut out = Vec::new();
    let mut i = 1;
    while c.len() > 1 {
        let a = q_gcd(&c, &d);
        if a.len() > 1 {
            out.push((q_to_primitive_z(&a), i));
        }
        c = q_divrem(&c, &a).0;
        d = q_sub(&q_divrem(&d, &a).0, &q_derivative(&c));
        i += 1;
    }
    out
}

/// Sufficient test: squarefree modulo some small prime not dividing the
/// leading coefficient implies squarefree over Q.
fn is_squarefree_fast(f: &[BigInt]) -> bool {
    let lc = f.last().expect("nonzero");
    for p in small_primes().take(6) {
        if (lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = fp_from_z(f, p);
        let d = fp_derivative(&fp, p);
        if !d.is_empty() && fp_gcd(&fp, &d, p).len() == 1 {
            return true;
        }
    }
    false
}

// --- prime field polynomials --------------------------------------------

pub(crate) fn small_primes() -> impl Iterator<Item = u64> {
    (13u64..).filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

pub(crate) fn fp_trim(a: &mut FpPoly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn fp_from_z(a: &[BigInt], p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    let mut out: FpPoly = a
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits"))
        .collect();
    fp_trim(&mut out);
    out
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let mut out: FpPoly = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    fp_trim(&mut out);
    out
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_trim(&mut out);
    out
}

fn fp_divrem(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly) {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let inv = inv_mod(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr] * inv % p;
        let shift = dr - db;
        for (k, &bk) in b.iter().enumerate() {
            r[k + shift] = (r[k + shift] + p - c * bk % p) % p;
        }
        q[shift] = c;
        fp_trim(&mut r);
    }
    fp_trim(&mut q);
    (q, r)
}

fn fp_rem(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    fp_divrem(a, b, p).1
}

pub(crate) fn fp_monic(a: &[u64], p: u64) -> FpPoly {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => {
            let inv = inv_mod(lc, p);
            a.iter().map(|c| c * inv % p).collect()
        }
    }
}

pub(crate) fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    fp_monic(&a, p)
}

/// Returns `(s, t)` with `s*a + t*b = 1` for coprime `a`, `b`.
fn fp_bezout(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1): (FpPoly, FpPoly) = (vec![1], Vec::new());
    let (mut t0, mut t1): (FpPoly, FpPoly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let s2 = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        let t2 = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    assert_eq!(r0.len(), 1, "Bezout inputs must be coprime");
    let inv = inv_mod(r0[0], p);
    let scale = |v: FpPoly| -> FpPoly { v.into_iter().map(|c| c * inv % p).collect() };
    (scale(s0), scale(t0))
}

fn fp_derivative(a: &[u64], p: u64) -> FpPoly {
    let mut d: FpPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| (i as u64 % p) * c % p)
        .collect();
    fp_trim(&mut d);
    d
}

fn fp_powmod(base: &[u64], exp: &BigUint, modulus: &[u64], p: u64) -> FpPoly {
    let mut result: FpPoly = vec![1];
    let base = fp_rem(base, modulus, p);
    for i in (0..exp.bits()).rev() {
        result = fp_rem(&fp_mul(&result, &result, p), modulus, p);
        if exp.bit(i) {
            result = fp_rem(&fp_mul(&result, &base, p), modulus, p);
        }
    }
    result
}

/// True when `f mod p` keeps its degree and is squarefree.
pub(crate) fn good_prime(f: &[BigInt], p: u64) -> bool {
    let lc = f.last().expect("nonzero");
    if (lc % BigInt::from(p)).is_zero() {
        return false;
    }
    let fp = fp_from_z(f, p);
    let d = fp_derivative(&fp, p);
    !d.is_empty() && fp_gcd(&fp, &d, p).len() == 1
}

/// Monic irreducible factors of a squarefree polynomial over F_p.
/// Equal-degree splitting uses a fixed-seed generator so results are
/// reproducible.
pub(crate) fn fp_factor_squarefree(f: &[u64], p: u64) -> Vec<FpPoly> {
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(0x5eed ^ p);
    let mut f = fp_monic(f, p);
    let mut out = Vec::new();
    // distinct-degree stage
    let x: FpPoly = vec![0, 1];
    let mut h = x.clone();
    let mut d = 1usize;
    let pb = BigUint::from(p);
    while f.len() > 1 && 2 * d < f.len() {
        h = fp_powmod(&h, &pb, &f, p);
        let g = fp_gcd(&fp_sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            equal_degree_split(&g, d, p, &mut rng, &mut out);
            f = fp_divrem(&f, &g, p).0;
            h = fp_rem(&h, &f, p);
        }
        d += 1;
    }
    if f.len() > 1 {
        out.push(f);
    }
    out
}

fn equal_degree_split<R: Rng>(g: &[u64], d: usize, p: u64, rng: &mut R, out: &mut Vec<FpPoly>) {
    let n = g.len() - 1;
    if n == d {
        out.push(fp_monic(g, p));
        return;
    }
    let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let mut a: FpPoly = (0..n).map(|_| rng.gen_range(0..p)).collect();
        fp_trim(&mut a);
        if a.len() < 2 {
            continue;
        }
        let b = fp_sub(&fp_powmod(&a, &e, g, p), &[1], p);
        let h = fp_gcd(&b, g, p);
        if h.len() > 1 && h.len() < g.len() {
            let rest = fp_divrem(g, &h, p).0;
            equal_degree_split(&h, d, p, rng, out);
            equal_degree_split(&rest, d, p, rng, out);
            return;
        }
    }
}

// --- Hensel lifting ------------------------------------------------------

fn m_reduce(a: &[BigInt], m: &BigInt) -> ZPoly {
    let mut out: ZPoly = a.iter().map(|c| c.mod_floor(m)).collect();
    z_trim(&mut out);
    out
}

fn m_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let out: ZPoly = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
        .collect();
    m_reduce(&out, m)
}

fn m_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let out: ZPoly = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
        .collect();
    m_reduce(&out, m)
}

fn m_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    m_reduce(&z_mul(a, b), m)
}

/// Division by a monic polynomial modulo `m`.
fn m_divrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    debug_assert!(b.last().is_some_and(One::is_one));
    let db = b.len() - 1;
    let mut r = m_reduce(a, m);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr].clone();
        let shift = dr - db;
        for (k, bk) in b.iter().enumerate() {
            r[k + shift] = (&r[k + shift] - &c * bk).mod_floor(m);
        }
        q[shift] = c;
        z_trim(&mut r);
    }
    z_trim(&mut q);
    (q, r)
}

/// One quadratic Hensel step from modulus `m` to `m^2`.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = m_sub(f, &z_mul(g, h), &m2);
    let (q, r) = m_divrem_monic(&z_mul(s, &e), h, &m2);
    let g2 = m_add(&m_add(g, &z_mul(t, &e), &m2), &z_mul(&q, g), &m2);
    let h2 = m_add(h, &r, &m2);
    let b = m_sub(
        &m_add(&z_mul(s, &g2), &z_mul(t, &h2), &m2),
        &[BigInt::one()],
        &m2,
    );
    let (c, d) = m_divrem_monic(&z_mul(s, &b), &h2, &m2);
    let s2 = m_sub(s, &d, &m2);
    let t2 = m_sub(&m_sub(t, &z_mul(t, &b), &m2), &m_mul(&c, &g2, &m2), &m2);
    (g2, h2, s2, t2)
}

fn z_from_fp(a: &[u64]) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "leading coefficient not invertible");
    e.x.mod_floor(m)
}

/// Lifts `f = lc * prod(factors) mod p` to monic factors modulo `p^(2^k)`
/// where `k` is the number of doubling steps.
fn multifactor_lift(f: &[BigInt], factors: &[FpPoly], p: u64, steps: u32) -> Vec<ZPoly> {
    let pb = BigInt::from(p);
    let big_m = num_traits::pow(pb.clone(), 1usize << steps);
    if factors.len() == 1 {
        let lc = f.last().expect("nonzero");
        let inv = mod_inverse(lc, &big_m);
        let monic: ZPoly = f.iter().map(|c| (c * &inv).mod_floor(&big_m)).collect();
        return vec![monic];
    }
    let lc_p = f
        .last()
        .expect("nonzero")
        .mod_floor(&pb)
        .to_u64()
        .expect("small");
    let g0: FpPoly = factors[0].iter().map(|c| c * lc_p % p).collect();
    let h0 = factors[1..]
        .iter()
        .fold(vec![1u64], |acc, q| fp_mul(&acc, q, p));
    let (s0, t0) = fp_bezout(&g0, &h0, p);
    let (mut g, mut h, mut s, mut t) = (
        z_from_fp(&g0),
        z_from_fp(&h0),
        z_from_fp(&s0),
        z_from_fp(&t0),
    );
    let mut m = pb.clone();
    for _ in 0..steps {
        let next = hensel_step(f, &g, &h, &s, &t, &m);
        g = next.0;
        h = next.1;
        s = next.2;
        t = next.3;
        m = &m * &m;
    }
    let lc = f.last().expect("nonzero");
    let inv = mod_inverse(lc, &big_m);
    let first: ZPoly = m_reduce(&g.iter().map(|c| c * &inv).collect::<ZPoly>(), &big_m);
    let mut out = vec![first];
    out.extend(multifactor_lift(&h, &factors[1..], p, steps));
    out
}

fn symmetric(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    let mut out: ZPoly = a
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    z_trim(&mut out);
    out
}

/// Irreducible factors over Z of a primitive, squarefree polynomial with
/// positive leading coefficient (Zassenhaus with quadratic Hensel lifting).
pub(crate) fn factor_squarefree_z(f: &[BigInt]) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let p = small_primes()
        .find(|&p| good_prime(f, p))
        .expect("a good prime exists for squarefree input");
    let modular = fp_factor_squarefree(&fp_from_z(f, p), p);
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    let lc = f.last().expect("nonzero").abs();
    let bound = BigInt::from(2) * &lc * num_traits::pow(BigInt::from(2), n) * z_norm2_ceil(f);
    let pb = BigInt::from(p);
    let mut steps = 0u32;
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus = &modulus * &modulus;
        steps += 1;
    }
    let lifted = multifactor_lift(f, &modular, p, steps);
    recombine(f, lifted, &modulus)
}

fn recombine(f: &[BigInt], lifted: Vec<ZPoly>, modulus: &BigInt) -> Vec<ZPoly> {
    use itertools::Itertools;
    let mut remaining: Vec<ZPoly> = lifted;
    let mut cur = f.to_vec();
    let mut out = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= remaining.len() {
        for subset in (0..remaining.len()).combinations(size) {
            let lc = cur.last().expect("nonzero").clone();
            let prod = subset
                .iter()
                .fold(vec![lc], |acc, &i| m_mul(&acc, &remaining[i], modulus));
            let cand = z_primitive(&symmetric(&prod, modulus));
            if cand.len() < 2 {
                continue;
            }
            let (lc_c, lc_f) = (cand.last().unwrap(), cur.last().unwrap());
            if !(lc_f % lc_c).is_zero() {
                continue;
            }
            if !cand[0].is_zero() && !(&cur[0] % &cand[0]).is_zero() {
                continue;
            }
            if let Some(q) = z_exact_div(&cur, &cand) {
                out.push(cand);
                cur = q;
                let mut k = 0;
                remaining.retain(|_| {
                    let keep = !subset.contains(&k);
                    k += 1;
                    keep
                });
                continue 'outer;
            }
        }
        size += 1;
    }
    if cur.len() > 1 {
        out.push(z_primitive(&cur));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> ZPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn sorted(mut v: Vec<ZPoly>) -> Vec<ZPoly> {
        v.sort();
        v
    }

    #[test]
    fn fp_factorization_of_x4_minus_1_mod_13() {
        // 13 = 1 mod 4 so x^4 - 1 splits into linear factors.
        let f = fp_from_z(&z(&[-1, 0, 0, 0, 1]), 13);
        let fs = fp_factor_squarefree(&f, 13);
        assert_eq!(fs.len(), 4);
        let prod = fs.iter().fold(vec![1u64], |acc, q| fp_mul(&acc, q, 13));
        assert_eq!(prod, f);
    }

    #[test]
    fn zassenhaus_recovers_cyclotomic_split() {
        let fs = factor_squarefree_z(&z(&[-1, 0, 0, 0, 1]));
        assert_eq!(
            sorted(fs),
            sorted(vec![z(&[-1, 1]), z(&[1, 1]), z(&[1, 0, 1])])
        );
    }

    #[test]
    fn swinnerton_dyer_style_irreducible() {
        // x^4 - 10x^2 + 1 is irreducible over Q but splits modulo every prime.
        let f = z(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_squarefree_z(&f), vec![f]);
    }

    #[test]
    fn non_monic_factors() {
        let f = z_mul(&z(&[3, 2]), &z_mul(&z(&[-1, 0, 5]), &z(&[7, -1, 0, 2])));
        let fs = factor_squarefree_z(&f);
        assert_eq!(
            sorted(fs),
            sorted(vec![z(&[3, 2]), z(&[-1, 0, 5]), z(&[7, -1, 0, 2])])
        );
    }

    #[test]
    fn squarefree_parts() {
        // (x-1)^2 (x+2)^3 x
        let f = z_mul(
            &z_mul(&z(&[-1, 1]), &z(&[-1, 1])),
            &z_mul(
                &z_mul(&z(&[2, 1]), &z_mul(&z(&[2, 1]), &z(&[2, 1]))),
                &z(&[0, 1]),
            ),
        );
        let parts = squarefree_decomposition(&f);
        assert_eq!(
            parts,
            vec![(z(&[0, 1]), 1), (z(&[-1, 1]), 2), (z(&[2, 1]), 3)]
        );
    }

    #[test]
    fn exact_division_over_z() {
        let a = z_mul(&z(&[1, 2]), &z(&[3, 0, 1]));
        assert_eq!(z_exact_div(&a, &z(&[1, 2])), Some(z(&[3, 0, 1])));
        assert_eq!(z_exact_div(&z(&[1, 1]), &z(&[0, 2])), None);
        assert_eq!(z_exact_div(&z(&[1, 2]), &z(&[0, 2])), None);
    }
}

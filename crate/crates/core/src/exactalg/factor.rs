//! Squarefree decomposition and factorization of univariate polynomials:
//! Cantor-Zassenhaus over `F_p`, Zassenhaus (mod-p factorization, Hensel
//! lifting, recombination) over `Q`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{primes_from, BaseField, Field, PrimeField, Rational, Rationals};
use super::poly::{Poly, PolyOps};
use super::resultant::{q_to_z_primitive, resultant, z_to_q, ZPoly};
use super::ExactError;

/// Squarefree decomposition: pairwise coprime monic squarefree factors
/// with multiplicities. Yun's algorithm in characteristic zero or above the
/// degree; in small positive characteristic the field must be finite.
pub fn squarefree_decomposition<F: Field>(k: &F, a: &Poly<F::Elt>) -> Vec<(Poly<F::Elt>, usize)> {
    let ch = k.characteristic();
    let deg = a.degree().expect("squarefree decomposition of zero");
    if ch != 0 && ch as usize <= deg {
        return squarefree_finite(k, &k.poly_monic(a));
    }
    let a = k.poly_monic(a);
    if deg == 0 {
        return Vec::new();
    }
    let da = k.poly_deriv(&a);
    let b = k.poly_gcd(&a, &da);
    let mut c = k.poly_div_exact(&a, &b);
    let mut d = k.poly_sub(&k.poly_div_exact(&da, &b), &k.poly_deriv(&c));
    let mut out = Vec::new();
    let mut i = 1;
    while c.degree() != Some(0) {
        let e = k.poly_gcd(&c, &d);
        if e.degree().unwrap_or(0) > 0 {
            out.push((e.clone(), i));
        }
        c = k.poly_div_exact(&c, &e);
        d = k.poly_sub(&k.poly_div_exact(&d, &e), &k.poly_deriv(&c));
        i += 1;
    }
    out
}

fn squarefree_finite<F: Field>(k: &F, f: &Poly<F::Elt>) -> Vec<(Poly<F::Elt>, usize)> {
    let p = k.characteristic() as usize;
    let mut out = Vec::new();
    let mut c = k.poly_gcd(f, &k.poly_deriv(f));
    let mut w = k.poly_div_exact(f, &c);
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = k.poly_gcd(&w, &c);
        let fac = k.poly_div_exact(&w, &y);
        if fac.degree().unwrap_or(0) > 0 {
            out.push((fac, i));
        }
        c = k.poly_div_exact(&c, &y);
        w = y;
        i += 1;
    }
    if c.degree().unwrap_or(0) > 0 {
        let root: Vec<F::Elt> = c.coeffs().iter().step_by(p).map(|x| k.pth_root(x)).collect();
        for (g, m) in squarefree_finite(k, &Poly::from_coeffs(k, root)) {
            out.push((g, m * p));
        }
    }
    out
}

pub fn squarefree_part<F: Field>(k: &F, a: &Poly<F::Elt>) -> Poly<F::Elt> {
    squarefree_decomposition(k, a)
        .into_iter()
        .fold(Poly::constant(k, k.one()), |acc, (f, _)| k.poly_mul(&acc, &f))
}

/// Squarefree decomposition over `Q`.
pub fn squarefree_factor(a: &Poly<Rational>) -> Result<Vec<(Poly<Rational>, usize)>, ExactError> {
    if a.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    Ok(squarefree_decomposition(&Rationals, a))
}

/// Irreducible monic factors over `Q` with multiplicities; the product of
/// `factor^mult` equals `a` up to a scalar.
pub fn factor_rational(a: &Poly<Rational>) -> Result<Vec<(Poly<Rational>, usize)>, ExactError> {
    let mut out = Vec::new();
    for (f, m) in squarefree_factor(a)? {
        for g in Rationals.factor_squarefree(&f) {
            out.push((g, m));
        }
    }
    Ok(out)
}

/// Irreducible monic factors with multiplicity over any [`BaseField`].
pub fn factor_over<F: BaseField>(k: &F, a: &Poly<F::Elt>) -> Vec<(Poly<F::Elt>, usize)> {
    let mut out = Vec::new();
    for (f, m) in squarefree_decomposition(k, a) {
        for g in k.factor_squarefree(&f) {
            out.push((g, m));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Factorization over F_p.

fn fp_rng(a: &Poly<u64>) -> ChaCha8Rng {
    // seeded by the input so results are reproducible
    let seed = a.coeffs().iter().fold(0x9e37_79b9_7f4a_7c15u64, |h, c| {
        h.rotate_left(7) ^ c.wrapping_mul(0x100_0000_01b3)
    });
    ChaCha8Rng::seed_from_u64(seed)
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn distinct_degree(k: &PrimeField, a: &Poly<u64>) -> Vec<(Poly<u64>, usize)> {
    let p = BigUint::from(k.p());
    let x = Poly::x(k);
    let mut f = a.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 0;
    while f.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = k.poly_powmod_big(&h, &p, &f);
        let g = k.poly_gcd(&k.poly_sub(&h, &x), &f);
        if g.degree().unwrap_or(0) > 0 {
            f = k.poly_div_exact(&f, &g);
            h = k.poly_rem(&h, &f);
            out.push((g, d));
        }
    }
    if f.degree().unwrap_or(0) > 0 {
        let deg = f.degree().unwrap();
        out.push((f, deg));
    }
    out
}

/// Equal-degree splitting (Cantor-Zassenhaus, odd `p`).
fn equal_degree(k: &PrimeField, a: &Poly<u64>, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly<u64>>) {
    let n = a.degree().unwrap();
    if n == d {
        out.push(a.clone());
        return;
    }
    let e = (num_traits::pow(BigUint::from(k.p()), d) - 1u32) / 2u32;
    loop {
        let r: Vec<u64> = (0..n).map(|_| rng.gen_range(0..k.p())).collect();
        let r = Poly::from_coeffs(k, r);
        if r.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = k.poly_sub(&k.poly_powmod_big(&r, &e, a), &Poly::constant(k, 1));
        let g = k.poly_gcd(&b, a);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = k.poly_div_exact(a, &g);
            equal_degree(k, &g, d, rng, out);
            equal_degree(k, &h, d, rng, out);
            return;
        }
    }
}

fn factor_fp_squarefree(k: &PrimeField, a: &Poly<u64>) -> Vec<Poly<u64>> {
    let a = k.poly_monic(a);
    let mut rng = fp_rng(&a);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(k, &a) {
        equal_degree(k, &g, d, &mut rng, &mut out);
    }
    out.sort_by(|x, y| x.degree().cmp(&y.degree()).then_with(|| x.coeffs().cmp(y.coeffs())));
    out
}

impl BaseField for PrimeField {
    fn factor_squarefree(&self, a: &Poly<u64>) -> Vec<Poly<u64>> {
        factor_fp_squarefree(self, a)
    }

    fn ext_is_square(&self, modulus: &Poly<u64>, a: &Poly<u64>) -> bool {
        let ext = super::field::ExtField::new(*self, modulus.clone());
        let n = modulus.degree().unwrap();
        let e = (num_traits::pow(BigUint::from(self.p()), n) - 1u32) / 2u32;
        let v = ext.pow_big(&ext.embed_poly(a), &e);
        ext.is_zero(&ext.embed_poly(a)) || ext.is_one(&v)
    }

    fn sample<R: Rng>(&self, rng: &mut R, _bound: u64) -> u64 {
        rng.gen_range(0..self.p())
    }

    fn normalizing_scale(&self, v: &[u64]) -> u64 {
        let lead = v.iter().find(|x| **x != 0).expect("zero projective vector");
        self.inv(lead).unwrap()
    }

    fn complete_basis(&self, p: &[u64; 3]) -> [[u64; 3]; 2] {
        let k = p.iter().position(|x| *x != 0).expect("zero projective vector");
        let mut out = [[0u64; 3]; 2];
        let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
        out[0][others[0]] = 1;
        out[1][others[1]] = 1;
        out
    }

    fn magnitude(&self, a: &u64) -> Rational {
        Rational::from_integer(BigInt::from((*a != 0) as u8))
    }
}

// ---------------------------------------------------------------------------
// Arithmetic in (Z / m)[x], coefficients kept in [0, m).

fn zm_trim(mut v: ZPoly) -> ZPoly {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn zm_reduce(a: &[BigInt], m: &BigInt) -> ZPoly {
    zm_trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zm_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zm_reduce(&(0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect::<Vec<_>>(), m)
}

fn zm_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zm_reduce(&(0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect::<Vec<_>>(), m)
}

fn zm_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    zm_reduce(&v, m)
}

fn zm_scale(a: &[BigInt], c: &BigInt, m: &BigInt) -> ZPoly {
    zm_reduce(&a.iter().map(|x| x * c).collect::<Vec<_>>(), m)
}

/// Division by a monic polynomial.
fn zm_divrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let db = b.len() - 1;
    let mut r: ZPoly = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), zm_reduce(&r, m));
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        let c = r[i].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, bc) in b.iter().enumerate() {
            r[i - db + j] -= &c * bc;
        }
        q[i - db] = c;
    }
    r.truncate(db);
    (zm_reduce(&q, m), zm_reduce(&r, m))
}

fn zm_inv(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "non-invertible modulo m");
    e.x.mod_floor(m)
}

fn zm_monic(a: &[BigInt], m: &BigInt) -> ZPoly {
    let li = zm_inv(a.last().unwrap(), m);
    zm_scale(a, &li, m)
}

fn fp_to_z(a: &Poly<u64>) -> ZPoly {
    a.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

fn z_to_fp(k: &PrimeField, a: &[BigInt]) -> Poly<u64> {
    Poly::from_coeffs(k, a.iter().map(|c| k.reduce_int(c)).collect())
}

/// Quadratic Hensel lifting of `f = g h (mod p)`, `h` monic, to modulus
/// `target`. Returns `(g, h)` modulo `target`.
fn hensel_two(f: &[BigInt], g: ZPoly, h: ZPoly, p: u64, target: &BigInt) -> (ZPoly, ZPoly) {
    let k = PrimeField::new(p);
    let (gg, s, t) = k.poly_xgcd(&z_to_fp(&k, &g), &z_to_fp(&k, &h));
    let gi = k.inv(gg.lc()).unwrap();
    let mut s = fp_to_z(&k.poly_scale(&s, &gi));
    let mut t = fp_to_z(&k.poly_scale(&t, &gi));
    let (mut g, mut h) = (g, h);
    let mut m = BigInt::from(p);
    while &m < target {
        let m2 = &m * &m;
        let e = zm_sub(f, &zm_mul(&g, &h, &m2), &m2);
        let (q, r) = zm_divrem_monic(&zm_mul(&s, &e, &m2), &h, &m2);
        let g_new = zm_add(&zm_add(&g, &zm_mul(&t, &e, &m2), &m2), &zm_mul(&q, &g, &m2), &m2);
        let h_new = zm_add(&h, &r, &m2);
        let one = vec![BigInt::one()];
        let b = zm_sub(&zm_add(&zm_mul(&s, &g_new, &m2), &zm_mul(&t, &h_new, &m2), &m2), &one, &m2);
        let (c, d) = zm_divrem_monic(&zm_mul(&s, &b, &m2), &h_new, &m2);
        s = zm_sub(&s, &d, &m2);
        t = zm_sub(&zm_sub(&t, &zm_mul(&t, &b, &m2), &m2), &zm_mul(&c, &g_new, &m2), &m2);
        g = g_new;
        h = h_new;
        m = m2;
    }
    (zm_reduce(&g, target), zm_reduce(&h, target))
}

/// Lifts monic factors `us` of `f mod p` (with `f = lc(f) * prod us`) to
/// monic factors modulo `target`.
fn hensel_multi(f: &[BigInt], us: &[Poly<u64>], p: u64, target: &BigInt) -> Vec<ZPoly> {
    if us.len() == 1 {
        return vec![zm_monic(&zm_reduce(f, target), target)];
    }
    let k = PrimeField::new(p);
    let l = f.last().unwrap().clone();
    let g0 = zm_scale(&fp_to_z(&us[0]), &l, &BigInt::from(p));
    let h0 = us[1..].iter().fold(Poly::constant(&k, 1), |acc, u| k.poly_mul(&acc, u));
    let (g, h) = hensel_two(f, g0, fp_to_z(&h0), p, target);
    let mut out = vec![zm_monic(&g, target)];
    out.extend(hensel_multi(&h, &us[1..], p, target));
    out
}

fn symmetric(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    a.iter()
        .map(|c| {
            let c = c.mod_floor(m);
            if c > half {
                c - m
            } else {
                c
            }
        })
        .collect()
}

/// Exact division over Z; `None` if `b` does not divide `a`.
fn z_divide(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let (q, r) = Rationals.poly_divrem(&z_to_q(a), &z_to_q(b));
    if !r.is_zero() || q.coeffs().iter().any(|c| !c.is_integer()) {
        return None;
    }
    Some(q.coeffs().iter().map(|c| c.to_integer()).collect())
}

fn choose_prime(f: &[BigInt]) -> (u64, Vec<Poly<u64>>) {
    let lc = f.last().unwrap();
    let mut best: Option<(u64, Vec<Poly<u64>>)> = None;
    let mut tried = 0;
    for p in primes_from(3) {
        let k = PrimeField::new(p);
        if k.reduce_int(lc) == 0 {
            continue;
        }
        let fp = z_to_fp(&k, f);
        let g = k.poly_gcd(&fp, &k.poly_deriv(&fp));
        if g.degree() != Some(0) {
            continue;
        }
        let us = factor_fp_squarefree(&k, &fp);
        tried += 1;
        if best.as_ref().is_none_or(|(_, b)| us.len() < b.len()) {
            best = Some((p, us));
        }
        if best.as_ref().unwrap().1.len() == 1 || tried >= 6 {
            break;
        }
    }
    best.unwrap()
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// Zassenhaus factorization of a primitive squarefree integer polynomial.
fn zassenhaus(f: &[BigInt]) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let (p, us) = choose_prime(f);
    if us.len() == 1 {
        return vec![f.to_vec()];
    }
    let lc = f.last().unwrap().abs();
    let norm1: BigInt = f.iter().map(|c| c.abs()).sum();
    let bound = BigInt::from(2) * &lc * num_traits::pow(BigInt::from(2), n) * norm1 + 1;
    let mut target = BigInt::from(p);
    while target <= bound {
        target *= p;
    }
    let mut lifted = hensel_multi(f, &us, p, &target);
    let mut f = f.to_vec();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = false;
        for subset in subsets(lifted.len(), size) {
            let l = f.last().unwrap().clone();
            let cand = subset
                .iter()
                .fold(vec![l.clone()], |acc, &i| zm_mul(&acc, &lifted[i], &target));
            let cand = super::resultant::z_primitive(&symmetric(&cand, &target));
            if let Some(q) = z_divide(&f, &cand) {
                out.push(cand);
                f = q;
                let keep: Vec<ZPoly> = lifted
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, u)| u.clone())
                    .collect();
                lifted = keep;
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    out.push(super::resultant::z_primitive(&f));
    out
}

impl BaseField for Rationals {
    fn factor_squarefree(&self, a: &Poly<Rational>) -> Vec<Poly<Rational>> {
        let z = q_to_z_primitive(a);
        let mut out: Vec<Poly<Rational>> =
            zassenhaus(&z).into_iter().map(|g| self.poly_monic(&z_to_q(&g))).collect();
        out.sort_by(|x, y| x.degree().cmp(&y.degree()).then_with(|| x.to_string().cmp(&y.to_string())));
        out
    }

    /// `c` is a square in `Q[t]/(d)` iff `X^2 - c` splits over it; with a
    /// squarefree norm the number of `Q`-irreducible factors of the norm
    /// equals the number of factors over the extension.
    fn ext_is_square(&self, modulus: &Poly<Rational>, a: &Poly<Rational>) -> bool {
        let k = Rationals;
        let n = modulus.degree().unwrap();
        let c = k.poly_rem(a, modulus);
        if c.is_zero() {
            return true;
        }
        for shift in 0i64.. {
            let xs: Vec<Rational> = (0..=2 * n as i64).map(|x| k.from_i64(x)).collect();
            let ys: Vec<Rational> = xs
                .iter()
                .map(|x0| {
                    // (x0 + shift*t)^2 - c(t)
                    let lin = Poly::from_coeffs(&k, vec![x0.clone(), k.from_i64(shift)]);
                    let g = k.poly_sub(&k.poly_mul(&lin, &lin), &c);
                    if g.is_zero() {
                        k.zero()
                    } else {
                        resultant(&k, modulus, &g)
                    }
                })
                .collect();
            let norm = k.poly_interpolate(&xs, &ys);
            let sq = k.poly_gcd(&norm, &k.poly_deriv(&norm));
            if sq.degree() != Some(0) {
                continue;
            }
            return self.factor_squarefree(&norm).len() >= 2;
        }
        unreachable!()
    }

    fn sample<R: Rng>(&self, rng: &mut R, bound: u64) -> Rational {
        let b = bound.min(i64::MAX as u64) as i64;
        self.from_i64(rng.gen_range(-b..=b))
    }

    fn normalizing_scale(&self, v: &[Rational]) -> Rational {
        let den = v.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let nums: Vec<BigInt> = v.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
        let g = nums.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        assert!(!g.is_zero(), "zero projective vector");
        let lead = nums.iter().find(|x| !x.is_zero()).unwrap();
        let scale = Rational::new(den, g);
        if lead.is_negative() {
            -scale
        } else {
            scale
        }
    }

    /// Euclid on the entries of `p`, mirrored by column operations on a
    /// unimodular matrix whose columns stay a basis with `p` in their span.
    fn complete_basis(&self, p: &[Rational; 3]) -> [[Rational; 3]; 2] {
        let c = self.normalizing_scale(p);
        let mut v: Vec<BigInt> = p.iter().map(|x| (x * &c).to_integer()).collect();
        let mut cols: Vec<[BigInt; 3]> = (0..3)
            .map(|j| {
                let mut e = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
                e[j] = BigInt::one();
                e
            })
            .collect();
        loop {
            let nz: Vec<usize> = (0..3).filter(|&i| !v[i].is_zero()).collect();
            if nz.len() == 1 {
                let k = nz[0];
                let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
                let conv = |e: &[BigInt; 3]| e.clone().map(Rational::from_integer);
                return [conv(&cols[others[0]]), conv(&cols[others[1]])];
            }
            // smallest nonzero entry reduces the others
            let j = *nz.iter().min_by_key(|&&i| v[i].abs()).unwrap();
            for &i in &nz {
                if i == j {
                    continue;
                }
                let q = v[i].div_floor(&v[j]);
                v[i] = &v[i] - &q * &v[j];
                // p = sum v_i col_i is preserved by col_j += q col_i
                let ci = cols[i].clone();
                for r in 0..3 {
                    cols[j][r] = &cols[j][r] + &q * &ci[r];
                }
            }
        }
    }

    fn magnitude(&self, a: &Rational) -> Rational {
        a.abs()
    }
}

/// Small helper used by tests and callers that need integer content.
pub fn rational_content(a: &Poly<Rational>) -> Rational {
    let z = a.coeffs().iter().fold(BigInt::zero(), |g, c| g.gcd(c.numer()));
    let d = a.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    Rational::new(z, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Poly<Rational> {
        Poly::from_i64s(&Rationals, v)
    }

    fn product(fs: &[(Poly<Rational>, usize)]) -> Poly<Rational> {
        let k = Rationals;
        fs.iter().fold(q(&[1]), |acc, (f, m)| k.poly_mul(&acc, &k.poly_pow(f, *m as u32)))
    }

    #[test]
    fn squarefree_examples() {
        // (t-1)^2 (t+2)
        let a = Rationals.poly_mul(&q(&[1, -2, 1]), &q(&[2, 1]));
        let s = squarefree_factor(&a).unwrap();
        assert_eq!(s, vec![(q(&[2, 1]), 1), (q(&[-1, 1]), 2)]);
        assert_eq!(squarefree_factor(&q(&[0, 0, 0, 0, 0, 1])).unwrap(), vec![(q(&[0, 1]), 5)]);
        // t^4 + t^2 = t^2 (t^2 + 1)
        assert_eq!(
            squarefree_factor(&q(&[0, 0, 1, 0, 1])).unwrap(),
            vec![(q(&[1, 0, 1]), 1), (q(&[0, 1]), 2)]
        );
        assert_eq!(squarefree_factor(&Poly::zero()), Err(ExactError::ZeroPolynomial));
    }

    #[test]
    fn factor_examples() {
        let f = factor_rational(&q(&[-1, 0, 1])).unwrap();
        assert_eq!(f, vec![(q(&[-1, 1]), 1), (q(&[1, 1]), 1)]);
        assert_eq!(factor_rational(&q(&[1, 0, 1])).unwrap(), vec![(q(&[1, 0, 1]), 1)]);
        // Sophie Germain: t^4 + 4 = (t^2 - 2t + 2)(t^2 + 2t + 2)
        let f = factor_rational(&q(&[4, 0, 0, 0, 1])).unwrap();
        assert_eq!(f.len(), 2);
        assert!(f.contains(&(q(&[2, -2, 1]), 1)));
        assert!(f.contains(&(q(&[2, 2, 1]), 1)));
    }

    #[test]
    fn swinnerton_dyer_polynomial_is_irreducible() {
        // x^4 - 10x^2 + 1 splits into linear or quadratic factors mod every prime
        let f = factor_rational(&q(&[1, 0, -10, 0, 1])).unwrap();
        assert_eq!(f.len(), 1);
    }

    #[test]
    fn fp_factorization_reconstructs() {
        let k = PrimeField::new(7);
        let a = Poly::from_i64s(&k, &[1, 0, 0, 0, 0, 0, 0, 0, 1]); // x^8 + 1
        let sf = squarefree_part(&k, &a);
        assert_eq!(sf, k.poly_monic(&a));
        let fs = k.factor_squarefree(&a);
        let prod = fs.iter().fold(Poly::constant(&k, 1), |acc, f| k.poly_mul(&acc, f));
        assert_eq!(prod, a);
        // (x+1)^8 (x+2) needs p-th roots in characteristic 7
        let b = k.poly_mul(&k.poly_pow(&Poly::from_i64s(&k, &[1, 1]), 8), &Poly::from_i64s(&k, &[2, 1]));
        let mut dec = squarefree_decomposition(&k, &b);
        dec.sort_by_key(|(_, m)| *m);
        assert_eq!(dec, vec![(Poly::from_i64s(&k, &[2, 1]), 1), (Poly::from_i64s(&k, &[1, 1]), 8)]);
    }

    #[test]
    fn number_field_squares() {
        let k = Rationals;
        let d = q(&[-2, 0, 1]); // Q(sqrt 2)
        assert!(k.ext_is_square(&d, &q(&[0, 1]).clone()) == false); // sqrt(2) is not a square
        assert!(k.ext_is_square(&d, &q(&[2])));
        assert!(k.ext_is_square(&d, &q(&[3, 2]))); // (1 + sqrt2)^2 = 3 + 2 sqrt2
        assert!(!k.ext_is_square(&d, &q(&[3])));
        let e = q(&[1, 0, 1]); // Q(i): -1 is a square
        assert!(k.ext_is_square(&e, &q(&[-1])));
        assert!(k.ext_is_square(&e, &q(&[0, 2]))); // 2i = (1+i)^2
    }

    #[test]
    fn factor_reassembles_products() {
        let k = Rationals;
        let parts = [q(&[1, 1, 1]), q(&[-3, 0, 0, 1]), q(&[5, 2]), q(&[1, 0, 1])];
        let a = parts.iter().fold(q(&[6]), |acc, f| k.poly_mul(&acc, f));
        let a = k.poly_mul(&a, &parts[0]);
        let f = factor_rational(&a).unwrap();
        assert_eq!(f.len(), 4);
        assert_eq!(k.poly_monic(&product(&f)), k.poly_monic(&a));
    }

    #[test]
    fn unimodular_completion() {
        let k = Rationals;
        for p in [[12i64, 15, 20], [0, 0, 1], [6, 10, 15], [-3, 0, 7], [1, 0, 0]] {
            let pv = p.map(|x| k.from_i64(x));
            let [e1, e2] = k.complete_basis(&pv);
            let m = vec![pv.to_vec(), e1.to_vec(), e2.to_vec()];
            let d = crate::exactalg::linalg::det(&k, &m);
            assert!(d == k.one() || d == k.from_i64(-1), "{p:?}");
        }
        let s = k.normalizing_scale(&[k.from_i64(-4), Rational::new(2.into(), 3.into()), k.zero()]);
        assert_eq!(s, Rational::new((-3).into(), 2.into()));
    }
}

//! Resultants, principal subresultant coefficients, and the subresultant
//! GCD over the integers.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::field::{is_prime_u64, Field, PrimeField, Rational, Rationals};
use super::linalg::{det, det_poly, Matrix};
use super::poly::{Poly, PolyOps};

/// Sylvester-type matrix whose leading `(m+n-2j)` minor is the `j`-th
/// principal subresultant coefficient. `a`, `b` are ascending coefficient
/// vectors padded to the formal degrees `m`, `n`.
fn subresultant_matrix<E: Clone>(a: &[E], b: &[E], m: usize, n: usize, j: usize, zero: &E) -> Matrix<E> {
    let size = m + n - 2 * j;
    let width = m + n - j;
    let coeff = |v: &[E], i: usize| v.get(i).cloned().unwrap_or_else(|| zero.clone());
    let mut rows = Vec::with_capacity(size);
    for r in 0..n - j {
        let mut row = vec![zero.clone(); width];
        for i in 0..=m {
            // column index counts down from the top degree
            let col = r + (m - i);
            if col < width {
                row[col] = coeff(a, i);
            }
        }
        rows.push(row);
    }
    for r in 0..m - j {
        let mut row = vec![zero.clone(); width];
        for i in 0..=n {
            let col = r + (n - i);
            if col < width {
                row[col] = coeff(b, i);
            }
        }
        rows.push(row);
    }
    rows.into_iter().map(|mut r| {
        r.truncate(size);
        r
    }).collect()
}

/// Resultant with respect to formal degrees `m >= deg a`, `n >= deg b`.
pub fn resultant_formal<F: Field>(k: &F, a: &Poly<F::Elt>, b: &Poly<F::Elt>, m: usize, n: usize) -> F::Elt {
    psc_formal(k, a, b, m, n, 0)
}

/// `j`-th principal subresultant coefficient for formal degrees `m`, `n`.
pub fn psc_formal<F: Field>(k: &F, a: &Poly<F::Elt>, b: &Poly<F::Elt>, m: usize, n: usize, j: usize) -> F::Elt {
    if m + n == 2 * j {
        return k.one();
    }
    let mat = subresultant_matrix(a.coeffs(), b.coeffs(), m, n, j, &k.zero());
    det(k, &mat)
}

/// The usual resultant of two nonzero polynomials.
pub fn resultant<F: Field>(k: &F, a: &Poly<F::Elt>, b: &Poly<F::Elt>) -> F::Elt {
    match (a.degree(), b.degree()) {
        (Some(m), Some(n)) => resultant_formal(k, a, b, m, n),
        _ => k.zero(),
    }
}

/// A polynomial in `y` whose coefficients are polynomials in `x`.
pub type BiPoly<E> = Vec<Poly<E>>;

/// `j`-th principal subresultant coefficient, with respect to `y`, of
/// polynomials with coefficients in `F[x]`; formal degrees `m`, `n` in `y`.
pub fn psc_in_y<F: Field>(k: &F, a: &BiPoly<F::Elt>, b: &BiPoly<F::Elt>, m: usize, n: usize, j: usize) -> Poly<F::Elt> {
    if m + n == 2 * j {
        return Poly::constant(k, k.one());
    }
    let mat = subresultant_matrix(a, b, m, n, j, &Poly::zero());
    det_poly(k, &mat)
}

pub fn resultant_in_y<F: Field>(k: &F, a: &BiPoly<F::Elt>, b: &BiPoly<F::Elt>, m: usize, n: usize) -> Poly<F::Elt> {
    psc_in_y(k, a, b, m, n, 0)
}

/// Specializes `x := alpha` where the coefficients are reduced into an
/// arbitrary target field through `embed`.
pub fn bipoly_specialize<F: Field, G: Field>(
    k: &F,
    g: &G,
    a: &BiPoly<F::Elt>,
    embed: impl Fn(&Poly<F::Elt>) -> G::Elt,
) -> Poly<G::Elt> {
    let _ = k;
    Poly::from_coeffs(g, a.iter().map(embed).collect())
}

// ---------------------------------------------------------------------------
// Integer polynomials and the subresultant PRS.

pub type ZPoly = Vec<BigInt>;

fn z_trim(mut v: ZPoly) -> ZPoly {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

pub fn z_content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn z_primitive(a: &[BigInt]) -> ZPoly {
    let c = z_content(a);
    if c.is_zero() {
        return Vec::new();
    }
    let mut v: ZPoly = a.iter().map(|x| x / &c).collect();
    v = z_trim(v);
    if v.last().is_some_and(|l| l.is_negative()) {
        v.iter_mut().for_each(|x| *x = -x.clone());
    }
    v
}

/// Scales a rational polynomial to a primitive integer polynomial.
pub fn q_to_z_primitive(a: &Poly<Rational>) -> ZPoly {
    let den = a.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let v: ZPoly = a.coeffs().iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    z_primitive(&v)
}

pub fn z_to_q(a: &[BigInt]) -> Poly<Rational> {
    Poly::from_coeffs(&Rationals, a.iter().map(|c| Rational::from_integer(c.clone())).collect())
}

fn z_deg(a: &[BigInt]) -> usize {
    a.len() - 1
}

/// Pseudo-remainder `prem(a, b)` = remainder of `lc(b)^(da-db+1) a` by `b`.
fn z_prem(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let db = z_deg(b);
    let lb = b[db].clone();
    let mut r: ZPoly = a.to_vec();
    if r.len() <= db {
        return r;
    }
    let mut e = r.len() - db;
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for x in r.iter_mut() {
            *x *= &lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[dr - db + j] -= &lr * bc;
        }
        r = z_trim(r);
        e -= 1;
    }
    let f = num_traits::pow(lb, e);
    r.iter().map(|x| x * &f).collect()
}

/// Gcd in `Z[x]`, content included, by the subresultant remainder sequence.
pub fn subresultant_gcd_z(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let (a, b) = (z_trim(a.to_vec()), z_trim(b.to_vec()));
    if a.is_empty() {
        return z_primitive(&b);
    }
    if b.is_empty() {
        return z_primitive(&a);
    }
    let (mut f, mut g) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let content = z_content(&f).gcd(&z_content(&g));
    let mut big_g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = z_deg(&f) - z_deg(&g);
        let r = z_prem(&f, &g);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            return vec![content];
        }
        let divisor = &big_g * num_traits::pow(h.clone(), delta);
        f = g;
        g = r.iter().map(|x| x / &divisor).collect();
        big_g = f[z_deg(&f)].clone();
        h = if delta == 0 {
            h
        } else {
            let num = num_traits::pow(big_g.clone(), delta);
            let den = num_traits::pow(h.clone(), delta - 1);
            num / den
        };
    }
    let p = z_primitive(&g);
    p.iter().map(|x| x * &content).collect()
}

/// Whether `b` divides `a` in `Z[x]`, for `b` primitive.
fn z_divides(a: &[BigInt], b: &[BigInt]) -> bool {
    let db = z_deg(b);
    let lb = &b[db];
    let mut r: ZPoly = z_trim(a.to_vec());
    while r.len() > db {
        let dr = r.len() - 1;
        let (q, rem) = r[dr].div_rem(lb);
        if !rem.is_zero() {
            return false;
        }
        for (j, bc) in b.iter().enumerate() {
            r[dr - db + j] -= &q * bc;
        }
        r = z_trim(r);
    }
    r.is_empty()
}

/// Primes below `2^61`, descending.
fn gcd_primes() -> impl Iterator<Item = u64> {
    ((1u64 << 40)..(1u64 << 61)).rev().filter(|&p| p % 2 == 1 && is_prime_u64(p))
}

/// Primitive gcd of integer polynomials from gcds modulo large primes,
/// combined by the Chinese remainder theorem and certified by division.
pub fn modular_gcd_z(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let (a, b) = (z_primitive(a), z_primitive(b));
    if a.is_empty() || b.is_empty() {
        return if a.is_empty() { b } else { a };
    }
    let lc = a[z_deg(&a)].gcd(&b[z_deg(&b)]);
    let mut modulus = BigInt::one();
    let mut acc: ZPoly = Vec::new();
    let mut deg = usize::MAX;
    let mut last: ZPoly = Vec::new();
    for p in gcd_primes() {
        let k = PrimeField::new(p);
        let red = |v: &[BigInt]| Poly::from_coeffs(&k, v.iter().map(|c| k.reduce_int(c)).collect());
        let (ap, bp) = (red(&a), red(&b));
        if ap.degree() != Some(z_deg(&a)) || bp.degree() != Some(z_deg(&b)) {
            continue;
        }
        let g = k.poly_gcd(&ap, &bp);
        let dg = g.degree().unwrap();
        if dg == 0 {
            return vec![BigInt::one()];
        }
        if dg > deg {
            continue;
        }
        let g = k.poly_scale(&g, &k.reduce_int(&lc));
        let big_p = BigInt::from(p);
        if dg < deg {
            deg = dg;
            modulus = big_p;
            acc = g.coeffs().iter().map(|&c| BigInt::from(c)).collect();
            last.clear();
            continue;
        }
        // CRT: x = acc mod M, x = c mod p
        let m_inv = k.inv(&k.reduce_int(&modulus)).unwrap();
        for (x, &c) in acc.iter_mut().zip(g.coeffs()) {
            let diff = k.sub(&c, &k.reduce_int(x));
            *x += &modulus * BigInt::from(k.mul(&diff, &m_inv));
        }
        modulus *= big_p;
        let half = &modulus >> 1;
        let lifted: ZPoly = acc.iter().map(|x| if *x > half { x - &modulus } else { x.clone() }).collect();
        let cand = z_primitive(&lifted);
        if cand == last && z_divides(&a, &cand) && z_divides(&b, &cand) {
            return cand;
        }
        last = cand;
    }
    unreachable!("prime supply exhausted")
}

/// Monic gcd over the rationals, computed modularly on primitive integer
/// representatives.
pub fn poly_gcd_q(a: &Poly<Rational>, b: &Poly<Rational>) -> Poly<Rational> {
    if a.is_zero() && b.is_zero() {
        return Poly::zero();
    }
    let g = modular_gcd_z(&q_to_z_primitive(a), &q_to_z_primitive(b));
    Rationals.poly_monic(&z_to_q(&g))
}

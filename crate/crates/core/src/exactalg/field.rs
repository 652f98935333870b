//! Coefficient fields: the rationals, prime fields, and simple extensions
//! `F[t]/(d)` of either.

use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::poly::{Poly, PolyOps};

pub type Integer = BigInt;
pub type Rational = BigRational;

/// A field given by a context value; elements carry no context of their own.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elt: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elt;
    fn one(&self) -> Self::Elt;
    fn from_int(&self, n: &BigInt) -> Self::Elt;
    fn add(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn sub(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn mul(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn neg(&self, a: &Self::Elt) -> Self::Elt;
    fn inv(&self, a: &Self::Elt) -> Option<Self::Elt>;
    fn is_zero(&self, a: &Self::Elt) -> bool;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    fn is_square(&self, a: &Self::Elt) -> bool;
    /// A square root in the field, when one exists and the field supports
    /// extracting it.
    fn sqrt(&self, a: &Self::Elt) -> Option<Self::Elt>;

    fn from_i64(&self, n: i64) -> Self::Elt {
        self.from_int(&BigInt::from(n))
    }

    /// A faster gcd than the Euclidean one, where the field has one.
    fn special_gcd(&self, _a: &Poly<Self::Elt>, _b: &Poly<Self::Elt>) -> Option<Poly<Self::Elt>> {
        None
    }

    fn is_one(&self, a: &Self::Elt) -> bool {
        *a == self.one()
    }

    /// Panics on division by zero; callers check denominators first.
    fn div(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt {
        let bi = self.inv(b).expect("division by zero in field");
        self.mul(a, &bi)
    }

    fn square(&self, a: &Self::Elt) -> Self::Elt {
        self.mul(a, a)
    }

    fn pow(&self, a: &Self::Elt, mut e: u64) -> Self::Elt {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn pow_big(&self, a: &Self::Elt, e: &BigUint) -> Self::Elt {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// Degree over the prime field, for finite fields.
    fn prime_degree(&self) -> u32 {
        1
    }

    /// Inverse Frobenius in a finite field.
    fn pth_root(&self, a: &Self::Elt) -> Self::Elt {
        let p = self.characteristic();
        assert!(p > 0, "p-th roots only in positive characteristic");
        let e = num_traits::pow(BigUint::from(p), self.prime_degree() as usize - 1);
        self.pow_big(a, &e)
    }
}

/// Fields over which univariate polynomials can be factored, so that
/// simple algebraic extensions can be built on top of them.
pub trait BaseField: Field {
    /// Monic irreducible factors of a squarefree polynomial of positive degree.
    fn factor_squarefree(&self, a: &Poly<Self::Elt>) -> Vec<Poly<Self::Elt>>;
    /// Square test for `a` in `F[t]/(modulus)`, modulus monic irreducible.
    fn ext_is_square(&self, modulus: &Poly<Self::Elt>, a: &Poly<Self::Elt>) -> bool;
    /// A pseudo-random element; for the rationals an integer in `[-bound, bound]`.
    fn sample<R: Rng>(&self, rng: &mut R, bound: u64) -> Self::Elt;
    /// The scalar `c` making `c * v` the canonical representative of the
    /// projective point `v` (nonzero): primitive integers with positive
    /// first nonzero entry over `Q`, first nonzero entry 1 over `F_p`.
    fn normalizing_scale(&self, v: &[Self::Elt]) -> Self::Elt;
    /// Two vectors completing `p` to a basis; unimodular over `Q` when `p`
    /// is a primitive integer vector.
    fn complete_basis(&self, p: &[Self::Elt; 3]) -> [[Self::Elt; 3]; 2];
    /// Size used to pick affine charts: absolute value over `Q`, 0 or 1 over `F_p`.
    fn magnitude(&self, a: &Self::Elt) -> Rational;
}

/// Canonical representative of a projective vector.
pub fn normalize_projective<F: BaseField>(k: &F, v: &[F::Elt]) -> Vec<F::Elt> {
    let c = k.normalizing_scale(v);
    v.iter().map(|x| k.mul(x, &c)).collect()
}

// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    fn special_gcd(&self, a: &Poly<Rational>, b: &Poly<Rational>) -> Option<Poly<Rational>> {
        Some(super::resultant::poly_gcd_q(a, b))
    }
    type Elt = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn from_int(&self, n: &BigInt) -> Rational {
        Rational::from_integer(n.clone())
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn is_square(&self, a: &Rational) -> bool {
        self.sqrt(a).is_some()
    }
    fn sqrt(&self, a: &Rational) -> Option<Rational> {
        if a.is_negative() {
            return None;
        }
        let n = int_sqrt_exact(a.numer())?;
        let d = int_sqrt_exact(a.denom())?;
        Some(Rational::new(n, d))
    }
}

/// Exact integer square root of a non-negative integer, if it is a square.
pub fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

// ---------------------------------------------------------------------------

/// The prime field `F_p`, `p` odd; elements are residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(p >= 3 && p % 2 == 1 && p < (1 << 62), "PrimeField needs an odd prime");
        PrimeField { p }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn reduce_int(&self, n: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        n.mod_floor(&m).to_u64().expect("residue fits in u64")
    }

    /// Reduction of a rational; `None` when `p` divides the denominator.
    pub fn reduce(&self, r: &Rational) -> Option<u64> {
        let d = self.reduce_int(r.denom());
        let di = self.inv(&d)?;
        Some(self.mul(&self.reduce_int(r.numer()), &di))
    }

    /// Tonelli-Shanks.
    fn sqrt_raw(&self, a: u64) -> Option<u64> {
        let p = self.p;
        if a == 0 {
            return Some(0);
        }
        if self.pow(&a, (p - 1) / 2) != 1 {
            return None;
        }
        if p % 4 == 3 {
            return Some(self.pow(&a, (p + 1) / 4));
        }
        let mut q = p - 1;
        let mut s = 0u32;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let mut z = 2u64;
        while self.pow(&z, (p - 1) / 2) != p - 1 {
            z += 1;
        }
        let mut m = s;
        let mut c = self.pow(&z, q);
        let mut t = self.pow(&a, q);
        let mut r = self.pow(&a, (q + 1) / 2);
        while t != 1 {
            let mut i = 0u32;
            let mut tt = t;
            while tt != 1 {
                tt = self.mul(&tt, &tt);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.mul(&b, &b);
            }
            m = i;
            c = self.mul(&b, &b);
            t = self.mul(&t, &c);
            r = self.mul(&r, &b);
        }
        Some(r)
    }
}

impl Field for PrimeField {
    type Elt = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        self.reduce_int(n)
    }
    fn from_i64(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.p as i128) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        Some(s0.rem_euclid(self.p as i128) as u64)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn is_square(&self, a: &u64) -> bool {
        *a == 0 || self.pow(a, (self.p - 1) / 2) == 1
    }
    fn sqrt(&self, a: &u64) -> Option<u64> {
        self.sqrt_raw(*a)
    }
}

// ---------------------------------------------------------------------------

/// The simple extension `F[t]/(d)` with `d` monic irreducible over `F`.
///
/// Irreducibility is the caller's responsibility (it comes from upstream
/// factorization); with a reducible modulus inversion can fail and panics.
#[derive(Clone, Debug)]
pub struct ExtField<F: BaseField> {
    base: F,
    modulus: Arc<Poly<F::Elt>>,
}

impl<F: BaseField> ExtField<F> {
    pub fn new(base: F, modulus: Poly<F::Elt>) -> Self {
        assert!(modulus.degree().unwrap_or(0) >= 1, "modulus must have positive degree");
        let modulus = base.poly_monic(&modulus);
        ExtField { base, modulus: Arc::new(modulus) }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn modulus(&self) -> &Poly<F::Elt> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    /// Embeds a polynomial over the base field (reduced modulo `d`).
    pub fn embed_poly(&self, a: &Poly<F::Elt>) -> Poly<F::Elt> {
        self.base.poly_rem(a, &self.modulus)
    }

    pub fn embed(&self, c: &F::Elt) -> Poly<F::Elt> {
        Poly::constant(&self.base, c.clone())
    }

    /// The class of `t`.
    pub fn generator(&self) -> Poly<F::Elt> {
        self.embed_poly(&Poly::x(&self.base))
    }
}

impl<F: BaseField> Field for ExtField<F> {
    type Elt = Poly<F::Elt>;

    fn zero(&self) -> Self::Elt {
        Poly::zero()
    }
    fn one(&self) -> Self::Elt {
        Poly::constant(&self.base, self.base.one())
    }
    fn from_int(&self, n: &BigInt) -> Self::Elt {
        Poly::constant(&self.base, self.base.from_int(n))
    }
    fn add(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt {
        self.base.poly_add(a, b)
    }
    fn sub(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt {
        self.base.poly_sub(a, b)
    }
    fn mul(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt {
        let m = self.base.poly_mul(a, b);
        self.base.poly_rem(&m, &self.modulus)
    }
    fn neg(&self, a: &Self::Elt) -> Self::Elt {
        self.base.poly_neg(a)
    }
    fn inv(&self, a: &Self::Elt) -> Option<Self::Elt> {
        if a.is_zero() {
            return None;
        }
        let (g, s, _) = self.base.poly_xgcd(a, &self.modulus);
        if g.degree() != Some(0) {
            panic!("zero divisor in ExtField: modulus is not irreducible");
        }
        let gi = self.base.inv(g.lc()).unwrap();
        Some(self.base.poly_scale(&s, &gi))
    }
    fn is_zero(&self, a: &Self::Elt) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    fn is_square(&self, a: &Self::Elt) -> bool {
        a.is_zero() || self.base.ext_is_square(&self.modulus, a)
    }
    fn sqrt(&self, _a: &Self::Elt) -> Option<Self::Elt> {
        None
    }
    fn prime_degree(&self) -> u32 {
        self.degree() as u32 * self.base.prime_degree()
    }
}

// ---------------------------------------------------------------------------

/// A self-describing element of `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeFieldElt {
    p: u64,
    residue: u64,
}

impl PrimeFieldElt {
    pub fn new(p: u64, n: i64) -> Self {
        let k = PrimeField::new(p);
        PrimeFieldElt { p, residue: k.from_i64(n) }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    fn field(&self) -> PrimeField {
        PrimeField::new(self.p)
    }

    fn lift(&self, v: u64) -> Self {
        PrimeFieldElt { p: self.p, residue: v }
    }

    pub fn inv(&self) -> Option<Self> {
        self.field().inv(&self.residue).map(|v| self.lift(v))
    }

    pub fn is_square(&self) -> bool {
        self.field().is_square(&self.residue)
    }
}

macro_rules! fp_binop {
    ($tr:ident, $m:ident) => {
        impl std::ops::$tr for PrimeFieldElt {
            type Output = PrimeFieldElt;
            fn $m(self, rhs: PrimeFieldElt) -> PrimeFieldElt {
                assert_eq!(self.p, rhs.p, "mixed primes");
                self.lift(self.field().$m(&self.residue, &rhs.residue))
            }
        }
    };
}
fp_binop!(Add, add);
fp_binop!(Sub, sub);
fp_binop!(Mul, mul);

impl std::ops::Neg for PrimeFieldElt {
    type Output = PrimeFieldElt;
    fn neg(self) -> PrimeFieldElt {
        self.lift(self.field().neg(&self.residue))
    }
}

impl fmt::Display for PrimeFieldElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.residue, self.p)
    }
}

/// A self-describing element of `Q[t]/(d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRingElt {
    ring: ExtField<Rationals>,
    value: Poly<Rational>,
}

impl PartialEq for ExtField<Rationals> {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
    }
}
impl Eq for ExtField<Rationals> {}

impl QuotientRingElt {
    /// `modulus` must be squarefree and is assumed irreducible for inversion.
    pub fn new(modulus: &Poly<Rational>, value: &Poly<Rational>) -> Self {
        let ring = ExtField::new(Rationals, modulus.clone());
        let value = ring.embed_poly(value);
        QuotientRingElt { ring, value }
    }

    pub fn value(&self) -> &Poly<Rational> {
        &self.value
    }

    pub fn modulus(&self) -> &Poly<Rational> {
        self.ring.modulus()
    }

    pub fn mul(&self, other: &Self) -> Self {
        QuotientRingElt { ring: self.ring.clone(), value: self.ring.mul(&self.value, &other.value) }
    }

    pub fn add(&self, other: &Self) -> Self {
        QuotientRingElt { ring: self.ring.clone(), value: self.ring.add(&self.value, &other.value) }
    }

    pub fn inv(&self) -> Option<Self> {
        self.ring.inv(&self.value).map(|value| QuotientRingElt { ring: self.ring.clone(), value })
    }

    pub fn is_square(&self) -> bool {
        self.ring.is_square(&self.value)
    }
}

/// Small odd primes by trial division; used to pick reduction primes.
/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for b in BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for a in BASES {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

pub fn primes_from(start: u64) -> impl Iterator<Item = u64> {
    (start.max(2)..).filter(|&n| is_prime_u64(n))
}

/// The sign of a big integer as -1, 0, 1.
pub fn sign_of(n: &BigInt) -> i32 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tonelli_shanks_all_residues() {
        for p in [5u64, 7, 13, 17, 41, 97] {
            let k = PrimeField::new(p);
            for a in 0..p {
                match k.sqrt(&a) {
                    Some(r) => assert_eq!(k.mul(&r, &r), a),
                    None => assert!(!k.is_square(&a)),
                }
            }
        }
    }

    #[test]
    fn rational_sqrt() {
        let k = Rationals;
        let r = Rational::new(BigInt::from(9), BigInt::from(4));
        assert_eq!(k.sqrt(&r), Some(Rational::new(BigInt::from(3), BigInt::from(2))));
        assert!(k.sqrt(&Rational::from_integer(BigInt::from(2))).is_none());
        assert!(k.sqrt(&Rational::from_integer(BigInt::from(-4))).is_none());
    }

    #[test]
    fn prime_field_elt_ops() {
        let a = PrimeFieldElt::new(7, 3);
        let b = PrimeFieldElt::new(7, 5);
        assert_eq!((a * b).residue(), 1);
        assert_eq!((a + b).residue(), 1);
        assert_eq!((a - b).residue(), 5);
        assert_eq!((-a).residue(), 4);
        assert_eq!(a.inv().unwrap().residue(), 5);
        assert!(PrimeFieldElt::new(7, 2).is_square());
        assert!(!PrimeFieldElt::new(7, 3).is_square());
    }
}

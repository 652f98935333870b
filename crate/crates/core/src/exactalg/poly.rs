//! Dense univariate polynomials over a [`Field`].

use std::fmt;

use super::field::Field;

/// Coefficients in ascending order of degree, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> Poly<E> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn from_coeffs<F: Field<Elt = E>>(k: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| k.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s<F: Field<Elt = E>>(k: &F, coeffs: &[i64]) -> Self {
        Self::from_coeffs(k, coeffs.iter().map(|&c| k.from_i64(c)).collect())
    }

    pub fn constant<F: Field<Elt = E>>(k: &F, c: E) -> Self {
        Self::from_coeffs(k, vec![c])
    }

    pub fn x<F: Field<Elt = E>>(k: &F) -> Self {
        Poly { coeffs: vec![k.zero(), k.one()] }
    }

    pub fn monomial<F: Field<Elt = E>>(k: &F, c: E, deg: usize) -> Self {
        let mut v = vec![k.zero(); deg + 1];
        v[deg] = c;
        Self::from_coeffs(k, v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff<F: Field<Elt = E>>(&self, k: &F, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| k.zero())
    }

    /// Leading coefficient; panics on the zero polynomial.
    pub fn lc(&self) -> &E {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn map<F2: Field>(&self, k2: &F2, f: impl Fn(&E) -> F2::Elt) -> Poly<F2::Elt> {
        Poly::from_coeffs(k2, self.coeffs.iter().map(f).collect())
    }
}

impl<E: fmt::Display> fmt::Display for Poly<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            let s = c.to_string();
            if s == "0" {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{s}")?,
                1 => write!(f, "({s})*t")?,
                _ => write!(f, "({s})*t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Polynomial arithmetic for every field.
pub trait PolyOps: Field {
    fn poly_add(&self, a: &Poly<Self::Elt>, b: &Poly<Self::Elt>) -> Poly<Self::Elt> {
        let n = a.coeffs.len().max(b.coeffs.len());
        let v = (0..n).map(|i| self.add(&a.coeff(self, i), &b.coeff(self, i))).collect();
        Poly::from_coeffs(self, v)
    }

    fn poly_sub(&self, a: &Poly<Self::Elt>, b: &Poly<Self::Elt>) -> Poly<Self::Elt> {
        let n = a.coeffs.len().max(b.coeffs.len());
        let v = (0..n).map(|i| self.sub(&a.coeff(self, i), &b.coeff(self, i))).collect();
        Poly::from_coeffs(self, v)
    }

    fn poly_neg(&self, a: &Poly<Self::Elt>) -> Poly<Self::Elt> {
        Poly { coeffs: a.coeffs.iter().map(|c| self.neg(c)).collect() }
    }

    fn poly_scale(&self, a: &Poly<Self::Elt>, c: &Self::Elt) -> Poly<Self::Elt> {
        Poly::from_coeffs(self, a.coeffs.iter().map(|x| self.mul(x, c)).collect())
    }

    fn poly_mul(&self, a: &Poly<Self::Elt>, b: &Poly<Self::Elt>) -> Poly<Self::Elt> {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![self.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                let p = self.mul(x, y);
                v[i + j] = self.add(&v[i + j], &p);
            }
        }
        Poly::from_coeffs(self, v)
    }

    fn poly_pow(&self, a: &Poly<Self::Elt>, e: u32) -> Poly<Self::Elt> {
        let mut acc = Poly::constant(self, self.one());
        for _ in 0..e {
            acc = self.poly_mul(&acc, a);
        }
        acc
    }

    /// Multiplication by `x^n`.
    fn poly_shift(&self, a: &Poly<Self::Elt>, n: usize) -> Poly<Self::Elt> {
        if a.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![self.zero(); n];
        v.extend(a.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    /// Euclidean division; panics when `b` is zero.
    fn poly_divrem(
        &self,
        a: &Poly<Self::Elt>,
        b: &Poly<Self::Elt>,
    ) -> (Poly<Self::Elt>, Poly<Self::Elt>) {
        let db = b.degree().expect("polynomial division by zero");
        let lci = self.inv(b.lc()).unwrap();
        let mut r = a.coeffs.clone();
        if r.len() <= db {
            return (Poly::zero(), a.clone());
        }
        let mut q = vec![self.zero(); r.len() - db];
        for i in (db..r.len()).rev() {
            if self.is_zero(&r[i]) {
                continue;
            }
            let c = self.mul(&r[i], &lci);
            for (j, bc) in b.coeffs.iter().enumerate() {
                let t = self.mul(&c, bc);
                r[i - db + j] = self.sub(&r[i - db + j], &t);
            }
            q[i - db] = c;
        }
        r.truncate(db);
        (Poly::from_coeffs(self, q), Poly::from_coeffs(self, r))
    }

    fn poly_rem(&self, a: &Poly<Self::Elt>, b: &Poly<Self::Elt>) -> Poly<Self::Elt> {
        self.poly_divrem(a, b).1
    }

    /// Quotient of an exact division; panics if the remainder is nonzero.
    fn poly_div_exact(&self, a: &Poly<Self::Elt>, b: &Poly<Self::Elt>) -> Poly<Self::Elt> {
        let (q, r) = self.poly_divrem(a, b);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    fn poly_divides(&self, b: &Poly<Self::Elt>, a: &Poly<Self::Elt>) -> bool {
        self.poly_rem(a, b).is_zero()
    }

    fn poly_monic(&self, a: &Poly<Self::Elt>) -> Poly<Self::Elt> {
        if a.is_zero() {
            return Poly::zero();
        }
        let li = self.inv(a.lc()).unwrap();
        self.poly_scale(a, &li)
    }

    /// Monic gcd by the Euclidean algorithm; `gcd(0, 0) = 0`.
    fn poly_gcd(&self, a: &Poly<Self::Elt>, b: &Poly<Self::Elt>) -> Poly<Self::Elt> {
        if let Some(g) = self.special_gcd(a, b) {
            return g;
        }
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let r = self.poly_rem(&x, &y);
            x = y;
            y = r;
        }
        self.poly_monic(&x)
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g`, `g` not normalized.
    fn poly_xgcd(
        &self,
        a: &Poly<Self::Elt>,
        b: &Poly<Self::Elt>,
    ) -> (Poly<Self::Elt>, Poly<Self::Elt>, Poly<Self::Elt>) {
        let one = Poly::constant(self, self.one());
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (one.clone(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), one);
        while !r1.is_zero() {
            let (q, r) = self.poly_divrem(&r0, &r1);
            let s = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            let t = self.poly_sub(&t0, &self.poly_mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        (r0, s0, t0)
    }

    fn poly_deriv(&self, a: &Poly<Self::Elt>) -> Poly<Self::Elt> {
        let v = a
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.mul(c, &self.from_i64(i as i64)))
            .collect();
        Poly::from_coeffs(self, v)
    }

    fn poly_eval(&self, a: &Poly<Self::Elt>, x: &Self::Elt) -> Self::Elt {
        let mut acc = self.zero();
        for c in a.coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, x), c);
        }
        acc
    }

    /// `a(b(x))`.
    fn poly_compose(&self, a: &Poly<Self::Elt>, b: &Poly<Self::Elt>) -> Poly<Self::Elt> {
        let mut acc = Poly::zero();
        for c in a.coeffs.iter().rev() {
            acc = self.poly_add(&self.poly_mul(&acc, b), &Poly::constant(self, c.clone()));
        }
        acc
    }

    /// `a^e mod m` for a big exponent given in binary.
    fn poly_powmod_big(
        &self,
        a: &Poly<Self::Elt>,
        e: &num_bigint::BigUint,
        m: &Poly<Self::Elt>,
    ) -> Poly<Self::Elt> {
        let mut acc = Poly::constant(self, self.one());
        let base = self.poly_rem(a, m);
        for i in (0..e.bits()).rev() {
            acc = self.poly_rem(&self.poly_mul(&acc, &acc), m);
            if e.bit(i) {
                acc = self.poly_rem(&self.poly_mul(&acc, &base), m);
            }
        }
        acc
    }

    /// Newton interpolation through `(xs[i], ys[i])`, `xs` distinct.
    fn poly_interpolate(&self, xs: &[Self::Elt], ys: &[Self::Elt]) -> Poly<Self::Elt> {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        let mut dd: Vec<Self::Elt> = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                let num = self.sub(&dd[i], &dd[i - 1]);
                let den = self.sub(&xs[i], &xs[i - j]);
                dd[i] = self.div(&num, &den);
            }
        }
        let mut acc = Poly::zero();
        for i in (0..n).rev() {
            let lin = Poly::from_coeffs(self, vec![self.neg(&xs[i]), self.one()]);
            acc = self.poly_add(&self.poly_mul(&acc, &lin), &Poly::constant(self, dd[i].clone()));
        }
        acc
    }
}

impl<F: Field> PolyOps for F {}

//! Binary and ternary homogeneous forms.

use std::collections::BTreeMap;

use super::factor::squarefree_decomposition;
use super::field::Field;
use super::poly::Poly;
use super::ExactError;

/// A binary form of fixed degree `d`; `coeffs[i]` multiplies `s^(d-i) t^i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinForm<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> BinForm<E> {
    pub fn new(coeffs: Vec<E>) -> Self {
        assert!(!coeffs.is_empty(), "binary form needs degree + 1 coefficients");
        BinForm { coeffs }
    }

    pub fn zero<F: Field<Elt = E>>(k: &F, degree: usize) -> Self {
        BinForm { coeffs: vec![k.zero(); degree + 1] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    /// Coefficient of `s^(d-i) t^i`.
    pub fn coeff(&self, i: usize) -> &E {
        &self.coeffs[i]
    }

    pub fn is_zero<F: Field<Elt = E>>(&self, k: &F) -> bool {
        self.coeffs.iter().all(|c| k.is_zero(c))
    }

    pub fn map<F2: Field>(&self, f: impl Fn(&E) -> F2::Elt) -> BinForm<F2::Elt> {
        BinForm { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn eval<F: Field<Elt = E>>(&self, k: &F, s: &E, t: &E) -> E {
        let d = self.degree();
        let mut acc = k.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let term = k.mul(c, &k.mul(&k.pow(s, (d - i) as u64), &k.pow(t, i as u64)));
            acc = k.add(&acc, &term);
        }
        acc
    }

    pub fn add<F: Field<Elt = E>>(&self, k: &F, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree());
        BinForm { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| k.add(a, b)).collect() }
    }

    pub fn scale<F: Field<Elt = E>>(&self, k: &F, c: &E) -> Self {
        BinForm { coeffs: self.coeffs.iter().map(|a| k.mul(a, c)).collect() }
    }

    pub fn mul<F: Field<Elt = E>>(&self, k: &F, other: &Self) -> Self {
        let mut v = vec![k.zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] = k.add(&v[i + j], &k.mul(a, b));
            }
        }
        BinForm { coeffs: v }
    }

    /// `q(s, 1)` as a polynomial in `s`.
    pub fn dehomogenize<F: Field<Elt = E>>(&self, k: &F) -> Poly<E> {
        let v: Vec<E> = self.coeffs.iter().rev().cloned().collect();
        Poly::from_coeffs(k, v)
    }

    /// Substitutes `(s, t) := (m00 s + m01 t, m10 s + m11 t)`.
    pub fn transform<F: Field<Elt = E>>(&self, k: &F, m: &[[E; 2]; 2]) -> Self {
        let d = self.degree();
        let ls = BinForm { coeffs: vec![m[0][0].clone(), m[0][1].clone()] };
        let lt = BinForm { coeffs: vec![m[1][0].clone(), m[1][1].clone()] };
        let mut acc = BinForm::zero(k, d);
        for (i, c) in self.coeffs.iter().enumerate() {
            if k.is_zero(c) {
                continue;
            }
            let mut term = BinForm { coeffs: vec![c.clone()] };
            for _ in 0..d - i {
                term = term.mul(k, &ls);
            }
            for _ in 0..i {
                term = term.mul(k, &lt);
            }
            acc = acc.add(k, &term);
        }
        acc
    }
}

/// Discriminant of a binary quartic, `(4 I^3 - J^2) / 27`; vanishes iff the
/// quartic has a repeated root over the algebraic closure. Needs char != 2, 3.
pub fn disc_binary_quartic<F: Field>(k: &F, q: &BinForm<F::Elt>) -> Result<F::Elt, ExactError> {
    if q.degree() != 4 {
        return Err(ExactError::WrongDegree { expected: 4, found: q.degree() });
    }
    let (i, j) = quartic_invariants(k, q.coeffs());
    let num = k.sub(&k.mul(&k.from_i64(4), &k.pow(&i, 3)), &k.square(&j));
    Ok(k.div(&num, &k.from_i64(27)))
}

/// The classical invariants `I`, `J` of `a s^4 + b s^3 t + c s^2 t^2 + d s t^3 + e t^4`.
pub fn quartic_invariants<F: Field>(k: &F, c: &[F::Elt]) -> (F::Elt, F::Elt) {
    let (a, b, cc, d, e) = (&c[0], &c[1], &c[2], &c[3], &c[4]);
    let n = |x: i64| k.from_i64(x);
    let m3 = |x: &F::Elt, y: &F::Elt, z: &F::Elt| k.mul(x, &k.mul(y, z));
    let i = k.add(
        &k.sub(&k.mul(&n(12), &k.mul(a, e)), &k.mul(&n(3), &k.mul(b, d))),
        &k.square(cc),
    );
    let mut j = k.mul(&n(72), &m3(a, cc, e));
    j = k.add(&j, &k.mul(&n(9), &m3(b, cc, d)));
    j = k.sub(&j, &k.mul(&n(27), &m3(a, d, d)));
    j = k.sub(&j, &k.mul(&n(27), &m3(e, b, b)));
    j = k.sub(&j, &k.mul(&n(2), &m3(cc, cc, cc)));
    (i, j)
}

/// Splits `q = c t^m u(s, t)` data: returns the `t`-multiplicity and `q(s,1)`.
fn t_split<F: Field>(k: &F, q: &BinForm<F::Elt>) -> Option<(usize, Poly<F::Elt>)> {
    let m = q.coeffs().iter().position(|c| !k.is_zero(c))?;
    Some((m, q.dehomogenize(k)))
}

fn even_multiplicities<F: Field>(k: &F, u: &Poly<F::Elt>) -> bool {
    if u.degree().unwrap_or(0) == 0 {
        return true;
    }
    squarefree_decomposition(k, u).iter().all(|(_, m)| m % 2 == 0)
}

/// `q = h^2` for a binary form `h` over the algebraic closure (i.e. up to a
/// scalar). The zero form counts as a square.
pub fn is_geometric_square<F: Field>(k: &F, q: &BinForm<F::Elt>) -> Result<bool, ExactError> {
    if q.degree() % 2 == 1 {
        return Err(ExactError::OddDegree(q.degree()));
    }
    let Some((m, u)) = t_split(k, q) else {
        return Ok(true);
    };
    Ok(m % 2 == 0 && even_multiplicities(k, &u))
}

/// `q = c h^2` with `c` a square of the coefficient field, i.e. `q` is the
/// square of a form defined over the field itself.
pub fn is_square_binform<F: Field>(k: &F, q: &BinForm<F::Elt>) -> Result<bool, ExactError> {
    if !is_geometric_square(k, q)? {
        return Ok(false);
    }
    match t_split(k, q) {
        None => Ok(true),
        Some((_, u)) => Ok(k.is_square(u.lc())),
    }
}

// ---------------------------------------------------------------------------

pub type Exps = [u32; 3];

/// All exponent triples of total degree `d`, in lexicographically
/// decreasing order (`x^d` first).
pub fn monomials(d: u32) -> Vec<Exps> {
    let mut out = Vec::new();
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push([i, j, d - i - j]);
        }
    }
    out
}

/// A ternary form stored sparsely by exponent triple.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TernForm<E> {
    degree: u32,
    terms: BTreeMap<Exps, E>,
}

impl<E: Clone> TernForm<E> {
    pub fn zero(degree: u32) -> Self {
        TernForm { degree, terms: BTreeMap::new() }
    }

    pub fn from_terms<F: Field<Elt = E>>(
        k: &F,
        degree: u32,
        terms: impl IntoIterator<Item = (Exps, E)>,
    ) -> Result<Self, ExactError> {
        let mut out = TernForm::zero(degree);
        for (e, c) in terms {
            if e.iter().sum::<u32>() != degree {
                return Err(ExactError::BadExponent { exps: e, degree });
            }
            out.add_term(k, e, c);
        }
        Ok(out)
    }

    pub fn from_i64_terms<F: Field<Elt = E>>(k: &F, degree: u32, terms: &[(Exps, i64)]) -> Self {
        Self::from_terms(k, degree, terms.iter().map(|(e, c)| (*e, k.from_i64(*c))))
            .expect("exponents match degree")
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Exps, E> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff<F: Field<Elt = E>>(&self, k: &F, e: &Exps) -> E {
        self.terms.get(e).cloned().unwrap_or_else(|| k.zero())
    }

    pub fn add_term<F: Field<Elt = E>>(&mut self, k: &F, e: Exps, c: E) {
        let v = match self.terms.remove(&e) {
            Some(old) => k.add(&old, &c),
            None => c,
        };
        if !k.is_zero(&v) {
            self.terms.insert(e, v);
        }
    }

    pub fn map<F2: Field>(&self, k2: &F2, f: impl Fn(&E) -> F2::Elt) -> TernForm<F2::Elt> {
        let mut out = TernForm::zero(self.degree);
        for (e, c) in &self.terms {
            out.add_term(k2, *e, f(c));
        }
        out
    }

    pub fn add<F: Field<Elt = E>>(&self, k: &F, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(k, *e, c.clone());
        }
        out
    }

    pub fn scale<F: Field<Elt = E>>(&self, k: &F, c: &E) -> Self {
        self.map(k, |x| k.mul(x, c))
    }

    pub fn mul<F: Field<Elt = E>>(&self, k: &F, other: &Self) -> Self {
        let mut out = TernForm::zero(self.degree + other.degree);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(k, [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], k.mul(c1, c2));
            }
        }
        out
    }

    pub fn eval<F: Field<Elt = E>>(&self, k: &F, p: &[E; 3]) -> E {
        let mut acc = k.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for v in 0..3 {
                if e[v] > 0 {
                    t = k.mul(&t, &k.pow(&p[v], e[v] as u64));
                }
            }
            acc = k.add(&acc, &t);
        }
        acc
    }

    /// Partial derivative with respect to variable `var` (0, 1, 2 = x, y, z).
    pub fn deriv<F: Field<Elt = E>>(&self, k: &F, var: usize) -> Self {
        let mut out = TernForm::zero(self.degree.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut ne = *e;
            ne[var] -= 1;
            out.add_term(k, ne, k.mul(c, &k.from_i64(e[var] as i64)));
        }
        out
    }

    /// Linear substitution `v_i := sum_j m[i][j] * v_j`.
    pub fn transform<F: Field<Elt = E>>(&self, k: &F, m: &[[E; 3]; 3]) -> Self {
        let lin: Vec<TernForm<E>> = (0..3)
            .map(|i| {
                TernForm::from_terms(
                    k,
                    1,
                    [([1, 0, 0], m[i][0].clone()), ([0, 1, 0], m[i][1].clone()), ([0, 0, 1], m[i][2].clone())],
                )
                .unwrap()
            })
            .collect();
        let mut powers: Vec<Vec<TernForm<E>>> = Vec::new();
        for l in &lin {
            let mut ps = vec![TernForm::from_terms(k, 0, [([0, 0, 0], k.one())]).unwrap()];
            for _ in 0..self.degree {
                let next = ps.last().unwrap().mul(k, l);
                ps.push(next);
            }
            powers.push(ps);
        }
        let mut out = TernForm::zero(self.degree);
        for (e, c) in &self.terms {
            let t = powers[0][e[0] as usize]
                .mul(k, &powers[1][e[1] as usize])
                .mul(k, &powers[2][e[2] as usize])
                .scale(k, c);
            out = out.add(k, &t);
        }
        out
    }

    /// Restriction along `(s, t) -> s p1 + t p2`.
    pub fn restrict_to_line<F: Field<Elt = E>>(&self, k: &F, p1: &[E; 3], p2: &[E; 3]) -> BinForm<E> {
        let lin: Vec<BinForm<E>> =
            (0..3).map(|i| BinForm::new(vec![p1[i].clone(), p2[i].clone()])).collect();
        let mut powers: Vec<Vec<BinForm<E>>> = Vec::new();
        for l in &lin {
            let mut ps = vec![BinForm::new(vec![k.one()])];
            for _ in 0..self.degree {
                let next = ps.last().unwrap().mul(k, l);
                ps.push(next);
            }
            powers.push(ps);
        }
        let mut acc = BinForm::zero(k, self.degree as usize);
        for (e, c) in &self.terms {
            let t = powers[0][e[0] as usize]
                .mul(k, &powers[1][e[1] as usize])
                .mul(k, &powers[2][e[2] as usize])
                .scale(k, c);
            acc = acc.add(k, &t);
        }
        acc
    }
}

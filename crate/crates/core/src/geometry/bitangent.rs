//! Bitangents of the branch quartic: through a given point, and in total.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Dp2Error, Result};
use crate::exactalg::resultant::{psc_in_y, resultant_in_y, BiPoly};
use crate::exactalg::{
    is_geometric_square, squarefree_decomposition, squarefree_part, BaseField, BinForm, ExtField, Field, Poly,
    PolyOps, TernForm,
};

/// Number of bitangents through a point, with the irreducible factors of
/// the pencil discriminant whose roots are bitangent directions.
#[derive(Clone, Debug)]
pub struct BitangentCount<E> {
    pub count: usize,
    pub factors: Vec<Poly<E>>,
    /// Whether the pencil member at parameter infinity is a bitangent.
    pub at_infinity: bool,
}

/// Ring operations on polynomials, enough for the invariants of a binary
/// quartic with polynomial coefficients.
fn quartic_invariants_poly<F: Field>(k: &F, c: &[Poly<F::Elt>]) -> (Poly<F::Elt>, Poly<F::Elt>) {
    let m = |a: &Poly<F::Elt>, b: &Poly<F::Elt>| k.poly_mul(a, b);
    let sc = |a: &Poly<F::Elt>, n: i64| k.poly_scale(a, &k.from_i64(n));
    let (a, b, cc, d, e) = (&c[0], &c[1], &c[2], &c[3], &c[4]);
    let i = k.poly_add(&k.poly_sub(&sc(&m(a, e), 12), &sc(&m(b, d), 3)), &m(cc, cc));
    let mut j = sc(&m(&m(a, cc), e), 72);
    j = k.poly_add(&j, &sc(&m(&m(b, cc), d), 9));
    j = k.poly_sub(&j, &sc(&m(&m(a, d), d), 27));
    j = k.poly_sub(&j, &sc(&m(&m(e, b), b), 27));
    j = k.poly_sub(&j, &sc(&m(&m(cc, cc), cc), 2));
    (i, j)
}

/// Bitangents of the quartic `b` through `p`: the lines spanned by `p` and
/// `e2 + u e1` for `u` a root of a repeated factor of the pencil
/// discriminant `D(u)` whose restricted quartic is a square, plus the line
/// spanned by `p` and `e1`.
pub fn bitangents_through_quartic<F: BaseField>(
    k: &F,
    b: &TernForm<F::Elt>,
    p: &[F::Elt; 3],
) -> Result<BitangentCount<F::Elt>> {
    let [e1, e2] = k.complete_basis(p);
    let m: [[F::Elt; 3]; 3] = std::array::from_fn(|i| [p[i].clone(), e2[i].clone(), e1[i].clone()]);
    let bt = b.transform(k, &m);
    // q_u = sum c_i(u) s^(4-i) t^i with r = u t
    let mut c: Vec<Vec<F::Elt>> = vec![vec![k.zero(); 5]; 5];
    let mut at_inf: Vec<F::Elt> = vec![k.zero(); 5];
    for (e, coef) in bt.terms() {
        let (j, r) = (e[1] as usize, e[2] as usize);
        c[j + r][r] = k.add(&c[j + r][r], coef);
        if j == 0 {
            at_inf[r] = coef.clone();
        }
    }
    let c: Vec<Poly<F::Elt>> = c.into_iter().map(|v| Poly::from_coeffs(k, v)).collect();
    let (i, j) = quartic_invariants_poly(k, &c);
    let d = k.poly_sub(&k.poly_scale(&k.poly_pow(&i, 3), &k.from_i64(4)), &k.poly_mul(&j, &j));
    if d.is_zero() {
        return Err(Dp2Error::EliminationDegenerate);
    }
    let mut count = 0;
    let mut factors = Vec::new();
    if d.degree() != Some(0) {
        for (sq, mult) in squarefree_decomposition(k, &d) {
            if mult < 2 {
                continue;
            }
            for fac in k.factor_squarefree(&sq) {
                let ext = ExtField::new(k.clone(), fac.clone());
                let q = BinForm::new(c.iter().map(|ci| ext.embed_poly(ci)).collect());
                if is_geometric_square(&ext, &q)? {
                    count += fac.degree().unwrap();
                    factors.push(fac);
                }
            }
        }
    }
    let at_infinity = is_geometric_square(k, &BinForm::new(at_inf))?;
    if at_infinity {
        count += 1;
    }
    Ok(BitangentCount { count, factors, at_infinity })
}

// ---------------------------------------------------------------------------
// Bivariate helpers: polynomials in `b` with coefficients in `F[a]`.

fn bi_trim<E: Clone>(mut v: BiPoly<E>) -> BiPoly<E> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn bi_add<F: Field>(k: &F, x: &BiPoly<F::Elt>, y: &BiPoly<F::Elt>) -> BiPoly<F::Elt> {
    let n = x.len().max(y.len());
    let z = Poly::zero();
    bi_trim((0..n).map(|i| k.poly_add(x.get(i).unwrap_or(&z), y.get(i).unwrap_or(&z))).collect())
}

fn bi_scale<F: Field>(k: &F, x: &BiPoly<F::Elt>, c: i64) -> BiPoly<F::Elt> {
    bi_trim(x.iter().map(|p| k.poly_scale(p, &k.from_i64(c))).collect())
}

fn bi_mul<F: Field>(k: &F, x: &BiPoly<F::Elt>, y: &BiPoly<F::Elt>) -> BiPoly<F::Elt> {
    if x.is_empty() || y.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Poly::zero(); x.len() + y.len() - 1];
    for (i, a) in x.iter().enumerate() {
        for (j, b) in y.iter().enumerate() {
            out[i + j] = k.poly_add(&out[i + j], &k.poly_mul(a, b));
        }
    }
    bi_trim(out)
}

fn bi_coeff<E: Clone>(x: &BiPoly<E>, i: usize) -> Poly<E> {
    x.get(i).cloned().unwrap_or_else(Poly::zero)
}

fn specialize<F: BaseField>(ext: &ExtField<F>, x: &BiPoly<F::Elt>) -> Poly<Poly<F::Elt>> {
    Poly::from_coeffs(ext, x.iter().map(|c| ext.embed_poly(c)).collect())
}

fn distinct_roots<F: Field>(k: &F, p: &Poly<F::Elt>) -> usize {
    match p.degree() {
        None | Some(0) => 0,
        Some(_) => squarefree_part(k, p).degree().unwrap(),
    }
}

const ATTEMPTS: usize = 8;

/// Total number of bitangent lines of a smooth plane quartic over the
/// algebraic closure.
pub fn count_all_bitangents_quartic<F: BaseField>(k: &F, b: &TernForm<F::Elt>) -> Result<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xb17a);
    for attempt in 0..ATTEMPTS {
        let bt = if attempt == 0 {
            b.clone()
        } else {
            let m: [[F::Elt; 3]; 3] = loop {
                let m: [[F::Elt; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| k.sample(&mut rng, 2)));
                let rows: Vec<Vec<F::Elt>> = m.iter().map(|r| r.to_vec()).collect();
                if !k.is_zero(&crate::exactalg::linalg::det(k, &rows)) {
                    break m;
                }
            };
            b.transform(k, &m)
        };
        if let Some(n) = count_in_chart(k, &bt)? {
            let through = bitangents_through_quartic(k, &bt, &[k.zero(), k.zero(), k.one()])?;
            return Ok(n + through.count);
        }
    }
    Err(Dp2Error::EliminationDegenerate)
}

/// Bitangents of the form `z = a x + b y`; `None` when the elimination degenerates.
fn count_in_chart<F: BaseField>(k: &F, b: &TernForm<F::Elt>) -> Result<Option<usize>> {
    // c_i(a, b): coefficient of s^(4-i) t^i in b(s, t, a s + b t)
    let mut c: Vec<BiPoly<F::Elt>> = vec![Vec::new(); 5];
    for (e, coef) in b.terms() {
        let (j, kk) = (e[1] as usize, e[2] as usize);
        for l in 0..=kk {
            let binom = binomial(kk, l);
            let idx = j + l;
            let mut term: BiPoly<F::Elt> = vec![Poly::zero(); l + 1];
            term[l] = Poly::monomial(k, k.mul(coef, &k.from_i64(binom)), kk - l);
            c[idx] = bi_add(k, &c[idx], &term);
        }
    }
    let t = bi_add(k, &bi_scale(k, &bi_mul(k, &c[0], &c[2]), 4), &bi_scale(k, &bi_mul(k, &c[1], &c[1]), -1));
    let c00 = bi_mul(k, &c[0], &c[0]);
    let g1 = bi_add(k, &bi_mul(k, &c[1], &t), &bi_scale(k, &bi_mul(k, &c00, &c[3]), -8));
    let g2 = bi_add(k, &bi_mul(k, &t, &t), &bi_scale(k, &bi_mul(k, &bi_mul(k, &c00, &c[0]), &c[4]), -64));
    let res = resultant_in_y(k, &g1, &g2, 3, 4);
    if res.is_zero() {
        return Ok(None);
    }
    if res.degree() == Some(0) {
        return Ok(Some(0));
    }
    let psc1 = psc_in_y(k, &g1, &g2, 3, 4, 1);
    let (l1, l2) = (bi_coeff(&g1, 3), bi_coeff(&g2, 4));
    let c0 = bi_coeff(&c[0], 0);
    let h = bi_add(k, &bi_mul(k, &c[3], &c[3]), &bi_scale(k, &bi_mul(k, &c[2], &c[4]), -4));
    let mut total = 0;
    for d in k.factor_squarefree(&squarefree_part(k, &res)) {
        let deg = d.degree().unwrap();
        let ext = ExtField::new(k.clone(), d.clone());
        let count = if k.poly_divides(&d, &c0) {
            let g = ext.poly_gcd(&specialize(&ext, &c[1]), &specialize(&ext, &h));
            if g.is_zero() {
                return Ok(None);
            }
            distinct_roots(&ext, &g)
        } else if !k.poly_divides(&d, &psc1) && !(k.poly_divides(&d, &l1) && k.poly_divides(&d, &l2)) {
            1
        } else {
            let g = ext.poly_gcd(&specialize(&ext, &g1), &specialize(&ext, &g2));
            if g.is_zero() {
                return Ok(None);
            }
            distinct_roots(&ext, &g)
        };
        total += deg * count;
    }
    Ok(Some(total))
}

fn binomial(n: usize, r: usize) -> i64 {
    (0..r).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

//! Smoothness of a plane quartic by elimination.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactalg::linalg::det;
use crate::exactalg::resultant::{resultant_in_y, BiPoly};
use crate::exactalg::{factor_over, BaseField, ExtField, Field, Poly, PolyOps, TernForm};

const ATTEMPTS: usize = 40;

/// True iff the partial derivatives of `b` have no common zero over the
/// algebraic closure. Needs characteristic 0 or at least 5.
pub fn is_smooth_quartic<F: BaseField>(k: &F, b: &TernForm<F::Elt>) -> bool {
    if b.is_zero() {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for attempt in 0..ATTEMPTS {
        let m = if attempt == 0 { identity(k) } else { random_invertible(k, &mut rng) };
        if let Some(verdict) = check_in_coordinates(k, &b.transform(k, &m)) {
            return verdict;
        }
    }
    false
}

fn identity<F: Field>(k: &F) -> [[F::Elt; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { k.one() } else { k.zero() }))
}

fn random_invertible<F: BaseField>(k: &F, rng: &mut ChaCha8Rng) -> [[F::Elt; 3]; 3] {
    loop {
        let m: [[F::Elt; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| k.sample(rng, 3)));
        let rows: Vec<Vec<F::Elt>> = m.iter().map(|r| r.to_vec()).collect();
        if !k.is_zero(&det(k, &rows)) {
            return m;
        }
    }
}

/// `Some(verdict)` when the chart `z = 1` is in good position for `b`.
fn check_in_coordinates<F: BaseField>(k: &F, b: &TernForm<F::Elt>) -> Option<bool> {
    let parts: Vec<TernForm<F::Elt>> = (0..3).map(|v| b.deriv(k, v)).collect();
    // the line z = 0
    let one_zero = [k.one(), k.zero(), k.zero()];
    if parts.iter().all(|p| k.is_zero(&p.eval(k, &one_zero))) {
        return Some(false);
    }
    let mut g = Poly::zero();
    for p in &parts {
        // dehomogenize y = 1 on z = 0
        let coeffs: Vec<F::Elt> = (0..=3).map(|i| p.coeff(k, &[i, 3 - i, 0])).collect();
        g = k.poly_gcd(&g, &Poly::from_coeffs(k, coeffs));
    }
    if g.degree() != Some(0) {
        return Some(false);
    }
    // the chart z = 1, eliminating y
    let y3 = parts[0].coeff(k, &[0, 3, 0]);
    if k.is_zero(&y3) {
        return None;
    }
    let bi: Vec<BiPoly<F::Elt>> = parts.iter().map(|p| to_bipoly(k, p)).collect();
    let r12 = resultant_in_y(k, &bi[0], &bi[1], 3, 3);
    let r13 = resultant_in_y(k, &bi[0], &bi[2], 3, 3);
    if r12.is_zero() && r13.is_zero() {
        return None;
    }
    let g = k.poly_gcd(&r12, &r13);
    if g.degree() == Some(0) {
        return Some(true);
    }
    for (d, _) in factor_over(k, &g) {
        let ext = ExtField::new(k.clone(), d);
        let mut h: Poly<Poly<F::Elt>> = Poly::zero();
        for p in &bi {
            let spec = Poly::from_coeffs(&ext, p.iter().map(|c| ext.embed_poly(c)).collect());
            h = ext.poly_gcd(&h, &spec);
        }
        if h.degree() != Some(0) {
            return Some(false);
        }
    }
    Some(true)
}

/// `p(x, y, 1)` as a polynomial in `y` over `F[x]`.
pub(crate) fn to_bipoly<F: Field>(k: &F, p: &TernForm<F::Elt>) -> BiPoly<F::Elt> {
    let d = p.degree() as usize;
    let mut coeffs: Vec<Vec<F::Elt>> = vec![vec![k.zero(); d + 1]; d + 1];
    for (e, c) in p.terms() {
        coeffs[e[1] as usize][e[0] as usize] = c.clone();
    }
    coeffs.into_iter().map(|v| Poly::from_coeffs(k, v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{PrimeField, Rationals};

    #[test]
    fn classical_quartics() {
        let k = Rationals;
        let fermat = TernForm::from_i64_terms(&k, 4, &[([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)]);
        assert!(is_smooth_quartic(&k, &fermat));
        let klein = TernForm::from_i64_terms(&k, 4, &[([3, 1, 0], 1), ([0, 3, 1], 1), ([1, 0, 3], 1)]);
        assert!(is_smooth_quartic(&k, &klein));
        let lines = TernForm::from_i64_terms(&k, 4, &[([4, 0, 0], 1), ([0, 4, 0], -1)]);
        assert!(!is_smooth_quartic(&k, &lines));
        let conic = TernForm::from_i64_terms(&k, 2, &[([2, 0, 0], 1), ([0, 2, 0], 1), ([0, 0, 2], -2)]);
        assert!(!is_smooth_quartic(&k, &conic.mul(&k, &conic)));
        let tricuspidal = TernForm::from_i64_terms(
            &k,
            4,
            &[([2, 2, 0], 1), ([0, 2, 2], 1), ([2, 0, 2], 1), ([2, 1, 1], -2), ([1, 2, 1], -2), ([1, 1, 2], -2)],
        );
        assert!(!is_smooth_quartic(&k, &tricuspidal));
        // node at (0:0:1), moved to (1:1:1)
        let nodal = TernForm::from_i64_terms(&k, 4, &[([2, 0, 2], 1), ([0, 2, 2], -1), ([4, 0, 0], 1), ([0, 4, 0], 1)]);
        let n = |a: i64| k.from_i64(a);
        let m = [[n(1), n(0), n(-1)], [n(0), n(1), n(-1)], [n(0), n(0), n(1)]];
        let moved = nodal.transform(&k, &m);
        assert_eq!(moved.eval(&k, &[n(1), n(1), n(1)]), k.zero());
        assert!(!is_smooth_quartic(&k, &moved));
    }

    #[test]
    fn fermat_mod_p() {
        for p in [5u64, 7, 11, 13] {
            let k = PrimeField::new(p);
            let fermat = TernForm::from_i64_terms(&k, 4, &[([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)]);
            assert!(is_smooth_quartic(&k, &fermat), "p = {p}");
        }
    }
}

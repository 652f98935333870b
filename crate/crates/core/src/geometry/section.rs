//! Sections `lambda w + q2(x, y, z)` of the bi-anticanonical system, the
//! osculating section at a point, and the curve it cuts out.

use crate::error::{Dp2Error, Result};
use crate::exactalg::forms::monomials;
use crate::exactalg::linalg::{nullspace, Matrix};
use crate::exactalg::{BaseField, Field, TernForm};
use crate::genus1::{neg_wrt, pullback_line, LineParam, ModelClass};
use crate::surface::{Dp2, WPoint};

/// The section `lambda w + q2` of `|-2K|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionMinus2K<E> {
    pub lambda: E,
    pub q2: TernForm<E>,
}

impl<E: Clone + PartialEq> SectionMinus2K<E> {
    pub fn eval<F: Field<Elt = E>>(&self, k: &F, p: &WPoint<E>) -> E {
        k.add(&k.mul(&self.lambda, &p.w), &self.q2.eval(k, &p.x))
    }

    /// Coordinates in the basis `w, x^2, xy, xz, y^2, yz, z^2`.
    pub fn to_vector<F: Field<Elt = E>>(&self, k: &F) -> Vec<E> {
        let mut v = vec![self.lambda.clone()];
        v.extend(monomials(2).iter().map(|e| self.q2.coeff(k, e)));
        v
    }

    pub fn from_vector<F: Field<Elt = E>>(k: &F, v: &[E]) -> Self {
        let q2 = TernForm::from_terms(k, 2, monomials(2).into_iter().zip(v[1..].iter().cloned()))
            .expect("degree-2 monomials");
        SectionMinus2K { lambda: v[0].clone(), q2 }
    }
}

/// Values of a form and its first and second partials along the two chart
/// variables `u`, `v` at `x`: `[F, F_u, F_v, F_uu, F_uv, F_vv]`.
pub(crate) fn jet<F: Field>(k: &F, form: &TernForm<F::Elt>, x: &[F::Elt; 3], u: usize, v: usize) -> [F::Elt; 6] {
    let fu = form.deriv(k, u);
    let fv = form.deriv(k, v);
    [
        form.eval(k, x),
        fu.eval(k, x),
        fv.eval(k, x),
        fu.deriv(k, u).eval(k, x),
        fu.deriv(k, v).eval(k, x),
        fv.deriv(k, v).eval(k, x),
    ]
}

/// First and second derivatives of `w` along the surface in the affine
/// chart where coordinate `j` is 1: `[w, w_u, w_v, w_uu, w_uv, w_vv]`.
/// `None` on the ramification curve.
pub(crate) fn w_jet<F: BaseField>(x: &Dp2<F>, p: &WPoint<F::Elt>, chart: usize) -> Option<([F::Elt; 3], [F::Elt; 6])> {
    let k = x.field();
    let c = k.inv(&p.x[chart])?;
    let pt: [F::Elt; 3] = p.x.clone().map(|v| k.mul(&v, &c));
    let w = k.mul(&p.w, &k.square(&c));
    let (u, v) = chart_vars(chart);
    let f = jet(k, x.f(), &pt, u, v);
    let g = jet(k, x.g(), &pt, u, v);
    let fw = k.add(&k.add(&w, &w), &f[0]);
    if k.is_zero(&fw) {
        return None;
    }
    // F = w^2 + f w - g; w_a = -(f_a w - g_a) / F_w
    let first = |i: usize| k.neg(&k.div(&k.sub(&k.mul(&f[i], &w), &g[i]), &fw));
    let (wu, wv) = (first(1), first(2));
    let d = [&wu, &wv];
    let second = |idx: usize, a: usize, b: usize| {
        let fab = k.sub(&k.mul(&f[idx], &w), &g[idx]);
        let t = k.add(
            &k.add(&fab, &k.mul(&f[1 + a], d[b])),
            &k.add(&k.mul(&f[1 + b], d[a]), &k.mul(&k.from_i64(2), &k.mul(d[a], d[b]))),
        );
        k.neg(&k.div(&t, &fw))
    };
    let (wuu, wuv, wvv) = (second(3, 0, 0), second(4, 0, 1), second(5, 1, 1));
    Some((pt, [w, wu, wv, wuu, wuv, wvv]))
}

pub(crate) fn chart_vars(chart: usize) -> (usize, usize) {
    match chart {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// The chart used for osculation: the coordinate of largest size.
pub fn default_chart<F: BaseField>(k: &F, x: &[F::Elt; 3]) -> usize {
    let mut best = 0;
    for i in 1..3 {
        if k.magnitude(&x[i]) > k.magnitude(&x[best]) {
            best = i;
        }
    }
    best
}

/// Conditions for `lambda w + q2` to vanish to order `order` (1, 2 or 3)
/// at `p`, one row per condition, columns in the order of [`SectionMinus2K::to_vector`].
pub(crate) fn vanishing_rows<F: BaseField>(
    x: &Dp2<F>,
    p: &WPoint<F::Elt>,
    order: usize,
    chart: usize,
) -> Option<Matrix<F::Elt>> {
    let k = x.field();
    let (pt, wj) = w_jet(x, p, chart)?;
    let (u, v) = chart_vars(chart);
    let mons: Vec<[F::Elt; 6]> = monomials(2)
        .into_iter()
        .map(|e| jet(k, &TernForm::from_terms(k, 2, [(e, k.one())]).unwrap(), &pt, u, v))
        .collect();
    let count = [0, 1, 3, 6][order];
    Some(
        (0..count)
            .map(|i| {
                let mut row = vec![wj[i].clone()];
                row.extend(mons.iter().map(|m| m[i].clone()));
                row
            })
            .collect(),
    )
}

/// The section vanishing to order 3 at `p`, normalized; its zero locus on
/// the surface is the curve `C_P`.
pub fn osculating_section<F: BaseField>(x: &Dp2<F>, p: &WPoint<F::Elt>) -> Result<SectionMinus2K<F::Elt>> {
    osculating_section_in_chart(x, p, default_chart(x.field(), &p.x))
}

pub fn osculating_section_in_chart<F: BaseField>(
    x: &Dp2<F>,
    p: &WPoint<F::Elt>,
    chart: usize,
) -> Result<SectionMinus2K<F::Elt>> {
    let k = x.field();
    let rows = vanishing_rows(x, p, 3, chart).ok_or(Dp2Error::NotVeryGeneral)?;
    let ns = nullspace(k, &rows, 7);
    if ns.len() != 1 || k.is_zero(&ns[0][0]) {
        return Err(Dp2Error::NotVeryGeneral);
    }
    let c = k.normalizing_scale(&ns[0]);
    let v: Vec<F::Elt> = ns[0].iter().map(|a| k.mul(a, &c)).collect();
    Ok(SectionMinus2K::from_vector(k, &v))
}

/// Dimension of the space of sections vanishing to order 3 at `p`.
pub fn osculation_dimension<F: BaseField>(x: &Dp2<F>, p: &WPoint<F::Elt>) -> Option<usize> {
    let rows = vanishing_rows(x, p, 3, default_chart(x.field(), &p.x))?;
    Some(nullspace(x.field(), &rows, 7).len())
}

/// The pencil of lines through `kappa(p)` with a fixed basis.
#[derive(Clone, Debug)]
pub struct Pencil<E> {
    pub base: [E; 3],
    pub basis: [[E; 3]; 2],
}

impl<E: Clone + PartialEq> Pencil<E> {
    pub fn at<F: BaseField<Elt = E>>(k: &F, p: &[E; 3]) -> Self {
        Pencil { base: p.clone(), basis: k.complete_basis(p) }
    }

    pub fn line<F: Field<Elt = E>>(&self, k: &F, u: &E, v: &E) -> LineParam<E> {
        LineParam::pencil(k, &self.base, &self.basis, u, v)
    }
}

/// The point `R` of `kappa^{-1}(L_(u:v))` with `(R) ~ 2(iota P) - (P)`; it
/// lies on `C_P`.
pub fn c_p_point<F: BaseField>(x: &Dp2<F>, p: &WPoint<F::Elt>, u: &F::Elt, v: &F::Elt) -> Result<WPoint<F::Elt>> {
    c_p_point_in(x, p, &Pencil::at(x.field(), &p.x), u, v)
}

pub fn c_p_point_in<F: BaseField>(
    x: &Dp2<F>,
    p: &WPoint<F::Elt>,
    pencil: &Pencil<F::Elt>,
    u: &F::Elt,
    v: &F::Elt,
) -> Result<WPoint<F::Elt>> {
    let k = x.field();
    if k.is_zero(u) && k.is_zero(v) {
        return Err(Dp2Error::BadParameter("(0:0)".into()));
    }
    let model = pullback_line(x, pencil.line(k, u, v));
    if model.classify(k) == ModelClass::Reducible {
        return Err(Dp2Error::BitangentLine);
    }
    let pp = model.from_surface(k, p).ok_or(Dp2Error::NotOnSurface)?;
    let ip = model.involution(k, &pp);
    let r = neg_wrt(k, &model, &ip, &pp)?;
    Ok(model.to_surface(x, &r))
}

//! The genus-1 curves `kappa^{-1}(L)` over lines `L` of the plane, and
//! their group law through a Weierstrass model.

use serde::Serialize;

use crate::error::{Dp2Error, Result};
use crate::exactalg::{disc_binary_quartic, is_geometric_square, BaseField, BinForm, Field};
use crate::surface::{Dp2, WPoint};

/// The line `(s:t) -> s p1 + t p2` of the plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineParam<E> {
    pub p1: [E; 3],
    pub p2: [E; 3],
}

impl<E: Clone + PartialEq> LineParam<E> {
    pub fn through(p1: [E; 3], p2: [E; 3]) -> Self {
        LineParam { p1, p2 }
    }

    /// The member `(u:v)` of the pencil through `p`, spanned by `p` and
    /// `u e1 + v e2`.
    pub fn pencil<F: Field<Elt = E>>(k: &F, p: &[E; 3], basis: &[[E; 3]; 2], u: &E, v: &E) -> Self {
        let dir = std::array::from_fn(|i| k.add(&k.mul(u, &basis[0][i]), &k.mul(v, &basis[1][i])));
        LineParam { p1: p.clone(), p2: dir }
    }

    pub fn at<F: Field<Elt = E>>(&self, k: &F, s: &E, t: &E) -> [E; 3] {
        std::array::from_fn(|i| k.add(&k.mul(s, &self.p1[i]), &k.mul(t, &self.p2[i])))
    }

    /// `(s, t)` with `s p1 + t p2 = x` exactly, if `x` is on the line.
    pub fn coords_of<F: Field<Elt = E>>(&self, k: &F, x: &[E; 3]) -> Option<(E, E)> {
        let (a, b) = (&self.p1, &self.p2);
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let det = k.sub(&k.mul(&a[i], &b[j]), &k.mul(&a[j], &b[i]));
            if k.is_zero(&det) {
                continue;
            }
            let s = k.div(&k.sub(&k.mul(&x[i], &b[j]), &k.mul(&x[j], &b[i])), &det);
            let t = k.div(&k.sub(&k.mul(&a[i], &x[j]), &k.mul(&a[j], &x[i])), &det);
            return (self.at(k, &s, &t) == *x).then_some((s, t));
        }
        None
    }
}

/// A point `(s:t:w)` of `P(1,1,2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvePoint<E> {
    pub s: E,
    pub t: E,
    pub w: E,
}

impl<E: Clone + PartialEq> CurvePoint<E> {
    /// Equality in weighted projective space.
    pub fn same<F: Field<Elt = E>>(&self, k: &F, o: &Self) -> bool {
        if k.mul(&self.s, &o.t) != k.mul(&o.s, &self.t) {
            return false;
        }
        let lam = if !k.is_zero(&self.s) { k.div(&o.s, &self.s) } else { k.div(&o.t, &self.t) };
        k.mul(&k.square(&lam), &self.w) == o.w
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ModelClass {
    Smooth,
    IrreducibleSingular,
    Reducible,
}

/// The curve `w^2 + a(s,t) w = b(s,t)` over a line.
#[derive(Clone, Debug)]
pub struct QuarticModel<E> {
    pub a: BinForm<E>,
    pub b: BinForm<E>,
    pub line: LineParam<E>,
}

pub fn pullback_line<F: BaseField>(x: &Dp2<F>, line: LineParam<F::Elt>) -> QuarticModel<F::Elt> {
    let k = x.field();
    QuarticModel {
        a: x.f().restrict_to_line(k, &line.p1, &line.p2),
        b: x.g().restrict_to_line(k, &line.p1, &line.p2),
        line,
    }
}

impl<E: Clone + PartialEq> QuarticModel<E> {
    /// `a^2 + 4b`, the square of `V = 2w + a`.
    pub fn q<F: Field<Elt = E>>(&self, k: &F) -> BinForm<E> {
        self.a.mul(k, &self.a).add(k, &self.b.scale(k, &k.from_i64(4)))
    }

    pub fn classify<F: Field<Elt = E>>(&self, k: &F) -> ModelClass {
        let q = self.q(k);
        if is_geometric_square(k, &q).expect("even degree") {
            ModelClass::Reducible
        } else if k.is_zero(&disc_binary_quartic(k, &q).expect("degree 4")) {
            ModelClass::IrreducibleSingular
        } else {
            ModelClass::Smooth
        }
    }

    pub fn contains<F: Field<Elt = E>>(&self, k: &F, p: &CurvePoint<E>) -> bool {
        let av = self.a.eval(k, &p.s, &p.t);
        let bv = self.b.eval(k, &p.s, &p.t);
        k.is_zero(&k.sub(&k.mul(&p.w, &k.add(&p.w, &av)), &bv))
    }

    pub fn vertical<F: Field<Elt = E>>(&self, k: &F, p: &CurvePoint<E>) -> E {
        k.add(&k.add(&p.w, &p.w), &self.a.eval(k, &p.s, &p.t))
    }

    pub fn is_smooth_point<F: Field<Elt = E>>(&self, k: &F, p: &CurvePoint<E>) -> bool {
        if !k.is_zero(&self.vertical(k, p)) {
            return true;
        }
        let q = self.q(k);
        let (qs, qt) = binform_partials(k, &q);
        !(k.is_zero(&qs.eval(k, &p.s, &p.t)) && k.is_zero(&qt.eval(k, &p.s, &p.t)))
    }

    /// The other sheet: `w -> -a - w`.
    pub fn involution<F: Field<Elt = E>>(&self, k: &F, p: &CurvePoint<E>) -> CurvePoint<E> {
        let w = k.sub(&k.neg(&self.a.eval(k, &p.s, &p.t)), &p.w);
        CurvePoint { s: p.s.clone(), t: p.t.clone(), w }
    }

    pub fn from_surface<F: Field<Elt = E>>(&self, k: &F, p: &WPoint<E>) -> Option<CurvePoint<E>> {
        let (s, t) = self.line.coords_of(k, &p.x)?;
        Some(CurvePoint { s, t, w: p.w.clone() })
    }

    pub fn to_surface<F: BaseField<Elt = E>>(&self, x: &Dp2<F>, p: &CurvePoint<E>) -> WPoint<E> {
        x.normalize(&WPoint { x: self.line.at(x.field(), &p.s, &p.t), w: p.w.clone() })
    }
}

fn binform_partials<F: Field>(k: &F, q: &BinForm<F::Elt>) -> (BinForm<F::Elt>, BinForm<F::Elt>) {
    let d = q.degree();
    if d == 0 {
        return (BinForm::zero(k, 0), BinForm::zero(k, 0));
    }
    let qs = (0..d).map(|i| k.mul(q.coeff(i), &k.from_i64((d - i) as i64))).collect();
    let qt = (1..=d).map(|i| k.mul(q.coeff(i), &k.from_i64(i as i64))).collect();
    (BinForm::new(qs), BinForm::new(qt))
}

// ---------------------------------------------------------------------------

/// A point of a Weierstrass cubic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WPt<E> {
    Infinity,
    Affine(E, E),
}

/// `Y^2 + a1 XY + a3 Y = X^3 + a2 X^2 + a4 X + a6`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cubic<E> {
    pub a1: E,
    pub a2: E,
    pub a3: E,
    pub a4: E,
    pub a6: E,
}

impl<E: Clone + PartialEq> Cubic<E> {
    pub fn contains<F: Field<Elt = E>>(&self, k: &F, p: &WPt<E>) -> bool {
        match p {
            WPt::Infinity => true,
            WPt::Affine(x, y) => {
                let lhs = k.mul(y, &k.add(y, &k.add(&k.mul(&self.a1, x), &self.a3)));
                let rhs = k.add(
                    &k.mul(&k.square(x), &k.add(x, &self.a2)),
                    &k.add(&k.mul(&self.a4, x), &self.a6),
                );
                lhs == rhs
            }
        }
    }

    fn dy<F: Field<Elt = E>>(&self, k: &F, x: &E, y: &E) -> E {
        k.add(&k.add(&k.add(y, y), &k.mul(&self.a1, x)), &self.a3)
    }

    fn dx<F: Field<Elt = E>>(&self, k: &F, x: &E, y: &E) -> E {
        let t = k.add(&k.mul(&k.from_i64(3), &k.square(x)), &k.mul(&k.from_i64(2), &k.mul(&self.a2, x)));
        k.sub(&k.add(&t, &self.a4), &k.mul(&self.a1, y))
    }

    pub fn is_singular_point<F: Field<Elt = E>>(&self, k: &F, p: &WPt<E>) -> bool {
        match p {
            WPt::Infinity => false,
            WPt::Affine(x, y) => k.is_zero(&self.dy(k, x, y)) && k.is_zero(&self.dx(k, x, y)),
        }
    }

    /// The discriminant; zero iff the cubic is singular.
    pub fn discriminant<F: Field<Elt = E>>(&self, k: &F) -> E {
        let n = |v: i64| k.from_i64(v);
        let b2 = k.add(&k.square(&self.a1), &k.mul(&n(4), &self.a2));
        let b4 = k.add(&k.mul(&self.a1, &self.a3), &k.mul(&n(2), &self.a4));
        let b6 = k.add(&k.square(&self.a3), &k.mul(&n(4), &self.a6));
        let b8 = {
            let t1 = k.mul(&k.square(&self.a1), &self.a6);
            let t2 = k.mul(&n(4), &k.mul(&self.a2, &self.a6));
            let t3 = k.mul(&self.a1, &k.mul(&self.a3, &self.a4));
            let t4 = k.mul(&self.a2, &k.square(&self.a3));
            let t5 = k.square(&self.a4);
            k.sub(&k.add(&k.sub(&k.add(&t1, &t2), &t3), &t4), &t5)
        };
        let d1 = k.mul(&k.square(&b2), &b8);
        let d2 = k.mul(&n(8), &k.pow(&b4, 3));
        let d3 = k.mul(&n(27), &k.square(&b6));
        let d4 = k.mul(&n(9), &k.mul(&b2, &k.mul(&b4, &b6)));
        k.add(&k.neg(&k.add(&k.add(&d1, &d2), &d3)), &d4)
    }

    pub fn neg<F: Field<Elt = E>>(&self, k: &F, p: &WPt<E>) -> WPt<E> {
        match p {
            WPt::Infinity => WPt::Infinity,
            WPt::Affine(x, y) => {
                WPt::Affine(x.clone(), k.neg(&k.add(&k.add(y, &k.mul(&self.a1, x)), &self.a3)))
            }
        }
    }

    /// Chord-tangent addition on the smooth locus.
    pub fn add<F: Field<Elt = E>>(&self, k: &F, p: &WPt<E>, q: &WPt<E>) -> Result<WPt<E>> {
        if self.is_singular_point(k, p) || self.is_singular_point(k, q) {
            return Err(Dp2Error::SingularHit);
        }
        let (x1, y1, x2, y2) = match (p, q) {
            (WPt::Infinity, _) => return Ok(q.clone()),
            (_, WPt::Infinity) => return Ok(p.clone()),
            (WPt::Affine(x1, y1), WPt::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let (lam, nu) = if x1 == x2 {
            let s = k.add(&k.add(&k.add(y1, y2), &k.mul(&self.a1, x2)), &self.a3);
            if k.is_zero(&s) {
                return Ok(WPt::Infinity);
            }
            let den = self.dy(k, x1, y1);
            let lam = k.div(&self.dx(k, x1, y1), &den);
            let nu_num = k.sub(
                &k.add(&k.neg(&k.pow(x1, 3)), &k.add(&k.mul(&self.a4, x1), &k.mul(&k.from_i64(2), &self.a6))),
                &k.mul(&self.a3, y1),
            );
            (lam, k.div(&nu_num, &den))
        } else {
            let den = k.sub(x2, x1);
            let lam = k.div(&k.sub(y2, y1), &den);
            let nu = k.div(&k.sub(&k.mul(y1, x2), &k.mul(y2, x1)), &den);
            (lam, nu)
        };
        let x3 = k.sub(&k.sub(&k.sub(&k.add(&k.square(&lam), &k.mul(&self.a1, &lam)), &self.a2), x1), x2);
        let y3 = k.sub(&k.sub(&k.neg(&k.mul(&k.add(&lam, &self.a1), &x3)), &nu), &self.a3);
        let r = WPt::Affine(x3, y3);
        if self.is_singular_point(k, &r) {
            return Err(Dp2Error::SingularHit);
        }
        Ok(r)
    }

    pub fn mul<F: Field<Elt = E>>(&self, k: &F, n: i64, p: &WPt<E>) -> Result<WPt<E>> {
        let mut base = if n < 0 { self.neg(k, p) } else { p.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = WPt::Infinity;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(k, &acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.add(k, &base, &base)?;
            }
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug)]
enum Chart<E> {
    /// `V` at the origin is `r != 0`.
    General { r: E, c: E, d: E, special: (E, E), neg_special: [E; 3] },
    /// The origin is a ramification point; `e1` is the `s t^3` coefficient.
    Ramified { e1: E },
}

/// A birational map from a quartic model to a Weierstrass cubic sending the
/// chosen origin to infinity.
#[derive(Clone, Debug)]
pub struct WeierstrassData<E> {
    pub cubic: Cubic<E>,
    pub origin: CurvePoint<E>,
    model_a: BinForm<E>,
    // columns: (s, t) = m (s', t'), the origin at (s', t') = (0, 1)
    m: [[E; 2]; 2],
    m_inv: [[E; 2]; 2],
    chart: Chart<E>,
}

pub fn to_weierstrass<F: Field>(
    k: &F,
    model: &QuarticModel<F::Elt>,
    o: &CurvePoint<F::Elt>,
) -> Result<WeierstrassData<F::Elt>> {
    if !model.is_smooth_point(k, o) {
        return Err(Dp2Error::SingularOrigin);
    }
    let first = if !k.is_zero(&o.t) { [k.one(), k.zero()] } else { [k.zero(), k.one()] };
    let m = [[first[0].clone(), o.s.clone()], [first[1].clone(), o.t.clone()]];
    let det = k.sub(&k.mul(&m[0][0], &m[1][1]), &k.mul(&m[0][1], &m[1][0]));
    let di = k.inv(&det).expect("invertible change of coordinates");
    let m_inv = [
        [k.mul(&m[1][1], &di), k.neg(&k.mul(&m[0][1], &di))],
        [k.neg(&k.mul(&m[1][0], &di)), k.mul(&m[0][0], &di)],
    ];
    let q = model.q(k).transform(k, &m);
    let (qa, qb, qc, qd) = (q.coeff(0).clone(), q.coeff(1).clone(), q.coeff(2).clone(), q.coeff(3).clone());
    let r = model.vertical(k, o);
    let n = |v: i64| k.from_i64(v);
    let (cubic, chart) = if !k.is_zero(&r) {
        let two_r = k.add(&r, &r);
        let a1 = k.div(&qd, &r);
        let a2 = k.sub(&qc, &k.div(&k.square(&qd), &k.mul(&n(4), &k.square(&r))));
        let a3 = k.mul(&two_r, &qb);
        let a4 = k.neg(&k.mul(&k.mul(&n(4), &k.square(&r)), &qa));
        let a6 = k.mul(&a2, &a4);
        let k1 = k.div(&qd, &two_r);
        let k2 = k.div(&k.sub(&qc, &k.square(&k1)), &two_r);
        let ty = k.neg(&k.mul(&two_r, &k.sub(&qb, &k.mul(&n(2), &k.mul(&k1, &k2)))));
        let special = (k.neg(&a2), ty);
        // -special comes from iota of the fourth point on the parabola
        // V = r t^2 + k1 s t + k2 s^2 osculating at the origin
        let (ns, nt) = (k.neg(&k.sub(&qb, &k.mul(&n(2), &k.mul(&k1, &k2)))), k.sub(&qa, &k.square(&k2)));
        let nv = k.neg(&k.add(
            &k.add(&k.mul(&r, &k.square(&nt)), &k.mul(&k1, &k.mul(&ns, &nt))),
            &k.mul(&k2, &k.square(&ns)),
        ));
        let chart = Chart::General { r, c: qc, d: qd, special, neg_special: [ns, nt, nv] };
        (Cubic { a1, a2, a3, a4, a6 }, chart)
    } else {
        let (e1, e2, e3, e4) = (qd, qc, qb, qa);
        if k.is_zero(&e1) {
            return Err(Dp2Error::SingularOrigin);
        }
        let cubic = Cubic {
            a1: k.zero(),
            a2: e2,
            a3: k.zero(),
            a4: k.mul(&e1, &e3),
            a6: k.mul(&k.square(&e1), &e4),
        };
        (cubic, Chart::Ramified { e1 })
    };
    Ok(WeierstrassData { cubic, origin: o.clone(), model_a: model.a.clone(), m, m_inv, chart })
}

impl<E: Clone + PartialEq> WeierstrassData<E> {
    pub fn forward<F: Field<Elt = E>>(&self, k: &F, p: &CurvePoint<E>) -> Result<WPt<E>> {
        let s = k.add(&k.mul(&self.m_inv[0][0], &p.s), &k.mul(&self.m_inv[0][1], &p.t));
        let t = k.add(&k.mul(&self.m_inv[1][0], &p.s), &k.mul(&self.m_inv[1][1], &p.t));
        let v = k.add(&k.add(&p.w, &p.w), &self.model_a.eval(k, &p.s, &p.t));
        match &self.chart {
            Chart::General { r, c, d, special, .. } => {
                if k.is_zero(&s) {
                    // V = r t^2 is the origin, V = -r t^2 its conjugate
                    return Ok(if v == k.mul(r, &k.square(&t)) {
                        WPt::Infinity
                    } else {
                        WPt::Affine(special.0.clone(), special.1.clone())
                    });
                }
                let two_r = k.add(r, r);
                let vr = k.add(&v, &k.mul(r, &k.square(&t)));
                let st = k.mul(&s, &t);
                let x = k.div(&k.add(&k.mul(&two_r, &vr), &k.mul(d, &st)), &k.square(&s));
                let inner = k.add(
                    &k.add(&k.mul(&k.square(&two_r), &vr), &k.mul(&two_r, &k.add(&k.mul(d, &st), &k.mul(c, &k.square(&s))))),
                    &k.neg(&k.div(&k.mul(&k.square(d), &k.square(&s)), &two_r)),
                );
                let y = k.div(&k.mul(&t, &inner), &k.pow(&s, 3));
                Ok(WPt::Affine(x, y))
            }
            Chart::Ramified { e1 } => {
                if k.is_zero(&s) {
                    return Ok(WPt::Infinity);
                }
                Ok(WPt::Affine(k.div(&k.mul(e1, &t), &s), k.div(&k.mul(e1, &v), &k.square(&s))))
            }
        }
    }

    pub fn backward<F: Field<Elt = E>>(&self, k: &F, p: &WPt<E>) -> Result<CurvePoint<E>> {
        let (s, t, v) = match (p, &self.chart) {
            (WPt::Infinity, _) => return Ok(self.origin.clone()),
            (WPt::Affine(x, y), Chart::General { r, c, d, special, neg_special }) => {
                if *x == special.0 && *y == special.1 {
                    (k.zero(), k.one(), k.neg(r))
                } else {
                    let two_r = k.add(r, r);
                    let nn = k.sub(&k.mul(&two_r, &k.add(x, c)), &k.div(&k.square(d), &two_r));
                    if k.is_zero(&nn) {
                        // the vertical line through the special point
                        let [s, t, v] = neg_special.clone();
                        if k.is_zero(&s) && k.is_zero(&t) {
                            return Err(Dp2Error::SingularHit);
                        }
                        let s0 = k.add(&k.mul(&self.m[0][0], &s), &k.mul(&self.m[0][1], &t));
                        let t0 = k.add(&k.mul(&self.m[1][0], &s), &k.mul(&self.m[1][1], &t));
                        let a = self.model_a.eval(k, &s0, &t0);
                        return Ok(CurvePoint { s: s0, t: t0, w: k.div(&k.sub(&v, &a), &k.from_i64(2)) });
                    }
                    let v = k.add(
                        &k.neg(&k.mul(r, &k.square(y))),
                        &k.div(&k.mul(&nn, &k.sub(&k.mul(&nn, x), &k.mul(d, y))), &two_r),
                    );
                    (nn, y.clone(), v)
                }
            }
            (WPt::Affine(x, y), Chart::Ramified { e1 }) => (e1.clone(), x.clone(), k.mul(e1, y)),
        };
        let s0 = k.add(&k.mul(&self.m[0][0], &s), &k.mul(&self.m[0][1], &t));
        let t0 = k.add(&k.mul(&self.m[1][0], &s), &k.mul(&self.m[1][1], &t));
        let a = self.model_a.eval(k, &s0, &t0);
        let w = k.div(&k.sub(&v, &a), &k.from_i64(2));
        Ok(CurvePoint { s: s0, t: t0, w })
    }
}

/// The unique smooth point `R` with `(R) ~ sum n_i (P_i) + (1 - sum n_i)(O)`.
pub fn lin_comb<F: Field>(
    k: &F,
    model: &QuarticModel<F::Elt>,
    o: &CurvePoint<F::Elt>,
    terms: &[(i64, CurvePoint<F::Elt>)],
) -> Result<CurvePoint<F::Elt>> {
    if model.classify(k) == ModelClass::Reducible {
        return Err(Dp2Error::ReducibleModel);
    }
    let wd = to_weierstrass(k, model, o)?;
    let mut acc = WPt::Infinity;
    for (n, p) in terms {
        if !model.is_smooth_point(k, p) {
            return Err(Dp2Error::SingularHit);
        }
        let fp = wd.forward(k, p)?;
        acc = wd.cubic.add(k, &acc, &wd.cubic.mul(k, *n, &fp)?)?;
    }
    wd.backward(k, &acc)
}

/// The unique `R` with `(R) ~ 2(O) - (Q)`.
pub fn neg_wrt<F: Field>(
    k: &F,
    model: &QuarticModel<F::Elt>,
    o: &CurvePoint<F::Elt>,
    q: &CurvePoint<F::Elt>,
) -> Result<CurvePoint<F::Elt>> {
    lin_comb(k, model, o, &[(-1, q.clone())])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::linalg::{nullspace, Matrix};
    use crate::exactalg::{PrimeField, Rational, Rationals};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn bf(v: &[i64]) -> BinForm<Rational> {
        BinForm::new(v.iter().map(|&c| Rationals.from_i64(c)).collect())
    }

    fn model(a: &[i64], b: &[i64]) -> QuarticModel<Rational> {
        let k = Rationals;
        let line = LineParam::through([k.one(), k.zero(), k.zero()], [k.zero(), k.one(), k.zero()]);
        QuarticModel { a: bf(a), b: bf(b), line }
    }

    fn cp(s: i64, t: i64, w: i64) -> CurvePoint<Rational> {
        let k = Rationals;
        CurvePoint { s: k.from_i64(s), t: k.from_i64(t), w: k.from_i64(w) }
    }

    /// A model through five prescribed points, with `b` solved for.
    fn model_through(rng: &mut ChaCha8Rng) -> (QuarticModel<Rational>, Vec<CurvePoint<Rational>>) {
        let k = Rationals;
        loop {
            let a: Vec<i64> = (0..3).map(|_| rng.gen_range(-3..=3)).collect();
            let a_form = bf(&a);
            let pts: Vec<CurvePoint<Rational>> = (0..5)
                .map(|i| cp(rng.gen_range(-4..=4), i + 1 + rng.gen_range(0..2) * 7, rng.gen_range(-5..=5)))
                .collect();
            let mut rows: Matrix<Rational> = Vec::new();
            for p in &pts {
                let mut row: Vec<Rational> =
                    (0..5).map(|j| k.mul(&k.pow(&p.s, 4 - j as u64), &k.pow(&p.t, j as u64))).collect();
                let rhs = k.mul(&p.w, &k.add(&p.w, &a_form.eval(&k, &p.s, &p.t)));
                row.push(k.neg(&rhs));
                rows.push(row);
            }
            let ns = nullspace(&k, &rows, 6);
            let Some(v) = ns.iter().find(|v| !k.is_zero(&v[5])) else { continue };
            let b: Vec<Rational> = (0..5).map(|j| k.div(&v[j], &v[5])).collect();
            let m = QuarticModel { a: a_form, b: BinForm::new(b), line: model(&[0, 0, 0], &[0, 0, 0, 0, 0]).line };
            if m.classify(&k) == ModelClass::Smooth && pts.iter().all(|p| m.contains(&k, p)) {
                return (m, pts);
            }
        }
    }

    #[test]
    fn pullback_examples() {
        let k = Rationals;
        let s0 = crate::SurfaceDP2::from_i64_terms(&[], &[([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)]).unwrap();
        let l = LineParam::through([k.one(), k.zero(), k.zero()], [k.zero(), k.one(), k.zero()]);
        let m = pullback_line(s0.dp2(), l);
        assert!(m.a.is_zero(&k));
        assert_eq!(m.b, bf(&[1, 0, 0, 0, 1]));
        let sk = crate::SurfaceDP2::from_i64_terms(&[], &[([3, 1, 0], 1), ([0, 3, 1], 1), ([1, 0, 3], 1)]).unwrap();
        let l = LineParam::through([k.zero(), k.one(), k.zero()], [k.zero(), k.zero(), k.one()]);
        assert_eq!(pullback_line(sk.dp2(), l).b, bf(&[0, 1, 0, 0, 0]));
    }

    #[test]
    fn classification_examples() {
        let k = Rationals;
        assert_eq!(model(&[0, 0, 0], &[1, 0, 0, 0, 1]).classify(&k), ModelClass::Smooth);
        assert_eq!(model(&[0, 0, 0], &[0, 1, 0, 0, 0]).classify(&k), ModelClass::IrreducibleSingular);
        assert_eq!(model(&[0, 0, 0], &[0, 0, 1, 0, 0]).classify(&k), ModelClass::Reducible);
    }

    #[test]
    fn fermat_fiber_weierstrass() {
        let k = Rationals;
        let m = model(&[0, 0, 0], &[1, 0, 0, 0, 1]);
        let o = cp(1, 0, 1);
        let wd = to_weierstrass(&k, &m, &o).unwrap();
        assert_ne!(wd.cubic.discriminant(&k), k.zero());
        assert_eq!(wd.forward(&k, &o).unwrap(), WPt::Infinity);
        for p in [cp(1, 0, -1), cp(0, 1, 1), cp(0, 1, -1)] {
            let img = wd.forward(&k, &p).unwrap();
            assert!(wd.cubic.contains(&k, &img));
            assert!(wd.backward(&k, &img).unwrap().same(&k, &p));
        }
        // (R) ~ 2(O) - (Q) for O = (1:0:-1), Q = (0:1:1)
        let r = neg_wrt(&k, &m, &cp(1, 0, -1), &cp(0, 1, 1)).unwrap();
        assert!(m.contains(&k, &r));
        assert!(neg_wrt(&k, &m, &cp(1, 0, -1), &r).unwrap().same(&k, &cp(0, 1, 1)));
    }

    #[test]
    fn ramified_origin() {
        let k = Rationals;
        // w^2 = s t^3 + s^4 has a rational ramification point (0:1:0)
        let m = model(&[0, 0, 0], &[1, 0, 0, 1, 0]);
        assert_eq!(m.classify(&k), ModelClass::Smooth);
        let o = cp(0, 1, 0);
        let wd = to_weierstrass(&k, &m, &o).unwrap();
        for p in [cp(1, 0, 1), cp(1, 0, -1), cp(1, -1, 0), cp(0, 1, 0)] {
            assert!(m.contains(&k, &p));
            let img = wd.forward(&k, &p).unwrap();
            assert!(wd.cubic.contains(&k, &img));
            assert!(wd.backward(&k, &img).unwrap().same(&k, &p));
        }
        // a singular origin is rejected
        let cusp = model(&[0, 0, 0], &[1, 0, 0, 0, 0]);
        assert_eq!(to_weierstrass(&k, &cusp, &cp(0, 1, 0)).unwrap_err(), Dp2Error::SingularOrigin);
    }

    #[test]
    fn round_trips_and_group_law() {
        let k = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..15 {
            let (m, pts) = model_through(&mut rng);
            let mut all = pts.clone();
            all.extend(pts.iter().map(|p| m.involution(&k, p)));
            for o in all.iter().take(3) {
                let wd = to_weierstrass(&k, &m, o).unwrap();
                assert_ne!(wd.cubic.discriminant(&k), k.zero());
                for p in &all {
                    let img = wd.forward(&k, p).unwrap();
                    assert!(wd.cubic.contains(&k, &img));
                    assert!(wd.backward(&k, &img).unwrap().same(&k, p));
                }
                let (a, b) = (&all[3], &all[4]);
                assert!(lin_comb(&k, &m, o, &[(1, a.clone())]).unwrap().same(&k, a));
                assert!(lin_comb(&k, &m, o, &[]).unwrap().same(&k, o));
                assert!(neg_wrt(&k, &m, o, o).unwrap().same(&k, o));
                let twice = lin_comb(&k, &m, o, &[(2, a.clone())]).unwrap();
                let thrice = lin_comb(&k, &m, o, &[(3, a.clone())]).unwrap();
                let sum = lin_comb(&k, &m, o, &[(1, twice.clone()), (1, a.clone())]).unwrap();
                assert!(sum.same(&k, &thrice));
                let back = lin_comb(&k, &m, o, &[(1, twice), (-1, a.clone())]).unwrap();
                assert!(back.same(&k, a));
                let r = neg_wrt(&k, &m, o, b).unwrap();
                assert!(m.contains(&k, &r));
                assert!(neg_wrt(&k, &m, o, &r).unwrap().same(&k, b));
            }
            // the class of a degree-one divisor does not depend on the origin
            let terms = [(2, all[0].clone()), (-1, all[1].clone())];
            let r1 = lin_comb(&k, &m, &all[2], &terms).unwrap();
            let r2 = lin_comb(&k, &m, &all[7], &terms).unwrap();
            assert!(r1.same(&k, &r2));
            // 2(O) - (iota O): the vertical line through the special point
            for o in &pts {
                let io = m.involution(&k, o);
                let r = neg_wrt(&k, &m, o, &io).unwrap();
                let other = lin_comb(&k, &m, &all[8], &[(2, o.clone()), (-1, io)]).unwrap();
                assert!(r.same(&k, &other));
            }
        }
    }

    #[test]
    fn reduction_compatibility() {
        let k = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0;
        for _ in 0..10 {
            let (m, pts) = model_through(&mut rng);
            let r = neg_wrt(&k, &m, &pts[0], &pts[1]).unwrap();
            for p in [101u64, 103, 107] {
                let kp = PrimeField::new(p);
                let red = |c: &Rational| kp.reduce(c);
                let redp = |c: &CurvePoint<Rational>| -> Option<CurvePoint<u64>> {
                    Some(CurvePoint { s: red(&c.s)?, t: red(&c.t)?, w: red(&c.w)? })
                };
                let (Some(a), Some(b)) = (
                    m.a.coeffs().iter().map(red).collect::<Option<Vec<_>>>(),
                    m.b.coeffs().iter().map(red).collect::<Option<Vec<_>>>(),
                ) else { continue };
                let mp = QuarticModel {
                    a: BinForm::new(a),
                    b: BinForm::new(b),
                    line: LineParam::through([1, 0, 0], [0, 1, 0]),
                };
                let (Some(o), Some(q), Some(rr)) = (redp(&pts[0]), redp(&pts[1]), redp(&r)) else { continue };
                if mp.classify(&kp) != ModelClass::Smooth {
                    continue;
                }
                match neg_wrt(&kp, &mp, &o, &q) {
                    Ok(rp) => {
                        assert!(rp.same(&kp, &rr));
                        checked += 1;
                    }
                    Err(e) => panic!("{e}"),
                }
            }
        }
        assert!(checked >= 20);
    }
}

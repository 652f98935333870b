//! The point map `phi`, the curves `C_P`, and classification of points by
//! the exceptional curves through them.

pub mod bitangent;
pub mod section;

use serde::Serialize;

use crate::error::{Dp2Error, Result};
use crate::exactalg::BaseField;
use crate::genus1::{neg_wrt, pullback_line, LineParam, ModelClass, QuarticModel};
use crate::surface::{same_p2, Dp2, WPoint};

pub use bitangent::{bitangents_through_quartic, count_all_bitangents_quartic, BitangentCount};
pub use section::{
    c_p_point, c_p_point_in, default_chart, osculating_section, osculating_section_in_chart, osculation_dimension,
    Pencil, SectionMinus2K,
};

/// The genus-1 curve `kappa^{-1}` of the line through `kappa(P)` and `kappa(Q)`.
pub(crate) fn chord_model<F: BaseField>(x: &Dp2<F>, p: &WPoint<F::Elt>, q: &WPoint<F::Elt>) -> Result<QuarticModel<F::Elt>> {
    let k = x.field();
    let (kp, kq) = (x.kappa(p), x.kappa(q));
    if same_p2(k, &kp, &kq) {
        return Err(Dp2Error::SameImage);
    }
    Ok(pullback_line(x, LineParam::through(kp, kq)))
}

/// `phi(P, Q)`: the point `R` on the curve over the line through `kappa(P)`
/// and `kappa(Q)` with `(R) ~ 2(iota P) - (Q)`.
pub fn phi<F: BaseField>(x: &Dp2<F>, p: &WPoint<F::Elt>, q: &WPoint<F::Elt>) -> Result<WPoint<F::Elt>> {
    let k = x.field();
    let model = chord_model(x, p, q)?;
    if model.classify(k) == ModelClass::Reducible {
        return Err(Dp2Error::BitangentLine);
    }
    let cp = model.from_surface(k, p).ok_or(Dp2Error::NotOnSurface)?;
    let cq = model.from_surface(k, q).ok_or(Dp2Error::NotOnSurface)?;
    let r = neg_wrt(k, &model, &model.involution(k, &cp), &cq)?;
    Ok(model.to_surface(x, &r))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DomainFailure {
    SameImage,
    BitangentLine,
    NonSmoothEndpoint,
    FirstNotInU0,
    SecondOnCP,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PhiDomainVerdict {
    pub in_u_phi: bool,
    pub in_u_inv: bool,
    pub reason: Option<DomainFailure>,
}

impl PhiDomainVerdict {
    fn fail(reason: DomainFailure, in_u_phi: bool) -> Self {
        PhiDomainVerdict { in_u_phi, in_u_inv: false, reason: Some(reason) }
    }
}

/// Membership of `(P, Q)` in the domain of `phi` and in the subdomain where
/// `phi(P, -)` is an involution.
pub fn phi_domain<F: BaseField>(x: &Dp2<F>, p: &WPoint<F::Elt>, q: &WPoint<F::Elt>) -> PhiDomainVerdict {
    let k = x.field();
    let Ok(model) = chord_model(x, p, q) else {
        return PhiDomainVerdict::fail(DomainFailure::SameImage, false);
    };
    if model.classify(k) == ModelClass::Reducible {
        return PhiDomainVerdict::fail(DomainFailure::BitangentLine, false);
    }
    let smooth = |pt: &WPoint<F::Elt>| model.from_surface(k, pt).is_some_and(|c| model.is_smooth_point(k, &c));
    if !smooth(&x.geiser(p)) || !smooth(q) {
        return PhiDomainVerdict::fail(DomainFailure::NonSmoothEndpoint, false);
    }
    if !classify_point(x, p).is_very_general {
        return PhiDomainVerdict::fail(DomainFailure::FirstNotInU0, true);
    }
    match osculating_section(x, p) {
        Ok(s) if !k.is_zero(&s.eval(k, q)) => PhiDomainVerdict { in_u_phi: true, in_u_inv: true, reason: None },
        Ok(_) => PhiDomainVerdict::fail(DomainFailure::SecondOnCP, true),
        Err(_) => PhiDomainVerdict::fail(DomainFailure::FirstNotInU0, true),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PointClassification {
    pub on_ramification: bool,
    pub n_exceptional: usize,
    pub is_general: bool,
    pub is_very_general: bool,
    pub is_generalized_eckardt: bool,
}

/// Bitangents of the branch curve through a point of the plane.
pub fn count_bitangents_through<F: BaseField>(x: &Dp2<F>, p: &[F::Elt; 3]) -> Result<BitangentCount<F::Elt>> {
    bitangents_through_quartic(x.field(), x.branch(), p)
}

/// Each bitangent through `kappa(P)` carries exactly one exceptional curve
/// through `P` when `P` is off the ramification curve.
pub fn classify_point<F: BaseField>(x: &Dp2<F>, p: &WPoint<F::Elt>) -> PointClassification {
    let on_ramification = x.on_ramification(p);
    // the pencil discriminant of a smooth quartic never vanishes identically
    let n = count_bitangents_through(x, &x.kappa(p)).map(|c| c.count).unwrap_or(usize::MAX);
    let eckardt = !on_ramification && n == 4;
    PointClassification {
        on_ramification,
        n_exceptional: n,
        is_general: !on_ramification && !eckardt,
        is_very_general: !on_ramification && n == 0,
        is_generalized_eckardt: eckardt,
    }
}

/// Number of bitangents of the branch curve over the algebraic closure.
pub fn count_all_bitangents<F: BaseField>(x: &Dp2<F>) -> Result<usize> {
    count_all_bitangents_quartic(x.field(), x.branch())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{Field, Rationals};
    use crate::genus1::lin_comb;
    use crate::SurfaceDP2;

    fn fermat() -> SurfaceDP2 {
        SurfaceDP2::from_i64_terms(&[], &[([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)]).unwrap()
    }

    fn klein() -> SurfaceDP2 {
        SurfaceDP2::from_i64_terms(&[], &[([3, 1, 0], 1), ([0, 3, 1], 1), ([1, 0, 3], 1)]).unwrap()
    }

    fn rich() -> SurfaceDP2 {
        SurfaceDP2::from_i64_terms(
            &[([1, 1, 0], 1), ([0, 0, 2], 1)],
            &[([3, 0, 1], 1), ([0, 4, 0], -1), ([1, 1, 2], 2), ([0, 0, 4], 1)],
        )
        .unwrap()
    }

    fn pt(s: &SurfaceDP2, v: [i64; 4]) -> WPoint<crate::Rational> {
        let k = Rationals;
        s.point([k.from_i64(v[0]), k.from_i64(v[1]), k.from_i64(v[2])], k.from_i64(v[3])).unwrap()
    }

    #[test]
    fn phi_rejects_equal_images() {
        let s = fermat();
        let p = pt(&s, [1, 0, 0, 1]);
        assert!(matches!(phi(&s, &p, &p), Err(Dp2Error::SameImage)));
        assert!(matches!(phi(&s, &p, &s.geiser(&p)), Err(Dp2Error::SameImage)));
        let v = phi_domain(&s, &p, &p);
        assert!(!v.in_u_phi && v.reason == Some(DomainFailure::SameImage));
    }

    #[test]
    fn phi_on_fermat_stays_on_the_chord() {
        let s = fermat();
        let (p, q) = (pt(&s, [1, 0, 0, 1]), pt(&s, [0, 1, 0, 1]));
        let r = phi(&s, &p, &q).unwrap();
        assert!(s.contains(&r));
        assert!(Rationals.is_zero(&r.x[2]));
        // P is an Eckardt point, so the pair is in the domain but not U_inv
        let v = phi_domain(&s, &p, &q);
        assert!(v.in_u_phi && !v.in_u_inv);
        assert_eq!(v.reason, Some(DomainFailure::FirstNotInU0));
    }

    #[test]
    fn involution_collinearity_and_origin_swap() {
        let s = rich();
        let k = Rationals;
        let pts = s.small_points(3);
        let mut checked = 0;
        for p in pts.iter().take(6) {
            for q in pts.iter().skip(6).take(10) {
                let v = phi_domain(&s, p, q);
                if !v.in_u_phi {
                    continue;
                }
                let r = phi(&s, p, q).unwrap();
                assert!(s.contains(&r));
                let (kp, kq, kr) = (s.kappa(p), s.kappa(q), s.kappa(&r));
                let rows = vec![kp.to_vec(), kq.to_vec(), kr.to_vec()];
                assert!(k.is_zero(&crate::exactalg::linalg::det(&k, &rows)));
                // the same class computed with origin iota(Q)
                let model = chord_model(&s, p, q).unwrap();
                let c = |x: &WPoint<crate::Rational>| model.from_surface(&k, x).unwrap();
                let iq = model.involution(&k, &c(q));
                if let Ok(r2) = lin_comb(&k, &model, &iq, &[(2, c(&s.geiser(p))), (-1, c(q))]) {
                    assert_eq!(model.to_surface(&s, &r2), r);
                }
                if v.in_u_inv {
                    assert!(phi_domain(&s, p, &r).in_u_inv);
                    assert_eq!(&phi(&s, p, &r).unwrap(), q);
                    checked += 1;
                }
            }
        }
        assert!(checked > 10, "{checked}");
    }

    #[test]
    fn osculating_section_is_chart_independent() {
        let s = rich();
        let k = Rationals;
        for p in s.small_points(2).iter().filter(|p| classify_point(&s, p).is_very_general).take(8) {
            let sec = osculating_section(&s, p).unwrap();
            assert!(k.is_zero(&sec.eval(&k, p)));
            assert_eq!(osculation_dimension(&s, p), Some(1));
            for chart in (0..3).filter(|&c| !k.is_zero(&p.x[c])) {
                assert_eq!(osculating_section_in_chart(&s, p, chart).unwrap(), sec);
            }
        }
    }

    #[test]
    fn c_p_points_lie_on_the_osculating_section() {
        let k = Rationals;
        for s in [rich(), klein()] {
            let p = s.small_points(2).into_iter().find(|p| classify_point(&s, p).is_very_general).unwrap();
            let sec = osculating_section(&s, &p).unwrap();
            let pencil = Pencil::at(&k, &p.x);
            let mut seen = Vec::new();
            for (u, v) in [(1, 0), (0, 1), (1, 1), (2, -3), (5, 7)] {
                let Ok(r) = c_p_point_in(&s, &p, &pencil, &k.from_i64(u), &k.from_i64(v)) else { continue };
                assert!(s.contains(&r));
                assert!(k.is_zero(&sec.eval(&k, &r)));
                assert!(!seen.contains(&r));
                seen.push(r);
            }
            assert!(seen.len() >= 4);
        }
    }

    #[test]
    fn classification_examples() {
        let s = klein();
        let c = classify_point(&s, &pt(&s, [0, 0, 1, 0]));
        assert!(c.on_ramification && !c.is_general && !c.is_very_general);
        let f = fermat();
        let c = classify_point(&f, &pt(&f, [1, 0, 0, 1]));
        assert_eq!(c.n_exceptional, 4);
        assert!(c.is_generalized_eckardt && !c.is_general);
        let c = classify_point(&f, &pt(&f, [12, 15, 20, 481]));
        assert!(c.is_very_general && c.is_general && c.n_exceptional == 0);
    }
}

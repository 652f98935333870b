//! Reductions modulo good primes: point enumeration, the base-locus check
//! of `phi`, and the coverage of `phi` over a finite field.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Dp2Error, Result};
use crate::exactalg::linalg::nullspace;
use crate::exactalg::{is_prime_u64, Field, PrimeField};
use crate::genus1::ModelClass;
use crate::geometry::section::{default_chart, vanishing_rows};
use crate::geometry::{chord_model, classify_point, osculating_section, phi, phi_domain};
use crate::surface::{Dp2, PointDP2, SurfaceDP2, WPoint};

pub type PointModP = WPoint<u64>;

/// `p >= 5` prime with smooth branch quartic modulo `p`. The surface is
/// integral, so reduction is always defined.
pub fn good_prime(s: &SurfaceDP2, p: u64) -> bool {
    p >= 5 && is_prime_u64(p) && p < (1 << 62) && s.reduce_mod(p).is_smooth()
}

/// A surface reduced modulo a good prime together with its points.
#[derive(Clone, Debug)]
pub struct SurfaceModP {
    pub p: u64,
    pub x: Dp2<PrimeField>,
    points: Vec<PointModP>,
    index: HashMap<PointModP, usize>,
}

impl SurfaceModP {
    pub fn new(s: &SurfaceDP2, p: u64) -> Result<Self> {
        if !good_prime(s, p) {
            return Err(Dp2Error::BadPrime(p));
        }
        let x = s.reduce_mod(p);
        let points = enumerate(&x);
        let index = points.iter().enumerate().map(|(i, q)| (q.clone(), i)).collect();
        Ok(SurfaceModP { p, x, points, index })
    }

    pub fn points(&self) -> &[PointModP] {
        &self.points
    }

    pub fn reduce(&self, s: &SurfaceDP2, pt: &PointDP2) -> Result<PointModP> {
        s.reduce_point(self.p, pt).ok_or(Dp2Error::BadReduction)
    }

    /// Common zeros on `X(F_p)` of the sections vanishing doubly at `a` and
    /// simply at `b`.
    pub fn base_locus(&self, a: &PointModP, b: &PointModP) -> Result<Vec<PointModP>> {
        let k = self.x.field();
        let mut rows =
            vanishing_rows(&self.x, a, 2, default_chart(k, &a.x)).ok_or(Dp2Error::BadReduction)?;
        let row_b = vanishing_rows(&self.x, b, 1, default_chart(k, &b.x));
        match row_b {
            Some(r) => rows.extend(r),
            // on the ramification curve only the value condition is needed
            None => rows.push(value_row(k, b)),
        }
        let basis = nullspace(k, &rows, 7);
        if basis.len() != 3 {
            return Err(Dp2Error::UnexpectedDimension(basis.len()));
        }
        Ok(self
            .points
            .iter()
            .filter(|q| {
                let vals = value_row(k, q);
                basis.iter().all(|v| k.is_zero(&dot(k, v, &vals)))
            })
            .cloned()
            .collect())
    }

    /// Whether the base locus for `(a, b)` is exactly `{a, b, c}`. Pairs
    /// outside the domain of `phi` over `F_p` are bad reductions: on a
    /// bitangent chord the base locus contains a whole exceptional curve.
    pub fn base_locus_oracle(&self, a: &PointModP, b: &PointModP, c: &PointModP) -> Result<bool> {
        if a == b || a == c || b == c || !phi_domain(&self.x, a, b).in_u_phi {
            return Err(Dp2Error::BadReduction);
        }
        let locus = self.base_locus(a, b)?;
        Ok(locus.len() == 3 && [a, b, c].iter().all(|q| locus.contains(q)))
    }

    /// For every point, whether it is `phi(P, Q)` for some `(P, Q)` in
    /// `U_inv` over `F_p`.
    pub fn phi_surjectivity(&self) -> SurjectivityReport {
        let x = &self.x;
        let k = x.field();
        let hits: Vec<Vec<bool>> = self
            .points
            .par_iter()
            .map(|a| {
                let mut hit = vec![false; self.points.len()];
                if !classify_point(x, a).is_very_general {
                    return hit;
                }
                let Ok(sec) = osculating_section(x, a) else { return hit };
                let ia = x.geiser(a);
                for b in &self.points {
                    if k.is_zero(&sec.eval(k, b)) {
                        continue;
                    }
                    let Ok(model) = chord_model(x, a, b) else { continue };
                    if model.classify(k) == ModelClass::Reducible {
                        continue;
                    }
                    let smooth = |q: &PointModP| model.from_surface(k, q).is_some_and(|c| model.is_smooth_point(k, &c));
                    if !smooth(&ia) || !smooth(b) {
                        continue;
                    }
                    if let Ok(r) = phi(x, a, b) {
                        hit[self.index[&r]] = true;
                    }
                }
                hit
            })
            .collect();
        let covered: Vec<bool> =
            (0..self.points.len()).map(|i| hits.iter().any(|h| h[i])).collect();
        let missed: Vec<String> =
            self.points.iter().zip(&covered).filter(|(_, c)| !**c).map(|(q, _)| q.to_string()).collect();
        SurjectivityReport {
            p: self.p,
            total: self.points.len(),
            hit: covered.iter().filter(|c| **c).count(),
            missed,
        }
    }
}

fn value_row(k: &PrimeField, q: &PointModP) -> Vec<u64> {
    let [a, b, c] = &q.x;
    vec![q.w, k.mul(a, a), k.mul(a, b), k.mul(a, c), k.mul(b, b), k.mul(b, c), k.mul(c, c)]
}

fn dot(k: &PrimeField, a: &[u64], b: &[u64]) -> u64 {
    a.iter().zip(b).fold(0, |acc, (x, y)| k.add(&acc, &k.mul(x, y)))
}

/// All points of `X(F_p)`, ordered by plane point, then `w`.
fn enumerate(x: &Dp2<PrimeField>) -> Vec<PointModP> {
    let p = x.field().p();
    let mut out = Vec::new();
    let mut push = |v: [u64; 3]| {
        let mut l = x.lift(&v);
        l.sort_by_key(|q| q.w);
        out.extend(l);
    };
    push([0, 0, 1]);
    for c in 0..p {
        push([0, 1, c]);
    }
    for b in 0..p {
        for c in 0..p {
            push([1, b, c]);
        }
    }
    out
}

/// Points of the surface modulo `p`.
pub fn enumerate_points(s: &SurfaceDP2, p: u64) -> Result<Vec<PointModP>> {
    Ok(SurfaceModP::new(s, p)?.points)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurjectivityReport {
    pub p: u64,
    pub total: usize,
    pub hit: usize,
    pub missed: Vec<String>,
}

impl SurjectivityReport {
    pub fn coverage(&self) -> f64 {
        self.hit as f64 / self.total as f64
    }
}

pub fn phi_surjectivity(s: &SurfaceDP2, p: u64) -> Result<SurjectivityReport> {
    Ok(SurfaceModP::new(s, p)?.phi_surjectivity())
}

/// Pairs `(point, p)` where a point that is very general over `Q` acquires a
/// bitangent through its image modulo `p`.
pub fn persistence_exceptions(s: &SurfaceDP2, points: &[PointDP2], primes: &[u64]) -> Vec<(PointDP2, u64)> {
    let mut out = Vec::new();
    for pt in points.iter().filter(|pt| classify_point(s.dp2(), pt).is_very_general) {
        for &p in primes {
            let x = s.reduce_mod(p);
            let Some(q) = s.reduce_point(p, pt) else { continue };
            if classify_point(&x, &q).n_exceptional != 0 {
                out.push((pt.clone(), p));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{is_geometric_square, BinForm};
    use crate::genus1::LineParam;

    fn fermat() -> SurfaceDP2 {
        SurfaceDP2::from_i64_terms(&[], &[([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)]).unwrap()
    }

    fn rich() -> SurfaceDP2 {
        SurfaceDP2::from_i64_terms(
            &[([1, 1, 0], 1), ([0, 0, 2], 1)],
            &[([3, 0, 1], 1), ([0, 4, 0], -1), ([1, 1, 2], 2), ([0, 0, 4], 1)],
        )
        .unwrap()
    }

    #[test]
    fn good_primes_of_fermat() {
        let s = fermat();
        assert!(!good_prime(&s, 2) && !good_prime(&s, 3));
        assert!(good_prime(&s, 5));
        let odd: Vec<u64> = (3..).filter(|&p| is_prime_u64(p)).take(25).collect();
        assert!(odd.iter().filter(|&&p| good_prime(&s, p)).count() >= 20);
    }

    #[test]
    fn point_counts() {
        let s = fermat();
        for p in [5u64, 7, 11, 13] {
            let m = SurfaceModP::new(&s, p).unwrap();
            let n = m.points().len() as i64;
            assert!((n - (p * p + 1) as i64).abs() <= 8 * p as i64, "p = {p}, N = {n}");
            let k = m.x.field();
            for q in m.points() {
                assert!(m.x.contains(q));
                assert_eq!(m.x.on_ramification(q), k.is_zero(&m.x.branch().eval(k, &q.x)));
            }
        }
        assert!(matches!(SurfaceModP::new(&s, 3), Err(Dp2Error::BadPrime(3))));
    }

    /// All lines of `P^2(F_p)` on which the branch quartic is a square.
    fn bitangent_lines(m: &SurfaceModP) -> Vec<[u64; 3]> {
        let k = m.x.field();
        let p = m.p;
        let mut lines = vec![[0, 0, 1]];
        lines.extend((0..p).map(|c| [0, 1, c]));
        lines.extend((0..p * p).map(|i| [1, i / p, i % p]));
        lines
            .into_iter()
            .filter(|l| {
                let ker = nullspace(k, &vec![l.to_vec()], 3);
                let line = LineParam::through([ker[0][0], ker[0][1], ker[0][2]], [ker[1][0], ker[1][1], ker[1][2]]);
                let q: BinForm<u64> = m.x.branch().restrict_to_line(k, &line.p1, &line.p2);
                is_geometric_square(k, &q).unwrap()
            })
            .collect()
    }

    #[test]
    fn fermat_mod_17_has_no_very_general_points() {
        // all 28 bitangents are defined over F_17 and cover every point
        let s = fermat();
        let m = SurfaceModP::new(&s, 17).unwrap();
        let lines = bitangent_lines(&m);
        assert_eq!(lines.len(), 28);
        let k = m.x.field();
        for q in m.points() {
            let on = lines.iter().filter(|l| (0..3).fold(0, |a, i| k.add(&a, &k.mul(&l[i], &q.x[i]))) == 0).count();
            assert_eq!(classify_point(&m.x, q).n_exceptional, on);
            assert!(on >= 1 || m.x.on_ramification(q));
        }
    }

    #[test]
    fn base_locus_and_reduced_phi() {
        let s = rich();
        let pts = s.small_points(2);
        let mut confirmed = 0;
        for (a, b) in pts.iter().zip(pts.iter().skip(7)).take(12) {
            let Ok(r) = phi(&s, a, b) else { continue };
            for p in [13u64, 17, 29, 31] {
                let Ok(m) = SurfaceModP::new(&s, p) else { continue };
                let (ap, bp, rp) = (m.reduce(&s, a).unwrap(), m.reduce(&s, b).unwrap(), m.reduce(&s, &r).unwrap());
                if let Ok(rq) = phi(&m.x, &ap, &bp) {
                    assert_eq!(rq, rp);
                }
                match m.base_locus_oracle(&ap, &bp, &rp) {
                    Ok(v) => {
                        assert!(v, "p = {p}");
                        let other = m.points().iter().find(|q| ![&ap, &bp, &rp].contains(q)).unwrap();
                        assert!(!m.base_locus_oracle(&ap, &bp, other).unwrap());
                        confirmed += 1;
                    }
                    Err(Dp2Error::BadReduction | Dp2Error::UnexpectedDimension(_)) => {}
                    Err(e) => panic!("{e:?}"),
                }
            }
        }
        assert!(confirmed >= 20, "{confirmed}");
    }
}

//! The covers `f1, f2, f3, f6` from products of projective lines to the
//! surface, and seeded point generation on top of them.

use num_bigint::BigInt;
use num_integer::Integer as _;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Dp2Error, Result};
use crate::exactalg::linalg::rank;
use crate::exactalg::{Field, Rational, Rationals};
use crate::geometry::{c_p_point_in, classify_point, osculating_section, phi, Pencil, SectionMinus2K};
use crate::surface::{PointDP2, SurfaceDP2};

/// Name of the generator behind `generate_points`, reported in run metadata.
pub const RNG_NAME: &str = "ChaCha8";

/// A point `(u:v)` of the projective line with coprime integer entries,
/// first nonzero entry positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Param {
    pub u: i64,
    pub v: i64,
}

impl Param {
    pub fn new(u: i64, v: i64) -> Result<Self> {
        if u == 0 && v == 0 {
            return Err(Dp2Error::BadParameter("(0:0)".into()));
        }
        let g = u.gcd(&v);
        let (u, v) = (u / g, v / g);
        let sign = if u < 0 || (u == 0 && v < 0) { -1 } else { 1 };
        Ok(Param { u: sign * u, v: sign * v })
    }
}

impl std::fmt::Display for Param {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.u, self.v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Cover {
    F1,
    F2,
    F3,
    F6,
}

impl Cover {
    pub fn arity(self) -> usize {
        match self {
            Cover::F1 => 1,
            Cover::F2 => 2,
            Cover::F3 => 3,
            Cover::F6 => 6,
        }
    }
}

impl std::str::FromStr for Cover {
    type Err = Dp2Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "f1" => Ok(Cover::F1),
            "f2" => Ok(Cover::F2),
            "f3" => Ok(Cover::F3),
            "f6" => Ok(Cover::F6),
            _ => Err(Dp2Error::Parse(format!("unknown cover {s:?}"))),
        }
    }
}

/// A surface with a fixed very general point `P0` and the data of `C_{P0}`.
#[derive(Clone, Debug)]
pub struct CoverContext {
    pub surface: SurfaceDP2,
    pub p0: PointDP2,
    pub section: SectionMinus2K<Rational>,
    pencil: Pencil<Rational>,
}

impl CoverContext {
    /// Uses `p0` when it is very general.
    pub fn new(surface: SurfaceDP2, p0: PointDP2) -> Result<Self> {
        if !surface.contains(&p0) {
            return Err(Dp2Error::NotOnSurface);
        }
        let p0 = surface.normalize(&p0);
        if !classify_point(&surface, &p0).is_very_general {
            return Err(Dp2Error::NotVeryGeneral);
        }
        let section = osculating_section(&surface, &p0)?;
        let pencil = Pencil::at(&Rationals, &p0.x);
        Ok(CoverContext { surface, p0, section, pencil })
    }

    /// Tries `preferred` first, then the points of height up to `bound` in order.
    pub fn search(surface: SurfaceDP2, preferred: Option<PointDP2>, bound: i64) -> Result<Self> {
        if let Some(p) = preferred {
            match Self::new(surface.clone(), p) {
                Err(Dp2Error::NotVeryGeneral) => {}
                other => return other,
            }
        }
        for h in 1..=bound {
            for p in surface.points_of_height(h) {
                if let Ok(ctx) = Self::new(surface.clone(), p) {
                    return Ok(ctx);
                }
            }
        }
        Err(Dp2Error::NotVeryGeneral)
    }

    pub fn f1(&self, a: Param) -> Result<PointDP2> {
        let k = Rationals;
        c_p_point_in(&self.surface, &self.p0, &self.pencil, &k.from_i64(a.u), &k.from_i64(a.v)).map_err(|e| match e {
            Dp2Error::BitangentLine | Dp2Error::SingularHit => Dp2Error::BadParameter(format!("f1({a}): {e}")),
            e => e,
        })
    }

    pub fn f2(&self, a: Param, b: Param) -> Result<PointDP2> {
        phi(&self.surface, &self.f1(a)?, &self.f1(b)?)
    }

    pub fn f3(&self, a: Param, b: Param, c: Param) -> Result<PointDP2> {
        phi(&self.surface, &self.f1(a)?, &self.f2(b, c)?)
    }

    pub fn f6(&self, t: &[Param; 6]) -> Result<PointDP2> {
        phi(&self.surface, &self.f3(t[0], t[1], t[2])?, &self.f3(t[3], t[4], t[5])?)
    }

    pub fn eval(&self, cover: Cover, params: &[Param]) -> Result<PointDP2> {
        if params.len() != cover.arity() {
            return Err(Dp2Error::BadParameter(format!("{cover:?} takes {} parameters", cover.arity())));
        }
        match cover {
            Cover::F1 => self.f1(params[0]),
            Cover::F2 => self.f2(params[0], params[1]),
            Cover::F3 => self.f3(params[0], params[1], params[2]),
            Cover::F6 => self.f6(params.try_into().unwrap()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratedPoint {
    #[serde(serialize_with = "ser_display")]
    pub point: PointDP2,
    #[serde(serialize_with = "ser_display")]
    pub height: BigInt,
    pub cover: Cover,
    pub params: Vec<Param>,
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Counts of what happened to the samples of a run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GenerationStats {
    pub samples: usize,
    pub failures: std::collections::BTreeMap<String, usize>,
    pub duplicates: usize,
    pub above_height_bound: usize,
    pub returned: usize,
}

/// Samples per value of the parameter bound before it grows by one.
const SAMPLES_PER_BOUND: usize = 50;

fn sample_param(rng: &mut ChaCha8Rng, h: i64) -> Param {
    loop {
        let (u, v) = (rng.gen_range(-h..=h), rng.gen_range(-h..=h));
        if let Ok(p) = Param::new(u, v) {
            return p;
        }
    }
}

/// The parameter tuples used by [`generate_points`], in sample order.
pub fn sample_params(cover: Cover, budget: usize, seed: u64) -> Vec<Vec<Param>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..budget)
        .map(|i| {
            let h = 2 + (i / SAMPLES_PER_BOUND) as i64;
            (0..cover.arity()).map(|_| sample_param(&mut rng, h)).collect()
        })
        .collect()
}

fn error_kind(e: &Dp2Error) -> String {
    let s = format!("{e:?}");
    s.split(['(', ' ', '{']).next().unwrap_or(&s).to_string()
}

/// Evaluates `cover` on `budget` seeded samples; the result is sorted by
/// height, then coordinates, and does not depend on the thread count.
pub fn generate_points(
    ctx: &CoverContext,
    cover: Cover,
    budget: usize,
    height_bound: Option<&BigInt>,
    seed: u64,
) -> (Vec<GeneratedPoint>, GenerationStats) {
    let params = sample_params(cover, budget, seed);
    let results: Vec<Result<PointDP2>> = params.par_iter().map(|t| ctx.eval(cover, t)).collect();
    let mut stats = GenerationStats { samples: budget, ..Default::default() };
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for (t, r) in params.into_iter().zip(results) {
        let point = match r {
            Ok(p) => p,
            Err(e) => {
                *stats.failures.entry(error_kind(&e)).or_default() += 1;
                continue;
            }
        };
        if !seen.insert(point.clone()) {
            stats.duplicates += 1;
            continue;
        }
        let height = SurfaceDP2::height(&point);
        if height_bound.is_some_and(|b| &height > b) {
            stats.above_height_bound += 1;
            continue;
        }
        out.push(GeneratedPoint { point, height, cover, params: t });
    }
    out.sort_by(|a, b| (&a.height, &a.point.x, &a.point.w).cmp(&(&b.height, &b.point.x, &b.point.w)));
    stats.returned = out.len();
    (out, stats)
}

/// Rank of the values of `w, x^2, xy, xz, y^2, yz, z^2` at the points.
pub fn section_rank(points: &[PointDP2]) -> usize {
    let k = Rationals;
    let rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| {
            let [x, y, z] = &p.x;
            vec![p.w.clone(), x * x, x * y, x * z, y * y, y * z, z * z]
        })
        .collect();
    rank(&k, &rows)
}

/// Rank of the plane images of the points.
pub fn kappa_rank(points: &[PointDP2]) -> usize {
    let rows: Vec<Vec<Rational>> = points.iter().map(|p| p.x.to_vec()).collect();
    rank(&Rationals, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> CoverContext {
        let s = SurfaceDP2::from_i64_terms(&[], &[([3, 1, 0], 1), ([0, 3, 1], 1), ([1, 0, 3], 1)]).unwrap();
        CoverContext::search(s, None, 5).unwrap()
    }

    #[test]
    fn params_are_normalized() {
        assert_eq!(Param::new(-4, 6).unwrap(), Param { u: 2, v: -3 });
        assert_eq!(Param::new(0, -5).unwrap(), Param { u: 0, v: 1 });
        assert!(Param::new(0, 0).is_err());
    }

    #[test]
    fn covers_land_on_the_surface() {
        let c = ctx();
        let k = Rationals;
        let (a, b, d) = (Param::new(1, 2).unwrap(), Param::new(3, -1).unwrap(), Param::new(2, 5).unwrap());
        let pa = c.f1(a).unwrap();
        assert!(c.surface.contains(&pa) && k.is_zero(&c.section.eval(&k, &pa)));
        assert_ne!(pa, c.f1(b).unwrap());
        let q = c.f2(a, b).unwrap();
        assert!(c.surface.contains(&q));
        let f3 = c.f3(d, a, b).unwrap();
        assert_eq!(f3, phi(&c.surface, &c.f1(d).unwrap(), &q).unwrap());
        let half = [d, a, b];
        let six = [half, half].concat();
        assert!(matches!(c.f6(&six.try_into().unwrap()), Err(Dp2Error::SameImage)));
    }

    #[test]
    fn generation_is_deterministic_and_sorted() {
        let c = ctx();
        let (pts, stats) = generate_points(&c, Cover::F2, 60, None, 9);
        let (again, _) = generate_points(&c, Cover::F2, 60, None, 9);
        assert_eq!(pts, again);
        assert_eq!(stats.returned, pts.len());
        assert!(pts.windows(2).all(|w| w[0].height <= w[1].height));
        assert!(pts.iter().all(|g| c.surface.contains(&g.point)));
        let bound = pts[pts.len() / 2].height.clone();
        let (low, _) = generate_points(&c, Cover::F2, 60, Some(&bound), 9);
        assert!(!low.is_empty() && low.iter().all(|g| g.height <= bound));
        let sample: Vec<PointDP2> = pts.iter().take(30).map(|g| g.point.clone()).collect();
        assert_eq!(section_rank(&sample), 7);
        assert_eq!(kappa_rank(&sample), 3);
    }
}

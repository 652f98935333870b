//! Seeded property checks over a surface, shared by the `verify` command
//! and the test suites.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::covers::{kappa_rank, section_rank, CoverContext, Param};
use crate::exactalg::{Field, Rationals};
use crate::genus1::{lin_comb, ModelClass};
use crate::geometry::{chord_model, classify_point, osculating_section, osculation_dimension, phi, phi_domain};
use crate::surface::{PointDP2, SurfaceDP2};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub tested: usize,
    pub failures: Vec<String>,
}

impl CheckResult {
    fn new(name: &str) -> Self {
        CheckResult { name: name.to_string(), tested: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.tested > 0 && self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.tested += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

/// Very general points of height at most `bound`.
pub fn very_general_points(s: &SurfaceDP2, bound: i64) -> Vec<PointDP2> {
    s.small_points(bound).into_iter().filter(|p| classify_point(s, p).is_very_general).collect()
}

/// The first `want` very general points by height, searching up to `max_bound`.
pub fn very_general_sample(s: &SurfaceDP2, want: usize, max_bound: i64) -> Vec<PointDP2> {
    let mut out = Vec::new();
    for h in 1..=max_bound {
        out.extend(s.points_of_height(h).into_iter().filter(|p| classify_point(s, p).is_very_general));
        if out.len() >= want {
            out.truncate(want);
            break;
        }
    }
    out
}

/// Up to `n` distinct pairs `(P, Q)` in `U_inv` with `P` from `firsts` and
/// `Q` from `seconds`, drawn in a seeded order.
pub fn u_inv_pairs(
    s: &SurfaceDP2,
    firsts: &[PointDP2],
    seconds: &[PointDP2],
    n: usize,
    seed: u64,
) -> Vec<(PointDP2, PointDP2)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut all: Vec<(usize, usize)> =
        (0..firsts.len()).flat_map(|i| (0..seconds.len()).map(move |j| (i, j))).collect();
    all.shuffle(&mut rng);
    all.into_iter()
        .map(|(i, j)| (&firsts[i], &seconds[j]))
        .filter(|(p, q)| phi_domain(s, p, q).in_u_inv)
        .take(n)
        .map(|(p, q)| (p.clone(), q.clone()))
        .collect()
}

pub fn geiser_involution(s: &SurfaceDP2, points: &[PointDP2]) -> CheckResult {
    let mut r = CheckResult::new("geiser involution");
    for p in points {
        let ip = s.geiser(p);
        r.check(s.contains(&ip) && s.geiser(&ip) == *p && s.kappa(&ip) == s.kappa(p), || p.to_string());
    }
    r
}

/// `phi(P, phi(P, Q)) = Q` and `(P, phi(P, Q))` stays in `U_inv`.
pub fn phi_involution(s: &SurfaceDP2, pairs: &[(PointDP2, PointDP2)]) -> CheckResult {
    let mut r = CheckResult::new("phi involution on U_inv");
    for (p, q) in pairs {
        let ok = match phi(s, p, q) {
            Ok(x) => phi_domain(s, p, &x).in_u_inv && phi(s, p, &x).as_ref() == Ok(q),
            Err(_) => false,
        };
        r.check(ok, || format!("{p} {q}"));
    }
    r
}

/// The class `2(iota P) - (Q)` computed with origins `iota P` and `iota Q`.
pub fn origin_independence(s: &SurfaceDP2, pairs: &[(PointDP2, PointDP2)]) -> CheckResult {
    let k = Rationals;
    let mut r = CheckResult::new("origin independence");
    for (p, q) in pairs {
        let ok = (|| {
            let model = chord_model(s, p, q).ok()?;
            if model.classify(&k) == ModelClass::Reducible {
                return None;
            }
            let ip = model.from_surface(&k, &s.geiser(p))?;
            let cq = model.from_surface(&k, q)?;
            let iq = model.involution(&k, &cq);
            let a = lin_comb(&k, &model, &ip, &[(-1, cq.clone())]).ok()?;
            let b = lin_comb(&k, &model, &iq, &[(2, ip), (-1, cq)]).ok()?;
            Some(a.same(&k, &b) && model.to_surface(s, &a) == phi(s, p, q).ok()?)
        })();
        r.check(ok == Some(true), || format!("{p} {q}"));
    }
    r
}

/// `f1` outputs lie on the osculating section at `P0`, which is unique.
pub fn c_p_agreement(ctx: &CoverContext, params: &[Param]) -> CheckResult {
    let k = Rationals;
    let mut r = CheckResult::new("C_P agreement");
    let s = &ctx.surface;
    r.check(osculation_dimension(s, &ctx.p0) == Some(1), || format!("dimension at {}", ctx.p0));
    for a in params {
        match ctx.f1(*a) {
            Ok(x) => r.check(s.contains(&x) && k.is_zero(&ctx.section.eval(&k, &x)), || format!("{a}")),
            // finitely many pencil members are bitangent
            Err(_) => continue,
        }
    }
    r
}

/// Osculation systems at very general points have one-dimensional solutions.
pub fn osculation_uniqueness(s: &SurfaceDP2, points: &[PointDP2]) -> CheckResult {
    let mut r = CheckResult::new("osculation dimension 1");
    for p in points {
        r.check(osculation_dimension(s, p) == Some(1) && osculating_section(s, p).is_ok(), || p.to_string());
    }
    r
}

/// Rank 7 of the sections of `-2K` and rank 3 of `-K` on the points.
pub fn rank_proxy(points: &[PointDP2]) -> CheckResult {
    let mut r = CheckResult::new("rank proxy");
    r.check(section_rank(points) == 7, || format!("section rank {}", section_rank(points)));
    r.check(kappa_rank(points) == 3, || format!("kappa rank {}", kappa_rank(points)));
    r
}

/// At most four exceptional curves through a point off the ramification curve.
pub fn exceptional_bound(s: &SurfaceDP2, points: &[PointDP2]) -> CheckResult {
    let mut r = CheckResult::new("n_exceptional <= 4");
    for p in points.iter().filter(|p| !s.on_ramification(p)) {
        let c = classify_point(s, p);
        r.check(c.n_exceptional <= 4, || format!("{p}: {}", c.n_exceptional));
    }
    r
}

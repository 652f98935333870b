//! The surface `w^2 + f w = g` in `P(1,1,1,2)`, its points, the double
//! cover `kappa` and the Geiser involution.

pub mod io;
mod smooth;

use std::fmt;
use std::ops::Deref;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::{Dp2Error, Result};
use crate::exactalg::field::normalize_projective;
use crate::exactalg::{BaseField, Field, PrimeField, Rational, Rationals, TernForm};

pub use io::{parse_point, parse_surface_toml, surface_to_toml, SurfaceFile};
pub use smooth::is_smooth_quartic;

/// A point `(x:y:z:w)` of weighted projective space; `(x:y:z:w)` and
/// `(cx:cy:cz:c^2 w)` are the same point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WPoint<E> {
    pub x: [E; 3],
    pub w: E,
}

/// A rational point of the surface in canonical form: integer coordinates,
/// `gcd(x, y, z) = 1`, first nonzero of `x, y, z` positive.
pub type PointDP2 = WPoint<Rational>;

/// A point of the plane in canonical form.
pub type PointP2 = [Rational; 3];

impl fmt::Display for WPoint<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}:{}", self.x[0], self.x[1], self.x[2], self.w)
    }
}

impl fmt::Display for WPoint<u64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}:{}", self.x[0], self.x[1], self.x[2], self.w)
    }
}

pub fn format_p2(p: &PointP2) -> String {
    format!("{}:{}:{}", p[0], p[1], p[2])
}

/// The surface over an arbitrary base field; `b = f^2 + 4g` is the branch quartic.
#[derive(Clone, Debug)]
pub struct Dp2<F: BaseField> {
    k: F,
    f: TernForm<F::Elt>,
    g: TernForm<F::Elt>,
    b: TernForm<F::Elt>,
}

impl<F: BaseField> Dp2<F> {
    /// No smoothness check; see [`SurfaceDP2::validate`] and [`Dp2::is_smooth`].
    pub fn from_forms_unchecked(k: F, f: TernForm<F::Elt>, g: TernForm<F::Elt>) -> Self {
        let b = f.mul(&k, &f).add(&k, &g.scale(&k, &k.from_i64(4)));
        Dp2 { k, f, g, b }
    }

    pub fn field(&self) -> &F {
        &self.k
    }

    pub fn f(&self) -> &TernForm<F::Elt> {
        &self.f
    }

    pub fn g(&self) -> &TernForm<F::Elt> {
        &self.g
    }

    pub fn branch(&self) -> &TernForm<F::Elt> {
        &self.b
    }

    pub fn is_smooth(&self) -> bool {
        is_smooth_quartic(&self.k, &self.b)
    }

    /// `w^2 + f w - g` at the given coordinates.
    pub fn equation(&self, x: &[F::Elt; 3], w: &F::Elt) -> F::Elt {
        let k = &self.k;
        let fv = self.f.eval(k, x);
        k.sub(&k.mul(w, &k.add(w, &fv)), &self.g.eval(k, x))
    }

    /// Canonical representative of a weighted point.
    pub fn normalize(&self, p: &WPoint<F::Elt>) -> WPoint<F::Elt> {
        let k = &self.k;
        let c = k.normalizing_scale(&p.x);
        WPoint { x: p.x.clone().map(|v| k.mul(&v, &c)), w: k.mul(&p.w, &k.square(&c)) }
    }

    /// Checks the equation and returns the canonical representative.
    pub fn point(&self, x: [F::Elt; 3], w: F::Elt) -> Result<WPoint<F::Elt>> {
        if x.iter().all(|c| self.k.is_zero(c)) {
            return Err(Dp2Error::ZeroPoint);
        }
        if !self.k.is_zero(&self.equation(&x, &w)) {
            return Err(Dp2Error::NotOnSurface);
        }
        Ok(self.normalize(&WPoint { x, w }))
    }

    pub fn contains(&self, p: &WPoint<F::Elt>) -> bool {
        self.k.is_zero(&self.equation(&p.x, &p.w))
    }

    pub fn kappa(&self, p: &WPoint<F::Elt>) -> [F::Elt; 3] {
        normalize_p2(&self.k, &p.x)
    }

    pub fn geiser(&self, p: &WPoint<F::Elt>) -> WPoint<F::Elt> {
        let k = &self.k;
        let w = k.sub(&k.neg(&self.f.eval(k, &p.x)), &p.w);
        WPoint { x: p.x.clone(), w }
    }

    /// `2w + f`, the vertical coordinate of the double cover; it squares to `b`.
    pub fn vertical(&self, p: &WPoint<F::Elt>) -> F::Elt {
        let k = &self.k;
        k.add(&k.add(&p.w, &p.w), &self.f.eval(k, &p.x))
    }

    pub fn on_ramification(&self, p: &WPoint<F::Elt>) -> bool {
        self.k.is_zero(&self.vertical(p))
    }

    /// All points above a plane point, found by solving the monic quadratic in `w`.
    pub fn lift(&self, x: &[F::Elt; 3]) -> Vec<WPoint<F::Elt>> {
        let k = &self.k;
        if x.iter().all(|c| k.is_zero(c)) {
            return Vec::new();
        }
        let disc = self.b.eval(k, x);
        let fv = self.f.eval(k, x);
        let two = k.from_i64(2);
        let Some(r) = k.sqrt(&disc) else {
            return Vec::new();
        };
        let mut out = vec![self.normalize(&WPoint { x: x.clone(), w: k.div(&k.sub(&r, &fv), &two) })];
        if !k.is_zero(&r) {
            out.push(self.normalize(&WPoint { x: x.clone(), w: k.div(&k.neg(&k.add(&r, &fv)), &two) }));
        }
        out
    }
}

pub fn normalize_p2<F: BaseField>(k: &F, x: &[F::Elt; 3]) -> [F::Elt; 3] {
    let v = normalize_projective(k, x);
    [v[0].clone(), v[1].clone(), v[2].clone()]
}

/// Same plane point up to scaling.
pub fn same_p2<F: Field>(k: &F, a: &[F::Elt; 3], b: &[F::Elt; 3]) -> bool {
    (0..3).all(|i| {
        let j = (i + 1) % 3;
        k.mul(&a[i], &b[j]) == k.mul(&a[j], &b[i])
    })
}

/// A validated surface over `Q` with integral, jointly primitive `f`, `g`
/// and smooth branch quartic.
#[derive(Clone, Debug)]
pub struct SurfaceDP2 {
    inner: Dp2<Rationals>,
    mu: Rational,
}

impl Deref for SurfaceDP2 {
    type Target = Dp2<Rationals>;
    fn deref(&self) -> &Dp2<Rationals> {
        &self.inner
    }
}

impl SurfaceDP2 {
    pub fn validate(f: TernForm<Rational>, g: TernForm<Rational>) -> Result<Self> {
        let k = Rationals;
        if (!f.is_zero() && f.degree() != 2) || (!g.is_zero() && g.degree() != 4) {
            return Err(Dp2Error::WrongDegrees);
        }
        let f = if f.degree() == 2 { f } else { TernForm::zero(2) };
        let g = if g.degree() == 4 { g } else { TernForm::zero(4) };
        let mu = normalizing_mu(&f, &g);
        let f = f.scale(&k, &mu);
        let g = g.scale(&k, &(&mu * &mu));
        let inner = Dp2::from_forms_unchecked(k, f, g);
        if !inner.is_smooth() {
            return Err(Dp2Error::SingularBranchCurve);
        }
        Ok(SurfaceDP2 { inner, mu })
    }

    pub fn from_i64_terms(f: &[([u32; 3], i64)], g: &[([u32; 3], i64)]) -> Result<Self> {
        let k = Rationals;
        Self::validate(TernForm::from_i64_terms(&k, 2, f), TernForm::from_i64_terms(&k, 4, g))
    }

    /// The scaling `(f, g, w) -> (mu f, mu^2 g, mu w)` applied by [`Self::validate`].
    pub fn mu(&self) -> &Rational {
        &self.mu
    }

    pub fn dp2(&self) -> &Dp2<Rationals> {
        &self.inner
    }

    /// Point given in the coordinates of the model before normalization.
    pub fn point_from_original(&self, x: [Rational; 3], w: Rational) -> Result<PointDP2> {
        let w = &w * &self.mu;
        self.point(x, w)
    }

    /// Reduction modulo an odd prime (no smoothness check).
    pub fn reduce_mod(&self, p: u64) -> Dp2<PrimeField> {
        let kp = PrimeField::new(p);
        let red = |c: &Rational| kp.reduce(c).expect("integral coefficients");
        Dp2::from_forms_unchecked(kp, self.f.map(&kp, red), self.g.map(&kp, red))
    }

    /// Reduction of a canonical point; `None` when it degenerates to `(0:0:0)`.
    pub fn reduce_point(&self, p: u64, pt: &PointDP2) -> Option<WPoint<u64>> {
        let kp = PrimeField::new(p);
        let x = pt.x.clone().map(|c| kp.reduce(&c).expect("integral point"));
        if x.iter().all(|c| *c == 0) {
            return None;
        }
        let w = kp.reduce(&pt.w).expect("integral point");
        let c = kp.normalizing_scale(&x);
        Some(WPoint { x: x.map(|v| kp.mul(&v, &c)), w: kp.mul(&w, &kp.square(&c)) })
    }

    /// All points of height exactly `h`, sorted lexicographically.
    pub fn points_of_height(&self, h: i64) -> Vec<PointDP2> {
        let k = Rationals;
        let mut out = Vec::new();
        for a in 0..=h {
            for b in -h..=h {
                for c in -h..=h {
                    let first = [a, b, c].into_iter().find(|&v| v != 0);
                    if first.is_none_or(|v| v < 0) || a.max(b.abs()).max(c.abs()) != h || a.gcd(&b).gcd(&c) != 1 {
                        continue;
                    }
                    out.extend(self.lift(&[k.from_i64(a), k.from_i64(b), k.from_i64(c)]));
                }
            }
        }
        out.sort_by(|p, q| (&p.x, &p.w).cmp(&(&q.x, &q.w)));
        out
    }

    /// All points with `max(|x|, |y|, |z|) <= bound`, sorted by height and
    /// then lexicographically.
    pub fn small_points(&self, bound: i64) -> Vec<PointDP2> {
        (1..=bound).flat_map(|h| self.points_of_height(h)).collect()
    }

    /// Height of a canonical point: the largest `|x|, |y|, |z|`.
    pub fn height(pt: &PointDP2) -> BigInt {
        pt.x.iter().map(|c| c.numer().abs()).max().unwrap()
    }
}

/// The positive `mu` making `mu f`, `mu^2 g` integral with no common
/// `c > 1` such that `c | mu f` and `c^2 | mu^2 g`.
fn normalizing_mu(f: &TernForm<Rational>, g: &TernForm<Rational>) -> Rational {
    let den_f = f.terms().values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let den_g = g.terms().values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let mu0 = Rational::from_integer(den_f * den_g);
    let cf = f.terms().values().fold(BigInt::zero(), |a, c| a.gcd(&(c * &mu0).to_integer()));
    let cg = g.terms().values().fold(BigInt::zero(), |a, c| a.gcd(&(c * &mu0 * &mu0).to_integer()));
    let h = if cf.is_zero() { cg } else { cf.pow(2).gcd(&cg) };
    if h.is_zero() {
        return mu0;
    }
    mu0 / Rational::from_integer(square_root_of_square_part(&h))
}

/// Largest `c` with `c^2 | h`, by trial division followed by a perfect
/// square test on the cofactor.
fn square_root_of_square_part(h: &BigInt) -> BigInt {
    let mut n = h.abs();
    let mut c = BigInt::one();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(100_000);
    while &p * &p <= n && p <= limit {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            c *= &p;
        }
        p += 1;
    }
    if let Some(s) = crate::exactalg::field::int_sqrt_exact(&n) {
        c *= s;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rationals.from_i64(n)
    }

    pub(crate) fn s0() -> SurfaceDP2 {
        SurfaceDP2::from_i64_terms(&[], &[([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)]).unwrap()
    }

    fn sk() -> SurfaceDP2 {
        SurfaceDP2::from_i64_terms(&[], &[([3, 1, 0], 1), ([0, 3, 1], 1), ([1, 0, 3], 1)]).unwrap()
    }

    #[test]
    fn validation() {
        assert!(matches!(
            SurfaceDP2::from_i64_terms(&[], &[([4, 0, 0], 1), ([0, 4, 0], -1)]),
            Err(Dp2Error::SingularBranchCurve)
        ));
        let k = Rationals;
        let g = TernForm::from_terms(&k, 4, [([4, 0, 0], Rational::new(4.into(), 9.into())), ([0, 4, 0], q(4)), ([0, 0, 4], q(8))])
            .unwrap();
        let s = SurfaceDP2::validate(TernForm::zero(2), g).unwrap();
        // (4/9, 4, 8) scaled by mu^2 = 9/4 gives (1, 9, 18)
        assert_eq!(s.mu(), &Rational::new(3.into(), 2.into()));
        assert_eq!(s.g().coeff(&k, &[0, 4, 0]), q(9));
    }

    #[test]
    fn points_and_involution() {
        let s = s0();
        assert_eq!(s.point([q(1), q(0), q(0)], q(1)).unwrap().to_string(), "1:0:0:1");
        assert_eq!(s.point([q(2), q(0), q(0)], q(4)).unwrap().to_string(), "1:0:0:1");
        assert_eq!(s.point([q(-2), q(0), q(0)], q(4)).unwrap().to_string(), "1:0:0:1");
        assert_eq!(s.point([q(1), q(1), q(0)], q(1)), Err(Dp2Error::NotOnSurface));
        let p = s.point([q(1), q(0), q(0)], q(1)).unwrap();
        assert_eq!(s.geiser(&p).to_string(), "1:0:0:-1");
        assert_eq!(s.geiser(&s.geiser(&p)), p);
        assert!(!s.on_ramification(&p));
        let lifts: Vec<String> = s.lift(&[q(1), q(0), q(0)]).iter().map(|p| p.to_string()).collect();
        assert_eq!(lifts, vec!["1:0:0:1", "1:0:0:-1"]);
        assert!(s.lift(&[q(1), q(1), q(0)]).is_empty());

        let t = sk();
        let r = t.point([q(0), q(0), q(1)], q(0)).unwrap();
        assert!(t.on_ramification(&r));
        assert_eq!(t.geiser(&r), r);
        assert_eq!(t.lift(&[q(0), q(0), q(1)]), vec![r]);
        let big = t.point([q(-4), q(6), q(5)], q(14)).unwrap();
        assert_eq!(big.to_string(), "4:-6:-5:14");
    }

    #[test]
    fn reduction() {
        let s = sk();
        let p = s.point([q(1), q(-2), q(3)], q(1)).unwrap();
        let sp = s.reduce_mod(7);
        let pp = s.reduce_point(7, &p).unwrap();
        assert!(sp.contains(&pp));
    }
}

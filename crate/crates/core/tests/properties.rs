use dp2_core::covers::Param;
use dp2_core::exactalg::resultant::{modular_gcd_z, subresultant_gcd_z, z_primitive};
use dp2_core::exactalg::{factor_rational, resultant, Field, Poly, PolyOps, Rationals, TernForm};
use dp2_core::genus1::{Cubic, WPt};
use dp2_core::surface::io::parse_point;
use dp2_core::{Integer, Rational, SurfaceDP2};
use num_integer::Integer as _;
use proptest::prelude::*;

fn poly(c: &[i64]) -> Poly<Rational> {
    Poly::from_i64s(&Rationals, c)
}

fn nonzero_poly(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, 1..=max_len).prop_filter("nonzero", |v| v.iter().any(|&c| c != 0))
}

fn same_up_to_sign(a: &[Integer], b: &[Integer]) -> bool {
    a == b || a.iter().zip(b).all(|(x, y)| x == &-y.clone()) && a.len() == b.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn modular_gcd_agrees_with_subresultants(a in nonzero_poly(5), b in nonzero_poly(5), c in nonzero_poly(4)) {
        let k = Rationals;
        let (pa, pb, pc) = (poly(&a), poly(&b), poly(&c));
        let (ac, bc) = (k.poly_mul(&pa, &pc), k.poly_mul(&pb, &pc));
        let to_z = |p: &Poly<Rational>| p.coeffs().iter().map(|c| c.to_integer()).collect::<Vec<_>>();
        let g = modular_gcd_z(&to_z(&ac), &to_z(&bc));
        prop_assert!(same_up_to_sign(&g, &z_primitive(&subresultant_gcd_z(&to_z(&ac), &to_z(&bc)))));
        // c divides the gcd
        let gq = Poly::from_coeffs(&k, g.iter().map(|x| Rational::from_integer(x.clone())).collect());
        let (_, r) = k.poly_divrem(&gq, &pc);
        prop_assert!(r.is_zero());
    }

    #[test]
    fn factorization_multiplies_back(a in nonzero_poly(4), b in nonzero_poly(4)) {
        let k = Rationals;
        let f = k.poly_mul(&poly(&a), &poly(&b));
        prop_assume!(f.degree().unwrap_or(0) > 0);
        let factors = factor_rational(&f).unwrap();
        let mut prod = Poly::constant(&k, k.one());
        for (g, m) in &factors {
            for _ in 0..*m {
                prod = k.poly_mul(&prod, g);
            }
        }
        // equal up to a constant
        let scale = k.div(f.lc(), prod.lc());
        prop_assert_eq!(k.poly_scale(&prod, &scale), f);
    }

    #[test]
    fn resultant_is_multiplicative(a in nonzero_poly(4), b in nonzero_poly(3), c in nonzero_poly(4)) {
        let k = Rationals;
        let (pa, pb, pc) = (poly(&a), poly(&b), poly(&c));
        let lhs = resultant(&k, &k.poly_mul(&pa, &pb), &pc);
        let rhs = k.mul(&resultant(&k, &pa, &pc), &resultant(&k, &pb, &pc));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn params_are_canonical(u in -1000i64..=1000, v in -1000i64..=1000) {
        prop_assume!(u != 0 || v != 0);
        let p = Param::new(u, v).unwrap();
        prop_assert_eq!(p.u.gcd(&p.v), 1);
        prop_assert!(p.u > 0 || (p.u == 0 && p.v > 0));
        prop_assert_eq!(p.u * v, p.v * u);
        prop_assert_eq!(Param::new(-3 * u, -3 * v).unwrap(), p);
    }

    #[test]
    fn point_strings_round_trip(v in prop::collection::vec((-10_000i64..=10_000, 1i64..=50), 4)) {
        let q: Vec<Rational> = v.iter().map(|&(n, d)| Rational::new(n.into(), d.into())).collect();
        let text = format!("{}:{}:{}:{}", q[0], q[1], q[2], q[3]);
        let (x, w) = parse_point(&text).unwrap();
        prop_assert_eq!(x.to_vec(), q[..3].to_vec());
        prop_assert_eq!(w, q[3].clone());
    }

    #[test]
    fn group_law_on_cubics(a in -5i64..=5, x0 in -6i64..=6, y0 in -6i64..=6, n in -4i64..=4) {
        let k = Rationals;
        let r = |v: i64| k.from_i64(v);
        // the curve y^2 = x^3 + a x + b through (x0, y0)
        let b = y0 * y0 - x0 * x0 * x0 - a * x0;
        let e = Cubic { a1: r(0), a2: r(0), a3: r(0), a4: r(a), a6: r(b) };
        prop_assume!(!k.is_zero(&e.discriminant(&k)));
        let p = WPt::Affine(r(x0), r(y0));
        prop_assert!(e.contains(&k, &p));
        prop_assert_eq!(e.add(&k, &p, &e.neg(&k, &p)).unwrap(), WPt::Infinity);
        let q = e.mul(&k, 3, &p).unwrap();
        let sum = e.add(&k, &e.add(&k, &p, &p).unwrap(), &p).unwrap();
        prop_assert_eq!(&q, &sum);
        // associativity with a third multiple
        let t = e.mul(&k, n, &p).unwrap();
        prop_assert!(e.contains(&k, &t));
        let lhs = e.add(&k, &e.add(&k, &p, &q).unwrap(), &t).unwrap();
        let rhs = e.add(&k, &p, &e.add(&k, &q, &t).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(e.mul(&k, n + 4, &p).unwrap(), e.add(&k, &t, &e.mul(&k, 4, &p).unwrap()).unwrap());
    }

    #[test]
    fn geiser_is_an_involution(
        f in prop::collection::vec(-3i64..=3, 6),
        g in prop::collection::vec(-3i64..=3, 15),
        pt in prop::collection::vec(-5i64..=5, 4),
        l in prop::collection::vec(-2i64..=2, 3),
    ) {
        let k = Rationals;
        let x = [k.from_i64(pt[0]), k.from_i64(pt[1]), k.from_i64(pt[2])];
        let w = k.from_i64(pt[3]);
        let lin = |p: &[Rational; 3]| (0..3).fold(k.zero(), |acc, i| k.add(&acc, &k.mul(&k.from_i64(l[i]), &p[i])));
        prop_assume!(!k.is_zero(&lin(&x)));
        let fm = TernForm::from_i64_terms(&k, 2, &zip_terms(2, &f));
        let mut gm = TernForm::from_i64_terms(&k, 4, &zip_terms(4, &g));
        // add a multiple of l^4 so the surface passes through (x : w)
        let defect = k.sub(&k.add(&k.square(&w), &k.mul(&fm.eval(&k, &x), &w)), &gm.eval(&k, &x));
        let c = k.div(&defect, &k.pow(&lin(&x), 4));
        let l4 = TernForm::from_i64_terms(&k, 1, &[([1, 0, 0], l[0]), ([0, 1, 0], l[1]), ([0, 0, 1], l[2])]);
        let l2 = l4.mul(&k, &l4);
        gm = gm.add(&k, &l2.mul(&k, &l2).scale(&k, &c));
        let Ok(s) = SurfaceDP2::validate(fm, gm) else { return Ok(()) };
        let p = s.point_from_original(x, w).unwrap();
        let ip = s.geiser(&p);
        prop_assert!(s.contains(&ip));
        prop_assert_eq!(s.geiser(&ip), p.clone());
        prop_assert_eq!(s.kappa(&ip), s.kappa(&p));
        prop_assert_eq!(ip == p, s.on_ramification(&p));
    }
}

fn zip_terms(d: u32, c: &[i64]) -> Vec<([u32; 3], i64)> {
    dp2_core::exactalg::forms::monomials(d).into_iter().zip(c.iter().copied()).collect()
}

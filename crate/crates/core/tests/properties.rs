mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use qfleck_core::cyclotomic::{cyclotomic, phi_valuation};
use qfleck_core::flecksums::XPoly;
use qfleck_core::qbinomial::qbinom;
use qfleck_core::{CycPoly, Poly, RingCtx};

fn small_poly(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-50i64..=50, 0..max_len).prop_map(|c| Poly::from_i64(&c))
}

fn monic_poly(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-20i64..=20, 0..max_len).prop_map(|mut c| {
        c.push(1);
        Poly::from_i64(&c)
    })
}

fn cpoly(ctx: RingCtx, max_len: usize) -> impl Strategy<Value = CycPoly> {
    let dim = ctx.dim();
    prop::collection::vec(prop::collection::vec(-9i64..=9, dim), 0..max_len).prop_map(move |rows| {
        let coeffs: Vec<_> = rows
            .into_iter()
            .map(|r| ctx.elem_from_coords(r.into_iter().map(BigInt::from).collect()).unwrap())
            .collect();
        ctx.cpoly_from_coeffs(&coeffs).unwrap()
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in small_poly(12), b in small_poly(12), c in small_poly(12)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Poly::zero());
        prop_assert_eq!(&a * &Poly::one(), a.clone());
    }

    #[test]
    fn large_products_match_schoolbook(a in small_poly(200), b in small_poly(130)) {
        prop_assert_eq!(&a * &b, a.mul_schoolbook(&b));
    }

    #[test]
    fn exact_division_inverts_multiplication(a in small_poly(15), b in small_poly(10)) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).divexact(&b).unwrap(), a);
    }

    #[test]
    fn monic_division_round_trip(a in small_poly(20), b in monic_poly(6)) {
        let (quot, rem) = a.divmod_monic(&b).unwrap();
        prop_assert_eq!(&(&quot * &b) + &rem, a);
        prop_assert!(rem.degree().is_none_or(|d| d < b.degree().unwrap()));
    }

    #[test]
    fn derivative_product_rule(a in small_poly(10), b in small_poly(10)) {
        let lhs = (&a * &b).derivative(1);
        let rhs = &(&a.derivative(1) * &b) + &(&a * &b.derivative(1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in small_poly(10), b in small_poly(10), x in -6i64..=6) {
        prop_assert_eq!((&a * &b).eval_i64(x), a.eval_i64(x) * b.eval_i64(x));
        prop_assert_eq!((&a + &b).eval_i64(x), a.eval_i64(x) + b.eval_i64(x));
    }

    #[test]
    fn text_round_trip(a in small_poly(12)) {
        prop_assert_eq!(a.to_string().parse::<Poly>().unwrap(), a);
    }

    #[test]
    fn valuation_counts_inserted_factors(m in 1usize..16, e in 0u32..4, a in monic_poly(6)) {
        let phi = cyclotomic(m);
        let base = phi_valuation(&a, m).unwrap();
        let p = &a * &phi.pow(e);
        prop_assert_eq!(phi_valuation(&p, m).unwrap(), base + e);
    }

    #[test]
    fn cyclotomic_ring_axioms((a, b, d) in (1usize..=6).prop_flat_map(|c| {
        let ctx = RingCtx::new(c);
        (cpoly(ctx.clone(), 6), cpoly(ctx.clone(), 6), cpoly(ctx, 6))
    })) {
        let ctx = a.ctx().clone();
        let ab = ctx.cpoly_mul(&a, &b).unwrap();
        prop_assert_eq!(&ab, &ctx.cpoly_mul(&b, &a).unwrap());
        prop_assert_eq!(
            ctx.cpoly_mul(&ab, &d).unwrap(),
            ctx.cpoly_mul(&a, &ctx.cpoly_mul(&b, &d).unwrap()).unwrap()
        );
        let sum = ctx.cpoly_add(&b, &d).unwrap();
        prop_assert_eq!(
            ctx.cpoly_mul(&a, &sum).unwrap(),
            ctx.cpoly_add(&ab, &ctx.cpoly_mul(&a, &d).unwrap()).unwrap()
        );
        prop_assert_eq!(ctx.parse_cpoly(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn rational_case_agrees_with_integer_polys(a in small_poly(10), b in small_poly(10)) {
        let ctx = RingCtx::new(1);
        let prod = ctx.cpoly_mul(&ctx.embed(&a), &ctx.embed(&b)).unwrap();
        prop_assert_eq!(prod.to_bigpoly().unwrap(), &a * &b);
    }

    #[test]
    fn exact_division_in_cyclotomic_ring(c in 1usize..=5, m in 1usize..12, e in 1u32..3) {
        let ctx = RingCtx::new(c);
        let base = ctx.parse_cpoly("z*q^3+(1-z)*q+2").unwrap();
        let divisor = cyclotomic(m).pow(e);
        let p = base.mul_int_poly(&divisor);
        prop_assert_eq!(p.divexact_int(&divisor).unwrap(), base.clone());
        prop_assert!(p.phi_valuation(m).unwrap() >= e);
    }

    #[test]
    fn xpoly_shift_composes(coeffs in prop::collection::vec(-5i64..=5, 1..5), s in -4i64..=4, t in -4i64..=4, x in -5i64..=5) {
        let ctx = RingCtx::new(3);
        let p = XPoly::from_i64(&ctx, &coeffs);
        prop_assert_eq!(p.shift(s).shift(t), p.shift(s + t));
        prop_assert_eq!(p.shift(s).eval(x), p.eval(x + s));
    }

    #[test]
    fn qbinomial_symmetry_and_specialization(n in 0usize..40, m in 0usize..40) {
        prop_assume!(m <= n);
        prop_assert_eq!(qbinom(n, m as i64), qbinom(n, (n - m) as i64));
        prop_assert_eq!(qbinom(n, m as i64).eval_i64(1), common::binom(n as u64, m as u64));
    }
}

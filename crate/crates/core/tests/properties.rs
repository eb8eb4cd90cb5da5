use proptest::prelude::*;

use uniformizer_core::{
    CycloElement, CycloRing, PadicInt, PadicOrd, TowerElement, TowerRing, Valuation,
};

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7, 11, 13])
}

fn padic_triple() -> impl Strategy<Value = (u64, u32, u64, u64, u64)> {
    (prime(), 1u32..8).prop_flat_map(|(p, n)| {
        let m = p.pow(n);
        (Just(p), Just(n), 0..m, 0..m, 0..m)
    })
}

proptest! {
    #[test]
    fn ring_axioms((p, n, a, b, c) in padic_triple()) {
        let (a, b, c) = (
            PadicInt::new(p, n, a).unwrap(),
            PadicInt::new(p, n, b).unwrap(),
            PadicInt::new(p, n, c).unwrap(),
        );
        let ab_c = a.try_mul(&b).unwrap().try_mul(&c).unwrap();
        let a_bc = a.try_mul(&b.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let lhs = a.try_mul(&b.try_add(&c).unwrap()).unwrap();
        let rhs = a.try_mul(&b).unwrap().try_add(&a.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(a.try_add(&b).unwrap().try_sub(&b).unwrap(), a);
    }

    #[test]
    fn ord_is_additive(p in prime(), n in 2u32..8, x in 1u64..1000, y in 1u64..1000, i in 0u32..4, j in 0u32..4) {
        let a = PadicInt::new(p, n, x * p.pow(i)).unwrap();
        let b = PadicInt::new(p, n, y * p.pow(j)).unwrap();
        if let (PadicOrd::Finite(ka), PadicOrd::Finite(kb)) = (a.ord(), b.ord()) {
            if ka + kb < n {
                prop_assert_eq!(a.try_mul(&b).unwrap().ord(), PadicOrd::Finite(ka + kb));
            }
        }
    }

    #[test]
    fn inverse_is_an_involution((p, n, a, _b, _c) in padic_triple()) {
        let a = PadicInt::new(p, n, a).unwrap();
        if a.mod_p() != 0 {
            let inv = a.inv_unit().unwrap();
            prop_assert_eq!(inv.try_mul(&a).unwrap().residue(), 1 % p.pow(n));
            prop_assert_eq!(inv.inv_unit().unwrap(), a);
        } else {
            prop_assert!(a.inv_unit().is_err());
        }
    }

    #[test]
    fn rational_denominator_cancels(p in prime(), n in 1u32..6, num in -500i64..500, den in 1i64..500) {
        prop_assume!(den % p as i64 != 0);
        let x = PadicInt::from_rational(num, den, p, n).unwrap();
        let back = x.try_mul(&PadicInt::from_i64(p, n, den).unwrap()).unwrap();
        prop_assert_eq!(back.residue(), PadicInt::from_i64(p, n, num).unwrap().residue());
    }
}

/// `unit * p^k * pi^i` plus terms of strictly larger valuation.
fn monomial_built(
    ring: &std::sync::Arc<CycloRing>,
    unit: u64,
    k: u32,
    i: usize,
    noise: &[u64],
) -> (CycloElement, i64) {
    let p = ring.prime();
    let n = ring.precision();
    let phi = ring.degree();
    let lead = CycloElement::pi_pow(ring, i)
        .scale(&PadicInt::new(p, n, (unit % (p - 1) + 1) * p.pow(k)).unwrap())
        .unwrap();
    let v = (i + phi * k as usize) as i64;
    let mut x = lead;
    for (s, &c) in noise.iter().enumerate() {
        let extra = CycloElement::pi_pow(ring, v as usize + 1 + s)
            .scale(&PadicInt::new(p, n, c).unwrap())
            .unwrap();
        x = x.try_add(&extra).unwrap();
    }
    (x, v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclo_valuation_is_multiplicative(
        p in prop::sample::select(vec![3u64, 5]),
        u1 in 0u64..100, u2 in 0u64..100,
        k1 in 0u32..2, k2 in 0u32..2,
        i1 in 0usize..6, i2 in 0usize..6,
        noise in prop::collection::vec(0u64..50, 0..4),
    ) {
        let ring = CycloRing::new(p, 2, 6).unwrap();
        let (x, vx) = monomial_built(&ring, u1, k1, i1, &noise);
        let (y, vy) = monomial_built(&ring, u2, k2, i2, &noise);
        prop_assert_eq!(x.valuation(), Valuation::Exact(vx));
        prop_assert_eq!(y.valuation(), Valuation::Exact(vy));
        prop_assert_eq!(x.try_mul(&y).unwrap().valuation(), Valuation::Exact(vx + vy));
    }

    #[test]
    fn norm_is_multiplicative_on_monomials(
        p in prop::sample::select(vec![3u64, 5]),
        a in (0usize..4, 0usize..3, 0u32..2),
        b in (0usize..4, 0usize..3, 0u32..2),
    ) {
        let ring = TowerRing::new(p, 2, 1, 6).unwrap();
        let mono = |(i, j, k): (usize, usize, u32)| {
            TowerElement::monomial(&ring, i, j.min(p as usize - 1), PadicInt::new(p, 6, 2 * p.pow(k)).unwrap()).unwrap()
        };
        let (x, y) = (mono(a), mono(b));
        let vx = x.norm_valuation().unwrap().value().unwrap();
        let vy = y.norm_valuation().unwrap().value().unwrap();
        let vxy = x.try_mul(&y).unwrap().norm_valuation().unwrap();
        prop_assert_eq!(vxy, Valuation::Exact(vx + vy));
    }

    #[test]
    fn graded_bound_never_exceeds_norm(
        coeffs in prop::collection::vec((0usize..6, 0usize..3, 0u64..27), 1..5),
    ) {
        let ring = TowerRing::new(3, 2, 1, 6).unwrap();
        let mut x = TowerElement::zero(&ring);
        for (i, j, c) in coeffs {
            x = x.try_add(&TowerElement::monomial(&ring, i, j, PadicInt::new(3, 6, c).unwrap()).unwrap()).unwrap();
        }
        let graded = x.graded_val_bound();
        match x.norm_valuation() {
            Ok(norm) => {
                match (graded, norm) {
                    (Valuation::Infinite, n) => prop_assert_eq!(n, Valuation::Infinite),
                    (g, n) => {
                        prop_assert!(g.value().unwrap() <= n.value().unwrap());
                        if g.is_exact() {
                            prop_assert_eq!(g, n);
                        }
                    }
                }
            }
            Err(uniformizer_core::Error::PrecisionExhausted { .. }) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }
}

mod common;

use mnesor::expr::{parse, simplify_counted};
use mnesor::{Carrier, ComplementConfig, FuzzySet, Grade, Scalar};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;

fn ulps(a: f64, b: f64) -> u64 {
    fn ordered(x: f64) -> i64 {
        let bits = x.to_bits() as i64;
        if bits < 0 {
            i64::MIN - bits
        } else {
            bits
        }
    }
    ordered(a).abs_diff(ordered(b))
}

fn grade() -> impl Strategy<Value = Grade> {
    prop_oneof![
        1 => Just(Grade::ZERO),
        1 => Just(Grade::ONE),
        8 => (0.0..=1.0f64).prop_map(|v| Grade::new(v).unwrap()),
    ]
}

fn k() -> impl Strategy<Value = f64> {
    0.1..=5.0f64
}

fn lambda() -> impl Strategy<Value = f64> {
    prop_oneof![Just(1.0), 0.05..=4.0f64]
}

fn cfg(k: f64) -> ComplementConfig {
    ComplementConfig::new(k).unwrap()
}

fn s(v: f64) -> Scalar {
    Scalar::new(v).unwrap()
}

fn carrier() -> Carrier {
    common::discrete_carrier(4)
}

fn set() -> impl Strategy<Value = FuzzySet> {
    proptest::collection::vec(grade(), 4).prop_map(|g| FuzzySet::from_grades(carrier(), g).unwrap())
}

proptest! {
    #[test]
    fn ck_involution(k in k(), x in grade()) {
        let c = cfg(k);
        prop_assert!(c.apply(c.apply(x)).approx_eq(x, TOL));
    }

    #[test]
    fn ck_log_roundtrip_within_two_ulps(k in k(), e in -300.0..300.0f64) {
        let l = -(10f64.powf(e));
        let back = k / (k / l);
        prop_assert!(ulps(back, l) <= 2, "l = {l}, back = {back}");
    }

    #[test]
    fn ck_power_identities(k in k(), n in 0.05..=4.0f64, x in grade()) {
        let left = cfg(k).apply(x).pow(n).unwrap();
        prop_assert!(left.approx_eq(cfg(k * n).apply(x), TOL));
        let right = cfg(k).apply(x.pow(n).unwrap());
        prop_assert!(right.approx_eq(cfg(k / n).apply(x), TOL));
    }

    #[test]
    fn ck_decreasing_on_grid(k in k()) {
        let c = cfg(k);
        let ys: Vec<f64> = (0..=1000)
            .map(|i| c.apply(Grade::new(i as f64 / 1000.0).unwrap()).value())
            .collect();
        prop_assert!(ys.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn scale_composition_and_max(a in grade(), l in lambda(), m in lambda()) {
        let lhs = a.scale(s(l)).unwrap().scale(s(m)).unwrap();
        prop_assert!(lhs.approx_eq(a.scale(s(l * m)).unwrap(), TOL));
        let joined = a.scale(s(l)).unwrap().max(a.scale(s(m)).unwrap());
        prop_assert!(joined.approx_eq(a.scale(s(l.max(m))).unwrap(), TOL));
    }

    #[test]
    fn linear_log_coherence(e in -300.0..=0.0f64, u in 0.0..=1.0f64) {
        for v in [10f64.powf(e), u.max(1e-300)] {
            let g = Grade::new(v).unwrap();
            prop_assert!((g.log_value().exp() - v).abs() <= 1e-12);
            let back = Grade::from_log(g.log_value()).unwrap();
            prop_assert!((back.value() - v).abs() <= 1e-12);
        }
    }

    #[test]
    fn semimodule_axioms(a in set(), b in set(), l in lambda(), m in lambda()) {
        prop_assert!(a.scale(Scalar::ONE).unwrap().approx_eq(&a, TOL));
        let lhs = a.scale(s(l)).unwrap().union(&a.scale(s(m)).unwrap()).unwrap();
        prop_assert!(lhs.approx_eq(&a.scale(s(l.max(m))).unwrap(), TOL));
        let lhs = a.union(&b).unwrap().scale(s(l)).unwrap();
        let rhs = a.scale(s(l)).unwrap().union(&b.scale(s(l)).unwrap()).unwrap();
        prop_assert!(lhs.approx_eq(&rhs, TOL));
        let lhs = a.scale(s(l)).unwrap().scale(s(m)).unwrap();
        prop_assert!(lhs.approx_eq(&a.scale(s(l * m)).unwrap(), TOL));
    }

    #[test]
    fn complement_axioms(a in set(), x in set(), l in lambda(), k in k()) {
        let c = cfg(k);
        prop_assert!(a.complement(c).complement(c).approx_eq(&a, TOL));
        let full = FuzzySet::full(carrier());
        prop_assert!(full.complement(c).approx_eq(&FuzzySet::empty(carrier()), 0.0));
        let lhs = a.scale(s(l)).unwrap().complement(c);
        let rhs = a.complement(c).scale(s(1.0 / l)).unwrap();
        prop_assert!(lhs.approx_eq(&rhs, TOL));
        let b = a.union(&x).unwrap();
        prop_assert!(b.complement(c).is_subset(&a.complement(c), TOL).unwrap());
    }

    #[test]
    fn meet_laws(a in set(), b in set(), d in set(), l in lambda(), k1 in k(), k2 in k()) {
        let (c1, c2) = (cfg(k1), cfg(k2));
        let m1 = a.intersect(&b, c1).unwrap();
        prop_assert!(m1.approx_eq(&a.intersect(&b, c2).unwrap(), TOL));
        prop_assert!(m1.approx_eq(&a.pointwise_min(&b).unwrap(), TOL));
        let lhs = a.scale(s(l)).unwrap().intersect(&b.scale(s(l)).unwrap(), c1).unwrap();
        prop_assert!(lhs.approx_eq(&m1.scale(s(l)).unwrap(), TOL));
        prop_assert!(a.union(&m1).unwrap().approx_eq(&a, TOL));
        prop_assert!(a.intersect(&a.union(&b).unwrap(), c1).unwrap().approx_eq(&a, TOL));
        prop_assert!(m1.approx_eq(&b.intersect(&a, c1).unwrap(), TOL));
        let left = m1.intersect(&d, c1).unwrap();
        let right = a.intersect(&b.intersect(&d, c1).unwrap(), c1).unwrap();
        prop_assert!(left.approx_eq(&right, TOL));
        prop_assert!(a.union(&b).unwrap().approx_eq(&b.union(&a).unwrap(), 0.0));
        prop_assert!(a.intersect(&a, c1).unwrap().approx_eq(&a, TOL));
    }

    #[test]
    fn order_laws(a in set(), b in set(), l in lambda()) {
        let ab = a.union(&b).unwrap();
        prop_assert!(a.is_subset(&ab, 0.0).unwrap());
        prop_assert!(a.intersect(&b, ComplementConfig::default()).unwrap().is_subset(&a, TOL).unwrap());
        let scaled = a.scale(s(l)).unwrap();
        if l <= 1.0 {
            prop_assert!(scaled.is_subset(&a, 1e-12).unwrap());
        }
        if l >= 1.0 {
            prop_assert!(a.is_subset(&scaled, 1e-12).unwrap());
        }
        let empty = FuzzySet::empty(carrier());
        if ab.approx_eq(&empty, 0.0) {
            prop_assert!(a.approx_eq(&empty, 0.0));
        }
        let small = if l > 1.0 { 1.0 / l } else { l };
        prop_assert!(empty.scale(s(small)).unwrap().approx_eq(&empty, 0.0));
        let full = FuzzySet::full(carrier());
        prop_assert!(full.scale(s(1.0 / small)).unwrap().approx_eq(&full, 0.0));
    }

    #[test]
    fn print_parse_roundtrip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = common::expr(&mut rng, 6);
        prop_assert_eq!(parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn simplify_sound_and_bounded(seed in any::<u64>(), k in k()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = common::expr(&mut rng, 6);
        let env = common::env(&mut rng, k);
        let (simple, steps) = simplify_counted(&e);
        let n = e.node_count();
        prop_assert!(steps <= n * n, "{steps} steps for {n} nodes");
        prop_assert!(simple.node_count() <= n);
        prop_assert!(env.eval(&simple).unwrap().approx_eq(&env.eval(&e).unwrap(), TOL), "{e} => {simple}");
        // normal form is a fixpoint
        prop_assert_eq!(simplify_counted(&simple).1, 0);
    }
}

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use proptest::prelude::*;
use unitforge::cyclotomic::{Certified, CyclotomicNumber, Precision};
use unitforge::freeness::{free_product_oracle, replay_violation, Verdict};
use unitforge::group::{catalog, FiniteGroup};
use unitforge::ring::GroupRingElement;
use unitforge::units::{bicyclic_left, bovdi_left};

/// One shared instance per key, so generated elements live in the same ring.
fn grp(key: &'static str) -> Arc<FiniteGroup> {
    static CACHE: OnceLock<Mutex<HashMap<&'static str, Arc<FiniteGroup>>>> = OnceLock::new();
    let mut cache = CACHE.get_or_init(Default::default).lock().unwrap();
    cache.entry(key).or_insert_with(|| catalog(key).unwrap().group).clone()
}

fn element(key: &'static str) -> impl Strategy<Value = GroupRingElement> {
    let g = grp(key);
    prop::collection::vec(-4i64..=4, g.order()).prop_map(move |c| GroupRingElement::from_int_coeffs(&g, &c).unwrap())
}

fn cyc(n: u64) -> impl Strategy<Value = CyclotomicNumber> {
    prop::collection::vec((-6i64..=6, 1i64..=3), n as usize)
        .prop_map(move |c| {
            let q: Vec<BigRational> = c.into_iter().map(|(a, b)| BigRational::new(a.into(), b.into())).collect();
            CyclotomicNumber::from_poly(n, &q)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_ring_axioms(a in element("d8"), b in element("d8"), c in element("d8")) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).augmentation(), a.augmentation() * b.augmentation());
        prop_assert_eq!((&a * &b).involution(), &b.involution() * &a.involution());
        prop_assert_eq!(a.involution().involution(), a.clone());
        prop_assert_eq!(a.canonical_hash() == b.canonical_hash(), a == b);
    }

    #[test]
    fn inverses_are_exact(a in element("q8")) {
        if let Ok(inv) = a.try_invert() {
            prop_assert!((&a * &inv).is_one());
            prop_assert!((&inv * &a).is_one());
        }
    }

    #[test]
    fn cyclotomic_field_axioms(a in cyc(12), b in cyc(12), c in cyc(12)) {
        let ab = a.checked_mul(&b).unwrap();
        prop_assert_eq!(ab.checked_mul(&c).unwrap(), a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.checked_mul(&b.checked_add(&c).unwrap()).unwrap(),
            ab.checked_add(&a.checked_mul(&c).unwrap()).unwrap()
        );
        if !a.is_zero() {
            prop_assert!(a.checked_mul(&a.inv().unwrap()).unwrap().is_one());
        }
        prop_assert_eq!(ab.norm_sq(), a.norm_sq().checked_mul(&b.norm_sq()).unwrap());
    }

    #[test]
    fn certified_modulus_matches_doubles(a in cyc(7), num in 0i64..20, den in 1i64..5) {
        let c = BigRational::new(num.into(), den.into());
        let exact = a.abs_cmp_certified(1, &c, Precision::default()).unwrap();
        let approx = a.embed(1).unwrap().modulus();
        let target = num as f64 / den as f64;
        match exact {
            Certified::Greater => prop_assert!(approx > target - 1e-9),
            Certified::Less => prop_assert!(approx < target + 1e-9),
            Certified::Equal => prop_assert!((approx - target).abs() < 1e-9),
            Certified::Undecided => prop_assert!(false, "undecided"),
        }
    }

    #[test]
    fn galois_action_is_a_ring_map(a in cyc(9), b in cyc(9), j in prop::sample::select(vec![1i64, 2, 4, 5, 7, 8])) {
        let ab = a.checked_mul(&b).unwrap();
        prop_assert_eq!(ab.galois(j).unwrap(), a.galois(j).unwrap().checked_mul(&b.galois(j).unwrap()).unwrap());
    }

    #[test]
    fn oracle_witnesses_replay(gi in 0usize..8, hi in 0usize..8, k in 1u64..4, bound in 2usize..7) {
        let g = grp("d8");
        let (x, h) = (gi, hi);
        prop_assume!(!g.is_in_normalizer(x, h));
        let oh = g.element_order(h) as u64;
        prop_assume!(k < oh);
        let u = bovdi_left(&g, k, x, h).unwrap();
        let ord = match u.predicted_order {
            unitforge::units::PredictedOrder::Finite(n) => n,
            _ => return Ok(()),
        };
        let w = bicyclic_left(&g, h, x).unwrap().element;
        let v = &(&w.try_invert().unwrap() * &u.element) * &w;
        let rep = free_product_oracle(&u.element, ord, &v, ord, bound).unwrap();
        let again = free_product_oracle(&u.element, ord, &v, ord, bound).unwrap();
        prop_assert_eq!(&rep, &again);
        if rep.verdict == Verdict::Violation {
            prop_assert!(replay_violation(&rep, &[("A", &u.element), ("B", &v)]).unwrap());
        } else {
            prop_assert_eq!(rep.verdict, Verdict::PassedToBound);
        }
    }
}

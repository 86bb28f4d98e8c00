use std::sync::OnceLock;

use proptest::prelude::*;
use rack_collapse::collapse::{
    find_type, verify, CollapseCertificate, CollapseKind, SearchOptions,
};
use rack_collapse::ffield::FieldCtx;
use rack_collapse::nichols::{verdict, BraidingMatrix, RootOfUnity, Witness};
use rack_collapse::permgrp::{centralizer_from_orbit, conjugacy_classes, Perm, PermGroup};
use rack_collapse::rackkit::{check_axioms_exhaustive, ConjClassRack};
use rack_collapse::ree_small::build_psl2;
use std::sync::Arc;

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

fn fields() -> &'static [Arc<FieldCtx>] {
    static F: OnceLock<Vec<Arc<FieldCtx>>> = OnceLock::new();
    F.get_or_init(|| {
        [(2, 3), (2, 5), (3, 3), (5, 2)]
            .iter()
            .map(|&(p, m)| FieldCtx::new(p, m, None).unwrap())
            .collect()
    })
}

proptest! {
    #[test]
    fn field_axioms(fi in 0usize..4, a in 0u64..1000, b in 0u64..1000, c in 0u64..1000) {
        let f = &fields()[fi];
        let q = f.q();
        let (a, b, c) = (f.from_int(a % q).unwrap(), f.from_int(b % q).unwrap(), f.from_int(c % q).unwrap());
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!((&a + &b).frobenius(), &a.frobenius() + &b.frobenius());
        prop_assert_eq!(a.pow(q), a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn perm_group_laws(a in perm(7), b in perm(7), c in perm(7)) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert_eq!(a.conj(&b.compose(&c)), a.conj(&b).compose(&a.conj(&c)));
        prop_assert!(a.pow(a.order() as i64).is_identity());
        for i in 0..7 {
            prop_assert_eq!(a.compose(&b).apply(i), a.apply(b.apply(i)));
        }
    }

    #[test]
    fn orbit_stabilizer(gens in proptest::collection::vec(perm(6), 1..3)) {
        let g = PermGroup::new(6, gens).unwrap();
        let cls = conjugacy_classes(&g, 10_000).unwrap();
        let mut total = 0;
        for c in &cls {
            prop_assert_eq!(c.len() as u64 * centralizer_from_orbit(&g, c).order(), g.order());
            total += c.len() as u64;
        }
        prop_assert_eq!(total, g.order());
    }

    #[test]
    fn rack_axioms_on_random_groups(gens in proptest::collection::vec(perm(6), 1..3)) {
        let g = PermGroup::new(6, gens).unwrap();
        for c in conjugacy_classes(&g, 10_000).unwrap() {
            let rack = ConjClassRack::from_orbit(&g, c);
            prop_assert!(check_axioms_exhaustive(&rack).passed());
        }
    }

    #[test]
    fn roots_of_unity_form_a_group(n1 in 1u64..40, k1 in 0u64..40, n2 in 1u64..40, k2 in 0u64..40, n3 in 1u64..40, k3 in 0u64..40) {
        let (x, y, z) = (RootOfUnity::new(n1, k1), RootOfUnity::new(n2, k2), RootOfUnity::new(n3, k3));
        prop_assert_eq!((x * y) * z, x * (y * z));
        prop_assert_eq!(x * y, y * x);
        prop_assert!((x * x.inv()).is_one());
        // exact rational check: k1/n1 + k2/n2 ≡ k/n mod 1
        let p = x * y;
        let lhs = (k1 % n1) as u128 * (n2 as u128) * (p.order() as u128) + (k2 % n2) as u128 * (n1 as u128) * (p.order() as u128);
        let rhs = p.exponent() as u128 * (n1 as u128) * (n2 as u128);
        let m = (n1 as u128) * (n2 as u128) * (p.order() as u128);
        prop_assert_eq!(lhs % m, rhs % m);
    }

    #[test]
    fn verdict_is_stable_under_reindexing(
        size in 2usize..6,
        raw in proptest::collection::vec((prop_oneof![Just(1u64), Just(2), Just(3), Just(6)], 0u64..6), 36),
        shuffle in Just((0..6usize).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let entries: Vec<Vec<RootOfUnity>> = (0..size)
            .map(|i| (0..size).map(|j| { let (n, k) = raw[i * 6 + j]; RootOfUnity::new(n, k) }).collect())
            .collect();
        let b = BraidingMatrix::from_entries(entries);
        let perm: Vec<usize> = shuffle.into_iter().filter(|&i| i < size).collect();
        let b2 = b.permuted(&perm);
        let (v, v2) = (verdict(&b), verdict(&b2));
        prop_assert_eq!(v.outcome, v2.outcome);
        prop_assert!(v.recheck(&b));
        prop_assert!(v2.recheck(&b2));
        for (i, &p) in perm.iter().enumerate() {
            prop_assert_eq!(b.entry(p, p), b2.entry(i, i));
        }
        if let Some(Witness::Cycle(c)) = &v2.witness {
            prop_assert!(c.len() >= 3);
        }
    }
}

fn product_certificate() -> &'static (PermGroup, CollapseCertificate) {
    static C: OnceLock<(PermGroup, CollapseCertificate)> = OnceLock::new();
    C.get_or_init(|| {
        let psl = build_psl2(8).unwrap();
        let m = psl.group().direct_product(psl.group());
        let x = psl.diagonal(&psl.field().generator()).unwrap();
        let r = x.direct_sum(&x);
        let rack = ConjClassRack::new(&m, &r, 1 << 20).unwrap();
        let out = find_type(
            CollapseKind::C,
            &rack,
            &SearchOptions::exhaustive("PSL2(8)xPSL2(8)"),
        )
        .unwrap();
        let cert = out.certificate().unwrap().clone();
        (m, cert)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn certificates_are_conjugation_covariant(idx in 0u64..254_016) {
        let (m, cert) = product_certificate();
        prop_assert!(cert.verified && verify(cert));
        let g = m.element_at(idx);
        let moved = cert.conjugated_by(&g);
        prop_assert!(verify(&moved));
    }
}

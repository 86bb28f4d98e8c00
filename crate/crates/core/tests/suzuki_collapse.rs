use rack_collapse::collapse::{
    check_type_c, check_type_f, find_type, verify, CollapseKind, FSeeds, Hints, SearchOptions,
    SearchOutcome, StructuralSubgroup,
};
use rack_collapse::permgrp::{conjugacy_classes, ClassOrbit};
use rack_collapse::rackkit::ConjClassRack;
use rack_collapse::suzuki::{build_sz, SzContext};

fn classes_of_order(ctx: &SzContext, order: u64) -> Vec<ClassOrbit> {
    conjugacy_classes(ctx.group(), 1_000_000)
        .unwrap()
        .into_iter()
        .filter(|c| c.representative().order() == order)
        .collect()
}

#[test]
fn class_structure_of_sz8() {
    let ctx = build_sz(1).unwrap();
    let classes = conjugacy_classes(ctx.group(), 1_000_000).unwrap();
    let mut summary: Vec<(u64, usize)> = classes
        .iter()
        .map(|c| (c.representative().order(), c.len()))
        .collect();
    summary.sort();
    assert_eq!(
        summary,
        vec![
            (1, 1),
            (2, 455),
            (4, 1820),
            (4, 1820),
            (5, 5824),
            (7, 4160),
            (7, 4160),
            (7, 4160),
            (13, 2240),
            (13, 2240),
            (13, 2240),
        ]
    );
}

#[test]
fn order_four_classes_are_type_f() {
    let ctx = build_sz(1).unwrap();
    let f = ctx.field();
    let torus: Vec<_> = f.units().map(|k| ctx.t_perm(&k).unwrap()).collect();
    for class in classes_of_order(&ctx, 4) {
        let base = f
            .elements()
            .flat_map(|a| f.elements().map(move |b| (a.clone(), b)))
            .filter(|(a, _)| !a.is_zero())
            .map(|(a, b)| ctx.u_perm(&a, &b).unwrap())
            .find(|u| class.contains(u))
            .expect("every order-4 class meets U");
        let rack = ConjClassRack::from_orbit(ctx.group(), class);
        let hints = Hints {
            f_seeds: vec![FSeeds {
                base,
                conjugators: torus.clone(),
            }],
            ..Hints::default()
        };
        let opts = SearchOptions::exhaustive("Sz(8)").with_hints(hints);
        let out = find_type(CollapseKind::F, &rack, &opts).unwrap();
        let cert = out.certificate().expect("type F");
        assert!(verify(cert));
        assert!(check_type_f(&cert.witnesses, 1 << 20).unwrap());
    }
}

#[test]
fn split_torus_classes_are_type_c() {
    let ctx = build_sz(1).unwrap();
    let t = ctx.torus_generator();
    let mut h_gens = vec![t.clone()];
    h_gens.extend(ctx.unipotent().generators().iter().cloned());
    let r = t.clone();
    let s = t
        .inverse()
        .compose(&ctx.u_perm(&ctx.field().one(), &ctx.field().zero()).unwrap());
    assert!(check_type_c(&r, &s, &h_gens, 1 << 20).unwrap());

    for class in classes_of_order(&ctx, 7) {
        let rack = ConjClassRack::from_orbit(ctx.group(), class);
        let hints = Hints {
            c_subgroups: vec![StructuralSubgroup {
                label: "<t,U->".into(),
                generators: h_gens.clone(),
            }],
            ..Hints::default()
        };
        let opts = SearchOptions::exhaustive("Sz(8)").with_hints(hints);
        let out = find_type(CollapseKind::C, &rack, &opts).unwrap();
        assert!(verify(out.certificate().expect("type C")));
    }
}

#[test]
fn semisimple_scans_find_nothing() {
    let ctx = build_sz(1).unwrap();
    for order in [5, 13] {
        for class in classes_of_order(&ctx, order) {
            let rack = ConjClassRack::from_orbit(ctx.group(), class);
            let opts = SearchOptions::exhaustive("Sz(8)");
            for kind in CollapseKind::ALL {
                let out = find_type(kind, &rack, &opts).unwrap();
                assert!(
                    matches!(out, SearchOutcome::NotFound(_)),
                    "order {order} kind {kind}"
                );
            }
        }
    }
}

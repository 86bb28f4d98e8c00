//! One line per acceptance criterion; time limits are pinned below.

use std::io::Write;
use std::time::{Duration, Instant};

use rustc_hash::FxHashSet;

use rack_collapse::checks::{registry, run_all, CheckOptions};
use rack_collapse::collapse::{
    classify, find_type, kthulhu_exhaustive, verify, CollapseCertificate, CollapseKind, FSeeds,
    Hints, SearchOptions, SearchOutcome, Strategy, StructuralSubgroup,
};
use rack_collapse::config::Caps;
use rack_collapse::ffield::FieldCtx;
use rack_collapse::nichols::{acca_span, az_real_odd, verify_lemma_acca, verify_prop_g2_uni, Rule};
use rack_collapse::permgrp::{
    centralizer, centralizer_from_orbit, conj_orbit, conjugacy_classes, is_real, ClassOrbit, Perm,
    PermGroup,
};
use rack_collapse::rackkit::{check_axioms, check_axioms_exhaustive, ConjClassRack};
use rack_collapse::ree_small::{build_2g2_3, build_psl2};
use rack_collapse::suzuki::{build_sz, sz2_affine_model, SzContext};

const CAP: usize = 2_000_000;
const LIMIT_1: Duration = Duration::from_secs(5);
const LIMIT_2: Duration = Duration::from_secs(5);
const LIMIT_3: Duration = Duration::from_secs(30);
const LIMIT_4: Duration = Duration::from_secs(120);
const LIMIT_5: Duration = Duration::from_secs(600);
const LIMIT_6: Duration = Duration::from_secs(10);
const LIMIT_7: Duration = Duration::from_secs(60);
const LIMIT_8: Duration = Duration::from_secs(60);
const LIMIT_9: Duration = Duration::from_secs(300);
const LIMIT_10: Duration = Duration::from_secs(120);
const RANDOM_TRIPLES: u64 = 100_000;
const SEED: u64 = 0x5eed;

#[derive(Default)]
struct Ctx {
    certificates: Vec<CollapseCertificate>,
}

type Verdict = Result<String, String>;

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn classes(g: &PermGroup) -> Vec<ClassOrbit> {
    conjugacy_classes(g, CAP as u64).expect("class enumeration")
}

fn classes_of_order(ctx: &SzContext, order: u64) -> Vec<ClassOrbit> {
    classes(ctx.group())
        .into_iter()
        .filter(|c| c.representative().order() == order)
        .collect()
}

fn c1_group_orders(_: &mut Ctx) -> Verdict {
    let s0 = build_sz(0).map_err(|e| e.to_string())?;
    let s1 = build_sz(1).map_err(|e| e.to_string())?;
    let ree = build_2g2_3().map_err(|e| e.to_string())?;
    let q: u64 = 8;
    let sz8 = q * q * (q - 1) * (q * q + 1);
    let r: u64 = 3;
    let ree_formula = r.pow(3) * (r - 1) * (r.pow(3) + 1);
    let got = [s0.group().order(), s1.group().order(), ree.group().order()];
    ensure(
        got == [20, sz8, ree_formula] && sz8 == 29120 && ree_formula == 1512,
        format!("{got:?}"),
    )?;
    Ok(format!("orders {got:?}"))
}

fn c2_field_layer(_: &mut Ctx) -> Verdict {
    let names = [
        "field.delta_squared_is_frobenius",
        "field.phi_is_bijective",
        "suzuki.product_rule",
        "suzuki.torus_commutation",
    ];
    let reg = registry();
    let mut parts = Vec::new();
    for name in names {
        let check = reg.iter().find(|c| c.name == name).expect("registered");
        let r = check.run(&CheckOptions::default());
        ensure(r.passed, format!("{name}: {}", r.detail))?;
        if let Some(n) = r.detail.get("instances") {
            parts.push(format!("{name} instances={n}"));
        }
    }
    Ok(parts.join(", "))
}

fn c3_sz2(_: &mut Ctx) -> Verdict {
    let ctx = build_sz(0).map_err(|e| e.to_string())?;
    let g = ctx.group();
    let cls = classes(g);
    ensure(cls.len() == 5, format!("{} classes", cls.len()))?;
    ensure(
        classes(&sz2_affine_model()).len() == 5,
        "affine model class count",
    )?;
    for c in cls.clone() {
        let rack = ConjClassRack::from_orbit(g, c);
        let r =
            kthulhu_exhaustive(g, &rack, Caps::default().subgroups).map_err(|e| e.to_string())?;
        ensure(
            r.proved,
            format!(
                "class of order {} not proved",
                rack.representative().order()
            ),
        )?;
    }
    let inv = cls
        .iter()
        .find(|c| c.representative().order() == 2)
        .ok_or("no involution class")?;
    let u = inv.representative();
    let sq = |x: &Perm| x.compose(x);
    let v = inv
        .elements()
        .iter()
        .find(|v| sq(&u.compose(v)) != sq(&v.compose(u)))
        .ok_or("no (uv)^2 != (vu)^2 witness")?;
    Ok(format!("5 classes kthulhu; witness u={u} v={v}"))
}

fn c4_sz8(ctx: &mut Ctx) -> Verdict {
    let sz = build_sz(1).map_err(|e| e.to_string())?;
    let g = sz.group();
    let inv = classes_of_order(&sz, 2);
    ensure(inv.len() == 1 && inv[0].len() == 455, "involution class")?;
    ensure(
        centralizer_from_orbit(g, &inv[0]).order() == 64,
        "involution centralizer",
    )?;

    let f = sz.field();
    let torus: Vec<Perm> = f.units().map(|k| sz.t_perm(&k).unwrap()).collect();
    let order4 = classes_of_order(&sz, 4);
    ensure(order4.len() == 2, "two order-4 classes")?;
    for class in order4 {
        let base = f
            .units()
            .flat_map(|a| f.elements().map(move |b| (a.clone(), b)))
            .map(|(a, b)| sz.u_perm(&a, &b).unwrap())
            .find(|u| class.contains(u))
            .ok_or("order-4 class misses U")?;
        let rack = ConjClassRack::from_orbit(g, class);
        let hints = Hints {
            f_seeds: vec![FSeeds {
                base,
                conjugators: torus.clone(),
            }],
            ..Hints::default()
        };
        let out = find_type(
            CollapseKind::F,
            &rack,
            &SearchOptions::exhaustive("Sz(8)").with_hints(hints),
        )
        .map_err(|e| e.to_string())?;
        let cert = out.certificate().ok_or("no type F")?;
        ensure(cert.verified && verify(cert), "type F certificate fails")?;
        ctx.certificates.push(cert.clone());
    }

    let t = sz.torus_generator();
    let mut h_gens = vec![t.clone()];
    h_gens.extend(sz.unipotent().generators().iter().cloned());
    for e in 1..7 {
        let te = t.pow(e);
        let rack = ConjClassRack::new(g, &te, CAP).map_err(|e| e.to_string())?;
        let hints = Hints {
            c_subgroups: vec![StructuralSubgroup {
                label: "<t,U->".into(),
                generators: h_gens.clone(),
            }],
            ..Hints::default()
        };
        let out = find_type(
            CollapseKind::C,
            &rack,
            &SearchOptions::exhaustive("Sz(8)").with_hints(hints),
        )
        .map_err(|e| e.to_string())?;
        let cert = out.certificate().ok_or(format!("t^{e}: no type C"))?;
        ensure(cert.verified && verify(cert), "type C certificate fails")?;
        let h = cert.h_generators.as_ref().ok_or("no H")?;
        for w in &cert.witnesses {
            let n = conj_orbit(w, h, CAP).map_err(|e| e.to_string())?.len();
            ensure(n == 64, format!("t^{e}: H-orbit of size {n}"))?;
        }
        ctx.certificates.push(cert.clone());
    }

    let mut odd = 0;
    for c in classes(g) {
        let x = c.representative();
        let n = x.order();
        if n > 1 && n % 2 == 1 {
            odd += 1;
            ensure(
                is_real(g, x, CAP).map_err(|e| e.to_string())?,
                format!("order {n} not real"),
            )?;
            ensure(
                az_real_odd(g, x, CAP).map_err(|e| e.to_string())?,
                "az_real_odd silent",
            )?;
        }
    }
    Ok(format!(
        "455/64 involutions; F x2; C x6 with H-orbits 64; {odd} odd classes real"
    ))
}

fn c5_sz8_evidence(_: &mut Ctx) -> Verdict {
    let sz = build_sz(1).map_err(|e| e.to_string())?;
    let mut examined = 0;
    let mut n = 0;
    for order in [5, 13] {
        for class in classes_of_order(&sz, order) {
            let rack = ConjClassRack::from_orbit(sz.group(), class);
            for kind in CollapseKind::ALL {
                let out = find_type(kind, &rack, &SearchOptions::exhaustive("Sz(8)"))
                    .map_err(|e| e.to_string())?;
                match out {
                    SearchOutcome::NotFound(nf) => {
                        ensure(nf.status == "evidence", "status")?;
                        examined += nf.candidates_examined;
                    }
                    SearchOutcome::Found { .. } => {
                        return Err(format!("order {order}: unexpected type {kind}"))
                    }
                }
            }
            n += 1;
        }
    }
    Ok(format!(
        "{n} classes, no C/D/F found, {examined} candidates (evidence only)"
    ))
}

fn c6_acca(_: &mut Ctx) -> Verdict {
    let r = verify_lemma_acca(1).map_err(|e| e.to_string())?;
    ensure(r.characters.len() == 8, "8 characters")?;
    ensure(r.passed(), "report checks")?;
    ensure(
        r.characters.iter().all(|c| c.verdict.is_infinite()),
        "some verdict not infinite",
    )?;
    ensure(
        r.characters[0].verdict.rule() == Some(Rule::R1),
        "trivial character not R1",
    )?;
    for c in &r.characters {
        let expected = if c.value_at_g.is_one() {
            Rule::R1
        } else {
            Rule::R2
        };
        ensure(
            c.verdict.rule() == Some(expected),
            format!("{:?}", c.exponents),
        )?;
    }
    let r1 = r
        .characters
        .iter()
        .filter(|c| c.verdict.rule() == Some(Rule::R1))
        .count();
    for h in 1..=2 {
        let s = acca_span(&FieldCtx::suzuki(h).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ensure(s.contains_one, format!("span over GF({}) misses 1", s.q))?;
    }
    Ok(format!(
        "8/8 infinite: {r1} R1 (chi(U(0,1))=1), {} R2; span contains 1 over GF(8), GF(32)",
        8 - r1
    ))
}

fn c7_ree(_: &mut Ctx) -> Verdict {
    let r = verify_prop_g2_uni().map_err(|e| e.to_string())?;
    ensure(r.centralizer_order == 18, "|C(phi)|")?;
    ensure(
        r.intersection.len() == 3 && r.intersection_commuting,
        "O cap C(phi)",
    )?;
    ensure(r.passed(), "braiding report")?;
    ensure(
        r.characters
            .iter()
            .all(|c| matches!(c.verdict.rule(), Some(Rule::R1 | Rule::R3))),
        "rule outside R1/R3",
    )?;
    let ree = build_2g2_3().map_err(|e| e.to_string())?;
    let g = ree.group();
    let m = ree.borel_m();
    let orbit = conj_orbit(ree.phi(), m.generators(), CAP)
        .map_err(|e| e.to_string())?
        .len();
    ensure(orbit == 28, format!("|O_phi^M| = {orbit}"))?;
    let b1 = ree.borel_b1();
    let cm = centralizer(&m, ree.phi(), CAP).map_err(|e| e.to_string())?;
    let cb = cm
        .elements(1000)
        .map_err(|e| e.to_string())?
        .into_iter()
        .filter(|x| b1.contains(x))
        .count();
    ensure(cb == 2, format!("|C_B1(phi)| = {cb}"))?;
    ensure(
        !is_real(g, ree.phi(), CAP).map_err(|e| e.to_string())?,
        "phi is real",
    )?;
    let real3 = classes(g)
        .iter()
        .filter(|c| c.representative().order() == 3)
        .filter(|c| is_real(g, c.representative(), CAP).unwrap())
        .count();
    ensure(real3 == 1, format!("{real3} real order-3 classes"))?;
    Ok(format!(
        "|C(phi)|=18, |O cap C|=3, conjugator {}, 9/9 infinite, orbit 28, |C_B1|=2",
        r.conjugator_choice
    ))
}

fn c8_product(ctx: &mut Ctx) -> Verdict {
    let psl = build_psl2(8).map_err(|e| e.to_string())?;
    let m1 = psl.group();
    let m = m1.direct_product(m1);
    let x = psl
        .diagonal(&psl.field().generator())
        .map_err(|e| e.to_string())?;
    ensure(x.order() == 7, "order 7")?;
    ensure(
        is_real(m1, &x, CAP).map_err(|e| e.to_string())?,
        "m2 not real",
    )?;
    let rack = ConjClassRack::new(&m, &x.direct_sum(&x), CAP).map_err(|e| e.to_string())?;
    let out = find_type(
        CollapseKind::C,
        &rack,
        &SearchOptions::exhaustive("PSL2(8)xPSL2(8)"),
    )
    .map_err(|e| e.to_string())?;
    let cert = out.certificate().ok_or("no type C")?;
    ensure(cert.verified && verify(cert), "certificate fails")?;
    ctx.certificates.push(cert.clone());
    Ok(format!(
        "class size {}, verified type C",
        rack.orbit().len()
    ))
}

fn c9_properties(ctx: &mut Ctx) -> Verdict {
    let sz0 = build_sz(0).unwrap();
    let sz1 = build_sz(1).unwrap();
    let ree = build_2g2_3().unwrap();
    let mut small: Vec<PermGroup> = vec![
        sz0.group().clone(),
        sz2_affine_model(),
        sz1.center_of_unipotent(),
        sz1.unipotent(),
        sz1.subgroup_t_zu(),
        sz1.lower_borel(),
        ree.group().clone(),
        ree.borel_b1(),
        ree.borel_m(),
    ];
    for q in [2, 3, 4, 5, 8, 9] {
        small.push(build_psl2(q).unwrap().group().clone());
    }
    let mut racks = 0;
    let mut triples = 0;
    for g in &small {
        ensure(g.order() <= 2500, "group too large for exhaustive axioms")?;
        for c in classes(g) {
            ensure(
                c.len() as u64 * centralizer_from_orbit(g, &c).order() == g.order(),
                "orbit-stabilizer",
            )?;
            let rack = ConjClassRack::from_orbit(g, c);
            let rep = check_axioms_exhaustive(&rack);
            ensure(rep.passed(), format!("axioms fail: {:?}", rep.violation))?;
            racks += 1;
            triples += rep.triples_checked;
        }
    }
    let sz8 = classes(sz1.group());
    let per_class = RANDOM_TRIPLES / (sz8.len() as u64 - 1);
    let mut sampled = 0;
    for (i, c) in sz8.into_iter().enumerate() {
        ensure(
            c.len() as u64 * centralizer_from_orbit(sz1.group(), &c).order() == sz1.group().order(),
            "orbit-stabilizer",
        )?;
        if c.len() == 1 {
            continue;
        }
        let rack = ConjClassRack::from_orbit(sz1.group(), c);
        let rep = check_axioms(&rack, per_class + 1, SEED + i as u64);
        ensure(rep.passed() && !rep.exhaustive, "random axioms")?;
        sampled += rep.triples_checked;
    }
    ensure(sampled >= RANDOM_TRIPLES, "too few random triples")?;

    for cert in &ctx.certificates {
        ensure(verify(cert), "emitted certificate fails verify")?;
    }

    let class4 = classes_of_order(&sz1, 4).remove(0);
    let rack = ConjClassRack::from_orbit(sz1.group(), class4);
    let mut opts = SearchOptions::exhaustive("Sz(8)");
    opts.strategy = Strategy::Random {
        seed: SEED,
        budget: 500,
    };
    let a = serde_json::to_string(&classify(&rack, &opts).map_err(|e| e.to_string())?).unwrap();
    let b = serde_json::to_string(&classify(&rack, &opts).map_err(|e| e.to_string())?).unwrap();
    ensure(a == b, "classify output differs between runs")?;
    let c1 = serde_json::to_string(&run_all(&CheckOptions::default())).unwrap();
    let c2 = serde_json::to_string(&run_all(&CheckOptions::default())).unwrap();
    ensure(c1 == c2, "verify-paper output differs between runs")?;
    Ok(format!(
        "{racks} racks exhaustive ({triples} triples), {sampled} random Sz(8) triples, {} certificates re-verified, JSON stable",
        ctx.certificates.len()
    ))
}

fn brute_closure(gens: &[Perm]) -> usize {
    let id = Perm::identity(gens[0].degree());
    let mut seen = FxHashSet::default();
    seen.insert(id.clone());
    let mut stack = vec![id];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = x.compose(g);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen.len()
}

fn c10_oracles(_: &mut Ctx) -> Verdict {
    let sz0 = build_sz(0).unwrap();
    let sz1 = build_sz(1).unwrap();
    let ree = build_2g2_3().unwrap();
    let mut groups: Vec<PermGroup> = vec![
        sz0.group().clone(),
        sz2_affine_model(),
        sz1.center_of_unipotent(),
        sz1.unipotent(),
        sz1.subgroup_t_zu(),
        sz1.lower_borel(),
        ree.group().clone(),
        ree.borel_b1(),
        ree.borel_m(),
        centralizer(ree.group(), ree.phi(), CAP).unwrap(),
    ];
    for q in [2, 3, 4, 5, 8, 9, 16, 25, 27] {
        groups.push(build_psl2(q).unwrap().group().clone());
    }
    for g in &groups {
        ensure(g.order() <= 10_000, "oracle scope")?;
        let n = brute_closure(g.generators());
        ensure(
            n as u64 == g.order(),
            format!("BSGS {} vs closure {n}", g.order()),
        )?;
    }
    let g = sz1.group();
    let elements = g.elements(100_000).map_err(|e| e.to_string())?;
    let cls = classes(g);
    ensure(cls.len() == 11, "11 classes")?;
    let mut covered = FxHashSet::default();
    for c in &cls {
        let brute: FxHashSet<Perm> = elements
            .iter()
            .map(|x| x.conj(c.representative()))
            .collect();
        ensure(
            brute.len() == c.len() && c.elements().iter().all(|x| brute.contains(x)),
            "class mismatch",
        )?;
        covered.extend(brute);
    }
    ensure(
        covered.len() == elements.len(),
        "partition does not cover G",
    )?;
    Ok(format!(
        "{} groups match closure; Sz(8) partition of 11 classes matches",
        groups.len()
    ))
}

type Criterion = (u32, &'static str, Duration, fn(&mut Ctx) -> Verdict);

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        (1, "group orders", LIMIT_1, c1_group_orders),
        (2, "field layer identities", LIMIT_2, c2_field_layer),
        (
            3,
            "2B2(2) classes, kthulhu, squares witness",
            LIMIT_3,
            c3_sz2,
        ),
        (
            4,
            "2B2(8) involutions, types F and C, reality",
            LIMIT_4,
            c4_sz8,
        ),
        (
            5,
            "2B2(8) semisimple scan evidence",
            LIMIT_5,
            c5_sz8_evidence,
        ),
        (6, "abelian braiding lemma over Z(U-)", LIMIT_6, c6_acca),
        (7, "2G2(3) suite", LIMIT_7, c7_ree),
        (8, "direct product type C", LIMIT_8, c8_product),
        (9, "property suites", LIMIT_9, c9_properties),
        (10, "oracle equivalence", LIMIT_10, c10_oracles),
    ];
    let mut ctx = Ctx::default();
    let mut failures = Vec::new();
    for (id, name, limit, f) in criteria {
        let start = Instant::now();
        let result = f(&mut ctx);
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (false, format!("{d}; too slow")),
            Err(e) => (false, e),
        };
        // written to the process stdout so the line survives output capture
        let _ = writeln!(
            std::io::stdout(),
            "[{}] criterion {id}: {name} ({:.2}s, limit {}s): {detail}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
        if !ok {
            failures.push(id);
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}

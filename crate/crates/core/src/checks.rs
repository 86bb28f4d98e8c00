//! Named end-to-end checks behind `verify-paper`.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::collapse::{
    find_type, kthulhu_exhaustive, CollapseKind, FSeeds, Hints, SearchOptions, SearchOutcome,
    StructuralSubgroup,
};
use crate::config::Caps;
use crate::ffield::{FieldCtx, Matrix};
use crate::nichols::{az_real_odd, verify_lemma_acca, verify_prop_g2_uni, Rule};
use crate::permgrp::{
    centralizer, centralizer_from_orbit, conj_orbit, conjugacy_classes, is_real, ClassOrbit, Perm,
    PermGroup,
};
use crate::rackkit::ConjClassRack;
use crate::ree_small::{build_2g2_3, build_psl2, REE_G2_3_ORDER};
use crate::suzuki::{build_sz, sz_order, t_elem, u_elem, SzContext, MAX_H};

const ORBIT_CAP: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    /// Largest `h` for which the Suzuki group itself is built.
    pub h_max: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { h_max: 1 }
    }
}

type Outcome = Result<(bool, Value), String>;

pub struct Check {
    pub name: &'static str,
    run: fn(&CheckOptions) -> Outcome,
}

impl Check {
    pub fn run(&self, opts: &CheckOptions) -> CheckResult {
        match (self.run)(opts) {
            Ok((passed, detail)) => CheckResult {
                name: self.name,
                passed,
                detail,
            },
            Err(e) => CheckResult {
                name: self.name,
                passed: false,
                detail: json!({ "error": e }),
            },
        }
    }
}

macro_rules! checks {
    ($($name:literal => $f:ident),* $(,)?) => {
        vec![$(Check { name: $name, run: $f }),*]
    };
}

/// The registry, in output order.
pub fn registry() -> Vec<Check> {
    checks![
        "field.delta_squared_is_frobenius" => delta_squared,
        "field.phi_is_bijective" => phi_bijective,
        "suzuki.product_rule" => product_rule,
        "suzuki.torus_commutation" => torus_commutation,
        "suzuki.group_orders" => group_orders,
        "sz2.class_count" => sz2_class_count,
        "sz2.translations_abelian_normal" => sz2_translations,
        "sz2.kthulhu_exhaustive" => sz2_kthulhu,
        "sz8.class_structure" => sz8_class_structure,
        "sz8.involution_class" => sz8_involutions,
        "sz8.order4_type_f" => sz8_order4_type_f,
        "sz8.split_torus_type_c" => sz8_split_torus,
        "sz8.odd_classes_real" => sz8_odd_real,
        "sz8.az_real_odd" => sz8_az,
        "acca.h1_characters" => acca_h1,
        "acca.span_contains_one" => acca_span_check,
        "ree.order" => ree_order,
        "ree.centralizer_of_phi" => ree_centralizer,
        "ree.borel_orbit" => ree_borel_orbit,
        "ree.phi_not_real" => ree_phi_not_real,
        "ree.real_order3_class" => ree_real_order3,
        "ree.unipotent_braiding" => ree_braiding,
        "product.psl2_8_squared_type_c" => product_type_c,
        "sz2.squares_differ" => sz2_squares_differ,
    ]
}

/// Runs every check; results follow registry order.
pub fn run_all(opts: &CheckOptions) -> Vec<CheckResult> {
    registry().par_iter().map(|c| c.run(opts)).collect()
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn sz(h: usize) -> Result<SzContext, String> {
    build_sz(h).map_err(err)
}

fn classes(g: &PermGroup) -> Result<Vec<ClassOrbit>, String> {
    conjugacy_classes(g, ORBIT_CAP as u64).map_err(err)
}

fn delta_squared(_: &CheckOptions) -> Outcome {
    let mut counts = Vec::new();
    let mut ok = true;
    for h in 1..=MAX_H {
        let f = FieldCtx::suzuki(h).map_err(err)?;
        for x in f.elements() {
            ok &= x.delta().map_err(err)?.delta().map_err(err)? == x.frobenius();
        }
        counts.push(json!({ "q": f.q(), "elements": f.q() }));
    }
    Ok((ok, json!({ "fields": counts })))
}

fn phi_bijective(_: &CheckOptions) -> Outcome {
    let mut ok = true;
    let mut out = Vec::new();
    for h in 1..=MAX_H {
        let f = FieldCtx::suzuki(h).map_err(err)?;
        let mut images: Vec<u64> = f
            .units()
            .map(|k| k.phi().map(|y| y.to_int()))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        images.sort_unstable();
        images.dedup();
        let fixed_by_delta = f
            .elements()
            .filter(|x| x.delta().is_ok_and(|d| &d == x))
            .count();
        ok &= images.len() as u64 == f.q() - 1 && !images.contains(&0) && fixed_by_delta == 2;
        out.push(
            json!({ "q": f.q(), "distinct_images": images.len(), "delta_fixed": fixed_by_delta }),
        );
    }
    Ok((ok, json!({ "fields": out })))
}

fn product_rule(_: &CheckOptions) -> Outcome {
    let f = FieldCtx::suzuki(1).map_err(err)?;
    let mut n = 0u64;
    let mut ok = true;
    for a in f.elements() {
        for b in f.elements() {
            let u = u_elem(&a, &b).map_err(err)?;
            for c in f.elements() {
                for d in f.elements() {
                    let v = u_elem(&c, &d).map_err(err)?;
                    let rhs = u_elem(&(&a + &c), &(&(&a * &c.delta().map_err(err)?) + &(&b + &d)))
                        .map_err(err)?;
                    ok &= &u * &v == rhs;
                    n += 1;
                }
            }
        }
    }
    Ok((ok && n == 4096, json!({ "q": 8, "instances": n })))
}

fn torus_commutation(_: &CheckOptions) -> Outcome {
    let f = FieldCtx::suzuki(1).map_err(err)?;
    let mut n = 0u64;
    let mut ok = true;
    for k in f.units() {
        let t = t_elem(&k).map_err(err)?;
        let diag: Vec<_> = (0..4)
            .map(|i| t.get(i, i).inv())
            .collect::<Result<_, _>>()
            .map_err(err)?;
        let t_inv = Matrix::diagonal(diag);
        let k_phi = k.phi().map_err(err)?;
        for a in f.elements() {
            for b in f.elements() {
                let lhs = &(&t_inv * &u_elem(&a, &b).map_err(err)?) * &t;
                ok &= lhs == u_elem(&(&a * &k), &(&b * &k_phi)).map_err(err)?;
                n += 1;
            }
        }
    }
    Ok((
        ok && n == 448,
        json!({ "q": 8, "instances": n, "domain": "a, b in F, k in F^x" }),
    ))
}

fn group_orders(opts: &CheckOptions) -> Outcome {
    let mut ok = true;
    let mut out = Vec::new();
    for h in 0..=opts.h_max.min(MAX_H) {
        let ctx = sz(h)?;
        let q = ctx.q();
        ok &= ctx.group().order() == sz_order(q) && ctx.group().degree() as u64 == q * q + 1;
        out.push(json!({ "family": "sz", "h": h, "order": ctx.group().order(), "degree": ctx.group().degree() }));
    }
    let ree = build_2g2_3().map_err(err)?;
    ok &= ree.group().order() == REE_G2_3_ORDER;
    out.push(json!({ "family": "ree", "q": 3, "order": ree.group().order(), "degree": ree.group().degree() }));
    Ok((ok, json!(out)))
}

fn sz2_class_count(_: &CheckOptions) -> Outcome {
    let ctx = sz(0)?;
    let cls = classes(ctx.group())?;
    let summary: Vec<(u64, usize)> = cls
        .iter()
        .map(|c| (c.representative().order(), c.len()))
        .collect();
    Ok((cls.len() == 5, json!({ "classes": summary })))
}

fn sz2_translations(_: &CheckOptions) -> Outcome {
    let ctx = sz(0)?;
    let g = ctx.group();
    let elems = g.elements(100).map_err(err)?;
    let sub: Vec<Perm> = elems
        .iter()
        .filter(|x| x.order() == 5 || x.is_identity())
        .cloned()
        .collect();
    let abelian = sub.iter().all(|x| sub.iter().all(|y| x.commutes_with(y)));
    let closed = sub
        .iter()
        .all(|x| sub.iter().all(|y| sub.contains(&x.compose(y))));
    let normal = sub
        .iter()
        .all(|x| g.generators().iter().all(|c| sub.contains(&c.conj(x))));
    Ok((
        sub.len() == 5 && abelian && closed && normal,
        json!({ "size": sub.len(), "abelian": abelian, "normal": normal }),
    ))
}

fn sz2_kthulhu(_: &CheckOptions) -> Outcome {
    let ctx = sz(0)?;
    let g = ctx.group();
    let mut ok = true;
    let mut out = Vec::new();
    for c in classes(g)? {
        let order = c.representative().order();
        let rack = ConjClassRack::from_orbit(g, c);
        let r = kthulhu_exhaustive(g, &rack, Caps::default().subgroups).map_err(err)?;
        ok &= r.proved;
        out.push(json!({ "order": order, "size": r.class_size, "subgroups": r.subgroups_checked, "proved": r.proved }));
    }
    Ok((ok, json!({ "classes": out })))
}

fn sz8_class_structure(_: &CheckOptions) -> Outcome {
    let ctx = sz(1)?;
    let cls = classes(ctx.group())?;
    let mut summary: Vec<(u64, usize)> = cls
        .iter()
        .map(|c| (c.representative().order(), c.len()))
        .collect();
    summary.sort_unstable();
    let total: usize = summary.iter().map(|s| s.1).sum();
    Ok((
        cls.len() == 11 && total as u64 == ctx.group().order(),
        json!({ "classes": summary }),
    ))
}

fn sz8_involutions(_: &CheckOptions) -> Outcome {
    let ctx = sz(1)?;
    let g = ctx.group();
    let inv: Vec<ClassOrbit> = classes(g)?
        .into_iter()
        .filter(|c| c.representative().order() == 2)
        .collect();
    let sizes: Vec<usize> = inv.iter().map(ClassOrbit::len).collect();
    let cent: Vec<u64> = inv
        .iter()
        .map(|c| centralizer_from_orbit(g, c).order())
        .collect();
    Ok((
        sizes == [455] && cent == [64],
        json!({ "classes": sizes.len(), "size": sizes, "centralizer": cent }),
    ))
}

fn order_classes(ctx: &SzContext, order: u64) -> Result<Vec<ClassOrbit>, String> {
    Ok(classes(ctx.group())?
        .into_iter()
        .filter(|c| c.representative().order() == order)
        .collect())
}

fn sz8_order4_type_f(_: &CheckOptions) -> Outcome {
    let ctx = sz(1)?;
    let f = ctx.field();
    let torus: Vec<Perm> = f
        .units()
        .map(|k| ctx.t_perm(&k))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let mut out = Vec::new();
    let mut ok = true;
    let cls = order_classes(&ctx, 4)?;
    ok &= cls.len() == 2;
    for class in cls {
        let mut base = None;
        'outer: for a in f.units() {
            for b in f.elements() {
                let u = ctx.u_perm(&a, &b).map_err(err)?;
                if class.contains(&u) {
                    base = Some(u);
                    break 'outer;
                }
            }
        }
        let base = base.ok_or("order-4 class misses U")?;
        let rack = ConjClassRack::from_orbit(ctx.group(), class);
        let hints = Hints {
            f_seeds: vec![FSeeds {
                base,
                conjugators: torus.clone(),
            }],
            ..Hints::default()
        };
        let opts = SearchOptions::exhaustive("Sz(8)").with_hints(hints);
        let found = find_type(CollapseKind::F, &rack, &opts).map_err(err)?;
        let verified = found.certificate().is_some_and(|c| c.verified);
        ok &= verified;
        out.push(json!({ "class_size": rack.orbit().len(), "type_f": verified }));
    }
    Ok((ok, json!({ "classes": out })))
}

fn sz8_split_torus(_: &CheckOptions) -> Outcome {
    let ctx = sz(1)?;
    let t = ctx.torus_generator();
    let mut h_gens = vec![t.clone()];
    h_gens.extend(ctx.unipotent().generators().iter().cloned());
    let mut ok = true;
    let mut out = Vec::new();
    for e in 1..7 {
        let te = t.pow(e);
        let class = conj_orbit(&te, ctx.group().generators(), ORBIT_CAP).map_err(err)?;
        let rack = ConjClassRack::from_orbit(ctx.group(), class);
        let hints = Hints {
            c_subgroups: vec![StructuralSubgroup {
                label: "<t,U->".into(),
                generators: h_gens.clone(),
            }],
            ..Hints::default()
        };
        let opts = SearchOptions::exhaustive("Sz(8)").with_hints(hints);
        let found = find_type(CollapseKind::C, &rack, &opts).map_err(err)?;
        let Some(cert) = found.certificate() else {
            ok = false;
            out.push(json!({ "exponent": e, "type_c": false }));
            continue;
        };
        let h = cert.h_generators.clone().unwrap_or_default();
        let sizes: Vec<usize> = cert
            .witnesses
            .iter()
            .map(|w| conj_orbit(w, &h, ORBIT_CAP).map(|o| o.len()))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        ok &= cert.verified && sizes == [64, 64];
        out.push(json!({ "exponent": e, "type_c": cert.verified, "h_orbit_sizes": sizes }));
    }
    Ok((ok, json!({ "elements": out })))
}

fn sz8_odd_real(_: &CheckOptions) -> Outcome {
    let ctx = sz(1)?;
    let g = ctx.group();
    let mut ok = true;
    let mut n = 0;
    for c in classes(g)? {
        let x = c.representative();
        if x.order() % 2 == 1 && x.order() > 1 {
            n += 1;
            ok &= is_real(g, x, ORBIT_CAP).map_err(err)?;
        }
    }
    Ok((ok && n == 7, json!({ "odd_classes": n })))
}

fn sz8_az(_: &CheckOptions) -> Outcome {
    let ctx = sz(1)?;
    let g = ctx.group();
    let mut ok = true;
    let mut out = Vec::new();
    for c in classes(g)? {
        let x = c.representative();
        let fires = az_real_odd(g, x, ORBIT_CAP).map_err(err)?;
        ok &= fires == (x.order() % 2 == 1 && x.order() > 1);
        out.push(json!({ "order": x.order(), "fires": fires }));
    }
    Ok((ok, json!({ "classes": out })))
}

fn acca_h1(_: &CheckOptions) -> Outcome {
    let r = verify_lemma_acca(1).map_err(err)?;
    let rules: Vec<_> = r.characters.iter().map(|c| c.verdict.rule()).collect();
    let trivial_r1 = rules.first() == Some(&Some(Rule::R1));
    let ok = r.passed() && r.characters.len() == 8 && trivial_r1;
    Ok((
        ok,
        json!({ "characters": r.characters.len(), "rules": rules, "class_size": r.class_size }),
    ))
}

fn acca_span_check(_: &CheckOptions) -> Outcome {
    let mut ok = true;
    let mut out = Vec::new();
    for h in 1..=MAX_H {
        let f = FieldCtx::suzuki(h).map_err(err)?;
        let s = crate::nichols::acca_span(&f).map_err(err)?;
        ok &= s.contains_one;
        out.push(s);
    }
    ok &= verify_lemma_acca(2).map_err(err)?.span.contains_one;
    Ok((ok, json!(out)))
}

fn ree_order(_: &CheckOptions) -> Outcome {
    let ree = build_2g2_3().map_err(err)?;
    let psl = ree.psl2().group().order();
    Ok((
        ree.group().order() == 1512 && psl == 504,
        json!({ "order": ree.group().order(), "psl2_8": psl }),
    ))
}

fn ree_centralizer(_: &CheckOptions) -> Outcome {
    let ree = build_2g2_3().map_err(err)?;
    let c = centralizer(ree.group(), ree.phi(), ORBIT_CAP).map_err(err)?;
    let class = conj_orbit(ree.phi(), ree.group().generators(), ORBIT_CAP).map_err(err)?;
    Ok((
        c.order() == 18 && class.len() == 84,
        json!({ "centralizer": c.order(), "class_size": class.len() }),
    ))
}

fn ree_borel_orbit(_: &CheckOptions) -> Outcome {
    let ree = build_2g2_3().map_err(err)?;
    let m = ree.borel_m();
    let b1 = ree.borel_b1();
    let orbit = conj_orbit(ree.phi(), m.generators(), ORBIT_CAP).map_err(err)?;
    let cm = centralizer(&m, ree.phi(), ORBIT_CAP).map_err(err)?;
    let cb = cm
        .elements(1000)
        .map_err(err)?
        .into_iter()
        .filter(|x| b1.contains(x))
        .count();
    Ok((
        m.order() == 168 && orbit.len() == 28 && cb == 2,
        json!({ "m_order": m.order(), "orbit": orbit.len(), "c_b1": cb }),
    ))
}

fn ree_phi_not_real(_: &CheckOptions) -> Outcome {
    let ree = build_2g2_3().map_err(err)?;
    let real = is_real(ree.group(), ree.phi(), ORBIT_CAP).map_err(err)?;
    let az = az_real_odd(ree.group(), ree.phi(), ORBIT_CAP).map_err(err)?;
    Ok((!real && !az, json!({ "real": real, "az_real_odd": az })))
}

fn ree_real_order3(_: &CheckOptions) -> Outcome {
    let ree = build_2g2_3().map_err(err)?;
    let g = ree.group();
    let mut out = Vec::new();
    let mut real = 0;
    for c in classes(g)?
        .iter()
        .filter(|c| c.representative().order() == 3)
    {
        let r = is_real(g, c.representative(), ORBIT_CAP).map_err(err)?;
        real += usize::from(r);
        out.push(json!({ "size": c.len(), "real": r, "in_psl2": ree.psl2().group().contains(c.representative()) }));
    }
    Ok((real == 1, json!({ "order3_classes": out })))
}

fn ree_braiding(_: &CheckOptions) -> Outcome {
    let r = verify_prop_g2_uni().map_err(err)?;
    let rules: Vec<_> = r.characters.iter().map(|c| c.verdict.rule()).collect();
    Ok((
        r.passed(),
        json!({
            "intersection": r.intersection.len(),
            "abelian_order": r.abelian_order,
            "conjugator_choice": r.conjugator_choice,
            "rules": rules,
        }),
    ))
}

fn product_type_c(_: &CheckOptions) -> Outcome {
    let psl = build_psl2(8).map_err(err)?;
    let m1 = psl.group();
    let m = m1.direct_product(m1);
    let x7 = psl.diagonal(&psl.field().generator()).map_err(err)?;
    if x7.order() != 7 {
        return Err("diagonal element is not of order 7".into());
    }
    let real = is_real(m1, &x7, ORBIT_CAP).map_err(err)?;
    let r = x7.direct_sum(&x7);
    let rack = ConjClassRack::new(&m, &r, ORBIT_CAP).map_err(err)?;
    let opts = SearchOptions::exhaustive("PSL2(8)xPSL2(8)");
    let found = find_type(CollapseKind::C, &rack, &opts).map_err(err)?;
    let verified = matches!(&found, SearchOutcome::Found { certificate } if certificate.verified);
    Ok((
        real && verified,
        json!({ "class_size": rack.orbit().len(), "m2_real": real, "type_c": verified }),
    ))
}

fn sz2_squares_differ(_: &CheckOptions) -> Outcome {
    let ctx = sz(0)?;
    let inv = order_classes(&ctx, 2)?;
    let [class] = inv.as_slice() else {
        return Err("expected one involution class".into());
    };
    let u = class.representative();
    let sq = |x: &Perm| x.compose(x);
    let others: Vec<&Perm> = class.elements().iter().filter(|v| *v != u).collect();
    let all = others
        .iter()
        .all(|v| sq(&u.compose(v)) != sq(&v.compose(u)));
    Ok((
        all && !others.is_empty(),
        json!({ "class_size": class.len(), "every_other_element_works": all }),
    ))
}

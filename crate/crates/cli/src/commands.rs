use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;
use serde_json::{json, Map, Value};

use rack_collapse::checks::{run_all, CheckOptions};
use rack_collapse::collapse::{
    classify, verify_detailed, CollapseCertificate, FSeeds, Hints, SearchOptions, Strategy,
    StructuralSubgroup, SCHEMA,
};
use rack_collapse::config::RunConfig;
use rack_collapse::nichols::{gdd, verdict, verify_prop_g2_uni, AbelianSetting};
use rack_collapse::permgrp::{
    centralizer, centralizer_from_orbit, conj_orbit, conjugacy_classes, is_real, ClassOrbit, Perm,
    PermGroup,
};
use rack_collapse::rackkit::{check_axioms, is_indecomposable, ConjClassRack};
use rack_collapse::ree_small::{build_2g2_3, build_psl2};
use rack_collapse::suzuki::{build_sz, SzContext, MAX_H};

use crate::args::{
    AbelianArg, BraidingGroup, ClassFilter, Family, GroupAction, GroupSpec, RackAction, StrategyArg,
};
use crate::UsageError;

/// Documents produced by one command, plus whether it succeeded.
pub struct Output {
    pub documents: Vec<Value>,
    pub success: bool,
}

impl Output {
    fn one(doc: Value, success: bool) -> Self {
        Output {
            documents: vec![doc],
            success,
        }
    }
}

fn document(cfg: &RunConfig, command: &str, payload: impl Serialize) -> Result<Value> {
    let mut map = Map::new();
    map.insert("schema".into(), json!(SCHEMA));
    map.insert("command".into(), json!(command));
    map.insert("config".into(), serde_json::to_value(cfg)?);
    match serde_json::to_value(payload)? {
        Value::Object(fields) => {
            for (k, v) in fields {
                map.entry(k).or_insert(v);
            }
        }
        other => {
            map.insert("result".into(), other);
        }
    }
    Ok(Value::Object(map))
}

struct Built {
    label: String,
    group: PermGroup,
    sz: Option<SzContext>,
}

fn build(spec: &GroupSpec) -> Result<Built> {
    let need = |v: Option<u64>, flag: &str| {
        v.ok_or_else(|| anyhow!(UsageError(format!("--{flag} is required"))))
    };
    Ok(match spec.family {
        Family::Sz => {
            let h = need(spec.h.map(|h| h as u64), "h")? as usize;
            if h > MAX_H {
                bail!(UsageError(format!("--h {h} exceeds {MAX_H}")));
            }
            let ctx = build_sz(h)?;
            Built {
                label: format!("Sz({})", ctx.q()),
                group: ctx.group().clone(),
                sz: Some(ctx),
            }
        }
        Family::Ree => Built {
            label: "2G2(3)".into(),
            group: build_2g2_3()?.group().clone(),
            sz: None,
        },
        Family::Psl2 | Family::Psl2Squared => {
            let q = need(spec.q, "q")?;
            let psl = build_psl2(q).map_err(|e| anyhow!(UsageError(e.to_string())))?;
            if spec.family == Family::Psl2 {
                Built {
                    label: format!("PSL2({q})"),
                    group: psl.group().clone(),
                    sz: None,
                }
            } else {
                let g = psl.group().direct_product(psl.group());
                Built {
                    label: format!("PSL2({q})xPSL2({q})"),
                    group: g,
                    sz: None,
                }
            }
        }
    })
}

fn classes(g: &PermGroup, cfg: &RunConfig) -> Result<Vec<ClassOrbit>> {
    if g.order() > cfg.caps.group {
        bail!(
            "group order {} exceeds the group cap {}",
            g.order(),
            cfg.caps.group
        );
    }
    Ok(conjugacy_classes(g, cfg.caps.group)?)
}

fn group_info(b: &Built) -> Value {
    json!({
        "label": b.label,
        "order": b.group.order(),
        "degree": b.group.degree(),
        "generators": b.group.generators(),
    })
}

pub fn group(action: &GroupAction, cfg: &RunConfig) -> Result<Output> {
    let GroupAction::Build { group } = action;
    let b = build(group)?;
    Ok(Output::one(
        document(cfg, "group build", group_info(&b))?,
        true,
    ))
}

pub fn list_classes(spec: &GroupSpec, cfg: &RunConfig) -> Result<Output> {
    let b = build(spec)?;
    let mut out = Vec::new();
    for (i, c) in classes(&b.group, cfg)?.iter().enumerate() {
        let rep = c.representative();
        out.push(json!({
            "index": i,
            "representative": rep,
            "size": c.len(),
            "element_order": rep.order(),
            "centralizer_order": centralizer_from_orbit(&b.group, c).order(),
            "is_real": is_real(&b.group, rep, cfg.caps.orbit)?,
        }));
    }
    let payload = json!({ "group": b.label, "order": b.group.order(), "classes": out });
    Ok(Output::one(document(cfg, "classes", payload)?, true))
}

/// Torus-conjugate F seeds and the `⟨t, U⁻⟩` candidate for Suzuki classes.
fn suzuki_hints(ctx: &SzContext, class: &ClassOrbit) -> Result<Hints> {
    let f = ctx.field();
    let torus: Vec<Perm> = f
        .units()
        .map(|k| ctx.t_perm(&k))
        .collect::<Result<_, _>>()?;
    let mut base = None;
    'search: for a in f.units() {
        for b in f.elements() {
            let u = ctx.u_perm(&a, &b)?;
            if class.contains(&u) {
                base = Some(u);
                break 'search;
            }
        }
    }
    let mut h_gens = vec![ctx.torus_generator()];
    h_gens.extend(ctx.unipotent().generators().iter().cloned());
    Ok(Hints {
        f_seeds: base
            .map(|base| FSeeds {
                base,
                conjugators: torus,
            })
            .into_iter()
            .collect(),
        c_subgroups: vec![StructuralSubgroup {
            label: "<t,U->".into(),
            generators: h_gens,
        }],
    })
}

pub fn run_classify(
    spec: &GroupSpec,
    filter: &ClassFilter,
    strategy: StrategyArg,
    cfg: &RunConfig,
) -> Result<Output> {
    let b = build(spec)?;
    let all = classes(&b.group, cfg)?;
    if let Some(i) = filter.class {
        if i >= all.len() {
            bail!(UsageError(format!(
                "--class {i} out of range ({} classes)",
                all.len()
            )));
        }
    }
    let mut documents = Vec::new();
    for (i, c) in all.into_iter().enumerate() {
        if filter.class.is_some_and(|k| k != i)
            || filter
                .class_order
                .is_some_and(|o| c.representative().order() != o)
        {
            continue;
        }
        let mut opts = SearchOptions::exhaustive(b.label.clone());
        opts.caps = cfg.caps;
        opts.budgets = cfg.budgets;
        if strategy == StrategyArg::Random {
            opts.strategy = Strategy::Random {
                seed: cfg.seed,
                budget: cfg.budgets.random,
            };
        }
        if let Some(ctx) = &b.sz {
            opts.hints = suzuki_hints(ctx, &c)?;
        }
        let rack = ConjClassRack::from_orbit(&b.group, c);
        let report = classify(&rack, &opts)?;
        let mut doc = document(cfg, "classify", &report)?;
        doc["class_index"] = json!(i);
        documents.push(doc);
    }
    Ok(Output {
        documents,
        success: true,
    })
}

pub fn braiding(
    group: BraidingGroup,
    h: usize,
    class: Option<usize>,
    abelian: AbelianArg,
    cfg: &RunConfig,
) -> Result<Output> {
    let cap = cfg.caps.orbit;
    let (label, ambient, default_g, explicit): (
        String,
        PermGroup,
        Perm,
        Option<(PermGroup, Vec<Perm>)>,
    ) = match group {
        BraidingGroup::Sz => {
            if h == 0 || h > MAX_H {
                bail!(UsageError(format!("--h must lie in 1..={MAX_H}")));
            }
            let ctx = build_sz(h)?;
            let f = ctx.field();
            let g = ctx.u_perm(&f.zero(), &f.one())?;
            let torus: Vec<Perm> = f
                .units()
                .map(|k| ctx.t_perm(&k))
                .collect::<Result<_, _>>()?;
            (
                format!("T.Z(U-) in Sz({})", ctx.q()),
                ctx.subgroup_t_zu(),
                g,
                Some((ctx.center_of_unipotent(), torus)),
            )
        }
        BraidingGroup::Ree => {
            let ree = build_2g2_3()?;
            let phi = ree.phi().clone();
            let report = verify_prop_g2_uni()?;
            let gc = report.cyclic_conjugator;
            let a = PermGroup::new(ree.group().degree(), report.intersection)?;
            let conj = vec![Perm::identity(ree.group().degree()), gc.clone(), gc.pow(2)];
            ("2G2(3)".into(), ree.group().clone(), phi, Some((a, conj)))
        }
    };
    let g = match class {
        None => default_g,
        Some(i) => {
            let all = classes(&ambient, cfg)?;
            all.get(i)
                .ok_or_else(|| {
                    anyhow!(UsageError(format!(
                        "--class {i} out of range ({} classes)",
                        all.len()
                    )))
                })?
                .representative()
                .clone()
        }
    };
    let setting = match abelian {
        AbelianArg::Auto => {
            let c = centralizer(&ambient, &g, cap)?;
            let orbit = conj_orbit(&g, ambient.generators(), cap)?;
            let inter: Vec<Perm> = orbit
                .elements()
                .iter()
                .filter(|x| c.contains(x))
                .cloned()
                .collect();
            let a = PermGroup::new(ambient.degree(), inter)?;
            if !a.is_abelian() {
                bail!("<O cap C(g)> is not abelian; no diagonal braiding");
            }
            AbelianSetting::new(&ambient, &g, &a, cap)?
        }
        AbelianArg::Explicit => {
            if class.is_some() {
                bail!(UsageError(
                    "--abelian explicit fixes the element; drop --class".into()
                ));
            }
            let (a, conj) = explicit.expect("both groups have an explicit setting");
            AbelianSetting::with_conjugators(&ambient, &g, &a, conj, cap)?
        }
    };
    let mut chars = Vec::new();
    for chi in setting.characters() {
        let b = setting.braiding(&chi)?;
        chars.push(json!({
            "character": chi.exponents(),
            "matrix": b.entries(),
            "gdd": gdd(&b),
            "verdict": verdict(&b),
        }));
    }
    let payload = json!({
        "group": label,
        "element": g,
        "abelian_order": setting.decomposition().order(),
        "decomposition": setting.decomposition().orders(),
        "points": setting.points(),
        "conjugators": setting.conjugators(),
        "characters": chars,
    });
    Ok(Output::one(document(cfg, "braiding", payload)?, true))
}

pub fn verify_paper(h_max: usize, cfg: &RunConfig) -> Result<Output> {
    if h_max > MAX_H {
        bail!(UsageError(format!("--h-max {h_max} exceeds {MAX_H}")));
    }
    let results = run_all(&CheckOptions { h_max });
    let failed: Vec<&str> = results
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.name)
        .collect();
    let payload = json!({
        "total": results.len(),
        "passed": results.len() - failed.len(),
        "failed": failed,
        "checks": results,
    });
    Ok(Output::one(
        document(cfg, "verify-paper", payload)?,
        failed.is_empty(),
    ))
}

pub fn rack(action: &RackAction, cfg: &RunConfig) -> Result<Output> {
    match action {
        RackAction::Check {
            group,
            class,
            samples,
        } => {
            let b = build(group)?;
            let all = classes(&b.group, cfg)?;
            let n = all.len();
            let c = all.into_iter().nth(*class).ok_or_else(|| {
                anyhow!(UsageError(format!(
                    "--class {class} out of range ({n} classes)"
                )))
            })?;
            let rack = ConjClassRack::from_orbit(&b.group, c);
            let report = check_axioms(&rack, *samples, cfg.seed);
            let ok = report.passed();
            let payload = json!({
                "group": b.label,
                "class_index": class,
                "representative": rack.representative(),
                "indecomposable": is_indecomposable(&rack),
                "report": report,
            });
            Ok(Output::one(document(cfg, "rack check", payload)?, ok))
        }
        RackAction::VerifyCert { path } => {
            let text = if path == "-" {
                std::io::read_to_string(std::io::stdin())?
            } else {
                std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?
            };
            let cert: CollapseCertificate = serde_json::from_str(&text)
                .map_err(|e| anyhow!(UsageError(format!("not a certificate: {e}"))))?;
            let result = verify_detailed(&cert, cfg.caps.orbit);
            let payload = json!({
                "kind": cert.kind,
                "group": cert.group.label,
                "verified": result.is_ok(),
                "failure": result.as_ref().err().map(ToString::to_string),
            });
            Ok(Output::one(
                document(cfg, "rack verify-cert", payload)?,
                result.is_ok(),
            ))
        }
    }
}

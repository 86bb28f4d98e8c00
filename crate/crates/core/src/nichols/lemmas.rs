use std::sync::Arc;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;

use super::{gdd, verdict, AbelianSetting, NicholsError, Outcome, RootOfUnity, Rule, Verdict};
use crate::ffield::{FieldCtx, FieldElem, Subspace};
use crate::permgrp::{centralizer, conj_orbit, Perm, PermGroup};
use crate::ree_small::build_2g2_3;
use crate::suzuki::{build_sz, MAX_H};

const CAP: usize = 1 << 20;

/// The additive span of `{φ(k) + φ(k⁻¹) : k ∉ GF(2)}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpanReport {
    pub q: u64,
    pub generators: usize,
    pub dim: usize,
    pub contains_one: bool,
}

pub fn acca_span(field: &Arc<FieldCtx>) -> Result<SpanReport, NicholsError> {
    let mut gens = Vec::new();
    for k in field.units().filter(|k| !k.is_one()) {
        gens.push(k.phi()?.checked_add(&k.inv()?.phi()?)?);
    }
    let span = Subspace::span(field, &gens);
    Ok(SpanReport {
        q: field.q(),
        generators: gens.len(),
        dim: span.dim(),
        contains_one: span.contains(&field.one()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AccaMode {
    Full,
    SpanOnly,
}

/// The `k`-power cycle `1, k, k², …` whose edges all carry the label −1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerCycle {
    pub k: u64,
    pub vertices: Vec<usize>,
    pub labels_minus_one: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AccaCharacter {
    pub exponents: Vec<u64>,
    pub value_at_g: RootOfUnity,
    pub verdict: Verdict,
    pub verdict_rechecks: bool,
    /// `q_kl = χ(U(0, φ(l k⁻¹)))` at every entry.
    pub formula_holds: bool,
    /// The torus transversal gives the same matrix.
    pub transversal_invariant: bool,
    pub power_cycle: Option<PowerCycle>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AccaReport {
    pub h: usize,
    pub q: u64,
    pub mode: AccaMode,
    pub span: SpanReport,
    pub subgroup_order: Option<u64>,
    pub class_size: Option<usize>,
    pub decomposition: Vec<u64>,
    pub characters: Vec<AccaCharacter>,
}

impl AccaReport {
    pub fn passed(&self) -> bool {
        self.span.contains_one
            && self.characters.iter().all(|c| {
                let rule_ok = match c.verdict.rule() {
                    Some(Rule::R1) => c.value_at_g.is_one(),
                    Some(Rule::R2) => c.power_cycle.as_ref().is_some_and(|p| p.labels_minus_one),
                    _ => false,
                };
                rule_ok && c.verdict_rechecks && c.formula_holds && c.transversal_invariant
            })
    }
}

/// Full check for `h = 1`; for `h = 2` only the span fact over GF(32).
pub fn verify_lemma_acca(h: usize) -> Result<AccaReport, NicholsError> {
    if h == 0 || h > MAX_H {
        return Err(NicholsError::UnsupportedH(h));
    }
    if h > 1 {
        let field = FieldCtx::suzuki(h)?;
        return Ok(AccaReport {
            h,
            q: field.q(),
            mode: AccaMode::SpanOnly,
            span: acca_span(&field)?,
            subgroup_order: None,
            class_size: None,
            decomposition: Vec::new(),
            characters: Vec::new(),
        });
    }
    let ctx = build_sz(h)?;
    let f = ctx.field().clone();
    let zero = f.zero();
    let span = acca_span(&f)?;
    let big_h = ctx.subgroup_t_zu();
    let a = ctx.center_of_unipotent();
    let g = ctx.u_perm(&zero, &f.one())?;
    let setting = AbelianSetting::new(&big_h, &g, &a, CAP)?;
    let class_size = conj_orbit(&g, big_h.generators(), CAP)?.len();

    let mut unit_of: FxHashMap<Perm, FieldElem> = FxHashMap::default();
    let mut torus: FxHashMap<Perm, Perm> = FxHashMap::default();
    for k in f.units() {
        let t = ctx.t_perm(&k)?;
        let x = t.conj(&g);
        torus.insert(x.clone(), t);
        unit_of.insert(x, k);
    }
    let ks: Vec<FieldElem> = setting
        .points()
        .iter()
        .map(|x| unit_of[x].clone())
        .collect();
    let index_of: FxHashMap<u64, usize> = ks
        .iter()
        .enumerate()
        .map(|(i, k)| (k.to_int(), i))
        .collect();
    let alt_conj: Vec<Perm> = setting.points().iter().map(|x| torus[x].clone()).collect();
    let alt = AbelianSetting::with_conjugators(&big_h, &g, &a, alt_conj, CAP)?;
    let u0 = |b: &FieldElem| ctx.u_perm(&zero, b).expect("valid field element");
    let dec = setting.decomposition();

    let characters: Vec<Result<AccaCharacter, NicholsError>> = setting
        .characters()
        .par_iter()
        .map(|chi| {
            let b = setting.braiding(chi)?;
            let v = verdict(&b);
            if v.outcome == Outcome::Unknown {
                return Err(NicholsError::UnknownVerdict(chi.exponents().to_vec()));
            }
            let chi_u = |x: &FieldElem| chi.eval(dec, &u0(x)).expect("U(0,b) lies in A");
            let mut formula_holds = true;
            for (i, ki) in ks.iter().enumerate() {
                for (j, kj) in ks.iter().enumerate() {
                    let arg = kj.checked_div(ki)?.phi()?;
                    formula_holds &= b.entry(i, j) == chi_u(&arg);
                }
            }
            let power_cycle = if chi_u(&f.one()).is_minus_one() {
                let mut found = None;
                for k in f.units().filter(|k| !k.is_one()) {
                    let s = k.phi()?.checked_add(&k.inv()?.phi()?)?;
                    if chi_u(&s).is_minus_one() {
                        let d = k.multiplicative_order().expect("unit");
                        let vertices: Vec<usize> =
                            (0..d).map(|e| index_of[&k.pow(e).to_int()]).collect();
                        let labels_minus_one = (0..vertices.len()).all(|e| {
                            b.edge_label(vertices[e], vertices[(e + 1) % vertices.len()])
                                .is_minus_one()
                        });
                        found = Some(PowerCycle {
                            k: k.to_int(),
                            vertices,
                            labels_minus_one,
                        });
                        break;
                    }
                }
                found
            } else {
                None
            };
            Ok(AccaCharacter {
                exponents: chi.exponents().to_vec(),
                value_at_g: b.entry(0, 0),
                verdict_rechecks: v.recheck(&b),
                verdict: v,
                formula_holds,
                transversal_invariant: alt.braiding(chi)?.entries() == b.entries(),
                power_cycle,
            })
        })
        .collect();
    Ok(AccaReport {
        h,
        q: f.q(),
        mode: AccaMode::Full,
        span,
        subgroup_order: Some(big_h.order()),
        class_size: Some(class_size),
        decomposition: dec.orders().to_vec(),
        characters: characters.into_iter().collect::<Result<_, _>>()?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct G2Character {
    pub exponents: Vec<u64>,
    /// `ω_i = χ(x_i)`.
    pub omegas: [RootOfUnity; 3],
    pub verdict: Verdict,
    pub verdict_rechecks: bool,
    /// `q_ij = ω_{(i−j) mod 3}`.
    pub formula_holds: bool,
    /// `q₀₁q₁₀ = q₁₂q₂₁ = q₀₂q₂₀ = ω₀²`.
    pub edge_labels_hold: bool,
    /// `ω₀ω₁ω₂ = 1`.
    pub product_is_one: bool,
    pub gdd_connected: bool,
    /// The transversal `gᶜ^i · a_i` with `a_i ∈ A` gives the same matrix.
    pub transversal_invariant: bool,
    /// Same comparison against the class-orbit transversal, whose
    /// conjugators differ from `gᶜ^i` by elements of `C(φ)` outside `A`;
    /// informational only.
    pub class_transversal_invariant: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct G2Report {
    pub group_order: u64,
    pub centralizer_order: u64,
    pub class_size: usize,
    /// `O_φ ∩ C(φ)` as `x₀ = φ, x₁, x₂`.
    pub intersection: Vec<Perm>,
    pub intersection_commuting: bool,
    pub abelian_order: u64,
    pub decomposition: Vec<u64>,
    /// `x₀x₁x₂ = 1`.
    pub points_multiply_to_one: bool,
    pub cyclic_conjugator: Perm,
    /// Which candidate of the search succeeded: `z`, `y⁻¹` or `yz`.
    pub conjugator_choice: &'static str,
    pub characters: Vec<G2Character>,
}

impl G2Report {
    pub fn passed(&self) -> bool {
        self.centralizer_order == 18
            && self.intersection.len() == 3
            && self.intersection_commuting
            && self.abelian_order == 9
            && self.points_multiply_to_one
            && self.characters.len() == 9
            && self.characters.iter().all(|c| {
                let rule_ok = match c.verdict.rule() {
                    Some(Rule::R1) => c.omegas[0].is_one(),
                    Some(Rule::R3) => c.omegas[0].order() == 3 && c.gdd_connected,
                    _ => false,
                };
                rule_ok
                    && c.verdict_rechecks
                    && c.formula_holds
                    && c.edge_labels_hold
                    && c.product_is_one
                    && c.transversal_invariant
            })
    }
}

fn cycles_three(c: &Perm, xs: &[Perm]) -> bool {
    (0..3).all(|i| c.conj(&xs[i]) == xs[(i + 1) % 3])
}

/// Finds `c` with `c▷x_i = x_{i+1 mod 3}`, starting from `z▷x₀ = x₁`.
fn cyclic_conjugator(
    xs: &[Perm],
    to: impl Fn(&Perm) -> Perm,
) -> Result<(Perm, &'static str), NicholsError> {
    let z = to(&xs[1]);
    if z.inverse().conj(&xs[0]) == xs[2] && cycles_three(&z, xs) {
        return Ok((z, "z"));
    }
    let y = to(&xs[2]);
    let y_inv = y.inverse();
    if cycles_three(&y_inv, xs) {
        return Ok((y_inv, "y^-1"));
    }
    let yz = y.compose(&z);
    if cycles_three(&yz, xs) {
        return Ok((yz, "yz"));
    }
    Err(NicholsError::NoCyclicConjugator)
}

pub fn verify_prop_g2_uni() -> Result<G2Report, NicholsError> {
    let ree = build_2g2_3()?;
    let g = ree.group();
    let phi = ree.phi().clone();
    let c = centralizer(g, &phi, CAP)?;
    let orbit = conj_orbit(&phi, g.generators(), CAP)?;
    let xs: Vec<Perm> = orbit
        .elements()
        .iter()
        .filter(|x| c.contains(x))
        .cloned()
        .collect();
    let intersection_commuting = xs.iter().all(|x| xs.iter().all(|y| x.commutes_with(y)));
    if xs.len() != 3 || !intersection_commuting {
        return Err(NicholsError::NotAbelian);
    }
    let a = PermGroup::new(g.degree(), xs.iter().cloned())?;
    let to = |x: &Perm| orbit.conjugator_to(x).expect("x lies in the class").clone();
    let (gc, choice) = cyclic_conjugator(&xs, to)?;
    let identity = Perm::identity(g.degree());
    let setting = AbelianSetting::with_conjugators(
        g,
        &phi,
        &a,
        vec![identity.clone(), gc.clone(), gc.pow(2)],
        CAP,
    )?;
    let shifted = vec![xs[1].clone(), gc.compose(&xs[2]), gc.pow(2).compose(&xs[1])];
    let alt = AbelianSetting::with_conjugators(g, &phi, &a, shifted, CAP)?;
    let bfs = AbelianSetting::with_conjugators(g, &phi, &a, xs.iter().map(to).collect(), CAP)?;
    let dec = setting.decomposition();
    let characters: Vec<Result<G2Character, NicholsError>> = setting
        .characters()
        .par_iter()
        .map(|chi| {
            let b = setting.braiding(chi)?;
            let v = verdict(&b);
            if v.outcome == Outcome::Unknown {
                return Err(NicholsError::UnknownVerdict(chi.exponents().to_vec()));
            }
            let w = |i: usize| chi.eval(dec, &xs[i]).expect("x_i lies in A");
            let omegas = [w(0), w(1), w(2)];
            let formula_holds =
                (0..3).all(|i| (0..3).all(|j| b.entry(i, j) == omegas[(i + 3 - j) % 3]));
            let sq = omegas[0] * omegas[0];
            let edge_labels_hold = [(0, 1), (1, 2), (0, 2)]
                .iter()
                .all(|&(i, j)| b.edge_label(i, j) == sq)
                && omegas[1] * omegas[2] == sq;
            Ok(G2Character {
                exponents: chi.exponents().to_vec(),
                omegas,
                verdict_rechecks: v.recheck(&b),
                verdict: v,
                formula_holds,
                edge_labels_hold,
                product_is_one: (omegas[0] * omegas[1] * omegas[2]).is_one(),
                gdd_connected: gdd(&b).is_connected(),
                transversal_invariant: alt.braiding(chi)?.entries() == b.entries(),
                class_transversal_invariant: bfs.braiding(chi)?.entries() == b.entries(),
            })
        })
        .collect();
    Ok(G2Report {
        group_order: g.order(),
        centralizer_order: c.order(),
        class_size: orbit.len(),
        points_multiply_to_one: xs[0].compose(&xs[1]).compose(&xs[2]).is_identity(),
        intersection: xs,
        intersection_commuting,
        abelian_order: a.order(),
        decomposition: dec.orders().to_vec(),
        cyclic_conjugator: gc,
        conjugator_choice: choice,
        characters: characters.into_iter().collect::<Result<_, _>>()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn acca_h1() {
        let r = verify_lemma_acca(1).unwrap();
        assert_eq!(r.subgroup_order, Some(56));
        assert_eq!(r.class_size, Some(7));
        assert_eq!(r.decomposition, vec![2, 2, 2]);
        assert_eq!(r.characters.len(), 8);
        assert!(r.passed(), "{r:#?}");
        let r1 = r
            .characters
            .iter()
            .filter(|c| c.verdict.rule() == Some(Rule::R1))
            .count();
        assert_eq!(r1, 4);
        assert_eq!(r.characters[0].verdict.rule(), Some(Rule::R1));
    }

    #[test]
    fn acca_h2_span() {
        let r = verify_lemma_acca(2).unwrap();
        assert_eq!(r.mode, AccaMode::SpanOnly);
        assert_eq!(r.q, 32);
        assert!(r.span.contains_one);
        assert!(matches!(
            verify_lemma_acca(0),
            Err(NicholsError::UnsupportedH(0))
        ));
        assert!(matches!(
            verify_lemma_acca(3),
            Err(NicholsError::UnsupportedH(3))
        ));
    }

    #[test]
    fn g2_uni() {
        let r = verify_prop_g2_uni().unwrap();
        assert_eq!(r.group_order, 1512);
        assert_eq!(r.decomposition, vec![3, 3]);
        assert!(r.passed(), "{r:#?}");
        let r3 = r
            .characters
            .iter()
            .filter(|c| c.verdict.rule() == Some(Rule::R3))
            .count();
        assert_eq!(r3, 6);
        let moved = r
            .characters
            .iter()
            .filter(|c| !c.class_transversal_invariant)
            .count();
        assert_eq!(moved, 6);
    }
}

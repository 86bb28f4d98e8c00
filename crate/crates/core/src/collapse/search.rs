use rand::{RngExt, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;

use super::{
    check_type_c, check_type_f, generates_exactly, size_condition, CollapseCertificate,
    CollapseError, CollapseKind, GroupInfo, PairProfile,
};
use crate::config::{Budgets, Caps};
use crate::permgrp::{centralizer_from_orbit, conj_orbit, Perm, PermGroup};
use crate::rackkit::{ConjClassRack, Rack};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Strategy {
    Exhaustive,
    Random { seed: u64, budget: u64 },
}

/// Quadruple seeds `c ▷ base` for `c` in `conjugators`.
#[derive(Debug, Clone)]
pub struct FSeeds {
    pub base: Perm,
    pub conjugators: Vec<Perm>,
}

/// A candidate `H` for type C beyond `⟨r, s⟩`.
#[derive(Debug, Clone)]
pub struct StructuralSubgroup {
    pub label: String,
    pub generators: Vec<Perm>,
}

/// Structured candidates tried before any generic scan.
#[derive(Debug, Clone, Default)]
pub struct Hints {
    pub f_seeds: Vec<FSeeds>,
    pub c_subgroups: Vec<StructuralSubgroup>,
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub strategy: Strategy,
    pub caps: Caps,
    pub budgets: Budgets,
    pub hints: Hints,
    pub group_label: String,
}

impl SearchOptions {
    pub fn exhaustive(group_label: impl Into<String>) -> Self {
        SearchOptions {
            strategy: Strategy::Exhaustive,
            caps: Caps::default(),
            budgets: Budgets::default(),
            hints: Hints::default(),
            group_label: group_label.into(),
        }
    }

    pub fn with_hints(mut self, hints: Hints) -> Self {
        self.hints = hints;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NotFoundReason {
    SearchSpaceExhausted,
    BudgetExhausted,
}

/// A failed search. This is evidence only: the detectors are one-sided.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NotFound {
    pub kind: CollapseKind,
    pub reason: NotFoundReason,
    pub strategy: Strategy,
    pub candidates_examined: u64,
    pub status: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SearchOutcome {
    Found {
        certificate: Box<CollapseCertificate>,
    },
    NotFound(NotFound),
}

impl SearchOutcome {
    pub fn certificate(&self) -> Option<&CollapseCertificate> {
        match self {
            SearchOutcome::Found { certificate } => Some(certificate),
            SearchOutcome::NotFound(_) => None,
        }
    }
}

/// The class with `r` fixed to its representative, and the orbits of
/// `C_G(r)` on the class; scans only visit the least index of each orbit.
struct Scan<'a, 'g> {
    rack: &'a ConjClassRack<'g>,
    opts: &'a SearchOptions,
    reps: Vec<usize>,
    orbit_rep: Vec<u32>,
}

impl<'a, 'g> Scan<'a, 'g> {
    fn new(rack: &'a ConjClassRack<'g>, opts: &'a SearchOptions) -> Self {
        let n = rack.size();
        let cent = centralizer_from_orbit(rack.ambient(), rack.orbit());
        let mut orbit_rep = vec![u32::MAX; n];
        let mut reps = Vec::new();
        for i in 0..n {
            if orbit_rep[i] != u32::MAX {
                continue;
            }
            reps.push(i);
            orbit_rep[i] = i as u32;
            let mut stack = vec![i];
            while let Some(k) = stack.pop() {
                for c in cent.generators() {
                    let j = rack
                        .position(&c.conj(rack.element(k)))
                        .expect("class is closed");
                    if orbit_rep[j] == u32::MAX {
                        orbit_rep[j] = i as u32;
                        stack.push(j);
                    }
                }
            }
        }
        Scan {
            rack,
            opts,
            reps,
            orbit_rep,
        }
    }

    fn r(&self) -> &Perm {
        self.rack.representative()
    }

    fn cap(&self) -> usize {
        self.opts.caps.orbit
    }

    fn certificate(
        &self,
        kind: CollapseKind,
        witnesses: Vec<Perm>,
        h: Option<Vec<Perm>>,
    ) -> Result<SearchOutcome, CollapseError> {
        let seed = match self.opts.strategy {
            Strategy::Random { seed, .. } => Some(seed),
            Strategy::Exhaustive => None,
        };
        let info = GroupInfo::new(self.opts.group_label.clone(), self.rack.ambient());
        let cert = CollapseCertificate::new(kind, info, self.r().clone(), witnesses, h, seed)
            .seal(self.cap())
            .unwrap_or_else(|e| panic!("search produced an invalid {kind} certificate: {e}"));
        Ok(SearchOutcome::Found {
            certificate: Box::new(cert),
        })
    }

    fn not_found(&self, kind: CollapseKind, examined: u64, exhausted: bool) -> SearchOutcome {
        let reason = if exhausted && self.opts.strategy == Strategy::Exhaustive {
            NotFoundReason::SearchSpaceExhausted
        } else {
            NotFoundReason::BudgetExhausted
        };
        SearchOutcome::NotFound(NotFound {
            kind,
            reason,
            strategy: self.opts.strategy,
            candidates_examined: examined,
            status: "evidence",
        })
    }

    /// First `s` (in class order) with `pred(profile(r, s))`.
    fn pair_search(
        &self,
        need_sizes: bool,
        pred: impl Fn(&PairProfile) -> bool + Sync,
    ) -> Result<(Option<usize>, u64, bool), CollapseError> {
        let r = self.r();
        let cap = self.cap();
        match self.opts.strategy {
            Strategy::Exhaustive => {
                let all: Vec<usize> = self.reps.iter().copied().filter(|&s| s != 0).collect();
                let limit = (self.opts.budgets.pairs as usize).min(all.len());
                let hit = all[..limit]
                    .par_iter()
                    .enumerate()
                    .map(|(pos, &s)| {
                        let res = PairProfile::compute(r, self.rack.element(s), need_sizes, cap);
                        (pos, s, res.map(|p| pred(&p)))
                    })
                    .find_first(|(_, _, res)| !matches!(res, Ok(false)));
                match hit {
                    Some((_, _, Err(e))) => Err(e.into()),
                    Some((pos, s, Ok(_))) => Ok((Some(s), pos as u64 + 1, false)),
                    None => Ok((None, limit as u64, limit == all.len())),
                }
            }
            Strategy::Random { seed, budget } => {
                let n = self.rack.size();
                if n < 2 {
                    return Ok((None, 0, true));
                }
                let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
                for t in 0..budget {
                    let s = rng.random_range(1..n);
                    let p = PairProfile::compute(r, self.rack.element(s), need_sizes, cap)?;
                    if pred(&p) {
                        return Ok((Some(s), t + 1, false));
                    }
                }
                Ok((None, budget, false))
            }
        }
    }

    fn find_d(&self) -> Result<SearchOutcome, CollapseError> {
        let (hit, examined, exhausted) = self.pair_search(false, PairProfile::is_type_d)?;
        match hit {
            Some(s) => self.certificate(
                CollapseKind::D,
                vec![self.r().clone(), self.rack.element(s).clone()],
                None,
            ),
            None => Ok(self.not_found(CollapseKind::D, examined, exhausted)),
        }
    }

    fn find_c(&self) -> Result<SearchOutcome, CollapseError> {
        let mut examined = 0;
        for hint in &self.opts.hints.c_subgroups {
            let (found, n) = self.structural_c(hint)?;
            examined += n;
            if let Some((r, s)) = found {
                return self.certificate(
                    CollapseKind::C,
                    vec![r, s],
                    Some(hint.generators.clone()),
                );
            }
        }
        let (hit, n, exhausted) = self.pair_search(true, PairProfile::is_type_c_pair)?;
        examined += n;
        match hit {
            Some(s) => {
                let r = self.r().clone();
                let s = self.rack.element(s).clone();
                let h = vec![r.clone(), s.clone()];
                self.certificate(CollapseKind::C, vec![r, s], Some(h))
            }
            None => Ok(self.not_found(CollapseKind::C, examined, exhausted)),
        }
    }

    /// Splits `O ∩ H` into `H`-classes and looks for a pair of classes
    /// satisfying (c) and (d), then a non-commuting pair across them.
    fn structural_c(
        &self,
        hint: &StructuralSubgroup,
    ) -> Result<(Option<(Perm, Perm)>, u64), CollapseError> {
        let g = self.rack.ambient();
        let h = PermGroup::new(g.degree(), hint.generators.iter().cloned())?;
        if !h.is_subgroup_of(g) {
            return Ok((None, 0));
        }
        let Ok(elements) = h.elements(self.opts.caps.group) else {
            return Ok((None, 0));
        };
        let mut inside: Vec<usize> = elements
            .iter()
            .filter_map(|x| self.rack.position(x))
            .collect();
        inside.sort_unstable();
        let mut assigned = vec![false; self.rack.size()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &i in &inside {
            if assigned[i] {
                continue;
            }
            let orbit = conj_orbit(self.rack.element(i), h.generators(), self.cap())?;
            let mut idx: Vec<usize> = orbit
                .elements()
                .iter()
                .map(|x| self.rack.position(x).expect("H ≤ G keeps the class"))
                .collect();
            idx.sort_unstable();
            for &k in &idx {
                assigned[k] = true;
            }
            classes.push(idx);
        }
        let mut examined = 0;
        for a in 0..classes.len() {
            for b in a + 1..classes.len() {
                examined += 1;
                let (x, y) = (&classes[a], &classes[b]);
                if !size_condition(x.len(), y.len()) {
                    continue;
                }
                let elems = x.iter().chain(y).map(|&i| self.rack.element(i));
                if !generates_exactly(&h, elems) {
                    continue;
                }
                for &i in x {
                    for &j in y {
                        let (r, s) = (self.rack.element(i), self.rack.element(j));
                        if !r.commutes_with(s) && check_type_c(r, s, &hint.generators, self.cap())?
                        {
                            return Ok((Some((r.clone(), s.clone())), examined));
                        }
                    }
                }
            }
        }
        Ok((None, examined))
    }

    fn find_f(&self) -> Result<SearchOutcome, CollapseError> {
        let mut examined = 0;
        for seeds in &self.opts.hints.f_seeds {
            let (found, n) = self.structured_f(seeds)?;
            examined += n;
            if let Some(w) = found {
                return self.certificate(CollapseKind::F, w, None);
            }
        }
        let (found, n, exhausted) = match self.opts.strategy {
            Strategy::Exhaustive => self.exhaustive_f()?,
            Strategy::Random { seed, budget } => self.random_f(seed, budget)?,
        };
        examined += n;
        match found {
            Some(w) => self.certificate(CollapseKind::F, w, None),
            None => Ok(self.not_found(CollapseKind::F, examined, exhausted)),
        }
    }

    fn structured_f(&self, seeds: &FSeeds) -> Result<(Option<Vec<Perm>>, u64), CollapseError> {
        if self.rack.position(&seeds.base).is_none() {
            return Ok((None, 0));
        }
        let mut list: Vec<Perm> = Vec::new();
        for c in &seeds.conjugators {
            let x = c.conj(&seeds.base);
            if !list.contains(&x) {
                list.push(x);
            }
        }
        let n = list.len();
        let mut examined = 0;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        examined += 1;
                        let quad = [
                            list[a].clone(),
                            list[b].clone(),
                            list[c].clone(),
                            list[d].clone(),
                        ];
                        if check_type_f(&quad, self.cap())? {
                            return Ok((Some(quad.to_vec()), examined));
                        }
                    }
                }
            }
        }
        Ok((None, examined))
    }

    /// `r₁ = r`; `r₂` over orbit representatives, `r₃ < r₄` over the class.
    /// Every pair must already have distinct orbits under its own span,
    /// since orbits only grow with the group.
    fn exhaustive_f(&self) -> Result<(Option<Vec<Perm>>, u64, bool), CollapseError> {
        let cap = self.cap();
        let budget = self.opts.budgets.quadruples;
        let r = self.r();
        let rep_ok: Vec<(usize, bool)> = self
            .reps
            .par_iter()
            .filter(|&&s| s != 0)
            .map(|&s| {
                PairProfile::compute(r, self.rack.element(s), false, cap)
                    .map(|p| (s, p.f_compatible()))
            })
            .collect::<Result<_, _>>()?;
        let mut examined = rep_ok.len() as u64;
        let compatible_rep: FxHashMap<u32, bool> =
            rep_ok.iter().map(|&(s, ok)| (s as u32, ok)).collect();
        let compat: Vec<usize> = (1..self.rack.size())
            .filter(|&i| {
                compatible_rep
                    .get(&self.orbit_rep[i])
                    .copied()
                    .unwrap_or(false)
            })
            .collect();
        let mut memo: FxHashMap<(usize, usize), bool> = FxHashMap::default();
        let mut pair_ok = |a: usize, b: usize, examined: &mut u64| -> Result<bool, CollapseError> {
            let key = (a.min(b), a.max(b));
            if let Some(&v) = memo.get(&key) {
                return Ok(v);
            }
            *examined += 1;
            let v = PairProfile::compute(self.rack.element(a), self.rack.element(b), false, cap)?
                .f_compatible();
            memo.insert(key, v);
            Ok(v)
        };
        for &r2 in self
            .reps
            .iter()
            .filter(|&&s| compatible_rep.get(&(s as u32)) == Some(&true))
        {
            let mut second = Vec::new();
            for &x in &compat {
                if x != r2 && pair_ok(r2, x, &mut examined)? {
                    second.push(x);
                }
                if examined >= budget {
                    return Ok((None, examined, false));
                }
            }
            for (k, &x) in second.iter().enumerate() {
                for &y in &second[k + 1..] {
                    if !pair_ok(x, y, &mut examined)? {
                        continue;
                    }
                    examined += 1;
                    let quad = [
                        r.clone(),
                        self.rack.element(r2).clone(),
                        self.rack.element(x).clone(),
                        self.rack.element(y).clone(),
                    ];
                    if check_type_f(&quad, cap)? {
                        return Ok((Some(quad.to_vec()), examined, false));
                    }
                    if examined >= budget {
                        return Ok((None, examined, false));
                    }
                }
            }
        }
        Ok((None, examined, true))
    }

    fn random_f(
        &self,
        seed: u64,
        budget: u64,
    ) -> Result<(Option<Vec<Perm>>, u64, bool), CollapseError> {
        let n = self.rack.size();
        if n < 4 {
            return Ok((None, 0, true));
        }
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
        for t in 0..budget {
            let mut idx = [0usize; 3];
            let mut k = 0;
            while k < 3 {
                let v = rng.random_range(1..n);
                if !idx[..k].contains(&v) {
                    idx[k] = v;
                    k += 1;
                }
            }
            let quad: Vec<Perm> = std::iter::once(self.r().clone())
                .chain(idx.iter().map(|&i| self.rack.element(i).clone()))
                .collect();
            if check_type_f(&quad, self.cap())? {
                return Ok((Some(quad), t + 1, false));
            }
        }
        Ok((None, budget, false))
    }
}

/// Searches the class for a witness of the given type.
///
/// Hints are tried first. The exhaustive strategy then fixes `r` to the class
/// representative and scans `s` in class order, skipping elements that a
/// centralizer element of `r` maps to an earlier one; the first success is
/// therefore the same one a full scan would return. Any emitted certificate
/// has passed [`super::verify`].
pub fn find_type(
    kind: CollapseKind,
    rack: &ConjClassRack<'_>,
    opts: &SearchOptions,
) -> Result<SearchOutcome, CollapseError> {
    let scan = Scan::new(rack, opts);
    match kind {
        CollapseKind::D => scan.find_d(),
        CollapseKind::C => scan.find_c(),
        CollapseKind::F => scan.find_f(),
    }
}

//! Permutation actions of matrix groups on sets of projective points.

use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::ffield::{FieldCtx, FieldElem, Matrix};
use crate::permgrp::Perm;

/// Scales `v` so its first nonzero coordinate is 1. Returns `None` for zero.
pub fn normalize(v: &[FieldElem]) -> Option<Vec<FieldElem>> {
    let lead = v.iter().find(|x| !x.is_zero())?;
    let inv = lead.inv().expect("nonzero");
    Some(v.iter().map(|x| x * &inv).collect())
}

fn key(v: &[FieldElem]) -> Vec<u64> {
    v.iter().map(FieldElem::to_int).collect()
}

/// A finite set of projective points, indexed `0..len`.
#[derive(Clone, Debug)]
pub struct PointSet {
    points: Vec<Vec<FieldElem>>,
    index: FxHashMap<Vec<u64>, u32>,
}

impl PointSet {
    /// Orbit of `<start>` under `mats`, in BFS order with `start` as point 0.
    pub fn orbit(start: &[FieldElem], mats: &[Matrix]) -> Self {
        let mut set = PointSet {
            points: Vec::new(),
            index: FxHashMap::default(),
        };
        set.push(normalize(start).expect("nonzero start vector"));
        let mut k = 0;
        while k < set.points.len() {
            for m in mats {
                let image = normalize(&m.apply(&set.points[k])).expect("invertible matrix");
                if !set.index.contains_key(&key(&image)) {
                    set.push(image);
                }
            }
            k += 1;
        }
        set
    }

    /// The projective line: `(1,0)` first, then `<(x,1)>` in field order.
    pub fn projective_line(ctx: &Arc<FieldCtx>) -> Self {
        let mut set = PointSet {
            points: Vec::new(),
            index: FxHashMap::default(),
        };
        set.push(vec![ctx.one(), ctx.zero()]);
        for x in ctx.elements() {
            set.push(normalize(&[x, ctx.one()]).expect("nonzero"));
        }
        set
    }

    fn push(&mut self, p: Vec<FieldElem>) {
        self.index.insert(key(&p), self.points.len() as u32);
        self.points.push(p);
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: u32) -> &[FieldElem] {
        &self.points[i as usize]
    }

    pub fn index_of(&self, v: &[FieldElem]) -> Option<u32> {
        normalize(v).and_then(|n| self.index.get(&key(&n)).copied())
    }

    /// Permutation induced by `f`, or `None` if `f` does not preserve the set.
    pub fn induced(&self, f: impl Fn(&[FieldElem]) -> Vec<FieldElem>) -> Option<Perm> {
        let images = self
            .points
            .iter()
            .map(|p| self.index_of(&f(p)))
            .collect::<Option<Vec<u32>>>()?;
        Perm::from_images(images).ok()
    }

    /// Permutation induced by `v -> M v`.
    pub fn perm_of(&self, m: &Matrix) -> Option<Perm> {
        self.induced(|v| m.apply(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_has_q_plus_one_points() {
        let f = FieldCtx::new(3, 2, None).unwrap();
        let line = PointSet::projective_line(&f);
        assert_eq!(line.len(), 10);
        let v = vec![f.from_int(2).unwrap(), f.from_int(4).unwrap()];
        let scaled: Vec<_> = v.iter().map(|x| x * &f.from_int(5).unwrap()).collect();
        assert_eq!(line.index_of(&v), line.index_of(&scaled));
        assert_eq!(line.index_of(&[f.zero(), f.zero()]), None);
    }

    #[test]
    fn matrix_action_is_a_homomorphism() {
        let f = FieldCtx::new(2, 3, None).unwrap();
        let line = PointSet::projective_line(&f);
        let a = Matrix::from_rows(vec![vec![f.one(), f.generator()], vec![f.zero(), f.one()]]);
        let b = Matrix::from_rows(vec![vec![f.one(), f.zero()], vec![f.one(), f.one()]]);
        let ab = line.perm_of(&(&a * &b)).unwrap();
        assert_eq!(
            ab,
            line.perm_of(&a)
                .unwrap()
                .compose(&line.perm_of(&b).unwrap())
        );
    }
}

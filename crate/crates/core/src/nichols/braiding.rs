use rustc_hash::FxHashSet;
use serde::Serialize;

use super::{Character, CyclicDecomposition, NicholsError, RootOfUnity};
use crate::permgrp::{conj_orbit, is_real, Perm, PermGroup};

/// `O ∩ A` for `O` the class of `g`, together with a transversal.
///
/// Stores `y_ij = g_j⁻¹ g_i ▷ g` for every pair, after checking that each
/// lies in `A`, so braidings for many characters are cheap.
#[derive(Debug, Clone)]
pub struct AbelianSetting {
    g: Perm,
    decomposition: CyclicDecomposition,
    points: Vec<Perm>,
    conjugators: Vec<Perm>,
    inner: Vec<Vec<Perm>>,
}

impl AbelianSetting {
    /// Uses the class-orbit transversal, points in BFS order.
    pub fn new(
        ambient: &PermGroup,
        g: &Perm,
        a: &PermGroup,
        cap: usize,
    ) -> Result<Self, NicholsError> {
        let decomposition = Self::precheck(g, a)?;
        let orbit = conj_orbit(g, ambient.generators(), cap)?;
        let (points, conjugators) = orbit
            .elements()
            .iter()
            .zip(orbit.conjugators())
            .filter(|(x, _)| decomposition.contains(x))
            .map(|(x, c)| (x.clone(), c.clone()))
            .unzip();
        Self::finish(g, decomposition, points, conjugators)
    }

    /// Uses caller-supplied conjugators `g_i`; `g_0 ▷ g` must be `g` and
    /// the `g_i ▷ g` must enumerate `O ∩ A` exactly once.
    pub fn with_conjugators(
        ambient: &PermGroup,
        g: &Perm,
        a: &PermGroup,
        conjugators: Vec<Perm>,
        cap: usize,
    ) -> Result<Self, NicholsError> {
        let decomposition = Self::precheck(g, a)?;
        let orbit = conj_orbit(g, ambient.generators(), cap)?;
        let expected: FxHashSet<&Perm> = orbit
            .elements()
            .iter()
            .filter(|x| decomposition.contains(x))
            .collect();
        let mut points = Vec::with_capacity(conjugators.len());
        let mut seen = FxHashSet::default();
        for (i, c) in conjugators.iter().enumerate() {
            let x = c.conj(g);
            let bad = !ambient.contains(c)
                || (i == 0 && &x != g)
                || !expected.contains(&x)
                || !seen.insert(x.clone());
            if bad {
                return Err(NicholsError::BadTransversal(i));
            }
            points.push(x);
        }
        if points.len() != expected.len() {
            return Err(NicholsError::BadTransversal(points.len()));
        }
        Self::finish(g, decomposition, points, conjugators)
    }

    fn precheck(g: &Perm, a: &PermGroup) -> Result<CyclicDecomposition, NicholsError> {
        if !a.contains(g) {
            return Err(NicholsError::NotInSubgroup);
        }
        if !a.generators().iter().all(|x| x.commutes_with(g)) {
            return Err(NicholsError::NotCentralizing);
        }
        CyclicDecomposition::new(a, u64::MAX)
    }

    fn finish(
        g: &Perm,
        decomposition: CyclicDecomposition,
        points: Vec<Perm>,
        conjugators: Vec<Perm>,
    ) -> Result<Self, NicholsError> {
        let inv: Vec<Perm> = conjugators.iter().map(Perm::inverse).collect();
        let mut inner = Vec::with_capacity(points.len());
        for (i, gi) in conjugators.iter().enumerate() {
            let mut row = Vec::with_capacity(points.len());
            for (j, gj_inv) in inv.iter().enumerate() {
                let y = gj_inv.compose(gi).conj(g);
                if !decomposition.contains(&y) {
                    return Err(NicholsError::ClosureViolation { i, j });
                }
                row.push(y);
            }
            inner.push(row);
        }
        Ok(AbelianSetting {
            g: g.clone(),
            decomposition,
            points,
            conjugators,
            inner,
        })
    }

    pub fn element(&self) -> &Perm {
        &self.g
    }

    pub fn decomposition(&self) -> &CyclicDecomposition {
        &self.decomposition
    }

    /// `x_0 = g, x_1, …`.
    pub fn points(&self) -> &[Perm] {
        &self.points
    }

    pub fn conjugators(&self) -> &[Perm] {
        &self.conjugators
    }

    pub fn characters(&self) -> Vec<Character> {
        self.decomposition.characters()
    }

    pub fn braiding(&self, chi: &Character) -> Result<BraidingMatrix, NicholsError> {
        if chi.exponents().len() != self.decomposition.orders().len() {
            return Err(NicholsError::CharacterMismatch);
        }
        let eval = |y: &Perm| chi.eval(&self.decomposition, y).expect("closure checked");
        let entries = self
            .inner
            .iter()
            .map(|row| row.iter().map(eval).collect())
            .collect();
        Ok(BraidingMatrix {
            entries,
            points: self.points.clone(),
            conjugators: self.conjugators.clone(),
            character: chi.exponents().to_vec(),
        })
    }
}

/// A braiding of diagonal type, `c(x_i ⊗ x_j) = q_ij x_j ⊗ x_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BraidingMatrix {
    entries: Vec<Vec<RootOfUnity>>,
    points: Vec<Perm>,
    conjugators: Vec<Perm>,
    character: Vec<u64>,
}

impl BraidingMatrix {
    /// A bare matrix with no group data attached. Panics if not square.
    pub fn from_entries(entries: Vec<Vec<RootOfUnity>>) -> Self {
        assert!(
            entries.iter().all(|r| r.len() == entries.len()),
            "braiding matrix must be square"
        );
        BraidingMatrix {
            entries,
            points: Vec::new(),
            conjugators: Vec::new(),
            character: Vec::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> RootOfUnity {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<RootOfUnity>] {
        &self.entries
    }

    pub fn points(&self) -> &[Perm] {
        &self.points
    }

    pub fn conjugators(&self) -> &[Perm] {
        &self.conjugators
    }

    pub fn character(&self) -> &[u64] {
        &self.character
    }

    /// `q_ij q_ji`.
    pub fn edge_label(&self, i: usize, j: usize) -> RootOfUnity {
        self.entries[i][j] * self.entries[j][i]
    }

    /// Reindexed so that new index `i` is old index `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let pick = |v: &[Perm]| {
            if v.is_empty() {
                Vec::new()
            } else {
                perm.iter().map(|&i| v[i].clone()).collect()
            }
        };
        BraidingMatrix {
            entries: perm
                .iter()
                .map(|&i| perm.iter().map(|&j| self.entries[i][j]).collect())
                .collect(),
            points: pick(&self.points),
            conjugators: pick(&self.conjugators),
            character: self.character.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GddEdge {
    pub i: usize,
    pub j: usize,
    pub label: RootOfUnity,
}

/// Generalized Dynkin diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gdd {
    pub vertices: Vec<RootOfUnity>,
    pub edges: Vec<GddEdge>,
}

impl Gdd {
    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                let w = if e.i == v {
                    e.j
                } else if e.j == v {
                    e.i
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

pub fn gdd(b: &BraidingMatrix) -> Gdd {
    let n = b.size();
    let vertices = (0..n).map(|i| b.entry(i, i)).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let label = b.edge_label(i, j);
            if !label.is_one() {
                edges.push(GddEdge { i, j, label });
            }
        }
    }
    Gdd { vertices, edges }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Rule {
    /// Some diagonal entry equals 1.
    R1,
    /// Diagonal all −1 and a cycle of −1-labeled edges.
    R2,
    /// The ω-triangle.
    R3,
    #[serde(rename = "AZ-real-odd")]
    AzRealOdd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Infinite(Rule),
    /// No rule fired; says nothing about finiteness.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Vertex(usize),
    Cycle(Vec<usize>),
    Triangle { omega: RootOfUnity },
    RealOddClass { order: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn is_infinite(&self) -> bool {
        matches!(self.outcome, Outcome::Infinite(_))
    }

    pub fn rule(&self) -> Option<Rule> {
        match self.outcome {
            Outcome::Infinite(r) => Some(r),
            Outcome::Unknown => None,
        }
    }

    /// Re-derives the verdict's claim from `b` alone.
    pub fn recheck(&self, b: &BraidingMatrix) -> bool {
        let n = b.size();
        let diag_all = |z: RootOfUnity| (0..n).all(|i| b.entry(i, i) == z);
        match (&self.outcome, &self.witness) {
            (Outcome::Infinite(Rule::R1), Some(Witness::Vertex(i))) => {
                *i < n && b.entry(*i, *i).is_one()
            }
            (Outcome::Infinite(Rule::R2), Some(Witness::Cycle(c))) => {
                let distinct = c.iter().collect::<FxHashSet<_>>().len() == c.len();
                distinct
                    && c.len() >= 3
                    && c.iter().all(|&i| i < n)
                    && diag_all(RootOfUnity::MINUS_ONE)
                    && (0..c.len()).all(|k| b.edge_label(c[k], c[(k + 1) % c.len()]).is_minus_one())
            }
            (Outcome::Infinite(Rule::R3), Some(Witness::Triangle { omega })) => {
                n == 3 && is_omega_triangle(b, *omega)
            }
            (Outcome::Unknown, None) => verdict(b).outcome == Outcome::Unknown,
            _ => false,
        }
    }
}

fn is_omega_triangle(b: &BraidingMatrix, omega: RootOfUnity) -> bool {
    omega.order() == 3
        && (0..3).all(|i| b.entry(i, i) == omega)
        && [(0, 1), (1, 2), (0, 2)]
            .iter()
            .all(|&(i, j)| b.edge_label(i, j) == omega * omega)
}

/// Applies R1, R2, R3 in that order.
pub fn verdict(b: &BraidingMatrix) -> Verdict {
    let n = b.size();
    if let Some(i) = (0..n).find(|&i| b.entry(i, i).is_one()) {
        return Verdict {
            outcome: Outcome::Infinite(Rule::R1),
            witness: Some(Witness::Vertex(i)),
        };
    }
    if (0..n).all(|i| b.entry(i, i).is_minus_one()) {
        if let Some(c) = minus_one_cycle(b) {
            return Verdict {
                outcome: Outcome::Infinite(Rule::R2),
                witness: Some(Witness::Cycle(c)),
            };
        }
    }
    if n == 3 && is_omega_triangle(b, b.entry(0, 0)) {
        return Verdict {
            outcome: Outcome::Infinite(Rule::R3),
            witness: Some(Witness::Triangle {
                omega: b.entry(0, 0),
            }),
        };
    }
    Verdict {
        outcome: Outcome::Unknown,
        witness: None,
    }
}

/// First cycle closed when adding −1-labeled edges in lexicographic order.
fn minus_one_cycle(b: &BraidingMatrix) -> Option<Vec<usize>> {
    let n = b.size();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(comp: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while comp[r] != r {
            r = comp[r];
        }
        comp[x] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if !b.edge_label(i, j).is_minus_one() {
                continue;
            }
            let (ri, rj) = (find(&mut comp, i), find(&mut comp, j));
            if ri == rj {
                return Some(forest_path(&adj, j, i));
            }
            comp[ri] = rj;
            adj[i].push(j);
            adj[j].push(i);
        }
    }
    None
}

fn forest_path(adj: &[Vec<usize>], from: usize, to: usize) -> Vec<usize> {
    let mut prev = vec![usize::MAX; adj.len()];
    prev[from] = from;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if prev[w] == usize::MAX {
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    let mut path = vec![to];
    let mut v = to;
    while v != from {
        v = prev[v];
        path.push(v);
    }
    path
}

/// Odd order > 1 and real.
pub fn az_real_odd(g: &PermGroup, x: &Perm, cap: usize) -> Result<bool, NicholsError> {
    if !g.contains(x) {
        return Err(NicholsError::NotInSubgroup);
    }
    let n = x.order();
    Ok(n > 1 && n % 2 == 1 && is_real(g, x, cap)?)
}

/// [`az_real_odd`] as a verdict.
pub fn az_real_odd_verdict(g: &PermGroup, x: &Perm, cap: usize) -> Result<Verdict, NicholsError> {
    Ok(if az_real_odd(g, x, cap)? {
        Verdict {
            outcome: Outcome::Infinite(Rule::AzRealOdd),
            witness: Some(Witness::RealOddClass { order: x.order() }),
        }
    } else {
        Verdict {
            outcome: Outcome::Unknown,
            witness: None,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, k: u64) -> RootOfUnity {
        RootOfUnity::new(n, k)
    }

    #[test]
    fn all_ones_is_r1_and_edgeless() {
        let b = BraidingMatrix::from_entries(vec![vec![z(1, 0); 3]; 3]);
        let d = gdd(&b);
        assert!(d.edges.is_empty());
        assert!(d.vertices.iter().all(|v| v.is_one()));
        let v = verdict(&b);
        assert_eq!(v.outcome, Outcome::Infinite(Rule::R1));
        assert!(v.recheck(&b));
    }

    #[test]
    fn isolated_pair() {
        let m = z(2, 1);
        let b = BraidingMatrix::from_entries(vec![vec![m, z(3, 1)], vec![z(3, 2), m]]);
        assert!(gdd(&b).edges.is_empty());
        let v = verdict(&b);
        assert_eq!(v.outcome, Outcome::Unknown);
        assert!(v.recheck(&b));
    }

    #[test]
    fn minus_one_square_is_r2() {
        let m = z(2, 1);
        let one = z(1, 0);
        // 4-cycle 0-1-2-3-0, chords absent.
        let mut e = vec![vec![one; 4]; 4];
        for i in 0..4 {
            e[i][i] = m;
            e[i][(i + 1) % 4] = m;
        }
        let b = BraidingMatrix::from_entries(e);
        let v = verdict(&b);
        assert_eq!(v.outcome, Outcome::Infinite(Rule::R2));
        assert!(v.recheck(&b));
        let Some(Witness::Cycle(c)) = &v.witness else {
            panic!()
        };
        assert_eq!(c.len(), 4);
    }

    #[test]
    fn omega_triangle_is_r3() {
        let w = z(3, 1);
        let b = BraidingMatrix::from_entries(vec![vec![w; 3]; 3]);
        let d = gdd(&b);
        assert_eq!(d.edges.len(), 3);
        assert!(d.edges.iter().all(|e| e.label == w * w));
        let v = verdict(&b);
        assert_eq!(v.outcome, Outcome::Infinite(Rule::R3));
        assert!(v.recheck(&b));
        let forged = Verdict {
            outcome: Outcome::Infinite(Rule::R1),
            witness: Some(Witness::Vertex(0)),
        };
        assert!(!forged.recheck(&b));
    }
}

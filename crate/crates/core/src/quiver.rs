//! Acyclic quivers as skew-symmetric exchange matrices.
//!
//! Vertices are 0-based in this API. The text and JSON forms use 1-based
//! labels, matching the convention that an arrow `i -> j` of an admissibly
//! labelled quiver has `i > j`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("quiver has no vertices")]
    Empty,
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid arrow {from}->{to}: {reason}")]
    InvalidArrow { from: usize, to: usize, reason: String },
    #[error("quiver has an oriented cycle")]
    NotAcyclic,
    #[error("exchange matrix is not square and skew-symmetric")]
    NotSkewSymmetric,
    #[error("quiver is not admissibly labelled (arrows must go from larger to smaller labels)")]
    NotAdmissible,
    #[error("automorphism search supports at most {max} vertices, got {n}")]
    VertexCountTooLarge { n: usize, max: usize },
}

/// Skew-symmetric integer exchange matrix; `b[i][j]` counts arrows `i -> j`
/// minus arrows `j -> i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    b: Vec<Vec<i64>>,
}

impl Quiver {
    pub fn from_exchange_matrix(b: Vec<Vec<i64>>) -> Result<Self, QuiverError> {
        let n = b.len();
        if n == 0 {
            return Err(QuiverError::Empty);
        }
        for i in 0..n {
            if b[i].len() != n {
                return Err(QuiverError::NotSkewSymmetric);
            }
            for j in 0..n {
                if b[i][j] != -b[j][i] {
                    return Err(QuiverError::NotSkewSymmetric);
                }
            }
        }
        Ok(Quiver { b })
    }

    /// Builds the quiver with exactly the given labels (1-based
    /// `(from, to, multiplicity)` triples). Fails on cycles; does not relabel.
    pub fn from_arrows(n: usize, arrows: &[(usize, usize, u32)]) -> Result<Self, QuiverError> {
        if n == 0 {
            return Err(QuiverError::Empty);
        }
        let mut b = vec![vec![0i64; n]; n];
        for &(from, to, m) in arrows {
            for v in [from, to] {
                if v == 0 || v > n {
                    return Err(QuiverError::VertexOutOfRange { vertex: v, n });
                }
            }
            if from == to {
                return Err(QuiverError::InvalidArrow {
                    from,
                    to,
                    reason: "self-loop".into(),
                });
            }
            if m == 0 {
                return Err(QuiverError::InvalidArrow {
                    from,
                    to,
                    reason: "multiplicity must be at least 1".into(),
                });
            }
            let (i, j) = (from - 1, to - 1);
            if b[i][j] < 0 {
                return Err(QuiverError::NotAcyclic);
            }
            b[i][j] += m as i64;
            b[j][i] -= m as i64;
        }
        let q = Quiver { b };
        if !q.is_acyclic() {
            return Err(QuiverError::NotAcyclic);
        }
        Ok(q)
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.b[i][j]
    }

    pub fn exchange_matrix(&self) -> &[Vec<i64>] {
        &self.b
    }

    /// Number of arrows `i -> j`.
    pub fn arrows(&self, i: usize, j: usize) -> u32 {
        self.b[i][j].max(0) as u32
    }

    /// 1-based `(from, to, multiplicity)` triples, ordered by `(from, to)`.
    pub fn arrow_list(&self) -> Vec<(usize, usize, u32)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.b[i][j] > 0 {
                    out.push((i + 1, j + 1, self.b[i][j] as u32));
                }
            }
        }
        out
    }

    pub fn is_sink(&self, i: usize) -> bool {
        self.b[i].iter().all(|&x| x <= 0)
    }

    pub fn is_source(&self, i: usize) -> bool {
        self.b[i].iter().all(|&x| x >= 0)
    }

    pub fn is_acyclic(&self) -> bool {
        topological_sink_order(self).is_some()
    }

    /// Every arrow `i -> j` has `i > j`.
    pub fn is_admissible(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (i..n).all(|j| self.b[i][j] <= 0))
    }

    /// Matrix mutation at vertex `k`.
    pub fn mutate(&self, k: usize) -> Quiver {
        let n = self.n();
        let b = &self.b;
        let mut out = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                out[i][j] = if i == k || j == k {
                    -b[i][j]
                } else {
                    b[i][j] + b[i][k].signum() * (b[i][k] * b[k][j]).max(0)
                };
            }
        }
        Quiver { b: out }
    }

    /// `mu_n o ... o mu_1`: mutate at vertices 0, 1, ..., n-1 in order.
    pub fn coxeter_mutate(&self) -> Quiver {
        (0..self.n()).fold(self.clone(), |q, k| q.mutate(k))
    }

    /// Applies a relabelling: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Quiver {
        let n = self.n();
        let mut out = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                out[perm[i]][perm[j]] = self.b[i][j];
            }
        }
        Quiver { b: out }
    }

    pub fn classify(&self) -> QuiverClass {
        classify(self)
    }

    /// First sink/source pair `(i, j)` in lexicographic order such that every
    /// other vertex `k` receives as many arrows from `j` as it sends to `i`.
    pub fn find_symmetry_pair(&self) -> Option<SymmetryPair> {
        let n = self.n();
        for i in 0..n {
            if !self.is_sink(i) {
                continue;
            }
            'outer: for j in 0..n {
                if j == i || !self.is_source(j) {
                    continue;
                }
                let mut mult = BTreeMap::new();
                for k in 0..n {
                    if k == i || k == j {
                        continue;
                    }
                    let into_sink = self.arrows(k, i);
                    if into_sink != self.arrows(j, k) {
                        continue 'outer;
                    }
                    if into_sink > 0 {
                        mult.insert(k, into_sink);
                    }
                }
                return Some(SymmetryPair {
                    sink: i,
                    source: j,
                    multiplicities: mult,
                });
            }
        }
        None
    }

    /// All vertex permutations `s` with `b[s(i)][s(j)] == b[i][j]`, in
    /// lexicographic order (identity first).
    pub fn automorphisms(&self) -> Result<Vec<Vec<usize>>, QuiverError> {
        const MAX: usize = 10;
        let n = self.n();
        if n > MAX {
            return Err(QuiverError::VertexCountTooLarge { n, max: MAX });
        }
        let mut out = Vec::new();
        let mut perm = Vec::with_capacity(n);
        let mut used = vec![false; n];
        self.extend_automorphism(&mut perm, &mut used, &mut out);
        Ok(out)
    }

    fn extend_automorphism(&self, perm: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let i = perm.len();
        if i == self.n() {
            out.push(perm.clone());
            return;
        }
        for img in 0..self.n() {
            if used[img] {
                continue;
            }
            let consistent = (0..i).all(|j| {
                self.b[img][perm[j]] == self.b[i][j] && self.b[perm[j]][img] == self.b[j][i]
            }) && self.b[img][img] == self.b[i][i];
            if !consistent {
                continue;
            }
            used[img] = true;
            perm.push(img);
            self.extend_automorphism(perm, used, out);
            perm.pop();
            used[img] = false;
        }
    }
}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quiver(n={}, arrows={:?})", self.n(), self.arrow_list())
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .arrow_list()
            .into_iter()
            .map(|(a, b, m)| if m == 1 { format!("{a}->{b}") } else { format!("{a}-{m}->{b}") })
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Repeatedly removes the smallest-index sink of the remaining graph;
/// returns the removal order, or `None` when a cycle blocks it.
fn topological_sink_order(q: &Quiver) -> Option<Vec<usize>> {
    let n = q.n();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n).find(|&v| {
            !removed[v] && (0..n).all(|w| removed[w] || q.b[v][w] <= 0)
        })?;
        removed[next] = true;
        order.push(next);
    }
    Some(order)
}

/// Result of [`load_quiver`]: the admissibly labelled quiver and, when the
/// input labels were not admissible, the relabelling applied (`perm[old] =
/// new`, 0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadedQuiver {
    pub quiver: Quiver,
    pub relabeling: Option<Vec<usize>>,
}

/// Validates an arrow list and relabels it admissibly when needed: sinks of
/// the remaining graph receive the smallest free labels.
pub fn load_quiver(n: usize, arrows: &[(usize, usize, u32)]) -> Result<LoadedQuiver, QuiverError> {
    if n == 0 {
        return Err(QuiverError::Empty);
    }
    let mut b = vec![vec![0i64; n]; n];
    for &(from, to, m) in arrows {
        for v in [from, to] {
            if v == 0 || v > n {
                return Err(QuiverError::VertexOutOfRange { vertex: v, n });
            }
        }
        if from == to {
            return Err(QuiverError::InvalidArrow {
                from,
                to,
                reason: "self-loop".into(),
            });
        }
        if m == 0 {
            return Err(QuiverError::InvalidArrow {
                from,
                to,
                reason: "multiplicity must be at least 1".into(),
            });
        }
        let (i, j) = (from - 1, to - 1);
        if b[i][j] < 0 {
            return Err(QuiverError::NotAcyclic);
        }
        b[i][j] += m as i64;
        b[j][i] -= m as i64;
    }
    let q = Quiver { b };
    let order = topological_sink_order(&q).ok_or(QuiverError::NotAcyclic)?;
    if q.is_admissible() {
        return Ok(LoadedQuiver {
            quiver: q,
            relabeling: None,
        });
    }
    let mut perm = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    Ok(LoadedQuiver {
        quiver: q.relabel(&perm),
        relabeling: Some(perm),
    })
}

/// JSON form `{"n": 3, "arrows": [[2,1,1],[3,1,1],[3,2,1]]}` with 1-based
/// vertices; a two-element arrow has multiplicity 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub n: usize,
    pub arrows: Vec<Vec<u64>>,
}

impl QuiverJson {
    pub fn load(&self) -> Result<LoadedQuiver, QuiverError> {
        let mut triples = Vec::with_capacity(self.arrows.len());
        for a in &self.arrows {
            let (from, to, m) = match a.as_slice() {
                [f, t] => (*f, *t, 1),
                [f, t, m] => (*f, *t, *m),
                _ => {
                    return Err(QuiverError::InvalidArrow {
                        from: a.first().copied().unwrap_or(0) as usize,
                        to: a.get(1).copied().unwrap_or(0) as usize,
                        reason: "arrow must be [from, to] or [from, to, multiplicity]".into(),
                    })
                }
            };
            let m = u32::try_from(m).map_err(|_| QuiverError::InvalidArrow {
                from: from as usize,
                to: to as usize,
                reason: "multiplicity too large".into(),
            })?;
            triples.push((from as usize, to as usize, m));
        }
        load_quiver(self.n, &triples)
    }
}

impl From<&Quiver> for QuiverJson {
    fn from(q: &Quiver) -> Self {
        QuiverJson {
            n: q.n(),
            arrows: q
                .arrow_list()
                .into_iter()
                .map(|(a, b, m)| vec![a as u64, b as u64, m as u64])
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepresentationType {
    Finite,
    Tame,
    Wild,
}

/// Representation type and, for Dynkin and extended Dynkin quivers, the
/// diagram name (`"A3"`, `"Ã2"`, `"Kronecker"`, ...).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverClass {
    pub kind: RepresentationType,
    pub diagram: Option<String>,
}

/// Sink `i` and source `j` with `n_k` arrows `k -> i` and `j -> k` for every
/// other vertex `k`; `multiplicities` holds the nonzero `n_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryPair {
    pub sink: usize,
    pub source: usize,
    pub multiplicities: BTreeMap<usize, u32>,
}

fn classify(q: &Quiver) -> QuiverClass {
    let n = q.n();
    let w = |i: usize, j: usize| q.b[i][j].unsigned_abs();
    let mut seen = vec![false; n];
    let mut parts = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut idx = 0;
        while idx < comp.len() {
            let v = comp[idx];
            idx += 1;
            for u in 0..n {
                if !seen[u] && w(v, u) > 0 {
                    seen[u] = true;
                    comp.push(u);
                }
            }
        }
        comp.sort_unstable();
        parts.push(classify_component(&comp, &w));
    }
    let kind = parts
        .iter()
        .map(|(k, _)| *k)
        .max_by_key(|k| match k {
            RepresentationType::Finite => 0,
            RepresentationType::Tame => 1,
            RepresentationType::Wild => 2,
        })
        .expect("nonempty quiver");
    let diagram = if kind == RepresentationType::Wild {
        None
    } else {
        let names: Option<Vec<String>> = parts.into_iter().map(|(_, name)| name).collect();
        names.map(|mut v| {
            v.sort();
            v.join("+")
        })
    };
    QuiverClass { kind, diagram }
}

fn classify_component(
    verts: &[usize],
    w: &dyn Fn(usize, usize) -> u64,
) -> (RepresentationType, Option<String>) {
    use RepresentationType::*;
    let n = verts.len();
    if n == 1 {
        return (Finite, Some("A1".into()));
    }
    let mut edges = 0usize;
    let mut max_w = 0u64;
    for (a, &i) in verts.iter().enumerate() {
        for &j in &verts[a + 1..] {
            let x = w(i, j);
            if x > 0 {
                edges += 1;
                max_w = max_w.max(x);
            }
        }
    }
    if max_w >= 3 {
        return (Wild, None);
    }
    if max_w == 2 {
        return if n == 2 {
            (Tame, Some("Kronecker".into()))
        } else {
            (Wild, None)
        };
    }
    let nbrs = |v: usize| -> Vec<usize> { verts.iter().copied().filter(|&u| u != v && w(v, u) > 0).collect() };
    let deg = |v: usize| nbrs(v).len();
    if edges == n {
        return if verts.iter().all(|&v| deg(v) == 2) {
            (Tame, Some(format!("Ã{}", n - 1)))
        } else {
            (Wild, None)
        };
    }
    if edges > n {
        return (Wild, None);
    }
    // tree
    let branch: Vec<usize> = verts.iter().copied().filter(|&v| deg(v) >= 3).collect();
    let arm = |center: usize, first: usize| -> usize {
        let (mut prev, mut cur, mut len) = (center, first, 1);
        loop {
            let next: Vec<usize> = nbrs(cur).into_iter().filter(|&u| u != prev).collect();
            if next.len() != 1 {
                return len;
            }
            prev = cur;
            cur = next[0];
            len += 1;
        }
    };
    match branch.as_slice() {
        [] => (Finite, Some(format!("A{n}"))),
        [c] if deg(*c) == 3 => {
            let mut arms: Vec<usize> = nbrs(*c).into_iter().map(|u| arm(*c, u)).collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => (Finite, Some(format!("D{n}"))),
                [1, 2, 2] => (Finite, Some("E6".into())),
                [1, 2, 3] => (Finite, Some("E7".into())),
                [1, 2, 4] => (Finite, Some("E8".into())),
                [2, 2, 2] => (Tame, Some("Ẽ6".into())),
                [1, 3, 3] => (Tame, Some("Ẽ7".into())),
                [1, 2, 5] => (Tame, Some("Ẽ8".into())),
                _ => (Wild, None),
            }
        }
        [c] if deg(*c) == 4 && n == 5 => (Tame, Some("D̃4".into())),
        [a, b] if deg(*a) == 3 && deg(*b) == 3 => {
            let leaves = |c: usize| nbrs(c).into_iter().filter(|&u| deg(u) == 1).count();
            if leaves(*a) == 2 && leaves(*b) == 2 {
                (Tame, Some(format!("D̃{}", n - 1)))
            } else {
                (Wild, None)
            }
        }
        _ => (Wild, None),
    }
}

/// Quivers used throughout the examples, admissibly labelled.
pub mod catalog {
    use super::Quiver;

    /// Linear `A_n`: `1 <- 2 <- ... <- n`.
    pub fn linear_a(n: usize) -> Quiver {
        let arrows: Vec<_> = (2..=n).map(|i| (i, i - 1, 1)).collect();
        Quiver::from_arrows(n, &arrows).expect("valid")
    }

    /// Generalized Kronecker quiver `1 <= 2` with `m` arrows.
    pub fn kronecker(m: u32) -> Quiver {
        Quiver::from_arrows(2, &[(2, 1, m)]).expect("valid")
    }

    /// `1 <= 2 <= 3` with double arrows.
    pub fn double_a3() -> Quiver {
        Quiver::from_arrows(3, &[(2, 1, 2), (3, 2, 2)]).expect("valid")
    }

    /// Affine `Ã_n` on `n + 1` vertices: `k+1 -> k` for `1 <= k <= n` and
    /// `n+1 -> 1`. For `n = 2` this is `2 -> 1, 3 -> 1, 3 -> 2`.
    pub fn affine_a(n: usize) -> Quiver {
        assert!(n >= 2);
        let mut arrows: Vec<_> = (1..=n).map(|k| (k + 1, k, 1)).collect();
        arrows.push((n + 1, 1, 1));
        Quiver::from_arrows(n + 1, &arrows).expect("valid")
    }

    /// Five-vertex tame quiver with paths `5 -> 3 -> 2 -> 1` and `5 -> 4 -> 1`.
    pub fn two_tubes() -> Quiver {
        Quiver::from_arrows(5, &[(2, 1, 1), (3, 2, 1), (5, 3, 1), (5, 4, 1), (4, 1, 1)])
            .expect("valid")
    }
}

#[cfg(test)]
mod tests {
    use super::catalog::*;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn load_examples() {
        let a2 = load_quiver(2, &[(2, 1, 1)]).unwrap();
        assert_eq!(a2.relabeling, None);
        assert_eq!(a2.quiver.entry(1, 0), 1);
        let k = load_quiver(2, &[(2, 1, 2)]).unwrap();
        assert_eq!(k.quiver.entry(1, 0), 2);
    }

    #[test]
    fn load_relabels_non_admissible_input() {
        let l = load_quiver(3, &[(1, 2, 1), (2, 3, 1)]).unwrap();
        // topological oracle: sinks first, so old 3 -> 1, old 2 -> 2, old 1 -> 3
        assert_eq!(l.relabeling, Some(vec![2, 1, 0]));
        assert_eq!(l.quiver, linear_a(3));
        assert!(l.quiver.is_admissible());
    }

    #[test]
    fn load_rejects_bad_input() {
        assert_eq!(
            load_quiver(3, &[(1, 2, 1), (2, 3, 1), (3, 1, 1)]),
            Err(QuiverError::NotAcyclic)
        );
        assert!(matches!(load_quiver(2, &[(1, 1, 1)]), Err(QuiverError::InvalidArrow { .. })));
        assert!(matches!(load_quiver(2, &[(2, 1, 0)]), Err(QuiverError::InvalidArrow { .. })));
        assert_eq!(load_quiver(2, &[(1, 2, 1), (2, 1, 1)]), Err(QuiverError::NotAcyclic));
        assert!(matches!(load_quiver(2, &[(3, 1, 1)]), Err(QuiverError::VertexOutOfRange { .. })));
    }

    #[test]
    fn json_form() {
        let j: QuiverJson = serde_json::from_str(r#"{"n": 3, "arrows": [[2,1,1],[3,1,1],[3,2,1]]}"#).unwrap();
        let q = j.load().unwrap().quiver;
        assert_eq!(q, affine_a(2));
        assert_eq!(serde_json::to_string(&QuiverJson::from(&q)).unwrap(), r#"{"n":3,"arrows":[[2,1,1],[3,1,1],[3,2,1]]}"#);
    }

    #[test]
    fn sink_mutation_reverses_arrows() {
        let q = linear_a(2).mutate(0);
        assert_eq!(q.arrow_list(), vec![(1, 2, 1)]);
    }

    #[test]
    fn double_a3_becomes_symmetric() {
        let q = double_a3().mutate(0);
        assert_eq!(q.arrow_list(), vec![(1, 2, 2), (3, 2, 2)]);
        let autos = q.automorphisms().unwrap();
        assert!(autos.contains(&vec![2, 1, 0]));
        assert_eq!(autos[0], vec![0, 1, 2]);
    }

    #[test]
    fn coxeter_mutation_fixes_examples() {
        for q in [affine_a(2), linear_a(2), kronecker(2), double_a3(), two_tubes()] {
            assert_eq!(q.coxeter_mutate(), q);
        }
    }

    #[test]
    fn classification_examples() {
        let c = linear_a(2).classify();
        assert_eq!(c.kind, RepresentationType::Finite);
        assert_eq!(c.diagram.as_deref(), Some("A2"));
        let c = kronecker(2).classify();
        assert_eq!((c.kind, c.diagram.as_deref()), (RepresentationType::Tame, Some("Kronecker")));
        assert_eq!(kronecker(3).classify().kind, RepresentationType::Wild);
        assert_eq!(affine_a(2).classify().diagram.as_deref(), Some("Ã2"));
        assert_eq!(two_tubes().classify().diagram.as_deref(), Some("Ã4"));
        assert_eq!(double_a3().classify().kind, RepresentationType::Wild);
    }

    #[test]
    fn classification_of_trees() {
        let star = |arms: &[usize]| {
            // center 1, arms hanging off it
            let mut arrows = Vec::new();
            let mut next = 2;
            for &len in arms {
                let mut prev = 1;
                for _ in 0..len {
                    arrows.push((next, prev, 1));
                    prev = next;
                    next += 1;
                }
            }
            Quiver::from_arrows(next - 1, &arrows).unwrap().classify()
        };
        assert_eq!(star(&[1, 1, 1]).diagram.as_deref(), Some("D4"));
        assert_eq!(star(&[1, 1, 4]).diagram.as_deref(), Some("D7"));
        assert_eq!(star(&[1, 2, 2]).diagram.as_deref(), Some("E6"));
        assert_eq!(star(&[1, 2, 4]).diagram.as_deref(), Some("E8"));
        assert_eq!(star(&[2, 2, 2]).diagram.as_deref(), Some("Ẽ6"));
        assert_eq!(star(&[1, 3, 3]).diagram.as_deref(), Some("Ẽ7"));
        assert_eq!(star(&[1, 2, 5]).diagram.as_deref(), Some("Ẽ8"));
        assert_eq!(star(&[2, 2, 3]).kind, RepresentationType::Wild);
        assert_eq!(star(&[1, 1, 1, 1]).diagram.as_deref(), Some("D̃4"));
        assert_eq!(star(&[1, 1, 1, 2]).kind, RepresentationType::Wild);
        let d5 = Quiver::from_arrows(6, &[(2, 1, 1), (3, 1, 1), (4, 1, 1), (5, 4, 1), (6, 4, 1)]).unwrap();
        assert_eq!(d5.classify().diagram.as_deref(), Some("D̃5"));
    }

    #[test]
    fn symmetry_pairs() {
        let p = double_a3().find_symmetry_pair().unwrap();
        assert_eq!((p.sink, p.source), (0, 2));
        assert_eq!(p.multiplicities, BTreeMap::from([(1, 2)]));
        // exhaustive oracle for n = 2: the only sink/source pair is (1, 2)
        for q in [linear_a(2), kronecker(2)] {
            let p = q.find_symmetry_pair().unwrap();
            assert_eq!((p.sink, p.source), (0, 1));
            assert!(p.multiplicities.is_empty());
        }
        let p = linear_a(3).find_symmetry_pair().unwrap();
        assert_eq!((p.sink, p.source, p.multiplicities), (0, 2, BTreeMap::from([(1, 1)])));
        let fork = Quiver::from_arrows(3, &[(2, 1, 1), (3, 1, 1)]).unwrap();
        assert!(fork.find_symmetry_pair().is_none());
    }

    #[test]
    fn automorphism_examples() {
        assert_eq!(linear_a(2).automorphisms().unwrap(), vec![vec![0, 1]]);
        assert_eq!(affine_a(3).automorphisms().unwrap(), vec![vec![0, 1, 2, 3]]);
        let big = linear_a(11);
        assert!(matches!(big.automorphisms(), Err(QuiverError::VertexCountTooLarge { .. })));
    }

    pub(crate) fn arb_quiver(max_n: usize, max_mult: u32) -> impl Strategy<Value = Quiver> {
        (1..=max_n).prop_flat_map(move |n| {
            prop::collection::vec(0..=max_mult, n * (n - 1) / 2).prop_map(move |mults| {
                let mut arrows = Vec::new();
                let mut it = mults.into_iter();
                for i in 1..=n {
                    for j in 1..i {
                        let m = it.next().unwrap();
                        if m > 0 {
                            arrows.push((i, j, m));
                        }
                    }
                }
                Quiver::from_arrows(n, &arrows).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn mutation_is_an_involution(q in arb_quiver(8, 3), k in 0usize..8) {
            let k = k % q.n();
            prop_assert_eq!(q.mutate(k).mutate(k), q);
        }

        #[test]
        fn coxeter_mutation_is_identity(q in arb_quiver(8, 3)) {
            prop_assert_eq!(q.coxeter_mutate(), q);
        }

        #[test]
        fn sink_and_source_mutation_stay_acyclic(q in arb_quiver(6, 2)) {
            for k in 0..q.n() {
                if q.is_sink(k) || q.is_source(k) {
                    let m = q.mutate(k);
                    prop_assert!(m.is_acyclic());
                    prop_assert!(Quiver::from_exchange_matrix(m.exchange_matrix().to_vec()).is_ok());
                }
            }
        }

        #[test]
        fn classification_survives_relabeling(q in arb_quiver(6, 2), seed in any::<u64>()) {
            // reverse the labels, then let the loader restore an admissible order
            let n = q.n();
            let perm: Vec<usize> = (0..n).map(|v| (v + seed as usize) % n).collect();
            let shuffled = q.relabel(&perm);
            let arrows = shuffled.arrow_list();
            let loaded = load_quiver(n, &arrows).unwrap();
            prop_assert_eq!(loaded.quiver.classify(), q.classify());
            prop_assert!(loaded.quiver.is_admissible());
        }
    }
}
